//! Monte-Carlo fitness of a seed set: expected cascade size and number of
//! non-vulnerable nodes against a fixed benchmark.
//!
//! Search-time evaluations of every set share the same live-edge realizations
//! for a given stream tag, so a set always receives the same fitness and
//! differences between similar sets are not drowned in sampling noise.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::icm::{Draws, Ensemble, SeedSource};
use crate::metrics::{effective_ratio, is_vulnerable, simulate_information, NodeInformationStats};
use crate::rng::derive_seed;
use crate::scalar::Real;

/// Which information measure decides non-vulnerability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FairnessObjective {
    #[default]
    Frequency,
    Recency,
    /// Non-vulnerable in both frequency and recency.
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fitness<T> {
    pub spread: T,
    pub fair: usize,
}

impl<T: Real> Fitness<T> {
    pub fn objectives(&self) -> [T; 2] {
        [self.spread, T::from_count(self.fair)]
    }
}

/// Counts nodes whose defined effective ratio is at least one.
pub fn count_non_vulnerable<T: Real>(
    estimate: &NodeInformationStats<T>,
    benchmark: &NodeInformationStats<T>,
    objective: FairnessObjective,
) -> usize {
    let ok = |m: T, b: T| {
        let r = effective_ratio(m, b);
        r.is_some() && !is_vulnerable(r)
    };
    (0..estimate.node_count())
        .filter(|&v| {
            let nu = ok(estimate.nu[v], benchmark.nu[v]);
            let tau = ok(estimate.tau[v], benchmark.tau[v]);
            match objective {
                FairnessObjective::Frequency => nu,
                FairnessObjective::Recency => tau,
                FairnessObjective::Both => nu && tau,
            }
        })
        .count()
}

/// Stream tags separating the different uses of the evaluator.
pub mod stream {
    pub const SEARCH: u64 = 1;
    pub const TABU: u64 = 2;
    pub const FINAL: u64 = 3;
}

#[derive(Debug, Clone, Copy)]
pub struct FitnessEvaluator<'a, T> {
    pub graph: &'a Graph,
    pub p: T,
    pub benchmark: &'a NodeInformationStats<T>,
    pub objective: FairnessObjective,
    pub rng_seed: u64,
}

impl<'a, T: Real> FitnessEvaluator<'a, T> {
    /// Fitness from `samples` live-edge realizations of `stream`.
    pub fn evaluate(&self, nodes: &[NodeId], samples: usize, stream: u64) -> Fitness<T> {
        self.evaluate_with(nodes, samples, derive_seed(self.rng_seed, &[stream]), Draws::LiveEdge)
    }

    fn evaluate_with(&self, nodes: &[NodeId], samples: usize, seed: u64, draws: Draws) -> Fitness<T> {
        let ensemble = Ensemble {
            graph: self.graph,
            seeds: SeedSource::Fixed(nodes),
            p: self.p,
            realizations: samples,
            rng_seed: seed,
            draws,
        };
        let acc = simulate_information(&ensemble);
        let estimate = acc.finish();
        Fitness { spread: acc.mean_cascade_size(), fair: count_non_vulnerable(&estimate, self.benchmark, self.objective) }
    }
}

/// Fitness of one seed set from `samples` realizations.
pub fn evaluate_fitness<T: Real>(
    g: &Graph,
    seeds: &[NodeId],
    p: T,
    benchmark: &NodeInformationStats<T>,
    samples: usize,
    rng_seed: u64,
) -> Result<Fitness<T>> {
    if samples < 1 {
        return Err(Error::Config("fitness needs at least one sample".into()));
    }
    if benchmark.node_count() != g.node_count() {
        return Err(Error::NodeCountMismatch { left: g.node_count(), right: benchmark.node_count() });
    }
    crate::icm::check_probability(p)?;
    let eval = FitnessEvaluator { graph: g, p, benchmark, objective: FairnessObjective::Frequency, rng_seed };
    Ok(eval.evaluate(seeds, samples, stream::SEARCH))
}

/// Mean and sample standard deviation of both objectives over independent
/// ensembles of ordinary (uncoupled) realizations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NumericalEvaluation<T> {
    pub spread_mean: T,
    pub spread_sd: T,
    pub fair_mean: T,
    pub fair_sd: T,
    pub ensembles: usize,
    pub realizations: usize,
}

fn mean_sd<T: Real>(xs: &[T]) -> (T, T) {
    let n = T::from_count(xs.len());
    let mean = xs.iter().copied().sum::<T>() / n;
    if xs.len() < 2 {
        return (mean, T::zero());
    }
    let var = xs.iter().map(|&x| (x - mean) * (x - mean)).sum::<T>() / (n - T::one());
    (mean, var.sqrt())
}

/// Evaluates every set with `ensembles` independent ensembles of
/// `realizations` cascades each.
pub fn evaluate_front_numerically<T: Real>(
    evaluator: &FitnessEvaluator<'_, T>,
    sets: &[&[NodeId]],
    realizations: usize,
    ensembles: usize,
) -> Result<Vec<NumericalEvaluation<T>>> {
    if realizations == 0 || ensembles == 0 {
        return Err(Error::Config("numerical evaluation needs realizations and ensembles".into()));
    }
    Ok(sets
        .par_iter()
        .enumerate()
        .map(|(c, nodes)| {
            let runs: Vec<Fitness<T>> = (0..ensembles)
                .map(|e| {
                    let seed = derive_seed(evaluator.rng_seed, &[c as u64, e as u64]);
                    evaluator.evaluate_with(nodes, realizations, seed, Draws::PerAttempt)
                })
                .collect();
            let spreads: Vec<T> = runs.iter().map(|f| f.spread).collect();
            let fairs: Vec<T> = runs.iter().map(|f| T::from_count(f.fair)).collect();
            let (spread_mean, spread_sd) = mean_sd(&spreads);
            let (fair_mean, fair_sd) = mean_sd(&fairs);
            NumericalEvaluation { spread_mean, spread_sd, fair_mean, fair_sd, ensembles, realizations }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap().0
    }

    fn flat(n: usize, v: f64) -> NodeInformationStats<f64> {
        NodeInformationStats { nu: vec![v; n], tau: vec![v; n], realizations: 1 }
    }

    #[test]
    fn zero_probability_counts_only_seeds() {
        let g = path(6);
        let bench = flat(6, 2.0 / 6.0);
        let f = evaluate_fitness(&g, &[1, 4], 0.0f64, &bench, 50, 0).unwrap();
        assert_eq!(f.spread, 2.0);
        assert_eq!(f.fair, 2);
    }

    #[test]
    fn full_coverage_at_unit_probability() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (3, 4)]).unwrap().0;
        let bench = flat(5, 0.9);
        let f = evaluate_fitness(&g, &[0, 3], 1.0f64, &bench, 20, 0).unwrap();
        assert_eq!(f.spread, 5.0);
        assert_eq!(f.fair, 5);
    }

    #[test]
    fn undefined_benchmark_nodes_are_not_counted() {
        let g = path(3);
        let mut bench = flat(3, 0.5);
        bench.nu[2] = 0.0;
        let f = evaluate_fitness(&g, &[0], 1.0f64, &bench, 5, 0).unwrap();
        assert_eq!(f.fair, 2);
    }

    #[test]
    fn path_spread_matches_enumeration() {
        let g = path(3);
        let f = evaluate_fitness(&g, &[0], 0.5f64, &flat(3, 0.5), 100_000, 8).unwrap();
        let se = (0.6875f64 / 100_000.0).sqrt();
        assert!((f.spread - 1.75).abs() < 3.0 * se, "{}", f.spread);
    }

    #[test]
    fn input_errors() {
        let g = path(3);
        assert!(evaluate_fitness(&g, &[0], 0.5f64, &flat(3, 0.5), 0, 0).is_err());
        assert!(evaluate_fitness(&g, &[0], 0.5f64, &flat(4, 0.5), 10, 0).is_err());
    }

    #[test]
    fn live_edge_fitness_is_coupled() {
        // adding a seed can only grow each coupled realization
        let g = Graph::from_edges(30, (1..30).map(|i| (i / 2, i))).unwrap().0;
        let bench = flat(30, 0.2);
        let eval = FitnessEvaluator { graph: &g, p: 0.4f64, benchmark: &bench, objective: FairnessObjective::Frequency, rng_seed: 2 };
        let small = eval.evaluate(&[3], 50, stream::SEARCH);
        let large = eval.evaluate(&[3, 17], 50, stream::SEARCH);
        assert!(large.spread >= small.spread);
        assert!(large.fair >= small.fair);
    }

    #[test]
    fn evaluation_is_frozen_per_set() {
        let g = path(8);
        let bench = flat(8, 0.3);
        let eval = FitnessEvaluator { graph: &g, p: 0.5f64, benchmark: &bench, objective: FairnessObjective::Frequency, rng_seed: 4 };
        assert_eq!(eval.evaluate(&[1, 5], 200, stream::SEARCH), eval.evaluate(&[5, 1], 200, stream::SEARCH));
    }

    #[test]
    fn numerical_evaluation_degenerate_cases() {
        let g = path(5);
        let bench = flat(5, 0.3);
        let zero = FitnessEvaluator { graph: &g, p: 0.0f64, benchmark: &bench, objective: FairnessObjective::Frequency, rng_seed: 1 };
        let r = evaluate_front_numerically(&zero, &[&[0, 2]], 100, 10).unwrap();
        assert_eq!((r[0].spread_mean, r[0].spread_sd, r[0].fair_sd), (2.0, 0.0, 0.0));
        let one = FitnessEvaluator { p: 1.0, ..zero };
        let r = evaluate_front_numerically(&one, &[&[0]], 100, 10).unwrap();
        assert_eq!((r[0].spread_mean, r[0].spread_sd, r[0].fair_mean, r[0].fair_sd), (5.0, 0.0, 5.0, 0.0));
        assert!(evaluate_front_numerically(&one, &[&[0]], 0, 10).is_err());
    }

    #[test]
    fn objective_variants() {
        let est = NodeInformationStats { nu: vec![0.5, 0.5, 0.1], tau: vec![0.5, 0.1, 0.5], realizations: 1 };
        let bench = NodeInformationStats { nu: vec![0.4, 0.4, 0.4], tau: vec![0.4, 0.4, 0.4], realizations: 1 };
        assert_eq!(count_non_vulnerable(&est, &bench, FairnessObjective::Frequency), 2);
        assert_eq!(count_non_vulnerable(&est, &bench, FairnessObjective::Recency), 2);
        assert_eq!(count_non_vulnerable(&est, &bench, FairnessObjective::Both), 1);
    }
}
