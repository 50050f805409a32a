//! Multi-objective genetic search over seed sets of a fixed size, maximizing
//! expected cascade size and the number of non-vulnerable nodes.
//!
//! The population starts from one set per heuristic (HD, KC, DD, CHD) plus
//! random sets. Each generation builds offspring by binary tournament on
//! (rank, crowding), union crossover and random or tabu-like mutation, then
//! keeps the best `population_size` of parents and offspring. An archive of
//! every non-dominated set seen so far backs the returned front.

mod fitness;
mod operators;
mod sort;

pub use fitness::{
    count_non_vulnerable, evaluate_fitness, evaluate_front_numerically, stream, FairnessObjective, Fitness,
    FitnessEvaluator, NumericalEvaluation,
};
pub use operators::{crossover, crossover_sets, mutate_random, mutate_tabu};
pub use sort::{
    crowding_distance, dominates, hypervolume, non_dominated_sort, ranks, select_survivors, weakly_dominates,
    SelectionMode,
};

use std::collections::HashMap;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::metrics::NodeInformationStats;
use crate::rng::{child_rng, derive_seed};
use crate::scalar::Real;
use crate::seeds::{self, Method, SeedSet};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaConfig {
    pub population_size: usize,
    pub generations: usize,
    pub crossover_prob: f64,
    pub mutation_prob: f64,
    /// Share of mutations that are tabu-like; the rest are random.
    pub tabu_mutation_freq: f64,
    pub random_mutation_replace_frac: f64,
    /// Candidates inspected by a tabu-like mutation, as a fraction of N.
    pub tabu_neighborhood_frac: f64,
    pub fitness_samples: usize,
    pub tabu_samples: usize,
    /// Realizations for the closing re-evaluation; 0 skips it.
    pub final_samples: usize,
    pub selection: SelectionMode,
    pub objective: FairnessObjective,
    pub rng_seed: u64,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            population_size: 100,
            generations: 100,
            crossover_prob: 0.8,
            mutation_prob: 1.0,
            tabu_mutation_freq: 0.4,
            random_mutation_replace_frac: 0.1,
            tabu_neighborhood_frac: 0.2,
            fitness_samples: 100,
            tabu_samples: 20,
            final_samples: 1000,
            selection: SelectionMode::Crowding,
            objective: FairnessObjective::Frequency,
            rng_seed: 0,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        let probs = [
            ("crossover_prob", self.crossover_prob),
            ("mutation_prob", self.mutation_prob),
            ("tabu_mutation_freq", self.tabu_mutation_freq),
            ("random_mutation_replace_frac", self.random_mutation_replace_frac),
            ("tabu_neighborhood_frac", self.tabu_neighborhood_frac),
        ];
        for (name, v) in probs {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Config(format!("{name} = {v} outside [0, 1]")));
            }
        }
        if self.population_size < 2 {
            return Err(Error::Config("population_size must be at least 2".into()));
        }
        if self.fitness_samples == 0 || self.tabu_samples == 0 {
            return Err(Error::Config("fitness sample counts must be positive".into()));
        }
        Ok(())
    }
}

/// A seed set with its (spread, fairness) fitness.
#[derive(Debug, Clone, PartialEq)]
pub struct ParetoCandidate<T> {
    pub seeds: SeedSet,
    /// Heuristic that produced this exact set, or `Ga`.
    pub origin: Method,
    pub fitness_spread: T,
    pub fitness_fair: usize,
    pub eval_samples: usize,
}

impl<T: Real> ParetoCandidate<T> {
    pub fn objectives(&self) -> [T; 2] {
        [self.fitness_spread, T::from_count(self.fitness_fair)]
    }
}

/// Mutually non-dominated candidates, sorted by decreasing spread.
#[derive(Debug, Clone, PartialEq)]
pub struct ParetoFront<T> {
    pub candidates: Vec<ParetoCandidate<T>>,
}

impl<T: Real> ParetoFront<T> {
    /// Keeps the non-dominated subset of `pool`, dropping repeated seed sets.
    pub fn from_pool(pool: Vec<ParetoCandidate<T>>) -> Self {
        let mut seen = std::collections::HashSet::new();
        let pool: Vec<ParetoCandidate<T>> = pool.into_iter().filter(|c| seen.insert(sorted_nodes(c.seeds.nodes()))).collect();
        let points: Vec<[T; 2]> = pool.iter().map(|c| c.objectives()).collect();
        let first = non_dominated_sort(&points).into_iter().next().unwrap_or_default();
        let mut candidates: Vec<ParetoCandidate<T>> = first.into_iter().map(|i| pool[i].clone()).collect();
        candidates.sort_by(|a, b| {
            b.fitness_spread
                .partial_cmp(&a.fitness_spread)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.fitness_fair.cmp(&b.fitness_fair))
        });
        ParetoFront { candidates }
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    pub fn is_mutually_non_dominated(&self) -> bool {
        self.candidates.iter().all(|a| self.candidates.iter().all(|b| !dominates(&a.objectives(), &b.objectives())))
    }

    /// Some member is at least as good as `point` in both objectives.
    pub fn weakly_dominates(&self, point: [T; 2]) -> bool {
        self.candidates.iter().any(|c| weakly_dominates(&c.objectives(), &point))
    }

    pub fn hypervolume(&self) -> T {
        hypervolume(&self.candidates.iter().map(|c| c.objectives()).collect::<Vec<_>>())
    }
}

fn sorted_nodes(nodes: &[NodeId]) -> Vec<NodeId> {
    let mut v = nodes.to_vec();
    v.sort_unstable();
    v
}

#[derive(Debug, Clone)]
struct Individual<T> {
    nodes: Vec<NodeId>,
    origin: Method,
    fitness: Fitness<T>,
}

#[derive(Debug, Clone)]
pub struct GaOutcome<T> {
    /// Final front, after re-evaluation when `final_samples > 0`.
    pub front: ParetoFront<T>,
    /// Non-dominated archive under the search-time fitness.
    pub search_front: ParetoFront<T>,
    /// The heuristic sets from the initial population, evaluated like `front`.
    pub heuristics: Vec<ParetoCandidate<T>>,
    /// Archive hypervolume after initialization and after each generation.
    pub hypervolume_history: Vec<T>,
    /// Distinct seed sets evaluated during the search.
    pub evaluations: usize,
}

struct Search<'a, T> {
    evaluator: FitnessEvaluator<'a, T>,
    config: GaConfig,
    cache: HashMap<Vec<NodeId>, Fitness<T>>,
    archive: Vec<Individual<T>>,
}

impl<'a, T: Real> Search<'a, T> {
    fn evaluate(&mut self, batch: Vec<(Vec<NodeId>, Method)>) -> Vec<Individual<T>> {
        let keys: Vec<Vec<NodeId>> = batch.iter().map(|(n, _)| sorted_nodes(n)).collect();
        let mut missing: Vec<&Vec<NodeId>> = keys.iter().filter(|k| !self.cache.contains_key(*k)).collect();
        missing.sort();
        missing.dedup();
        let samples = self.config.fitness_samples;
        let fresh: Vec<(Vec<NodeId>, Fitness<T>)> = missing
            .par_iter()
            .map(|k| ((*k).clone(), self.evaluator.evaluate(k, samples, stream::SEARCH)))
            .collect();
        self.cache.extend(fresh);
        let out: Vec<Individual<T>> = batch
            .into_iter()
            .zip(&keys)
            .map(|((nodes, origin), key)| Individual { nodes, origin, fitness: self.cache[key] })
            .collect();
        self.update_archive(&out);
        out
    }

    fn update_archive(&mut self, new: &[Individual<T>]) {
        let mut pool = std::mem::take(&mut self.archive);
        pool.extend(new.iter().cloned());
        let mut seen = std::collections::HashSet::new();
        pool.retain(|i| seen.insert(sorted_nodes(&i.nodes)));
        let points: Vec<[T; 2]> = pool.iter().map(|i| i.fitness.objectives()).collect();
        let first = non_dominated_sort(&points).into_iter().next().unwrap_or_default();
        self.archive = first.into_iter().map(|i| pool[i].clone()).collect();
    }

    fn archive_hypervolume(&self) -> T {
        hypervolume(&self.archive.iter().map(|i| i.fitness.objectives()).collect::<Vec<_>>())
    }
}

fn to_candidate<T: Real>(ind: &Individual<T>, n: usize, samples: usize) -> ParetoCandidate<T> {
    ParetoCandidate {
        seeds: SeedSet::new(Method::Ga, ind.nodes.clone(), n).expect("individuals keep the seed-set invariant"),
        origin: ind.origin,
        fitness_spread: ind.fitness.spread,
        fitness_fair: ind.fitness.fair,
        eval_samples: samples,
    }
}

/// Runs the genetic search for seed sets of size `budget` at transmission
/// probability `p`, scoring fairness against `benchmark`. The initial
/// population holds one set per heuristic, selected with ties and the DD
/// parameter derived from `config`.
pub fn optimize<T: Real>(
    g: &Graph,
    p: T,
    budget: usize,
    config: &GaConfig,
    benchmark: &NodeInformationStats<T>,
) -> Result<GaOutcome<T>> {
    crate::icm::check_probability(p)?;
    if budget == 0 || budget > g.node_count() {
        return Err(Error::BudgetOutOfRange { k: budget, n: g.node_count() });
    }
    let tie_seed = derive_seed(config.rng_seed, &[0x71e]);
    let heuristics: Vec<SeedSet> =
        Method::HEURISTICS.iter().map(|&m| seeds::select(g, m, budget, p, tie_seed)).collect::<Result<_>>()?;
    optimize_from(g, p, &heuristics, config, benchmark)
}

/// Like [`optimize`], with the heuristic members of the initial population
/// given explicitly. All sets must have the same size.
pub fn optimize_from<T: Real>(
    g: &Graph,
    p: T,
    heuristics: &[SeedSet],
    config: &GaConfig,
    benchmark: &NodeInformationStats<T>,
) -> Result<GaOutcome<T>> {
    config.validate()?;
    crate::icm::check_probability(p)?;
    let n = g.node_count();
    let budget = heuristics.first().map(SeedSet::len).ok_or_else(|| Error::Config("no initial seed sets".into()))?;
    if let Some(s) = heuristics.iter().find(|s| s.len() != budget) {
        return Err(Error::Config(format!("initial sets differ in size: {} vs {budget}", s.len())));
    }
    if budget > n {
        return Err(Error::BudgetOutOfRange { k: budget, n });
    }
    if let Some(&id) = heuristics.iter().flat_map(|s| s.nodes()).find(|&&v| v >= n) {
        return Err(Error::NodeOutOfRange { id, n });
    }
    if benchmark.node_count() != n {
        return Err(Error::NodeCountMismatch { left: n, right: benchmark.node_count() });
    }

    let evaluator = FitnessEvaluator { graph: g, p, benchmark, objective: config.objective, rng_seed: derive_seed(config.rng_seed, &[0xf17]) };
    let mut search = Search { evaluator, config: *config, cache: HashMap::new(), archive: Vec::new() };
    let mut rng = child_rng(config.rng_seed, &[0x6a]);

    let heuristic_sets: Vec<(Vec<NodeId>, Method)> = heuristics.iter().map(|s| (s.nodes().to_vec(), s.method())).collect();
    let mut initial: Vec<(Vec<NodeId>, Method)> = heuristic_sets.iter().take(config.population_size).cloned().collect();
    while initial.len() < config.population_size {
        initial.push((rand::seq::index::sample(&mut rng, n, budget).into_vec(), Method::Random));
    }

    let mut population = search.evaluate(initial);
    let mut hypervolume_history = vec![search.archive_hypervolume()];

    for _ in 0..config.generations {
        let points: Vec<[T; 2]> = population.iter().map(|i| i.fitness.objectives()).collect();
        let fronts = non_dominated_sort(&points);
        let rank = ranks(&fronts, points.len());
        let mut crowd = vec![T::zero(); points.len()];
        for front in &fronts {
            for (slot, d) in crowding_distance(&points, front).into_iter().enumerate() {
                crowd[front[slot]] = d;
            }
        }
        let tournament = |rng: &mut crate::rng::StreamRng| {
            let a = rng.gen_range(0..population.len());
            let b = rng.gen_range(0..population.len());
            match rank[a].cmp(&rank[b]) {
                std::cmp::Ordering::Less => a,
                std::cmp::Ordering::Greater => b,
                std::cmp::Ordering::Equal if crowd[a] > crowd[b] => a,
                std::cmp::Ordering::Equal if crowd[b] > crowd[a] => b,
                std::cmp::Ordering::Equal => {
                    if rng.gen_bool(0.5) {
                        a
                    } else {
                        b
                    }
                }
            }
        };

        let mut offspring: Vec<(Vec<NodeId>, Method)> = Vec::with_capacity(config.population_size);
        while offspring.len() < config.population_size {
            let pa = tournament(&mut rng);
            let pb = tournament(&mut rng);
            let (mut x, mut y) = (population[pa].nodes.clone(), population[pb].nodes.clone());
            let (mut ox, mut oy) = (population[pa].origin, population[pb].origin);
            if rng.gen_bool(config.crossover_prob) {
                (x, y) = crossover(&x, &y, &mut rng)?;
                (ox, oy) = (Method::Ga, Method::Ga);
            }
            for (child, origin) in [(&mut x, &mut ox), (&mut y, &mut oy)] {
                if rng.gen_bool(config.mutation_prob) {
                    *child = if rng.gen_bool(config.tabu_mutation_freq) {
                        mutate_tabu(child, config.tabu_neighborhood_frac, &search.evaluator, config.tabu_samples, &mut rng)
                    } else {
                        mutate_random(child, config.random_mutation_replace_frac, n, &mut rng)
                    };
                    *origin = Method::Ga;
                }
            }
            offspring.push((x, ox));
            if offspring.len() < config.population_size {
                offspring.push((y, oy));
            }
        }

        let offspring = search.evaluate(offspring);
        population.extend(offspring);
        let points: Vec<[T; 2]> = population.iter().map(|i| i.fitness.objectives()).collect();
        let survivors = select_survivors(&points, config.population_size, config.selection, &mut rng);
        population = survivors.into_iter().map(|i| population[i].clone()).collect();
        hypervolume_history.push(search.archive_hypervolume());
    }

    let search_samples = config.fitness_samples;
    let search_front =
        ParetoFront::from_pool(search.archive.iter().map(|i| to_candidate(i, n, search_samples)).collect());
    let heuristic_individuals: Vec<Individual<T>> = heuristic_sets
        .iter()
        .map(|(nodes, origin)| Individual { nodes: nodes.clone(), origin: *origin, fitness: search.cache[&sorted_nodes(nodes)] })
        .collect();

    let (front, heuristics) = if config.final_samples > 0 {
        let fs = config.final_samples;
        let pool: Vec<&Individual<T>> = search.archive.iter().chain(&heuristic_individuals).collect();
        let rescored: Vec<ParetoCandidate<T>> = pool
            .par_iter()
            .map(|ind| {
                let fitness = search.evaluator.evaluate(&ind.nodes, fs, stream::FINAL);
                to_candidate(&Individual { fitness, ..(*ind).clone() }, n, fs)
            })
            .collect();
        let heuristics = rescored[search.archive.len()..].to_vec();
        (ParetoFront::from_pool(rescored), heuristics)
    } else {
        let heuristics: Vec<ParetoCandidate<T>> =
            heuristic_individuals.iter().map(|i| to_candidate(i, n, search_samples)).collect();
        (search_front.clone(), heuristics)
    };

    Ok(GaOutcome { front, search_front, heuristics, hypervolume_history, evaluations: search.cache.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GeneratorConfig};
    use crate::icm::SimulationConfig;
    use crate::metrics::{benchmark_stats, BenchmarkMode};

    fn small_setup() -> (Graph, NodeInformationStats<f64>, f64, usize) {
        let g = generate(&GeneratorConfig::scale_free(300, 2.5, 2, 21)).unwrap().graph;
        let p = 0.15;
        let k = 3;
        let bench = benchmark_stats(&g, k, &SimulationConfig::new(p, 3000, 5), BenchmarkMode::Resampled).unwrap();
        (g, bench, p, k)
    }

    fn quick(generations: usize) -> GaConfig {
        GaConfig {
            population_size: 16,
            generations,
            tabu_neighborhood_frac: 0.02,
            fitness_samples: 60,
            tabu_samples: 10,
            final_samples: 0,
            rng_seed: 9,
            ..GaConfig::default()
        }
    }

    #[test]
    fn config_validation() {
        assert!(GaConfig::default().validate().is_ok());
        assert!(GaConfig { crossover_prob: 1.2, ..GaConfig::default() }.validate().is_err());
        assert!(GaConfig { population_size: 1, ..GaConfig::default() }.validate().is_err());
        assert!(GaConfig { fitness_samples: 0, ..GaConfig::default() }.validate().is_err());
    }

    #[test]
    fn zero_generations_returns_initial_front() {
        let (g, bench, p, k) = small_setup();
        let out = optimize(&g, p, k, &quick(0), &bench).unwrap();
        assert_eq!(out.hypervolume_history.len(), 1);
        assert!(out.front.is_mutually_non_dominated());
        for h in &out.heuristics {
            assert!(out.front.weakly_dominates(h.objectives()));
        }
    }

    #[test]
    fn front_invariants_after_search() {
        let (g, bench, p, k) = small_setup();
        let out = optimize(&g, p, k, &quick(6), &bench).unwrap();
        assert!(out.front.is_mutually_non_dominated());
        assert!(out.hypervolume_history.windows(2).all(|w| w[1] >= w[0]));
        for c in &out.front.candidates {
            assert_eq!(c.seeds.len(), k);
            assert_eq!(c.seeds.method(), Method::Ga);
        }
        for h in &out.heuristics {
            assert!(out.front.weakly_dominates(h.objectives()));
        }
    }

    #[test]
    fn reproducible() {
        let (g, bench, p, k) = small_setup();
        let cfg = GaConfig { final_samples: 100, selection: SelectionMode::ReferencePoint, ..quick(3) };
        let a = optimize(&g, p, k, &cfg, &bench).unwrap();
        let b = optimize(&g, p, k, &cfg, &bench).unwrap();
        assert_eq!(a.front, b.front);
        assert_eq!(a.hypervolume_history, b.hypervolume_history);
    }

    #[test]
    fn rejects_bad_inputs() {
        let (g, bench, p, _) = small_setup();
        assert!(optimize(&g, p, 0, &quick(1), &bench).is_err());
        assert!(optimize(&g, 2.0, 3, &quick(1), &bench).is_err());
        let short = NodeInformationStats { nu: vec![0.1], tau: vec![0.1], realizations: 1 };
        assert!(optimize(&g, p, 3, &quick(1), &short).is_err());
    }

    #[test]
    fn explicit_initial_sets_are_checked() {
        let (g, bench, p, _) = small_setup();
        let a = SeedSet::new(Method::Hd, vec![0, 1, 2], g.node_count()).unwrap();
        let b = SeedSet::new(Method::Dd, vec![3, 4], g.node_count()).unwrap();
        assert!(optimize_from(&g, p, &[], &quick(1), &bench).is_err());
        assert!(optimize_from(&g, p, &[a.clone(), b], &quick(1), &bench).is_err());
        let out = optimize_from(&g, p, &[a], &quick(2), &bench).unwrap();
        assert_eq!(out.heuristics.len(), 1);
        assert_eq!(out.heuristics[0].origin, Method::Hd);
        assert!(out.front.weakly_dominates(out.heuristics[0].objectives()));
    }

    #[test]
    fn front_from_pool_dedups_and_filters() {
        let set = |nodes: Vec<usize>, s: f64, f: usize| ParetoCandidate {
            seeds: SeedSet::new(Method::Ga, nodes, 10).unwrap(),
            origin: Method::Ga,
            fitness_spread: s,
            fitness_fair: f,
            eval_samples: 1,
        };
        let front = ParetoFront::from_pool(vec![
            set(vec![0, 1], 10.0, 5),
            set(vec![1, 0], 10.0, 5),
            set(vec![2, 3], 5.0, 10),
            set(vec![4, 5], 4.0, 4),
        ]);
        assert_eq!(front.len(), 2);
        assert!(front.is_mutually_non_dominated());
        assert_eq!(front.candidates[0].fitness_spread, 10.0);
    }
}
