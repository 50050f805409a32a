//! Information frequency and recency per node, their ratios against the random
//! seeding benchmark, and the aggregate views built on them.
//!
//! For realization `n`, `a(i,n)` is 1 when node `i` is activated and `t(i,n)` is
//! its activation round. Frequency is the mean of `a(i,n)`; recency is the
//! mean of `1 / (t(i,n) + 1)`, contributing 0 when `i` is never reached.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::icm::{Cascade, CascadeTrace, Ensemble, SeedSource, SimulationConfig};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct NodeInformationStats<T> {
    pub nu: Vec<T>,
    pub tau: Vec<T>,
    pub realizations: usize,
}

impl<T: Real> NodeInformationStats<T> {
    pub fn node_count(&self) -> usize {
        self.nu.len()
    }

    /// Mean number of activated nodes per realization (sum of frequencies).
    pub fn mean_cascade_size(&self) -> T {
        self.nu.iter().copied().sum()
    }
}

/// Mergeable partial sums behind [`NodeInformationStats`].
#[derive(Debug, Clone)]
pub struct InformationAccumulator<T> {
    activations: Vec<u64>,
    recency: Vec<T>,
    size_sum: u64,
    realizations: usize,
}

impl<T: Real> InformationAccumulator<T> {
    pub fn new(node_count: usize) -> Self {
        InformationAccumulator { activations: vec![0; node_count], recency: vec![T::zero(); node_count], size_sum: 0, realizations: 0 }
    }

    pub fn observe(&mut self, cascade: &Cascade) {
        for &v in cascade.activated() {
            self.activations[v] += 1;
            let t = cascade.time(v).expect("activated node has a time");
            self.recency[v] = self.recency[v] + T::one() / T::from_count(t as usize + 1);
        }
        self.size_sum += cascade.size() as u64;
        self.realizations += 1;
    }

    pub fn observe_trace(&mut self, trace: &CascadeTrace) {
        for (v, &on) in trace.activated.iter().enumerate() {
            if on {
                self.activations[v] += 1;
                let t = trace.activation_time.get(v).copied().flatten().expect("trace recorded with times");
                self.recency[v] = self.recency[v] + T::one() / T::from_count(t as usize + 1);
            }
        }
        self.size_sum += trace.cascade_size as u64;
        self.realizations += 1;
    }

    pub fn merge(&mut self, other: Self) {
        for (a, b) in self.activations.iter_mut().zip(other.activations) {
            *a += b;
        }
        for (a, b) in self.recency.iter_mut().zip(other.recency) {
            *a = *a + b;
        }
        self.size_sum += other.size_sum;
        self.realizations += other.realizations;
    }

    pub fn realizations(&self) -> usize {
        self.realizations
    }

    pub fn mean_cascade_size(&self) -> T {
        T::from_count(self.size_sum as usize) / T::from_count(self.realizations.max(1))
    }

    pub fn finish(&self) -> NodeInformationStats<T> {
        let m = T::from_count(self.realizations.max(1));
        NodeInformationStats {
            nu: self.activations.iter().map(|&a| T::from_count(a as usize) / m).collect(),
            tau: self.recency.iter().map(|&r| r / m).collect(),
            realizations: self.realizations,
        }
    }
}

/// Frequency and recency from explicit traces (recorded with times).
pub fn compute_stats<T: Real>(traces: &[CascadeTrace]) -> Result<NodeInformationStats<T>> {
    let first = traces.first().ok_or_else(|| Error::Config("at least one realization is required".into()))?;
    let mut acc = InformationAccumulator::new(first.activated.len());
    for t in traces {
        if t.activated.len() != first.activated.len() {
            return Err(Error::NodeCountMismatch { left: first.activated.len(), right: t.activated.len() });
        }
        acc.observe_trace(t);
    }
    Ok(acc.finish())
}

/// Streams an ensemble into an accumulator without materializing traces.
pub fn simulate_information<T: Real>(ensemble: &Ensemble<'_, T>) -> InformationAccumulator<T> {
    let n = ensemble.graph.node_count();
    ensemble.fold(
        || InformationAccumulator::new(n),
        |acc, _, c| acc.observe(c),
        |acc, other| acc.merge(other),
    )
}

/// How the random benchmark draws its seeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchmarkMode {
    /// A fresh random seed set for every realization.
    Resampled,
    /// One random seed set drawn from `seed`, kept for all realizations.
    Fixed { seed: u64 },
}

/// Frequency and recency under random seeding with `budget` seeds.
pub fn benchmark_stats<T: Real>(
    g: &Graph,
    budget: usize,
    config: &SimulationConfig<T>,
    mode: BenchmarkMode,
) -> Result<NodeInformationStats<T>> {
    config.validate()?;
    let fixed;
    let seeds = match mode {
        BenchmarkMode::Resampled => {
            if budget == 0 || budget > g.node_count() {
                return Err(Error::BudgetOutOfRange { k: budget, n: g.node_count() });
            }
            SeedSource::Random { count: budget }
        }
        BenchmarkMode::Fixed { seed } => {
            fixed = crate::seeds::select_random(g, budget, seed)?;
            SeedSource::Fixed(fixed.nodes())
        }
    };
    Ok(simulate_information(&Ensemble::new(g, seeds, config)).finish())
}

/// `method / benchmark`; `None` when the benchmark value is zero.
#[inline]
pub fn effective_ratio<T: Real>(method: T, benchmark: T) -> Option<T> {
    (benchmark > T::zero()).then(|| method / benchmark)
}

/// A node is vulnerable when its effective ratio is defined and below one.
#[inline]
pub fn is_vulnerable<T: Real>(ratio: Option<T>) -> bool {
    matches!(ratio, Some(r) if r < T::one())
}

#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveStats<T> {
    pub eff_nu: Vec<Option<T>>,
    pub eff_tau: Vec<Option<T>>,
    pub vulnerable_nu: Vec<bool>,
    pub vulnerable_tau: Vec<bool>,
}

impl<T: Real> EffectiveStats<T> {
    pub fn node_count(&self) -> usize {
        self.eff_nu.len()
    }

    pub fn undefined_nu(&self) -> usize {
        self.eff_nu.iter().filter(|r| r.is_none()).count()
    }

    pub fn undefined_tau(&self) -> usize {
        self.eff_tau.iter().filter(|r| r.is_none()).count()
    }

    /// Vulnerable nodes among those with a defined frequency ratio.
    pub fn vulnerable_fraction_nu(&self) -> T {
        fraction(self.vulnerable_nu.iter().filter(|&&v| v).count(), self.node_count() - self.undefined_nu())
    }

    pub fn vulnerable_fraction_tau(&self) -> T {
        fraction(self.vulnerable_tau.iter().filter(|&&v| v).count(), self.node_count() - self.undefined_tau())
    }
}

fn fraction<T: Real>(num: usize, den: usize) -> T {
    if den == 0 {
        T::nan()
    } else {
        T::from_count(num) / T::from_count(den)
    }
}

pub fn compute_effective<T: Real>(
    method: &NodeInformationStats<T>,
    benchmark: &NodeInformationStats<T>,
) -> Result<EffectiveStats<T>> {
    if method.node_count() != benchmark.node_count() {
        return Err(Error::NodeCountMismatch { left: method.node_count(), right: benchmark.node_count() });
    }
    let ratios = |m: &[T], b: &[T]| -> Vec<Option<T>> { m.iter().zip(b).map(|(&m, &b)| effective_ratio(m, b)).collect() };
    let eff_nu = ratios(&method.nu, &benchmark.nu);
    let eff_tau = ratios(&method.tau, &benchmark.tau);
    let vulnerable_nu = eff_nu.iter().map(|&r| is_vulnerable(r)).collect();
    let vulnerable_tau = eff_tau.iter().map(|&r| is_vulnerable(r)).collect();
    Ok(EffectiveStats { eff_nu, eff_tau, vulnerable_nu, vulnerable_tau })
}

/// Fraction of nodes that are worse off in exactly `n` methods, `n = 0..=methods`.
/// Nodes with an undefined ratio in any method are left out and counted.
#[derive(Debug, Clone, PartialEq)]
pub struct WorseOffHistogram<T> {
    pub nu: Vec<T>,
    pub tau: Vec<T>,
    pub excluded_nu: usize,
    pub excluded_tau: usize,
}

pub fn worse_off_in_n<T: Real>(methods: &[&EffectiveStats<T>]) -> Result<WorseOffHistogram<T>> {
    let first = methods.first().ok_or_else(|| Error::Config("at least one method is required".into()))?;
    let n = first.node_count();
    if let Some(m) = methods.iter().find(|m| m.node_count() != n) {
        return Err(Error::NodeCountMismatch { left: n, right: m.node_count() });
    }
    let histogram = |ratio: fn(&EffectiveStats<T>) -> &[Option<T>]| -> (Vec<T>, usize) {
        let mut counts = vec![0usize; methods.len() + 1];
        let mut excluded = 0;
        for v in 0..n {
            let rs: Vec<Option<T>> = methods.iter().map(|m| ratio(m)[v]).collect();
            if rs.iter().any(Option::is_none) {
                excluded += 1;
                continue;
            }
            counts[rs.into_iter().filter(|&r| is_vulnerable(r)).count()] += 1;
        }
        let defined = n - excluded;
        (counts.into_iter().map(|c| fraction(c, defined)).collect(), excluded)
    };
    let (nu, excluded_nu) = histogram(|m| &m.eff_nu);
    let (tau, excluded_tau) = histogram(|m| &m.eff_tau);
    Ok(WorseOffHistogram { nu, tau, excluded_nu, excluded_tau })
}

/// Empirical CDF `(x, P(v <= x))` at each distinct finite value, ascending.
pub fn cumulative_distribution<T: Real>(values: &[T]) -> Vec<(T, T)> {
    let mut sorted: Vec<T> = values.iter().copied().filter(|v| !v.is_nan()).collect();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let total = T::from_count(sorted.len());
    let mut out: Vec<(T, T)> = Vec::new();
    for (i, &x) in sorted.iter().enumerate() {
        let p = T::from_count(i + 1) / total;
        match out.last_mut() {
            Some(last) if last.0 == x => last.1 = p,
            _ => out.push((x, p)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::icm::batch_simulate;
    use proptest::prelude::*;

    fn trace(times: &[Option<u32>]) -> CascadeTrace {
        CascadeTrace {
            activated: times.iter().map(Option::is_some).collect(),
            activation_time: times.to_vec(),
            cascade_size: times.iter().flatten().count(),
        }
    }

    #[test]
    fn formula_examples() {
        let traces = [trace(&[Some(0), Some(1), None]), trace(&[Some(0), None, None])];
        let s: NodeInformationStats<f64> = compute_stats(&traces).unwrap();
        assert_eq!(s.nu, vec![1.0, 0.5, 0.0]);
        assert_eq!(s.tau, vec![1.0, 0.25, 0.0]);
        assert_eq!(s.realizations, 2);
        assert_eq!(s.mean_cascade_size(), 1.5);
    }

    #[test]
    fn empty_ensemble_rejected() {
        assert!(compute_stats::<f64>(&[]).is_err());
    }

    #[test]
    fn stream_matches_traces() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]).unwrap().0;
        let cfg = SimulationConfig::new(0.4f64, 300, 5);
        let traces = batch_simulate(&g, &[0], &cfg).unwrap();
        let a: NodeInformationStats<f64> = compute_stats(&traces).unwrap();
        let b = simulate_information(&Ensemble::new(&g, SeedSource::Fixed(&[0]), &cfg)).finish();
        for v in 0..6 {
            assert_eq!(a.nu[v], b.nu[v]);
            assert!((a.tau[v] - b.tau[v]).abs() < 1e-12);
        }
    }

    #[test]
    fn effective_examples() {
        let s = NodeInformationStats { nu: vec![0.4, 0.5, 0.3], tau: vec![0.2, 0.3, 0.1], realizations: 10 };
        let same = compute_effective(&s, &s).unwrap();
        assert!(same.eff_nu.iter().all(|&r| r == Some(1.0)));
        assert_eq!(same.vulnerable_fraction_nu(), 0.0);

        let method = NodeInformationStats { nu: vec![0.4, 0.0], tau: vec![0.1, 0.0], realizations: 10 };
        let bench = NodeInformationStats { nu: vec![0.5, 0.0], tau: vec![0.1, 0.0], realizations: 10 };
        let e = compute_effective(&method, &bench).unwrap();
        assert!((e.eff_nu[0].unwrap() - 0.8f64).abs() < 1e-12);
        assert!(e.vulnerable_nu[0]);
        assert_eq!(e.eff_nu[1], None);
        assert!(!e.vulnerable_nu[1]);
        assert_eq!(e.undefined_nu(), 1);
        assert_eq!(e.vulnerable_fraction_nu(), 1.0);

        let short = NodeInformationStats { nu: vec![0.4], tau: vec![0.1], realizations: 10 };
        assert!(matches!(compute_effective(&short, &bench), Err(Error::NodeCountMismatch { .. })));
    }

    fn eff(nu: &[Option<f64>]) -> EffectiveStats<f64> {
        EffectiveStats {
            eff_nu: nu.to_vec(),
            eff_tau: nu.to_vec(),
            vulnerable_nu: nu.iter().map(|&r| is_vulnerable(r)).collect(),
            vulnerable_tau: nu.iter().map(|&r| is_vulnerable(r)).collect(),
        }
    }

    #[test]
    fn worse_off_histograms() {
        let one = eff(&[Some(1.5), Some(2.0)]);
        let h = worse_off_in_n(&[&one]).unwrap();
        assert_eq!(h.nu, vec![1.0, 0.0]);

        let a = eff(&[Some(0.5), Some(1.5), Some(0.5), None]);
        let b = eff(&[Some(0.5), Some(1.5), Some(1.5), Some(0.2)]);
        let h = worse_off_in_n(&[&a, &b, &a, &b]).unwrap();
        assert_eq!(h.excluded_nu, 1);
        assert_eq!(h.nu, vec![1.0 / 3.0, 0.0, 1.0 / 3.0, 0.0, 1.0 / 3.0]);
        assert!(worse_off_in_n::<f64>(&[]).is_err());
    }

    #[test]
    fn cdf_examples() {
        assert_eq!(cumulative_distribution(&[0.0f64, 0.0, 1.0, 1.0]), vec![(0.0, 0.5), (1.0, 1.0)]);
        assert_eq!(cumulative_distribution(&[0.3f32; 5]), vec![(0.3, 1.0)]);
        let grid: Vec<f64> = (0..=100).map(|i| i as f64 / 100.0).collect();
        for (x, p) in cumulative_distribution(&grid) {
            assert!((p - x).abs() <= 1.0 / 101.0 + 1e-12);
        }
        assert!(cumulative_distribution::<f64>(&[]).is_empty());
    }

    #[test]
    fn fixed_benchmark_mode_uses_one_set() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap().0;
        let cfg = SimulationConfig::new(0.0f64, 50, 1);
        let s = benchmark_stats(&g, 2, &cfg, BenchmarkMode::Fixed { seed: 3 }).unwrap();
        assert_eq!(s.nu.iter().filter(|&&v| v == 1.0).count(), 2);
        let r = benchmark_stats(&g, 2, &cfg, BenchmarkMode::Resampled).unwrap();
        assert!(r.nu.iter().all(|&v| v > 0.0 && v < 1.0));
        assert!(benchmark_stats(&g, 0, &cfg, BenchmarkMode::Resampled).is_err());
    }

    proptest! {
        #[test]
        fn recency_never_exceeds_frequency(
            n in 2usize..12,
            edges in prop::collection::vec((0usize..12, 0usize..12), 0..30),
            p in 0.0f64..=1.0,
            seed in any::<u64>(),
        ) {
            let edges: Vec<_> = edges.into_iter().map(|(a, b)| (a % n, b % n)).collect();
            let g = Graph::from_edges(n, edges).unwrap().0;
            let cfg = SimulationConfig::new(p, 50, seed);
            let s = simulate_information(&Ensemble::new(&g, SeedSource::Random { count: 1 }, &cfg)).finish();
            for v in 0..n {
                prop_assert!(s.tau[v] <= s.nu[v]);
                prop_assert!((0.0..=1.0).contains(&s.nu[v]));
            }
        }

        #[test]
        fn stats_invariant_under_realization_order(seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap().0;
            let traces = batch_simulate(&g, &[2], &SimulationConfig::new(0.5f64, 40, seed)).unwrap();
            let mut shuffled = traces.clone();
            shuffled.shuffle(&mut crate::rng::child_rng(seed, &[1]));
            let a: NodeInformationStats<f64> = compute_stats(&traces).unwrap();
            let b: NodeInformationStats<f64> = compute_stats(&shuffled).unwrap();
            prop_assert_eq!(&a.nu, &b.nu);
            for v in 0..6 {
                prop_assert!((a.tau[v] - b.tau[v]).abs() < 1e-12);
            }
        }
    }
}
