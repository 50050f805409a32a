//! Independent Cascade Model simulation.
//!
//! Dynamics run in synchronous rounds. Every node activated in round `t`
//! contacts each of its not-yet-activated neighbors once and succeeds with
//! probability `p`; successes are activated in round `t + 1`. A node never
//! attempts twice. Seeds are activated in round 0.
//!
//! Ensembles are split into fixed-size blocks of realizations. Blocks run in
//! parallel and are merged in block order, and realization `r` always draws
//! from the child stream `(rng_seed, r)`, so aggregates do not depend on the
//! number of worker threads.

use rand::distributions::{Distribution, Uniform};
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::rng::{child_rng, derive_seed, edge_uniform};
use crate::scalar::Real;

const BLOCK: usize = 64;
const UNREACHED: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationConfig<T> {
    pub p: T,
    pub realizations: usize,
    pub rng_seed: u64,
    pub record_times: bool,
}

impl<T: Real> SimulationConfig<T> {
    pub fn new(p: T, realizations: usize, rng_seed: u64) -> Self {
        SimulationConfig { p, realizations, rng_seed, record_times: true }
    }

    pub fn validate(&self) -> Result<()> {
        check_probability(self.p)?;
        if self.realizations == 0 {
            return Err(Error::Config("at least one realization is required".into()));
        }
        Ok(())
    }
}

pub(crate) fn check_probability<T: Real>(p: T) -> Result<()> {
    if p >= T::zero() && p <= T::one() {
        Ok(())
    } else {
        Err(Error::Config(format!("probability {p} outside [0, 1]")))
    }
}

/// One realization of the process.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CascadeTrace {
    pub activated: Vec<bool>,
    /// Round of activation per node; empty when times were not recorded.
    pub activation_time: Vec<Option<u32>>,
    pub cascade_size: usize,
}

impl CascadeTrace {
    /// Seeds at time 0 and every other activated node has an activated
    /// neighbor with a strictly earlier time.
    pub fn is_causal(&self, g: &Graph, seeds: &[NodeId]) -> bool {
        if self.activation_time.is_empty() {
            return seeds.iter().all(|&s| self.activated[s]);
        }
        if seeds.iter().any(|&s| self.activation_time[s] != Some(0)) {
            return false;
        }
        g.nodes().all(|v| match self.activation_time[v] {
            None => !self.activated[v],
            Some(0) => self.activated[v] && seeds.contains(&v),
            Some(t) => {
                self.activated[v]
                    && g.neighbors(v).iter().any(|&u| matches!(self.activation_time[u], Some(s) if s < t))
            }
        })
    }
}

/// Reusable simulation workspace. Only touched entries are reset between runs.
#[derive(Debug, Clone)]
pub struct Cascade {
    time: Vec<u32>,
    order: Vec<NodeId>,
}

impl Cascade {
    pub fn new(node_count: usize) -> Self {
        Cascade { time: vec![UNREACHED; node_count], order: Vec::new() }
    }

    fn clear(&mut self) {
        for &v in &self.order {
            self.time[v] = UNREACHED;
        }
        self.order.clear();
    }

    /// Runs one realization, replacing the previous one.
    pub fn run<T: Real, R: Rng + ?Sized>(&mut self, g: &Graph, seeds: &[NodeId], p: T, rng: &mut R) {
        self.clear();
        for &s in seeds {
            if self.time[s] == UNREACHED {
                self.time[s] = 0;
                self.order.push(s);
            }
        }
        if p <= T::zero() {
            return;
        }
        let certain = p >= T::one();
        let unit = Uniform::new(T::zero(), T::one());
        let mut start = 0;
        let mut round = 0u32;
        while start < self.order.len() {
            let end = self.order.len();
            for idx in start..end {
                let u = self.order[idx];
                for &v in g.neighbors(u) {
                    if self.time[v] == UNREACHED && (certain || unit.sample(rng) < p) {
                        self.time[v] = round + 1;
                        self.order.push(v);
                    }
                }
            }
            start = end;
            round += 1;
        }
        debug_assert!(self.order.iter().all(|&v| {
            let t = self.time[v];
            t == 0 || g.neighbors(v).iter().any(|&u| self.time[u] < t)
        }));
    }

    /// Runs one realization in which edge `{u, v}` is open when
    /// `edge_uniform(world, u, v) < p`. Realizations sharing `world` see the
    /// same open edges whatever the seeds, and each edge is tried at most once
    /// either way, so the outcome has the same law as [`Cascade::run`].
    pub fn run_live_edge<T: Real>(&mut self, g: &Graph, seeds: &[NodeId], p: T, world: u64) {
        self.clear();
        for &s in seeds {
            if self.time[s] == UNREACHED {
                self.time[s] = 0;
                self.order.push(s);
            }
        }
        let p = p.to_f64_lossy();
        let mut start = 0;
        let mut round = 0u32;
        while start < self.order.len() {
            let end = self.order.len();
            for idx in start..end {
                let u = self.order[idx];
                for &v in g.neighbors(u) {
                    if self.time[v] == UNREACHED && edge_uniform(world, u, v) < p {
                        self.time[v] = round + 1;
                        self.order.push(v);
                    }
                }
            }
            start = end;
            round += 1;
        }
    }

    /// Activated nodes in activation order (seeds first).
    pub fn activated(&self) -> &[NodeId] {
        &self.order
    }

    pub fn size(&self) -> usize {
        self.order.len()
    }

    /// Activation round of `v`, `None` if not reached.
    #[inline]
    pub fn time(&self, v: NodeId) -> Option<u32> {
        match self.time[v] {
            UNREACHED => None,
            t => Some(t),
        }
    }

    pub fn to_trace(&self, record_times: bool) -> CascadeTrace {
        let n = self.time.len();
        let mut activated = vec![false; n];
        for &v in &self.order {
            activated[v] = true;
        }
        let activation_time = if record_times { (0..n).map(|v| self.time(v)).collect() } else { Vec::new() };
        CascadeTrace { activated, activation_time, cascade_size: self.order.len() }
    }
}

/// Single realization from `seeds`.
pub fn run_cascade<T: Real, R: Rng + ?Sized>(g: &Graph, seeds: &[NodeId], p: T, rng: &mut R) -> CascadeTrace {
    let mut c = Cascade::new(g.node_count());
    c.run(g, seeds, p, rng);
    c.to_trace(true)
}

/// Where each realization's seeds come from.
#[derive(Debug, Clone, Copy)]
pub enum SeedSource<'a> {
    /// The same seed set in every realization.
    Fixed(&'a [NodeId]),
    /// A fresh uniformly random set of `count` distinct nodes per realization.
    Random { count: usize },
}

/// How a realization draws its transmission events.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Draws {
    /// One coin per transmission attempt from the realization's stream.
    #[default]
    PerAttempt,
    /// Open edges fixed per realization index, independent of the seeds, so
    /// ensembles from different seed sets are coupled.
    LiveEdge,
}

/// A reproducible collection of independent realizations.
#[derive(Debug, Clone, Copy)]
pub struct Ensemble<'a, T> {
    pub graph: &'a Graph,
    pub seeds: SeedSource<'a>,
    pub p: T,
    pub realizations: usize,
    pub rng_seed: u64,
    pub draws: Draws,
}

impl<'a, T: Real> Ensemble<'a, T> {
    pub fn new(graph: &'a Graph, seeds: SeedSource<'a>, config: &SimulationConfig<T>) -> Self {
        Ensemble { graph, seeds, p: config.p, realizations: config.realizations, rng_seed: config.rng_seed, draws: Draws::PerAttempt }
    }

    /// Folds every realization into an accumulator. `observe` sees realizations
    /// in index order within a block; blocks are merged in index order.
    pub fn fold<A, I, O, M>(&self, init: I, observe: O, merge: M) -> A
    where
        A: Send,
        I: Fn() -> A + Sync,
        O: Fn(&mut A, usize, &Cascade) + Sync,
        M: Fn(&mut A, A),
    {
        let n = self.graph.node_count();
        let blocks = self.realizations.div_ceil(BLOCK);
        let partials: Vec<A> = (0..blocks)
            .into_par_iter()
            .map(|b| {
                let mut acc = init();
                let mut cascade = Cascade::new(n);
                let mut drawn = Vec::new();
                for r in b * BLOCK..((b + 1) * BLOCK).min(self.realizations) {
                    let mut rng = child_rng(self.rng_seed, &[r as u64]);
                    let seeds = match self.seeds {
                        SeedSource::Fixed(s) => s,
                        SeedSource::Random { count } => {
                            drawn.clear();
                            drawn.extend(rand::seq::index::sample(&mut rng, n, count.min(n)).iter());
                            &drawn[..]
                        }
                    };
                    match self.draws {
                        Draws::PerAttempt => cascade.run(self.graph, seeds, self.p, &mut rng),
                        Draws::LiveEdge => {
                            cascade.run_live_edge(self.graph, seeds, self.p, derive_seed(self.rng_seed, &[r as u64, 0x11fe]))
                        }
                    }
                    observe(&mut acc, r, &cascade);
                }
                acc
            })
            .collect();
        let mut iter = partials.into_iter();
        let mut total = iter.next().unwrap_or_else(&init);
        for part in iter {
            merge(&mut total, part);
        }
        total
    }

    pub fn traces(&self, record_times: bool) -> Vec<CascadeTrace> {
        self.fold(
            Vec::new,
            |acc, _, c| acc.push(c.to_trace(record_times)),
            |acc, mut more| acc.append(&mut more),
        )
    }

    pub fn sizes(&self) -> OutbreakSample {
        let sizes = self.fold(Vec::new, |acc, _, c| acc.push(c.size()), |acc, mut more| acc.append(&mut more));
        OutbreakSample { sizes }
    }
}

/// `M` independent realizations from a fixed seed set.
pub fn batch_simulate<T: Real>(g: &Graph, seeds: &[NodeId], config: &SimulationConfig<T>) -> Result<Vec<CascadeTrace>> {
    config.validate()?;
    if let Some(&id) = seeds.iter().find(|&&s| !g.contains(s)) {
        return Err(Error::NodeOutOfRange { id, n: g.node_count() });
    }
    Ok(Ensemble::new(g, SeedSource::Fixed(seeds), config).traces(config.record_times))
}

/// Outbreak sizes, typically from single-spreader runs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OutbreakSample {
    pub sizes: Vec<usize>,
}

impl OutbreakSample {
    /// `<s^order>`.
    pub fn moment<T: Real>(&self, order: i32) -> T {
        if self.sizes.is_empty() {
            return T::nan();
        }
        let sum: T = self.sizes.iter().map(|&s| T::from_count(s).powi(order)).sum();
        sum / T::from_count(self.sizes.len())
    }

    /// `<s^2> / <s>^2`.
    pub fn susceptibility<T: Real>(&self) -> T {
        let m1: T = self.moment(1);
        self.moment::<T>(2) / (m1 * m1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SusceptibilityPoint<T> {
    pub p: T,
    pub mean_size: T,
    pub second_moment: T,
    pub susceptibility: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalEstimate<T> {
    pub p_c: T,
    pub curve: Vec<SusceptibilityPoint<T>>,
}

/// Locates the susceptibility maximum on `grid`, using `runs_per_p`
/// single-spreader cascades from uniformly random nodes at each point.
pub fn estimate_critical_p<T: Real>(g: &Graph, grid: &[T], runs_per_p: usize, rng_seed: u64) -> Result<CriticalEstimate<T>> {
    if grid.is_empty() {
        return Err(Error::Critical("empty probability grid".into()));
    }
    if grid.len() < 3 {
        return Err(Error::Critical(format!("grid needs at least 3 points, got {}", grid.len())));
    }
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Critical("grid must be strictly ascending".into()));
    }
    for &p in grid {
        check_probability(p)?;
    }
    if g.node_count() < 2 {
        return Err(Error::Critical("graph needs at least 2 nodes".into()));
    }
    if runs_per_p == 0 {
        return Err(Error::Critical("runs_per_p must be positive".into()));
    }

    let curve: Vec<SusceptibilityPoint<T>> = grid
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let sample = Ensemble {
                graph: g,
                seeds: SeedSource::Random { count: 1 },
                p,
                realizations: runs_per_p,
                rng_seed: derive_seed(rng_seed, &[i as u64]),
                draws: Draws::PerAttempt,
            }
            .sizes();
            SusceptibilityPoint {
                p,
                mean_size: sample.moment(1),
                second_moment: sample.moment(2),
                susceptibility: sample.susceptibility(),
            }
        })
        .collect();

    let best = curve
        .iter()
        .enumerate()
        .fold(0, |best, (i, pt)| if pt.susceptibility > curve[best].susceptibility { i } else { best });
    Ok(CriticalEstimate { p_c: curve[best].p, curve })
}

/// Bond-percolation threshold of a configuration-model graph with the given
/// degree sequence: `<k> / (<k^2> - <k>)`. `None` when the denominator is not
/// positive (no giant component possible).
pub fn molloy_reed_threshold<T: Real>(degrees: &[usize]) -> Option<T> {
    if degrees.is_empty() {
        return None;
    }
    let n = T::from_count(degrees.len());
    let k1: T = degrees.iter().map(|&k| T::from_count(k)).sum::<T>() / n;
    let k2: T = degrees.iter().map(|&k| T::from_count(k * k)).sum::<T>() / n;
    let denom = k2 - k1;
    (denom > T::zero()).then(|| k1 / denom)
}

/// `points` log-spaced probabilities spanning `[lo, hi] × threshold`, clipped
/// to `(0, 1]` and deduplicated.
pub fn log_spaced_grid<T: Real>(center: T, lo: T, hi: T, points: usize) -> Vec<T> {
    let a = (center * lo).ln();
    let b = (center * hi).ln();
    let mut grid: Vec<T> = (0..points)
        .map(|i| {
            let f = if points > 1 { T::from_count(i) / T::from_count(points - 1) } else { T::zero() };
            (a + (b - a) * f).exp().min(T::one())
        })
        .collect();
    grid.dedup();
    grid
}

/// Default grid: 40 log-spaced points over `[0.2, 5] ×` the degree-based
/// threshold estimate.
pub fn default_critical_grid<T: Real>(g: &Graph) -> Result<Vec<T>> {
    let center = molloy_reed_threshold::<T>(&g.degrees())
        .ok_or_else(|| Error::Critical("degree sequence admits no percolation threshold".into()))?;
    let grid = log_spaced_grid(center, T::lit(0.2), T::lit(5.0), 40);
    if grid.len() < 3 {
        return Err(Error::Critical("threshold too close to 1 for a useful grid".into()));
    }
    Ok(grid)
}
