//! Seed-set construction: highest degree, k-core, degree discount, CoreHD and
//! the uniform random benchmark.
//!
//! Every selector breaks ties with a seeded uniform random priority per node,
//! so results are reproducible without favoring low node ids.

use std::cmp::Reverse;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::rng::child_rng;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Method {
    Hd,
    Kc,
    Dd,
    Chd,
    Random,
    Ga,
}

impl Method {
    pub const HEURISTICS: [Method; 4] = [Method::Hd, Method::Kc, Method::Dd, Method::Chd];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Hd => "HD",
            Method::Kc => "KC",
            Method::Dd => "DD",
            Method::Chd => "CHD",
            Method::Random => "RANDOM",
            Method::Ga => "GA",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "HD" => Ok(Method::Hd),
            "KC" => Ok(Method::Kc),
            "DD" => Ok(Method::Dd),
            "CHD" => Ok(Method::Chd),
            "RANDOM" => Ok(Method::Random),
            "GA" => Ok(Method::Ga),
            other => Err(Error::Config(format!("unknown method '{other}'"))),
        }
    }
}

/// Distinct, valid node ids chosen by one method.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedSet {
    method: Method,
    nodes: Vec<NodeId>,
    budget_fraction: f64,
}

impl SeedSet {
    pub fn new(method: Method, nodes: Vec<NodeId>, node_count: usize) -> Result<Self> {
        if nodes.is_empty() || nodes.len() > node_count {
            return Err(Error::BudgetOutOfRange { k: nodes.len(), n: node_count });
        }
        let mut seen = vec![false; node_count];
        for &v in &nodes {
            if v >= node_count {
                return Err(Error::NodeOutOfRange { id: v, n: node_count });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::Config(format!("duplicate seed node {v}")));
            }
        }
        let budget_fraction = nodes.len() as f64 / node_count as f64;
        Ok(SeedSet { method, nodes, budget_fraction })
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn budget_fraction(&self) -> f64 {
        self.budget_fraction
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.nodes.contains(&v)
    }

    pub fn to_record(&self, labels: &[String]) -> SeedSetRecord {
        SeedSetRecord {
            method: self.method,
            budget_fraction: self.budget_fraction,
            nodes: self.nodes.iter().map(|&v| labels[v].clone()).collect(),
        }
    }

    pub fn from_record(record: &SeedSetRecord, labels: &[String]) -> Result<Self> {
        let index: HashMap<&str, NodeId> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let nodes = record
            .nodes
            .iter()
            .map(|l| index.get(l.as_str()).copied().ok_or_else(|| Error::Config(format!("unknown node label '{l}'"))))
            .collect::<Result<Vec<_>>>()?;
        SeedSet::new(record.method, nodes, labels.len())
    }
}

impl AsRef<[NodeId]> for SeedSet {
    fn as_ref(&self) -> &[NodeId] {
        &self.nodes
    }
}

/// JSON form of a seed set, keyed by original node labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedSetRecord {
    pub method: Method,
    pub budget_fraction: f64,
    pub nodes: Vec<String>,
}

/// `round(fraction * n)`, at least one node.
pub fn seed_budget(node_count: usize, fraction: f64) -> Result<usize> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::Config(format!("budget fraction {fraction} outside (0, 1]")));
    }
    Ok(((fraction * node_count as f64).round() as usize).clamp(1, node_count.max(1)))
}

fn check_budget(g: &Graph, k: usize) -> Result<()> {
    if k == 0 || k > g.node_count() {
        Err(Error::BudgetOutOfRange { k, n: g.node_count() })
    } else {
        Ok(())
    }
}

fn tie_priorities(n: usize, tie_seed: u64) -> Vec<u64> {
    let mut rng = child_rng(tie_seed, &[0x7133]);
    (0..n).map(|_| rng.gen()).collect()
}

fn take_sorted_by<K: Ord>(g: &Graph, k: usize, key: impl Fn(NodeId) -> K) -> Vec<NodeId> {
    let mut order: Vec<NodeId> = g.nodes().collect();
    order.sort_by_cached_key(|&v| key(v));
    order.truncate(k);
    order
}

/// The `k` nodes of largest degree.
pub fn select_hd(g: &Graph, k: usize, tie_seed: u64) -> Result<SeedSet> {
    check_budget(g, k)?;
    let prio = tie_priorities(g.node_count(), tie_seed);
    let nodes = take_sorted_by(g, k, |v| (Reverse(g.degree(v)), prio[v]));
    SeedSet::new(Method::Hd, nodes, g.node_count())
}

/// Highest core number first, then highest degree.
pub fn select_kc(g: &Graph, k: usize, tie_seed: u64) -> Result<SeedSet> {
    check_budget(g, k)?;
    let prio = tie_priorities(g.node_count(), tie_seed);
    let core = g.core_numbers();
    let nodes = take_sorted_by(g, k, |v| (Reverse(core[v]), Reverse(g.degree(v)), prio[v]));
    SeedSet::new(Method::Kc, nodes, g.node_count())
}

/// Degree discount: greedily pick the node maximizing
/// `d - 2t - (d - t) t p`, where `t` counts already selected neighbors.
pub fn select_dd<T: Real>(g: &Graph, k: usize, p: T, tie_seed: u64) -> Result<SeedSet> {
    check_budget(g, k)?;
    crate::icm::check_probability(p)?;
    let n = g.node_count();
    let prio = tie_priorities(n, tie_seed);
    let two = T::lit(2.0);
    let score = |d: usize, t: usize| {
        let (d, t) = (T::from_count(d), T::from_count(t));
        d - two * t - (d - t) * t * p
    };
    let mut discount: Vec<T> = g.nodes().map(|v| T::from_count(g.degree(v))).collect();
    let mut selected_neighbors = vec![0usize; n];
    let mut selected = vec![false; n];
    let mut nodes = Vec::with_capacity(k);

    for _ in 0..k {
        let mut best: Option<NodeId> = None;
        for v in g.nodes().filter(|&v| !selected[v]) {
            best = match best {
                None => Some(v),
                Some(b) if discount[v] > discount[b] || (discount[v] == discount[b] && prio[v] < prio[b]) => Some(v),
                keep => keep,
            };
        }
        let v = best.expect("k <= n leaves a candidate");
        selected[v] = true;
        nodes.push(v);
        for &u in g.neighbors(v) {
            if !selected[u] {
                selected_neighbors[u] += 1;
                discount[u] = score(g.degree(u), selected_neighbors[u]);
            }
        }
    }
    SeedSet::new(Method::Dd, nodes, n)
}

/// Residual 2-core tracked under node removals, with its nodes ordered by
/// core degree then tie priority.
struct TwoCore<'g> {
    graph: &'g Graph,
    prio: Vec<u64>,
    in_core: Vec<bool>,
    core_deg: Vec<usize>,
    queue: BTreeSet<(usize, Reverse<u64>, NodeId)>,
}

impl<'g> TwoCore<'g> {
    fn new(graph: &'g Graph, prio: Vec<u64>) -> Self {
        let n = graph.node_count();
        let mut core = TwoCore { graph, prio, in_core: vec![true; n], core_deg: graph.degrees(), queue: BTreeSet::new() };
        let low: Vec<NodeId> = graph.nodes().filter(|&v| core.core_deg[v] < 2).collect();
        for &v in &low {
            core.in_core[v] = false;
        }
        core.peel(low);
        core.queue = graph.nodes().filter(|&v| core.in_core[v]).map(|v| core.key(v)).collect();
        core
    }

    fn key(&self, v: NodeId) -> (usize, Reverse<u64>, NodeId) {
        (self.core_deg[v], Reverse(self.prio[v]), v)
    }

    /// Drops `stack` (already marked out of the core) and everything that
    /// falls below degree 2 as a consequence.
    fn peel(&mut self, mut stack: Vec<NodeId>) {
        while let Some(v) = stack.pop() {
            for &u in self.graph.neighbors(v) {
                if self.in_core[u] {
                    self.queue.remove(&self.key(u));
                    self.core_deg[u] -= 1;
                    if self.core_deg[u] < 2 {
                        self.in_core[u] = false;
                        stack.push(u);
                    } else {
                        self.queue.insert(self.key(u));
                    }
                }
            }
        }
    }

    /// Removes and returns the highest-degree node of the 2-core.
    fn pop_max(&mut self) -> Option<NodeId> {
        let (_, _, v) = self.queue.pop_last()?;
        self.in_core[v] = false;
        self.peel(vec![v]);
        Some(v)
    }
}

/// CoreHD with a budget: repeatedly remove the highest-degree node of the
/// current 2-core. If the 2-core empties first, the remaining slots go to the
/// nodes of highest degree in the residual forest.
pub fn select_chd(g: &Graph, k: usize, tie_seed: u64) -> Result<SeedSet> {
    check_budget(g, k)?;
    let n = g.node_count();
    let prio = tie_priorities(n, tie_seed);
    let mut core = TwoCore::new(g, prio.clone());
    let mut removed = vec![false; n];
    let mut nodes = Vec::with_capacity(k);

    while nodes.len() < k {
        let Some(v) = core.pop_max() else { break };
        removed[v] = true;
        nodes.push(v);
    }

    if nodes.len() < k {
        let residual = |v: NodeId| g.neighbors(v).iter().filter(|&&u| !removed[u]).count();
        let mut rest: Vec<NodeId> = g.nodes().filter(|&v| !removed[v]).collect();
        rest.sort_by_cached_key(|&v| (Reverse(residual(v)), prio[v]));
        nodes.extend(rest.into_iter().take(k - nodes.len()));
    }
    SeedSet::new(Method::Chd, nodes, n)
}

/// `k` distinct nodes uniformly without replacement.
pub fn select_random(g: &Graph, k: usize, rng_seed: u64) -> Result<SeedSet> {
    check_budget(g, k)?;
    let mut rng = child_rng(rng_seed, &[0x7a4d]);
    let nodes = rand::seq::index::sample(&mut rng, g.node_count(), k).into_vec();
    SeedSet::new(Method::Random, nodes, g.node_count())
}

/// Dispatches to the selector for `method` (not `Ga`).
pub fn select<T: Real>(g: &Graph, method: Method, k: usize, p: T, seed: u64) -> Result<SeedSet> {
    match method {
        Method::Hd => select_hd(g, k, seed),
        Method::Kc => select_kc(g, k, seed),
        Method::Dd => select_dd(g, k, p, seed),
        Method::Chd => select_chd(g, k, seed),
        Method::Random => select_random(g, k, seed),
        Method::Ga => Err(Error::Config("GA seed sets come from the optimizer".into())),
    }
}

/// Mean multi-source hop distance from a seed set to the nodes it can reach.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dispersion<T> {
    pub mean_distance: T,
    pub reachable: usize,
    pub unreachable: usize,
}

pub fn seed_dispersion<T: Real>(g: &Graph, seeds: &[NodeId]) -> Dispersion<T> {
    let dist = g.bfs_distances(seeds);
    let reached: Vec<u32> = dist.iter().flatten().copied().collect();
    let total: T = reached.iter().map(|&d| T::from_count(d as usize)).sum();
    let mean_distance = if reached.is_empty() { T::nan() } else { total / T::from_count(reached.len()) };
    Dispersion { mean_distance, reachable: reached.len(), unreachable: dist.len() - reached.len() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(n: usize, e: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, e.iter().copied()).unwrap().0
    }

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap().0
    }

    fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap().0
    }

    fn clique(nodes: &[usize]) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for (i, &a) in nodes.iter().enumerate() {
            for &b in &nodes[i + 1..] {
                e.push((a, b));
            }
        }
        e
    }

    fn sorted(s: &SeedSet) -> Vec<usize> {
        let mut v = s.nodes().to_vec();
        v.sort();
        v
    }

    #[test]
    fn hd_examples() {
        assert_eq!(select_hd(&star(5), 1, 0).unwrap().nodes(), &[0]);
        assert_eq!(sorted(&select_hd(&path(4), 2, 0).unwrap()), vec![1, 2]);
        let cycle = g(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let a = select_hd(&cycle, 3, 42).unwrap();
        assert_eq!(a, select_hd(&cycle, 3, 42).unwrap());
        assert_eq!(a.len(), 3);
    }

    #[test]
    fn hd_ties_depend_on_seed() {
        let cycle = Graph::from_edges(50, (0..50).map(|i| (i, (i + 1) % 50))).unwrap().0;
        let sets: BTreeSet<Vec<usize>> = (0..10).map(|s| sorted(&select_hd(&cycle, 3, s).unwrap())).collect();
        assert!(sets.len() > 1);
    }

    #[test]
    fn budget_checks() {
        let p = path(4);
        assert!(matches!(select_hd(&p, 0, 0), Err(Error::BudgetOutOfRange { .. })));
        assert!(matches!(select_kc(&p, 5, 0), Err(Error::BudgetOutOfRange { .. })));
        assert!(select_dd(&p, 5, 0.1f64, 0).is_err());
        assert!(select_chd(&p, 0, 0).is_err());
        assert!(select_random(&p, 5, 0).is_err());
        assert!(select_dd(&p, 1, 1.5f64, 0).is_err());
    }

    #[test]
    fn kc_examples() {
        // K5 on 0..5 plus pendant chain 4-5-6-7
        let mut e = clique(&[0, 1, 2, 3, 4]);
        e.extend([(4, 5), (5, 6), (6, 7)]);
        let s = select_kc(&g(8, &e), 2, 1).unwrap();
        assert!(s.nodes().iter().all(|&v| v < 5));

        // tree: all core 1 -> degree order
        let tree = g(7, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 6)]);
        assert_eq!(sorted(&select_kc(&tree, 2, 3).unwrap()), vec![0, 1]);

        // triangle 0,1,2 with pendants 3,4,5
        let t = g(6, &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 4), (2, 5)]);
        assert_eq!(sorted(&select_kc(&t, 3, 9).unwrap()), vec![0, 1, 2]);
    }

    #[test]
    fn dd_examples() {
        // star center 0 with leaves 1..=5, triangle 6,7,8
        let mut e: Vec<_> = (1..=5).map(|i| (0, i)).collect();
        e.extend([(6, 7), (7, 8), (8, 6)]);
        let s = select_dd(&g(9, &e), 2, 0.1f64, 0).unwrap();
        assert_eq!(s.nodes()[0], 0);
        assert!((6..=8).contains(&s.nodes()[1]));

        // two disjoint stars, p = 0
        let mut e: Vec<_> = (1..=4).map(|i| (0, i)).collect();
        e.extend((6..=8).map(|i| (5, i)));
        assert_eq!(select_dd(&g(9, &e), 2, 0.0f64, 0).unwrap().nodes(), &[0, 5]);
    }

    #[test]
    fn dd_first_pick_has_max_degree() {
        let e = [(0, 1), (1, 2), (2, 3), (3, 1), (1, 4)];
        assert_eq!(select_dd(&g(5, &e), 1, 0.3f64, 7).unwrap().nodes(), &[1]);
    }

    #[test]
    fn chd_examples() {
        // K4 on 0..4 and a long path hanging from node 10 (not connected to K4 except through 3)
        let mut e = clique(&[0, 1, 2, 3]);
        e.extend((3..14).map(|i| (i, i + 1)));
        let s = select_chd(&g(15, &e), 1, 0).unwrap();
        assert!(s.nodes()[0] < 4, "{:?}", s.nodes());

        let mut e = clique(&[0, 1, 2, 3, 4]);
        e.extend(clique(&[5, 6, 7, 8]));
        let s = select_chd(&g(9, &e), 2, 5).unwrap();
        assert!(s.nodes()[0] < 5);
    }

    #[test]
    fn chd_on_tree_equals_hd() {
        let tree = g(9, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 6), (6, 7), (6, 8)]);
        for k in 1..=9 {
            assert_eq!(select_chd(&tree, k, 11).unwrap().nodes(), select_hd(&tree, k, 11).unwrap().nodes());
        }
    }

    #[test]
    fn chd_degree_is_measured_inside_the_core() {
        // hub 0 has many pendant leaves but only two core neighbors;
        // node 3 has degree 3 inside the 2-core (K4 on 3..7 minus nothing)
        let mut e: Vec<_> = (8..20).map(|i| (0, i)).collect();
        e.extend([(0, 1), (1, 2), (2, 0)]);
        e.extend(clique(&[3, 4, 5, 6]));
        let s = select_chd(&g(20, &e), 1, 0).unwrap();
        assert!((3..7).contains(&s.nodes()[0]), "{:?}", s.nodes());
    }

    #[test]
    fn chd_falls_back_after_core_empties() {
        // triangle plus pendants: removing one triangle node kills the 2-core
        let t = g(6, &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 4), (2, 5)]);
        let s = select_chd(&t, 3, 1).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.nodes()[0] < 3);
    }

    #[test]
    fn random_examples() {
        let p = path(6);
        assert_eq!(sorted(&select_random(&p, 6, 1).unwrap()), (0..6).collect::<Vec<_>>());
        assert_eq!(select_random(&p, 3, 8).unwrap(), select_random(&p, 3, 8).unwrap());
    }

    #[test]
    fn random_single_draw_is_uniform() {
        let p = path(10);
        let draws = 10_000;
        let mut freq = [0usize; 10];
        for s in 0..draws {
            freq[select_random(&p, 1, s).unwrap().nodes()[0]] += 1;
        }
        let se = (0.1f64 * 0.9 / draws as f64).sqrt();
        for f in freq {
            assert!((f as f64 / draws as f64 - 0.1).abs() < 3.0 * se, "{freq:?}");
        }
    }

    #[test]
    fn dispersion_examples() {
        let p = path(5);
        let d: Dispersion<f64> = seed_dispersion(&p, &[2]);
        assert!((d.mean_distance - 1.2).abs() < 1e-12);
        assert!((seed_dispersion::<f64>(&p, &[0, 4]).mean_distance - 0.8).abs() < 1e-12);
        assert_eq!(seed_dispersion::<f64>(&p, &[0, 1, 2, 3, 4]).mean_distance, 0.0);
        let split = g(4, &[(0, 1), (2, 3)]);
        let d: Dispersion<f32> = seed_dispersion(&split, &[0]);
        assert_eq!((d.reachable, d.unreachable), (2, 2));
        assert_eq!(d.mean_distance, 0.5);
    }

    #[test]
    fn record_round_trip_uses_labels() {
        let labels: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let s = SeedSet::new(Method::Dd, vec![2, 0], 3).unwrap();
        let rec = s.to_record(&labels);
        assert_eq!(rec.nodes, vec!["c", "a"]);
        assert_eq!(SeedSet::from_record(&rec, &labels).unwrap(), s);
    }

    #[test]
    fn seed_set_validation() {
        assert!(SeedSet::new(Method::Hd, vec![], 3).is_err());
        assert!(SeedSet::new(Method::Hd, vec![1, 1], 3).is_err());
        assert!(SeedSet::new(Method::Hd, vec![3], 3).is_err());
    }

    #[test]
    fn budget_rounding() {
        assert_eq!(seed_budget(2000, 0.01).unwrap(), 20);
        assert_eq!(seed_budget(30, 0.01).unwrap(), 1);
        assert_eq!(seed_budget(150, 0.01).unwrap(), 2);
        assert!(seed_budget(100, 0.0).is_err());
        assert!(seed_budget(100, 1.5).is_err());
    }

    #[test]
    fn method_names() {
        for m in [Method::Hd, Method::Kc, Method::Dd, Method::Chd, Method::Random, Method::Ga] {
            assert_eq!(m.as_str().parse::<Method>().unwrap(), m);
        }
        assert!("PAGERANK".parse::<Method>().is_err());
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (3usize..20).prop_flat_map(|n| {
            prop::collection::vec((0..n, 0..n), 0..50).prop_map(move |e| Graph::from_edges(n, e).unwrap().0)
        })
    }

    fn arb_forest() -> impl Strategy<Value = Graph> {
        (3usize..25).prop_flat_map(|n| {
            prop::collection::vec(any::<prop::sample::Index>(), n - 1).prop_map(move |parents| {
                // node i+1 attaches to an earlier node, or stays isolated when the index says so
                let edges = parents
                    .iter()
                    .enumerate()
                    .filter_map(|(i, ix)| {
                        let j = ix.index(i + 2);
                        (j <= i).then_some((i + 1, j))
                    })
                    .collect::<Vec<_>>();
                Graph::from_edges(n, edges).unwrap().0
            })
        })
    }

    proptest! {
        #[test]
        fn selectors_return_k_distinct_valid(g in arb_graph(), kfrac in 0.0f64..1.0, seed in any::<u64>()) {
            let k = 1 + (kfrac * (g.node_count() - 1) as f64) as usize;
            for m in [Method::Hd, Method::Kc, Method::Dd, Method::Chd, Method::Random] {
                let s = select(&g, m, k, 0.1f64, seed).unwrap();
                prop_assert_eq!(s.len(), k);
                let set: BTreeSet<_> = s.nodes().iter().collect();
                prop_assert_eq!(set.len(), k);
                prop_assert_eq!(s, select(&g, m, k, 0.1f64, seed).unwrap());
            }
        }

        #[test]
        fn chd_equals_hd_on_forests(g in arb_forest(), seed in any::<u64>(), kfrac in 0.0f64..1.0) {
            let k = 1 + (kfrac * (g.node_count() - 1) as f64) as usize;
            let (chd, hd) = (select_chd(&g, k, seed).unwrap(), select_hd(&g, k, seed).unwrap());
            prop_assert_eq!(chd.nodes(), hd.nodes());
        }

        #[test]
        fn dd_matches_recomputed_scores(g in arb_graph(), seed in any::<u64>(), kfrac in 0.0f64..1.0, p in 0.0f64..1.0) {
            // reference: rescore every candidate from scratch before each pick
            let k = 1 + (kfrac * (g.node_count() - 1) as f64) as usize;
            let prio = tie_priorities(g.node_count(), seed);
            let mut chosen: Vec<usize> = Vec::new();
            for _ in 0..k {
                let score = |v: usize| {
                    let d = g.degree(v) as f64;
                    let t = g.neighbors(v).iter().filter(|u| chosen.contains(u)).count() as f64;
                    if t == 0.0 { d } else { d - 2.0 * t - (d - t) * t * p }
                };
                let best = g.nodes().filter(|v| !chosen.contains(v))
                    .max_by(|&a, &b| score(a).partial_cmp(&score(b)).unwrap().then(prio[b].cmp(&prio[a])))
                    .unwrap();
                chosen.push(best);
            }
            let dd = select_dd(&g, k, p, seed).unwrap();
            prop_assert_eq!(dd.nodes(), &chosen[..]);
        }

        #[test]
        fn dd_at_zero_p_matches_hd_degrees_when_both_pick_independent_sets(g in arb_graph(), seed in any::<u64>(), kfrac in 0.0f64..1.0) {
            // an isolated node can outscore a neighbor of an earlier pick, so
            // independence of the DD picks alone is not enough
            let k = 1 + (kfrac * (g.node_count() - 1) as f64) as usize;
            let dd = select_dd(&g, k, 0.0f64, seed).unwrap();
            let hd = select_hd(&g, k, seed).unwrap();
            let independent = |s: &[usize]| s.iter().enumerate().all(|(i, &a)| s[..i].iter().all(|&b| !g.has_edge(a, b)));
            if independent(dd.nodes()) && independent(hd.nodes()) {
                let mut a: Vec<_> = dd.nodes().iter().map(|&v| g.degree(v)).collect();
                let mut b: Vec<_> = hd.nodes().iter().map(|&v| g.degree(v)).collect();
                a.sort();
                b.sort();
                prop_assert_eq!(a, b);
            }
        }
    }
}
