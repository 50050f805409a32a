//! Immutable undirected simple graphs and the structural queries the
//! heuristics and metrics rely on.

mod edgelist;
mod generate;

pub use edgelist::{load_edge_list, write_edge_list, write_label_map, LoadReport, LoadedGraph};
pub use generate::{generate, DegreeModel, GeneratedGraph, GeneratorConfig};

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub type NodeId = usize;

/// Edges discarded while building a simple graph.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EdgeCleanup {
    pub duplicate_edges: usize,
    pub self_loops: usize,
}

/// Undirected simple graph in compressed adjacency form.
///
/// Node ids are dense, `0..node_count()`. Adjacency lists are sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
}

impl Graph {
    /// Builds a simple graph over `node_count` nodes, dropping self-loops and
    /// repeated edges (in either orientation).
    pub fn from_edges<I>(node_count: usize, edges: I) -> Result<(Self, EdgeCleanup)>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut cleanup = EdgeCleanup::default();
        let mut pairs = Vec::new();
        for (a, b) in edges {
            for id in [a, b] {
                if id >= node_count {
                    return Err(Error::NodeOutOfRange { id, n: node_count });
                }
            }
            if a == b {
                cleanup.self_loops += 1;
                continue;
            }
            pairs.push((a.min(b), a.max(b)));
        }
        let before = pairs.len();
        pairs.sort_unstable();
        pairs.dedup();
        cleanup.duplicate_edges = before - pairs.len();

        let mut degree = vec![0usize; node_count];
        for &(a, b) in &pairs {
            degree[a] += 1;
            degree[b] += 1;
        }
        let mut offsets = Vec::with_capacity(node_count + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..node_count].to_vec();
        let mut targets = vec![0; offsets[node_count]];
        for &(a, b) in &pairs {
            targets[cursor[a]] = b;
            cursor[a] += 1;
            targets[cursor[b]] = a;
            cursor[b] += 1;
        }
        for i in 0..node_count {
            targets[offsets[i]..offsets[i + 1]].sort_unstable();
        }
        Ok((Graph { offsets, targets }, cleanup))
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, i: NodeId) -> &[NodeId] {
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }

    #[inline]
    pub fn degree(&self, i: NodeId) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.node_count()).map(|i| self.degree(i)).collect()
    }

    pub fn nodes(&self) -> std::ops::Range<NodeId> {
        0..self.node_count()
    }

    /// Each undirected edge once, as `(low, high)`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.nodes()
            .flat_map(move |i| self.neighbors(i).iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
    }

    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        self.neighbors(a).binary_search(&b).is_ok()
    }

    pub fn contains(&self, i: NodeId) -> bool {
        i < self.node_count()
    }

    /// Full adjacency scan for symmetry, self-loops and duplicates.
    pub fn check_invariants(&self) -> bool {
        let mut half = 0usize;
        for i in self.nodes() {
            let adj = self.neighbors(i);
            if adj.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            for &j in adj {
                if j == i || !self.contains(j) || !self.has_edge(j, i) {
                    return false;
                }
            }
            half += adj.len();
        }
        half.is_multiple_of(2) && half / 2 == self.edge_count()
    }

    /// Core number of every node, by bucket-based minimum-degree peeling.
    pub fn core_numbers(&self) -> Vec<usize> {
        let n = self.node_count();
        let mut deg = self.degrees();
        let max_deg = deg.iter().copied().max().unwrap_or(0);

        // Nodes sorted by current degree; `bin[d]` is the first slot of degree d.
        let mut bin = vec![0usize; max_deg + 2];
        for &d in &deg {
            bin[d + 1] += 1;
        }
        for d in 1..bin.len() {
            bin[d] += bin[d - 1];
        }
        let mut pos = vec![0usize; n];
        let mut order = vec![0usize; n];
        {
            let mut next = bin.clone();
            for v in 0..n {
                pos[v] = next[deg[v]];
                order[pos[v]] = v;
                next[deg[v]] += 1;
            }
        }

        for i in 0..n {
            let v = order[i];
            for &u in self.neighbors(v) {
                if deg[u] > deg[v] {
                    let du = deg[u];
                    let pu = pos[u];
                    let pw = bin[du];
                    let w = order[pw];
                    if u != w {
                        order.swap(pu, pw);
                        pos[u] = pw;
                        pos[w] = pu;
                    }
                    bin[du] += 1;
                    deg[u] -= 1;
                }
            }
        }
        deg
    }

    /// Multi-source hop distance; `None` for nodes not reachable from any source.
    pub fn bfs_distances(&self, sources: &[NodeId]) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.node_count()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in self.neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Connected component label per node, labels dense in order of first node.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.node_count()];
        let mut next = 0;
        let mut stack = Vec::new();
        for start in self.nodes() {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            stack.push(start);
            while let Some(u) = stack.pop() {
                for &v in self.neighbors(u) {
                    if label[v] == usize::MAX {
                        label[v] = next;
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// Subgraph induced by `keep` (in the given order); returns the graph
    /// together with the original id of each new node.
    pub fn induced_subgraph(&self, keep: &[NodeId]) -> (Graph, Vec<NodeId>) {
        let mut new_id = vec![usize::MAX; self.node_count()];
        for (k, &v) in keep.iter().enumerate() {
            new_id[v] = k;
        }
        let edges = self
            .edges()
            .filter(|&(a, b)| new_id[a] != usize::MAX && new_id[b] != usize::MAX)
            .map(|(a, b)| (new_id[a], new_id[b]));
        let (g, _) = Graph::from_edges(keep.len(), edges).expect("ids in range");
        (g, keep.to_vec())
    }

    /// Largest connected component (lowest label wins ties).
    pub fn giant_component(&self) -> (Graph, Vec<NodeId>) {
        let labels = self.components();
        let count = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut sizes = vec![0usize; count];
        for &l in &labels {
            sizes[l] += 1;
        }
        let best = (0..count).max_by_key(|&l| (sizes[l], std::cmp::Reverse(l))).unwrap_or(0);
        let keep: Vec<NodeId> = self.nodes().filter(|&v| labels[v] == best).collect();
        self.induced_subgraph(&keep)
    }

    /// Relabels nodes so that old node `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[NodeId]) -> Graph {
        let edges = self.edges().map(|(a, b)| (perm[a], perm[b]));
        Graph::from_edges(self.node_count(), edges).expect("valid permutation").0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap().0
    }

    fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap().0
    }

    fn clique_edges(nodes: &[usize]) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for (i, &a) in nodes.iter().enumerate() {
            for &b in &nodes[i + 1..] {
                e.push((a, b));
            }
        }
        e
    }

    #[test]
    fn degrees() {
        let p = path(3);
        assert_eq!(p.degree(1), 2);
        let (g, _) = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(g.degree(2), 0);
        assert_eq!(star(7).degree(0), 7);
    }

    #[test]
    fn cleanup_counts() {
        let (g, c) = Graph::from_edges(3, [(0, 1), (1, 0), (2, 2), (1, 2), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(c, EdgeCleanup { duplicate_edges: 2, self_loops: 1 });
        assert!(g.check_invariants());
    }

    #[test]
    fn out_of_range_edge() {
        assert!(matches!(Graph::from_edges(2, [(0, 2)]), Err(Error::NodeOutOfRange { id: 2, n: 2 })));
    }

    #[test]
    fn core_numbers_small() {
        let (tri, _) = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(tri.core_numbers(), vec![2, 2, 2]);
        assert_eq!(star(5).core_numbers(), vec![1; 6]);

        let mut e = clique_edges(&[0, 1, 2, 3, 4]);
        e.push((4, 5));
        let (g, _) = Graph::from_edges(6, e).unwrap();
        assert_eq!(g.core_numbers(), vec![4, 4, 4, 4, 4, 1]);
    }

    #[test]
    fn core_numbers_isolated() {
        let (g, _) = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(g.core_numbers(), vec![1, 1, 0]);
    }

    #[test]
    fn bfs_examples() {
        let p = path(4);
        assert_eq!(p.bfs_distances(&[0]), vec![Some(0), Some(1), Some(2), Some(3)]);
        assert_eq!(p.bfs_distances(&[0, 3]), vec![Some(0), Some(1), Some(1), Some(0)]);
        let (g, _) = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.bfs_distances(&[0]), vec![Some(0), Some(1), None, None]);
    }

    #[test]
    fn giant_component_extraction() {
        let (g, _) = Graph::from_edges(7, [(0, 1), (2, 3), (3, 4), (4, 2), (5, 6)]).unwrap();
        let (gc, ids) = g.giant_component();
        assert_eq!(ids, vec![2, 3, 4]);
        assert_eq!(gc.node_count(), 3);
        assert_eq!(gc.edge_count(), 3);
    }

    /// Reference core numbers: k-core membership by repeated deletion.
    fn brute_core_numbers(g: &Graph) -> Vec<usize> {
        let n = g.node_count();
        let mut core = vec![0; n];
        for k in 1..=n {
            let mut alive = vec![true; n];
            loop {
                let mut changed = false;
                for v in 0..n {
                    if alive[v] && g.neighbors(v).iter().filter(|&&u| alive[u]).count() < k {
                        alive[v] = false;
                        changed = true;
                    }
                }
                if !changed {
                    break;
                }
            }
            for v in 0..n {
                if alive[v] {
                    core[v] = k;
                }
            }
        }
        core
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (2usize..14).prop_flat_map(|n| {
            prop::collection::vec((0..n, 0..n), 0..40)
                .prop_map(move |e| Graph::from_edges(n, e).unwrap().0)
        })
    }

    proptest! {
        #[test]
        fn built_graphs_are_simple_and_symmetric(g in arb_graph()) {
            prop_assert!(g.check_invariants());
        }

        #[test]
        fn core_numbers_match_brute_force(g in arb_graph()) {
            prop_assert_eq!(g.core_numbers(), brute_core_numbers(&g));
        }

        #[test]
        fn core_numbers_invariant_under_relabeling(g in arb_graph(), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut perm: Vec<usize> = g.nodes().collect();
            perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let h = g.permuted(&perm);
            let cg = g.core_numbers();
            let ch = h.core_numbers();
            for v in g.nodes() {
                prop_assert_eq!(cg[v], ch[perm[v]]);
            }
        }

        #[test]
        fn bfs_has_predecessor_one_step_closer(g in arb_graph(), src in 0usize..2) {
            let dist = g.bfs_distances(&[src]);
            for v in g.nodes() {
                if let Some(d) = dist[v] {
                    if d > 0 {
                        prop_assert!(g.neighbors(v).iter().any(|&u| dist[u] == Some(d - 1)));
                    }
                }
            }
        }
    }
}
