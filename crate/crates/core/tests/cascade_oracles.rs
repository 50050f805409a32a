//! Monte-Carlo estimates checked against exact expectations obtained by
//! enumerating every open/closed outcome of the edges of small graphs.

use std::collections::VecDeque;

use fairseed::graph::Graph;
use fairseed::icm::{batch_simulate, Draws, Ensemble, SeedSource, SimulationConfig};
use fairseed::metrics::{compute_stats, simulate_information};
use fairseed::rng::child_rng;
use rand::seq::index;
use rand::Rng;

/// Exact per-node expectations of activation, `1/(t+1)` and their squares,
/// plus the first two moments of the cascade size.
struct Exact {
    nu: Vec<f64>,
    tau: Vec<f64>,
    tau_sq: Vec<f64>,
    size: f64,
    size_sq: f64,
}

fn enumerate(n: usize, edges: &[(usize, usize)], seeds: &[usize], p: f64) -> Exact {
    let e = edges.len();
    assert!(e <= 16);
    let mut out = Exact { nu: vec![0.0; n], tau: vec![0.0; n], tau_sq: vec![0.0; n], size: 0.0, size_sq: 0.0 };
    for mask in 0u32..(1 << e) {
        let open = mask.count_ones() as i32;
        let weight = p.powi(open) * (1.0 - p).powi(e as i32 - open);
        let mut adj = vec![Vec::new(); n];
        for (i, &(a, b)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let mut dist = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for &s in seeds {
            dist[s] = 0;
            queue.push_back(s);
        }
        while let Some(v) = queue.pop_front() {
            for &u in &adj[v] {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        let mut size = 0.0;
        for v in 0..n {
            if dist[v] != usize::MAX {
                size += 1.0;
                let r = 1.0 / (dist[v] as f64 + 1.0);
                out.nu[v] += weight;
                out.tau[v] += weight * r;
                out.tau_sq[v] += weight * r * r;
            }
        }
        out.size += weight * size;
        out.size_sq += weight * size * size;
    }
    out
}

fn random_small_graph(seed: u64) -> (usize, Vec<(usize, usize)>) {
    let mut rng = child_rng(seed, &[]);
    let n = rng.gen_range(3..=9);
    let all: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let e = rng.gen_range(1..=12.min(all.len()));
    let edges = index::sample(&mut rng, all.len(), e).iter().map(|i| all[i]).collect();
    (n, edges)
}

#[test]
fn mean_cascade_size_matches_enumeration() {
    let m = 100_000;
    for g_seed in 0..20 {
        let (n, edges) = random_small_graph(g_seed);
        let g = Graph::from_edges(n, edges.iter().copied()).unwrap().0;
        let seeds = [0];
        for (j, p) in [0.2, 0.5, 0.8].into_iter().enumerate() {
            let exact = enumerate(n, &edges, &seeds, p);
            let se = ((exact.size_sq - exact.size * exact.size).max(0.0) / m as f64).sqrt();
            for draws in [Draws::PerAttempt, Draws::LiveEdge] {
                let ens = Ensemble { graph: &g, seeds: SeedSource::Fixed(&seeds), p, realizations: m, rng_seed: g_seed * 10 + j as u64, draws };
                let mean = simulate_information(&ens).mean_cascade_size();
                assert!(
                    (mean - exact.size).abs() <= 3.0 * se + 1e-12,
                    "graph {g_seed} p {p} {draws:?}: {mean} vs {} (se {se})",
                    exact.size
                );
            }
        }
    }
}

#[test]
fn per_node_frequency_and_recency_match_enumeration() {
    // many simultaneous comparisons, so a wider band than the single-statistic test
    let m = 100_000;
    for g_seed in 100..110 {
        let (n, edges) = random_small_graph(g_seed);
        let g = Graph::from_edges(n, edges.iter().copied()).unwrap().0;
        let seeds = [0, n - 1];
        let p = 0.45;
        let exact = enumerate(n, &edges, &seeds, p);
        let stats = compute_stats::<f64>(&batch_simulate(&g, &seeds, &SimulationConfig::new(p, m, g_seed)).unwrap()).unwrap();
        for v in 0..n {
            let se_nu = (exact.nu[v] * (1.0 - exact.nu[v])).max(0.0).sqrt() / (m as f64).sqrt();
            let se_tau = (exact.tau_sq[v] - exact.tau[v] * exact.tau[v]).max(0.0).sqrt() / (m as f64).sqrt();
            assert!((stats.nu[v] - exact.nu[v]).abs() <= 4.5 * se_nu + 1e-12, "nu node {v}");
            assert!((stats.tau[v] - exact.tau[v]).abs() <= 4.5 * se_tau + 1e-12, "tau node {v}");
        }
    }
}

#[test]
fn live_edge_recency_matches_enumeration() {
    let m = 100_000;
    for g_seed in 300..306 {
        let (n, edges) = random_small_graph(g_seed);
        let g = Graph::from_edges(n, edges.iter().copied()).unwrap().0;
        let seeds = [n / 2];
        let exact = enumerate(n, &edges, &seeds, 0.6);
        let ens = Ensemble { graph: &g, seeds: SeedSource::Fixed(&seeds), p: 0.6, realizations: m, rng_seed: g_seed, draws: Draws::LiveEdge };
        let stats = simulate_information(&ens).finish();
        for v in 0..n {
            let se_nu = (exact.nu[v] * (1.0 - exact.nu[v])).max(0.0).sqrt() / (m as f64).sqrt();
            let se_tau = (exact.tau_sq[v] - exact.tau[v] * exact.tau[v]).max(0.0).sqrt() / (m as f64).sqrt();
            assert!((stats.nu[v] - exact.nu[v]).abs() <= 4.5 * se_nu + 1e-12, "nu node {v}");
            assert!((stats.tau[v] - exact.tau[v]).abs() <= 4.5 * se_tau + 1e-12, "tau node {v}");
        }
    }
}

#[test]
fn mean_size_is_monotone_in_p() {
    let m = 40_000;
    for g_seed in 200..210 {
        let (n, edges) = random_small_graph(g_seed);
        let g = Graph::from_edges(n, edges.iter().copied()).unwrap().0;
        let seeds = [0];
        let ps = [0.1, 0.3, 0.5, 0.7, 0.9];
        let runs: Vec<(f64, f64)> = ps
            .iter()
            .enumerate()
            .map(|(j, &p)| {
                let sizes = Ensemble { graph: &g, seeds: SeedSource::Fixed(&seeds), p, realizations: m, rng_seed: j as u64, draws: Draws::PerAttempt }.sizes();
                let mean: f64 = sizes.moment(1);
                let var = sizes.moment::<f64>(2) - mean * mean;
                (mean, var / m as f64)
            })
            .collect();
        for w in runs.windows(2) {
            let ((lo, v1), (hi, v2)) = (w[0], w[1]);
            assert!(hi - lo >= -3.0 * (v1 + v2).sqrt(), "graph {g_seed}: {lo} then {hi}");
        }
    }
}
