//! Variation operators on seed sets of fixed size `k`.

use rand::seq::index;
use rand::Rng;
use rayon::prelude::*;

use super::fitness::{stream, FitnessEvaluator};
use crate::error::{Error, Result};
use crate::graph::NodeId;
use crate::scalar::Real;
use crate::seeds::{Method, SeedSet};

/// `count` distinct nodes from `0..n` that are not in `exclude`.
pub(crate) fn sample_excluding<R: Rng + ?Sized>(n: usize, exclude: &[NodeId], count: usize, rng: &mut R) -> Vec<NodeId> {
    let mut blocked = vec![false; n];
    for &v in exclude {
        blocked[v] = true;
    }
    let free = n - exclude.len();
    let count = count.min(free);
    if exclude.len() * 2 <= n && count * 4 <= free {
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let v = rng.gen_range(0..n);
            if !blocked[v] {
                blocked[v] = true;
                out.push(v);
            }
        }
        out
    } else {
        let pool: Vec<NodeId> = (0..n).filter(|&v| !blocked[v]).collect();
        index::sample(rng, pool.len(), count).iter().map(|i| pool[i]).collect()
    }
}

/// Both children draw `k` distinct nodes uniformly from the union of the
/// parents, independently of each other.
pub fn crossover<R: Rng + ?Sized>(a: &[NodeId], b: &[NodeId], rng: &mut R) -> Result<(Vec<NodeId>, Vec<NodeId>)> {
    if a.len() != b.len() {
        return Err(Error::Config(format!("parents differ in size: {} vs {}", a.len(), b.len())));
    }
    let k = a.len();
    let mut union = a.to_vec();
    union.extend(b.iter().copied().filter(|v| !a.contains(v)));
    let mut child = || index::sample(rng, union.len(), k).iter().map(|i| union[i]).collect::<Vec<_>>();
    Ok((child(), child()))
}

/// Crossover on [`SeedSet`]s; children are tagged as GA sets.
pub fn crossover_sets<R: Rng + ?Sized>(a: &SeedSet, b: &SeedSet, node_count: usize, rng: &mut R) -> Result<(SeedSet, SeedSet)> {
    let (x, y) = crossover(a.nodes(), b.nodes(), rng)?;
    Ok((SeedSet::new(Method::Ga, x, node_count)?, SeedSet::new(Method::Ga, y, node_count)?))
}

/// Replaces `round(replace_frac * k)` uniformly chosen seeds with uniformly
/// chosen nodes outside the set.
pub fn mutate_random<R: Rng + ?Sized>(s: &[NodeId], replace_frac: f64, node_count: usize, rng: &mut R) -> Vec<NodeId> {
    let k = s.len();
    let swaps = ((replace_frac * k as f64).round() as usize).min(k).min(node_count - k);
    if swaps == 0 {
        return s.to_vec();
    }
    let incoming = sample_excluding(node_count, s, swaps, rng);
    let mut out = s.to_vec();
    for (slot, v) in index::sample(rng, k, swaps).iter().zip(incoming) {
        out[slot] = v;
    }
    out
}

/// Drops one uniformly chosen seed and inserts the best of
/// `round(neighborhood_frac * N)` random outsiders, judged by the number of
/// non-vulnerable nodes in a `samples`-realization estimate. Ties are broken
/// uniformly at random.
pub fn mutate_tabu<T: Real, R: Rng + ?Sized>(
    s: &[NodeId],
    neighborhood_frac: f64,
    evaluator: &FitnessEvaluator<'_, T>,
    samples: usize,
    rng: &mut R,
) -> Vec<NodeId> {
    let n = evaluator.graph.node_count();
    let k = s.len();
    let drop = rng.gen_range(0..k);
    let mut reduced = s.to_vec();
    reduced.swap_remove(drop);
    let size = ((neighborhood_frac * n as f64).round() as usize).clamp(1, n - reduced.len());
    let candidates = sample_excluding(n, &reduced, size, rng);

    let scores: Vec<usize> = candidates
        .par_iter()
        .map(|&c| {
            let mut trial = reduced.clone();
            trial.push(c);
            evaluator.evaluate(&trial, samples, stream::TABU).fair
        })
        .collect();
    let best = *scores.iter().max().expect("at least one candidate");
    let top: Vec<usize> = (0..candidates.len()).filter(|&i| scores[i] == best).collect();
    let chosen = candidates[top[rng.gen_range(0..top.len())]];

    let mut out = s.to_vec();
    out[drop] = chosen;
    out
}
