//! Deterministic fan-out of a master seed into independent child streams.
//!
//! A child stream is addressed by a path of integers, e.g.
//! `(command, method, realization)`. The same path always yields the same
//! generator, independent of thread scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator used for every stochastic component.
pub type StreamRng = ChaCha8Rng;

#[inline]
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Mixes a master seed and a path into a single 64-bit seed.
pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
    let mut state = master;
    let mut acc = splitmix64(&mut state);
    for &p in path {
        state ^= p.wrapping_mul(0xD6E8_FEB8_6659_FD93);
        acc ^= splitmix64(&mut state);
        state = acc;
    }
    acc
}

/// Child generator for `path` under `master`.
pub fn child_rng(master: u64, path: &[u64]) -> StreamRng {
    let mut state = derive_seed(master, path);
    let mut seed = [0u8; 32];
    for chunk in seed.chunks_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    StreamRng::from_seed(seed)
}

/// Uniform value in `[0, 1)` attached to the undirected edge `{a, b}` in the
/// realization identified by `world`.
#[inline]
pub fn edge_uniform(world: u64, a: usize, b: usize) -> f64 {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    let mut state = world ^ (lo as u64).wrapping_mul(0xD6E8_FEB8_6659_FD93);
    let mixed = splitmix64(&mut state);
    let mut state = mixed ^ (hi as u64).wrapping_mul(0xA076_1D64_78BD_642F);
    (splitmix64(&mut state) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Stable 64-bit tag for a string label (FNV-1a).
pub fn tag(label: &str) -> u64 {
    label.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

/// Order-independent fingerprint of a node set.
pub fn set_fingerprint(nodes: &[usize]) -> u64 {
    let mut sorted = nodes.to_vec();
    sorted.sort_unstable();
    let mut state = 0x5EED_5E75u64;
    let mut acc = 0u64;
    for n in sorted {
        state ^= n as u64;
        acc = acc.rotate_left(5) ^ splitmix64(&mut state);
    }
    acc
}
