//! Configuration-model generator.
//!
//! A degree sequence is drawn from the requested distribution, its sum is made
//! even, stubs are matched uniformly at random and the resulting self-loops and
//! multi-edges are erased.

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::Normal;
use serde::{Deserialize, Serialize};

use super::{EdgeCleanup, Graph};
use crate::error::{Error, Result};
use crate::rng::child_rng;

const PARITY_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum DegreeModel {
    /// `P(k) ∝ k^-gamma` on `[min_degree, floor(sqrt(N))]`.
    ScaleFree { gamma: f64 },
    /// Rounded normal, clipped to `[min_degree, N-1]`.
    NormalDegree { mean_degree: f64, degree_stddev: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    #[serde(flatten)]
    pub model: DegreeModel,
    pub node_count: usize,
    pub min_degree: usize,
    pub rng_seed: u64,
}

impl GeneratorConfig {
    pub fn scale_free(node_count: usize, gamma: f64, min_degree: usize, rng_seed: u64) -> Self {
        GeneratorConfig { model: DegreeModel::ScaleFree { gamma }, node_count, min_degree, rng_seed }
    }

    pub fn normal(node_count: usize, mean_degree: f64, degree_stddev: f64, min_degree: usize, rng_seed: u64) -> Self {
        GeneratorConfig {
            model: DegreeModel::NormalDegree { mean_degree, degree_stddev },
            node_count,
            min_degree,
            rng_seed,
        }
    }

    /// Largest degree the sampler may produce.
    pub fn max_degree(&self) -> usize {
        match self.model {
            DegreeModel::ScaleFree { .. } => (self.node_count as f64).sqrt().floor() as usize,
            DegreeModel::NormalDegree { .. } => self.node_count.saturating_sub(1),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Config(m));
        if self.node_count < 2 {
            return fail(format!("node_count must be at least 2, got {}", self.node_count));
        }
        if self.min_degree < 1 {
            return fail("min_degree must be at least 1".into());
        }
        match self.model {
            DegreeModel::ScaleFree { gamma } => {
                if !(gamma > 1.0) || !gamma.is_finite() {
                    return fail(format!("gamma must be > 1, got {gamma}"));
                }
                if self.max_degree() < self.min_degree {
                    return fail(format!(
                        "structural cutoff sqrt(N) = {} is below min_degree {}",
                        self.max_degree(),
                        self.min_degree
                    ));
                }
            }
            DegreeModel::NormalDegree { mean_degree, degree_stddev } => {
                if !mean_degree.is_finite() || mean_degree < self.min_degree as f64 {
                    return fail(format!("mean_degree {mean_degree} must be >= min_degree {}", self.min_degree));
                }
                if !(degree_stddev >= 0.0) || !degree_stddev.is_finite() {
                    return fail(format!("degree_stddev must be >= 0, got {degree_stddev}"));
                }
                if self.min_degree > self.max_degree() {
                    return fail("min_degree exceeds N-1".into());
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct GeneratedGraph {
    pub graph: Graph,
    /// Degree sequence before stub matching.
    pub target_degrees: Vec<usize>,
    pub erased: EdgeCleanup,
}

enum Sampler {
    PowerLaw { offset: usize, weights: WeightedIndex<f64> },
    Normal { dist: Normal<f64>, lo: usize, hi: usize },
}

impl Sampler {
    fn new(cfg: &GeneratorConfig) -> Result<Self> {
        match cfg.model {
            DegreeModel::ScaleFree { gamma } => {
                let lo = cfg.min_degree;
                let hi = cfg.max_degree();
                let w: Vec<f64> = (lo..=hi).map(|k| (k as f64).powf(-gamma)).collect();
                let weights = WeightedIndex::new(w).map_err(|e| Error::Config(e.to_string()))?;
                Ok(Sampler::PowerLaw { offset: lo, weights })
            }
            DegreeModel::NormalDegree { mean_degree, degree_stddev } => {
                let dist = Normal::new(mean_degree, degree_stddev).map_err(|e| Error::Config(e.to_string()))?;
                Ok(Sampler::Normal { dist, lo: cfg.min_degree, hi: cfg.max_degree() })
            }
        }
    }

    fn sample<R: Rng>(&self, rng: &mut R) -> usize {
        match self {
            Sampler::PowerLaw { offset, weights } => offset + weights.sample(rng),
            Sampler::Normal { dist, lo, hi } => {
                let k = dist.sample(rng).round();
                if k <= *lo as f64 {
                    *lo
                } else if k >= *hi as f64 {
                    *hi
                } else {
                    k as usize
                }
            }
        }
    }
}

pub fn generate(cfg: &GeneratorConfig) -> Result<GeneratedGraph> {
    cfg.validate()?;
    let n = cfg.node_count;
    let mut rng = child_rng(cfg.rng_seed, &[0x6e6e]);
    let sampler = Sampler::new(cfg)?;

    let mut degrees: Vec<usize> = (0..n).map(|_| sampler.sample(&mut rng)).collect();
    let mut total: usize = degrees.iter().sum();
    let mut attempts = 0;
    while total % 2 == 1 {
        if attempts == PARITY_ATTEMPTS {
            return Err(Error::Unrealizable { attempts });
        }
        attempts += 1;
        let i = rng.gen_range(0..n);
        total -= degrees[i];
        degrees[i] = sampler.sample(&mut rng);
        total += degrees[i];
    }

    let mut stubs: Vec<usize> = Vec::with_capacity(total);
    for (v, &d) in degrees.iter().enumerate() {
        stubs.extend(std::iter::repeat_n(v, d));
    }
    stubs.shuffle(&mut rng);
    let pairs = stubs.chunks_exact(2).map(|c| (c[0], c[1]));
    let (graph, erased) = Graph::from_edges(n, pairs)?;
    Ok(GeneratedGraph { graph, target_degrees: degrees, erased })
}
