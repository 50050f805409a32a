//! Seed selection for information cascades under the independent cascade
//! model, with per-node vulnerability measures and a multi-objective
//! genetic search trading spread against fairness.
//!
//! Numerical code is generic over [`Real`] (`f32` or `f64`); the `*F64` and
//! `*F32` aliases below fix the scalar type.
//!
//! ```
//! use fairseed::graph::{generate, GeneratorConfig};
//! use fairseed::icm::{Ensemble, SeedSource};
//! use fairseed::metrics::{benchmark_stats, compute_effective, simulate_information, BenchmarkMode};
//! use fairseed::seeds::select;
//! use fairseed::{Method, SimulationConfigF64};
//!
//! # fn main() -> fairseed::Result<()> {
//! let g = generate(&GeneratorConfig::scale_free(2000, 2.5, 1, 7))?.graph;
//! let sim = SimulationConfigF64::new(0.2, 20_000, 7);
//! let bench = benchmark_stats(&g, 20, &sim, BenchmarkMode::Resampled)?;
//! let hd = select(&g, Method::Hd, 20, 0.2, 7)?;
//! let stats = simulate_information(&Ensemble::new(&g, SeedSource::Fixed(hd.nodes()), &sim)).finish();
//! let eff = compute_effective(&stats, &bench)?;
//! assert!((0.0..=1.0).contains(&eff.vulnerable_fraction_nu()));
//! # Ok(())
//! # }
//! ```

pub mod error;
pub mod ga;
pub mod graph;
pub mod icm;
pub mod metrics;
pub mod rng;
pub mod scalar;
pub mod seeds;

pub use error::{Error, Result};
pub use graph::{Graph, NodeId};
pub use scalar::Real;
pub use seeds::{Method, SeedSet};

pub type SimulationConfigF64 = icm::SimulationConfig<f64>;
pub type SimulationConfigF32 = icm::SimulationConfig<f32>;
pub type NodeInformationStatsF64 = metrics::NodeInformationStats<f64>;
pub type NodeInformationStatsF32 = metrics::NodeInformationStats<f32>;
pub type EffectiveStatsF64 = metrics::EffectiveStats<f64>;
pub type EffectiveStatsF32 = metrics::EffectiveStats<f32>;
pub type CriticalEstimateF64 = icm::CriticalEstimate<f64>;
pub type CriticalEstimateF32 = icm::CriticalEstimate<f32>;
pub type ParetoFrontF64 = ga::ParetoFront<f64>;
pub type ParetoFrontF32 = ga::ParetoFront<f32>;
pub type GaOutcomeF64 = ga::GaOutcome<f64>;
pub type GaOutcomeF32 = ga::GaOutcome<f32>;
