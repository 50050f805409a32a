//! Command-line surface. Every flag is a configuration key; flags override
//! values read from `--config`.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{layer, parse_map, ConfigMap, RunConfig};
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "fairseed", version, about = "Seeding fairness experiments under the independent cascade model")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a configuration-model graph.
    Generate(Options),
    /// Estimate the critical transmission probability.
    #[command(name = "critical-p")]
    CriticalP(Options),
    /// Per-node information access and vulnerability for each seeding method.
    Vulnerability(Options),
    /// Search for seed sets trading spread against fairness.
    Optimize(Options),
    /// Seed sets and their dispersion.
    #[command(name = "seed-report")]
    SeedReport(Options),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Generate(_) => "generate",
            Command::CriticalP(_) => "critical-p",
            Command::Vulnerability(_) => "vulnerability",
            Command::Optimize(_) => "optimize",
            Command::SeedReport(_) => "seed-report",
        }
    }

    pub fn options(&self) -> &Options {
        match self {
            Command::Generate(o)
            | Command::CriticalP(o)
            | Command::Vulnerability(o)
            | Command::Optimize(o)
            | Command::SeedReport(o) => o,
        }
    }
}

#[derive(Debug, Default, Args)]
pub struct Options {
    /// `key = value` configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Edge list to load instead of generating a graph.
    #[arg(long)]
    pub graph: Option<String>,
    /// scale_free or normal_degree.
    #[arg(long)]
    pub gen_model: Option<String>,
    #[arg(long)]
    pub gen_nodes: Option<String>,
    /// Power-law exponent.
    #[arg(long)]
    pub gen_gamma: Option<String>,
    #[arg(long)]
    pub gen_mean_degree: Option<String>,
    #[arg(long)]
    pub gen_degree_stddev: Option<String>,
    #[arg(long)]
    pub gen_min_degree: Option<String>,
    /// Generator seed (defaults to --seed).
    #[arg(long)]
    pub gen_seed: Option<String>,
    /// Keep only the largest connected component.
    #[arg(long)]
    pub giant_component: bool,

    /// Transmission probability, or `auto` for the estimated critical value.
    #[arg(long)]
    pub p: Option<String>,
    /// Same as `--p auto`.
    #[arg(long, conflicts_with = "p")]
    pub auto_p: bool,
    #[arg(long)]
    pub critical_points: Option<String>,
    #[arg(long)]
    pub critical_runs: Option<String>,
    /// Seed budget as a fraction of the nodes.
    #[arg(long)]
    pub budget: Option<String>,
    /// Realizations per ensemble (default ten per node).
    #[arg(long)]
    pub realizations: Option<String>,
    /// Comma-separated list from HD, KC, DD, CHD, RANDOM.
    #[arg(long)]
    pub methods: Option<String>,
    /// Probability used by the DD score (defaults to p).
    #[arg(long)]
    pub dd_p: Option<String>,
    /// resampled or fixed.
    #[arg(long)]
    pub benchmark: Option<String>,
    /// Independent ensembles in numerical evaluation.
    #[arg(long)]
    pub ensembles: Option<String>,

    #[arg(long)]
    pub population: Option<String>,
    #[arg(long)]
    pub generations: Option<String>,
    #[arg(long)]
    pub crossover_prob: Option<String>,
    #[arg(long)]
    pub mutation_prob: Option<String>,
    /// Share of mutations that are tabu mutations.
    #[arg(long)]
    pub tabu_freq: Option<String>,
    #[arg(long)]
    pub random_replace: Option<String>,
    #[arg(long)]
    pub tabu_neighborhood: Option<String>,
    #[arg(long)]
    pub fitness_samples: Option<String>,
    #[arg(long)]
    pub tabu_samples: Option<String>,
    /// Realizations for the final re-evaluation (0 skips it).
    #[arg(long)]
    pub final_samples: Option<String>,
    /// crowding or reference_point.
    #[arg(long)]
    pub selection: Option<String>,
    /// frequency, recency or both.
    #[arg(long)]
    pub objective: Option<String>,

    #[arg(long)]
    pub out: Option<String>,
    #[arg(long)]
    pub seed: Option<String>,
    #[arg(long)]
    pub threads: Option<String>,
    /// Write the first N cascades of each method.
    #[arg(long)]
    pub dump_traces: Option<String>,
    /// front.json whose sets are added to the seed report.
    #[arg(long)]
    pub front: Option<String>,
}

impl Options {
    /// Flag values as configuration keys.
    pub fn overrides(&self) -> ConfigMap {
        let pairs: &[(&str, &Option<String>)] = &[
            ("graph", &self.graph),
            ("gen.model", &self.gen_model),
            ("gen.nodes", &self.gen_nodes),
            ("gen.gamma", &self.gen_gamma),
            ("gen.mean_degree", &self.gen_mean_degree),
            ("gen.degree_stddev", &self.gen_degree_stddev),
            ("gen.min_degree", &self.gen_min_degree),
            ("gen.seed", &self.gen_seed),
            ("p", &self.p),
            ("critical.points", &self.critical_points),
            ("critical.runs", &self.critical_runs),
            ("budget", &self.budget),
            ("realizations", &self.realizations),
            ("methods", &self.methods),
            ("dd_p", &self.dd_p),
            ("benchmark", &self.benchmark),
            ("ensembles", &self.ensembles),
            ("ga.population", &self.population),
            ("ga.generations", &self.generations),
            ("ga.crossover_prob", &self.crossover_prob),
            ("ga.mutation_prob", &self.mutation_prob),
            ("ga.tabu_freq", &self.tabu_freq),
            ("ga.random_replace", &self.random_replace),
            ("ga.tabu_neighborhood", &self.tabu_neighborhood),
            ("ga.fitness_samples", &self.fitness_samples),
            ("ga.tabu_samples", &self.tabu_samples),
            ("ga.final_samples", &self.final_samples),
            ("ga.selection", &self.selection),
            ("ga.objective", &self.objective),
            ("out", &self.out),
            ("seed", &self.seed),
            ("threads", &self.threads),
            ("dump_traces", &self.dump_traces),
            ("front", &self.front),
        ];
        let mut map: ConfigMap =
            pairs.iter().filter_map(|(k, v)| v.as_ref().map(|v| (k.to_string(), v.clone()))).collect();
        if self.giant_component {
            map.insert("giant_component".into(), "true".into());
        }
        if self.auto_p {
            map.insert("p".into(), "auto".into());
        }
        map
    }

    /// Configuration file (if any) with the flags layered on top.
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let base = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| CliError::config(format!("cannot read config {}: {e}", path.display())))?;
                parse_map(&text)?
            }
            None => ConfigMap::new(),
        };
        RunConfig::from_map(layer(base, self.overrides()))
    }
}
