//! Run configuration: a flat `key = value` text format, layered with
//! command-line overrides.
//!
//! ```text
//! # comment
//! gen.nodes = 2000
//! gen.gamma = 2.5
//! p = auto
//! methods = HD,KC,DD,CHD
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use fairseed::ga::{FairnessObjective, GaConfig, SelectionMode};
use fairseed::graph::{DegreeModel, GeneratorConfig};
use fairseed::Method;

use crate::error::CliError;

/// Key-value pairs in file order is irrelevant; later layers replace earlier ones.
pub type ConfigMap = BTreeMap<String, String>;

#[derive(Debug, Clone, PartialEq)]
pub enum GraphSource {
    File(PathBuf),
    Generate(GeneratorConfig),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PMode {
    Explicit(f64),
    /// Use the estimated critical probability of the graph.
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BenchmarkChoice {
    #[default]
    Resampled,
    Fixed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub graph: GraphSource,
    pub giant_component: bool,
    pub p: PMode,
    pub critical_points: usize,
    pub critical_runs: usize,
    pub budget_fraction: f64,
    /// Realizations per ensemble; `None` means ten per node.
    pub realizations: Option<usize>,
    pub methods: Vec<Method>,
    /// DD's internal probability; `None` uses the simulation `p`.
    pub dd_p: Option<f64>,
    pub benchmark: BenchmarkChoice,
    /// `rng_seed` is not read from here; it is derived from `seed`.
    pub ga: GaConfig,
    pub ensembles: usize,
    pub out: PathBuf,
    pub seed: u64,
    pub threads: Option<usize>,
    /// Realizations per method written to a trace file; 0 disables the dump.
    pub dump_traces: usize,
    /// Front file whose sets are added to the seed report.
    pub front: Option<PathBuf>,
}

pub const DEFAULT_METHODS: [Method; 4] = Method::HEURISTICS;

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::config(msg)
}

/// Parses `key = value` lines; `#` starts a comment line.
pub fn parse_map(text: &str) -> Result<ConfigMap, CliError> {
    let mut map = ConfigMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| config_err(format!("line {}: expected `key = value`, found {raw:?}", i + 1)))?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() {
            return Err(config_err(format!("line {}: empty key", i + 1)));
        }
        if map.insert(k.to_string(), v.to_string()).is_some() {
            return Err(config_err(format!("line {}: duplicate key {k}", i + 1)));
        }
    }
    Ok(map)
}

/// Applies `overrides` on top of `base`. A graph source in `overrides`
/// replaces the other kind of source in `base`.
pub fn layer(mut base: ConfigMap, overrides: ConfigMap) -> ConfigMap {
    if overrides.contains_key("graph") {
        base.retain(|k, _| !k.starts_with("gen."));
    }
    if overrides.keys().any(|k| k.starts_with("gen.")) {
        base.remove("graph");
    }
    base.extend(overrides);
    base
}

struct Reader {
    map: ConfigMap,
}

impl Reader {
    fn take(&mut self, key: &str) -> Option<String> {
        self.map.remove(key)
    }

    fn parse<T: FromStr>(&mut self, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: std::fmt::Display,
    {
        self.take(key)
            .map(|v| v.parse::<T>().map_err(|e| config_err(format!("{key} = {v:?}: {e}"))))
            .transpose()
    }

    fn or<T: FromStr>(&mut self, key: &str, default: T) -> Result<T, CliError>
    where
        T::Err: std::fmt::Display,
    {
        Ok(self.parse(key)?.unwrap_or(default))
    }
}

fn parse_methods(v: &str) -> Result<Vec<Method>, CliError> {
    let methods: Vec<Method> = v
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<Method>().map_err(|e| config_err(format!("methods: {e}"))))
        .collect::<Result<_, _>>()?;
    if methods.is_empty() {
        return Err(config_err("methods list is empty"));
    }
    for (i, m) in methods.iter().enumerate() {
        if methods[..i].contains(m) {
            return Err(config_err(format!("method {m} listed twice")));
        }
    }
    Ok(methods)
}

fn selection_name(s: SelectionMode) -> &'static str {
    match s {
        SelectionMode::Crowding => "crowding",
        SelectionMode::ReferencePoint => "reference_point",
    }
}

fn objective_name(o: FairnessObjective) -> &'static str {
    match o {
        FairnessObjective::Frequency => "frequency",
        FairnessObjective::Recency => "recency",
        FairnessObjective::Both => "both",
    }
}

fn parse_named<T: Copy>(key: &str, v: &str, options: &[(&str, T)]) -> Result<T, CliError> {
    options.iter().find(|(name, _)| *name == v).map(|&(_, t)| t).ok_or_else(|| {
        let names: Vec<&str> = options.iter().map(|(n, _)| *n).collect();
        config_err(format!("{key} = {v:?}: expected one of {}", names.join(", ")))
    })
}

const SELECTIONS: [(&str, SelectionMode); 2] =
    [("crowding", SelectionMode::Crowding), ("reference_point", SelectionMode::ReferencePoint)];
const OBJECTIVES: [(&str, FairnessObjective); 3] = [
    ("frequency", FairnessObjective::Frequency),
    ("recency", FairnessObjective::Recency),
    ("both", FairnessObjective::Both),
];

impl RunConfig {
    pub fn from_map(map: ConfigMap) -> Result<Self, CliError> {
        let mut r = Reader { map };
        let seed: u64 = r.or("seed", 0)?;

        let file = r.take("graph");
        let has_gen = r.map.keys().any(|k| k.starts_with("gen."));
        let graph = match (file, has_gen) {
            (Some(_), true) => return Err(config_err("both `graph` and `gen.*` given; choose one graph source")),
            (None, false) => return Err(config_err("no graph source: set `graph` or `gen.nodes`")),
            (Some(path), false) => GraphSource::File(PathBuf::from(path)),
            (None, true) => {
                let node_count: usize =
                    r.parse("gen.nodes")?.ok_or_else(|| config_err("gen.nodes is required to generate a graph"))?;
                let model_name = r.take("gen.model").unwrap_or_else(|| "scale_free".into());
                let model = match model_name.as_str() {
                    "scale_free" => {
                        for k in ["gen.mean_degree", "gen.degree_stddev"] {
                            if r.map.contains_key(k) {
                                return Err(config_err(format!("{k} applies to the normal_degree model only")));
                            }
                        }
                        DegreeModel::ScaleFree { gamma: r.or("gen.gamma", 2.5)? }
                    }
                    "normal_degree" => {
                        if r.map.contains_key("gen.gamma") {
                            return Err(config_err("gen.gamma applies to the scale_free model only"));
                        }
                        DegreeModel::NormalDegree {
                            mean_degree: r
                                .parse("gen.mean_degree")?
                                .ok_or_else(|| config_err("gen.mean_degree is required for normal_degree"))?,
                            degree_stddev: r
                                .parse("gen.degree_stddev")?
                                .ok_or_else(|| config_err("gen.degree_stddev is required for normal_degree"))?,
                        }
                    }
                    other => {
                        return Err(config_err(format!("gen.model = {other:?}: expected scale_free or normal_degree")))
                    }
                };
                let gen = GeneratorConfig {
                    model,
                    node_count,
                    min_degree: r.or("gen.min_degree", 1)?,
                    rng_seed: r.or("gen.seed", seed)?,
                };
                gen.validate().map_err(|e| config_err(e.to_string()))?;
                GraphSource::Generate(gen)
            }
        };

        let p = match r.take("p").as_deref() {
            None | Some("auto") => PMode::Auto,
            Some(v) => {
                let p: f64 = v.parse().map_err(|e| config_err(format!("p = {v:?}: {e}")))?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(config_err(format!("p = {p} outside [0, 1]")));
                }
                PMode::Explicit(p)
            }
        };
        let realizations = match r.take("realizations").as_deref() {
            None | Some("auto") => None,
            Some(v) => {
                let m: usize = v.parse().map_err(|e| config_err(format!("realizations = {v:?}: {e}")))?;
                if m == 0 {
                    return Err(config_err("realizations must be positive"));
                }
                Some(m)
            }
        };
        let methods = match r.take("methods") {
            Some(v) => parse_methods(&v)?,
            None => DEFAULT_METHODS.to_vec(),
        };
        let benchmark = match r.take("benchmark").as_deref() {
            None | Some("resampled") => BenchmarkChoice::Resampled,
            Some("fixed") => BenchmarkChoice::Fixed,
            Some(v) => return Err(config_err(format!("benchmark = {v:?}: expected resampled or fixed"))),
        };
        let dd_p: Option<f64> = r.parse("dd_p")?;
        if let Some(q) = dd_p {
            if !(0.0..=1.0).contains(&q) {
                return Err(config_err(format!("dd_p = {q} outside [0, 1]")));
            }
        }

        let d = GaConfig::default();
        let ga = GaConfig {
            population_size: r.or("ga.population", d.population_size)?,
            generations: r.or("ga.generations", d.generations)?,
            crossover_prob: r.or("ga.crossover_prob", d.crossover_prob)?,
            mutation_prob: r.or("ga.mutation_prob", d.mutation_prob)?,
            tabu_mutation_freq: r.or("ga.tabu_freq", d.tabu_mutation_freq)?,
            random_mutation_replace_frac: r.or("ga.random_replace", d.random_mutation_replace_frac)?,
            tabu_neighborhood_frac: r.or("ga.tabu_neighborhood", d.tabu_neighborhood_frac)?,
            fitness_samples: r.or("ga.fitness_samples", d.fitness_samples)?,
            tabu_samples: r.or("ga.tabu_samples", d.tabu_samples)?,
            final_samples: r.or("ga.final_samples", d.final_samples)?,
            selection: match r.take("ga.selection") {
                Some(v) => parse_named("ga.selection", &v, &SELECTIONS)?,
                None => d.selection,
            },
            objective: match r.take("ga.objective") {
                Some(v) => parse_named("ga.objective", &v, &OBJECTIVES)?,
                None => d.objective,
            },
            rng_seed: 0,
        };
        ga.validate().map_err(|e| config_err(e.to_string()))?;

        let budget_fraction: f64 = r.or("budget", 0.01)?;
        if !(budget_fraction > 0.0 && budget_fraction <= 1.0) {
            return Err(config_err(format!("budget = {budget_fraction} outside (0, 1]")));
        }
        let critical_points: usize = r.or("critical.points", 40)?;
        if critical_points < 3 {
            return Err(config_err("critical.points must be at least 3"));
        }
        let critical_runs: usize = r.or("critical.runs", 2000)?;
        let ensembles: usize = r.or("ensembles", 10)?;
        if critical_runs == 0 || ensembles == 0 {
            return Err(config_err("critical.runs and ensembles must be positive"));
        }
        let threads: Option<usize> = r.parse("threads")?;
        if threads == Some(0) {
            return Err(config_err("threads must be positive"));
        }

        let cfg = RunConfig {
            graph,
            giant_component: r.or("giant_component", false)?,
            p,
            critical_points,
            critical_runs,
            budget_fraction,
            realizations,
            methods,
            dd_p,
            benchmark,
            ga,
            ensembles,
            out: PathBuf::from(r.take("out").unwrap_or_else(|| "out".into())),
            seed,
            threads,
            dump_traces: r.or("dump_traces", 0)?,
            front: r.take("front").map(PathBuf::from),
        };
        if let Some(k) = r.map.keys().next() {
            return Err(config_err(format!("unknown configuration key {k:?}")));
        }
        Ok(cfg)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        Self::from_map(parse_map(text)?)
    }

    pub fn to_map(&self) -> ConfigMap {
        let mut m = ConfigMap::new();
        let mut put = |k: &str, v: String| {
            m.insert(k.to_string(), v);
        };
        match &self.graph {
            GraphSource::File(path) => put("graph", path.display().to_string()),
            GraphSource::Generate(g) => {
                match g.model {
                    DegreeModel::ScaleFree { gamma } => {
                        put("gen.model", "scale_free".into());
                        put("gen.gamma", gamma.to_string());
                    }
                    DegreeModel::NormalDegree { mean_degree, degree_stddev } => {
                        put("gen.model", "normal_degree".into());
                        put("gen.mean_degree", mean_degree.to_string());
                        put("gen.degree_stddev", degree_stddev.to_string());
                    }
                }
                put("gen.nodes", g.node_count.to_string());
                put("gen.min_degree", g.min_degree.to_string());
                put("gen.seed", g.rng_seed.to_string());
            }
        }
        put("giant_component", self.giant_component.to_string());
        put(
            "p",
            match self.p {
                PMode::Auto => "auto".into(),
                PMode::Explicit(p) => p.to_string(),
            },
        );
        put("critical.points", self.critical_points.to_string());
        put("critical.runs", self.critical_runs.to_string());
        put("budget", self.budget_fraction.to_string());
        put("realizations", self.realizations.map_or("auto".into(), |m| m.to_string()));
        put("methods", self.methods.iter().map(|m| m.as_str()).collect::<Vec<_>>().join(","));
        if let Some(q) = self.dd_p {
            put("dd_p", q.to_string());
        }
        put(
            "benchmark",
            match self.benchmark {
                BenchmarkChoice::Resampled => "resampled".into(),
                BenchmarkChoice::Fixed => "fixed".into(),
            },
        );
        let ga = &self.ga;
        put("ga.population", ga.population_size.to_string());
        put("ga.generations", ga.generations.to_string());
        put("ga.crossover_prob", ga.crossover_prob.to_string());
        put("ga.mutation_prob", ga.mutation_prob.to_string());
        put("ga.tabu_freq", ga.tabu_mutation_freq.to_string());
        put("ga.random_replace", ga.random_mutation_replace_frac.to_string());
        put("ga.tabu_neighborhood", ga.tabu_neighborhood_frac.to_string());
        put("ga.fitness_samples", ga.fitness_samples.to_string());
        put("ga.tabu_samples", ga.tabu_samples.to_string());
        put("ga.final_samples", ga.final_samples.to_string());
        put("ga.selection", selection_name(ga.selection).into());
        put("ga.objective", objective_name(ga.objective).into());
        put("ensembles", self.ensembles.to_string());
        put("out", self.out.display().to_string());
        put("seed", self.seed.to_string());
        if let Some(t) = self.threads {
            put("threads", t.to_string());
        }
        put("dump_traces", self.dump_traces.to_string());
        if let Some(f) = &self.front {
            put("front", f.display().to_string());
        }
        m
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (k, v) in self.to_map() {
            let _ = writeln!(s, "{k} = {v}");
        }
        s
    }

    pub fn generator(&self) -> Option<&GeneratorConfig> {
        match &self.graph {
            GraphSource::Generate(g) => Some(g),
            GraphSource::File(_) => None,
        }
    }
}
