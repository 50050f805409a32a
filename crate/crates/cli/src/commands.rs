//! The five pipelines behind the subcommands. Each returns a summary and
//! leaves its files, plus a manifest, in the output directory.
//!
//! Random streams fan out from the master seed by label: `critical-p`,
//! `ties`, `benchmark`, then `(command, method)` for method ensembles. A
//! given label path yields the same numbers in every command.

use std::collections::HashMap;
use std::fs::File;
use std::io::BufReader;

use fairseed::ga::{
    evaluate_front_numerically, optimize_from, FitnessEvaluator, GaConfig, GaOutcome, NumericalEvaluation,
};
use fairseed::graph::{generate, load_edge_list, write_edge_list, write_label_map, Graph, LoadReport};
use fairseed::icm::{
    estimate_critical_p, log_spaced_grid, molloy_reed_threshold, Draws, Ensemble, SeedSource, SusceptibilityPoint,
};
use fairseed::metrics::{
    benchmark_stats, compute_effective, cumulative_distribution, simulate_information, worse_off_in_n, BenchmarkMode,
    EffectiveStats, NodeInformationStats,
};
use fairseed::rng::{derive_seed, tag};
use fairseed::seeds::{seed_budget, seed_dispersion, select, select_random, SeedSetRecord};
use fairseed::{Method, SeedSet, SimulationConfigF64};
use serde::{Deserialize, Serialize};

use crate::config::{BenchmarkChoice, GraphSource, PMode, RunConfig};
use crate::error::CliError;
use crate::output::OutputDir;

/// Seed for the stream addressed by `labels` under the master seed.
pub fn stream(master: u64, labels: &[&str]) -> u64 {
    derive_seed(master, &labels.iter().map(|l| tag(l)).collect::<Vec<_>>())
}

fn fmt(x: f64) -> String {
    x.to_string()
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt).unwrap_or_default()
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphSummary {
    pub node_count: usize,
    pub edge_count: usize,
    pub mean_degree: f64,
    pub max_degree: usize,
    /// Nodes dropped by the giant-component restriction.
    pub dropped_nodes: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub load: Option<LoadSummary>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct LoadSummary {
    pub edge_lines: usize,
    pub duplicate_edges: usize,
    pub self_loops: usize,
}

impl From<LoadReport> for LoadSummary {
    fn from(r: LoadReport) -> Self {
        LoadSummary { edge_lines: r.edge_lines, duplicate_edges: r.duplicate_edges, self_loops: r.self_loops }
    }
}

/// Graph ready for simulation, with the labels of its nodes.
#[derive(Debug, Clone)]
pub struct PreparedGraph {
    pub graph: Graph,
    pub labels: Vec<String>,
    pub summary: GraphSummary,
}

pub fn prepare_graph(cfg: &RunConfig) -> Result<PreparedGraph, CliError> {
    let (graph, labels, load) = match &cfg.graph {
        GraphSource::File(path) => {
            let file =
                File::open(path).map_err(|e| CliError::data(format!("cannot read graph {}: {e}", path.display())))?;
            let loaded = load_edge_list(BufReader::new(file)).map_err(|e| match e {
                fairseed::Error::Io(io) => CliError::data(format!("cannot read graph {}: {io}", path.display())),
                other => CliError::data(format!("{}: {other}", path.display())),
            })?;
            (loaded.graph, loaded.labels, Some(LoadSummary::from(loaded.report)))
        }
        GraphSource::Generate(gen) => {
            let out = generate(gen)?;
            let labels = (0..out.graph.node_count()).map(|v| v.to_string()).collect();
            (out.graph, labels, None)
        }
    };
    let before = graph.node_count();
    let (graph, labels) = if cfg.giant_component {
        let (giant, keep) = graph.giant_component();
        let labels = keep.iter().map(|&v| labels[v].clone()).collect();
        (giant, labels)
    } else {
        (graph, labels)
    };
    let degrees = graph.degrees();
    let summary = GraphSummary {
        node_count: graph.node_count(),
        edge_count: graph.edge_count(),
        mean_degree: 2.0 * graph.edge_count() as f64 / graph.node_count().max(1) as f64,
        max_degree: degrees.iter().copied().max().unwrap_or(0),
        dropped_nodes: before - graph.node_count(),
        load,
    };
    Ok(PreparedGraph { graph, labels, summary })
}

fn write_label_map_file(out: &mut OutputDir, labels: &[String]) -> Result<(), CliError> {
    out.write_with("label_map.csv", |w| write_label_map(w, labels))
}

// ---------------------------------------------------------------- generate

#[derive(Debug, Clone, Serialize)]
pub struct GenerateReport {
    pub generator: fairseed::graph::GeneratorConfig,
    pub graph: GraphSummary,
    pub second_moment_degree: f64,
    pub erased_self_loops: usize,
    pub erased_duplicate_edges: usize,
    pub target_degree_sum: usize,
}

pub fn cmd_generate(cfg: &RunConfig, out: &mut OutputDir) -> Result<GenerateReport, CliError> {
    let gen = *cfg.generator().ok_or_else(|| CliError::config("generate needs gen.* settings, not a graph file"))?;
    let made = generate(&gen)?;
    let (graph, labels): (Graph, Vec<String>) = if cfg.giant_component {
        let (giant, keep) = made.graph.giant_component();
        (giant, keep.iter().map(|v| v.to_string()).collect())
    } else {
        let n = made.graph.node_count();
        (made.graph.clone(), (0..n).map(|v| v.to_string()).collect())
    };
    let degrees = graph.degrees();
    let n = graph.node_count().max(1) as f64;
    let report = GenerateReport {
        generator: gen,
        graph: GraphSummary {
            node_count: graph.node_count(),
            edge_count: graph.edge_count(),
            mean_degree: 2.0 * graph.edge_count() as f64 / n,
            max_degree: degrees.iter().copied().max().unwrap_or(0),
            dropped_nodes: made.graph.node_count() - graph.node_count(),
            load: None,
        },
        second_moment_degree: degrees.iter().map(|&k| (k * k) as f64).sum::<f64>() / n,
        erased_self_loops: made.erased.self_loops,
        erased_duplicate_edges: made.erased.duplicate_edges,
        target_degree_sum: made.target_degrees.iter().sum(),
    };
    out.write_with("graph.edges", |w| write_edge_list(w, &graph, &labels))?;
    out.write_json("provenance.json", &report)?;
    Ok(report)
}

// -------------------------------------------------------------- critical-p

#[derive(Debug, Clone, Serialize)]
pub struct CriticalReport {
    pub p_c: f64,
    pub molloy_reed: f64,
    pub grid_points: usize,
    pub runs_per_point: usize,
    #[serde(skip)]
    pub curve: Vec<SusceptibilityPoint<f64>>,
}

fn estimate_critical(cfg: &RunConfig, g: &Graph) -> Result<CriticalReport, CliError> {
    let mr = molloy_reed_threshold::<f64>(&g.degrees())
        .ok_or_else(|| CliError::runtime("degree sequence admits no percolation threshold"))?;
    let grid = log_spaced_grid(mr, 0.2, 5.0, cfg.critical_points);
    let est = estimate_critical_p(g, &grid, cfg.critical_runs, stream(cfg.seed, &["critical-p"]))?;
    Ok(CriticalReport {
        p_c: est.p_c,
        molloy_reed: mr,
        grid_points: grid.len(),
        runs_per_point: cfg.critical_runs,
        curve: est.curve,
    })
}

fn write_curve(out: &mut OutputDir, curve: &[SusceptibilityPoint<f64>]) -> Result<(), CliError> {
    out.write_csv(
        "susceptibility.csv",
        &["p", "mean_size", "second_moment", "susceptibility"],
        curve.iter().map(|pt| [fmt(pt.p), fmt(pt.mean_size), fmt(pt.second_moment), fmt(pt.susceptibility)]),
    )
}

pub fn cmd_critical_p(cfg: &RunConfig, out: &mut OutputDir) -> Result<CriticalReport, CliError> {
    let prep = prepare_graph(cfg)?;
    let report = estimate_critical(cfg, &prep.graph)?;
    write_curve(out, &report.curve)?;
    out.write_json("critical.json", &report)?;
    Ok(report)
}

// ------------------------------------------------------- shared run set-up

#[derive(Debug, Clone, Copy, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PSource {
    Explicit,
    Critical,
}

/// Quantities shared by the simulation commands.
#[derive(Debug, Clone, Serialize)]
pub struct RunSetup {
    pub graph: GraphSummary,
    pub p: f64,
    pub p_source: PSource,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub molloy_reed: Option<f64>,
    pub dd_p: f64,
    pub budget: usize,
    pub budget_fraction: f64,
    pub realizations: usize,
}

fn setup(cfg: &RunConfig, prep: &PreparedGraph, out: &mut OutputDir) -> Result<RunSetup, CliError> {
    let n = prep.graph.node_count();
    let (p, p_source, molloy_reed) = match cfg.p {
        PMode::Explicit(p) => (p, PSource::Explicit, None),
        PMode::Auto => {
            let c = estimate_critical(cfg, &prep.graph)?;
            write_curve(out, &c.curve)?;
            (c.p_c, PSource::Critical, Some(c.molloy_reed))
        }
    };
    Ok(RunSetup {
        graph: prep.summary.clone(),
        p,
        p_source,
        molloy_reed,
        dd_p: cfg.dd_p.unwrap_or(p),
        budget: seed_budget(n, cfg.budget_fraction)?,
        budget_fraction: cfg.budget_fraction,
        realizations: cfg.realizations.unwrap_or(10 * n),
    })
}

fn benchmark(cfg: &RunConfig, g: &Graph, s: &RunSetup) -> Result<NodeInformationStats<f64>, CliError> {
    let sim = SimulationConfigF64::new(s.p, s.realizations, stream(cfg.seed, &["benchmark"]));
    let mode = match cfg.benchmark {
        BenchmarkChoice::Resampled => BenchmarkMode::Resampled,
        BenchmarkChoice::Fixed => BenchmarkMode::Fixed { seed: stream(cfg.seed, &["benchmark-set"]) },
    };
    Ok(benchmark_stats(g, s.budget, &sim, mode)?)
}

fn heuristic_set(cfg: &RunConfig, g: &Graph, s: &RunSetup, method: Method) -> Result<SeedSet, CliError> {
    Ok(select(g, method, s.budget, s.dd_p, stream(cfg.seed, &["ties"]))?)
}

// ----------------------------------------------------------- vulnerability

#[derive(Debug, Clone, Serialize)]
pub struct MethodSummary {
    pub method: Method,
    pub mean_cascade_size: f64,
    pub vulnerable_fraction_nu: f64,
    pub vulnerable_fraction_tau: f64,
    pub undefined_nu: usize,
    pub undefined_tau: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seeds: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WorseOffSummary {
    pub methods: Vec<Method>,
    /// Entry `n` is the fraction of nodes worse off in exactly `n` methods.
    pub nu: Vec<f64>,
    pub tau: Vec<f64>,
    pub excluded_nu: usize,
    pub excluded_tau: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct VulnerabilityReport {
    pub setup: RunSetup,
    pub benchmark_mean_cascade_size: f64,
    pub methods: Vec<MethodSummary>,
    pub worse_off: WorseOffSummary,
}

pub fn cmd_vulnerability(cfg: &RunConfig, out: &mut OutputDir) -> Result<VulnerabilityReport, CliError> {
    if let Some(m) = cfg.methods.iter().find(|m| **m == Method::Ga) {
        return Err(CliError::config(format!("method {m} is not a seeding heuristic; use the optimize command")));
    }
    let prep = prepare_graph(cfg)?;
    let g = &prep.graph;
    let labels = &prep.labels;
    let s = setup(cfg, &prep, out)?;
    let bench = benchmark(cfg, g, &s)?;

    let mut summaries = Vec::new();
    let mut effective: Vec<EffectiveStats<f64>> = Vec::new();
    let mut cdf_nu = vec![series_cdf("benchmark", &bench.nu)];
    let mut cdf_tau = vec![series_cdf("benchmark", &bench.tau)];
    for &method in &cfg.methods {
        let set = match method {
            Method::Random => None,
            h => Some(heuristic_set(cfg, g, &s, h)?),
        };
        let seeds = match &set {
            Some(set) => SeedSource::Fixed(set.nodes()),
            None => SeedSource::Random { count: s.budget },
        };
        let ensemble = Ensemble {
            graph: g,
            seeds,
            p: s.p,
            realizations: s.realizations,
            rng_seed: stream(cfg.seed, &["vulnerability", method.as_str()]),
            draws: Draws::PerAttempt,
        };
        let stats = simulate_information(&ensemble).finish();
        let eff = compute_effective(&stats, &bench)?;

        out.write_csv(
            &format!("nodes_{method}.csv"),
            &["label", "nu", "tau", "eff_nu", "eff_tau", "vulnerable_nu", "vulnerable_tau"],
            (0..g.node_count()).map(|v| {
                [
                    labels[v].clone(),
                    fmt(stats.nu[v]),
                    fmt(stats.tau[v]),
                    fmt_opt(eff.eff_nu[v]),
                    fmt_opt(eff.eff_tau[v]),
                    eff.vulnerable_nu[v].to_string(),
                    eff.vulnerable_tau[v].to_string(),
                ]
            }),
        )?;
        if let Some(set) = &set {
            out.write_json(&format!("seeds_{method}.json"), &set.to_record(labels))?;
        }
        if cfg.dump_traces > 0 {
            let head = Ensemble { realizations: cfg.dump_traces.min(s.realizations), ..ensemble };
            dump_traces(out, &format!("traces_{method}.csv"), &head, labels)?;
        }
        cdf_nu.push(series_cdf(method.as_str(), &stats.nu));
        cdf_tau.push(series_cdf(method.as_str(), &stats.tau));
        summaries.push(MethodSummary {
            method,
            mean_cascade_size: stats.mean_cascade_size(),
            vulnerable_fraction_nu: eff.vulnerable_fraction_nu(),
            vulnerable_fraction_tau: eff.vulnerable_fraction_tau(),
            undefined_nu: eff.undefined_nu(),
            undefined_tau: eff.undefined_tau(),
            seeds: set.map(|s| s.to_record(labels).nodes),
        });
        effective.push(eff);
    }

    out.write_csv(
        "benchmark.csv",
        &["label", "nu", "tau"],
        (0..g.node_count()).map(|v| [labels[v].clone(), fmt(bench.nu[v]), fmt(bench.tau[v])]),
    )?;
    write_cdf(out, "cdf_nu.csv", &cdf_nu)?;
    write_cdf(out, "cdf_tau.csv", &cdf_tau)?;
    let hist = worse_off_in_n(&effective.iter().collect::<Vec<_>>())?;
    out.write_csv(
        "worse_off.csv",
        &["n", "fraction_nu", "fraction_tau"],
        (0..hist.nu.len()).map(|n| [n.to_string(), fmt(hist.nu[n]), fmt(hist.tau[n])]),
    )?;
    write_label_map_file(out, labels)?;

    let report = VulnerabilityReport {
        setup: s,
        benchmark_mean_cascade_size: bench.mean_cascade_size(),
        methods: summaries,
        worse_off: WorseOffSummary {
            methods: cfg.methods.clone(),
            nu: hist.nu,
            tau: hist.tau,
            excluded_nu: hist.excluded_nu,
            excluded_tau: hist.excluded_tau,
        },
    };
    out.write_json("summary.json", &report)?;
    Ok(report)
}

fn series_cdf(name: &str, values: &[f64]) -> (String, Vec<(f64, f64)>) {
    (name.to_string(), cumulative_distribution(values))
}

fn write_cdf(out: &mut OutputDir, name: &str, series: &[(String, Vec<(f64, f64)>)]) -> Result<(), CliError> {
    out.write_csv(
        name,
        &["series", "x", "cdf"],
        series.iter().flat_map(|(s, pts)| pts.iter().map(move |&(x, c)| [s.clone(), fmt(x), fmt(c)])),
    )
}

fn dump_traces(out: &mut OutputDir, name: &str, ensemble: &Ensemble<'_, f64>, labels: &[String]) -> Result<(), CliError> {
    let traces = ensemble.traces(true);
    out.write_csv(
        name,
        &["realization", "node", "activated", "activation_time"],
        traces.iter().enumerate().flat_map(|(r, t)| {
            (0..t.activated.len()).map(move |v| {
                [
                    r.to_string(),
                    labels[v].clone(),
                    t.activated[v].to_string(),
                    t.activation_time[v].map(|x| x.to_string()).unwrap_or_default(),
                ]
            })
        }),
    )
}

// ---------------------------------------------------------------- optimize

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FrontEntry {
    pub nodes: Vec<String>,
    pub spread_mean: f64,
    pub spread_sd: f64,
    pub fair_mean: f64,
    pub fair_sd: f64,
    /// Realizations behind the means: ensembles times realizations each.
    pub eval_samples: usize,
    pub fitness_spread: f64,
    pub fitness_fair: usize,
    pub fitness_samples: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonRow {
    pub method: Method,
    pub nodes: Vec<String>,
    pub evaluation: NumericalEvaluation<f64>,
    pub fitness_spread: f64,
    pub fitness_fair: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct OptimizeReport {
    pub setup: RunSetup,
    pub ga: GaConfig,
    pub ensembles: usize,
    pub evaluations: usize,
    pub final_hypervolume: f64,
    pub front: Vec<FrontEntry>,
    pub comparison: Vec<ComparisonRow>,
}

pub fn cmd_optimize(cfg: &RunConfig, out: &mut OutputDir) -> Result<OptimizeReport, CliError> {
    let prep = prepare_graph(cfg)?;
    let g = &prep.graph;
    let labels = &prep.labels;
    let s = setup(cfg, &prep, out)?;
    let bench = benchmark(cfg, g, &s)?;

    let methods: Vec<Method> = cfg.methods.iter().copied().filter(|m| Method::HEURISTICS.contains(m)).collect();
    if methods.is_empty() {
        return Err(CliError::config("optimize needs at least one of HD, KC, DD, CHD in methods"));
    }
    let heuristics: Vec<SeedSet> = methods.iter().map(|&m| heuristic_set(cfg, g, &s, m)).collect::<Result<_, _>>()?;
    let ga = GaConfig { rng_seed: stream(cfg.seed, &["optimize"]), ..cfg.ga };
    let outcome: GaOutcome<f64> = optimize_from(g, s.p, &heuristics, &ga, &bench)?;

    let evaluator = FitnessEvaluator {
        graph: g,
        p: s.p,
        benchmark: &bench,
        objective: ga.objective,
        rng_seed: stream(cfg.seed, &["optimize", "numerical"]),
    };
    let sets: Vec<&[usize]> = outcome
        .front
        .candidates
        .iter()
        .map(|c| c.seeds.nodes())
        .chain(outcome.heuristics.iter().map(|c| c.seeds.nodes()))
        .collect();
    let numerical = evaluate_front_numerically(&evaluator, &sets, s.realizations, cfg.ensembles)?;
    let (front_num, heur_num) = numerical.split_at(outcome.front.len());

    let names = |nodes: &[usize]| nodes.iter().map(|&v| labels[v].clone()).collect::<Vec<_>>();
    let front: Vec<FrontEntry> = outcome
        .front
        .candidates
        .iter()
        .zip(front_num)
        .map(|(c, e)| FrontEntry {
            nodes: names(c.seeds.nodes()),
            spread_mean: e.spread_mean,
            spread_sd: e.spread_sd,
            fair_mean: e.fair_mean,
            fair_sd: e.fair_sd,
            eval_samples: e.realizations * e.ensembles,
            fitness_spread: c.fitness_spread,
            fitness_fair: c.fitness_fair,
            fitness_samples: c.eval_samples,
        })
        .collect();
    let comparison: Vec<ComparisonRow> = outcome
        .heuristics
        .iter()
        .zip(heur_num)
        .map(|(c, e)| ComparisonRow {
            method: c.origin,
            nodes: names(c.seeds.nodes()),
            evaluation: *e,
            fitness_spread: c.fitness_spread,
            fitness_fair: c.fitness_fair,
        })
        .collect();

    out.write_json("front.json", &front)?;
    let eval_header =
        ["set", "spread_mean", "spread_sd", "fair_mean", "fair_sd", "ensembles", "realizations", "fitness_spread", "fitness_fair"];
    let eval_row = |name: String, e: &NumericalEvaluation<f64>, fs: f64, ff: usize| {
        [
            name,
            fmt(e.spread_mean),
            fmt(e.spread_sd),
            fmt(e.fair_mean),
            fmt(e.fair_sd),
            e.ensembles.to_string(),
            e.realizations.to_string(),
            fmt(fs),
            ff.to_string(),
        ]
    };
    out.write_csv(
        "numerical_evaluation.csv",
        &eval_header,
        outcome
            .front
            .candidates
            .iter()
            .zip(front_num)
            .enumerate()
            .map(|(i, (c, e))| eval_row(format!("front_{i}"), e, c.fitness_spread, c.fitness_fair)),
    )?;
    out.write_csv(
        "comparison.csv",
        &eval_header,
        comparison.iter().map(|r| eval_row(r.method.to_string(), &r.evaluation, r.fitness_spread, r.fitness_fair)),
    )?;
    out.write_csv(
        "hypervolume.csv",
        &["generation", "hypervolume"],
        outcome.hypervolume_history.iter().enumerate().map(|(i, h)| [i.to_string(), fmt(*h)]),
    )?;
    write_label_map_file(out, labels)?;

    let report = OptimizeReport {
        setup: s,
        ga,
        ensembles: cfg.ensembles,
        evaluations: outcome.evaluations,
        final_hypervolume: outcome.hypervolume_history.last().copied().unwrap_or(0.0),
        front,
        comparison,
    };
    out.write_json("summary.json", &report)?;
    Ok(report)
}

// ------------------------------------------------------------- seed-report

#[derive(Debug, Clone, Serialize)]
pub struct DispersionRow {
    pub set: String,
    pub method: Method,
    pub size: usize,
    pub mean_distance: f64,
    pub reachable: usize,
    pub unreachable: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeedReport {
    pub budget: usize,
    pub sets: Vec<SeedSetRecord>,
    pub dispersion: Vec<DispersionRow>,
}

/// Reads the `nodes` of every entry of a front file.
pub fn read_front(path: &std::path::Path) -> Result<Vec<Vec<String>>, CliError> {
    #[derive(Deserialize)]
    struct Entry {
        nodes: Vec<String>,
    }
    let file = File::open(path).map_err(|e| CliError::data(format!("cannot read front {}: {e}", path.display())))?;
    let entries: Vec<Entry> = serde_json::from_reader(BufReader::new(file))
        .map_err(|e| CliError::data(format!("{}: {e}", path.display())))?;
    Ok(entries.into_iter().map(|e| e.nodes).collect())
}

pub fn cmd_seed_report(cfg: &RunConfig, out: &mut OutputDir) -> Result<SeedReport, CliError> {
    let prep = prepare_graph(cfg)?;
    let g = &prep.graph;
    let labels = &prep.labels;
    let n = g.node_count();
    let budget = seed_budget(n, cfg.budget_fraction)?;

    let mut named: Vec<(String, SeedSet)> = Vec::new();
    let needs_p = cfg.methods.contains(&Method::Dd) && cfg.dd_p.is_none();
    let dd_p = if needs_p {
        match cfg.p {
            PMode::Explicit(p) => p,
            PMode::Auto => estimate_critical(cfg, g)?.p_c,
        }
    } else {
        cfg.dd_p.unwrap_or(0.0)
    };
    for &m in &cfg.methods {
        let set = match m {
            Method::Ga => return Err(CliError::config("GA sets are read from a front file (`front`)")),
            Method::Random => select_random(g, budget, stream(cfg.seed, &["seed-report", "RANDOM"]))?,
            h => select(g, h, budget, dd_p, stream(cfg.seed, &["ties"]))?,
        };
        named.push((m.to_string(), set));
    }
    if let Some(path) = &cfg.front {
        let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        for (i, nodes) in read_front(path)?.into_iter().enumerate() {
            let ids = nodes
                .iter()
                .map(|l| index.get(l.as_str()).copied().ok_or_else(|| CliError::data(format!("front entry {i}: unknown node {l:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let set = SeedSet::new(Method::Ga, ids, n).map_err(|e| CliError::data(format!("front entry {i}: {e}")))?;
            named.push((format!("front_{i}"), set));
        }
    }

    let dispersion: Vec<DispersionRow> = named
        .iter()
        .map(|(name, set)| {
            let d = seed_dispersion::<f64>(g, set.nodes());
            DispersionRow {
                set: name.clone(),
                method: set.method(),
                size: set.len(),
                mean_distance: d.mean_distance,
                reachable: d.reachable,
                unreachable: d.unreachable,
            }
        })
        .collect();
    let sets: Vec<SeedSetRecord> = named.iter().map(|(_, s)| s.to_record(labels)).collect();

    out.write_json("seeds.json", &sets)?;
    out.write_csv(
        "dispersion.csv",
        &["set", "method", "size", "mean_distance", "reachable", "unreachable"],
        dispersion.iter().map(|d| {
            [
                d.set.clone(),
                d.method.to_string(),
                d.size.to_string(),
                fmt(d.mean_distance),
                d.reachable.to_string(),
                d.unreachable.to_string(),
            ]
        }),
    )?;
    write_label_map_file(out, labels)?;
    let report = SeedReport { budget, sets, dispersion };
    Ok(report)
}
