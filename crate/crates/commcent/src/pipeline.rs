//! End-to-end runs: ingest, largest component, community detection,
//! whole-graph statistics, ten centralities, comparison matrices, and
//! artifact output, for one network or a manifest of networks.

use rayon::prelude::*;
use serde_json::json;
use std::path::{Path, PathBuf};

use crate::centrality::{
    betweenness_centrality, bridging_centrality, closeness_centrality, community_based_mediator,
    community_hub_bridge, degree_centrality, katz_centrality, nnc, pagerank_centrality,
    participation_coefficient, CbmDensityMode, CentralityParams, CommunityCentralityInputs,
    Measure, ScoreVector,
};
use crate::community::{
    detect_communities_infomap, detect_communities_label_propagation, load_partition_path,
    map_equation, mixing_parameter, modularity, save_partition, Partition,
};
use crate::graph::{
    ingest_edge_list_path, largest_connected_component, Graph, IngestOptions, IngestReport,
};
use crate::heatmap::{emit_heatmap_svg, BandPalette};
use crate::matrix::{ComparisonMatrix, StatKind};
use crate::ranking::{kendall_tau_b, rbo, to_rank_list, RankList, RboVariant, TiePolicy};
use crate::stats::{topo_stats, DistanceMode, TopoStats};
use crate::{mix_seed, stable_hash_hex, Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// Seed streams fanned out from the one configured seed.
pub const SEED_STREAM_DETECTOR: u64 = 1;
pub const SEED_STREAM_TIES: u64 = 2;
pub const SEED_STREAM_DISTANCE: u64 = 3;

/// Where the partition comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DetectorChoice {
    Infomap,
    LabelPropagation,
    External(PathBuf),
}

impl DetectorChoice {
    pub fn id(&self) -> &'static str {
        match self {
            DetectorChoice::Infomap => "infomap",
            DetectorChoice::LabelPropagation => "label_propagation",
            DetectorChoice::External(_) => "external",
        }
    }
}

/// All knobs of a run. One seed drives every random choice.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub detector: DetectorChoice,
    pub seed: u64,
    pub trials: usize,
    pub centrality: CentralityParams,
    pub rbo_p: f64,
    pub rbo_variant: RboVariant,
    pub tie_policy: TiePolicy,
    pub tie_epsilon: f64,
    pub cbm_mode: CbmDensityMode,
    /// Sample this many BFS sources for distance statistics instead of all.
    pub distance_sample: Option<usize>,
    pub out_dir: Option<PathBuf>,
    pub emit_csv: bool,
    pub emit_json: bool,
    pub emit_svg: bool,
}

impl RunConfig {
    pub fn new(seed: u64) -> Self {
        RunConfig {
            detector: DetectorChoice::Infomap,
            seed,
            trials: 10,
            centrality: CentralityParams::default(),
            rbo_p: 0.9,
            rbo_variant: RboVariant::Extrapolated,
            tie_policy: TiePolicy::IdOrder,
            tie_epsilon: 0.0,
            cbm_mode: CbmDensityMode::LinkFraction,
            distance_sample: None,
            out_dir: None,
            emit_csv: true,
            emit_json: true,
            emit_svg: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.centrality.validate()?;
        if self.trials == 0 {
            return Err(Error::Parameter("trials must be at least 1".into()));
        }
        if !(self.rbo_p > 0.0 && self.rbo_p < 1.0) {
            return Err(Error::Parameter(format!(
                "rbo persistence {} outside (0, 1)",
                self.rbo_p
            )));
        }
        if !self.tie_epsilon.is_finite() || self.tie_epsilon < 0.0 {
            return Err(Error::Parameter("tie epsilon must be finite and non-negative".into()));
        }
        if self.distance_sample == Some(0) {
            return Err(Error::Parameter("distance sample size must be positive".into()));
        }
        if let DetectorChoice::External(path) = &self.detector {
            if !path.exists() {
                return Err(Error::Config(format!(
                    "partition file {} does not exist",
                    path.display()
                )));
            }
        }
        Ok(())
    }

    /// Canonical parameter rendering; its hash ties artifacts to the exact
    /// configuration.
    fn canonical_string(&self) -> String {
        let katz = match self.centrality.katz_attenuation {
            Some(s) => format!("{s:?}"),
            None => "auto".to_string(),
        };
        format!(
            "detector={};seed={};trials={};katz={katz};pagerank_d={:?};tol={:?};max_iter={};\
             rbo_p={:?};rbo_variant={};tie_policy={:?};tie_epsilon={:?};cbm={};distance={}",
            self.detector.id(),
            self.seed,
            self.trials,
            self.centrality.pagerank_damping,
            self.centrality.tolerance,
            self.centrality.max_iterations,
            self.rbo_p,
            self.rbo_variant.id(),
            self.tie_policy,
            self.tie_epsilon,
            self.cbm_mode.id(),
            match self.distance_sample {
                Some(k) => k.to_string(),
                None => "exact".to_string(),
            },
        )
    }

    pub fn fingerprint(&self) -> String {
        stable_hash_hex(self.canonical_string().as_bytes())
    }
}

/// One network to process: a name for artifacts, its edge list, and an
/// optional externally computed partition that overrides the detector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkSpec {
    pub name: String,
    pub edges_path: PathBuf,
    pub partition_path: Option<PathBuf>,
}

impl NetworkSpec {
    pub fn new(name: impl Into<String>, edges_path: impl Into<PathBuf>) -> Self {
        NetworkSpec {
            name: name.into(),
            edges_path: edges_path.into(),
            partition_path: None,
        }
    }

    pub fn with_partition(mut self, path: impl Into<PathBuf>) -> Self {
        self.partition_path = Some(path.into());
        self
    }
}

/// Everything computed for one network.
#[derive(Debug, Clone)]
pub struct NetworkReport {
    pub schema_version: u32,
    pub name: String,
    pub tool_version: String,
    pub config_hash: String,
    pub detector: String,
    pub seed: u64,
    pub trials: usize,
    pub ingest: IngestReport,
    pub full_nodes: usize,
    pub full_edges: usize,
    /// Statistics of the largest connected component, which all further
    /// computation runs on.
    pub stats: TopoStats,
    pub community_count: usize,
    pub codelength_bits: f64,
    pub modularity: f64,
    pub mixing: f64,
    pub partition_fingerprint: String,
    pub partition: Partition,
    /// Node labels of the component, aligned with every score vector.
    pub labels: Vec<String>,
    /// The ten measures, classical five first, in matrix order.
    pub scores: Vec<ScoreVector>,
    pub tau: ComparisonMatrix,
    pub rbo: ComparisonMatrix,
}

impl NetworkReport {
    pub fn score(&self, measure: Measure) -> &ScoreVector {
        self.scores
            .iter()
            .find(|sv| sv.measure == measure)
            .expect("report holds all ten measures")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let scores: Vec<serde_json::Value> = self
            .scores
            .iter()
            .map(|sv| {
                let meta: serde_json::Map<String, serde_json::Value> = sv
                    .metadata
                    .iter()
                    .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
                    .collect();
                json!({
                    "measure": sv.measure.id(),
                    "metadata": meta,
                    "values": sv.values,
                })
            })
            .collect();
        json!({
            "schema_version": self.schema_version,
            "name": self.name,
            "tool_version": self.tool_version,
            "config_hash": self.config_hash,
            "detector": self.detector,
            "seed": self.seed,
            "trials": self.trials,
            "ingest": self.ingest,
            "full_graph": { "nodes": self.full_nodes, "edges": self.full_edges },
            "lcc": self.stats,
            "community": {
                "count": self.community_count,
                "codelength_bits": self.codelength_bits,
                "modularity": self.modularity,
                "mixing_parameter": self.mixing,
                "partition_fingerprint": self.partition_fingerprint,
            },
            "labels": self.labels,
            "scores": scores,
            "tau": self.tau.to_json_value(),
            "rbo": self.rbo.to_json_value(),
        })
    }
}

/// Run the full analysis for one network and write requested artifacts.
pub fn run_network(config: &RunConfig, spec: &NetworkSpec) -> Result<NetworkReport> {
    config.validate()?;
    let options = IngestOptions::default();
    let (full, ingest) = ingest_edge_list_path(&spec.edges_path, &options)?;
    let (g, _) = largest_connected_component(&full);

    let detector = match &spec.partition_path {
        Some(p) => DetectorChoice::External(p.clone()),
        None => config.detector.clone(),
    };
    let partition = match &detector {
        DetectorChoice::Infomap => detect_communities_infomap(
            &g,
            mix_seed(config.seed, SEED_STREAM_DETECTOR),
            config.trials,
        )?,
        DetectorChoice::LabelPropagation => {
            detect_communities_label_propagation(&g, mix_seed(config.seed, SEED_STREAM_DETECTOR))
        }
        DetectorChoice::External(path) => load_partition_path(path, &options, &g)?,
    };

    let distance_mode = match config.distance_sample {
        None => DistanceMode::Exact,
        Some(sources) => DistanceMode::Sampled {
            sources,
            seed: mix_seed(config.seed, SEED_STREAM_DISTANCE),
        },
    };
    let stats = topo_stats(&g, distance_mode)?;
    let codelength_bits = map_equation(&g, &partition);
    let q = modularity(&g, &partition);
    let mu = mixing_parameter(&g, &partition);

    let betweenness = betweenness_centrality(&g);
    let classical = [
        degree_centrality(&g),
        betweenness.clone(),
        closeness_centrality(&g)?,
        katz_centrality(&g, &config.centrality)?,
        pagerank_centrality(&g, &config.centrality)?,
    ];
    let inputs = CommunityCentralityInputs::new(&g, &partition, betweenness)?;
    let community = [
        bridging_centrality(&inputs),
        community_hub_bridge(&inputs),
        participation_coefficient(&inputs),
        community_based_mediator(&inputs, config.cbm_mode),
        nnc(&inputs),
    ];

    let tau_cells: Vec<Option<f64>> = (0..25usize)
        .into_par_iter()
        .map(|i| kendall_tau_b(&classical[i / 5], &community[i % 5]))
        .collect::<Result<_>>()?;
    let rank = |sv: &ScoreVector| to_rank_list(sv, config.tie_epsilon, config.tie_policy);
    let classical_ranks: Vec<RankList> = classical.iter().map(rank).collect();
    let community_ranks: Vec<RankList> = community.iter().map(rank).collect();
    let rbo_cells: Vec<f64> = (0..25usize)
        .into_par_iter()
        .map(|i| {
            rbo(
                &classical_ranks[i / 5],
                &community_ranks[i % 5],
                config.rbo_p,
                config.rbo_variant,
            )
        })
        .collect::<Result<_>>()?;

    let mut tau_values = [[None; 5]; 5];
    let mut rbo_values = [[None; 5]; 5];
    for i in 0..25 {
        tau_values[i / 5][i % 5] = tau_cells[i];
        rbo_values[i / 5][i % 5] = Some(rbo_cells[i]);
    }
    let tau = ComparisonMatrix::new(StatKind::TauB, tau_values)
        .with_parameter("scores", "raw")
        .with_parameter("seed", config.seed);
    let rbo_matrix = ComparisonMatrix::new(StatKind::Rbo, rbo_values)
        .with_parameter("p", format!("{:?}", config.rbo_p))
        .with_parameter("variant", config.rbo_variant.id())
        .with_parameter("tie_policy", format!("{:?}", config.tie_policy))
        .with_parameter("tie_epsilon", format!("{:?}", config.tie_epsilon))
        .with_parameter("seed", config.seed);

    let report = NetworkReport {
        schema_version: SCHEMA_VERSION,
        name: spec.name.clone(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        config_hash: config.fingerprint(),
        detector: detector.id().to_string(),
        seed: config.seed,
        trials: config.trials,
        ingest,
        full_nodes: full.node_count(),
        full_edges: full.edge_count(),
        stats,
        community_count: partition.community_count(),
        codelength_bits,
        modularity: q,
        mixing: mu,
        partition_fingerprint: partition.fingerprint(),
        partition,
        labels: g.labels().to_vec(),
        scores: classical.into_iter().chain(community).collect(),
        tau,
        rbo: rbo_matrix,
    };

    write_network_artifacts(config, &g, &report)?;
    Ok(report)
}

/// Write the per-network artifact directory. Any failure removes the whole
/// directory so a partial run never looks complete.
fn write_network_artifacts(config: &RunConfig, g: &Graph, report: &NetworkReport) -> Result<()> {
    let Some(root) = &config.out_dir else {
        return Ok(());
    };
    let dir = root.join(&report.name);
    let write = |name: &str, content: &str| -> Result<()> {
        let path = dir.join(name);
        std::fs::write(&path, content).map_err(|e| Error::io(path.display().to_string(), e))
    };
    let result = (|| -> Result<()> {
        std::fs::create_dir_all(&dir).map_err(|e| Error::io(dir.display().to_string(), e))?;
        write("partition.txt", &save_partition(&report.partition, g))?;
        if config.emit_csv {
            write("label_map.csv", &g.label_map_csv())?;
            write("tau.csv", &report.tau.to_csv())?;
            write("rbo.csv", &report.rbo.to_csv())?;
            for sv in &report.scores {
                write(&format!("centrality_{}.csv", sv.measure.id()), &sv.to_csv(g.labels()))?;
            }
        }
        if config.emit_json {
            let mut text = serde_json::to_string_pretty(&report.to_json_value())
                .map_err(|e| Error::Config(format!("report serialization failed: {e}")))?;
            text.push('\n');
            write("report.json", &text)?;
        }
        if config.emit_svg {
            let palette = BandPalette::default();
            write("tau.svg", &emit_heatmap_svg(&report.tau, &palette))?;
            write("rbo.svg", &emit_heatmap_svg(&report.rbo, &palette))?;
        }
        Ok(())
    })();
    if result.is_err() {
        let _ = std::fs::remove_dir_all(&dir);
    }
    result
}

/// Per-network mean of |tau| per community-aware column (defined cells
/// only); `None` when a whole column is undefined.
pub fn tau_abs_column_means(report: &NetworkReport) -> [Option<f64>; 5] {
    column_means(&report.tau, f64::abs)
}

/// Per-network mean RBO per community-aware column.
pub fn rbo_column_means(report: &NetworkReport) -> [Option<f64>; 5] {
    column_means(&report.rbo, |v| v)
}

fn column_means(matrix: &ComparisonMatrix, f: impl Fn(f64) -> f64) -> [Option<f64>; 5] {
    let mut out = [None; 5];
    for (c, slot) in out.iter_mut().enumerate() {
        let defined: Vec<f64> = (0..5).filter_map(|r| matrix.get(r, c)).map(&f).collect();
        if !defined.is_empty() {
            *slot = Some(defined.iter().sum::<f64>() / defined.len() as f64);
        }
    }
    out
}

/// Min/mean/max of a per-network statistic across networks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatRange {
    pub min: f64,
    pub mean: f64,
    pub max: f64,
}

impl StatRange {
    fn from_values(values: &[f64]) -> Option<StatRange> {
        if values.is_empty() {
            return None;
        }
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        Some(StatRange { min, mean, max })
    }
}

/// Cross-network aggregate for one community-aware measure.
#[derive(Debug, Clone)]
pub struct MeasureSummary {
    pub measure: Measure,
    /// Networks contributing at least one defined cell.
    pub networks: usize,
    pub tau_abs: Option<StatRange>,
    pub rbo: Option<StatRange>,
}

/// One manifest row's result: a full report or the failure message.
#[derive(Debug)]
pub struct SuiteOutcome {
    pub name: String,
    pub outcome: std::result::Result<NetworkReport, String>,
}

/// All outcomes plus the cross-network summary.
#[derive(Debug)]
pub struct SuiteReport {
    pub outcomes: Vec<SuiteOutcome>,
    pub summary: Vec<MeasureSummary>,
}

impl SuiteReport {
    pub fn succeeded(&self) -> usize {
        self.outcomes.iter().filter(|o| o.outcome.is_ok()).count()
    }

    pub fn failed(&self) -> usize {
        self.outcomes.len() - self.succeeded()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let networks: Vec<serde_json::Value> = self
            .outcomes
            .iter()
            .map(|o| match &o.outcome {
                Ok(r) => json!({
                    "name": o.name,
                    "status": "ok",
                    "nodes": r.stats.nodes,
                    "edges": r.stats.edges,
                    "communities": r.community_count,
                    "modularity": r.modularity,
                    "mixing_parameter": r.mixing,
                    "codelength_bits": r.codelength_bits,
                }),
                Err(message) => json!({
                    "name": o.name,
                    "status": "failed",
                    "error": message,
                }),
            })
            .collect();
        let summary: Vec<serde_json::Value> = self
            .summary
            .iter()
            .map(|s| {
                let range = |r: &Option<StatRange>| match r {
                    Some(r) => json!({ "min": r.min, "mean": r.mean, "max": r.max }),
                    None => serde_json::Value::Null,
                };
                json!({
                    "measure": s.measure.id(),
                    "networks": s.networks,
                    "tau_abs": range(&s.tau_abs),
                    "rbo": range(&s.rbo),
                })
            })
            .collect();
        json!({
            "schema_version": SCHEMA_VERSION,
            "networks": networks,
            "summary": summary,
        })
    }

    /// Summary as CSV, one row per community-aware measure.
    pub fn summary_csv(&self) -> String {
        let mut out = String::from(
            "measure,networks,tau_abs_min,tau_abs_mean,tau_abs_max,rbo_min,rbo_mean,rbo_max\n",
        );
        for s in &self.summary {
            let cell = |v: Option<f64>| v.map(|x| format!("{x:?}")).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                s.measure.id(),
                s.networks,
                cell(s.tau_abs.map(|r| r.min)),
                cell(s.tau_abs.map(|r| r.mean)),
                cell(s.tau_abs.map(|r| r.max)),
                cell(s.rbo.map(|r| r.min)),
                cell(s.rbo.map(|r| r.mean)),
                cell(s.rbo.map(|r| r.max)),
            ));
        }
        out
    }

    /// Human-readable outcome and summary table.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for o in &self.outcomes {
            match &o.outcome {
                Ok(r) => out.push_str(&format!(
                    "{}: ok (N={}, E={}, communities={}, Q={:.4}, mu={:.4})\n",
                    o.name, r.stats.nodes, r.stats.edges, r.community_count, r.modularity, r.mixing
                )),
                Err(e) => out.push_str(&format!("{}: FAILED ({e})\n", o.name)),
            }
        }
        out.push('\n');
        out.push_str("measure     nets  tau|min   tau|mean  tau|max   rbo min   rbo mean  rbo max\n");
        for s in &self.summary {
            let cell = |v: Option<f64>| match v {
                Some(x) => format!("{x:<9.4}"),
                None => "-        ".to_string(),
            };
            out.push_str(&format!(
                "{:<11} {:<5} {} {} {} {} {} {}\n",
                s.measure.id(),
                s.networks,
                cell(s.tau_abs.map(|r| r.min)),
                cell(s.tau_abs.map(|r| r.mean)),
                cell(s.tau_abs.map(|r| r.max)),
                cell(s.rbo.map(|r| r.min)),
                cell(s.rbo.map(|r| r.mean)),
                cell(s.rbo.map(|r| r.max)),
            ));
        }
        out
    }
}

/// Build the cross-network summary from successful reports.
pub fn summarize(reports: &[&NetworkReport]) -> Vec<MeasureSummary> {
    Measure::COMMUNITY_AWARE
        .iter()
        .enumerate()
        .map(|(c, &measure)| {
            let tau_means: Vec<f64> = reports
                .iter()
                .filter_map(|r| tau_abs_column_means(r)[c])
                .collect();
            let rbo_means: Vec<f64> = reports
                .iter()
                .filter_map(|r| rbo_column_means(r)[c])
                .collect();
            let networks = reports
                .iter()
                .filter(|r| tau_abs_column_means(r)[c].is_some() || rbo_column_means(r)[c].is_some())
                .count();
            MeasureSummary {
                measure,
                networks,
                tau_abs: StatRange::from_values(&tau_means),
                rbo: StatRange::from_values(&rbo_means),
            }
        })
        .collect()
}

/// Parse a manifest: one network per line, `name edges_path
/// [partition_path]`, comments and delimiters as in edge lists. Relative
/// paths resolve against the manifest's directory.
pub fn parse_manifest(path: impl AsRef<Path>) -> Result<Vec<NetworkSpec>> {
    let path = path.as_ref();
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(&name, e))?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let options = IngestOptions::default();
    let mut specs = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || options.is_comment_line(trimmed) {
            continue;
        }
        let fields = options.split_fields(trimmed);
        if !(2..=3).contains(&fields.len()) {
            return Err(Error::MalformedLine {
                path: name.clone(),
                line: lineno,
                message: format!(
                    "expected `name edges_path [partition_path]`, found {} tokens",
                    fields.len()
                ),
            });
        }
        let resolve = |p: &str| {
            let pb = PathBuf::from(p);
            if pb.is_absolute() {
                pb
            } else {
                base.join(pb)
            }
        };
        let mut spec = NetworkSpec::new(fields[0], resolve(fields[1]));
        if fields.len() == 3 {
            spec = spec.with_partition(resolve(fields[2]));
        }
        if specs.iter().any(|s: &NetworkSpec| s.name == spec.name) {
            return Err(Error::Config(format!(
                "duplicate network name {:?} in manifest",
                spec.name
            )));
        }
        specs.push(spec);
    }
    if specs.is_empty() {
        return Err(Error::Config(format!("manifest {name} lists no networks")));
    }
    Ok(specs)
}

/// Run every manifest network (in parallel), isolate per-network failures,
/// and write the suite summary artifacts.
pub fn run_suite(config: &RunConfig, manifest_path: impl AsRef<Path>) -> Result<SuiteReport> {
    config.validate()?;
    let specs = parse_manifest(manifest_path)?;
    let outcomes: Vec<SuiteOutcome> = specs
        .par_iter()
        .map(|spec| SuiteOutcome {
            name: spec.name.clone(),
            outcome: run_network(config, spec).map_err(|e| e.to_string()),
        })
        .collect();
    let successes: Vec<&NetworkReport> =
        outcomes.iter().filter_map(|o| o.outcome.as_ref().ok()).collect();
    let report = SuiteReport {
        summary: summarize(&successes),
        outcomes,
    };
    if let Some(root) = &config.out_dir {
        std::fs::create_dir_all(root).map_err(|e| Error::io(root.display().to_string(), e))?;
        if config.emit_json {
            let path = root.join("suite_summary.json");
            let mut text = serde_json::to_string_pretty(&report.to_json_value())
                .map_err(|e| Error::Config(format!("summary serialization failed: {e}")))?;
            text.push('\n');
            std::fs::write(&path, text).map_err(|e| Error::io(path.display().to_string(), e))?;
        }
        if config.emit_csv {
            let path = root.join("suite_summary.csv");
            std::fs::write(&path, report.summary_csv())
                .map_err(|e| Error::io(path.display().to_string(), e))?;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_fingerprint_tracks_parameters() {
        let a = RunConfig::new(42);
        let b = RunConfig::new(42);
        assert_eq!(a.fingerprint(), b.fingerprint());
        let c = RunConfig { seed: 43, ..RunConfig::new(42) };
        assert_ne!(a.fingerprint(), c.fingerprint());
        let d = RunConfig { rbo_p: 0.8, ..RunConfig::new(42) };
        assert_ne!(a.fingerprint(), d.fingerprint());
    }

    #[test]
    fn config_validation_catches_bad_parameters() {
        assert!(RunConfig::new(1).validate().is_ok());
        assert!(RunConfig { rbo_p: 1.0, ..RunConfig::new(1) }.validate().is_err());
        assert!(RunConfig { trials: 0, ..RunConfig::new(1) }.validate().is_err());
        assert!(RunConfig { tie_epsilon: -1.0, ..RunConfig::new(1) }.validate().is_err());
        assert!(RunConfig { distance_sample: Some(0), ..RunConfig::new(1) }
            .validate()
            .is_err());
        let missing = RunConfig {
            detector: DetectorChoice::External(PathBuf::from("/no/such/file")),
            ..RunConfig::new(1)
        };
        assert!(missing.validate().is_err());
    }

    #[test]
    fn summarize_empty_is_all_none() {
        let summary = summarize(&[]);
        assert_eq!(summary.len(), 5);
        for s in summary {
            assert_eq!(s.networks, 0);
            assert!(s.tau_abs.is_none());
            assert!(s.rbo.is_none());
        }
    }

    #[test]
    fn stat_range_aggregates() {
        let r = StatRange::from_values(&[0.1, 0.5, 0.3]).unwrap();
        assert_eq!(r.min, 0.1);
        assert_eq!(r.max, 0.5);
        assert!((r.mean - 0.3).abs() < 1e-12);
        assert!(StatRange::from_values(&[]).is_none());
    }
}
