//! `commcent`: community detection, community-aware centrality, and
//! rank-agreement analysis for undirected networks.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use commcent::centrality::{CbmDensityMode, CentralityParams, Measure};
use commcent::community::{
    detect_communities_infomap, detect_communities_label_propagation, map_equation,
    mixing_parameter, modularity, save_partition,
};
use commcent::graph::{ingest_edge_list_path, largest_connected_component, IngestOptions};
use commcent::pipeline::{
    run_network, run_suite, DetectorChoice, NetworkSpec, RunConfig, SEED_STREAM_DETECTOR,
    SEED_STREAM_DISTANCE, SEED_STREAM_TIES,
};
use commcent::ranking::{RboVariant, TiePolicy};
use commcent::stats::{topo_stats, DistanceMode};
use commcent::{mix_seed, Error};

#[derive(Parser)]
#[command(
    name = "commcent",
    version,
    about = "Community-aware centrality comparison on undirected networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Topological statistics of a network's largest connected component.
    Stats {
        /// Edge list: one `u v` pair per line, `#`/`%` comments, blank
        /// lines ignored.
        edges: PathBuf,
        /// Approximate mean distance from K sampled BFS sources.
        #[arg(long, value_name = "K")]
        sample_paths: Option<usize>,
        /// Seed for every randomized step.
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Detect communities; print the partition or save it with --out.
    Detect {
        edges: PathBuf,
        #[command(flatten)]
        detect: DetectOpts,
        /// Write the partition here instead of stdout.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Compute centrality scores as CSV.
    Centrality {
        edges: PathBuf,
        /// One of degree, betweenness, closeness, katz, pagerank,
        /// bridging, chb, pc, cbm, nnc, or `all`.
        #[arg(long, value_parser = parse_measure)]
        measure: MeasureArg,
        /// Node-to-community file; communities are detected when absent.
        #[arg(long, value_name = "FILE")]
        partition: Option<PathBuf>,
        #[command(flatten)]
        detect: DetectOpts,
        #[command(flatten)]
        scoring: ScoringOpts,
        /// Write `centrality_<id>.csv` files here instead of stdout.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
    /// Full pipeline on one network: statistics, communities, ten
    /// centralities, rank-agreement matrices, artifact files.
    Compare {
        edges: PathBuf,
        /// Node-to-community file; communities are detected when absent.
        #[arg(long, value_name = "FILE")]
        partition: Option<PathBuf>,
        /// Approximate mean distance from K sampled BFS sources.
        #[arg(long, value_name = "K")]
        sample_paths: Option<usize>,
        #[command(flatten)]
        detect: DetectOpts,
        #[command(flatten)]
        scoring: ScoringOpts,
        #[command(flatten)]
        agreement: AgreementOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Run the full pipeline for every network in a manifest.
    Suite {
        /// Manifest: one `name edges_path [partition_path]` per line.
        manifest: PathBuf,
        /// Approximate mean distance from K sampled BFS sources.
        #[arg(long, value_name = "K")]
        sample_paths: Option<usize>,
        #[command(flatten)]
        detect: DetectOpts,
        #[command(flatten)]
        scoring: ScoringOpts,
        #[command(flatten)]
        agreement: AgreementOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
}

#[derive(Args)]
struct DetectOpts {
    /// Seed for every randomized step.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Detector restarts; the lowest description length wins.
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, value_enum, default_value_t = DetectorArg::Infomap)]
    detector: DetectorArg,
}

#[derive(Args)]
struct ScoringOpts {
    /// Katz attenuation factor; defaults to 0.9 / lambda_max.
    #[arg(long, value_name = "S")]
    katz_s: Option<f64>,
    /// PageRank damping factor.
    #[arg(long, default_value_t = 0.85, value_name = "D")]
    pagerank_d: f64,
    /// Community-mediator weighting of inter-community links.
    #[arg(long, value_enum, default_value_t = CbmArg::LinkFraction)]
    cbm_density: CbmArg,
}

#[derive(Args)]
struct AgreementOpts {
    /// Rank-biased overlap persistence parameter.
    #[arg(long, default_value_t = 0.9)]
    rbo_p: f64,
    #[arg(long, value_enum, default_value_t = RboVariantArg::Extrapolated)]
    rbo_variant: RboVariantArg,
    /// How tied scores are ordered within a ranking.
    #[arg(long, value_enum, default_value_t = TiePolicyArg::Id)]
    tie_policy: TiePolicyArg,
    /// Relative gap under which two scores count as tied.
    #[arg(long, default_value_t = 0.0)]
    tie_epsilon: f64,
}

#[derive(Args)]
struct OutputOpts {
    /// Artifact directory; defaults to $COMMCENT_OUT_DIR or `commcent_out`.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    #[arg(long)]
    no_csv: bool,
    #[arg(long)]
    no_json: bool,
    #[arg(long)]
    no_svg: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum DetectorArg {
    Infomap,
    LabelPropagation,
}

#[derive(Clone, Copy, ValueEnum)]
enum TiePolicyArg {
    Id,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum RboVariantArg {
    Extrapolated,
    Truncated,
}

#[derive(Clone, Copy, ValueEnum)]
enum CbmArg {
    LinkFraction,
    CommunityDensity,
}

#[derive(Clone)]
enum MeasureArg {
    All,
    One(Measure),
}

fn parse_measure(s: &str) -> Result<MeasureArg, String> {
    if s == "all" {
        return Ok(MeasureArg::All);
    }
    Measure::parse(s).map(MeasureArg::One).ok_or_else(|| {
        format!(
            "unknown measure {s:?}; expected one of degree, betweenness, closeness, \
             katz, pagerank, bridging, chb, pc, cbm, nnc, all"
        )
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

/// 1 = usage or parameter problem, 2 = data problem, 3 = numeric failure.
fn exit_code_for(e: &Error) -> u8 {
    if e.is_numeric_error() {
        3
    } else if e.is_data_error() {
        2
    } else {
        1
    }
}

fn run(cli: Cli) -> commcent::Result<ExitCode> {
    match cli.command {
        Command::Stats { edges, sample_paths, seed } => {
            cmd_stats(&edges, sample_paths, seed)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Detect { edges, detect, out } => {
            cmd_detect(&edges, &detect, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Centrality { edges, measure, partition, detect, scoring, out } => {
            cmd_centrality(&edges, &measure, partition, &detect, &scoring, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Compare { edges, partition, sample_paths, detect, scoring, agreement, output } => {
            cmd_compare(&edges, partition, sample_paths, &detect, &scoring, &agreement, output)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Suite { manifest, sample_paths, detect, scoring, agreement, output } => {
            cmd_suite(&manifest, sample_paths, &detect, &scoring, &agreement, output)
        }
    }
}

fn build_config(
    detect: &DetectOpts,
    scoring: &ScoringOpts,
    agreement: Option<&AgreementOpts>,
    partition: Option<&Path>,
    sample_paths: Option<usize>,
) -> RunConfig {
    let mut config = RunConfig::new(detect.seed);
    config.trials = detect.trials;
    config.detector = match partition {
        Some(path) => DetectorChoice::External(path.to_path_buf()),
        None => match detect.detector {
            DetectorArg::Infomap => DetectorChoice::Infomap,
            DetectorArg::LabelPropagation => DetectorChoice::LabelPropagation,
        },
    };
    config.centrality = CentralityParams {
        katz_attenuation: scoring.katz_s,
        pagerank_damping: scoring.pagerank_d,
        ..CentralityParams::default()
    };
    config.cbm_mode = match scoring.cbm_density {
        CbmArg::LinkFraction => CbmDensityMode::LinkFraction,
        CbmArg::CommunityDensity => CbmDensityMode::CommunityDensity,
    };
    if let Some(a) = agreement {
        config.rbo_p = a.rbo_p;
        config.rbo_variant = match a.rbo_variant {
            RboVariantArg::Extrapolated => RboVariant::Extrapolated,
            RboVariantArg::Truncated => RboVariant::Truncated,
        };
        config.tie_epsilon = a.tie_epsilon;
        config.tie_policy = match a.tie_policy {
            TiePolicyArg::Id => TiePolicy::IdOrder,
            TiePolicyArg::Random => {
                TiePolicy::RandomSeeded(mix_seed(detect.seed, SEED_STREAM_TIES))
            }
        };
    }
    config.distance_sample = sample_paths;
    config
}

fn apply_output(config: &mut RunConfig, output: OutputOpts) -> PathBuf {
    let dir = output
        .out
        .or_else(|| std::env::var_os("COMMCENT_OUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("commcent_out"));
    config.out_dir = Some(dir.clone());
    config.emit_csv = !output.no_csv;
    config.emit_json = !output.no_json;
    config.emit_svg = !output.no_svg;
    dir
}

fn network_spec(edges: &Path, partition: Option<PathBuf>) -> NetworkSpec {
    let name = edges
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "network".to_string());
    let mut spec = NetworkSpec::new(name, edges);
    if let Some(p) = partition {
        spec = spec.with_partition(p);
    }
    spec
}

fn cmd_stats(edges: &Path, sample_paths: Option<usize>, seed: u64) -> commcent::Result<()> {
    let options = IngestOptions::default();
    let (full, ingest) = ingest_edge_list_path(edges, &options)?;
    let (lcc, _) = largest_connected_component(&full);
    let mode = match sample_paths {
        None => DistanceMode::Exact,
        Some(sources) => DistanceMode::Sampled {
            sources,
            seed: mix_seed(seed, SEED_STREAM_DISTANCE),
        },
    };
    let stats = topo_stats(&lcc, mode)?;
    let value = serde_json::json!({
        "ingest": ingest,
        "full_graph": { "nodes": full.node_count(), "edges": full.edge_count() },
        "lcc": stats,
    });
    println!(
        "{}",
        serde_json::to_string_pretty(&value).expect("statistics always serialize")
    );
    Ok(())
}

fn cmd_detect(edges: &Path, detect: &DetectOpts, out: Option<&Path>) -> commcent::Result<()> {
    let options = IngestOptions::default();
    let (full, _) = ingest_edge_list_path(edges, &options)?;
    let (lcc, _) = largest_connected_component(&full);
    let seed = mix_seed(detect.seed, SEED_STREAM_DETECTOR);
    let partition = match detect.detector {
        DetectorArg::Infomap => detect_communities_infomap(&lcc, seed, detect.trials)?,
        DetectorArg::LabelPropagation => detect_communities_label_propagation(&lcc, seed),
    };
    let text = save_partition(&partition, &lcc);
    let summary = format!(
        "communities={} codelength_bits={:.6} modularity={:.6} mixing={:.6}",
        partition.community_count(),
        map_equation(&lcc, &partition),
        modularity(&lcc, &partition),
        mixing_parameter(&lcc, &partition),
    );
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Error::io(path.display().to_string(), e))?;
            println!("{summary}");
            println!("partition: {}", path.display());
        }
        None => {
            print!("{text}");
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn cmd_centrality(
    edges: &Path,
    measure: &MeasureArg,
    partition: Option<PathBuf>,
    detect: &DetectOpts,
    scoring: &ScoringOpts,
    out: Option<&Path>,
) -> commcent::Result<()> {
    let config = build_config(detect, scoring, None, partition.as_deref(), None);
    let spec = network_spec(edges, partition);
    let report = run_network(&config, &spec)?;
    let selected: Vec<Measure> = match measure {
        MeasureArg::All => Measure::ALL.to_vec(),
        MeasureArg::One(m) => vec![*m],
    };
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(|e| Error::io(dir.display().to_string(), e))?;
            for m in &selected {
                let path = dir.join(format!("centrality_{}.csv", m.id()));
                std::fs::write(&path, report.score(*m).to_csv(&report.labels))
                    .map_err(|e| Error::io(path.display().to_string(), e))?;
            }
            println!("wrote {} file(s) to {}", selected.len(), dir.display());
        }
        None => {
            for m in &selected {
                print!("{}", report.score(*m).to_csv(&report.labels));
            }
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_compare(
    edges: &Path,
    partition: Option<PathBuf>,
    sample_paths: Option<usize>,
    detect: &DetectOpts,
    scoring: &ScoringOpts,
    agreement: &AgreementOpts,
    output: OutputOpts,
) -> commcent::Result<()> {
    let mut config =
        build_config(detect, scoring, Some(agreement), partition.as_deref(), sample_paths);
    let out_dir = apply_output(&mut config, output);
    let spec = network_spec(edges, partition);
    let report = run_network(&config, &spec)?;
    println!(
        "network: {} ({} nodes, {} edges in largest component; {} nodes, {} edges ingested)",
        report.name, report.stats.nodes, report.stats.edges, report.full_nodes, report.full_edges
    );
    println!(
        "communities: {} via {} (codelength {:.4} bits, Q {:.4}, mu {:.4})",
        report.community_count,
        report.detector,
        report.codelength_bits,
        report.modularity,
        report.mixing
    );
    println!();
    print!("{}", report.tau.to_csv());
    println!();
    print!("{}", report.rbo.to_csv());
    println!();
    println!("artifacts: {}", out_dir.join(&report.name).display());
    Ok(())
}

fn cmd_suite(
    manifest: &Path,
    sample_paths: Option<usize>,
    detect: &DetectOpts,
    scoring: &ScoringOpts,
    agreement: &AgreementOpts,
    output: OutputOpts,
) -> commcent::Result<ExitCode> {
    let mut config = build_config(detect, scoring, Some(agreement), None, sample_paths);
    let out_dir = apply_output(&mut config, output);
    let report = run_suite(&config, manifest)?;
    print!("{}", report.render_text());
    println!();
    println!("artifacts: {}", out_dir.display());
    if report.failed() > 0 {
        eprintln!("{} of {} networks failed", report.failed(), report.outcomes.len());
        Ok(ExitCode::from(2))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}
