//! Command-line front end: rank reports for graph files, family instance
//! generation, and the seeded batch verification runners.
//!
//! Exit codes: 0 on success with zero violations, 1 when a verification run
//! records violations, 2 on usage, parse or validation errors.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qgain::engine::{lower_bound, structural_rank, CycleType, RankResult};
use qgain::families::{
    make_cycle_of_type, make_flower, make_infinity, make_spider_tree, make_theta,
    target_gain_for_type, CycleAttachment, FlowerSpec, InfinitySpec, ThetaSpec,
};
use qgain::gaingraph::{read_graph_file, write_graph_file, GainGraph, GainMode};
use qgain::harness::{
    rank_file, rank_report, run_verify_bounds, run_verify_extremal, seeded_rng, CellTarget,
    RunConfig, VerificationReport,
};
use qgain::quaternion::Quaternion;

#[derive(Parser)]
#[command(name = "qgain", version, about = "Quaternion unit gain graph rank toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Cycle,
    Infinity,
    Theta,
    Flower,
    Spider,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Print rank, structural rank, cycle inventory and lower bound for a
    /// graph file
    Rank {
        file: PathBuf,
        /// Use float elimination with tolerance pivoting
        #[arg(long)]
        float: bool,
        /// Pivot tolerance for float mode
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Print counting stats and the cycle inventory for a graph file
    Classify { file: PathBuf },
    /// Emit a family instance as a graph file plus sidecar metadata
    Generate {
        #[arg(long, value_enum)]
        family: Family,
        /// Comma-separated key=value parameters, e.g. "n=6,type=1" for
        /// cycle, "p=4,l=3,q=4" for infinity/theta, "legs=1.1.3,cycles=4.4.6"
        /// for flower, "legs=1.1.3" for spider
        #[arg(long, default_value = "")]
        params: String,
        /// Seed for randomized gain choices
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Sample random graphs and verify rank bounds and identities
    VerifyBounds {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        max_n: usize,
        /// Sampling cells as n:c:p triples, p may be '-' for unconstrained,
        /// e.g. "6:1:0,8:2:-"
        #[arg(long, value_delimiter = ',')]
        cells: Vec<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Report path; stdout when omitted
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate extremal instances and near misses and verify the
    /// characterizations in both directions
    VerifyExtremal {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run() {
        Ok(clean) => {
            if clean {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run() -> Result<bool> {
    let cli = Cli::parse();
    match cli.command {
        Command::Rank { file, float, tol } => {
            if !float && (tol - 1e-9).abs() > f64::EPSILON {
                bail!("--tol only applies together with --float");
            }
            let report = rank_file(&file, float.then_some(tol))?;
            print!("{report}");
            Ok(true)
        }
        Command::Classify { file } => {
            let graph = read_graph_file(&file)?;
            let report = rank_report(&graph, None);
            println!(
                "n = {}, m = {}, c = {}, p = {}",
                report.n, report.m, report.c, report.p
            );
            if report.cycles.is_empty() {
                println!("cycles: none");
            } else {
                println!("cycles:");
                for row in &report.cycles {
                    println!(
                        "  length {:>2}  {}  gain {}",
                        row.length, row.cycle_type, row.gain
                    );
                }
                if report.cycles_truncated {
                    println!("  (cycle list truncated)");
                }
            }
            match report.bound {
                Some(b) => println!("bound case: {:?}, bound = {}", b.case, b.bound),
                None => println!("bound case: not applicable (isolated vertices)"),
            }
            Ok(true)
        }
        Command::Generate { family, params, seed, output } => {
            let graph = generate(family, &params, seed)?;
            write_graph_file(&output, &graph)?;
            let meta = sidecar_metadata(family, &params, seed, &graph);
            let meta_path = PathBuf::from(format!("{}.meta.json", output.display()));
            std::fs::write(&meta_path, serde_json::to_string_pretty(&meta)?)
                .with_context(|| format!("writing {}", meta_path.display()))?;
            eprintln!("wrote {} and {}", output.display(), meta_path.display());
            Ok(true)
        }
        Command::VerifyBounds { seed, samples, max_n, cells, format, output } => {
            let mut cfg = RunConfig::new(seed, samples, max_n);
            cfg.cells = cells
                .iter()
                .filter(|s| !s.is_empty())
                .map(|s| parse_cell(s))
                .collect::<Result<Vec<_>>>()?;
            let report = run_verify_bounds(&cfg).map_err(|e| anyhow!("{e}"))?;
            emit_report(&report, format, output.as_deref())?;
            Ok(report.zero_violations())
        }
        Command::VerifyExtremal { seed, samples, format, output } => {
            let cfg = RunConfig::new(seed, samples, 12);
            let report = run_verify_extremal(&cfg).map_err(|e| anyhow!("{e}"))?;
            emit_report(&report, format, output.as_deref())?;
            Ok(report.zero_violations())
        }
    }
}

fn emit_report(
    report: &VerificationReport,
    format: Format,
    output: Option<&Path>,
) -> Result<()> {
    let body = match format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    match output {
        Some(path) => std::fs::write(path, body)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{body}"),
    }
    let status = if report.zero_violations() {
        "zero violations"
    } else {
        "VIOLATIONS RECORDED"
    };
    eprintln!(
        "{} records, {} ({} ms)",
        report.records.len(),
        status,
        report.summary.wall_time_ms
    );
    Ok(())
}

/// `n:c:p` with `p = '-'` meaning unconstrained.
fn parse_cell(text: &str) -> Result<CellTarget> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        bail!("cell {text:?} is not of the form n:c:p");
    }
    let n: u32 = parts[0].parse().context("cell n")?;
    let c: usize = parts[1].parse().context("cell c")?;
    let p = if parts[2] == "-" {
        None
    } else {
        Some(parts[2].parse::<usize>().context("cell p")?)
    };
    Ok(CellTarget { n, c, p })
}

fn parse_params(params: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for piece in params.split(',').filter(|p| !p.is_empty()) {
        let (key, value) = piece
            .split_once('=')
            .ok_or_else(|| anyhow!("parameter {piece:?} is not key=value"))?;
        out.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(out)
}

fn req_usize(map: &BTreeMap<String, String>, key: &str) -> Result<usize> {
    map.get(key)
        .ok_or_else(|| anyhow!("missing required parameter {key}"))?
        .parse()
        .with_context(|| format!("parameter {key}"))
}

fn opt_usize(map: &BTreeMap<String, String>, key: &str, default: usize) -> Result<usize> {
    match map.get(key) {
        None => Ok(default),
        Some(v) => v.parse().with_context(|| format!("parameter {key}")),
    }
}

fn dotted_list(map: &BTreeMap<String, String>, key: &str) -> Result<Option<Vec<usize>>> {
    match map.get(key) {
        None => Ok(None),
        Some(v) => Ok(Some(
            v.split('.')
                .map(|x| x.parse::<usize>().with_context(|| format!("parameter {key}")))
                .collect::<Result<Vec<_>>>()?,
        )),
    }
}

fn cycle_type_from(num: usize) -> Result<CycleType> {
    Ok(match num {
        1 => CycleType::Type1,
        2 => CycleType::Type2,
        3 => CycleType::Type3,
        4 => CycleType::Type4,
        other => bail!("cycle type must be 1..4, got {other}"),
    })
}

fn generate(family: Family, params: &str, seed: u64) -> Result<GainGraph> {
    let map = parse_params(params)?;
    let mut rng = seeded_rng(seed);
    let mode = GainMode::default();
    let graph = match family {
        Family::Cycle => {
            let n = req_usize(&map, "n")?;
            let t = cycle_type_from(opt_usize(&map, "type", 1)?)?;
            make_cycle_of_type(n, t, &mut rng, mode)?
        }
        Family::Infinity => {
            let (p, l, q) =
                (req_usize(&map, "p")?, req_usize(&map, "l")?, req_usize(&map, "q")?);
            let tp = cycle_type_from(opt_usize(&map, "type_p", 1)?)?;
            let tq = cycle_type_from(opt_usize(&map, "type_q", 1)?)?;
            let spec = InfinitySpec::new(
                p,
                l,
                q,
                target_gain_for_type(p, tp, &mut rng, mode)?,
                target_gain_for_type(q, tq, &mut rng, mode)?,
            );
            make_infinity(&spec)?
        }
        Family::Theta => {
            let (p, l, q) =
                (req_usize(&map, "p")?, req_usize(&map, "l")?, req_usize(&map, "q")?);
            let tpl = cycle_type_from(opt_usize(&map, "type_pl", 1)?)?;
            let tlq = cycle_type_from(opt_usize(&map, "type_lq", 1)?)?;
            let spec = ThetaSpec::new(
                p,
                l,
                q,
                target_gain_for_type(p + l + 2, tpl, &mut rng, mode)?,
                target_gain_for_type(l + q + 2, tlq, &mut rng, mode)?,
            );
            make_theta(&spec)?
        }
        Family::Flower => {
            let legs = dotted_list(&map, "legs")?
                .ok_or_else(|| anyhow!("flower needs legs=a.b.c"))?;
            let tree = make_spider_tree(&legs)?;
            let mut leaves: Vec<_> =
                tree.pendant_structure().iter().map(|&(l, _)| l).collect();
            leaves.sort_unstable();
            let lens =
                dotted_list(&map, "cycles")?.unwrap_or_else(|| vec![4; leaves.len()]);
            if lens.len() > leaves.len() {
                bail!("more cycles than leaves");
            }
            let mut attachments: Vec<CycleAttachment> = leaves
                .iter()
                .zip(&lens)
                .map(|(&leaf, &len)| CycleAttachment::type1(leaf, len))
                .collect();
            if let Some(off) = map.get("off") {
                let idx: usize = off.parse().context("parameter off")?;
                if idx >= attachments.len() {
                    bail!("off index out of range");
                }
                let last = attachments[idx].gains.len() - 1;
                attachments[idx].gains[last] =
                    &attachments[idx].gains[last] * &Quaternion::i();
            }
            make_flower(&FlowerSpec { tree, attachments })?
        }
        Family::Spider => {
            let legs = dotted_list(&map, "legs")?
                .ok_or_else(|| anyhow!("spider needs legs=a.b.c"))?;
            make_spider_tree(&legs)?
        }
    };
    Ok(graph)
}

#[derive(Serialize)]
struct SidecarMetadata {
    family: String,
    params: String,
    seed: u64,
    n: usize,
    m: usize,
    c: usize,
    p: usize,
    expected_rank: RankResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    expected_bound: Option<qgain::engine::BoundCase>,
}

fn sidecar_metadata(
    family: Family,
    params: &str,
    seed: u64,
    graph: &GainGraph,
) -> SidecarMetadata {
    let stats = graph.stats();
    SidecarMetadata {
        family: format!("{family:?}").to_lowercase(),
        params: params.to_string(),
        seed,
        n: stats.n,
        m: stats.m,
        c: stats.c,
        p: stats.p,
        expected_rank: structural_rank(graph),
        expected_bound: lower_bound(graph).ok(),
    }
}
