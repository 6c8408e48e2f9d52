//! Batch verification harness.
//!
//! Two seeded runners produce machine-readable reports:
//!
//! * [`run_verify_bounds`] samples random connected gain graphs over
//!   `(n, c, p)` cells and checks, per sample: agreement of the elimination
//!   rank with the complex-representation oracle, containment in the
//!   structural rank result, the combinatorial lower bound, the vertex- and
//!   edge-deletion rank perturbation bounds, the vertex-deletion counting
//!   identities, and switching invariance under a random regauging.
//! * [`run_verify_extremal`] generates positive and near-miss instances for
//!   the five extremal characterizations and runs the bidirectional
//!   checkers, recording any side disagreement.
//!
//! Reports are deterministic for a given config: the per-sample random
//! stream is split by sample index, so ordering and parallelism cannot
//! change results, and wall time lives only in the summary section.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{
    classify_cycle, cycle_gain, lower_bound, simple_cycles, structural_rank, BoundCase,
    CycleType, RankResult,
};
use crate::families::{
    check_bicyclic_floor_plus_one, check_flower_floor_plus_one, check_leaf_free_floor,
    check_pendant_floor, check_tree_pendant_floor, make_cycle_of_type, make_flower,
    make_infinity, make_spider_tree, make_theta, CycleAttachment, FamiliesError, FlowerSpec,
    InfinitySpec, ThetaSpec,
};
use crate::gaingraph::{
    from_json_str, random_switching, random_tree, read_graph_file, sample_cell, GainGraph,
    GainMode, GraphError,
};
use crate::presets;
use crate::quaternion::Quaternion;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid config: {0}")]
    Config(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Families(#[from] FamiliesError),
    #[error("io error: {0}")]
    Io(String),
}

/// A target `(n, c, p)` sampling cell; `p = None` leaves the pendant count
/// free.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellTarget {
    pub n: u32,
    pub c: usize,
    pub p: Option<usize>,
}

/// Harness run configuration. Seeds are always explicit; there is no
/// environment fallback.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub samples: usize,
    pub max_n: usize,
    #[serde(default)]
    pub gain_mode: GainMode,
    #[serde(default)]
    pub cells: Vec<CellTarget>,
    #[serde(default)]
    pub float_tol: Option<f64>,
}

impl RunConfig {
    pub fn new(seed: u64, samples: usize, max_n: usize) -> Self {
        RunConfig {
            seed,
            samples,
            max_n,
            gain_mode: GainMode::default(),
            cells: Vec::new(),
            float_tol: None,
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.samples < 1 {
            return Err(HarnessError::Config("samples must be >= 1".into()));
        }
        if self.max_n < 2 {
            return Err(HarnessError::Config("max_n must be >= 2".into()));
        }
        if let Some(tol) = self.float_tol {
            if !(tol > 0.0) {
                return Err(HarnessError::Config("float_tol must be positive".into()));
            }
        }
        for cell in &self.cells {
            if cell.n < 2 {
                return Err(HarnessError::Config(format!(
                    "cell n={} too small",
                    cell.n
                )));
            }
            let n = cell.n as usize;
            if (n - 1) + cell.c > n * (n - 1) / 2 {
                return Err(HarnessError::Config(format!(
                    "cell (n={}, c={}) is infeasible",
                    cell.n, cell.c
                )));
            }
        }
        Ok(())
    }
}

/// One characterization evaluated on one graph.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CharacterizationRecord {
    pub name: String,
    pub rank_side: bool,
    pub shape_side: bool,
    pub agree: bool,
}

/// Everything measured on one sampled graph.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphRecord {
    pub index: usize,
    pub digest: String,
    pub n: usize,
    pub m: usize,
    pub c: usize,
    pub p: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cell: Option<CellTarget>,
    pub relaxed: bool,
    pub elimination_rank: usize,
    pub adjoint_rank: usize,
    pub structural: RankResult,
    pub bound: BoundCase,
    pub bound_tight: bool,
    pub cycle_types: Vec<CycleType>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub characterizations: Vec<CharacterizationRecord>,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CellCount {
    pub n: usize,
    pub c: usize,
    pub p: usize,
    pub count: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Summary {
    pub samples: usize,
    pub per_cell: Vec<CellCount>,
    pub zero_violations: bool,
    pub wall_time_ms: u128,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub config: RunConfig,
    pub records: Vec<GraphRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn zero_violations(&self) -> bool {
        self.records.iter().all(|r| r.violations.is_empty())
    }

    /// The deterministic part of the report: records only, no timing.
    pub fn records_json(&self) -> String {
        serde_json::to_string_pretty(&self.records).expect("records serialize")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Summary rows `n,c,p,rank,bound,tight`, one per record.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,c,p,rank,bound,tight\n");
        for r in &self.records {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.n, r.c, r.p, r.elimination_rank, r.bound.bound, r.bound_tight
            ));
        }
        out
    }

    fn finish(config: RunConfig, records: Vec<GraphRecord>, started: Instant) -> Self {
        let mut cells: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
        for r in &records {
            *cells.entry((r.n, r.c, r.p)).or_insert(0) += 1;
        }
        let zero_violations = records.iter().all(|r| r.violations.is_empty());
        VerificationReport {
            config,
            summary: Summary {
                samples: records.len(),
                per_cell: cells
                    .into_iter()
                    .map(|((n, c, p), count)| CellCount { n, c, p, count })
                    .collect(),
                zero_violations,
                wall_time_ms: started.elapsed().as_millis(),
            },
            records,
        }
    }
}

/// Independent random stream for one sample index.
fn sample_rng(seed: u64, index: usize) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(index as u64 + 1);
    rng
}

/// Measure a graph: ranks via both routes, structural result, bound, cycle
/// classes; push any inconsistency into `violations`.
fn measure(
    index: usize,
    graph: &GainGraph,
    cell: Option<CellTarget>,
    relaxed: bool,
    characterizations: Vec<CharacterizationRecord>,
    extra_violations: Vec<String>,
) -> GraphRecord {
    let stats = graph.stats();
    let mut violations = extra_violations;
    let matrix = graph.adjacency_matrix();
    let elimination_rank = matrix.row_left_rank();
    let adjoint = matrix.complex_adjoint().rank();
    if adjoint != 2 * elimination_rank {
        violations.push(format!(
            "complex representation rank {adjoint} is not twice the elimination rank {elimination_rank}"
        ));
    }
    let adjoint_rank = adjoint / 2;
    let structural = structural_rank(graph);
    if !structural.contains(elimination_rank) {
        violations.push(format!(
            "structural result {structural} misses elimination rank {elimination_rank}"
        ));
    }
    let bound = match lower_bound(graph) {
        Ok(b) => b,
        Err(_) => BoundCase {
            case: crate::engine::LowerBoundCase::HasPendant,
            bound: i64::MIN,
        },
    };
    if (elimination_rank as i64) < bound.bound {
        violations.push(format!(
            "rank {elimination_rank} below lower bound {}",
            bound.bound
        ));
    }
    let mut cycle_types: Vec<CycleType> = simple_cycles(graph, 256)
        .iter()
        .map(|cyc| {
            let gain = cycle_gain(graph, cyc).expect("enumerated cycle");
            classify_cycle(cyc.len(), &gain)
        })
        .collect();
    cycle_types.sort_unstable();
    cycle_types.dedup();
    for ch in &characterizations {
        if !ch.agree {
            violations.push(format!("characterization {} sides disagree", ch.name));
        }
    }
    GraphRecord {
        index,
        digest: graph.digest(),
        n: stats.n,
        m: stats.m,
        c: stats.c,
        p: stats.p,
        cell,
        relaxed,
        elimination_rank,
        adjoint_rank,
        structural,
        bound_tight: elimination_rank as i64 == bound.bound,
        bound,
        cycle_types,
        characterizations,
        violations,
    }
}

/// Per-sample perturbation checks: vertex deletion stays within 2 of the
/// rank, edge deletion within 2, the deletion counting identities hold, and
/// a random regauging leaves the rank unchanged.
fn perturbation_checks<R: Rng + ?Sized>(
    rng: &mut R,
    graph: &GainGraph,
    rank: usize,
    mode: GainMode,
) -> Vec<String> {
    let mut violations = Vec::new();
    let vertices = graph.vertex_vec();
    if !vertices.is_empty() {
        let v = vertices[rng.gen_range(0..vertices.len())];
        let deleted = graph.delete_vertex(v).expect("vertex exists");
        let reduced = deleted.rank();
        if !(rank.saturating_sub(2) <= reduced && reduced <= rank) {
            violations.push(format!(
                "deleting vertex {v} moved rank {rank} -> {reduced}"
            ));
        }
        let counts = graph.vertex_deletion_counts(v).expect("vertex exists");
        if counts.degree + counts.twodeg_components
            < counts.twodeg_neighbors + counts.components_after
        {
            violations.push(format!("deletion count inequality failed at {v}"));
        }
        if graph.on_cycle(v)
            && 2 * counts.degree + counts.twodeg_components
                < counts.twodeg_neighbors + 2 * counts.components_after + 1
        {
            violations.push(format!("cycle-vertex deletion inequality failed at {v}"));
        }
        let c_before = graph.stats().c as isize;
        let c_after = deleted.stats().c as isize;
        if c_after != c_before - counts.degree as isize + counts.components_after as isize {
            violations.push(format!("cyclomatic deletion identity failed at {v}"));
        }
    }
    let edges: Vec<_> = graph.edges().map(|(u, v, _)| (u, v)).collect();
    if !edges.is_empty() {
        let (u, v) = edges[rng.gen_range(0..edges.len())];
        let reduced = graph.delete_edge(u, v).expect("edge exists").rank();
        if (rank as i64) < reduced as i64 - 2 {
            violations.push(format!(
                "deleting edge {u}-{v} moved rank {rank} -> {reduced}"
            ));
        }
    }
    let theta = random_switching(rng, graph, mode);
    let switched = graph.switch(&theta).expect("random switching is unit");
    if switched.rank() != rank {
        violations.push("switching changed the rank".into());
    }
    violations
}

/// Random-graph bound verification over the configured cells.
pub fn run_verify_bounds(cfg: &RunConfig) -> Result<VerificationReport, HarnessError> {
    cfg.validate()?;
    let started = Instant::now();
    let mut records = Vec::with_capacity(cfg.samples);
    for index in 0..cfg.samples {
        let mut rng = sample_rng(cfg.seed, index);
        let cell = if cfg.cells.is_empty() {
            let n = rng.gen_range(2..=cfg.max_n as u32);
            let max_extra = (n as usize) * (n as usize - 1) / 2 - (n as usize - 1);
            let c = rng.gen_range(0..=3usize.min(max_extra));
            CellTarget { n, c, p: None }
        } else {
            cfg.cells[index % cfg.cells.len()]
        };
        let sample = sample_cell(&mut rng, cell.n, cell.c, cell.p, cfg.gain_mode, 1000)?;
        let rank = sample.graph.rank();
        let violations = perturbation_checks(&mut rng, &sample.graph, rank, cfg.gain_mode);
        records.push(measure(
            index,
            &sample.graph,
            Some(cell),
            sample.relaxed,
            Vec::new(),
            violations,
        ));
    }
    Ok(VerificationReport::finish(cfg.clone(), records, started))
}

fn characterization(name: &str, rank_side: bool, shape_side: bool) -> CharacterizationRecord {
    CharacterizationRecord {
        name: name.to_string(),
        rank_side,
        shape_side,
        agree: rank_side == shape_side,
    }
}

/// Extremal characterization verification: fixed showcase instances plus
/// generated positive and near-miss instances for all five checks.
pub fn run_verify_extremal(cfg: &RunConfig) -> Result<VerificationReport, HarnessError> {
    cfg.validate()?;
    let started = Instant::now();
    let mut records = Vec::new();

    // Fixed instances with pinned ranks.
    let showcases: [(GainGraph, usize); 3] = [
        (presets::flower_4466(), 18),
        (presets::flower_446_with_leaf(), 14),
        (presets::flower_446_type2(), 16),
    ];
    for (idx, (graph, expected)) in showcases.iter().enumerate() {
        let mut extra = Vec::new();
        if graph.rank() != *expected {
            extra.push(format!(
                "showcase rank {} differs from pinned {expected}",
                graph.rank()
            ));
        }
        let stats = graph.stats();
        let chk = if stats.p == 0 {
            check_flower_floor_plus_one(graph).map(|v| {
                characterization("leaf_free_flower_floor_plus_one", v.rank_side, v.shape_side)
            })
        } else {
            check_pendant_floor(graph)
                .map(|v| characterization("pendant_floor", v.rank_side, v.shape_side))
        };
        let characterizations = match chk {
            Ok(c) => vec![c],
            Err(e) => {
                extra.push(format!("checker refused showcase: {e}"));
                Vec::new()
            }
        };
        records.push(measure(idx, graph, None, false, characterizations, extra));
    }

    for index in 0..cfg.samples {
        let mut rng = sample_rng(cfg.seed, 1_000_000 + index);
        let record_index = records.len();
        let (graph, characterizations) = generate_extremal_case(&mut rng, index, cfg.gain_mode)?;
        records.push(measure(
            record_index,
            &graph,
            None,
            false,
            characterizations,
            Vec::new(),
        ));
    }
    Ok(VerificationReport::finish(cfg.clone(), records, started))
}

/// One generated instance cycling through the five characterizations and
/// alternating positive instances with near misses.
fn generate_extremal_case<R: Rng + ?Sized>(
    rng: &mut R,
    index: usize,
    mode: GainMode,
) -> Result<(GainGraph, Vec<CharacterizationRecord>), HarnessError> {
    let positive = index % 2 == 0;
    match index % 5 {
        0 => {
            // Single cycles: the floor is met exactly by the first class.
            let (n, t) = if positive {
                (2 * rng.gen_range(2..=5usize), CycleType::Type1)
            } else {
                match rng.gen_range(0..3) {
                    0 => (2 * rng.gen_range(2..=5usize), CycleType::Type2),
                    1 => (2 * rng.gen_range(2..=5usize) + 1, CycleType::Type3),
                    _ => (2 * rng.gen_range(2..=5usize) + 1, CycleType::Type4),
                }
            };
            let g = make_cycle_of_type(n, t, rng, mode)?;
            let v = check_leaf_free_floor(&g)?;
            Ok((g, vec![characterization("leaf_free_floor", v.rank_side, v.shape_side)]))
        }
        1 => {
            // Bicyclic graphs: two cycles joined by a path.
            let p = 2 * rng.gen_range(2..=3usize);
            let q = 2 * rng.gen_range(2..=3usize);
            let spec = if positive {
                let l = 2 * rng.gen_range(0..=2usize) + 1;
                InfinitySpec::all_type1(p, l, q)?
            } else if rng.gen_bool(0.5) {
                let l = 2 * rng.gen_range(1..=2usize);
                InfinitySpec::all_type1(p, l, q)?
            } else {
                let l = 2 * rng.gen_range(0..=2usize) + 1;
                let mut spec = InfinitySpec::all_type1(p, l, q)?;
                spec.gain_p = &spec.gain_p * &Quaternion::i();
                spec
            };
            let g = make_infinity(&spec)?;
            let v = check_bicyclic_floor_plus_one(&g)?;
            Ok((g, vec![characterization("bicyclic_floor_plus_one", v.rank_side, v.shape_side)]))
        }
        2 => {
            // Theta graphs: three arms between two hubs.
            let spec = if positive {
                let arms: [usize; 3] =
                    [0; 3].map(|_| 2 * rng.gen_range(0..=2usize) + 1);
                ThetaSpec::all_type1(arms[0], arms[1], arms[2])?
            } else if rng.gen_bool(0.5) {
                let even = 2 * rng.gen_range(1..=2usize);
                ThetaSpec::all_type1(even, even, even)?
            } else {
                let arms: [usize; 3] =
                    [0; 3].map(|_| 2 * rng.gen_range(0..=2usize) + 1);
                let mut spec = ThetaSpec::all_type1(arms[0], arms[1], arms[2])?;
                spec.gain_pl = &spec.gain_pl * &Quaternion::j();
                spec
            };
            let g = make_theta(&spec)?;
            let v = check_bicyclic_floor_plus_one(&g)?;
            Ok((g, vec![characterization("bicyclic_floor_plus_one", v.rank_side, v.shape_side)]))
        }
        3 => {
            // Trees against the pendant bound; both quantifier readings.
            let g = if positive {
                let legs: Vec<usize> = (0..rng.gen_range(3..=4usize))
                    .map(|_| 2 * rng.gen_range(0..=2usize) + 1)
                    .collect();
                make_spider_tree(&legs)?
            } else {
                // Random tree with at least 3 leaves; whichever side of the
                // bound it lands on, the checker's sides must agree.
                loop {
                    let size = rng.gen_range(5..=10u32);
                    let t = random_tree(rng, size);
                    if t.stats().p >= 3 {
                        break t;
                    }
                }
            };
            let v = check_tree_pendant_floor(&g)?;
            Ok((
                g,
                vec![
                    characterization("tree_pendant_floor_all", v.rank_side, v.shape_all),
                    characterization("tree_pendant_floor_exists", v.rank_side, v.shape_exists),
                ],
            ))
        }
        _ => {
            // Flowers: cycles attached at tree leaves, all or some leaves.
            let legs: Vec<usize> = (0..rng.gen_range(3..=4usize))
                .map(|_| 2 * rng.gen_range(0..=2usize) + 1)
                .collect();
            let tree = make_spider_tree(&legs)?;
            let mut leaves: Vec<_> =
                tree.pendant_structure().iter().map(|&(l, _)| l).collect();
            leaves.sort_unstable();
            let take = if index % 10 < 5 {
                leaves.len()
            } else {
                leaves.len() - 1
            };
            let mut attachments: Vec<CycleAttachment> = leaves
                .iter()
                .take(take)
                .map(|&leaf| CycleAttachment::type1(leaf, 2 * rng.gen_range(2..=3usize)))
                .collect();
            if !positive {
                // Flip one cycle off-class.
                let idx = rng.gen_range(0..attachments.len());
                let last = attachments[idx].gains.len() - 1;
                attachments[idx].gains[last] =
                    &attachments[idx].gains[last] * &Quaternion::k();
            }
            let g = make_flower(&FlowerSpec { tree, attachments })?;
            let stats = g.stats();
            let v = if stats.p == 0 {
                let v = check_flower_floor_plus_one(&g)?;
                characterization("leaf_free_flower_floor_plus_one", v.rank_side, v.shape_side)
            } else {
                let v = check_pendant_floor(&g)?;
                characterization("pendant_floor", v.rank_side, v.shape_side)
            };
            Ok((g, vec![v]))
        }
    }
}

/// What the `rank` and `classify` commands print for one graph file.
#[derive(Clone, Debug, Serialize)]
pub struct RankFileReport {
    pub n: usize,
    pub m: usize,
    pub c: usize,
    pub p: usize,
    pub cycles: Vec<CycleRow>,
    pub cycles_truncated: bool,
    pub rank: usize,
    pub float_mode: bool,
    pub structural: RankResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<BoundCase>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_tight: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CycleRow {
    pub length: usize,
    pub gain: String,
    pub cycle_type: CycleType,
}

const CYCLE_CAP: usize = 4096;

pub fn rank_report(graph: &GainGraph, float_tol: Option<f64>) -> RankFileReport {
    let stats = graph.stats();
    let cycles_raw = simple_cycles(graph, CYCLE_CAP);
    let cycles: Vec<CycleRow> = cycles_raw
        .iter()
        .map(|cyc| {
            let gain = cycle_gain(graph, cyc).expect("enumerated cycle");
            CycleRow {
                length: cyc.len(),
                cycle_type: classify_cycle(cyc.len(), &gain),
                gain: gain.to_string(),
            }
        })
        .collect();
    let rank = match float_tol {
        Some(tol) => {
            crate::qmatrix::QMatrixF64::from(&graph.adjacency_matrix()).row_left_rank(tol)
        }
        None => graph.rank(),
    };
    let bound = lower_bound(graph).ok();
    RankFileReport {
        n: stats.n,
        m: stats.m,
        c: stats.c,
        p: stats.p,
        cycles_truncated: cycles_raw.len() == CYCLE_CAP,
        cycles,
        rank,
        float_mode: float_tol.is_some(),
        structural: structural_rank(graph),
        bound_tight: bound.map(|b| rank as i64 == b.bound),
        bound,
    }
}

impl std::fmt::Display for RankFileReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "n = {}, m = {}, c = {}, p = {}",
            self.n, self.m, self.c, self.p
        )?;
        if self.cycles.is_empty() {
            writeln!(f, "cycles: none")?;
        } else {
            writeln!(f, "cycles:")?;
            for row in &self.cycles {
                writeln!(
                    f,
                    "  length {:>2}  {}  gain {}",
                    row.length, row.cycle_type, row.gain
                )?;
            }
            if self.cycles_truncated {
                writeln!(f, "  (cycle list truncated)")?;
            }
        }
        let mode = if self.float_mode { " (float mode)" } else { "" };
        writeln!(f, "rank = {}{}", self.rank, mode)?;
        writeln!(f, "structural rank = {}", self.structural)?;
        match self.bound {
            Some(b) => writeln!(
                f,
                "lower bound = {} ({:?}){}",
                b.bound,
                b.case,
                if self.bound_tight == Some(true) {
                    ", tight"
                } else {
                    ""
                }
            ),
            None => writeln!(f, "lower bound: not applicable (isolated vertices)"),
        }
    }
}

/// Load a graph file and build its report.
pub fn rank_file(path: &Path, float_tol: Option<f64>) -> Result<RankFileReport, HarnessError> {
    let graph = read_graph_file(path)?;
    Ok(rank_report(&graph, float_tol))
}

/// Parse a graph from JSON text and build its report.
pub fn rank_str(src: &str, float_tol: Option<f64>) -> Result<RankFileReport, HarnessError> {
    let graph = from_json_str(src)?;
    Ok(rank_report(&graph, float_tol))
}

/// Deterministic generator seeding used by the CLI `generate` subcommand.
pub fn seeded_rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}
