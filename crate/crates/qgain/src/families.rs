//! Constructors for the named graph families and the extremal
//! configurations, plus the matching-number oracle for forests.
//!
//! Gain placement works in switch-canonical form: edges of a spanning tree
//! get gain 1 and each independent cycle's full gain sits on one designated
//! back edge. Switching invariance of the rank makes this lossless, and it
//! lets cycle classes be dialed in directly.

pub mod checks;

pub use checks::{
    check_bicyclic_floor_plus_one, check_flower_floor_plus_one, check_leaf_free_floor,
    check_pendant_floor, check_tree_pendant_floor, recognize_bicyclic, recognize_flower,
    BicyclicShape, FlowerShape, TreeVerdict, Verdict,
};

use num_traits::Zero;
use rand::Rng;
use thiserror::Error;

use crate::engine::CycleType;
use crate::gaingraph::{random_gain, GainGraph, GainMode, GraphError, VertexId};
use crate::quaternion::Quaternion;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamiliesError {
    #[error("graph is not a forest")]
    NotAForest,
    #[error("graph is not a tree")]
    NotATree,
    #[error("bad family parameters: {0}")]
    BadSpec(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Maximum matching size of a forest, by stripping leaves greedily; exact
/// on forests.
pub fn matching_number(forest: &GainGraph) -> Result<usize, FamiliesError> {
    if !forest.is_forest() {
        return Err(FamiliesError::NotAForest);
    }
    let mut adj: std::collections::BTreeMap<VertexId, std::collections::BTreeSet<VertexId>> =
        forest
            .adjacency()
            .into_iter()
            .map(|(v, nb)| (v, nb.into_iter().collect()))
            .collect();
    let mut matched = 0;
    loop {
        let Some((&leaf, _)) = adj.iter().find(|(_, nb)| nb.len() == 1) else {
            break;
        };
        let neighbor = *adj[&leaf].iter().next().unwrap();
        matched += 1;
        for endpoint in [leaf, neighbor] {
            let nbs: Vec<VertexId> = adj[&endpoint].iter().copied().collect();
            for w in nbs {
                adj.get_mut(&w).unwrap().remove(&endpoint);
            }
            adj.remove(&endpoint);
        }
    }
    Ok(matched)
}

/// True iff the vertex is contained in every maximum matching, detected by
/// the matching-number drop upon deletion.
pub fn is_covered_vertex(forest: &GainGraph, v: VertexId) -> Result<bool, FamiliesError> {
    if !forest.has_vertex(v) {
        return Err(FamiliesError::Graph(GraphError::UnknownVertex(v)));
    }
    let full = matching_number(forest)?;
    let without = matching_number(&forest.delete_vertex(v)?)?;
    Ok(without < full)
}

/// Cycle on `1..=n` with gain 1 everywhere except the closing edge `n -> 1`,
/// which carries `target`; the cycle gain read from vertex 1 is exactly
/// `target`.
pub fn cycle_with_gain(n: usize, target: &Quaternion) -> Result<GainGraph, FamiliesError> {
    if n < 3 {
        return Err(FamiliesError::BadSpec(format!("cycle length {n} < 3")));
    }
    if !target.is_unit() {
        return Err(FamiliesError::BadSpec("cycle gain must be a unit".into()));
    }
    let mut g = GainGraph::new();
    for v in 1..n as u32 {
        g.add_edge(v, v + 1, Quaternion::one())?;
    }
    g.add_edge(n as u32, 1u32, target.clone())?;
    Ok(g)
}

/// The class-defining cycle gain target for a given length, freshly
/// sampled where the class leaves freedom.
pub fn target_gain_for_type<R: Rng + ?Sized>(
    n: usize,
    t: CycleType,
    rng: &mut R,
    mode: GainMode,
) -> Result<Quaternion, FamiliesError> {
    let even_target = |n: usize| -> Quaternion {
        if (n / 2) % 2 == 0 {
            Quaternion::one()
        } else {
            -&Quaternion::one()
        }
    };
    match t {
        CycleType::Type1 => {
            if n % 2 != 0 {
                return Err(FamiliesError::BadSpec(format!(
                    "Type 1 needs an even cycle, got length {n}"
                )));
            }
            Ok(even_target(n))
        }
        CycleType::Type2 => {
            if n % 2 != 0 {
                return Err(FamiliesError::BadSpec(format!(
                    "Type 2 needs an even cycle, got length {n}"
                )));
            }
            let forbidden = even_target(n);
            loop {
                let candidate = random_gain(rng, mode);
                if candidate != forbidden {
                    return Ok(candidate);
                }
            }
        }
        CycleType::Type3 => {
            if n % 2 != 1 {
                return Err(FamiliesError::BadSpec(format!(
                    "Type 3 needs an odd cycle, got length {n}"
                )));
            }
            loop {
                let candidate = random_gain(rng, mode);
                if !candidate.re().is_zero() {
                    return Ok(candidate);
                }
            }
        }
        CycleType::Type4 => {
            if n % 2 != 1 {
                return Err(FamiliesError::BadSpec(format!(
                    "Type 4 needs an odd cycle, got length {n}"
                )));
            }
            // Conjugates of basis imaginaries stay pure, unit and exact.
            let axis = match rng.gen_range(0..3) {
                0 => Quaternion::i(),
                1 => Quaternion::j(),
                _ => Quaternion::k(),
            };
            let w = random_gain(rng, mode);
            Ok(&(&w * &axis) * &w.conj())
        }
    }
}

/// Cycle of the requested class with random gains along the first `n - 1`
/// edges; the closing edge is chosen to force the class exactly.
pub fn make_cycle_of_type<R: Rng + ?Sized>(
    n: usize,
    t: CycleType,
    rng: &mut R,
    mode: GainMode,
) -> Result<GainGraph, FamiliesError> {
    let target = target_gain_for_type(n, t, rng, mode)?;
    let mut g = GainGraph::new();
    let mut prefix = Quaternion::one();
    for v in 1..n as u32 {
        let gain = random_gain(rng, mode);
        prefix = &prefix * &gain;
        g.add_edge(v, v + 1, gain)?;
    }
    let closing = &prefix.inverse().expect("unit product is invertible") * &target;
    g.add_edge(n as u32, 1u32, closing)?;
    Ok(g)
}

/// Even cycle forced into the minimum-rank class, gains random except the
/// closing edge.
pub fn make_type1_cycle<R: Rng + ?Sized>(
    n: usize,
    rng: &mut R,
    mode: GainMode,
) -> Result<GainGraph, FamiliesError> {
    if n % 2 != 0 || n < 4 {
        return Err(FamiliesError::BadSpec(format!(
            "need an even length >= 4, got {n}"
        )));
    }
    make_cycle_of_type(n, CycleType::Type1, rng, mode)
}

/// Two cycles of lengths `p` and `q` joined by a path on `l` vertices
/// (sharing a single vertex when `l = 1`). Tree edges carry gain 1; each
/// cycle's gain sits on its closing edge.
#[derive(Clone, Debug)]
pub struct InfinitySpec {
    pub p: usize,
    pub l: usize,
    pub q: usize,
    pub gain_p: Quaternion,
    pub gain_q: Quaternion,
}

impl InfinitySpec {
    pub fn new(p: usize, l: usize, q: usize, gain_p: Quaternion, gain_q: Quaternion) -> Self {
        InfinitySpec { p, l, q, gain_p, gain_q }
    }

    /// Both cycles in the minimum-rank class; requires even `p` and `q`.
    pub fn all_type1(p: usize, l: usize, q: usize) -> Result<Self, FamiliesError> {
        if p % 2 != 0 || q % 2 != 0 {
            return Err(FamiliesError::BadSpec(
                "Type 1 cycles must have even length".into(),
            ));
        }
        let sign = |len: usize| {
            if (len / 2) % 2 == 0 {
                Quaternion::one()
            } else {
                -&Quaternion::one()
            }
        };
        Ok(InfinitySpec::new(p, l, q, sign(p), sign(q)))
    }

    fn validate(&self) -> Result<(), FamiliesError> {
        if self.p < 3 || self.q < 3 {
            return Err(FamiliesError::BadSpec("cycle lengths must be >= 3".into()));
        }
        if self.l < 1 {
            return Err(FamiliesError::BadSpec("path needs at least one vertex".into()));
        }
        if !self.gain_p.is_unit() || !self.gain_q.is_unit() {
            return Err(FamiliesError::BadSpec("cycle gains must be units".into()));
        }
        Ok(())
    }
}

pub fn make_infinity(spec: &InfinitySpec) -> Result<GainGraph, FamiliesError> {
    spec.validate()?;
    let (p, l, q) = (spec.p as u32, spec.l as u32, spec.q as u32);
    let mut g = GainGraph::new();
    // First cycle on 1..=p, closing edge carries its gain.
    for v in 1..p {
        g.add_edge(v, v + 1, Quaternion::one())?;
    }
    g.add_edge(p, 1u32, spec.gain_p.clone())?;
    // Path from vertex 1; when l = 1 the second cycle shares vertex 1.
    let hub = if l == 1 {
        1
    } else {
        let mut prev = 1u32;
        for step in 1..l {
            let fresh = p + step;
            g.add_edge(prev, fresh, Quaternion::one())?;
            prev = fresh;
        }
        prev
    };
    // Second cycle: hub plus q - 1 fresh vertices.
    let base = p + l.saturating_sub(1);
    let mut prev = hub;
    for step in 1..q {
        let fresh = base + step;
        g.add_edge(prev, fresh, Quaternion::one())?;
        prev = fresh;
    }
    g.add_edge(prev, hub, spec.gain_q.clone())?;
    Ok(g)
}

/// Two hub vertices joined by three internally disjoint paths with `p`, `l`
/// and `q` internal vertices. At most one of the three may be 0. Tree edges
/// carry gain 1; the cycles through arms (1,2) and (2,3) close with the two
/// stated gains, which fixes the third cycle's gain too.
#[derive(Clone, Debug)]
pub struct ThetaSpec {
    pub p: usize,
    pub l: usize,
    pub q: usize,
    pub gain_pl: Quaternion,
    pub gain_lq: Quaternion,
}

impl ThetaSpec {
    pub fn new(p: usize, l: usize, q: usize, gain_pl: Quaternion, gain_lq: Quaternion) -> Self {
        ThetaSpec { p, l, q, gain_pl, gain_lq }
    }

    /// The two designated cycles in the minimum-rank class. When `p`, `l`,
    /// `q` are all odd this forces the third cycle into the same class.
    pub fn all_type1(p: usize, l: usize, q: usize) -> Result<Self, FamiliesError> {
        if (p + l) % 2 != 0 || (l + q) % 2 != 0 {
            return Err(FamiliesError::BadSpec(
                "cycle lengths p+l+2 and l+q+2 must be even".into(),
            ));
        }
        let sign = |len: usize| {
            if (len / 2) % 2 == 0 {
                Quaternion::one()
            } else {
                -&Quaternion::one()
            }
        };
        Ok(ThetaSpec::new(p, l, q, sign(p + l + 2), sign(l + q + 2)))
    }

    fn validate(&self) -> Result<(), FamiliesError> {
        let zeroes = [self.p, self.l, self.q].iter().filter(|&&x| x == 0).count();
        if zeroes > 1 {
            return Err(FamiliesError::BadSpec(
                "at most one arm may have no internal vertices".into(),
            ));
        }
        if !self.gain_pl.is_unit() || !self.gain_lq.is_unit() {
            return Err(FamiliesError::BadSpec("cycle gains must be units".into()));
        }
        Ok(())
    }
}

pub fn make_theta(spec: &ThetaSpec) -> Result<GainGraph, FamiliesError> {
    spec.validate()?;
    let (x, y) = (1u32, 2u32);
    let mut g = GainGraph::new();
    let mut next = 3u32;
    let mut build_arm = |g: &mut GainGraph,
                         internals: usize,
                         closing: &Quaternion|
     -> Result<(), FamiliesError> {
        let mut prev = x;
        for _ in 0..internals {
            g.add_edge(prev, next, Quaternion::one())?;
            prev = next;
            next += 1;
        }
        g.add_edge(prev, y, closing.clone())?;
        Ok(())
    };
    build_arm(&mut g, spec.p, &spec.gain_pl)?;
    build_arm(&mut g, spec.l, &Quaternion::one())?;
    build_arm(&mut g, spec.q, &spec.gain_lq.conj())?;
    Ok(g)
}

/// One pendant cycle to hang on a tree vertex: the attachment vertex plus
/// fresh cycle vertices, with the given per-edge gains in cycle order.
#[derive(Clone, Debug)]
pub struct CycleAttachment {
    pub at: VertexId,
    pub gains: Vec<Quaternion>,
}

impl CycleAttachment {
    pub fn new(at: impl Into<VertexId>, gains: Vec<Quaternion>) -> Self {
        CycleAttachment { at: at.into(), gains }
    }

    /// Minimum-rank-class cycle of the given even length: all gains 1
    /// except the closing edge.
    pub fn type1(at: impl Into<VertexId>, len: usize) -> Self {
        let mut gains = vec![Quaternion::one(); len];
        gains[len - 1] = if (len / 2) % 2 == 0 {
            Quaternion::one()
        } else {
            -&Quaternion::one()
        };
        CycleAttachment { at: at.into(), gains }
    }

    pub fn len(&self) -> usize {
        self.gains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gains.is_empty()
    }
}

/// A tree with cycles glued at chosen vertices (each attachment vertex
/// becomes the unique vertex its cycle shares with the tree).
#[derive(Clone, Debug)]
pub struct FlowerSpec {
    pub tree: GainGraph,
    pub attachments: Vec<CycleAttachment>,
}

pub fn make_flower(spec: &FlowerSpec) -> Result<GainGraph, FamiliesError> {
    if !spec.tree.is_connected() || !spec.tree.is_forest() || spec.tree.n() == 0 {
        return Err(FamiliesError::NotATree);
    }
    let mut seen = std::collections::BTreeSet::new();
    for att in &spec.attachments {
        if !spec.tree.has_vertex(att.at) {
            return Err(FamiliesError::Graph(GraphError::UnknownVertex(att.at)));
        }
        if !seen.insert(att.at) {
            return Err(FamiliesError::BadSpec(format!(
                "two cycles attached at {}",
                att.at
            )));
        }
        if att.len() < 3 {
            return Err(FamiliesError::BadSpec("attached cycles need length >= 3".into()));
        }
    }
    let mut g = spec.tree.clone();
    let mut next = g.vertices().map(|v| v.0).max().unwrap_or(0) + 1;
    for att in &spec.attachments {
        let m = att.len();
        let mut ring = vec![att.at];
        for _ in 1..m {
            ring.push(VertexId(next));
            next += 1;
        }
        for idx in 0..m {
            g.add_edge(ring[idx], ring[(idx + 1) % m], att.gains[idx].clone())?;
        }
    }
    Ok(g)
}

/// Spider tree: one center with disjoint legs of the given edge lengths,
/// all odd, at least three legs. Generates candidates for trees whose rank
/// meets the pendant-vertex bound; the property is verified by computation,
/// never assumed.
pub fn make_spider_tree(leg_lengths: &[usize]) -> Result<GainGraph, FamiliesError> {
    if leg_lengths.len() < 3 {
        return Err(FamiliesError::BadSpec("a spider needs at least 3 legs".into()));
    }
    if let Some(&bad) = leg_lengths.iter().find(|&&len| len == 0 || len % 2 == 0) {
        return Err(FamiliesError::BadSpec(format!(
            "leg lengths must be odd and positive, got {bad}"
        )));
    }
    let mut g = GainGraph::new();
    g.add_vertex(1u32);
    let mut next = 2u32;
    for &len in leg_lengths {
        let mut prev = 1u32;
        for _ in 0..len {
            g.add_edge(prev, next, Quaternion::one())?;
            prev = next;
            next += 1;
        }
    }
    Ok(g)
}
