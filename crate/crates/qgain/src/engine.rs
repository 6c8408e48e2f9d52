//! Structural rank computation.
//!
//! Closed forms fix the rank of gain paths, cycles and trees outright; a
//! small set of rank-preserving reductions (pendant vertex removal, pendant
//! cycle removal, contraction of long degree-2 paths) shrinks everything
//! else. One pendant-cycle class only brackets the rank inside an interval,
//! so [`structural_rank`] returns a [`RankResult`] that is either exact or a
//! sound enclosing interval; elimination on the adjacency matrix remains the
//! ground truth it is checked against.
//!
//! The rank of a cycle is decided entirely by its length parity and the
//! ordered product of its gains:
//!
//! | class  | length | condition on the cycle gain `g`        | rank    |
//! |--------|--------|----------------------------------------|---------|
//! | Type 1 | even   | `g = (-1)^{n/2}`                       | `n - 2` |
//! | Type 2 | even   | `g != (-1)^{n/2}`                      | `n`     |
//! | Type 3 | odd    | `Re((-1)^{(n-1)/2} g) != 0`            | `n`     |
//! | Type 4 | odd    | `Re((-1)^{(n-1)/2} g) = 0`             | `n - 1` |

mod bounds;
mod reduce;
mod structural;

pub use bounds::{
    bridge_bound_check, coalescence_bound_check, lower_bound, BoundCase, BridgeCheck,
    CoalescenceCheck, LowerBoundCase,
};
pub use reduce::{
    contract_path6, find_contractible_path6, find_pendant_cycles, reduce_pendant,
    reduce_pendant_cycle, PendantCycle, PendantCycleReduction,
};
pub use structural::structural_rank;

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gaingraph::{GainGraph, GraphError, VertexId};
use crate::quaternion::Quaternion;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("vertex sequence is not a cycle: {0}")]
    NotACycle(String),
    #[error("graph has no pendant vertex")]
    NoPendant,
    #[error("not a pendant cycle: {0}")]
    NotAPendantCycle(String),
    #[error("path does not qualify for contraction: {0}")]
    BadPath(String),
    #[error("some component is a single vertex")]
    IsolatedVertexComponent,
    #[error("invalid composition: {0}")]
    BadComposition(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The four rank classes of a gain cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CycleType {
    Type1,
    Type2,
    Type3,
    Type4,
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycleType::Type1 => write!(f, "Type 1"),
            CycleType::Type2 => write!(f, "Type 2"),
            CycleType::Type3 => write!(f, "Type 3"),
            CycleType::Type4 => write!(f, "Type 4"),
        }
    }
}

/// An exact rank, or a closed interval known to contain it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RankResult {
    Exact { value: usize },
    Interval { lo: usize, hi: usize },
}

impl RankResult {
    pub fn exact(value: usize) -> Self {
        RankResult::Exact { value }
    }

    /// Collapses to `Exact` when the bounds meet. Panics if `lo > hi`, which
    /// would mean an unsound derivation.
    pub fn from_bounds(lo: usize, hi: usize) -> Self {
        assert!(lo <= hi, "unsound rank interval [{lo}, {hi}]");
        if lo == hi {
            RankResult::Exact { value: lo }
        } else {
            RankResult::Interval { lo, hi }
        }
    }

    pub fn lo(&self) -> usize {
        match *self {
            RankResult::Exact { value } => value,
            RankResult::Interval { lo, .. } => lo,
        }
    }

    pub fn hi(&self) -> usize {
        match *self {
            RankResult::Exact { value } => value,
            RankResult::Interval { hi, .. } => hi,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, RankResult::Exact { .. })
    }

    pub fn contains(&self, rank: usize) -> bool {
        self.lo() <= rank && rank <= self.hi()
    }
}

impl fmt::Display for RankResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RankResult::Exact { value } => write!(f, "{value}"),
            RankResult::Interval { lo, hi } => write!(f, "[{lo}, {hi}]"),
        }
    }
}

/// Ordered product of oriented gains around a cycle, starting at the first
/// vertex of the sequence: `gain(v1,v2)·gain(v2,v3)···gain(vn,v1)`.
pub fn cycle_gain(graph: &GainGraph, cycle: &[VertexId]) -> Result<Quaternion, EngineError> {
    validate_cycle(graph, cycle)?;
    let mut product = Quaternion::one();
    for idx in 0..cycle.len() {
        let (u, v) = (cycle[idx], cycle[(idx + 1) % cycle.len()]);
        let gain = graph
            .gain(u, v)
            .expect("validated cycle edges are present");
        product = &product * &gain;
    }
    Ok(product)
}

fn validate_cycle(graph: &GainGraph, cycle: &[VertexId]) -> Result<(), EngineError> {
    if cycle.len() < 3 {
        return Err(EngineError::NotACycle(format!(
            "length {} < 3",
            cycle.len()
        )));
    }
    let distinct: std::collections::BTreeSet<_> = cycle.iter().collect();
    if distinct.len() != cycle.len() {
        return Err(EngineError::NotACycle("repeated vertex".into()));
    }
    for idx in 0..cycle.len() {
        let (u, v) = (cycle[idx], cycle[(idx + 1) % cycle.len()]);
        if !graph.has_vertex(u) {
            return Err(EngineError::NotACycle(format!("vertex {u} missing")));
        }
        if !graph.has_edge(u, v) {
            return Err(EngineError::NotACycle(format!("edge {u}-{v} missing")));
        }
    }
    Ok(())
}

/// Every simple cycle, as a vertex sequence starting at its smallest
/// vertex, in deterministic order; stops after `cap` cycles. Intended for
/// desk-scale graphs where the cycle count is small.
pub fn simple_cycles(graph: &GainGraph, cap: usize) -> Vec<Vec<VertexId>> {
    let adj = graph.adjacency();
    let mut out: Vec<Vec<VertexId>> = Vec::new();
    let vertices = graph.vertex_vec();
    for &start in &vertices {
        if out.len() >= cap {
            break;
        }
        // Paths from `start` through vertices larger than it; a cycle is
        // recorded once by requiring the second vertex to be smaller than
        // the last (fixing the direction).
        let mut path = vec![start];
        let mut iters: Vec<usize> = vec![0];
        while !path.is_empty() {
            if out.len() >= cap {
                break;
            }
            let cur = *path.last().unwrap();
            let idx = *iters.last().unwrap();
            if idx >= adj[&cur].len() {
                path.pop();
                iters.pop();
                if let Some(top) = iters.last_mut() {
                    *top += 1;
                }
                continue;
            }
            let next = adj[&cur][idx];
            if next == start && path.len() >= 3 && path[1] < cur {
                out.push(path.clone());
            }
            if next > start && !path.contains(&next) {
                path.push(next);
                iters.push(0);
            } else {
                *iters.last_mut().unwrap() += 1;
            }
        }
    }
    out
}

/// Classify a cycle of length `n` with the given cycle gain.
pub fn classify_cycle(n: usize, gain: &Quaternion) -> CycleType {
    assert!(n >= 3, "cycles have at least 3 vertices");
    debug_assert!(gain.is_unit(), "cycle gains are unit quaternions");
    if n % 2 == 0 {
        let target = if (n / 2) % 2 == 0 {
            Quaternion::one()
        } else {
            -&Quaternion::one()
        };
        if *gain == target {
            CycleType::Type1
        } else {
            CycleType::Type2
        }
    } else {
        let signed = if ((n - 1) / 2) % 2 == 0 {
            gain.clone()
        } else {
            -gain
        };
        if signed.re().is_zero() {
            CycleType::Type4
        } else {
            CycleType::Type3
        }
    }
}

/// Rank of a gain path on `n` vertices: `n - 1` when odd, `n` when even.
/// Gains never matter on paths.
pub fn rank_path(n: usize) -> usize {
    assert!(n >= 1, "paths have at least one vertex");
    if n % 2 == 1 {
        n - 1
    } else {
        n
    }
}

/// Rank of a gain cycle of length `n` in the given class.
pub fn rank_cycle(n: usize, t: CycleType) -> usize {
    assert!(n >= 3, "cycles have at least 3 vertices");
    match t {
        CycleType::Type1 => n - 2,
        CycleType::Type2 | CycleType::Type3 => n,
        CycleType::Type4 => n - 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn graph_cycle(gains: &[Quaternion]) -> (GainGraph, Vec<VertexId>) {
        let n = gains.len() as u32;
        let mut g = GainGraph::new();
        for idx in 0..n {
            let (u, v) = (idx + 1, (idx + 1) % n + 1);
            g.add_edge(u, v, gains[idx as usize].clone()).unwrap();
        }
        (g, (1..=n).map(VertexId).collect())
    }

    #[test]
    fn cycle_gain_examples() {
        // i · j · (-i) · j = 1
        let (g, order) = graph_cycle(&[
            Quaternion::i(),
            Quaternion::j(),
            -&Quaternion::i(),
            Quaternion::j(),
        ]);
        assert_eq!(cycle_gain(&g, &order).unwrap(), Quaternion::one());

        let (g, order) =
            graph_cycle(&[Quaternion::one(), Quaternion::one(), Quaternion::one()]);
        assert_eq!(cycle_gain(&g, &order).unwrap(), Quaternion::one());

        // (-i) · j · k · i · j · k = -1
        let (g, order) = graph_cycle(&[
            -&Quaternion::i(),
            Quaternion::j(),
            Quaternion::k(),
            Quaternion::i(),
            Quaternion::j(),
            Quaternion::k(),
        ]);
        assert_eq!(cycle_gain(&g, &order).unwrap(), -&Quaternion::one());
    }

    #[test]
    fn cycle_gain_rejects_non_cycles() {
        let (g, mut order) = graph_cycle(&vec![Quaternion::one(); 4]);
        order.swap(1, 2); // breaks adjacency of consecutive entries
        assert!(matches!(
            cycle_gain(&g, &order),
            Err(EngineError::NotACycle(_))
        ));
        assert!(matches!(
            cycle_gain(&g, &order[..2]),
            Err(EngineError::NotACycle(_))
        ));
    }

    #[test]
    fn classification_matches_definition() {
        assert_eq!(classify_cycle(4, &Quaternion::one()), CycleType::Type1);
        assert_eq!(classify_cycle(4, &Quaternion::i()), CycleType::Type2);
        assert_eq!(classify_cycle(6, &(-&Quaternion::one())), CycleType::Type1);
        assert_eq!(classify_cycle(6, &Quaternion::one()), CycleType::Type2);
        assert_eq!(classify_cycle(3, &Quaternion::one()), CycleType::Type3);
        assert_eq!(classify_cycle(3, &Quaternion::i()), CycleType::Type4);
        assert_eq!(classify_cycle(5, &Quaternion::one()), CycleType::Type3);
        assert_eq!(classify_cycle(5, &Quaternion::k()), CycleType::Type4);
    }

    #[test]
    fn classification_invariant_under_rotation_and_reversal() {
        let mut rng = StdRng::seed_from_u64(99);
        for n in 3..=8usize {
            let gains: Vec<Quaternion> =
                (0..n).map(|_| Quaternion::random_unit(&mut rng, 5)).collect();
            let (g, order) = graph_cycle(&gains);
            let base = classify_cycle(n, &cycle_gain(&g, &order).unwrap());
            for rot in 0..n {
                let mut rotated: Vec<VertexId> = order[rot..].to_vec();
                rotated.extend_from_slice(&order[..rot]);
                assert_eq!(
                    classify_cycle(n, &cycle_gain(&g, &rotated).unwrap()),
                    base,
                    "rotation changed the class"
                );
                let mut reversed = rotated.clone();
                reversed.reverse();
                assert_eq!(
                    classify_cycle(n, &cycle_gain(&g, &reversed).unwrap()),
                    base,
                    "reversal changed the class"
                );
            }
        }
    }

    #[test]
    fn path_closed_form() {
        assert_eq!(rank_path(1), 0);
        assert_eq!(rank_path(2), 2);
        assert_eq!(rank_path(7), 6);
        assert_eq!(rank_path(8), 8);
    }

    #[test]
    fn cycle_closed_form() {
        assert_eq!(rank_cycle(4, CycleType::Type1), 2);
        assert_eq!(rank_cycle(5, CycleType::Type3), 5);
        assert_eq!(rank_cycle(6, CycleType::Type2), 6);
        assert_eq!(rank_cycle(5, CycleType::Type4), 4);
    }

    #[test]
    fn rank_result_helpers() {
        let e = RankResult::exact(4);
        assert!(e.is_exact() && e.contains(4) && !e.contains(5));
        let i = RankResult::from_bounds(2, 4);
        assert!(!i.is_exact() && i.contains(3) && !i.contains(5));
        assert_eq!(RankResult::from_bounds(3, 3), RankResult::exact(3));
        assert_eq!(i.to_string(), "[2, 4]");
    }

    #[test]
    #[should_panic(expected = "unsound")]
    fn inverted_interval_panics() {
        let _ = RankResult::from_bounds(5, 2);
    }
}
