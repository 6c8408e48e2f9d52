//! Rank-preserving reductions.
//!
//! * Removing a pendant vertex together with its neighbor drops the rank by
//!   exactly 2.
//! * Removing a pendant cycle (a cycle attached to the rest through a single
//!   vertex) drops the rank by an amount fixed by the cycle class, except
//!   for Type 3 cycles where only a two-sided bracket is known; the
//!   reduction then reports both operand graphs so each end of the bracket
//!   can be evaluated.
//! * A 6-vertex path whose four inner vertices have degree 2 can be replaced
//!   by a single edge carrying the path's gain product; the rank drops by
//!   exactly 4.

use std::collections::BTreeSet;

use super::{classify_cycle, cycle_gain, rank_cycle, CycleType, EngineError};
use crate::gaingraph::{GainGraph, VertexId};
use crate::quaternion::Quaternion;

/// A pendant cycle: its vertices in cycle order and, unless the cycle is a
/// whole component, the unique vertex attaching it to the rest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PendantCycle {
    pub order: Vec<VertexId>,
    pub anchor: Option<VertexId>,
    pub gain: Quaternion,
    pub cycle_type: CycleType,
}

impl PendantCycle {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// Outcome of removing a pendant cycle.
#[derive(Clone, Debug)]
pub enum PendantCycleReduction {
    /// `rank(G) = rank(rest) + increment`.
    Exact {
        rest: GainGraph,
        increment: usize,
        cycle_type: CycleType,
    },
    /// Type 3: `len - 1 + rank(without_anchor) <= rank(G) <= len + rank(with_anchor)`.
    Bracket {
        with_anchor: GainGraph,
        without_anchor: GainGraph,
        len: usize,
    },
}

/// Remove the smallest pendant vertex and its neighbor.
/// `rank(G) = rank(result) + 2`.
pub fn reduce_pendant(graph: &GainGraph) -> Result<(GainGraph, usize), EngineError> {
    let pendants = graph.pendant_structure();
    let &(leaf, neighbor) = pendants.first().ok_or(EngineError::NoPendant)?;
    let drop: BTreeSet<VertexId> = [leaf, neighbor].into_iter().collect();
    Ok((graph.delete_vertices(&drop), 2))
}

/// All pendant cycles, in deterministic order. A cycle qualifies when every
/// vertex on it has degree 2 except at most one, or when it is an entire
/// component.
pub fn find_pendant_cycles(graph: &GainGraph) -> Vec<PendantCycle> {
    let adj = graph.adjacency();
    let mut out = Vec::new();
    for block in graph.blocks() {
        if !block.is_cycle() {
            continue;
        }
        let majors: Vec<VertexId> = block
            .vertices
            .iter()
            .copied()
            .filter(|v| adj[v].len() > 2)
            .collect();
        if majors.len() > 1 {
            continue;
        }
        let anchor = majors.first().copied();
        let start = anchor.unwrap_or_else(|| *block.vertices.iter().next().unwrap());
        let order = walk_cycle_block(&block.vertices, &adj, start);
        let gain = cycle_gain(graph, &order).expect("block cycle is a cycle");
        let cycle_type = classify_cycle(order.len(), &gain);
        out.push(PendantCycle {
            order,
            anchor,
            gain,
            cycle_type,
        });
    }
    out
}

fn walk_cycle_block(
    vertices: &BTreeSet<VertexId>,
    adj: &std::collections::BTreeMap<VertexId, Vec<VertexId>>,
    start: VertexId,
) -> Vec<VertexId> {
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = adj[&start]
        .iter()
        .copied()
        .find(|w| vertices.contains(w))
        .expect("cycle block vertex has in-block neighbors");
    while cur != start {
        order.push(cur);
        let next = adj[&cur]
            .iter()
            .copied()
            .find(|&w| w != prev && vertices.contains(&w))
            .expect("cycle block vertex has two in-block neighbors");
        prev = cur;
        cur = next;
    }
    order
}

/// Remove a pendant cycle per its class; see [`PendantCycleReduction`].
pub fn reduce_pendant_cycle(
    graph: &GainGraph,
    cycle: &[VertexId],
) -> Result<PendantCycleReduction, EngineError> {
    let gain = cycle_gain(graph, cycle)?;
    let n = cycle.len();
    let cycle_type = classify_cycle(n, &gain);
    let majors: Vec<VertexId> = cycle
        .iter()
        .copied()
        .filter(|&v| graph.degree(v) > 2)
        .collect();
    if majors.len() > 1 {
        return Err(EngineError::NotAPendantCycle(format!(
            "{} vertices of degree > 2 on the cycle",
            majors.len()
        )));
    }
    let cycle_set: BTreeSet<VertexId> = cycle.iter().copied().collect();
    if majors.is_empty() {
        // Whole-component cycle: the closed form applies directly.
        return Ok(PendantCycleReduction::Exact {
            rest: graph.delete_vertices(&cycle_set),
            increment: rank_cycle(n, cycle_type),
            cycle_type,
        });
    }
    let anchor = majors[0];
    let mut interior = cycle_set.clone();
    interior.remove(&anchor);
    let with_anchor = graph.delete_vertices(&interior);
    match cycle_type {
        CycleType::Type1 => Ok(PendantCycleReduction::Exact {
            rest: with_anchor,
            increment: n - 2,
            cycle_type,
        }),
        CycleType::Type2 => Ok(PendantCycleReduction::Exact {
            rest: graph.delete_vertices(&cycle_set),
            increment: n,
            cycle_type,
        }),
        CycleType::Type4 => Ok(PendantCycleReduction::Exact {
            rest: with_anchor,
            increment: n - 1,
            cycle_type,
        }),
        CycleType::Type3 => Ok(PendantCycleReduction::Bracket {
            without_anchor: graph.delete_vertices(&cycle_set),
            with_anchor,
            len: n,
        }),
    }
}

/// Replace a 6-vertex path whose inner vertices have degree 2 by a single
/// edge from its first to its last vertex, carrying the ordered product of
/// the five gains. `rank(G) = rank(result) + 4`.
pub fn contract_path6(
    graph: &GainGraph,
    path: &[VertexId],
) -> Result<(GainGraph, usize), EngineError> {
    if path.len() != 6 {
        return Err(EngineError::BadPath(format!(
            "expected 6 vertices, got {}",
            path.len()
        )));
    }
    let distinct: BTreeSet<VertexId> = path.iter().copied().collect();
    if distinct.len() != 6 {
        return Err(EngineError::BadPath("repeated vertex".into()));
    }
    let mut product = Quaternion::one();
    for pair in path.windows(2) {
        let gain = graph
            .gain(pair[0], pair[1])
            .ok_or_else(|| EngineError::BadPath(format!("edge {}-{} missing", pair[0], pair[1])))?;
        product = &product * &gain;
    }
    for &inner in &path[1..5] {
        if graph.degree(inner) != 2 {
            return Err(EngineError::BadPath(format!(
                "inner vertex {inner} has degree {}",
                graph.degree(inner)
            )));
        }
    }
    let (first, last) = (path[0], path[5]);
    if graph.has_edge(first, last) {
        return Err(EngineError::BadPath(format!(
            "contraction would duplicate edge {first}-{last}"
        )));
    }
    let inner: BTreeSet<VertexId> = path[1..5].iter().copied().collect();
    let mut contracted = graph.delete_vertices(&inner);
    contracted
        .add_edge(first, last, product)
        .expect("endpoints survive and the edge is fresh");
    Ok((contracted, 4))
}

/// Find a path qualifying for [`contract_path6`], if any, in deterministic
/// order.
pub fn find_contractible_path6(graph: &GainGraph) -> Option<Vec<VertexId>> {
    let adj = graph.adjacency();
    for (&start, neighbors) in &adj {
        for &second in neighbors {
            if adj[&second].len() != 2 {
                continue;
            }
            // Walk through degree-2 vertices: start, then four inner, then
            // whatever comes next.
            let mut path = vec![start, second];
            loop {
                let last = *path.last().unwrap();
                let prev = path[path.len() - 2];
                let Some(&next) = adj[&last].iter().find(|&&w| w != prev) else {
                    break;
                };
                if path.contains(&next) {
                    break;
                }
                path.push(next);
                if path.len() == 6 {
                    break;
                }
                if adj[&next].len() != 2 {
                    break;
                }
            }
            if path.len() == 6
                && path[1..5].iter().all(|v| adj[v].len() == 2)
                && !graph.has_edge(path[0], path[5])
            {
                return Some(path);
            }
        }
    }
    None
}
