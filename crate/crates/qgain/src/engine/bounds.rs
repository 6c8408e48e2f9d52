//! Combinatorial lower bounds and composition inequalities.
//!
//! For a gain graph of order `n` whose components all have at least two
//! vertices, with cyclomatic number `c` and `p` pendant vertices, the rank
//! is at least
//!
//! * `n - 2c - p + 1` when `p >= 1`,
//! * `n - 2c` when `p = 0` and no two cycles share a vertex,
//! * `n - 2c + 1` when `p = 0` and some cycles share a vertex.
//!
//! Cycle sharing is decided on the block decomposition: either some block
//! carries two independent cycles, or some vertex lies on two distinct
//! cycle blocks.
//!
//! Two further inequalities concern compositions and are verified, never
//! exploited: identifying a vertex `v` of `H` with a vertex `u` of `K` gives
//! `rank(G) >= rank(K) + rank(H - v) - 1`, and joining `H` and `K` by a path
//! on `t >= 2` vertices gives `rank(G) >= rank(H) + rank(K) + t - 3`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::EngineError;
use crate::gaingraph::{GainGraph, VertexId};
use crate::quaternion::Quaternion;

/// Which case of the lower bound applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LowerBoundCase {
    HasPendant,
    LeafFreeCycleDisjoint,
    LeafFreeSharedCycles,
}

/// A classified lower bound; `bound` may be non-positive, in which case it
/// is vacuous.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCase {
    pub case: LowerBoundCase,
    pub bound: i64,
}

/// Classify the graph into the three bound cases and return the bound.
/// Errors when some component is a single vertex.
pub fn lower_bound(graph: &GainGraph) -> Result<BoundCase, EngineError> {
    if graph
        .component_vertex_sets()
        .iter()
        .any(|comp| comp.len() < 2)
    {
        return Err(EngineError::IsolatedVertexComponent);
    }
    let stats = graph.stats();
    let n = stats.n as i64;
    let c = stats.c as i64;
    let p = stats.p as i64;
    if stats.p >= 1 {
        return Ok(BoundCase {
            case: LowerBoundCase::HasPendant,
            bound: n - 2 * c - p + 1,
        });
    }
    if cycles_share_a_vertex(graph) {
        Ok(BoundCase {
            case: LowerBoundCase::LeafFreeSharedCycles,
            bound: n - 2 * c + 1,
        })
    } else {
        Ok(BoundCase {
            case: LowerBoundCase::LeafFreeCycleDisjoint,
            bound: n - 2 * c,
        })
    }
}

/// True iff two distinct cycles have a common vertex: some block has two
/// independent cycles, or some vertex lies on two cycle blocks.
fn cycles_share_a_vertex(graph: &GainGraph) -> bool {
    let mut cycle_block_hits: BTreeMap<VertexId, usize> = BTreeMap::new();
    for block in graph.blocks() {
        let cyclomatic = block.cyclomatic();
        if cyclomatic >= 2 {
            return true;
        }
        if cyclomatic == 1 {
            for &v in &block.vertices {
                let hits = cycle_block_hits.entry(v).or_insert(0);
                *hits += 1;
                if *hits >= 2 {
                    return true;
                }
            }
        }
    }
    false
}

/// Result of checking the one-point composition inequality
/// `rank(G) >= rank(K) + rank(H - v) - 1`.
#[derive(Clone, Debug)]
pub struct CoalescenceCheck {
    pub composite: GainGraph,
    pub rank_composite: usize,
    pub rank_k: usize,
    pub rank_h_minus_v: usize,
    pub bound: i64,
    pub holds: bool,
}

/// Build the graph obtained by identifying vertex `v` of `h` with vertex `u`
/// of `k`, compute all ranks by elimination, and report whether the
/// inequality holds.
pub fn coalescence_bound_check(
    h: &GainGraph,
    v: VertexId,
    k: &GainGraph,
    u: VertexId,
) -> Result<CoalescenceCheck, EngineError> {
    if !h.has_vertex(v) {
        return Err(EngineError::BadComposition(format!("{v} not in first graph")));
    }
    if !k.has_vertex(u) {
        return Err(EngineError::BadComposition(format!("{u} not in second graph")));
    }
    let (composite, _) = glue(h, k, &[(u, v)])?;
    let rank_composite = composite.rank();
    let rank_k = k.rank();
    let rank_h_minus_v = h.delete_vertex(v)?.rank();
    let bound = rank_k as i64 + rank_h_minus_v as i64 - 1;
    Ok(CoalescenceCheck {
        composite,
        rank_composite,
        rank_k,
        rank_h_minus_v,
        bound,
        holds: rank_composite as i64 >= bound,
    })
}

/// Result of checking the path-join inequality
/// `rank(G) >= rank(H) + rank(K) + t - 3`.
#[derive(Clone, Debug)]
pub struct BridgeCheck {
    pub composite: GainGraph,
    pub rank_composite: usize,
    pub rank_h: usize,
    pub rank_k: usize,
    pub t: usize,
    pub bound: i64,
    pub holds: bool,
}

/// Join vertex `v1` of `h` to vertex `vt` of `k` with a fresh path on `t`
/// vertices (so `t - 2` new internal vertices and `t - 1` new edges, with
/// the given gains in path order), compute ranks by elimination, and report
/// whether the inequality holds.
pub fn bridge_bound_check(
    h: &GainGraph,
    v1: VertexId,
    k: &GainGraph,
    vt: VertexId,
    t: usize,
    path_gains: &[Quaternion],
) -> Result<BridgeCheck, EngineError> {
    if t < 2 {
        return Err(EngineError::BadComposition("path needs t >= 2 vertices".into()));
    }
    if path_gains.len() != t - 1 {
        return Err(EngineError::BadComposition(format!(
            "need {} path gains, got {}",
            t - 1,
            path_gains.len()
        )));
    }
    if !h.has_vertex(v1) {
        return Err(EngineError::BadComposition(format!("{v1} not in first graph")));
    }
    if !k.has_vertex(vt) {
        return Err(EngineError::BadComposition(format!("{vt} not in second graph")));
    }
    let (mut composite, relabel) = glue(h, k, &[])?;
    let mut fresh = composite
        .vertices()
        .map(|v| v.0)
        .max()
        .unwrap_or(0);
    let mut prev = v1;
    for gain in &path_gains[..t - 2] {
        fresh += 1;
        composite
            .add_edge(prev, fresh, gain.clone())
            .map_err(|e| EngineError::BadComposition(e.to_string()))?;
        prev = VertexId(fresh);
    }
    composite
        .add_edge(prev, relabel[&vt], path_gains[t - 2].clone())
        .map_err(|e| EngineError::BadComposition(e.to_string()))?;
    let rank_composite = composite.rank();
    let rank_h = h.rank();
    let rank_k = k.rank();
    let bound = rank_h as i64 + rank_k as i64 + t as i64 - 3;
    Ok(BridgeCheck {
        composite,
        rank_composite,
        rank_h,
        rank_k,
        t,
        bound,
        holds: rank_composite as i64 >= bound,
    })
}

/// Disjoint union of `h` and `k` with `k` relabeled above `h`'s ids, then
/// the listed `(k_vertex, h_vertex)` identifications. Returns the composite
/// and the relabeling of `k`'s vertices.
fn glue(
    h: &GainGraph,
    k: &GainGraph,
    identify: &[(VertexId, VertexId)],
) -> Result<(GainGraph, BTreeMap<VertexId, VertexId>), EngineError> {
    let base = h.vertices().map(|v| v.0).max().unwrap_or(0);
    let mut relabel: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut next = base;
    for kv in k.vertices() {
        if let Some(&(_, hv)) = identify.iter().find(|&&(s, _)| s == kv) {
            relabel.insert(kv, hv);
        } else {
            next += 1;
            relabel.insert(kv, VertexId(next));
        }
    }
    let mut out = h.clone();
    for kv in k.vertices() {
        out.add_vertex(relabel[&kv]);
    }
    for (a, b, gain) in k.edges() {
        out.add_edge(relabel[&a], relabel[&b], gain.clone())
            .map_err(|e| EngineError::BadComposition(e.to_string()))?;
    }
    Ok((out, relabel))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaingraph::{random_connected_graph, GainMode};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn triangle(offset: u32) -> GainGraph {
        let mut g = GainGraph::new();
        g.add_edge(offset, offset + 1, Quaternion::i()).unwrap();
        g.add_edge(offset + 1, offset + 2, Quaternion::j()).unwrap();
        g.add_edge(offset + 2, offset, Quaternion::k()).unwrap();
        g
    }

    fn edge_graph() -> GainGraph {
        let mut g = GainGraph::new();
        g.add_edge(1u32, 2u32, Quaternion::one()).unwrap();
        g
    }

    #[test]
    fn bound_cases() {
        // A 6-cycle forced to the n-2 class.
        let mut c6 = GainGraph::new();
        for idx in 0..6u32 {
            let gain = if idx == 5 {
                -&Quaternion::one()
            } else {
                Quaternion::one()
            };
            c6.add_edge(idx + 1, (idx + 1) % 6 + 1, gain).unwrap();
        }
        let bound = lower_bound(&c6).unwrap();
        assert_eq!(bound.case, LowerBoundCase::LeafFreeCycleDisjoint);
        assert_eq!(bound.bound, 4);
        assert_eq!(c6.rank(), 4);

        // Theta graph: one block with two independent cycles.
        let mut theta = GainGraph::new();
        for (u, v) in [(1u32, 2u32), (1, 3), (1, 4), (5, 2), (5, 3), (5, 4)] {
            theta.add_edge(u, v, Quaternion::one()).unwrap();
        }
        let bound = lower_bound(&theta).unwrap();
        assert_eq!(bound.case, LowerBoundCase::LeafFreeSharedCycles);
        assert_eq!(bound.bound, 5 - 4 + 1);
        assert!(theta.rank() as i64 >= bound.bound);

        // Star: pendant case.
        let mut star = GainGraph::new();
        for leaf in 2..=4u32 {
            star.add_edge(1u32, leaf, Quaternion::i()).unwrap();
        }
        let bound = lower_bound(&star).unwrap();
        assert_eq!(bound.case, LowerBoundCase::HasPendant);
        assert_eq!(bound.bound, 2);
        assert_eq!(star.rank(), 2);

        // Two cycles sharing one vertex: shared case even though every
        // block is a plain cycle.
        let mut shared = triangle(1);
        shared.add_edge(3u32, 10u32, Quaternion::one()).unwrap();
        shared.add_edge(10u32, 11u32, Quaternion::one()).unwrap();
        shared.add_edge(11u32, 3u32, Quaternion::one()).unwrap();
        let bound = lower_bound(&shared).unwrap();
        assert_eq!(bound.case, LowerBoundCase::LeafFreeSharedCycles);

        // Isolated vertex component errors.
        let mut dusty = edge_graph();
        dusty.add_vertex(9u32);
        assert_eq!(
            lower_bound(&dusty),
            Err(EngineError::IsolatedVertexComponent)
        );
    }

    #[test]
    fn bound_holds_on_random_graphs() {
        let mut rng = StdRng::seed_from_u64(67);
        for _ in 0..80 {
            let n = rng.gen_range(2..=10u32);
            let max_extra = (n as usize) * (n as usize - 1) / 2 - (n as usize - 1);
            let c = rng.gen_range(0..=3usize).min(max_extra);
            let g = random_connected_graph(&mut rng, n, c, GainMode::default()).unwrap();
            let bound = lower_bound(&g).unwrap();
            assert!(
                g.rank() as i64 >= bound.bound,
                "bound {} violated by rank {} on {g:?}",
                bound.bound,
                g.rank()
            );
        }
    }

    #[test]
    fn coalescence_inequality_on_triangles() {
        let h = triangle(1);
        let k = triangle(1);
        let check = coalescence_bound_check(&h, VertexId(1), &k, VertexId(1)).unwrap();
        assert_eq!(check.composite.n(), 5);
        assert!(check.holds);
    }

    #[test]
    fn bridge_inequality_tiny_case() {
        // Single edges joined by a 2-vertex path: a 4-path, rank 4 >= 3.
        let check = bridge_bound_check(
            &edge_graph(),
            VertexId(2),
            &edge_graph(),
            VertexId(1),
            2,
            &[Quaternion::i()],
        )
        .unwrap();
        assert_eq!(check.composite.n(), 4);
        assert_eq!(check.rank_composite, 4);
        assert_eq!(check.bound, 3);
        assert!(check.holds);
    }

    #[test]
    fn bridge_inequality_exhaustive_small_catalog() {
        let lipschitz = Quaternion::lipschitz_units();
        let mut rng = StdRng::seed_from_u64(71);
        let catalog: Vec<GainGraph> = vec![edge_graph(), triangle(1), {
            let mut p3 = GainGraph::new();
            p3.add_edge(1u32, 2u32, Quaternion::i()).unwrap();
            p3.add_edge(2u32, 3u32, Quaternion::j()).unwrap();
            p3
        }];
        for h in &catalog {
            for k in &catalog {
                for t in 2..=4usize {
                    let gains: Vec<Quaternion> = (0..t - 1)
                        .map(|_| lipschitz[rng.gen_range(0..8)].clone())
                        .collect();
                    let check = bridge_bound_check(
                        h,
                        VertexId(1),
                        k,
                        VertexId(1),
                        t,
                        &gains,
                    )
                    .unwrap();
                    assert!(
                        check.holds,
                        "bridge bound failed: t={t}, rank={}, bound={}",
                        check.rank_composite, check.bound
                    );
                }
            }
        }
    }

    #[test]
    fn composition_checks_validate_inputs() {
        let h = edge_graph();
        assert!(coalescence_bound_check(&h, VertexId(9), &h, VertexId(1)).is_err());
        assert!(bridge_bound_check(&h, VertexId(1), &h, VertexId(1), 1, &[]).is_err());
        assert!(bridge_bound_check(
            &h,
            VertexId(1),
            &h,
            VertexId(1),
            3,
            &[Quaternion::one()]
        )
        .is_err());
    }

    #[test]
    fn random_compositions_hold() {
        let mut rng = StdRng::seed_from_u64(73);
        for _ in 0..40 {
            let nh = rng.gen_range(2..=6u32);
            let ch = if nh >= 3 { rng.gen_range(0..2) } else { 0 };
            let h = random_connected_graph(&mut rng, nh, ch, GainMode::default()).unwrap();
            let nk = rng.gen_range(2..=6u32);
            let ck = if nk >= 3 { rng.gen_range(0..2) } else { 0 };
            let k = random_connected_graph(&mut rng, nk, ck, GainMode::default()).unwrap();
            let hv = VertexId(rng.gen_range(1..=h.n() as u32));
            let kv = VertexId(rng.gen_range(1..=k.n() as u32));
            let check = coalescence_bound_check(&h, hv, &k, kv).unwrap();
            assert!(check.holds, "coalescence bound failed");
            let t = rng.gen_range(2..=4usize);
            let gains: Vec<Quaternion> = (0..t - 1)
                .map(|_| Quaternion::random_unit(&mut rng, 4))
                .collect();
            let check = bridge_bound_check(&h, hv, &k, kv, t, &gains).unwrap();
            assert!(check.holds, "bridge bound failed");
        }
    }
}
