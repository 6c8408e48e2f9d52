//! Bidirectional characterization checks.
//!
//! Each check evaluates the rank side (elimination rank equals the stated
//! extremal value) and the shape side (structural recognition of the
//! characterized family) independently, and reports both verdicts with a
//! diagnostic. On every instance the two sides must agree; disagreement on
//! any input falsifies the characterization, which is the whole point of
//! checking both directions.

use std::collections::BTreeSet;

use super::{is_covered_vertex, matching_number, FamiliesError};
use crate::engine::{classify_cycle, cycle_gain, CycleType};
use crate::gaingraph::{GainGraph, VertexId};

/// Two independently evaluated sides of a characterization.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub rank_side: bool,
    pub shape_side: bool,
    pub detail: String,
}

impl Verdict {
    pub fn agree(&self) -> bool {
        self.rank_side == self.shape_side
    }
}

/// Tree characterization verdict; the defining condition quantifies over
/// leaf-to-major paths, so both the for-all and the exists reading are
/// evaluated. `agree()` uses the for-all reading.
#[derive(Clone, Debug)]
pub struct TreeVerdict {
    pub rank_side: bool,
    pub shape_all: bool,
    pub shape_exists: bool,
    pub detail: String,
}

impl TreeVerdict {
    pub fn agree(&self) -> bool {
        self.rank_side == self.shape_all
    }
}

/// A connected leaf-free graph with exactly two independent cycles is
/// either two cycles joined by a path (sharing one vertex when the path is
/// trivial) or two hubs joined by three internally disjoint arms.
#[derive(Clone, Debug)]
pub enum BicyclicShape {
    Infinity {
        /// First cycle in cycle order, starting at its attachment vertex.
        cycle_a: Vec<VertexId>,
        /// Path between the two attachment vertices, inclusive; a single
        /// vertex when the cycles share it.
        path: Vec<VertexId>,
        cycle_b: Vec<VertexId>,
    },
    Theta {
        hubs: (VertexId, VertexId),
        /// The three arms, each from the first hub to the second,
        /// inclusive.
        arms: [Vec<VertexId>; 3],
    },
}

/// A cycle hanging off the tree skeleton of a flower.
#[derive(Clone, Debug)]
pub struct FlowerCycle {
    pub order: Vec<VertexId>,
    pub anchor: VertexId,
    pub cycle_type: CycleType,
}

/// A tree with pendant cycles attached at some of its leaves.
#[derive(Clone, Debug)]
pub struct FlowerShape {
    /// The graph with all cycle interiors removed: the tree skeleton, in
    /// which every anchor is a leaf.
    pub tree: GainGraph,
    pub cycles: Vec<FlowerCycle>,
}

/// Walk maximal arcs of degree-2 vertices between hubs, each arc reported
/// once, endpoints included.
fn walk_arcs(graph: &GainGraph, hubs: &BTreeSet<VertexId>) -> Vec<Vec<VertexId>> {
    let adj = graph.adjacency();
    let mut used: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    let key = |a: VertexId, b: VertexId| if a < b { (a, b) } else { (b, a) };
    let mut arcs = Vec::new();
    for &hub in hubs {
        for &first in &adj[&hub] {
            if used.contains(&key(hub, first)) {
                continue;
            }
            let mut seq = vec![hub, first];
            used.insert(key(hub, first));
            let mut prev = hub;
            let mut cur = first;
            while !hubs.contains(&cur) {
                let next = adj[&cur]
                    .iter()
                    .copied()
                    .find(|&w| w != prev)
                    .expect("degree-2 interior vertex has a forward neighbor");
                used.insert(key(cur, next));
                seq.push(next);
                prev = cur;
                cur = next;
            }
            arcs.push(seq);
        }
    }
    arcs
}

/// Recognize the shape of a connected leaf-free graph with two independent
/// cycles. Returns `None` when the graph is not of that kind.
pub fn recognize_bicyclic(graph: &GainGraph) -> Option<BicyclicShape> {
    let stats = graph.stats();
    if !graph.is_connected() || stats.c != 2 || stats.p != 0 || stats.n < 4 {
        return None;
    }
    let adj = graph.adjacency();
    let mut deg3 = Vec::new();
    let mut deg4 = Vec::new();
    for (&v, nb) in &adj {
        match nb.len() {
            2 => {}
            3 => deg3.push(v),
            4 => deg4.push(v),
            _ => return None,
        }
    }
    match (deg4.len(), deg3.len()) {
        (1, 0) => {
            let hub = deg4[0];
            let hubs = BTreeSet::from([hub]);
            let arcs = walk_arcs(graph, &hubs);
            if arcs.len() != 2 || arcs.iter().any(|a| *a.last().unwrap() != hub) {
                return None;
            }
            let strip = |arc: &[VertexId]| arc[..arc.len() - 1].to_vec();
            Some(BicyclicShape::Infinity {
                cycle_a: strip(&arcs[0]),
                path: vec![hub],
                cycle_b: strip(&arcs[1]),
            })
        }
        (0, 2) => {
            let (x, y) = (deg3[0], deg3[1]);
            let hubs = BTreeSet::from([x, y]);
            let arcs = walk_arcs(graph, &hubs);
            if arcs.len() != 3 {
                return None;
            }
            let open: Vec<&Vec<VertexId>> = arcs
                .iter()
                .filter(|a| a[0] != *a.last().unwrap())
                .collect();
            match open.len() {
                3 => {
                    let mut arms: Vec<Vec<VertexId>> = open
                        .iter()
                        .map(|arc| {
                            if arc[0] == x {
                                (*arc).clone()
                            } else {
                                arc.iter().rev().copied().collect()
                            }
                        })
                        .collect();
                    arms.sort_by_key(Vec::len);
                    Some(BicyclicShape::Theta {
                        hubs: (x, y),
                        arms: [arms[0].clone(), arms[1].clone(), arms[2].clone()],
                    })
                }
                1 => {
                    let path = open[0];
                    let closed: Vec<&Vec<VertexId>> = arcs
                        .iter()
                        .filter(|a| a[0] == *a.last().unwrap())
                        .collect();
                    if closed.len() != 2 || closed[0][0] == closed[1][0] {
                        return None;
                    }
                    let strip = |arc: &[VertexId]| arc[..arc.len() - 1].to_vec();
                    let (first, second) = if closed[0][0] == path[0] {
                        (closed[0], closed[1])
                    } else {
                        (closed[1], closed[0])
                    };
                    Some(BicyclicShape::Infinity {
                        cycle_a: strip(first),
                        path: path.clone(),
                        cycle_b: strip(second),
                    })
                }
                _ => None,
            }
        }
        _ => None,
    }
}

/// Recognize a tree with cycles attached at distinct leaves through single
/// vertices. Returns `None` unless every block is an edge or a cycle, every
/// cycle hangs on a degree-3 anchor, and the skeleton left after removing
/// cycle interiors is a tree on at least two vertices.
pub fn recognize_flower(graph: &GainGraph) -> Option<FlowerShape> {
    if !graph.is_connected() || graph.n() == 0 {
        return None;
    }
    let adj = graph.adjacency();
    let mut interiors: BTreeSet<VertexId> = BTreeSet::new();
    let mut cycles = Vec::new();
    for block in graph.blocks() {
        if block.cyclomatic() >= 2 {
            return None;
        }
        if !block.is_cycle() {
            continue;
        }
        let majors: Vec<VertexId> = block
            .vertices
            .iter()
            .copied()
            .filter(|v| adj[v].len() >= 3)
            .collect();
        if majors.len() != 1 || adj[&majors[0]].len() != 3 {
            return None;
        }
        let anchor = majors[0];
        let order = cycle_order_from(&block.vertices, &adj, anchor);
        let gain = cycle_gain(graph, &order).expect("cycle block is a cycle");
        cycles.push(FlowerCycle {
            cycle_type: classify_cycle(order.len(), &gain),
            order: order.clone(),
            anchor,
        });
        interiors.extend(order.into_iter().filter(|&v| v != anchor));
    }
    if cycles.is_empty() {
        return None;
    }
    let tree = graph.delete_vertices(&interiors);
    if tree.n() < 2 || !tree.is_forest() || !tree.is_connected() {
        return None;
    }
    Some(FlowerShape { tree, cycles })
}

fn cycle_order_from(
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
        .expect("cycle vertex has in-cycle neighbors");
    while cur != start {
        order.push(cur);
        let next = adj[&cur]
            .iter()
            .copied()
            .find(|&w| w != prev && vertices.contains(&w))
            .expect("cycle vertex has two in-cycle neighbors");
        prev = cur;
        cur = next;
    }
    order
}

fn cycle_class(graph: &GainGraph, order: &[VertexId]) -> CycleType {
    let gain = cycle_gain(graph, order).expect("recognized cycle");
    classify_cycle(order.len(), &gain)
}

/// Rank equals `n - 2c` (connected, leaf-free) if and only if the graph is
/// a single cycle of the minimum-rank class.
pub fn check_leaf_free_floor(graph: &GainGraph) -> Result<Verdict, FamiliesError> {
    let stats = graph.stats();
    if !graph.is_connected() || stats.n < 2 {
        return Err(FamiliesError::Hypothesis(
            "need a connected graph on >= 2 vertices".into(),
        ));
    }
    if stats.p != 0 {
        return Err(FamiliesError::Hypothesis("graph must be leaf-free".into()));
    }
    let rank = graph.rank();
    let rank_side = rank as i64 == stats.n as i64 - 2 * stats.c as i64;
    let shape_side = match graph.cycle_order() {
        Some(order) => cycle_class(graph, &order) == CycleType::Type1,
        None => false,
    };
    Ok(Verdict {
        rank_side,
        shape_side,
        detail: format!("rank={rank}, n-2c={}", stats.n as i64 - 2 * stats.c as i64),
    })
}

/// Rank equals `n - 3` for a connected leaf-free graph with two independent
/// cycles if and only if the graph is two minimum-class cycles joined by an
/// odd-order path, or three odd arms between two hubs with every cycle in
/// the minimum class.
pub fn check_bicyclic_floor_plus_one(graph: &GainGraph) -> Result<Verdict, FamiliesError> {
    let stats = graph.stats();
    if !graph.is_connected() || stats.p != 0 || stats.c != 2 {
        return Err(FamiliesError::Hypothesis(
            "need a connected leaf-free graph with two independent cycles".into(),
        ));
    }
    let rank = graph.rank();
    let rank_side = rank as i64 == stats.n as i64 - 3;
    let (shape_side, shape_note) = match recognize_bicyclic(graph) {
        Some(BicyclicShape::Infinity { cycle_a, path, cycle_b }) => {
            let ok = cycle_class(graph, &cycle_a) == CycleType::Type1
                && cycle_class(graph, &cycle_b) == CycleType::Type1
                && path.len() % 2 == 1;
            (ok, format!("infinity p={} l={} q={}", cycle_a.len(), path.len(), cycle_b.len()))
        }
        Some(BicyclicShape::Theta { arms, .. }) => {
            let mut ok = arms.iter().all(|arm| (arm.len() - 2) % 2 == 1);
            for a in 0..3 {
                for b in a + 1..3 {
                    let mut order = arms[a].clone();
                    order.extend(arms[b][1..arms[b].len() - 1].iter().rev());
                    ok &= cycle_class(graph, &order) == CycleType::Type1;
                }
            }
            let lens: Vec<usize> = arms.iter().map(|a| a.len() - 2).collect();
            (ok, format!("theta arms={lens:?}"))
        }
        None => (false, "unrecognized".into()),
    };
    Ok(Verdict {
        rank_side,
        shape_side,
        detail: format!("rank={rank}, n-3={}, {shape_note}", stats.n as i64 - 3),
    })
}

/// Rank equals `n - 2c + 1` for a connected leaf-free graph with at least
/// three independent cycles if and only if the graph is a tree whose rank
/// meets the pendant bound with one minimum-class cycle attached on every
/// leaf.
pub fn check_flower_floor_plus_one(graph: &GainGraph) -> Result<Verdict, FamiliesError> {
    let stats = graph.stats();
    if !graph.is_connected() || stats.p != 0 || stats.c < 3 {
        return Err(FamiliesError::Hypothesis(
            "need a connected leaf-free graph with >= 3 independent cycles".into(),
        ));
    }
    let rank = graph.rank();
    let rank_side = rank as i64 == stats.n as i64 - 2 * stats.c as i64 + 1;
    let (shape_side, shape_note) = flower_shape_side(graph, |tree_leaves, cycle_count| {
        tree_leaves == cycle_count
    });
    Ok(Verdict {
        rank_side,
        shape_side,
        detail: format!(
            "rank={rank}, n-2c+1={}, {shape_note}",
            stats.n as i64 - 2 * stats.c as i64 + 1
        ),
    })
}

/// Rank equals `n - 2c - p + 1` for a connected graph with cycles and
/// leaves if and only if the graph is a tree whose rank meets the pendant
/// bound with minimum-class cycles attached on `c` of its leaves.
pub fn check_pendant_floor(graph: &GainGraph) -> Result<Verdict, FamiliesError> {
    let stats = graph.stats();
    if !graph.is_connected() || stats.p < 1 || stats.c < 1 {
        return Err(FamiliesError::Hypothesis(
            "need a connected graph with at least one cycle and one leaf".into(),
        ));
    }
    let rank = graph.rank();
    let target = stats.n as i64 - 2 * stats.c as i64 - stats.p as i64 + 1;
    let rank_side = rank as i64 == target;
    let (shape_side, shape_note) = flower_shape_side(graph, |tree_leaves, cycle_count| {
        tree_leaves > cycle_count
    });
    Ok(Verdict {
        rank_side,
        shape_side,
        detail: format!("rank={rank}, n-2c-p+1={target}, {shape_note}"),
    })
}

fn flower_shape_side(
    graph: &GainGraph,
    leaves_vs_cycles: impl Fn(usize, usize) -> bool,
) -> (bool, String) {
    match recognize_flower(graph) {
        Some(shape) => {
            let tree_stats = shape.tree.stats();
            let all_type1 = shape
                .cycles
                .iter()
                .all(|c| c.cycle_type == CycleType::Type1);
            let tree_rank = 2 * matching_number(&shape.tree).expect("skeleton is a tree");
            let tree_extremal =
                tree_rank as i64 == tree_stats.n as i64 - tree_stats.p as i64 + 1;
            let counts_ok = leaves_vs_cycles(tree_stats.p, shape.cycles.len());
            let ok = all_type1 && tree_extremal && counts_ok;
            (
                ok,
                format!(
                    "flower: cycles={}, tree leaves={}, tree rank={}, all min-class={}",
                    shape.cycles.len(),
                    tree_stats.p,
                    tree_rank,
                    all_type1
                ),
            )
        }
        None => (false, "not a flower".into()),
    }
}

/// For a tree with at least three leaves, rank equals `n - p + 1` if and
/// only if every leaf's internal path to its nearest branching vertex has
/// odd length and stripping any such path leaves a tree that again meets
/// the bound with the branching vertex covered by every maximum matching.
/// Both the for-all and the exists reading of "any" are reported.
pub fn check_tree_pendant_floor(tree: &GainGraph) -> Result<TreeVerdict, FamiliesError> {
    let stats = tree.stats();
    if !tree.is_connected() || stats.c != 0 {
        return Err(FamiliesError::NotATree);
    }
    if stats.p < 3 {
        return Err(FamiliesError::Hypothesis("need at least 3 leaves".into()));
    }
    let rank = 2 * matching_number(tree)?;
    let rank_side = rank as i64 == stats.n as i64 - stats.p as i64 + 1;

    let adj = tree.adjacency();
    let mut all_odd = true;
    let mut cond2_all = true;
    let mut cond2_any = false;
    for (leaf, _) in tree.pendant_structure() {
        // Unique path from the leaf to the nearest vertex of degree >= 3.
        let mut path = vec![leaf];
        let mut prev = leaf;
        let mut cur = adj[&leaf][0];
        while adj[&cur].len() == 2 {
            path.push(cur);
            let next = adj[&cur]
                .iter()
                .copied()
                .find(|&w| w != prev)
                .expect("interior of a leaf path");
            prev = cur;
            cur = next;
        }
        path.push(cur);
        let branch = cur;
        if (path.len() - 1) % 2 == 0 {
            all_odd = false;
        }
        let strip: BTreeSet<VertexId> = path[..path.len() - 1].iter().copied().collect();
        let stripped = tree.delete_vertices(&strip);
        let s_stats = stripped.stats();
        let s_rank = 2 * matching_number(&stripped)?;
        let meets = s_rank as i64 == s_stats.n as i64 - s_stats.p as i64 + 1;
        let covered = is_covered_vertex(&stripped, branch)?;
        if meets && covered {
            cond2_any = true;
        } else {
            cond2_all = false;
        }
    }
    Ok(TreeVerdict {
        rank_side,
        shape_all: all_odd && cond2_all,
        shape_exists: all_odd && cond2_any,
        detail: format!(
            "rank={rank}, n-p+1={}, odd paths={all_odd}",
            stats.n as i64 - stats.p as i64 + 1
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{
        make_cycle_of_type, make_flower, make_infinity, make_spider_tree, make_theta,
        CycleAttachment, FlowerSpec, InfinitySpec, ThetaSpec,
    };
    use crate::gaingraph::GainMode;
    use crate::quaternion::Quaternion;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn leaf_free_floor_positive_and_negative() {
        let mut rng = StdRng::seed_from_u64(101);
        let mode = GainMode::default();
        for n in [4usize, 6, 8] {
            let v = check_leaf_free_floor(&make_cycle_of_type(n, CycleType::Type1, &mut rng, mode).unwrap()).unwrap();
            assert!(v.rank_side && v.shape_side, "{}", v.detail);
            let v = check_leaf_free_floor(&make_cycle_of_type(n, CycleType::Type2, &mut rng, mode).unwrap()).unwrap();
            assert!(!v.rank_side && !v.shape_side, "{}", v.detail);
        }
        for n in [5usize, 7] {
            for t in [CycleType::Type3, CycleType::Type4] {
                let v = check_leaf_free_floor(&make_cycle_of_type(n, t, &mut rng, mode).unwrap()).unwrap();
                assert!(v.agree() && !v.rank_side, "{}", v.detail);
            }
        }
        // Leaf-free non-cycle: both sides false.
        let theta = make_theta(&ThetaSpec::all_type1(1, 1, 1).unwrap()).unwrap();
        let v = check_leaf_free_floor(&theta).unwrap();
        assert!(v.agree() && !v.rank_side);
        // Hypothesis violations error.
        let mut p2 = GainGraph::new();
        p2.add_edge(1u32, 2u32, Quaternion::one()).unwrap();
        assert!(check_leaf_free_floor(&p2).is_err());
    }

    #[test]
    fn bicyclic_recognition() {
        let inf = make_infinity(&InfinitySpec::all_type1(4, 3, 6).unwrap()).unwrap();
        match recognize_bicyclic(&inf).unwrap() {
            BicyclicShape::Infinity { cycle_a, path, cycle_b } => {
                let mut lens = [cycle_a.len(), cycle_b.len()];
                lens.sort();
                assert_eq!(lens, [4, 6]);
                assert_eq!(path.len(), 3);
            }
            other => panic!("wrong shape: {other:?}"),
        }

        let inf = make_infinity(&InfinitySpec::all_type1(4, 1, 4).unwrap()).unwrap();
        match recognize_bicyclic(&inf).unwrap() {
            BicyclicShape::Infinity { path, .. } => assert_eq!(path.len(), 1),
            other => panic!("wrong shape: {other:?}"),
        }

        let theta = make_theta(&ThetaSpec::all_type1(1, 3, 3).unwrap()).unwrap();
        match recognize_bicyclic(&theta).unwrap() {
            BicyclicShape::Theta { arms, .. } => {
                let lens: Vec<usize> = arms.iter().map(|a| a.len() - 2).collect();
                assert_eq!(lens, vec![1, 3, 3]);
            }
            other => panic!("wrong shape: {other:?}"),
        }
    }

    #[test]
    fn bicyclic_floor_positive_and_negative() {
        // Positive: both cycles minimum class, odd path.
        for spec in [
            InfinitySpec::all_type1(4, 1, 4).unwrap(),
            InfinitySpec::all_type1(4, 3, 6).unwrap(),
            InfinitySpec::all_type1(6, 5, 6).unwrap(),
        ] {
            let v = check_bicyclic_floor_plus_one(&make_infinity(&spec).unwrap()).unwrap();
            assert!(v.rank_side && v.shape_side, "{}", v.detail);
        }
        for (p, l, q) in [(1, 1, 1), (1, 1, 3), (3, 3, 3), (1, 3, 5)] {
            let v = check_bicyclic_floor_plus_one(
                &make_theta(&ThetaSpec::all_type1(p, l, q).unwrap()).unwrap(),
            )
            .unwrap();
            assert!(v.rank_side && v.shape_side, "{}", v.detail);
        }
        // Negative: even path.
        let v = check_bicyclic_floor_plus_one(
            &make_infinity(&InfinitySpec::all_type1(4, 2, 4).unwrap()).unwrap(),
        )
        .unwrap();
        assert!(v.agree() && !v.rank_side, "{}", v.detail);
        // Negative: one cycle off-class.
        let bad = InfinitySpec::new(4, 3, 4, Quaternion::i(), -&Quaternion::one());
        let v = check_bicyclic_floor_plus_one(&make_infinity(&bad).unwrap()).unwrap();
        assert!(v.agree() && !v.rank_side, "{}", v.detail);
        // Negative: even arms.
        let v = check_bicyclic_floor_plus_one(
            &make_theta(&ThetaSpec::all_type1(2, 2, 2).unwrap()).unwrap(),
        )
        .unwrap();
        assert!(v.agree() && !v.rank_side, "{}", v.detail);
    }

    fn flower_on_spider(legs: &[usize], cycle_lens: &[usize]) -> GainGraph {
        let tree = make_spider_tree(legs).unwrap();
        let leaves: Vec<VertexId> = tree.pendant_structure().iter().map(|&(l, _)| l).collect();
        make_flower(&FlowerSpec {
            tree,
            attachments: leaves
                .iter()
                .zip(cycle_lens)
                .map(|(&leaf, &len)| CycleAttachment::type1(leaf, len))
                .collect(),
        })
        .unwrap()
    }

    #[test]
    fn flower_floor_positive_and_negative() {
        let g = flower_on_spider(&[1, 1, 3], &[4, 4, 6]);
        let v = check_flower_floor_plus_one(&g).unwrap();
        assert!(v.rank_side && v.shape_side, "{}", v.detail);

        // One cycle off-class: both sides false.
        let tree = make_spider_tree(&[1, 1, 3]).unwrap();
        let leaves: Vec<VertexId> = tree.pendant_structure().iter().map(|&(l, _)| l).collect();
        let mut atts: Vec<CycleAttachment> = leaves
            .iter()
            .map(|&leaf| CycleAttachment::type1(leaf, 4))
            .collect();
        atts[0].gains[3] = Quaternion::i();
        let g = make_flower(&FlowerSpec { tree, attachments: atts }).unwrap();
        let v = check_flower_floor_plus_one(&g).unwrap();
        assert!(v.agree() && !v.rank_side, "{}", v.detail);
    }

    #[test]
    fn pendant_floor_positive_and_negative() {
        // Spider with 4 leaves, cycles on 3 of them.
        let g = flower_on_spider_partial(&[1, 1, 3, 3], 3);
        let v = check_pendant_floor(&g).unwrap();
        assert!(v.rank_side && v.shape_side, "{}", v.detail);

        // Tree that misses the bound (even leg): both sides false.
        let mut tree = GainGraph::new();
        // Center 1; legs of edge lengths 2, 1, 1 -> rank 2*matching.
        tree.add_edge(1u32, 2u32, Quaternion::one()).unwrap();
        tree.add_edge(2u32, 3u32, Quaternion::one()).unwrap();
        tree.add_edge(1u32, 4u32, Quaternion::one()).unwrap();
        tree.add_edge(1u32, 5u32, Quaternion::one()).unwrap();
        let leaves: Vec<VertexId> = tree.pendant_structure().iter().map(|&(l, _)| l).collect();
        let g = make_flower(&FlowerSpec {
            tree,
            attachments: vec![CycleAttachment::type1(leaves[0], 4)],
        })
        .unwrap();
        let v = check_pendant_floor(&g).unwrap();
        assert!(v.agree(), "{}", v.detail);
    }

    fn flower_on_spider_partial(legs: &[usize], cycles: usize) -> GainGraph {
        let tree = make_spider_tree(legs).unwrap();
        let leaves: Vec<VertexId> = tree.pendant_structure().iter().map(|&(l, _)| l).collect();
        make_flower(&FlowerSpec {
            tree,
            attachments: leaves
                .iter()
                .take(cycles)
                .map(|&leaf| CycleAttachment::type1(leaf, 4))
                .collect(),
        })
        .unwrap()
    }

    #[test]
    fn tree_characterization() {
        let spider = make_spider_tree(&[1, 1, 1]).unwrap();
        let v = check_tree_pendant_floor(&spider).unwrap();
        assert!(v.rank_side && v.shape_all && v.shape_exists, "{}", v.detail);

        let spider = make_spider_tree(&[3, 3, 3, 1]).unwrap();
        let v = check_tree_pendant_floor(&spider).unwrap();
        assert!(v.rank_side && v.shape_all, "{}", v.detail);

        // Even leg: both sides false.
        let mut tree = GainGraph::new();
        tree.add_edge(1u32, 2u32, Quaternion::one()).unwrap();
        tree.add_edge(2u32, 3u32, Quaternion::one()).unwrap();
        tree.add_edge(1u32, 4u32, Quaternion::one()).unwrap();
        tree.add_edge(1u32, 5u32, Quaternion::one()).unwrap();
        let v = check_tree_pendant_floor(&tree).unwrap();
        assert!(!v.rank_side && !v.shape_all, "{}", v.detail);

        // A path has too few leaves.
        let mut p4 = GainGraph::new();
        for i in 1..4u32 {
            p4.add_edge(i, i + 1, Quaternion::one()).unwrap();
        }
        assert!(check_tree_pendant_floor(&p4).is_err());
    }
}
