//! Whole-graph structural rank.
//!
//! Decomposes into components and repeatedly applies, in order: closed forms
//! (isolated vertices, forests via twice the matching number, whole cycles),
//! pendant vertex removal, exact pendant-cycle removal, degree-2 path
//! contraction. A Type 3 pendant cycle is never removed exactly; the
//! computation stops there and brackets the rank using the two-sided
//! pendant-cycle estimate evaluated recursively on both operand graphs,
//! intersected with the combinatorial lower bound and the component order.
//! The result is always sound: the elimination rank lies inside it.

use super::{
    classify_cycle, cycle_gain, find_contractible_path6, find_pendant_cycles, lower_bound,
    rank_cycle, reduce_pendant, reduce_pendant_cycle, CycleType, PendantCycleReduction,
    RankResult,
};
use crate::engine::contract_path6;
use crate::families::matching_number;
use crate::gaingraph::GainGraph;

/// Structural rank of an arbitrary gain graph.
pub fn structural_rank(graph: &GainGraph) -> RankResult {
    let mut lo = 0usize;
    let mut hi = 0usize;
    let mut queue: Vec<GainGraph> = graph.components();
    while let Some(comp) = queue.pop() {
        let n = comp.n();
        if n <= 1 {
            continue;
        }
        if comp.is_forest() {
            let rank = 2 * matching_number(&comp).expect("component is a forest");
            lo += rank;
            hi += rank;
            continue;
        }
        if comp.is_cycle_graph() {
            let order = comp.cycle_order().expect("component is a cycle");
            let gain = cycle_gain(&comp, &order).expect("cycle order is a cycle");
            let rank = rank_cycle(n, classify_cycle(n, &gain));
            lo += rank;
            hi += rank;
            continue;
        }
        if !comp.pendant_structure().is_empty() {
            let (rest, increment) = reduce_pendant(&comp).expect("pendant exists");
            lo += increment;
            hi += increment;
            queue.extend(rest.components());
            continue;
        }
        // Leaf-free, cyclic, not a bare cycle.
        let pendant_cycles = find_pendant_cycles(&comp);
        if let Some(pc) = pendant_cycles
            .iter()
            .find(|pc| pc.cycle_type != CycleType::Type3)
        {
            let PendantCycleReduction::Exact { rest, increment, .. } =
                reduce_pendant_cycle(&comp, &pc.order).expect("found pendant cycle")
            else {
                unreachable!("non-Type-3 pendant cycles reduce exactly");
            };
            lo += increment;
            hi += increment;
            queue.extend(rest.components());
            continue;
        }
        if let Some(path) = find_contractible_path6(&comp) {
            let (contracted, increment) =
                contract_path6(&comp, &path).expect("found qualifying path");
            lo += increment;
            hi += increment;
            queue.push(contracted);
            continue;
        }
        if let Some(pc) = pendant_cycles.first() {
            let PendantCycleReduction::Bracket {
                with_anchor,
                without_anchor,
                len,
            } = reduce_pendant_cycle(&comp, &pc.order).expect("found pendant cycle")
            else {
                unreachable!("remaining pendant cycles are Type 3");
            };
            let upper_part = structural_rank(&with_anchor);
            let lower_part = structural_rank(&without_anchor);
            let (clo, chi) = clamp_to_component(
                &comp,
                len - 1 + lower_part.lo(),
                len + upper_part.hi(),
            );
            lo += clo;
            hi += chi;
            continue;
        }
        // Irreducible remainder (e.g. cycles sharing vertices with no
        // qualifying contraction): fall back to the combinatorial bracket.
        let (clo, chi) = clamp_to_component(&comp, 0, n);
        lo += clo;
        hi += chi;
    }
    RankResult::from_bounds(lo, hi)
}

/// Intersect a rank bracket for a connected component with the
/// combinatorial lower bound and the component order.
fn clamp_to_component(comp: &GainGraph, lo: usize, hi: usize) -> (usize, usize) {
    let mut lo = lo;
    if let Ok(bound) = lower_bound(comp) {
        if bound.bound > 0 {
            lo = lo.max(bound.bound as usize);
        }
    }
    (lo, hi.min(comp.n()))
}
