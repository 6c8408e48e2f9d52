//! Concrete worked instances with known ranks.
//!
//! These pin down small graphs whose ranks are known in closed form and are
//! reproduced in the acceptance suite: a minimum-class 4-cycle of rank 2, a
//! bicyclic graph with irrational gains handled in float mode, a seven-vertex
//! theta graph, and flowers over a nine-vertex spider tree realizing the
//! extremal values 18, 14 and 16. Tree edges carry gain 1 (lossless by
//! switching invariance); cycle edge gains are chosen so the cycle gain
//! products are exactly 1, 1, -1, -1 and, for the off-class variant, -i.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::families::{make_flower, make_spider_tree, CycleAttachment, FlowerSpec};
use crate::gaingraph::GainGraph;
use crate::qmatrix::{QMatrix, QMatrixF64, QuatF64};
use crate::quaternion::Quaternion;

/// The 4-cycle with gains i, j, -i along the path and j closing; cycle gain
/// `i·j·(-i)·j = 1`, minimum class, rank 2.
pub fn four_cycle() -> GainGraph {
    let mut g = GainGraph::new();
    g.add_edge(1u32, 2u32, Quaternion::i()).unwrap();
    g.add_edge(2u32, 3u32, Quaternion::j()).unwrap();
    g.add_edge(3u32, 4u32, -&Quaternion::i()).unwrap();
    g.add_edge(4u32, 1u32, Quaternion::j()).unwrap();
    g
}

/// Adjacency matrix of [`four_cycle`] as printed:
/// rows `(0, i, 0, -j) / (-i, 0, j, 0) / (0, -j, 0, -i) / (j, 0, i, 0)`.
pub fn four_cycle_matrix() -> QMatrix {
    four_cycle().adjacency_matrix()
}

/// Nine-vertex bicyclic graph whose bridge carries the gains `(1+k)/√2` and
/// `(1+i)/√2`: two 4-cycles of minimum class joined by a 3-vertex path.
/// Only representable in float mode; rank 6 at any reasonable tolerance.
pub fn infinity_sqrt2_matrix() -> QMatrixF64 {
    let s = FRAC_1_SQRT_2;
    let mut m = QMatrixF64::zeros(9, 9);
    let mut herm = |r: usize, c: usize, q: QuatF64| {
        m.set(r, c, q);
        m.set(c, r, q.conj());
    };
    let i = QuatF64::new(0.0, 1.0, 0.0, 0.0);
    let j = QuatF64::new(0.0, 0.0, 1.0, 0.0);
    let k = QuatF64::new(0.0, 0.0, 0.0, 1.0);
    herm(0, 1, j);
    herm(0, 3, i);
    herm(1, 2, i);
    herm(2, 3, j);
    herm(3, 4, QuatF64::new(s, 0.0, 0.0, s));
    herm(4, 5, QuatF64::new(s, s, 0.0, 0.0));
    herm(5, 6, i);
    herm(5, 8, QuatF64::new(-1.0, 0.0, 0.0, 0.0));
    herm(6, 7, j);
    herm(7, 8, k);
    m
}

/// Seven-vertex theta graph with basis-unit gains; rank 4.
pub fn theta_seven_graph() -> GainGraph {
    let mut g = GainGraph::new();
    g.add_edge(1u32, 2u32, Quaternion::j()).unwrap();
    g.add_edge(1u32, 6u32, -&Quaternion::i()).unwrap();
    g.add_edge(2u32, 3u32, Quaternion::k()).unwrap();
    g.add_edge(3u32, 4u32, Quaternion::k()).unwrap();
    g.add_edge(4u32, 5u32, Quaternion::j()).unwrap();
    g.add_edge(4u32, 7u32, -&Quaternion::j()).unwrap();
    g.add_edge(5u32, 6u32, Quaternion::i()).unwrap();
    g.add_edge(6u32, 7u32, Quaternion::i()).unwrap();
    g
}

/// Float copy of [`theta_seven_graph`]'s adjacency matrix.
pub fn theta_seven_matrix() -> QMatrixF64 {
    QMatrixF64::from(&theta_seven_graph().adjacency_matrix())
}

/// Nine-vertex spider tree with legs 1, 1, 3, 3: four leaves, rank 6, which
/// meets the pendant bound `n - p + 1`.
pub fn spider_1133() -> GainGraph {
    make_spider_tree(&[1, 1, 3, 3]).unwrap()
}

fn spider_leaves() -> Vec<crate::gaingraph::VertexId> {
    let tree = spider_1133();
    let mut leaves: Vec<_> = tree.pendant_structure().iter().map(|&(l, _)| l).collect();
    leaves.sort_unstable();
    leaves
}

/// The gain sequences whose ordered products are 1, 1, -1, -1: four
/// minimum-class cycles.
fn flower_gain_sets() -> [Vec<Quaternion>; 4] {
    let (i, j, k) = (Quaternion::i(), Quaternion::j(), Quaternion::k());
    [
        vec![i.clone(), j.clone(), -&i, j.clone()],
        vec![-&Quaternion::one(), i.clone(), j.clone(), k.clone()],
        vec![i.clone(), j.clone(), k.clone(), k.clone(), j.clone(), i.clone()],
        vec![-&i, j.clone(), k.clone(), i.clone(), j.clone(), k.clone()],
    ]
}

/// Flower with cycles of lengths 4, 4, 6, 6 on the four leaves of
/// [`spider_1133`]; 25 vertices, rank 18 = n - 2c + 1.
pub fn flower_4466() -> GainGraph {
    let leaves = spider_leaves();
    let gains = flower_gain_sets();
    make_flower(&FlowerSpec {
        tree: spider_1133(),
        attachments: leaves
            .into_iter()
            .zip(gains)
            .map(|(leaf, gains)| CycleAttachment::new(leaf, gains))
            .collect(),
    })
    .unwrap()
}

/// Flower with cycles 4, 4, 6 on three leaves, the fourth left pendant;
/// 20 vertices, rank 14 = n - 2c - p + 1.
pub fn flower_446_with_leaf() -> GainGraph {
    let leaves = spider_leaves();
    let gains = flower_gain_sets();
    make_flower(&FlowerSpec {
        tree: spider_1133(),
        attachments: leaves
            .into_iter()
            .zip(gains)
            .take(3)
            .map(|(leaf, gains)| CycleAttachment::new(leaf, gains))
            .collect(),
    })
    .unwrap()
}

/// [`flower_446_with_leaf`] with the first 4-cycle's gains changed to
/// `i, j, -i, k` (cycle gain -i, off-class); rank rises to 16.
pub fn flower_446_type2() -> GainGraph {
    let leaves = spider_leaves();
    let mut gains = flower_gain_sets();
    gains[0] = vec![
        Quaternion::i(),
        Quaternion::j(),
        -&Quaternion::i(),
        Quaternion::k(),
    ];
    make_flower(&FlowerSpec {
        tree: spider_1133(),
        attachments: leaves
            .into_iter()
            .zip(gains)
            .take(3)
            .map(|(leaf, gains)| CycleAttachment::new(leaf, gains))
            .collect(),
    })
    .unwrap()
}
