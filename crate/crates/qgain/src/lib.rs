//! Quaternion unit gain graphs and their exact row left rank.
//!
//! A quaternion unit gain graph is a simple graph in which every oriented
//! edge carries a unit quaternion gain, with the reversed orientation
//! carrying the conjugate (equivalently, inverse) gain. Its Hermitian
//! adjacency matrix lives over a noncommutative division ring, so "rank"
//! needs a side: this crate computes the row left rank exactly, via left
//! Gaussian elimination over arbitrary-precision rationals, and cross-checks
//! it with an independent complex-representation oracle.
//!
//! On top of the linear algebra sit structural tools: switching, cycle
//! classification, rank-preserving reductions (pendant vertices, pendant
//! cycles, long degree-2 paths), closed forms for paths, cycles and trees,
//! combinatorial lower bounds in terms of the cyclomatic number and pendant
//! vertex count, and constructors plus recognizers for the families that
//! attain those bounds. The `qgain` binary wraps everything in a batch
//! verification harness with seeded, reproducible reports.

pub mod engine;
pub mod families;
pub mod gaingraph;
pub mod harness;
pub mod presets;
pub mod qmatrix;
pub mod quaternion;

pub use gaingraph::{GainGraph, GraphError, GraphStats, SwitchingFunction, VertexId};
pub use qmatrix::{ComplexMatrix, QMatrix, QMatrixF64};
pub use quaternion::{Quaternion, Rational};
