//! Exact computational toolkit for point configurations determining a single
//! distinct triangle.
//!
//! The crate is organised around exact rational arithmetic: point
//! configurations carry `BigRational` coordinates, all distances are kept in
//! squared form so every quantity stays rational, and every decision
//! (congruence, collinearity, realizability) is made with zero tolerance.
//! A small floating-point layer ([`float`], [`search`]) provides approximate
//! censusing and a numerical corroboration search on top of the exact core.
//!
//! Module map:
//! * [`geometry`] — points, squared-distance matrices, triangle signatures
//!   and the distinct-triangle census.
//! * [`realizability`] — Gram matrices, exact PSD/rank decisions, minimal
//!   Euclidean embedding dimension and approximate coordinate recovery.
//! * [`combinatorics`] — edge-labelings of complete graphs, canonical forms,
//!   exhaustive enumeration and the bound-verification pipeline.
//! * [`constructions`] — exact generators for the optimal families
//!   (regular simplex, rectangle, two tetrahedron families).
//! * [`float`] — floating-point configurations and the tolerance census.
//! * [`search`] — the one-triangle defect objective, its gradient, and a
//!   deterministic random-restart minimizer.

pub mod combinatorics;
pub mod constructions;
pub mod float;
pub mod geometry;
pub mod rat;
pub mod realizability;
pub mod search;

pub use geometry::{
    census, distance_matrix, is_degenerate_triple, squared_circumradius, squared_distance,
    CensusReport, GeometryError, Point, PointConfig, SquaredDistanceMatrix, TriangleKind,
    TriangleSignature,
};
pub use rat::Rat;
