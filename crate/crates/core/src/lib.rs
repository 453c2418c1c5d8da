//! Exact h*-polynomials and normalized volumes of PQ-type adjacency polytopes.
//!
//! The PQ-type adjacency polytope of a graph `G` on `n` vertices is the convex
//! hull of `(e_i, e_j)` for every edge `{i, j}` (both orientations) together
//! with the diagonal points `(e_i, e_i)`. It is unimodularly equivalent to the
//! root polytope of the bipartite double `D(G)`, so its h*-polynomial can be
//! computed four ways:
//!
//! * [`interior::interior_polynomial`] of `D(G)` (hypertree counting),
//! * [`matching::pms_polynomial`] of `D(H)` when `G = H + K_1`,
//! * the closed forms in [`closed_forms`] for joins, complete multipartite
//!   graphs and wheels,
//! * the brute-force Ehrhart oracle in [`ehrhart`].
//!
//! Everything is exact; coefficients are arbitrary-precision integers.

pub mod cli;
pub mod closed_forms;
pub mod ehrhart;
pub mod error;
pub mod graph;
pub mod interior;
pub mod matching;
pub mod poly;
pub mod spec;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{BipartiteGraph, Family, Graph};
pub use poly::IntPolynomial;
