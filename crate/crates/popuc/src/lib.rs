//! Zeros of paraorthogonal polynomials on the unit circle (POPUC), computed as
//! eigenvalues of finite CMV matrices, together with the rank-one perturbation
//! calculus for unitary matrices and executable checkers for the classical
//! interlacing statements that relate the two.
//!
//! The crate is organized around one pipeline:
//!
//! 1. [`szego`] builds monic orthogonal polynomials, their reversals, second-kind
//!    polynomials, and POPUC from a word of Verblunsky coefficients.
//! 2. [`cmv`] builds the five-diagonal unitary CMV matrix whose characteristic
//!    polynomial is the POPUC, and implements the rank-one block splitting that
//!    decouples a size-(n+1) matrix into a size-n matrix plus a single eigenvalue.
//! 3. [`rankone`] implements the general rank-one perturbation calculus for
//!    unitary matrices: spectral measures, Carathéodory and Schur functions, and
//!    the eigenvalue condition `z f(z) = 1`.
//! 4. [`harness`] turns the interlacing theorems into deterministic randomized
//!    checkers with machine-readable reports.
//! 5. [`circle`] supplies the underlying geometry: validated circle points,
//!    open arcs, cyclic ordering, and the strict-interlacing predicate.
//!
//! The `popuc` binary exposes the pipeline on the command line; see the README.

pub mod circle;
pub mod cmv;
pub mod harness;
pub mod linalg;
pub mod rankone;
pub mod szego;

pub use circle::{
    arc_contains, cyclic_order, strictly_interlace, CirclePoint, CyclicSet, Interlacing, OpenArc,
    TAU_CIRCLE, TAU_MATCH,
};
pub use szego::{BoundaryCoefficient, MonicPoly, VerblunskyWord, TAU_DISK};
