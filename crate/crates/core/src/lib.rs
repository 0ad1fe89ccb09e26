//! Exact generating functions for the termwise squares of constant-coefficient
//! linear recurrences.
//!
//! For `a(n) = p_1 a(n-1) + ... + p_l a(n-l)` with initial values
//! `c_0 .. c_{l-1}`, [`gf_squares`] returns `sum a(n)^2 x^n` as a reduced
//! rational function, obtained as a ratio of two polynomial determinants.
//! Everything is checked against a brute-force unrolling of the recurrence.

pub mod cli;
pub mod dsl;
pub mod error;
pub mod matrix;
pub mod poly;
pub mod ratfun;
pub mod recurrence;

pub use error::{Error, Result};
pub use matrix::PolyMatrix;
pub use poly::{Degree, Poly, Rational};
pub use ratfun::{RatFun, SeriesPrefix};
pub use recurrence::{
    aux_vectors, build_delta, build_gamma, build_rhs, fibonacci_spec, gf_squares, lemma_residuals,
    oracle_products, oracle_sequence, pell_spec, solve_f_system, weighted_gf, AuxVectors,
    RecurrenceSpec,
};
