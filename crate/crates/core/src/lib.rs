//! Exact Hilbert series, iterated Hilbert polynomials and higher iterated
//! Hilbert coefficients for graded modules over `S = K[x_1, ..., x_n]`,
//! focused on powers of monomial ideals and on the graded strands of
//! bigraded free modules.

pub mod asymptotics;
pub mod bigraded;
pub mod binomial;
pub mod compositions;
pub mod error;
pub mod hilbert_poly;
pub mod json;
pub mod koszul;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod series;

pub use asymptotics::{
    detect_stabilization, fiber_dimension, fit_with_bounds, newton_fit, scan_power_coefficients,
    scan_strand_coefficients, verify_degree_bounds, BoundContext, FitOutcome, KPolynomial, ScanResult, Verdict,
};
pub use bigraded::{
    composition_sum, strand_coefficient, strand_coefficient_bounds, strand_decomposition, strand_hilbert_series,
    BigradedAlgebra, BigradedShift, ShiftMultiset,
};
pub use binomial::generalized_binomial;
pub use compositions::{weak_compositions, WeakCompositions};
pub use error::{Error, Result};
pub use hilbert_poly::{extract_coefficients, hilbert_polynomial, CoefficientTable, HilbertPolynomial};
pub use koszul::{
    betti_table, graded_piece, koszul_homology_dims, scan_betti, tor_coefficients, BettiTable, KoszulOptions,
};
pub use linalg::RankEngine;
pub use monomial::{count_ideal_monomials, ExponentVector, Limits, MonomialIdeal};
pub use parse::{parse_ideal, IdealSpec};
pub use poly::QPoly;
pub use series::{e_from_h, h_from_e, hilbert_series_ideal, hilbert_series_quotient, HVector, HilbertSeries};
