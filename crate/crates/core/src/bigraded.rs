//! Graded strands of bigraded free modules over
//! `A = K[x_1..x_n, y_1..y_m]` with `deg x_i = (1, 0)` and `deg y_j = (p_j, 1)`.
//!
//! The `k`-th strand of `A(-a, -b)` is the free `S`-module
//! `⊕_{|β| = k-b} S(-(p·β) - a)`, so every Hilbert datum of a strand is a
//! sum over weak compositions of `k - b` into `m` parts.

use std::collections::BTreeMap;

use log::warn;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::binomial::generalized_binomial;
use crate::compositions::{weak_composition_count, weak_compositions};
use crate::error::{Error, Result};
use crate::monomial::{Limits, MonomialIdeal};
use crate::poly::{rat, QPoly};
use crate::series::{free_sum_series, HilbertSeries};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigradedAlgebra {
    n: usize,
    weights: Vec<u32>,
}

impl BigradedAlgebra {
    pub fn new(n: usize, weights: Vec<u32>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        if weights.is_empty() {
            return Err(Error::InvalidArgument("need at least one y-variable".into()));
        }
        Ok(BigradedAlgebra { n, weights })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.weights.len()
    }

    /// Weights in the order given by the caller.
    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    fn sorted_weights(&self) -> Vec<u32> {
        let mut p = self.weights.clone();
        p.sort_unstable();
        p
    }

    pub fn has_equal_weights(&self) -> bool {
        self.weights.windows(2).all(|w| w[0] == w[1])
    }
}

/// The bigraded twist `(-a, -b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BigradedShift {
    pub a: i64,
    pub b: i64,
}

impl BigradedShift {
    pub fn new(a: i64, b: i64) -> Self {
        BigradedShift { a, b }
    }
}

/// Twists `c` of the free summands `S(-c)`, with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ShiftMultiset {
    pub shifts: BTreeMap<i64, u64>,
}

impl ShiftMultiset {
    pub fn len(&self) -> u64 {
        self.shifts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.shifts.is_empty()
    }
}

fn dot(p: &[u32], beta: &[u32]) -> i64 {
    p.iter().zip(beta).map(|(&x, &y)| x as i64 * y as i64).sum()
}

/// Summand twists `{p·β + a : |β| = k - b}`; empty when `k < b`.
pub fn strand_decomposition(alg: &BigradedAlgebra, shift: BigradedShift, k: i64) -> ShiftMultiset {
    let mut shifts = BTreeMap::new();
    for beta in weak_compositions(k - shift.b, alg.m()) {
        *shifts.entry(dot(&alg.weights, &beta) + shift.a).or_insert(0) += 1;
    }
    ShiftMultiset { shifts }
}

/// `Σ_{|β| = k-b} C(p·β + a, j)` by streaming the compositions.
pub fn composition_sum(alg: &BigradedAlgebra, shift: BigradedShift, k: i64, j: u32) -> BigInt {
    weak_compositions(k - shift.b, alg.m())
        .map(|beta| generalized_binomial(dot(&alg.weights, &beta) + shift.a, j))
        .sum()
}

/// `e^i_j` of the strand `A(-a,-b)_k`. Beyond the range `j <= n + i - 1`
/// the coefficient is zero by convention; a warning is logged.
pub fn strand_coefficient(alg: &BigradedAlgebra, shift: BigradedShift, k: i64, i: u32, j: u32) -> BigInt {
    if j as usize > alg.n + i as usize - 1 {
        warn!(
            "e^{i}_{j} is outside 0..={} for n = {}; returning 0",
            alg.n + i as usize - 1,
            alg.n
        );
        return BigInt::zero();
    }
    composition_sum(alg, shift, k, j)
}

/// `(lower, upper)` with `count · C(p_min (k-b) + a, j)` and
/// `count · C(p_max (k-b) + a, j)`, `count = C(k-b+m-1, m-1)`.
pub fn strand_coefficient_bounds(
    alg: &BigradedAlgebra,
    shift: BigradedShift,
    k: i64,
    j: u32,
) -> Result<(BigInt, BigInt)> {
    let r = k - shift.b;
    if r < 0 {
        return Err(Error::InvalidArgument(format!(
            "bounds need k >= b, got k = {k}, b = {}",
            shift.b
        )));
    }
    let p = alg.sorted_weights();
    let count = generalized_binomial(r + alg.m() as i64 - 1, alg.m() as u32 - 1);
    let lower = &count * generalized_binomial(p[0] as i64 * r + shift.a, j);
    let upper = &count * generalized_binomial(p[p.len() - 1] as i64 * r + shift.a, j);
    Ok((lower, upper))
}

pub fn strand_hilbert_series(alg: &BigradedAlgebra, shift: BigradedShift, k: i64) -> HilbertSeries {
    let dec = strand_decomposition(alg, shift, k);
    free_sum_series(alg.n, &dec.shifts)
}

/// Number of summands of the strand, `C(k-b+m-1, m-1)`.
pub fn strand_rank(alg: &BigradedAlgebra, shift: BigradedShift, k: i64) -> u128 {
    weak_composition_count(k - shift.b, alg.m())
}

/// The strand `ℛ(I)_k = I^k` of the Rees algebra.
pub fn rees_strand(ideal: &MonomialIdeal, k: u32, limits: &Limits) -> Result<MonomialIdeal> {
    ideal.power(k, limits)
}

/// Closed form `C(k-b+m-1, m-1) · C(p (k-b) + a, j)` as a polynomial in `k`,
/// valid when all weights equal `p`. `None` for unequal weights.
pub fn equal_weight_closed_form(alg: &BigradedAlgebra, shift: BigradedShift, j: u32) -> Option<QPoly> {
    if !alg.has_equal_weights() {
        return None;
    }
    let m = alg.m() as i64;
    let p = alg.weights[0] as i64;
    let count = QPoly::binomial(m - 1 - shift.b, (m - 1) as u32);
    // C(p k + (a - p b), j) = Π_{r<j} (p k + a - p b - r) / j!
    let mut coeff = QPoly::constant(BigRational::one());
    let mut fact = BigInt::one();
    for r in 0..j as i64 {
        coeff = &coeff * &QPoly::from_coeffs(vec![rat(shift.a - p * shift.b - r), rat(p)]);
        fact *= BigInt::from(r + 1);
    }
    let coeff = coeff.scale(&BigRational::new(BigInt::one(), fact));
    Some(&count * &coeff)
}
