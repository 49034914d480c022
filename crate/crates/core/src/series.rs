//! Hilbert series of graded `S`-modules and their h-vectors.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::binomial::generalized_binomial;
use crate::monomial::{ExponentVector, MonomialIdeal};

/// `t^shift · numerator(t) / (1 - t)^ambient_n`.
///
/// Normalized so the numerator has a nonzero constant term and a nonzero
/// leading term; the zero series has an empty numerator and shift 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HilbertSeries {
    ambient_n: usize,
    shift: i64,
    numerator: Vec<BigInt>,
}

impl HilbertSeries {
    pub fn new(ambient_n: usize, shift: i64, mut numerator: Vec<BigInt>) -> Self {
        while numerator.last().is_some_and(Zero::is_zero) {
            numerator.pop();
        }
        let lead = numerator.iter().take_while(|c| c.is_zero()).count();
        if numerator.is_empty() {
            return HilbertSeries {
                ambient_n,
                shift: 0,
                numerator,
            };
        }
        numerator.drain(..lead);
        HilbertSeries {
            ambient_n,
            shift: shift + lead as i64,
            numerator,
        }
    }

    pub fn from_ints(ambient_n: usize, shift: i64, numerator: &[i64]) -> Self {
        Self::new(ambient_n, shift, numerator.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(ambient_n: usize) -> Self {
        Self::new(ambient_n, 0, Vec::new())
    }

    /// Series of the free module `S(-c)`.
    pub fn free(ambient_n: usize, c: i64) -> Self {
        Self::new(ambient_n, c, vec![BigInt::one()])
    }

    pub fn ambient_n(&self) -> usize {
        self.ambient_n
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.numerator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// Numerator as a dense list starting at degree `from` (which must not
    /// exceed the shift).
    fn dense_from(&self, from: i64, len: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); len];
        let off = (self.shift - from) as usize;
        for (i, c) in self.numerator.iter().enumerate() {
            out[off + i] += c;
        }
        out
    }

    fn combine(&self, other: &HilbertSeries, sign: i64) -> HilbertSeries {
        assert_eq!(self.ambient_n, other.ambient_n, "series over different rings");
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.scale(&BigInt::from(sign));
        }
        let lo = self.shift.min(other.shift);
        let hi = (self.shift + self.numerator.len() as i64).max(other.shift + other.numerator.len() as i64);
        let len = (hi - lo) as usize;
        let a = self.dense_from(lo, len);
        let b = other.dense_from(lo, len);
        let s = BigInt::from(sign);
        let sum = a.into_iter().zip(b).map(|(x, y)| x + &s * y).collect();
        HilbertSeries::new(self.ambient_n, lo, sum)
    }

    pub fn add(&self, other: &HilbertSeries) -> HilbertSeries {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &HilbertSeries) -> HilbertSeries {
        self.combine(other, -1)
    }

    pub fn scale(&self, c: &BigInt) -> HilbertSeries {
        HilbertSeries::new(
            self.ambient_n,
            self.shift,
            self.numerator.iter().map(|x| x * c).collect(),
        )
    }

    /// Series of the twist `M(-c)`.
    pub fn twist(&self, c: i64) -> HilbertSeries {
        HilbertSeries::new(self.ambient_n, self.shift + c, self.numerator.clone())
    }

    /// `H(M, k)`, the coefficient of `t^k`.
    pub fn coefficient(&self, k: i64) -> BigInt {
        self.iterated_coefficient(0, k)
    }

    /// `H_i(M, k) = Σ_{j ≤ k} H_{i-1}(M, j)`, the coefficient of `t^k` in
    /// the series divided by `(1 - t)^i`.
    pub fn iterated_coefficient(&self, i: usize, k: i64) -> BigInt {
        let n = self.ambient_n + i;
        let mut acc = BigInt::zero();
        for (a, c) in self.numerator.iter().enumerate() {
            let m = k - self.shift - a as i64;
            if m < 0 {
                break;
            }
            acc += c * inverse_power_coefficient(n, m);
        }
        acc
    }

    /// Numerator over `(1 - t)^n` multiplied out to the first `len` series
    /// coefficients starting at degree 0.
    pub fn coefficients(&self, len: usize) -> Vec<BigInt> {
        (0..len as i64).map(|k| self.coefficient(k)).collect()
    }

    /// Reduced form `(d, t^shift Q(t))` with `Q(1) != 0`; `d = -1` for the
    /// zero series.
    pub fn reduced(&self) -> (i64, Vec<BigInt>) {
        if self.is_zero() {
            return (-1, Vec::new());
        }
        let mut q = self.numerator.clone();
        let mut d = self.ambient_n as i64;
        while q.iter().sum::<BigInt>().is_zero() {
            q = divide_by_one_minus_t(&q);
            d -= 1;
        }
        (d, q)
    }

    /// Krull dimension: the pole order at `t = 1`; -1 for the zero module.
    pub fn dimension(&self) -> i64 {
        self.reduced().0
    }

    pub fn h_vector(&self) -> HVector {
        let (_, q) = self.reduced();
        HVector::new(self.shift, q)
    }

    /// Multiplicity `e_0 = Q(1)`; zero for the zero module.
    pub fn multiplicity(&self) -> BigInt {
        self.reduced().1.iter().sum()
    }
}

/// Coefficient of `t^m` in `1/(1-t)^n`.
fn inverse_power_coefficient(n: usize, m: i64) -> BigInt {
    if m < 0 {
        return BigInt::zero();
    }
    if n == 0 {
        return if m == 0 { BigInt::one() } else { BigInt::zero() };
    }
    generalized_binomial(m + n as i64 - 1, n as u32 - 1)
}

/// Exact division by `1 - t`; the caller guarantees `q(1) = 0`.
fn divide_by_one_minus_t(q: &[BigInt]) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(q.len().saturating_sub(1));
    let mut acc = BigInt::zero();
    for c in &q[..q.len() - 1] {
        acc += c;
        out.push(acc.clone());
    }
    out
}

/// Coefficient vector of the reduced numerator, with `offset` the degree of
/// the first entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HVector {
    pub offset: i64,
    pub entries: Vec<BigInt>,
}

impl HVector {
    /// Trailing zeros are dropped; leading zeros are kept so that the
    /// entry index stays meaningful.
    pub fn new(offset: i64, mut entries: Vec<BigInt>) -> Self {
        while entries.last().is_some_and(Zero::is_zero) {
            entries.pop();
        }
        HVector { offset, entries }
    }

    pub fn from_ints(offset: i64, entries: &[i64]) -> Self {
        Self::new(offset, entries.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `s`, the index of the last entry, or -1 when empty.
    pub fn top(&self) -> i64 {
        self.entries.len() as i64 - 1
    }
}

/// `e_j = Σ_i C(i, j) h_i`, with `i` the absolute degree of each entry.
pub fn e_from_h(h: &HVector, j: u32) -> BigInt {
    h.entries
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(idx, c)| c * generalized_binomial(h.offset + idx as i64, j))
        .sum()
}

/// Inverse transform `h_i = Σ_{j=i}^{s} (-1)^{j-i} C(j, i) e_j`, taken for
/// every `i = 0..s` including `i = 0`.
pub fn h_from_e(e: &[BigInt], s: usize) -> HVector {
    let entries = (0..=s)
        .map(|i| {
            (i..=s)
                .map(|j| {
                    let term = generalized_binomial(j as i64, i as u32) * e.get(j).cloned().unwrap_or_default();
                    if (j - i) % 2 == 0 {
                        term
                    } else {
                        -term
                    }
                })
                .sum()
        })
        .collect();
    HVector::new(0, entries)
}

type Memo = HashMap<Vec<ExponentVector>, Vec<BigInt>>;

/// Hilbert series of `S/I`.
///
/// Splits on a pivot variable `x`: `HS(S/I) = t · HS(S/(I : x)) + HS(S/(I + (x)))`.
/// The recursion terminates once every generator is a pure power.
pub fn hilbert_series_quotient(ideal: &MonomialIdeal) -> HilbertSeries {
    let mut memo = Memo::new();
    let num = quotient_numerator(ideal, &mut memo);
    HilbertSeries::new(ideal.ambient_n(), 0, num)
}

/// Hilbert series of the ideal itself, `HS(S) - HS(S/I)`.
pub fn hilbert_series_ideal(ideal: &MonomialIdeal) -> HilbertSeries {
    HilbertSeries::free(ideal.ambient_n(), 0).sub(&hilbert_series_quotient(ideal))
}

fn quotient_numerator(ideal: &MonomialIdeal, memo: &mut Memo) -> Vec<BigInt> {
    if ideal.is_zero() {
        return vec![BigInt::one()];
    }
    if ideal.is_unit() {
        return Vec::new();
    }
    let gens = ideal.generators();
    if gens.iter().all(|g| g.support_size() == 1) {
        // pure powers of distinct variables: product of (1 - t^a)
        return gens.iter().fold(vec![BigInt::one()], |acc, g| {
            mul_one_minus_t_pow(&acc, g.degree() as usize)
        });
    }
    if let Some(hit) = memo.get(gens) {
        return hit.clone();
    }

    let pivot = choose_pivot(ideal);
    let colon = quotient_numerator(&ideal.colon_variable(pivot), memo);
    let sum = quotient_numerator(&ideal.add_variable(pivot), memo);

    let len = sum.len().max(colon.len() + 1);
    let mut out = vec![BigInt::zero(); len];
    for (i, c) in sum.into_iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in colon.into_iter().enumerate() {
        out[i + 1] += c;
    }
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    memo.insert(gens.to_vec(), out.clone());
    out
}

/// Variable with the highest total exponent among the generators, restricted
/// to variables occurring in some mixed (non pure-power) generator so that
/// both branches make progress.
fn choose_pivot(ideal: &MonomialIdeal) -> usize {
    let n = ideal.ambient_n();
    let mut in_mixed = vec![false; n];
    let mut occurrence = vec![0u64; n];
    for g in ideal.generators() {
        let mixed = g.support_size() > 1;
        for (v, &e) in g.as_slice().iter().enumerate() {
            occurrence[v] += e as u64;
            if mixed && e > 0 {
                in_mixed[v] = true;
            }
        }
    }
    (0..n)
        .filter(|&v| in_mixed[v])
        .max_by_key(|&v| (occurrence[v], std::cmp::Reverse(v)))
        .expect("a mixed generator exists")
}

fn mul_one_minus_t_pow(p: &[BigInt], a: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); p.len() + a];
    for (i, c) in p.iter().enumerate() {
        out[i] += c;
        out[i + a] -= c;
    }
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

/// Direct sum of the free modules `S(-c)` with the given multiplicities.
pub fn free_sum_series<'a, I>(ambient_n: usize, shifts: I) -> HilbertSeries
where
    I: IntoIterator<Item = (&'a i64, &'a u64)>,
{
    let pairs: Vec<(i64, u64)> = shifts.into_iter().map(|(&c, &m)| (c, m)).collect();
    let Some(lo) = pairs.iter().map(|p| p.0).min() else {
        return HilbertSeries::zero(ambient_n);
    };
    let hi = pairs.iter().map(|p| p.0).max().unwrap_or(lo);
    let mut num = vec![BigInt::zero(); (hi - lo + 1) as usize];
    for (c, m) in pairs {
        num[(c - lo) as usize] += BigInt::from(m);
    }
    HilbertSeries::new(ambient_n, lo, num)
}
