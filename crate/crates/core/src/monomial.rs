//! Monomials and monomial ideals of `S = K[x_1, ..., x_n]`.

use std::fmt;

use crate::compositions::{weak_composition_count, weak_compositions};
use crate::error::{Error, Result};

pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// Resource guards shared by every enumerating operation. Exceeding a cap is
/// an error, never a silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub enumeration_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

impl Limits {
    pub fn with_cap(enumeration_cap: u64) -> Self {
        Limits { enumeration_cap }
    }

    pub fn check(&self, requested: u128) -> Result<()> {
        if requested > self.enumeration_cap as u128 {
            Err(Error::EnumerationCap {
                requested,
                cap: self.enumeration_cap,
            })
        } else {
            Ok(())
        }
    }
}

/// Exponent vector of a monomial; one entry per variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exponents: Vec<u32>) -> Self {
        ExponentVector(exponents)
    }

    pub fn zero(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    /// The variable `x_v` itself.
    pub fn variable(n: usize, v: usize) -> Self {
        let mut e = vec![0; n];
        e[v] = 1;
        ExponentVector(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn lcm(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// Number of variables with a positive exponent.
    pub fn support_size(&self) -> usize {
        self.0.iter().filter(|&&e| e > 0).count()
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

impl std::ops::Index<usize> for ExponentVector {
    type Output = u32;
    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A monomial ideal, always held by its minimal generators. The zero ideal
/// has no generators; the unit ideal is generated by the all-zeros vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    ambient_n: usize,
    generators: Vec<ExponentVector>,
}

impl MonomialIdeal {
    pub fn zero(ambient_n: usize) -> Self {
        MonomialIdeal {
            ambient_n,
            generators: Vec::new(),
        }
    }

    pub fn unit(ambient_n: usize) -> Self {
        MonomialIdeal {
            ambient_n,
            generators: vec![ExponentVector::zero(ambient_n)],
        }
    }

    /// The graded maximal ideal `(x_1, ..., x_n)`.
    pub fn maximal(ambient_n: usize) -> Self {
        let gens = (0..ambient_n).map(|v| ExponentVector::variable(ambient_n, v)).collect();
        Self::from_sorted_minimal(ambient_n, gens)
    }

    /// Minimal generating set of the ideal generated by `gens`.
    pub fn minimalize<I>(ambient_n: usize, gens: I) -> Result<Self>
    where
        I: IntoIterator<Item = ExponentVector>,
    {
        let mut all: Vec<ExponentVector> = Vec::new();
        for g in gens {
            if g.len() != ambient_n {
                return Err(Error::DimensionMismatch {
                    expected: ambient_n,
                    found: g.len(),
                });
            }
            all.push(g);
        }
        Ok(Self::minimalize_unchecked(ambient_n, all))
    }

    pub(crate) fn minimalize_unchecked(ambient_n: usize, mut all: Vec<ExponentVector>) -> Self {
        all.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
        all.dedup();
        let mut kept: Vec<ExponentVector> = Vec::new();
        for g in all {
            // a proper divisor has strictly smaller degree, so it is already kept
            if !kept.iter().any(|h| h.divides(&g)) {
                kept.push(g);
            }
        }
        Self::from_sorted_minimal(ambient_n, kept)
    }

    fn from_sorted_minimal(ambient_n: usize, generators: Vec<ExponentVector>) -> Self {
        MonomialIdeal { ambient_n, generators }
    }

    pub fn ambient_n(&self) -> usize {
        self.ambient_n
    }

    /// Minimal generators ordered by degree, then lexicographically.
    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    /// `ν(I)`, the number of minimal generators.
    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].degree() == 0
    }

    /// True iff some generator divides `m`.
    pub fn contains(&self, m: &ExponentVector) -> Result<bool> {
        if m.len() != self.ambient_n {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_n,
                found: m.len(),
            });
        }
        Ok(self.generators.iter().any(|g| g.divides(m)))
    }

    pub(crate) fn contains_unchecked(&self, m: &ExponentVector) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    pub fn generator_degrees(&self) -> Vec<u32> {
        self.generators.iter().map(ExponentVector::degree).collect()
    }

    /// Some(p) when every minimal generator has degree p.
    pub fn common_degree(&self) -> Option<u32> {
        let first = self.generators.first()?.degree();
        self.generators.iter().all(|g| g.degree() == first).then_some(first)
    }

    pub fn is_equigenerated(&self) -> bool {
        self.common_degree().is_some()
    }

    /// Total degree of the lcm of all minimal generators.
    pub fn lcm_degree(&self) -> Result<u32> {
        let first = self.generators.first().ok_or(Error::ZeroIdeal)?;
        let lcm = self.generators[1..].iter().fold(first.clone(), |acc, g| acc.lcm(g));
        Ok(lcm.degree())
    }

    /// Minimal generators of `I^k`: every multiset of `k` generators is
    /// multiplied out and the result minimalized. `I^0` is the unit ideal.
    pub fn power(&self, k: u32, limits: &Limits) -> Result<MonomialIdeal> {
        if k == 0 {
            return Ok(MonomialIdeal::unit(self.ambient_n));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let nu = self.generators.len();
        limits.check(weak_composition_count(k as i64, nu))?;
        let products = weak_compositions(k as i64, nu).map(|mult| {
            let mut e = vec![0u32; self.ambient_n];
            for (g, &c) in self.generators.iter().zip(&mult) {
                if c > 0 {
                    for (slot, &x) in e.iter_mut().zip(g.as_slice()) {
                        *slot += c * x;
                    }
                }
            }
            ExponentVector(e)
        });
        Ok(Self::minimalize_unchecked(self.ambient_n, products.collect()))
    }

    /// Product ideal `I J`.
    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        if other.ambient_n != self.ambient_n {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_n,
                found: other.ambient_n,
            });
        }
        let gens = self
            .generators
            .iter()
            .flat_map(|a| other.generators.iter().map(move |b| a.mul(b)))
            .collect();
        Ok(Self::minimalize_unchecked(self.ambient_n, gens))
    }

    /// `I : x_v`.
    pub(crate) fn colon_variable(&self, v: usize) -> MonomialIdeal {
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let mut e = g.0.clone();
                e[v] = e[v].saturating_sub(1);
                ExponentVector(e)
            })
            .collect();
        Self::minimalize_unchecked(self.ambient_n, gens)
    }

    /// `I + (x_v)`.
    pub(crate) fn add_variable(&self, v: usize) -> MonomialIdeal {
        let mut gens: Vec<ExponentVector> = self.generators.iter().filter(|g| g[v] == 0).cloned().collect();
        gens.push(ExponentVector::variable(self.ambient_n, v));
        Self::minimalize_unchecked(self.ambient_n, gens)
    }
}

/// All degree-`t` monomials of `S`, in lexicographic order of exponent
/// vectors.
pub fn monomials_of_degree(n: usize, t: u32) -> impl Iterator<Item = ExponentVector> {
    weak_compositions(t as i64, n).map(ExponentVector)
}

/// Number of monomials of `S` of degree `t`.
pub fn monomial_count(n: usize, t: u32) -> u128 {
    weak_composition_count(t as i64, n)
}

/// `dim_K I_t` by exhaustive enumeration of the degree-`t` monomials.
pub fn count_ideal_monomials(ideal: &MonomialIdeal, t: u32, limits: &Limits) -> Result<u64> {
    limits.check(monomial_count(ideal.ambient_n, t))?;
    if ideal.is_zero() {
        return Ok(0);
    }
    Ok(monomials_of_degree(ideal.ambient_n, t)
        .filter(|m| ideal.contains_unchecked(m))
        .count() as u64)
}
