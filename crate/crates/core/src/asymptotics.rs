//! Behaviour of `e^i_j(M_k)` as a function of `k`: scans, exact polynomial
//! fits, stabilization of dimensions and the degree-bound verdicts.

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::bigraded::{strand_hilbert_series, BigradedAlgebra, BigradedShift};
use crate::error::{Error, Result};
use crate::hilbert_poly::hilbert_polynomial;
use crate::linalg::rank_of_rows;
use crate::monomial::{Limits, MonomialIdeal};
use crate::poly::QPoly;
use crate::series::{hilbert_series_ideal, HilbertSeries};

pub const DEFAULT_WINDOW: usize = 3;
pub const DEFAULT_K_MAX: u32 = 12;

/// Hilbert series of consecutive strands `M_k`, `k = k_start, k_start + 1, ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesScan {
    pub k_start: i64,
    pub series: Vec<HilbertSeries>,
    /// Reason the scan stopped before the requested `k_max`.
    pub truncated: Option<String>,
}

impl SeriesScan {
    pub fn dims(&self) -> Vec<i64> {
        self.series.iter().map(HilbertSeries::dimension).collect()
    }

    /// `e^i_j(M_k)` for every scanned `k`; zero where `j > dim M_k + i - 1`.
    pub fn coefficients(&self, i: u32, j: u32) -> ScanResult {
        let values = self
            .series
            .iter()
            .map(|hs| hilbert_polynomial(hs, i).coefficient(j as usize))
            .collect();
        ScanResult {
            i,
            j,
            k_start: self.k_start,
            values,
            dims: self.dims(),
            truncated: self.truncated.clone(),
        }
    }
}

/// Series of `I^k` for `k = 1..=k_max`. Computed in parallel and assembled
/// in `k` order; stops at the first `k` whose power breaches the cap.
pub fn scan_power_series(ideal: &MonomialIdeal, k_max: u32, limits: &Limits) -> Result<SeriesScan> {
    let results: Vec<Result<HilbertSeries>> = (1..=k_max)
        .into_par_iter()
        .map(|k| ideal.power(k, limits).map(|p| hilbert_series_ideal(&p)))
        .collect();
    let mut series = Vec::new();
    let mut truncated = None;
    for r in results {
        match r {
            Ok(hs) => series.push(hs),
            Err(e) if series.is_empty() => return Err(e),
            Err(e) => {
                truncated = Some(e.to_string());
                break;
            }
        }
    }
    Ok(SeriesScan {
        k_start: 1,
        series,
        truncated,
    })
}

/// Series of the strands `A(-a,-b)_k` for `k = max(b, 0)..=k_max`.
pub fn scan_strand_series(alg: &BigradedAlgebra, shift: BigradedShift, k_max: i64) -> SeriesScan {
    let k_start = shift.b.max(0);
    let series = (k_start..=k_max)
        .into_par_iter()
        .map(|k| strand_hilbert_series(alg, shift, k))
        .collect();
    SeriesScan {
        k_start,
        series,
        truncated: None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanResult {
    pub i: u32,
    pub j: u32,
    pub k_start: i64,
    pub values: Vec<BigRational>,
    /// Krull dimension of each `M_k` (-1 for the zero module).
    pub dims: Vec<i64>,
    pub truncated: Option<String>,
}

impl ScanResult {
    pub fn ks(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.values.len() as i64).map(move |r| self.k_start + r)
    }

    pub fn value_at(&self, k: i64) -> Option<&BigRational> {
        usize::try_from(k - self.k_start).ok().and_then(|r| self.values.get(r))
    }
}

pub fn scan_power_coefficients(
    ideal: &MonomialIdeal,
    i: u32,
    j: u32,
    k_max: u32,
    limits: &Limits,
) -> Result<ScanResult> {
    if k_max < 3 {
        return Err(Error::InvalidArgument(format!("k_max must be at least 3, got {k_max}")));
    }
    Ok(scan_power_series(ideal, k_max, limits)?.coefficients(i, j))
}

pub fn scan_strand_coefficients(alg: &BigradedAlgebra, shift: BigradedShift, i: u32, j: u32, k_max: i64) -> ScanResult {
    scan_strand_series(alg, shift, k_max).coefficients(i, j)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub bound: String,
    pub value: i64,
    pub deg: i64,
    pub pass: bool,
}

/// A polynomial in `k` that reproduces the scan from `stable_from` on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KPolynomial {
    pub poly: QPoly,
    pub stable_from: i64,
    pub window: usize,
    /// Scanned points beyond the interpolation support that agree with the
    /// polynomial.
    pub confirmations: usize,
    pub verdicts: Vec<Verdict>,
}

impl KPolynomial {
    pub fn degree(&self) -> i64 {
        self.poly.degree()
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FitOutcome {
    Stable(KPolynomial),
    /// No suffix of the scan carries a terminating difference table with
    /// enough confirming points.
    Unstable {
        window: usize,
    },
}

impl FitOutcome {
    pub fn stable(&self) -> Option<&KPolynomial> {
        match self {
            FitOutcome::Stable(k) => Some(k),
            FitOutcome::Unstable { .. } => None,
        }
    }

    pub fn stable_mut(&mut self) -> Option<&mut KPolynomial> {
        match self {
            FitOutcome::Stable(k) => Some(k),
            FitOutcome::Unstable { .. } => None,
        }
    }
}

/// Exact polynomial fit over the longest suffix of the scan on which the
/// forward-difference table terminates.
///
/// For a suffix of length `L`, the smallest `r` with `Δ^r ≡ 0` on the suffix
/// gives a polynomial of degree `r - 1` through the first `r` points; it is
/// accepted only when the remaining `L - r` points number at least `window`.
pub fn newton_fit(scan: &ScanResult, window: usize) -> Result<FitOutcome> {
    let len = scan.values.len();
    if len < window + 2 {
        return Err(Error::InsufficientData {
            needed: window + 2,
            got: len,
        });
    }
    for start in 0..len {
        let suffix = &scan.values[start..];
        let m = suffix.len();
        if m < window + 1 {
            break;
        }
        let mut row: Vec<BigRational> = suffix.to_vec();
        for r in 0..m {
            if m - r < window {
                break;
            }
            if row.iter().all(Zero::is_zero) {
                let k0 = scan.k_start + start as i64;
                let poly = QPoly::newton_interpolate(k0, &suffix[..r]);
                return Ok(FitOutcome::Stable(KPolynomial {
                    poly,
                    stable_from: k0,
                    window,
                    confirmations: m - r,
                    verdicts: Vec::new(),
                }));
            }
            row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
    }
    Ok(FitOutcome::Unstable { window })
}

/// What is known about the module family a fit came from.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BoundContext {
    pub i: u32,
    pub j: u32,
    /// Number of `y`-variables of the bigraded algebra.
    pub m: Option<i64>,
    /// Number of minimal generators of the ideal.
    pub nu: Option<i64>,
    /// Analytic spread, only for ideals generated in one degree.
    pub ell: Option<i64>,
    /// `dim M/𝔪M` for equal weights.
    pub fiber_dim: Option<i64>,
    /// Eventual dimension of `M_k`.
    pub ldim: Option<i64>,
}

impl BoundContext {
    /// Context for `e^i_j(I^k)`, read off the Rees algebra presented over
    /// `ν(I)` variables `y`.
    pub fn for_powers(ideal: &MonomialIdeal, i: u32, j: u32, ldim: Option<i64>) -> Self {
        let nu = ideal.num_generators() as i64;
        BoundContext {
            i,
            j,
            m: Some(nu),
            nu: Some(nu),
            ell: fiber_dimension(ideal).ok(),
            fiber_dim: None,
            ldim,
        }
    }
}

/// One verdict per applicable bound. When `j` lies beyond `ldim + i - 1`
/// only the vanishing clause applies.
pub fn verify_degree_bounds(fit: &KPolynomial, ctx: &BoundContext) -> Vec<Verdict> {
    let deg = fit.degree();
    let j = ctx.j as i64;
    let mut out = Vec::new();
    if let Some(ldim) = ctx.ldim {
        let top = ldim + ctx.i as i64 - 1;
        if j > top {
            out.push(Verdict {
                bound: "vanishing".into(),
                value: top,
                deg,
                pass: deg == -1,
            });
            return out;
        }
    }
    let mut push = |name: &str, base: Option<i64>| {
        if let Some(b) = base {
            let value = b + j - 1;
            out.push(Verdict {
                bound: name.into(),
                value,
                deg,
                pass: deg <= value,
            });
        }
    };
    push("m+j-1", ctx.m);
    push("nu+j-1", ctx.nu);
    push("ell+j-1", ctx.ell);
    push("fiber+j-1", ctx.fiber_dim);
    out
}

/// Fit and attach verdicts in one step.
pub fn fit_with_bounds(scan: &ScanResult, window: usize, ctx: &BoundContext) -> Result<FitOutcome> {
    let mut fit = newton_fit(scan, window)?;
    if let Some(k) = fit.stable_mut() {
        k.verdicts = verify_degree_bounds(k, ctx);
    }
    Ok(fit)
}

/// Dimension of the special fiber of an ideal generated in one degree: the
/// rank of its exponent matrix.
pub fn fiber_dimension(ideal: &MonomialIdeal) -> Result<i64> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if !ideal.is_equigenerated() {
        let mut degrees = ideal.generator_degrees();
        degrees.dedup();
        return Err(Error::NotEquigenerated { degrees });
    }
    let rows: Vec<Vec<i64>> = ideal
        .generators()
        .iter()
        .map(|g| g.as_slice().iter().map(|&e| e as i64).collect())
        .collect();
    Ok(rank_of_rows(&rows) as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stabilization {
    pub k0: i64,
    pub value: i64,
    /// False when the constant tail is shorter than the window.
    pub determined: bool,
}

/// Least `k0` with `dim M_k` constant on `[k0, k_end]`.
pub fn detect_stabilization(scan: &ScanResult, window: usize) -> Option<Stabilization> {
    let last = *scan.dims.last()?;
    let tail = scan.dims.iter().rev().take_while(|&&d| d == last).count();
    Some(Stabilization {
        k0: scan.k_start + (scan.dims.len() - tail) as i64,
        value: last,
        determined: tail >= window,
    })
}
