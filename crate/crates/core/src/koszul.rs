//! Graded Betti numbers of `I^k` as Koszul homology.
//!
//! `Tor_l^S(K, N)_t` is the homology at `∧^l S^n ⊗ N` of the Koszul complex on
//! `x_1, ..., x_n`, taken strand by strand in internal degree `t`. With the
//! convention `d(e_σ ⊗ v) = Σ_r (-1)^{r+1} e_{σ \ s_r} ⊗ x_{s_r} v` every
//! differential has entries in `{0, ±1}` and ranks are computed exactly.
//!
//! Strands are built in two independent ways. The default splits each degree
//! further by multidegree, where a strand has at most `2^n` basis elements;
//! the dense route builds the full degree-`t` matrices and is kept for
//! cross-checks.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::asymptotics::{fit_with_bounds, BoundContext, FitOutcome, ScanResult};
use crate::binomial::generalized_binomial;
use crate::compositions::weak_compositions;
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, RankEngine};
use crate::monomial::{monomial_count, monomials_of_degree, ExponentVector, Limits, MonomialIdeal};
use crate::poly::rat_big;
use crate::series::{hilbert_series_ideal, HilbertSeries};

/// Degree-`t` monomials of an ideal, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPieceBasis {
    pub degree: u32,
    pub basis: Vec<ExponentVector>,
}

pub fn graded_piece(ideal: &MonomialIdeal, t: u32, limits: &Limits) -> Result<GradedPieceBasis> {
    limits.check(monomial_count(ideal.ambient_n(), t))?;
    let basis = monomials_of_degree(ideal.ambient_n(), t)
        .filter(|m| ideal.contains_unchecked(m))
        .collect();
    Ok(GradedPieceBasis { degree: t, basis })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct KoszulOptions {
    pub engine: RankEngine,
    /// Degrees computed beyond the lcm truncation bound.
    pub extra_degrees: u32,
}

/// `β_{l,t}` for one module; only nonzero entries are stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BettiTable {
    pub k: u32,
    pub entries: BTreeMap<(usize, u32), u64>,
}

impl BettiTable {
    pub fn get(&self, l: usize, t: u32) -> u64 {
        self.entries.get(&(l, t)).copied().unwrap_or(0)
    }

    /// Row `l` as a map `t -> β_{l,t}`.
    pub fn row(&self, l: usize) -> BTreeMap<u32, u64> {
        self.entries
            .iter()
            .filter(|((ll, _), _)| *ll == l)
            .map(|((_, t), &b)| (*t, b))
            .collect()
    }

    pub fn total(&self, l: usize) -> u64 {
        self.row(l).values().sum()
    }

    pub fn max_l(&self) -> Option<usize> {
        self.entries.keys().map(|(l, _)| *l).max()
    }
}

/// All `l`-subsets of `0..n`, each ascending, in lexicographic order.
fn subsets(n: usize, l: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, l: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == l {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < l - cur.len() {
                break;
            }
            cur.push(v);
            go(v + 1, n, l, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, l, &mut Vec::new(), &mut out);
    out
}

fn sub_set(alpha: &[u32], sigma: &[usize]) -> Option<ExponentVector> {
    let mut e = alpha.to_vec();
    for &s in sigma {
        e[s] = e[s].checked_sub(1)?;
    }
    Some(ExponentVector::new(e))
}

/// Betti numbers in one multidegree `α`: basis of term `l` is every
/// `l`-subset `σ ⊆ supp α` with `x^{α - σ} ∈ N`.
fn multidegree_betti(ideal: &MonomialIdeal, alpha: &[u32], engine: RankEngine) -> Vec<u64> {
    let n = alpha.len();
    let support: Vec<usize> = (0..n).filter(|&v| alpha[v] > 0).collect();
    let bases: Vec<Vec<Vec<usize>>> = (0..=support.len())
        .map(|l| {
            subsets(support.len(), l)
                .into_iter()
                .map(|idx| idx.into_iter().map(|i| support[i]).collect::<Vec<usize>>())
                .filter(|sigma| sub_set(alpha, sigma).is_some_and(|m| ideal.contains_unchecked(&m)))
                .collect()
        })
        .collect();
    let ranks: Vec<usize> = (0..=support.len() + 1)
        .map(|l| {
            if l == 0 || l > support.len() {
                return 0;
            }
            let m = subset_differential(&bases[l], &bases[l - 1]);
            if m.rows() == 0 || m.cols() == 0 {
                0
            } else {
                m.rank(engine)
            }
        })
        .collect();
    (0..=n)
        .map(|l| {
            let dim = bases.get(l).map_or(0, Vec::len);
            (dim - ranks.get(l).copied().unwrap_or(0) - ranks.get(l + 1).copied().unwrap_or(0)) as u64
        })
        .collect()
}

/// Matrix of `d_l` restricted to subsets: rows index `codomain`, columns
/// `domain`.
fn subset_differential(domain: &[Vec<usize>], codomain: &[Vec<usize>]) -> IntMatrix {
    let index: HashMap<&Vec<usize>, usize> = codomain.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut m = IntMatrix::zeros(codomain.len(), domain.len());
    for (c, sigma) in domain.iter().enumerate() {
        for r in 0..sigma.len() {
            let mut face = sigma.clone();
            face.remove(r);
            if let Some(&row) = index.get(&face) {
                m.set(row, c, if r % 2 == 0 { 1 } else { -1 });
            }
        }
    }
    m
}

/// Betti table of the module `N` (an ideal) for all degrees up to
/// `lcm_degree(N) + extra_degrees`.
pub fn betti_table_of(module: &MonomialIdeal, k: u32, opts: &KoszulOptions, limits: &Limits) -> Result<BettiTable> {
    if module.is_zero() {
        return Ok(BettiTable {
            k,
            entries: BTreeMap::new(),
        });
    }
    let n = module.ambient_n();
    let bound = module.lcm_degree()? + opts.extra_degrees;
    let total: u128 = (0..=bound).map(|t| monomial_count(n, t)).sum();
    limits.check(total)?;

    let per_degree: Vec<Vec<(usize, u32, u64)>> = (0..=bound)
        .into_par_iter()
        .map(|t| {
            let mut acc = vec![0u64; n + 1];
            for alpha in weak_compositions(t as i64, n) {
                // nothing lives below the ideal
                if !module.contains_unchecked(&ExponentVector::new(alpha.clone())) {
                    continue;
                }
                for (l, b) in multidegree_betti(module, &alpha, opts.engine).into_iter().enumerate() {
                    acc[l] += b;
                }
            }
            acc.into_iter()
                .enumerate()
                .filter(|(_, b)| *b > 0)
                .map(|(l, b)| (l, t, b))
                .collect()
        })
        .collect();
    let entries = per_degree.into_iter().flatten().map(|(l, t, b)| ((l, t), b)).collect();
    Ok(BettiTable { k, entries })
}

/// `β_{l,t}(I^k)` for `l = 0..=n`.
pub fn betti_table(ideal: &MonomialIdeal, k: u32, opts: &KoszulOptions, limits: &Limits) -> Result<BettiTable> {
    if k == 0 {
        return Err(Error::InvalidArgument("betti_table needs k >= 1".into()));
    }
    let power = ideal.power(k, limits)?;
    betti_table_of(&power, k, opts, limits)
}

/// Nonzero `dim Tor_l(K, I^k)_t` by degree.
pub fn koszul_homology_dims(
    ideal: &MonomialIdeal,
    k: u32,
    l: usize,
    opts: &KoszulOptions,
    limits: &Limits,
) -> Result<BTreeMap<u32, u64>> {
    if l > ideal.ambient_n() {
        return Err(Error::InvalidArgument(format!(
            "l = {l} exceeds n = {}",
            ideal.ambient_n()
        )));
    }
    Ok(betti_table(ideal, k, opts, limits)?.row(l))
}

/// One degree-`t` strand of the Koszul complex with coefficients in `N`,
/// built densely.
#[derive(Debug, Clone)]
pub struct DenseStrand {
    pub degree: u32,
    /// Basis of term `l`: pairs `(σ, u)` with `|σ| = l`, `u ∈ N_{t-l}`.
    pub bases: Vec<Vec<(Vec<usize>, ExponentVector)>>,
    /// `differentials[l]` maps term `l` to term `l - 1`; index 0 is empty.
    pub differentials: Vec<IntMatrix>,
}

pub fn dense_strand(module: &MonomialIdeal, t: u32, limits: &Limits) -> Result<DenseStrand> {
    let n = module.ambient_n();
    let mut bases = Vec::with_capacity(n + 1);
    for l in 0..=n {
        let mut basis = Vec::new();
        if t as usize >= l {
            let piece = graded_piece(module, t - l as u32, limits)?;
            for sigma in subsets(n, l) {
                for u in &piece.basis {
                    basis.push((sigma.clone(), u.clone()));
                }
            }
        }
        limits.check(basis.len() as u128)?;
        bases.push(basis);
    }
    let mut differentials = vec![IntMatrix::zeros(0, bases[0].len())];
    for l in 1..=n {
        let index: HashMap<&(Vec<usize>, ExponentVector), usize> =
            bases[l - 1].iter().enumerate().map(|(i, b)| (b, i)).collect();
        let mut m = IntMatrix::zeros(bases[l - 1].len(), bases[l].len());
        for (c, (sigma, u)) in bases[l].iter().enumerate() {
            for r in 0..sigma.len() {
                let mut face = sigma.clone();
                let v = face.remove(r);
                let image = u.mul(&ExponentVector::variable(n, v));
                let row = index[&(face, image)];
                m.set(row, c, if r % 2 == 0 { 1 } else { -1 });
            }
        }
        differentials.push(m);
    }
    Ok(DenseStrand {
        degree: t,
        bases,
        differentials,
    })
}

impl DenseStrand {
    /// Homology dimensions `dim ker d_l - rank d_{l+1}` for each `l`.
    pub fn homology(&self, engine: RankEngine) -> Vec<u64> {
        let n = self.bases.len() - 1;
        let ranks: Vec<usize> = (0..=n + 1)
            .map(|l| {
                if l == 0 || l > n {
                    0
                } else {
                    self.differentials[l].rank(engine)
                }
            })
            .collect();
        (0..=n)
            .map(|l| (self.bases[l].len() - ranks[l] - ranks[l + 1]) as u64)
            .collect()
    }
}

/// Betti table through the dense degree strands.
pub fn betti_table_dense(module: &MonomialIdeal, k: u32, opts: &KoszulOptions, limits: &Limits) -> Result<BettiTable> {
    if module.is_zero() {
        return Ok(BettiTable::default());
    }
    let bound = module.lcm_degree()? + opts.extra_degrees;
    let mut entries = BTreeMap::new();
    for t in 0..=bound {
        let strand = dense_strand(module, t, limits)?;
        for (l, b) in strand.homology(opts.engine).into_iter().enumerate() {
            if b > 0 {
                entries.insert((l, t), b);
            }
        }
    }
    Ok(BettiTable { k, entries })
}

/// `dim (∧^l S^n ⊗ N)_t = C(n, l) dim N_{t-l}`.
pub fn koszul_term_dim(module_series: &HilbertSeries, l: usize, t: u32) -> BigInt {
    let n = module_series.ambient_n();
    generalized_binomial(n as i64, l as u32) * module_series.coefficient(t as i64 - l as i64)
}

/// Degrees `t <= bound` where `Σ_l (-1)^l β_{l,t}` differs from the
/// coefficient of `t^t` in `(1-t)^n HS(N)`.
pub fn euler_mismatches(table: &BettiTable, module_series: &HilbertSeries, bound: u32) -> Vec<u32> {
    let shift = module_series.shift();
    let num = module_series.numerator();
    (0..=bound)
        .filter(|&t| {
            let lhs: BigInt = table
                .entries
                .iter()
                .filter(|((_, tt), _)| *tt == t)
                .map(|((l, _), &b)| if l % 2 == 0 { BigInt::from(b) } else { -BigInt::from(b) })
                .sum();
            let idx = t as i64 - shift;
            let rhs = if idx >= 0 {
                num.get(idx as usize).cloned().unwrap_or_default()
            } else {
                BigInt::zero()
            };
            lhs != rhs
        })
        .collect()
}

/// `e^i_j(Tor_l)`, treating row `l` as the Hilbert function of a module of
/// finite length: `Σ_t β_{l,t} C(t, j)` for `j <= i - 1`, zero beyond.
pub fn tor_coefficients(table: &BettiTable, l: usize, i: u32, j: u32) -> BigRational {
    if j as i64 > i as i64 - 1 {
        return BigRational::zero();
    }
    let sum: BigInt = table
        .row(l)
        .into_iter()
        .map(|(t, b)| BigInt::from(b) * generalized_binomial(t as i64, j))
        .sum();
    rat_big(sum)
}

/// Krull dimension of `Tor_l`: 0 when nonzero, -1 otherwise.
fn tor_dim(table: &BettiTable, l: usize) -> i64 {
    if table.row(l).is_empty() {
        -1
    } else {
        0
    }
}

/// Betti tables of `I^k` for `k = 1..=k_max`, stopping at the first cap
/// breach.
pub fn scan_betti_tables(
    ideal: &MonomialIdeal,
    k_max: u32,
    opts: &KoszulOptions,
    limits: &Limits,
) -> Result<(Vec<BettiTable>, Option<String>)> {
    let mut tables = Vec::new();
    for k in 1..=k_max {
        match betti_table(ideal, k, opts, limits) {
            Ok(t) => tables.push(t),
            Err(e) if e.is_resource_cap() && !tables.is_empty() => return Ok((tables, Some(e.to_string()))),
            Err(e) => return Err(e),
        }
    }
    Ok((tables, None))
}

pub fn tor_scan(tables: &[BettiTable], truncated: Option<String>, l: usize, i: u32, j: u32) -> ScanResult {
    ScanResult {
        i,
        j,
        k_start: 1,
        values: tables.iter().map(|t| tor_coefficients(t, l, i, j)).collect(),
        dims: tables.iter().map(|t| tor_dim(t, l)).collect(),
        truncated,
    }
}

/// Bounds for `e^i_j(Tor_l(K, I^k))`: `ν(I) + j - 1` always, `ℓ(I) + j - 1`
/// for ideals generated in one degree, and vanishing beyond `i - 1`.
pub fn tor_bound_context(ideal: &MonomialIdeal, i: u32, j: u32) -> BoundContext {
    let mut ctx = BoundContext::for_powers(ideal, i, j, Some(0));
    ctx.m = None;
    ctx
}

/// Scan `e^i_j(Tor_l(K, I^k))` over `k`, fit, and attach verdicts.
#[allow(clippy::too_many_arguments)]
pub fn scan_betti(
    ideal: &MonomialIdeal,
    l: usize,
    i: u32,
    j: u32,
    k_max: u32,
    window: usize,
    opts: &KoszulOptions,
    limits: &Limits,
) -> Result<(ScanResult, FitOutcome)> {
    let (tables, truncated) = scan_betti_tables(ideal, k_max, opts, limits)?;
    let scan = tor_scan(&tables, truncated, l, i, j);
    let fit = fit_with_bounds(&scan, window, &tor_bound_context(ideal, i, j))?;
    Ok((scan, fit))
}

/// Euler-characteristic check of a table against the series of `I^k`.
pub fn euler_check(ideal: &MonomialIdeal, k: u32, table: &BettiTable, limits: &Limits) -> Result<Vec<u32>> {
    let power = ideal.power(k, limits)?;
    if power.is_zero() {
        return Ok(Vec::new());
    }
    let hs = hilbert_series_ideal(&power);
    Ok(euler_mismatches(table, &hs, power.lcm_degree()?))
}
