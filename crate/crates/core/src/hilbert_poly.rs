//! Iterated Hilbert polynomials and the higher iterated Hilbert coefficients.
//!
//! The `i`-th iterated Hilbert polynomial of a module of dimension `d` is
//! stored in the signed binomial basis
//!
//! ```text
//! P^i(x) = Σ_{j=0}^{D} (-1)^j e^i_j C(x + D - j, D - j),   D = d + i - 1,
//! ```
//!
//! so that the difference operator only drops the last coefficient.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::binomial::generalized_binomial;
use crate::poly::{rat, rat_big, QPoly};
use crate::series::HilbertSeries;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HilbertPolynomial {
    /// Which iterate. Negative after differencing `P^0`.
    pub order_i: i64,
    /// Krull dimension of the module, -1 for the zero module.
    pub dim_d: i64,
    /// `e^i_j` for `j = 0..=D`; empty for the zero module.
    pub coeffs_e: Vec<BigRational>,
}

impl HilbertPolynomial {
    /// `D = d + i - 1`, the degree of the basis' leading element.
    pub fn top(&self) -> i64 {
        self.dim_d + self.order_i - 1
    }

    pub fn zero(order_i: i64) -> Self {
        HilbertPolynomial {
            order_i,
            dim_d: -1,
            coeffs_e: Vec::new(),
        }
    }

    /// `e^i_j`, zero outside `0..=D`.
    pub fn coefficient(&self, j: usize) -> BigRational {
        self.coeffs_e.get(j).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Degree of the polynomial with the zero polynomial at -1.
    pub fn degree(&self) -> i64 {
        match self.coeffs_e.iter().position(|e| !e.is_zero()) {
            Some(j) => self.top() - j as i64,
            None => -1,
        }
    }

    /// Expansion in the monomial basis of `x`.
    pub fn to_qpoly(&self) -> QPoly {
        let top = self.top();
        self.coeffs_e
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .fold(QPoly::zero(), |acc, (j, e)| {
                let c = top - j as i64;
                let sign = if j % 2 == 0 { e.clone() } else { -e.clone() };
                &acc + &QPoly::binomial(c, c as u32).scale(&sign)
            })
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        let top = self.top();
        self.coeffs_e
            .iter()
            .enumerate()
            .map(|(j, e)| {
                let c = top - j as i64;
                let b = rat_big(generalized_binomial(x + c, c as u32));
                if j % 2 == 0 {
                    e * b
                } else {
                    -(e * b)
                }
            })
            .sum()
    }

    /// `ΔP^i = P^{i-1}`: each `C(x+c, c)` drops to `C(x+c-1, c-1)` and the
    /// constant term vanishes.
    pub fn delta(&self) -> HilbertPolynomial {
        let mut coeffs_e = self.coeffs_e.clone();
        coeffs_e.pop();
        HilbertPolynomial {
            order_i: self.order_i - 1,
            dim_d: self.dim_d,
            coeffs_e,
        }
    }
}

/// The `i`-th iterated Hilbert polynomial: the Hilbert polynomial of the
/// series divided by `(1 - t)^i`, i.e. with denominator exponent `d + i`.
pub fn hilbert_polynomial(hs: &HilbertSeries, i: u32) -> HilbertPolynomial {
    let h = hs.h_vector();
    let d = hs.dimension();
    if h.is_empty() {
        return HilbertPolynomial::zero(i as i64);
    }
    let top = d + i as i64 - 1;
    let coeffs_e = (0..=top.max(-1))
        .map(|j| rat_big(crate::series::e_from_h(&h, j as u32)))
        .collect();
    HilbertPolynomial {
        order_i: i as i64,
        dim_d: d,
        coeffs_e,
    }
}

/// `e^i_j = (-1)^j (Δ^{D-j} P^i)(-1)` for `j = 0..=D`, computed from the
/// monomial expansion rather than from the stored coefficients.
pub fn extract_coefficients(p: &HilbertPolynomial) -> Vec<BigRational> {
    let top = p.top();
    if top < 0 {
        return Vec::new();
    }
    let q = p.to_qpoly();
    let minus_one = rat(-1);
    let mut diffs = Vec::with_capacity(top as usize + 1);
    let mut cur = q;
    for _ in 0..=top {
        diffs.push(cur.eval(&minus_one));
        cur = cur.delta();
    }
    // diffs[r] = (Δ^r P)(-1); e_j uses r = D - j
    (0..=top as usize)
        .map(|j| {
            let v = diffs[top as usize - j].clone();
            if j % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .collect()
}

/// `e^i_j(M)` for all `i <= max_i` and `j <= d + i - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientTable {
    pub dim_d: i64,
    pub entries: BTreeMap<(u32, u32), BigRational>,
}

impl CoefficientTable {
    pub fn from_series(hs: &HilbertSeries, max_i: u32) -> Self {
        let mut entries = BTreeMap::new();
        let dim_d = hs.dimension();
        for i in 0..=max_i {
            let p = hilbert_polynomial(hs, i);
            for (j, e) in p.coeffs_e.iter().enumerate() {
                entries.insert((i, j as u32), e.clone());
            }
        }
        CoefficientTable { dim_d, entries }
    }

    /// Zero outside the defined range, matching the convention that
    /// coefficients beyond `d + i - 1` vanish.
    pub fn get(&self, i: u32, j: u32) -> BigRational {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_defined(&self, i: u32, j: u32) -> bool {
        (j as i64) < self.dim_d + i as i64
    }

    /// Flattened `e_j(M)`: `e^0_j` for `j < d` and `e^{j-d+1}_j` beyond.
    /// Requires the table to reach far enough in `i`.
    pub fn flattened(&self, j: u32) -> Option<BigRational> {
        let i = (j as i64 - self.dim_d + 1).max(0) as u32;
        self.entries.get(&(i, j)).cloned()
    }
}

/// `e_j(M)` directly from the h-vector, for every `j`.
pub fn flattened_coefficient(hs: &HilbertSeries, j: u32) -> BigInt {
    crate::series::e_from_h(&hs.h_vector(), j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::{ExponentVector, MonomialIdeal};
    use crate::series::{hilbert_series_quotient, HilbertSeries};

    fn ri(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&c| rat(c)).collect()
    }

    #[test]
    fn free_module_polynomials() {
        // P^i_{S(-c)}(x) = C(x - c + n + i - 1, n + i - 1)
        for n in 1..=3usize {
            for c in -3..=5i64 {
                for i in 0..=2u32 {
                    let p = hilbert_polynomial(&HilbertSeries::free(n, c), i);
                    let top = (n as i64) + i as i64 - 1;
                    assert_eq!(p.to_qpoly(), QPoly::binomial(top - c, top as u32));
                }
            }
        }
    }

    #[test]
    fn polynomial_of_s_in_two_variables() {
        let p = hilbert_polynomial(&HilbertSeries::free(2, 0), 0);
        assert_eq!(p.to_qpoly(), QPoly::from_ints(&[1, 1]));
        assert_eq!(extract_coefficients(&p)[0], rat(1));
    }

    #[test]
    fn quotient_polynomial_is_constant() {
        let i =
            MonomialIdeal::minimalize(2, [ExponentVector::new(vec![2, 0]), ExponentVector::new(vec![1, 1])]).unwrap();
        let hs = hilbert_series_quotient(&i);
        let p = hilbert_polynomial(&hs, 0);
        assert_eq!(p.to_qpoly(), QPoly::from_ints(&[1]));
        for k in 2..10 {
            assert_eq!(p.eval_int(k), rat_big(hs.coefficient(k)));
        }
    }

    #[test]
    fn delta_steps_down_one_iterate() {
        let i =
            MonomialIdeal::minimalize(2, [ExponentVector::new(vec![2, 0]), ExponentVector::new(vec![1, 1])]).unwrap();
        let hs = hilbert_series_quotient(&i);
        let p2 = hilbert_polynomial(&hs, 2);
        assert_eq!(p2.delta(), hilbert_polynomial(&hs, 1));
        assert_eq!(p2.to_qpoly().delta(), hilbert_polynomial(&hs, 1).to_qpoly());
        assert_eq!(p2.delta().delta(), hilbert_polynomial(&hs, 0));
    }

    #[test]
    fn free_module_coefficients() {
        for c in -5..=10i64 {
            for i in 0..=2u32 {
                let p = hilbert_polynomial(&HilbertSeries::free(2, c), i);
                let e = extract_coefficients(&p);
                for (j, v) in e.iter().enumerate() {
                    assert_eq!(*v, rat_big(generalized_binomial(c, j as u32)));
                }
            }
        }
        let p = hilbert_polynomial(&HilbertSeries::free(2, 2), 1);
        assert_eq!(extract_coefficients(&p)[2], rat(1));
        assert!(extract_coefficients(&hilbert_polynomial(&HilbertSeries::free(2, 2), 2))[3].is_zero());
    }

    #[test]
    fn zero_module() {
        let p = hilbert_polynomial(&HilbertSeries::zero(2), 1);
        assert_eq!(p.degree(), -1);
        assert!(p.to_qpoly().is_zero());
        assert!(extract_coefficients(&p).is_empty());
    }

    #[test]
    fn table_and_flattening() {
        let hs = HilbertSeries::from_ints(2, 0, &[1, 2, 1]);
        let t = CoefficientTable::from_series(&hs, 2);
        assert_eq!(t.dim_d, 2);
        assert_eq!(t.get(0, 0), rat(4));
        assert_eq!(t.get(0, 1), rat(4));
        assert_eq!(t.get(0, 2), rat(0));
        assert!(!t.is_defined(0, 2));
        assert_eq!(t.get(1, 2), rat(1));
        assert_eq!(t.flattened(2), Some(rat(1)));
        assert_eq!(
            (0..3)
                .map(|j| rat_big(flattened_coefficient(&hs, j)))
                .collect::<Vec<_>>(),
            ri(&[4, 4, 1])
        );
    }
}
