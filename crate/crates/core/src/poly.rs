//! Exact univariate polynomials over `Q`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_big(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

/// `p/q` in lowest terms, or `p` for integers.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(BigRational::new(p, q))
            }
        }
        None => s.trim().parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Polynomial in one variable with rational coefficients, lowest degree
/// first. Trailing zeros are always trimmed, so the zero polynomial has an
/// empty coefficient list and degree -1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn x() -> Self {
        Self::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with -1 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&rat(x))
    }

    pub fn scale(&self, c: &BigRational) -> QPoly {
        QPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `P(x + c)`.
    pub fn translate(&self, c: &BigRational) -> QPoly {
        // Taylor shift by repeated synthetic division.
        let mut a = self.coeffs.clone();
        let d = a.len();
        for i in 0..d {
            for j in (i..d.saturating_sub(1)).rev() {
                let t = &a[j + 1] * c;
                a[j] += t;
            }
        }
        QPoly::from_coeffs(a)
    }

    /// Backward difference `(ΔP)(x) = P(x) - P(x - 1)`.
    pub fn delta(&self) -> QPoly {
        self - &self.translate(&rat(-1))
    }

    /// Iterated difference `Δ^r P`.
    pub fn delta_pow(&self, r: usize) -> QPoly {
        let mut p = self.clone();
        for _ in 0..r {
            if p.is_zero() {
                break;
            }
            p = p.delta();
        }
        p
    }

    /// The polynomial `C(x + shift, d) = (x+shift)(x+shift-1)...(x+shift-d+1) / d!`.
    pub fn binomial(shift: i64, d: u32) -> QPoly {
        let mut p = QPoly::constant(BigRational::one());
        let mut fact = BigInt::one();
        for r in 0..d as i64 {
            p = &p * &QPoly::from_coeffs(vec![rat(shift - r), BigRational::one()]);
            fact *= BigInt::from(r + 1);
        }
        p.scale(&BigRational::new(BigInt::one(), fact))
    }

    /// Interpolating polynomial through `(start + r, values[r])` built from
    /// the Newton forward-difference table.
    pub fn newton_interpolate(start: i64, values: &[BigRational]) -> QPoly {
        let mut row: Vec<BigRational> = values.to_vec();
        let mut out = QPoly::zero();
        for r in 0..values.len() {
            if !row[0].is_zero() {
                out = &out + &QPoly::binomial(-start, r as u32).scale(&row[0]);
            }
            row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        out
    }

    /// Closed form of `F(k) = Σ_{j=0}^{k} P(j)`, of degree `deg P + 1`.
    ///
    /// Writes `P = Σ_c b_c C(x+c, c)` with `b_c = (Δ^c P)(-1)` and lifts each
    /// basis element to `C(k+c+1, c+1)`.
    pub fn power_sum(&self) -> QPoly {
        let mut out = QPoly::zero();
        let mut d = self.clone();
        let minus_one = rat(-1);
        for c in 0..=self.degree().max(-1) + 1 {
            if d.is_zero() {
                break;
            }
            let b = d.eval(&minus_one);
            if !b.is_zero() {
                out = &out + &QPoly::binomial(c + 1, (c + 1) as u32).scale(&b);
            }
            d = d.delta();
        }
        out
    }

    pub fn is_integer_valued_on(&self, points: impl IntoIterator<Item = i64>) -> bool {
        points.into_iter().all(|k| self.eval_int(k).is_integer())
    }
}

impl Add<&QPoly> for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = BigRational::zero();
        QPoly::from_coeffs(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + rhs.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }
}

impl Sub<&QPoly> for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self + &(-rhs)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul<&QPoly> for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(out)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{}", format_rational(&mag))?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}k", if show_mag { "*" } else { "" })?,
                _ => write!(f, "{}k^{i}", if show_mag { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}
