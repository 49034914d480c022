//! Wire formats. Rationals travel as strings `"p/q"` in lowest terms;
//! integers that do not fit in `i64` travel as decimal strings.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::asymptotics::{FitOutcome, KPolynomial, ScanResult, Verdict};
use crate::error::{Error, Result};
use crate::hilbert_poly::HilbertPolynomial;
use crate::koszul::BettiTable;
use crate::poly::{format_rational, parse_rational};
use crate::series::{HVector, HilbertSeries};

fn int_value(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(i) => Value::from(i),
        None => Value::from(v.to_string()),
    }
}

fn value_int(v: &Value) -> Result<BigInt> {
    let bad = || Error::InvalidArgument(format!("expected an integer, got {v}"));
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(bad),
        Value::String(s) => s.parse().map_err(|_| bad()),
        _ => Err(bad()),
    }
}

fn parse_rat(s: &str) -> Result<BigRational> {
    parse_rational(s).ok_or_else(|| Error::InvalidArgument(format!("bad rational {s:?}")))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub n: usize,
    pub shift: i64,
    pub numerator: Vec<Value>,
}

impl From<&HilbertSeries> for SeriesJson {
    fn from(hs: &HilbertSeries) -> Self {
        SeriesJson {
            n: hs.ambient_n(),
            shift: hs.shift(),
            numerator: hs.numerator().iter().map(int_value).collect(),
        }
    }
}

impl SeriesJson {
    pub fn to_series(&self) -> Result<HilbertSeries> {
        let num = self.numerator.iter().map(value_int).collect::<Result<Vec<_>>>()?;
        Ok(HilbertSeries::new(self.n, self.shift, num))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HVectorJson {
    pub offset: i64,
    pub h: Vec<Value>,
}

impl From<&HVector> for HVectorJson {
    fn from(h: &HVector) -> Self {
        HVectorJson {
            offset: h.offset,
            h: h.entries.iter().map(int_value).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub i: i64,
    pub d: i64,
    pub e: Vec<String>,
}

impl From<&HilbertPolynomial> for PolynomialJson {
    fn from(p: &HilbertPolynomial) -> Self {
        PolynomialJson {
            i: p.order_i,
            d: p.dim_d,
            e: p.coeffs_e.iter().map(format_rational).collect(),
        }
    }
}

impl PolynomialJson {
    pub fn to_polynomial(&self) -> Result<HilbertPolynomial> {
        Ok(HilbertPolynomial {
            order_i: self.i,
            dim_d: self.d,
            coeffs_e: self.e.iter().map(|s| parse_rat(s)).collect::<Result<_>>()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub bound: String,
    pub value: i64,
    pub deg: i64,
    pub pass: bool,
}

impl From<&Verdict> for VerdictJson {
    fn from(v: &Verdict) -> Self {
        VerdictJson {
            bound: v.bound.clone(),
            value: v.value,
            deg: v.deg,
            pass: v.pass,
        }
    }
}

/// Fitted polynomial in `k`; `coeffs` are listed from the constant term up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FitJson {
    pub coeffs: Vec<String>,
    pub stable_from: i64,
    pub verdicts: Vec<VerdictJson>,
}

impl From<&KPolynomial> for FitJson {
    fn from(k: &KPolynomial) -> Self {
        FitJson {
            coeffs: k.poly.coeffs().iter().map(format_rational).collect(),
            stable_from: k.stable_from,
            verdicts: k.verdicts.iter().map(VerdictJson::from).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanJson {
    pub i: u32,
    pub j: u32,
    pub k: Vec<i64>,
    pub e: Vec<String>,
    pub dim: Vec<i64>,
    pub fit: Option<FitJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncated: Option<String>,
}

impl ScanJson {
    pub fn new(scan: &ScanResult, fit: &FitOutcome) -> Self {
        ScanJson {
            i: scan.i,
            j: scan.j,
            k: scan.ks().collect(),
            e: scan.values.iter().map(format_rational).collect(),
            dim: scan.dims.clone(),
            fit: fit.stable().map(FitJson::from),
            truncated: scan.truncated.clone(),
        }
    }
}

/// `k,e,dim` rows with a header line.
pub fn scan_csv_rows(scan: &ScanResult) -> Vec<[String; 3]> {
    scan.ks()
        .zip(&scan.values)
        .zip(&scan.dims)
        .map(|((k, e), d)| [k.to_string(), format_rational(e), d.to_string()])
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiJson {
    pub k: u32,
    pub rows: BTreeMap<usize, BTreeMap<u32, u64>>,
}

impl From<&BettiTable> for BettiJson {
    fn from(t: &BettiTable) -> Self {
        let mut rows: BTreeMap<usize, BTreeMap<u32, u64>> = BTreeMap::new();
        for (&(l, deg), &b) in &t.entries {
            rows.entry(l).or_default().insert(deg, b);
        }
        BettiJson { k: t.k, rows }
    }
}

impl BettiJson {
    pub fn to_table(&self) -> BettiTable {
        let entries = self
            .rows
            .iter()
            .flat_map(|(&l, row)| row.iter().map(move |(&t, &b)| ((l, t), b)))
            .filter(|(_, b)| *b > 0)
            .collect();
        BettiTable { k: self.k, entries }
    }
}

/// `(l, t, beta)` rows.
pub fn betti_csv_rows(t: &BettiTable) -> Vec<[String; 3]> {
    t.entries
        .iter()
        .map(|(&(l, deg), &b)| [l.to_string(), deg.to_string(), b.to_string()])
        .collect()
}
