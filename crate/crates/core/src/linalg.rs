//! Exact rank computations.

use std::sync::Once;

use log::warn;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

pub const MODULAR_PRIME: u64 = 32003;

static MODULAR_WARNING: Once = Once::new();

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RankEngine {
    /// Gaussian elimination over the rationals.
    #[default]
    Exact,
    /// Elimination modulo 32003. The rank can only drop relative to the
    /// rational rank, so results are probabilistic.
    Modular,
}

/// Row-major matrix of small integers, which is all the Koszul differentials
/// and exponent matrices ever need as input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            m.data[r * cols..(r + 1) * cols].copy_from_slice(row);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn rank(&self, engine: RankEngine) -> usize {
        match engine {
            RankEngine::Exact => rank_rational(self),
            RankEngine::Modular => {
                MODULAR_WARNING.call_once(|| warn!("probabilistic rank: computed modulo {MODULAR_PRIME}"));
                rank_mod_p(self, MODULAR_PRIME)
            }
        }
    }
}

/// Rank over `Q` by Gaussian elimination with exact rational arithmetic.
pub fn rank_rational(m: &IntMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let mut a: Vec<Vec<BigRational>> = (0..m.rows)
        .map(|r| {
            (0..m.cols)
                .map(|c| BigRational::from_integer(BigInt::from(m.get(r, c))))
                .collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..m.cols {
        let Some(pivot) = (rank..m.rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        let (top, rest) = a.split_at_mut(rank + 1);
        let prow = &top[rank];
        let pval = prow[col].clone();
        for row in rest.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pval;
            for c in col..m.cols {
                if !prow[c].is_zero() {
                    let t = &factor * &prow[c];
                    row[c] -= t;
                }
            }
        }
        rank += 1;
        if rank == m.rows {
            break;
        }
    }
    rank
}

/// Rank over `F_p`.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let pm = p as i64;
    let mut a: Vec<Vec<u64>> = (0..m.rows)
        .map(|r| (0..m.cols).map(|c| m.get(r, c).rem_euclid(pm) as u64).collect())
        .collect();
    let mut rank = 0;
    for col in 0..m.cols {
        let Some(pivot) = (rank..m.rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, pivot);
        let inv = mod_inverse(a[rank][col], p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            if row[col] == 0 {
                continue;
            }
            let factor = row[col] * inv % p;
            for c in col..m.cols {
                row[c] = (row[c] + p - factor * prow[c] % p) % p;
            }
        }
        rank += 1;
        if rank == m.rows {
            break;
        }
    }
    rank
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Rank over `Q` of an integer matrix given row by row.
pub fn rank_of_rows(rows: &[Vec<i64>]) -> usize {
    rank_rational(&IntMatrix::from_rows(rows))
}
