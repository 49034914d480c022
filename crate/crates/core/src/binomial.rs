//! Binomial coefficients with an arbitrary integer upper argument.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `C(c, j)` via the falling factorial `c (c-1) ... (c-j+1) / j!`, so that
/// negative `c` is allowed. `C(c, 0) = 1`.
pub fn generalized_binomial(c: i64, j: u32) -> BigInt {
    if j == 0 {
        return BigInt::one();
    }
    if c >= 0 && (c as u64) < j as u64 {
        return BigInt::zero();
    }
    // Each prefix product of r consecutive integers is divisible by r!.
    let mut acc = BigInt::one();
    for r in 0..j as i64 {
        acc *= BigInt::from(c - r);
        acc /= BigInt::from(r + 1);
    }
    acc
}

/// `C(a, b)` for non-negative arguments as `u128`, saturating at `u128::MAX`.
/// Used for resource guards where only the order of magnitude matters.
pub fn binomial_u128_saturating(a: u64, b: u64) -> u128 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for r in 0..b {
        let num = (a - r) as u128;
        acc = match acc.checked_mul(num) {
            Some(v) => v / (r as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}
