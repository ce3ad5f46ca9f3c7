//! Signed Stirling numbers of the first kind.

use num::bigint::BigInt;
use num::{One, Zero};

use crate::error::{Error, Result};

/// Row `n` of the signed Stirling triangle: the coefficients of
/// `x(x-1)⋯(x-n+1) = Σ_k s(n,k)·x^k`, indices `k = 0..=n`.
pub fn stirling_first_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for m in 0..n {
        let mut next = vec![BigInt::zero(); row.len() + 1];
        for (k, v) in row.iter().enumerate() {
            // s(m+1, k) = s(m, k-1) − m·s(m, k)
            next[k + 1] += v;
            next[k] -= v * BigInt::from(m);
        }
        row = next;
    }
    row
}

pub fn stirling_first_signed(n: usize, k: usize) -> Result<BigInt> {
    if k > n {
        return Err(Error::domain(format!(
            "stirling number s({n},{k}) requires k ≤ n"
        )));
    }
    Ok(stirling_first_row(n)[k].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_three() {
        // x(x−1)(x−2) = x³ − 3x² + 2x
        assert_eq!(stirling_first_signed(3, 3).unwrap(), BigInt::from(1));
        assert_eq!(stirling_first_signed(3, 2).unwrap(), BigInt::from(-3));
        assert_eq!(stirling_first_signed(3, 1).unwrap(), BigInt::from(2));
        assert_eq!(stirling_first_signed(3, 0).unwrap(), BigInt::from(0));
    }

    #[test]
    fn diagonal_is_one() {
        for n in 0..10 {
            assert_eq!(stirling_first_signed(n, n).unwrap(), BigInt::one());
        }
    }

    #[test]
    fn s_4_1() {
        // x(x−1)(x−2)(x−3) has linear coefficient −6.
        assert_eq!(stirling_first_signed(4, 1).unwrap(), BigInt::from(-6));
    }

    #[test]
    fn k_above_n_rejected() {
        assert!(stirling_first_signed(2, 3).is_err());
    }

    #[test]
    fn rows_reconstruct_falling_factorial() {
        // Evaluate both sides at a few integers.
        for n in 0..7usize {
            let row = stirling_first_row(n);
            for x in -3i64..=5 {
                let mut falling = BigInt::one();
                for i in 0..n as i64 {
                    falling *= BigInt::from(x - i);
                }
                let mut sum = BigInt::zero();
                let mut xp = BigInt::one();
                for c in &row {
                    sum += c * &xp;
                    xp *= BigInt::from(x);
                }
                assert_eq!(sum, falling, "n={n}, x={x}");
            }
        }
    }
}
