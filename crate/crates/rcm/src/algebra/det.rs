//! Fraction-free determinants of integer matrices.

use num::bigint::BigInt;
use num::{One, Zero};

/// Exact determinant by Bareiss fraction-free elimination.
///
/// Intermediate entries are minors of the input, so an `i128` fast path
/// covers every matrix this crate builds; the arbitrary-precision fallback
/// keeps the function total.
pub fn det_fraction_free(m: &[Vec<i64>]) -> BigInt {
    match det_i128(m) {
        Some(d) => BigInt::from(d),
        None => det_bigint(m),
    }
}

fn det_i128(m: &[Vec<i64>]) -> Option<i128> {
    let n = m.len();
    if n == 0 {
        return Some(1);
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|row| row.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let swap = (k + 1..n).find(|&i| a[i][k] != 0)?;
            // a zero pivot column would have returned above via find → None
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[k][k]
                    .checked_mul(a[i][j])?
                    .checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                a[i][j] = t / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    Some(sign * a[n - 1][n - 1])
}

fn det_bigint(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(swap) => {
                    a.swap(k, swap);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: cofactor expansion along the first row.
    fn det_cofactor(m: &[Vec<i64>]) -> BigInt {
        let n = m.len();
        if n == 0 {
            return BigInt::one();
        }
        if n == 1 {
            return BigInt::from(m[0][0]);
        }
        let mut acc = BigInt::zero();
        for j in 0..n {
            if m[0][j] == 0 {
                continue;
            }
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let term = BigInt::from(m[0][j]) * det_cofactor(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn single_edge_gram() {
        // Forced by the first cumulant λ²/√3 of the single-edge template.
        let m = vec![vec![2, -1], vec![-1, 2]];
        assert_eq!(det_fraction_free(&m), BigInt::from(3));
        assert_eq!(det_cofactor(&m), BigInt::from(3));
    }

    #[test]
    fn triangle_gram() {
        // Forced by the first cumulant λ³/4 of the triangle template.
        let m = vec![vec![3, -1, -1], vec![-1, 3, -1], vec![-1, -1, 3]];
        assert_eq!(det_fraction_free(&m), BigInt::from(16));
        assert_eq!(det_cofactor(&m), BigInt::from(16));
    }

    #[test]
    fn identity_is_one() {
        for k in 0..6 {
            let m: Vec<Vec<i64>> = (0..k)
                .map(|i| (0..k).map(|j| i64::from(i == j)).collect())
                .collect();
            assert_eq!(det_fraction_free(&m), BigInt::one());
        }
    }

    #[test]
    fn singular_matrix_is_zero() {
        // Laplacian of a path, no anchors.
        let m = vec![vec![1, -1, 0], vec![-1, 2, -1], vec![0, -1, 1]];
        assert_eq!(det_fraction_free(&m), BigInt::zero());
    }

    #[test]
    fn matches_cofactor_oracle_on_random_matrices() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..200 {
            let k = 1 + (next() % 5) as usize;
            let m: Vec<Vec<i64>> = (0..k)
                .map(|_| (0..k).map(|_| (next() % 11) as i64 - 5).collect())
                .collect();
            assert_eq!(det_fraction_free(&m), det_cofactor(&m));
        }
    }

    #[test]
    fn block_diagonal_multiplies() {
        let a = vec![vec![2, -1], vec![-1, 3]];
        let b = vec![vec![4, 1, 0], vec![1, 5, -2], vec![0, -2, 6]];
        let mut m = vec![vec![0i64; 5]; 5];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = a[i][j];
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                m[2 + i][2 + j] = b[i][j];
            }
        }
        assert_eq!(
            det_fraction_free(&m),
            det_fraction_free(&a) * det_fraction_free(&b)
        );
    }
}
