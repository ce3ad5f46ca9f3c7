//! Squarefree decomposition of positive integers.
//!
//! Radicands produced by the engine are determinants of small integer
//! matrices, so trial division almost always finishes the job; Pollard rho
//! handles any large cofactor that survives it.

use num::bigint::BigUint;
use num::{Integer, One, Zero};

const TRIAL_LIMIT: u64 = 1_000_000;

/// Splits `n > 0` into `(s, t)` with `n = s·t²` and `s` squarefree.
pub fn squarefree_decompose(n: &BigUint) -> (BigUint, BigUint) {
    assert!(!n.is_zero(), "squarefree decomposition of zero");
    let mut s = BigUint::one();
    let mut t = BigUint::one();
    for (p, e) in factorize(n) {
        if e & 1 == 1 {
            s *= &p;
        }
        if e / 2 > 0 {
            t *= p.pow((e / 2) as u32);
        }
    }
    (s, t)
}

/// Prime factorization of `n > 0` as sorted `(prime, exponent)` pairs.
pub fn factorize(n: &BigUint) -> Vec<(BigUint, u64)> {
    let mut n = n.clone();
    let mut out: Vec<(BigUint, u64)> = Vec::new();
    let mut d: u64 = 2;
    while d <= TRIAL_LIMIT {
        let db = BigUint::from(d);
        if &db * &db > n {
            break;
        }
        let mut e = 0u64;
        while (&n % &db).is_zero() {
            n /= &db;
            e += 1;
        }
        if e > 0 {
            out.push((db, e));
        }
        d = if d == 2 { 3 } else { d + 2 };
    }
    if n.is_one() {
        return out;
    }
    if d > TRIAL_LIMIT {
        // Large cofactor: split it recursively with Pollard rho.
        let mut counts: Vec<(BigUint, u64)> = Vec::new();
        let mut stack = vec![n];
        while let Some(m) = stack.pop() {
            if m.is_one() {
                continue;
            }
            if is_probable_prime(&m) {
                match counts.iter_mut().find(|(p, _)| *p == m) {
                    Some((_, e)) => *e += 1,
                    None => counts.push((m, 1)),
                }
                continue;
            }
            let f = pollard_rho(&m);
            stack.push(&m / &f);
            stack.push(f);
        }
        counts.sort_by(|a, b| a.0.cmp(&b.0));
        out.extend(counts);
    } else {
        // Trial division passed √n, so the remainder is prime.
        out.push((n, 1));
    }
    out
}

/// Miller-Rabin with a fixed witness set; deterministic far beyond any
/// determinant this crate produces.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for &w in &[2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let wb = BigUint::from(w);
        if *n == wb {
            return true;
        }
        if (n % &wb).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &w in &[2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = BigUint::from(w).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Finds a non-trivial factor of an odd composite `n`.
fn pollard_rho(n: &BigUint) -> BigUint {
    let two = BigUint::from(2u32);
    if (n % &two).is_zero() {
        return two;
    }
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        let step = |x: &BigUint| (x * x + &c) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        loop {
            x = step(&x);
            y = step(&step(&y));
            if x == y {
                break; // cycle without a factor, retry with a new constant
            }
            let diff = if x > y { &x - &y } else { &y - &x };
            let g = diff.gcd(n);
            if !g.is_one() {
                if &g != n {
                    return g;
                }
                break;
            }
        }
        c += &one;
    }
}
