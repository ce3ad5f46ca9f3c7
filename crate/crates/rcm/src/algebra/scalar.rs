//! Exact arithmetic over finite sums of rational multiples of square roots.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num::bigint::{BigInt, BigUint};
use num::rational::BigRational;
use num::{Integer, One, Signed, ToPrimitive, Zero};

use crate::algebra::factor::squarefree_decompose;
use crate::error::{Error, Result};

/// A finite sum `Σ q·√s` over squarefree positive integers `s`, with
/// non-zero rational coefficients `q`. The key `s = 1` carries the rational
/// part, and the empty map is zero. The representation is canonical, so
/// structural equality is value equality.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraicScalar {
    terms: BTreeMap<BigUint, BigRational>,
}

impl AlgebraicScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den` as a scalar; `den` must be non-zero.
    pub fn rational(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        let mut s = Self::zero();
        s.insert_term(BigUint::one(), q);
        s
    }

    /// `√n`, stored with a squarefree radicand: `√12 = 2√3`.
    pub fn sqrt(n: u64) -> Self {
        Self::sqrt_big(&BigUint::from(n))
    }

    pub fn sqrt_big(n: &BigUint) -> Self {
        assert!(!n.is_zero(), "square root of zero has no radical part");
        let (s, t) = squarefree_decompose(n);
        let mut out = Self::zero();
        out.insert_term(s, BigRational::from_integer(BigInt::from(t)));
        out
    }

    /// `√(p/q) = √(pq)/q`.
    pub fn sqrt_rational(p: u64, q: u64) -> Self {
        assert!(q != 0, "zero denominator under a square root");
        Self::sqrt(p * q).div_rational_unchecked(&BigRational::from_integer(BigInt::from(q)))
    }

    /// `1/√n`, normalized to `√n/n`.
    pub fn recip_sqrt(n: u64) -> Self {
        assert!(n != 0, "reciprocal square root of zero");
        Self::sqrt(n).div_rational_unchecked(&BigRational::from_integer(BigInt::from(n)))
    }

    fn insert_term(&mut self, s: BigUint, q: BigRational) {
        if q.is_zero() {
            return;
        }
        match self.terms.entry(s) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(q);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += q;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn mul_rational(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (s, c) in &self.terms {
            out.terms.insert(s.clone(), c * q);
        }
        out
    }

    pub fn mul_integer(&self, n: i64) -> Self {
        self.mul_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    /// Division by a rational; scalars are never divided by general scalars.
    pub fn div_rational(&self, q: &BigRational) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::domain("division by zero"));
        }
        Ok(self.div_rational_unchecked(q))
    }

    fn div_rational_unchecked(&self, q: &BigRational) -> Self {
        self.mul_rational(&q.recip())
    }

    /// Terms as `(radicand, coefficient)` with radicands ascending.
    pub fn terms(&self) -> impl Iterator<Item = (&BigUint, &BigRational)> {
        self.terms.iter()
    }

    /// The coefficient of `√s` (zero if absent); `s` need not be squarefree.
    pub fn coefficient_of(&self, s: u64) -> BigRational {
        self.terms
            .get(&BigUint::from(s))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Binary64 value, each radical evaluated once.
    pub fn evaluate(&self) -> f64 {
        self.terms
            .iter()
            .map(|(s, q)| {
                let root = s.to_f64().unwrap_or(f64::INFINITY).sqrt();
                q.to_f64().unwrap_or(f64::NAN) * root
            })
            .sum()
    }

    /// `[{"sqrt": s, "num": p, "den": q}, ...]` with radicands ascending.
    pub fn to_json(&self) -> serde_json::Value {
        let items: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(s, q)| {
                serde_json::json!({
                    "sqrt": big_to_json(&BigInt::from(s.clone())),
                    "num": big_to_json(q.numer()),
                    "den": big_to_json(q.denom()),
                })
            })
            .collect();
        serde_json::Value::Array(items)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::domain("scalar JSON must be an array of terms"))?;
        let mut out = Self::zero();
        for item in arr {
            let s = json_to_big(&item["sqrt"])?;
            let num = json_to_big(&item["num"])?;
            let den = json_to_big(&item["den"])?;
            if den.is_zero() {
                return Err(Error::domain("zero denominator in scalar JSON"));
            }
            let s = s
                .to_biguint()
                .ok_or_else(|| Error::domain("negative radicand in scalar JSON"))?;
            // Re-normalize in case the input radicand is not squarefree.
            let term = Self::sqrt_big(&s).mul_rational(&BigRational::new(num, den));
            out += &term;
        }
        Ok(out)
    }
}

/// Serializes an integer as a JSON number when it fits `i64`/`u64`, falling
/// back to a decimal string for anything larger.
pub(crate) fn big_to_json(n: &BigInt) -> serde_json::Value {
    if let Some(i) = n.to_i64() {
        serde_json::Value::from(i)
    } else if let Some(u) = n.to_u64() {
        serde_json::Value::from(u)
    } else {
        serde_json::Value::String(n.to_string())
    }
}

pub(crate) fn json_to_big(v: &serde_json::Value) -> Result<BigInt> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| Error::domain(format!("non-integer where integer expected: {n}"))),
        serde_json::Value::String(s) => s
            .parse()
            .map_err(|_| Error::domain(format!("bad integer literal: {s}"))),
        other => Err(Error::domain(format!("expected integer, got {other}"))),
    }
}

impl Add for &AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn add(self, rhs: &AlgebraicScalar) -> AlgebraicScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&AlgebraicScalar> for AlgebraicScalar {
    fn add_assign(&mut self, rhs: &AlgebraicScalar) {
        for (s, q) in &rhs.terms {
            self.insert_term(s.clone(), q.clone());
        }
    }
}

impl Sub for &AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn sub(self, rhs: &AlgebraicScalar) -> AlgebraicScalar {
        self + &(-rhs)
    }
}

impl Neg for &AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn neg(self) -> AlgebraicScalar {
        let mut out = AlgebraicScalar::zero();
        for (s, q) in &self.terms {
            out.terms.insert(s.clone(), -q);
        }
        out
    }
}

impl Mul for &AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn mul(self, rhs: &AlgebraicScalar) -> AlgebraicScalar {
        let mut out = AlgebraicScalar::zero();
        for (s1, q1) in &self.terms {
            for (s2, q2) in &rhs.terms {
                // √s1·√s2 = g·√((s1/g)(s2/g)) with g = gcd; both factors are
                // squarefree and coprime, so the product radicand is squarefree.
                let g = s1.gcd(s2);
                let radicand = (s1 / &g) * (s2 / &g);
                let coeff = q1 * q2 * BigRational::from_integer(BigInt::from(g));
                out.insert_term(radicand, coeff);
            }
        }
        out
    }
}

impl fmt::Display for AlgebraicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, q)) in self.terms.iter().enumerate() {
            let mag = q.abs();
            if i == 0 {
                if q.is_negative() {
                    write!(f, "-")?;
                }
            } else if q.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if s.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "sqrt({s})")?;
            } else {
                write!(f, "{mag}*sqrt({s})")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> AlgebraicScalar {
        AlgebraicScalar::rational(n, d)
    }

    #[test]
    fn recip_sqrt_normalizes() {
        // 1/√8 = √2/4
        let got = AlgebraicScalar::recip_sqrt(8);
        let want = AlgebraicScalar::sqrt(2).mul_rational(&BigRational::new(1.into(), 4.into()));
        assert_eq!(got, want);
    }

    #[test]
    fn sqrt_of_rational_normalizes() {
        // √(12/7) = (2/7)√21
        let got = AlgebraicScalar::sqrt_rational(12, 7);
        let want = AlgebraicScalar::sqrt(21).mul_rational(&BigRational::new(2.into(), 7.into()));
        assert_eq!(got, want);
    }

    #[test]
    fn recip_sqrt_squares_to_inverse() {
        // (1/√3)·(1/√3) = 1/3
        let r = AlgebraicScalar::recip_sqrt(3);
        assert_eq!(&r * &r, rat(1, 3));
    }

    #[test]
    fn radical_products_reduce() {
        let a = AlgebraicScalar::sqrt(6);
        let b = AlgebraicScalar::sqrt(10);
        // √6·√10 = 2√15
        assert_eq!(&a * &b, AlgebraicScalar::sqrt(15).mul_integer(2));
        // √2·√2 = 2
        let s2 = AlgebraicScalar::sqrt(2);
        assert_eq!(&s2 * &s2, rat(2, 1));
    }

    #[test]
    fn cancellation_drops_terms() {
        let a = AlgebraicScalar::sqrt(5);
        let b = -&a;
        assert!((&a + &b).is_zero());
    }

    #[test]
    fn division_by_zero_rational_is_domain_error() {
        let a = AlgebraicScalar::one();
        assert!(a.div_rational(&BigRational::zero()).is_err());
    }

    #[test]
    fn evaluate_table_value() {
        // 2/√3 + 3/(2√2)
        let v = &AlgebraicScalar::recip_sqrt(3).mul_integer(2)
            + &AlgebraicScalar::recip_sqrt(2).mul_rational(&BigRational::new(3.into(), 2.into()));
        assert!((v.evaluate() - 2.215_360_710_159_073).abs() < 1e-12);
    }

    #[test]
    fn json_round_trip() {
        let v = &rat(3, 4) + &AlgebraicScalar::sqrt(21).mul_rational(&BigRational::new(
            (-2).into(),
            7.into(),
        ));
        let back = AlgebraicScalar::from_json(&v.to_json()).unwrap();
        assert_eq!(v, back);
    }

    #[test]
    fn ring_axioms_on_random_triples() {
        // Deterministic pseudo-random scalars; exact equality throughout.
        let mk = |seed: u64| {
            let mut x = seed;
            let mut next = move || {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                x
            };
            let mut s = AlgebraicScalar::zero();
            for _ in 0..3 {
                let rad = 1 + (next() % 30) as u64;
                let num = (next() % 19) as i64 - 9;
                let den = 1 + (next() % 7) as i64;
                s += &AlgebraicScalar::sqrt(rad)
                    .mul_rational(&BigRational::new(num.into(), den.into()));
            }
            s
        };
        for seed in 0..25u64 {
            let (a, b, c) = (mk(seed), mk(seed + 100), mk(seed + 200));
            assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            assert_eq!(&a * &b, &b * &a);
        }
    }
}
