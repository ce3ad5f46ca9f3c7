//! Polynomials in the intensity λ.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg};

use crate::algebra::scalar::AlgebraicScalar;
use crate::error::{Error, Result};

/// A polynomial in λ with exact algebraic coefficients; zero coefficients
/// are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LambdaPoly {
    coeffs: BTreeMap<u32, AlgebraicScalar>,
}

impl LambdaPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn monomial(degree: u32, coeff: AlgebraicScalar) -> Self {
        let mut p = Self::zero();
        p.add_term(degree, coeff);
        p
    }

    pub fn constant(c: AlgebraicScalar) -> Self {
        Self::monomial(0, c)
    }

    pub fn add_term(&mut self, degree: u32, coeff: AlgebraicScalar) {
        if coeff.is_zero() {
            return;
        }
        match self.coeffs.entry(degree) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Coefficients as `(degree, coefficient)` pairs, degree ascending.
    pub fn coeffs(&self) -> impl Iterator<Item = (u32, &AlgebraicScalar)> {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    pub fn coeff(&self, degree: u32) -> AlgebraicScalar {
        self.coeffs.get(&degree).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    pub fn leading_coeff(&self) -> Option<&AlgebraicScalar> {
        self.coeffs.values().next_back()
    }

    pub fn scale(&self, c: &AlgebraicScalar) -> Self {
        let mut out = Self::zero();
        for (d, q) in &self.coeffs {
            out.add_term(*d, q * c);
        }
        out
    }

    /// Evaluation at `lambda ≥ 0`; radicals are evaluated once, in binary64.
    pub fn evaluate(&self, lambda: f64) -> Result<f64> {
        if lambda < 0.0 || !lambda.is_finite() {
            return Err(Error::domain(format!(
                "polynomial evaluation requires λ ≥ 0, got {lambda}"
            )));
        }
        Ok(self
            .coeffs
            .iter()
            .map(|(d, c)| c.evaluate() * lambda.powi(*d as i32))
            .sum())
    }

    /// `{"<degree>": [scalar terms...], ...}`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (d, c) in &self.coeffs {
            map.insert(d.to_string(), c.to_json());
        }
        serde_json::Value::Object(map)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::domain("polynomial JSON must be an object"))?;
        let mut out = Self::zero();
        for (k, val) in obj {
            let d: u32 = k
                .parse()
                .map_err(|_| Error::domain(format!("bad degree key: {k}")))?;
            out.add_term(d, AlgebraicScalar::from_json(val)?);
        }
        Ok(out)
    }
}

impl Add for &LambdaPoly {
    type Output = LambdaPoly;
    fn add(self, rhs: &LambdaPoly) -> LambdaPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LambdaPoly> for LambdaPoly {
    fn add_assign(&mut self, rhs: &LambdaPoly) {
        for (d, c) in &rhs.coeffs {
            self.add_term(*d, c.clone());
        }
    }
}

impl Neg for &LambdaPoly {
    type Output = LambdaPoly;
    fn neg(self) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (d, c) in &self.coeffs {
            out.coeffs.insert(*d, -c);
        }
        out
    }
}

impl Mul for &LambdaPoly {
    type Output = LambdaPoly;
    fn mul(self, rhs: &LambdaPoly) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (d1, c1) in &self.coeffs {
            for (d2, c2) in &rhs.coeffs {
                out.add_term(d1 + d2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (d, c)) in self.coeffs.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match d {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})·λ")?,
                _ => write!(f, "({c})·λ^{d}")?,
            }
        }
        Ok(())
    }
}

/// A polynomial in λ with binary64 coefficients, produced by the numeric
/// integration path.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct NumericPoly {
    coeffs: BTreeMap<u32, f64>,
}

impl NumericPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, degree: u32, coeff: f64) {
        *self.coeffs.entry(degree).or_insert(0.0) += coeff;
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.coeffs.iter().map(|(d, c)| (*d, *c))
    }

    pub fn coeff(&self, degree: u32) -> f64 {
        self.coeffs.get(&degree).copied().unwrap_or(0.0)
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn evaluate(&self, lambda: f64) -> Result<f64> {
        if lambda < 0.0 || !lambda.is_finite() {
            return Err(Error::domain(format!(
                "polynomial evaluation requires λ ≥ 0, got {lambda}"
            )));
        }
        Ok(self
            .coeffs
            .iter()
            .map(|(d, c)| c * lambda.powi(*d as i32))
            .sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_evaluates() {
        // λ²/√3 at λ = 1
        let p = LambdaPoly::monomial(2, AlgebraicScalar::recip_sqrt(3));
        let v = p.evaluate(1.0).unwrap();
        assert!((v - 0.5773502691896258).abs() < 1e-15);
    }

    #[test]
    fn product_degree_adds() {
        let p = LambdaPoly::monomial(2, AlgebraicScalar::sqrt(2));
        let q = &LambdaPoly::monomial(3, AlgebraicScalar::sqrt(2))
            + &LambdaPoly::monomial(1, AlgebraicScalar::one());
        let r = &p * &q;
        assert_eq!(r.degree(), Some(5));
        assert_eq!(r.min_degree(), Some(3));
        assert_eq!(r.coeff(5), AlgebraicScalar::from_integer(2));
    }

    #[test]
    fn negative_lambda_rejected() {
        let p = LambdaPoly::monomial(1, AlgebraicScalar::one());
        assert!(p.evaluate(-1.0).is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = &LambdaPoly::monomial(3, AlgebraicScalar::recip_sqrt(2))
            + &LambdaPoly::monomial(0, AlgebraicScalar::rational(-5, 3));
        assert_eq!(LambdaPoly::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn cancelling_terms_vanish() {
        let mut p = LambdaPoly::monomial(2, AlgebraicScalar::sqrt(3));
        p += &LambdaPoly::monomial(2, -&AlgebraicScalar::sqrt(3));
        assert!(p.is_zero());
    }
}
