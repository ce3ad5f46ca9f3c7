//! Downstream statistics: connectivity bounds, factorial-moment series,
//! Gram-Charlier density expansions, Berry-Esseen rates and correlations.

pub mod quadrature;

use num::ToPrimitive;

use crate::algebra::{stirling_first_row, LambdaPoly};
use crate::diagram::GraphSpec;
use crate::engine::{cumulant, joint_cumulant, moment, EngineOptions, ModelConfig, PolyValue};
use crate::error::{Error, Result};

/// Standard normal density.
pub fn normal_pdf(x: f64) -> f64 {
    const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;
    INV_SQRT_2PI * (-0.5 * x * x).exp()
}

/// Standard normal distribution function, Hastings-style approximation
/// (absolute error below 8e-8, plenty for Kolmogorov distances).
pub fn normal_cdf(x: f64) -> f64 {
    let z = x.abs();
    let t = 1.0 / (1.0 + 0.231_641_9 * z);
    let poly = t
        * (0.319_381_530
            + t * (-0.356_563_782 + t * (1.781_477_937 + t * (-1.821_255_978 + t * 1.330_274_429))));
    let tail = normal_pdf(z) * poly;
    if x >= 0.0 {
        1.0 - tail
    } else {
        tail
    }
}

/// Probabilists' Hermite polynomials, the orders used by the expansions.
pub fn hermite(k: usize, x: f64) -> Result<f64> {
    match k {
        0 => Ok(1.0),
        1 => Ok(x),
        3 => Ok(x * x * x - 3.0 * x),
        4 => Ok(x * x * x * x - 6.0 * x * x + 3.0),
        6 => {
            let x2 = x * x;
            Ok(x2 * x2 * x2 - 15.0 * x2 * x2 + 45.0 * x2 - 15.0)
        }
        _ => Err(Error::domain(format!(
            "Hermite order {k} is not used by any supported expansion"
        ))),
    }
}

/// Cumulant inputs of a Gram-Charlier type-A expansion. κ₅ is carried for
/// completeness but unused by orders 2–4; κ₆ defaults to zero.
#[derive(Clone, Debug)]
pub struct GramCharlierCoeffs {
    pub kappa1: f64,
    pub kappa2: f64,
    pub kappa3: f64,
    pub kappa4: f64,
    pub kappa5: Option<f64>,
    pub kappa6: Option<f64>,
}

impl GramCharlierCoeffs {
    pub fn new(kappa1: f64, kappa2: f64, kappa3: f64, kappa4: f64) -> Result<Self> {
        if !(kappa2 > 0.0) {
            return Err(Error::domain("κ₂ must be positive"));
        }
        Ok(GramCharlierCoeffs {
            kappa1,
            kappa2,
            kappa3,
            kappa4,
            kappa5: None,
            kappa6: None,
        })
    }

    pub fn with_higher(mut self, kappa5: Option<f64>, kappa6: Option<f64>) -> Self {
        self.kappa5 = kappa5;
        self.kappa6 = kappa6;
        self
    }

    /// `κ₃/(3!·κ₂^{3/2})` — the skewness over 6.
    pub fn c3(&self) -> f64 {
        self.kappa3 / (6.0 * self.kappa2.powf(1.5))
    }

    /// `κ₄/(4!·κ₂²)` — the excess kurtosis over 24.
    pub fn c4(&self) -> f64 {
        self.kappa4 / (24.0 * self.kappa2 * self.kappa2)
    }

    /// `κ₆/(6!·κ₂³) + κ₃²/(2·(3!)²·κ₂³)`.
    pub fn c6(&self) -> f64 {
        let k2_cubed = self.kappa2.powi(3);
        self.kappa6.unwrap_or(0.0) / (720.0 * k2_cubed)
            + self.kappa3 * self.kappa3 / (72.0 * k2_cubed)
    }
}

/// Gram-Charlier density of the requested order (2 = matched Gaussian,
/// 3 adds the skewness correction, 4 adds the kurtosis pair), in the
/// standardized variable `(x−κ₁)/√κ₂`.
pub fn gc_density(order: usize, coeffs: &GramCharlierCoeffs, x: f64) -> Result<f64> {
    if !(coeffs.kappa2 > 0.0) {
        return Err(Error::domain("κ₂ must be positive"));
    }
    let sigma = coeffs.kappa2.sqrt();
    let z = (x - coeffs.kappa1) / sigma;
    let correction = match order {
        2 => 1.0,
        3 => 1.0 + coeffs.c3() * hermite(3, z)?,
        4 => {
            1.0 + coeffs.c3() * hermite(3, z)?
                + coeffs.c4() * hermite(4, z)?
                + coeffs.c6() * hermite(6, z)?
        }
        _ => {
            return Err(Error::domain(format!(
                "expansion order {order} not supported (2, 3 or 4)"
            )))
        }
    };
    Ok(normal_pdf(z) / sigma * correction)
}

/// Factorial moments `m_n = E[X(X−1)⋯(X−n+1)] = Σ_k s(n,k)·E[X^k]` from raw
/// moments `raw[k-1] = E[X^k]`, through order `up_to`.
pub fn factorial_moments(raw: &[f64], up_to: usize) -> Result<Vec<f64>> {
    if up_to > raw.len() {
        return Err(Error::domain(format!(
            "factorial moments through order {up_to} need {up_to} raw moments, got {}",
            raw.len()
        )));
    }
    Ok((1..=up_to)
        .map(|n| {
            let row = stirling_first_row(n);
            (1..=n)
                .map(|k| row[k].to_f64().unwrap() * raw[k - 1])
                .sum()
        })
        .collect())
}

/// Symbolic variant of [`factorial_moments`] for moments that are
/// polynomials in λ.
pub fn factorial_moments_poly(raw: &[LambdaPoly], up_to: usize) -> Result<Vec<LambdaPoly>> {
    if up_to > raw.len() {
        return Err(Error::domain(format!(
            "factorial moments through order {up_to} need {up_to} raw moments, got {}",
            raw.len()
        )));
    }
    Ok((1..=up_to)
        .map(|n| {
            let row = stirling_first_row(n);
            let mut acc = LambdaPoly::zero();
            for k in 1..=n {
                let c = crate::algebra::AlgebraicScalar::from_rational(
                    num::rational::BigRational::from_integer(row[k].clone()),
                );
                acc += &raw[k - 1].scale(&c);
            }
            acc
        })
        .collect())
}

/// Partial sums of the alternating factorial-moment series for `P(X = n)`.
#[derive(Clone, Debug)]
pub struct CountProbabilitySeries {
    /// `S_0, …, S_I` with `S_t = (1/n!)·Σ_{i≤t} (−1)^i m_{n+i}/i!`.
    pub partial_sums: Vec<f64>,
    /// `|S_I − S_{I−1}|`, a heuristic error indicator, not a bound.
    pub last_gap: f64,
}

/// `P(X = n)` via the series `Σ_i (−1)^i·m_{n+i}/(n!·i!)`; the validity
/// hypothesis on moment growth is not checkable at finite truncation, so
/// all partial sums are reported. `factorial_moments[k-1] = m_k`, `m₀ = 1`.
pub fn prob_count_equals(
    n: usize,
    factorial_moments: &[f64],
    truncation: usize,
) -> Result<CountProbabilitySeries> {
    if factorial_moments.len() < n + truncation {
        return Err(Error::domain(format!(
            "series for P(X={n}) at truncation {truncation} needs factorial moments through \
             order {}, got {}",
            n + truncation,
            factorial_moments.len()
        )));
    }
    let mut n_factorial = 1.0;
    for i in 2..=n {
        n_factorial *= i as f64;
    }
    let mut partial_sums = Vec::with_capacity(truncation + 1);
    let mut acc = 0.0;
    let mut i_factorial = 1.0;
    for i in 0..=truncation {
        if i > 1 {
            i_factorial *= i as f64;
        }
        let m = if n + i == 0 {
            1.0
        } else {
            factorial_moments[n + i - 1]
        };
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * m / i_factorial;
        partial_sums.push(acc / n_factorial);
    }
    let last_gap = if truncation == 0 {
        0.0
    } else {
        (partial_sums[truncation] - partial_sums[truncation - 1]).abs()
    };
    Ok(CountProbabilitySeries {
        partial_sums,
        last_gap,
    })
}

/// `P(N > 0)` estimated as `1 − S_I` of the `n = 0` series, together with
/// the last-gap indicator.
pub fn prob_positive_series(
    factorial_moments: &[f64],
    truncation: usize,
) -> Result<(f64, f64)> {
    let series = prob_count_equals(0, factorial_moments, truncation)?;
    Ok((
        1.0 - series.partial_sums[truncation],
        series.last_gap,
    ))
}

/// Second-moment lower bound `(E N)²/E[N²]` for `P(N > 0)`, from the exact
/// moment polynomials.
pub fn connectivity_lower_bound(
    spec: &GraphSpec,
    model: &ModelConfig,
    lambda: f64,
    opts: &EngineOptions,
) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::domain("connectivity bound needs λ > 0"));
    }
    let m1 = moment(1, spec, model, opts)?.value.evaluate(lambda)?;
    let m2 = moment(2, spec, model, opts)?.value.evaluate(lambda)?;
    if m2 <= 0.0 {
        return Err(Error::domain("E[N²] vanishes; the bound is undefined"));
    }
    Ok(m1 * m1 / m2)
}

/// The Kolmogorov-distance decay rate `λ^{−1/(4r−2)}`; the constant in
/// front is unknown, so this is a rate, not a bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BerryEsseenRate {
    pub value: f64,
    pub exponent: f64,
}

pub fn berry_esseen_rate(r: usize, lambda: f64) -> Result<BerryEsseenRate> {
    if r < 2 {
        return Err(Error::domain("the rate is stated for r ≥ 2"));
    }
    if !(lambda > 0.0) {
        return Err(Error::domain("the rate needs λ > 0"));
    }
    let exponent = -1.0 / (4.0 * r as f64 - 2.0);
    Ok(BerryEsseenRate {
        value: lambda.powf(exponent),
        exponent,
    })
}

fn leading_value(v: &PolyValue) -> Result<f64> {
    match v {
        PolyValue::Exact(p) => p
            .leading_coeff()
            .map(|c| c.evaluate())
            .ok_or_else(|| Error::domain("zero polynomial has no leading coefficient")),
        PolyValue::Numeric(p) => p
            .degree()
            .map(|d| p.coeff(d))
            .ok_or_else(|| Error::domain("zero polynomial has no leading coefficient")),
    }
}

/// Correlation of two subgraph counts at intensity λ.
pub fn joint_correlation(
    a: &GraphSpec,
    b: &GraphSpec,
    model: &ModelConfig,
    lambda: f64,
    opts: &EngineOptions,
) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::domain("correlation needs λ > 0"));
    }
    let joint = joint_cumulant(&[a.clone(), b.clone()], model, opts)?
        .value
        .evaluate(lambda)?;
    let va = cumulant(2, a, model, opts)?.value.evaluate(lambda)?;
    let vb = cumulant(2, b, model, opts)?.value.evaluate(lambda)?;
    if va <= 0.0 || vb <= 0.0 {
        return Err(Error::domain("zero variance; correlation undefined"));
    }
    Ok(joint / (va * vb).sqrt())
}

/// The λ → ∞ correlation, from leading coefficients only.
pub fn limit_correlation(
    a: &GraphSpec,
    b: &GraphSpec,
    model: &ModelConfig,
    opts: &EngineOptions,
) -> Result<f64> {
    let joint = joint_cumulant(&[a.clone(), b.clone()], model, opts)?;
    let la = leading_value(&cumulant(2, a, model, opts)?.value)?;
    let lb = leading_value(&cumulant(2, b, model, opts)?.value)?;
    if la <= 0.0 || lb <= 0.0 {
        return Err(Error::domain("zero variance; correlation undefined"));
    }
    Ok(leading_value(&joint.value)? / (la * lb).sqrt())
}
