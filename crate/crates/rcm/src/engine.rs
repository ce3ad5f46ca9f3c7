//! Assembles exact moments, cumulants and joint cumulants of subgraph
//! counts by summing per-partition Gaussian integrals.
//!
//! With the connection function `exp(-β‖x−y‖²)`, a flat or Gaussian
//! intensity, and all endpoints at the origin, the integral attached to a
//! partition is `(π/β)^{kd/2}·det(M)^{−d/2}` for the integer Gram matrix
//! `M` of the merged graph, so at `β = π` every term is exact: `λ^k` times
//! a rational (even `d`) or a rational multiple of a square root (odd `d`).
//! Any other β or endpoint placement routes to a numeric path that handles
//! the linear term of the quadratic form in floating point.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::factor::squarefree_decompose;
use crate::algebra::{AlgebraicScalar, LambdaPoly, NumericPoly};
use crate::diagram::{
    assemble_gram_matrix, build_rho_graph, global_endpoint_count, GraphSpec, RhoGraph,
};
use crate::error::{Error, Result};
use crate::partition::{
    partition_census, partition_chunks, Census, GroundSet, PartitionFilter, Partitions,
    SetPartition, DEFAULT_GROUND_LIMIT,
};

/// Inverse scale of the connection function `H_β(x,y) = exp(-β‖x−y‖²)`.
/// The literal token `pi` selects the exact path; any other positive value
/// is numeric-only.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Beta {
    Pi,
    Value(f64),
}

impl Beta {
    pub fn value(&self) -> f64 {
        match self {
            Beta::Pi => PI,
            Beta::Value(x) => *x,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Beta::Pi)
    }
}

impl Serialize for Beta {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Beta::Pi => s.serialize_str("pi"),
            Beta::Value(x) => s.serialize_f64(*x),
        }
    }
}

impl<'de> Deserialize<'de> for Beta {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl serde::de::Visitor<'_> for V {
            type Value = Beta;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                write!(f, "the string \"pi\" or a positive number")
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> std::result::Result<Beta, E> {
                if v == "pi" {
                    Ok(Beta::Pi)
                } else {
                    v.parse::<f64>()
                        .map(Beta::Value)
                        .map_err(|_| E::custom(format!("bad beta: {v}")))
                }
            }
            fn visit_f64<E>(self, v: f64) -> std::result::Result<Beta, E> {
                Ok(Beta::Value(v))
            }
            fn visit_u64<E>(self, v: u64) -> std::result::Result<Beta, E> {
                Ok(Beta::Value(v as f64))
            }
            fn visit_i64<E>(self, v: i64) -> std::result::Result<Beta, E> {
                Ok(Beta::Value(v as f64))
            }
        }
        d.deserialize_any(V)
    }
}

/// Intensity measure of the Poisson process: Lebesgue, or the Gaussian
/// density `exp(-β‖x‖²)` with the model's β.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Intensity {
    Flat,
    Gaussian,
}

/// Model parameters shared by the exact engine, the numeric path and the
/// simulator. An empty `endpoint_positions` list places every endpoint at
/// the origin.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelConfig {
    pub dimension: usize,
    pub beta: Beta,
    pub intensity: Intensity,
    #[serde(default)]
    pub endpoint_positions: Vec<Vec<f64>>,
}

impl ModelConfig {
    /// Exact-path model: `β = π`, endpoints at the origin.
    pub fn exact(dimension: usize, intensity: Intensity) -> Self {
        ModelConfig {
            dimension,
            beta: Beta::Pi,
            intensity,
            endpoint_positions: Vec::new(),
        }
    }

    pub fn with_endpoints(mut self, positions: Vec<Vec<f64>>) -> Self {
        self.endpoint_positions = positions;
        self
    }

    pub fn beta_value(&self) -> f64 {
        self.beta.value()
    }

    /// The closed forms require `β = π` and all endpoints at the origin.
    pub fn is_exact_path(&self) -> bool {
        self.beta.is_exact()
            && self
                .endpoint_positions
                .iter()
                .all(|y| y.iter().all(|&c| c == 0.0))
    }

    pub fn validate(&self) -> Result<()> {
        if self.dimension == 0 {
            return Err(Error::domain("dimension must be ≥ 1"));
        }
        if !(self.beta_value() > 0.0) {
            return Err(Error::domain("beta must be > 0"));
        }
        for y in &self.endpoint_positions {
            if y.len() != self.dimension {
                return Err(Error::domain(format!(
                    "endpoint position {:?} does not have dimension {}",
                    y, self.dimension
                )));
            }
        }
        Ok(())
    }

    /// Endpoint positions for `m` global endpoints, defaulting to origins.
    pub fn resolved_endpoints(&self, m: usize) -> Result<Vec<Vec<f64>>> {
        if self.endpoint_positions.is_empty() {
            return Ok(vec![vec![0.0; self.dimension]; m]);
        }
        if self.endpoint_positions.len() != m {
            return Err(Error::domain(format!(
                "{} endpoint positions given for {m} endpoints",
                self.endpoint_positions.len()
            )));
        }
        Ok(self.endpoint_positions.clone())
    }
}

/// Knobs for a computation run.
#[derive(Clone, Debug)]
pub struct EngineOptions {
    pub workers: Option<usize>,
    pub ground_limit: usize,
    pub progress: bool,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            workers: None,
            ground_limit: DEFAULT_GROUND_LIMIT,
            progress: false,
        }
    }
}

/// A polynomial in λ from either computation path.
#[derive(Clone, Debug, PartialEq)]
pub enum PolyValue {
    Exact(LambdaPoly),
    Numeric(NumericPoly),
}

impl PolyValue {
    pub fn evaluate(&self, lambda: f64) -> Result<f64> {
        match self {
            PolyValue::Exact(p) => p.evaluate(lambda),
            PolyValue::Numeric(p) => p.evaluate(lambda),
        }
    }

    pub fn degree(&self) -> Option<u32> {
        match self {
            PolyValue::Exact(p) => p.degree(),
            PolyValue::Numeric(p) => p.degree(),
        }
    }

    pub fn as_exact(&self) -> Option<&LambdaPoly> {
        match self {
            PolyValue::Exact(p) => Some(p),
            PolyValue::Numeric(_) => None,
        }
    }

    pub fn exact(&self) -> Result<&LambdaPoly> {
        self.as_exact()
            .ok_or_else(|| Error::domain("exact polynomial required, got a numeric-path value"))
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            PolyValue::Exact(p) => p.to_json(),
            PolyValue::Numeric(p) => {
                let mut map = serde_json::Map::new();
                for (d, c) in p.coeffs() {
                    map.insert(d.to_string(), serde_json::Value::from(c));
                }
                serde_json::Value::Object(map)
            }
        }
    }
}

/// One assembled moment or cumulant, with the census of the partitions it
/// summed and wall-clock timing.
#[derive(Clone, Debug)]
pub struct CumulantResult {
    pub order: usize,
    pub value: PolyValue,
    pub partition_count: u64,
    pub census: Census,
    pub elapsed: Duration,
}

impl CumulantResult {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "order": self.order,
            "value": self.value.to_json(),
            "exact": matches!(self.value, PolyValue::Exact(_)),
            "partition_count": self.partition_count,
            "census": self.census.by_block_count,
            "elapsed_ms": self.elapsed.as_secs_f64() * 1e3,
        })
    }
}

/// `det(M)^{−d/2}` as an exact scalar; `det` must be positive.
fn coefficient_from_det(det: &BigInt, d: usize) -> AlgebraicScalar {
    debug_assert!(det.is_positive());
    if d % 2 == 0 {
        AlgebraicScalar::from_rational(BigRational::new(BigInt::one(), det.pow((d / 2) as u32)))
    } else {
        let (s, t) = squarefree_decompose(&det.to_biguint().unwrap());
        AlgebraicScalar::sqrt_big(&s).mul_rational(&BigRational::new(
            BigInt::from(t),
            det.pow(((d + 1) / 2) as u32),
        ))
    }
}

fn singular_partition_error(p: &SetPartition) -> Error {
    Error::divergence(format!(
        "partition {p} has a singular Gram matrix; with this intensity the integral diverges"
    ))
}

/// Cholesky factor of a symmetric positive-definite matrix; `None` when a
/// pivot falls below the tolerance, which the engine classifies as a
/// divergent integral.
fn cholesky(a: &[Vec<f64>], tol: f64) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut sum = a[i][j];
            for k in 0..j {
                sum -= l[i][k] * l[j][k];
            }
            if i == j {
                if sum <= tol {
                    return None;
                }
                l[i][j] = sum.sqrt();
            } else {
                l[i][j] = sum / l[j][j];
            }
        }
    }
    Some(l)
}

fn cholesky_solve(l: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
    let n = l.len();
    let mut y = vec![0.0; n];
    for i in 0..n {
        let mut sum = b[i];
        for k in 0..i {
            sum -= l[i][k] * y[k];
        }
        y[i] = sum / l[i][i];
    }
    let mut z = vec![0.0; n];
    for i in (0..n).rev() {
        let mut sum = y[i];
        for k in i + 1..n {
            sum -= l[k][i] * z[k];
        }
        z[i] = sum / l[i][i];
    }
    z
}

const CHOLESKY_PIVOT_TOL: f64 = 1e-12;

/// Numeric value of one partition's integral: per coordinate the exponent
/// is `β(xᵀMx − 2bᵀx + c₀)`, so the integral over the coordinate is
/// `(π/β)^{k/2}·det(M)^{−1/2}·exp(β(bᵀM⁻¹b − c₀))`.
fn numeric_term(
    rg: &RhoGraph,
    gram: &[Vec<i64>],
    model: &ModelConfig,
    positions: &[Vec<f64>],
) -> Option<f64> {
    let k = gram.len();
    let d = model.dimension;
    let beta = model.beta_value();
    let a: Vec<Vec<f64>> = gram
        .iter()
        .map(|row| row.iter().map(|&x| x as f64).collect())
        .collect();
    let l = cholesky(&a, CHOLESKY_PIVOT_TOL)?;
    let log_det: f64 = l.iter().enumerate().map(|(i, row)| 2.0 * row[i].ln()).sum();
    let mut exponent = 0.0;
    for c in 0..d {
        let mut b = vec![0.0; k];
        let mut c0 = 0.0;
        for (j, nb) in rg.endpoint_neighborhoods.iter().enumerate() {
            let y = positions[j][c];
            if y != 0.0 {
                for &v in nb {
                    b[v - 1] += y;
                }
                c0 += y * y * nb.len() as f64;
            }
        }
        if b.iter().any(|&x| x != 0.0) || c0 != 0.0 {
            let z = cholesky_solve(&l, &b);
            let quad: f64 = b.iter().zip(&z).map(|(x, y)| x * y).sum();
            exponent += beta * (quad - c0);
        }
    }
    let scale = (PI / beta).powf(k as f64 * d as f64 / 2.0);
    Some(scale * (-(d as f64) / 2.0 * log_det + exponent).exp())
}

enum TermOut {
    Exact(u32, AlgebraicScalar),
    Numeric(u32, f64),
}

fn term_for_partition(
    p: &SetPartition,
    specs: &[&GraphSpec],
    model: &ModelConfig,
    positions: &[Vec<f64>],
    exact: bool,
    cache: &mut HashMap<Vec<i64>, AlgebraicScalar>,
) -> Result<TermOut> {
    let rg = build_rho_graph(specs, p)?;
    let gram = assemble_gram_matrix(&rg, model.intensity == Intensity::Gaussian);
    let degree = rg.core_vertices as u32;
    if exact {
        let d = model.dimension;
        let key = gram.key();
        if let Some(hit) = cache.get(&key) {
            return Ok(TermOut::Exact(degree, hit.clone()));
        }
        let det = gram.det();
        if !det.is_positive() {
            return Err(singular_partition_error(p));
        }
        let coeff = coefficient_from_det(&det, d);
        cache.insert(key, coeff.clone());
        Ok(TermOut::Exact(degree, coeff))
    } else {
        match numeric_term(&rg, gram.entries(), model, positions) {
            Some(v) => Ok(TermOut::Numeric(degree, v)),
            None => Err(singular_partition_error(p)),
        }
    }
}

/// The integral attached to a single non-flat partition, as the monomial
/// `λ^{|ρ|}·coefficient`.
pub fn partition_term(
    p: &SetPartition,
    specs: &[&GraphSpec],
    model: &ModelConfig,
) -> Result<PolyValue> {
    if !p.is_non_flat() {
        return Err(Error::domain(
            "flat partitions are outside every summation domain",
        ));
    }
    model.validate()?;
    let m = global_endpoint_count(specs)?;
    let positions = model.resolved_endpoints(m)?;
    let exact = model.is_exact_path();
    let mut cache = HashMap::new();
    match term_for_partition(p, specs, model, &positions, exact, &mut cache)? {
        TermOut::Exact(k, c) => Ok(PolyValue::Exact(LambdaPoly::monomial(k, c))),
        TermOut::Numeric(k, v) => {
            let mut poly = NumericPoly::zero();
            poly.add_term(k, v);
            Ok(PolyValue::Numeric(poly))
        }
    }
}

struct Progress {
    done: AtomicU64,
    total: u64,
    start: Instant,
}

impl Progress {
    fn tick(&self) {
        let done = self.done.fetch_add(1, Ordering::Relaxed) + 1;
        if done % 1000 == 0 || done == self.total {
            let elapsed = self.start.elapsed().as_secs_f64();
            let eta = if done > 0 {
                elapsed * (self.total.saturating_sub(done)) as f64 / done as f64
            } else {
                f64::NAN
            };
            eprintln!("[{done}/{}] elapsed {elapsed:.1}s eta {eta:.1}s", self.total);
        }
    }
}

struct ChunkOutcome {
    exact: LambdaPoly,
    numeric: NumericPoly,
    census: Census,
    err: Option<Error>,
}

#[allow(clippy::too_many_arguments)]
fn process_chunk(
    ground: &GroundSet,
    filter: PartitionFilter,
    prefix: &[u8],
    specs: &[&GraphSpec],
    model: &ModelConfig,
    positions: &[Vec<f64>],
    exact: bool,
    progress: Option<&Progress>,
) -> ChunkOutcome {
    let mut it = Partitions::with_prefix(ground.clone(), filter, prefix);
    let mut out = ChunkOutcome {
        exact: LambdaPoly::zero(),
        numeric: NumericPoly::zero(),
        census: Census::default(),
        err: None,
    };
    let mut cache: HashMap<Vec<i64>, AlgebraicScalar> = HashMap::new();
    while it.advance() {
        let p = it.current_partition();
        match term_for_partition(&p, specs, model, positions, exact, &mut cache) {
            Ok(TermOut::Exact(k, c)) => out.exact.add_term(k, c),
            Ok(TermOut::Numeric(k, v)) => out.numeric.add_term(k, v),
            Err(e) => {
                out.err = Some(e);
                return out;
            }
        }
        out.census.record(it.current_block_count());
        if let Some(pr) = progress {
            pr.tick();
        }
    }
    out
}

/// Sums `partition_term` over the requested partition class. Chunks are
/// fixed by the ground set alone, each chunk is summed sequentially, and
/// chunk sums are folded in chunk order, so results are bit-identical for
/// every worker count on both paths.
fn sum_over_partitions(
    specs: &[&GraphSpec],
    model: &ModelConfig,
    filter: PartitionFilter,
    order: usize,
    opts: &EngineOptions,
) -> Result<CumulantResult> {
    let start = Instant::now();
    model.validate()?;
    let rows: Vec<usize> = specs.iter().map(|s| s.vertex_count()).collect();
    let ground = GroundSet::new(rows)?;
    let m = global_endpoint_count(specs)?;
    let positions = model.resolved_endpoints(m)?;
    let exact = model.is_exact_path();
    let prefixes = partition_chunks(&ground, filter, opts.ground_limit)?;
    let progress = if opts.progress {
        Some(Progress {
            done: AtomicU64::new(0),
            total: partition_census(&ground, filter, opts.ground_limit)?.total,
            start: Instant::now(),
        })
    } else {
        None
    };

    let outcomes: Vec<ChunkOutcome> = crate::pool::run(opts.workers, || {
        prefixes
            .par_iter()
            .map(|prefix| {
                process_chunk(
                    &ground,
                    filter,
                    prefix,
                    specs,
                    model,
                    &positions,
                    exact,
                    progress.as_ref(),
                )
            })
            .collect()
    });

    let mut exact_acc = LambdaPoly::zero();
    let mut numeric_acc = NumericPoly::zero();
    let mut census = Census::default();
    for outcome in outcomes {
        // Chunks are in enumeration order, and a chunk stops at its first
        // failure, so the first error seen here names the first singular
        // partition of the whole stream.
        if let Some(e) = outcome.err {
            return Err(e);
        }
        exact_acc += &outcome.exact;
        for (k, v) in outcome.numeric.coeffs() {
            numeric_acc.add_term(k, v);
        }
        census.merge(&outcome.census);
    }
    Ok(CumulantResult {
        order,
        value: if exact {
            PolyValue::Exact(exact_acc)
        } else {
            PolyValue::Numeric(numeric_acc)
        },
        partition_count: census.total,
        census,
        elapsed: start.elapsed(),
    })
}

/// `E[(N^G)^n]`: sum over the non-flat partitions of `[n]×[r]`.
pub fn moment(
    n: usize,
    spec: &GraphSpec,
    model: &ModelConfig,
    opts: &EngineOptions,
) -> Result<CumulantResult> {
    if n == 0 {
        return Err(Error::domain("moment order must be ≥ 1"));
    }
    let specs = vec![spec; n];
    sum_over_partitions(&specs, model, PartitionFilter::NonFlat, n, opts)
}

/// `κ_n(N^G)`: sum over the connected non-flat partitions of `[n]×[r]`.
pub fn cumulant(
    n: usize,
    spec: &GraphSpec,
    model: &ModelConfig,
    opts: &EngineOptions,
) -> Result<CumulantResult> {
    if n == 0 {
        return Err(Error::domain("cumulant order must be ≥ 1"));
    }
    let specs = vec![spec; n];
    sum_over_partitions(&specs, model, PartitionFilter::ConnectedNonFlat, n, opts)
}

/// `E[N^{G₁}⋯N^{Gₙ}]` over the non-flat partitions of `π₁∪…∪πₙ`.
pub fn joint_moment(
    specs: &[GraphSpec],
    model: &ModelConfig,
    opts: &EngineOptions,
) -> Result<CumulantResult> {
    if specs.is_empty() {
        return Err(Error::domain("joint moment needs at least one template"));
    }
    let refs: Vec<&GraphSpec> = specs.iter().collect();
    sum_over_partitions(&refs, model, PartitionFilter::NonFlat, specs.len(), opts)
}

/// `κ(N^{G₁},…,N^{Gₙ})` over the connected non-flat partitions.
pub fn joint_cumulant(
    specs: &[GraphSpec],
    model: &ModelConfig,
    opts: &EngineOptions,
) -> Result<CumulantResult> {
    if specs.is_empty() {
        return Err(Error::domain("joint cumulant needs at least one template"));
    }
    let refs: Vec<&GraphSpec> = specs.iter().collect();
    sum_over_partitions(
        &refs,
        model,
        PartitionFilter::ConnectedNonFlat,
        specs.len(),
        opts,
    )
}

fn partition_weight(blocks: usize, signed: bool) -> AlgebraicScalar {
    if !signed {
        return AlgebraicScalar::one();
    }
    // (−1)^{|ρ|−1}·(|ρ|−1)!
    let mut f = BigInt::one();
    for i in 1..blocks {
        f *= BigInt::from(i);
    }
    if blocks % 2 == 0 {
        f = -f;
    }
    AlgebraicScalar::from_rational(BigRational::from_integer(f))
}

fn mobius_transform(input: &[LambdaPoly], signed: bool) -> Result<Vec<LambdaPoly>> {
    if input.is_empty() {
        return Err(Error::domain("empty moment list"));
    }
    let mut out = Vec::with_capacity(input.len());
    for n in 1..=input.len() {
        let ground = GroundSet::new(vec![1; n])?;
        let mut acc = LambdaPoly::zero();
        for p in crate::partition::enumerate_partitions(&ground, PartitionFilter::All, n)? {
            let blocks = p.blocks();
            let mut term = LambdaPoly::constant(partition_weight(blocks.len(), signed));
            for b in &blocks {
                term = &term * &input[b.len() - 1];
            }
            acc += &term;
        }
        out.push(acc);
    }
    Ok(out)
}

/// Classical Möbius inversion over the partition lattice:
/// `κ_n = Σ_{ρ∈Π([n])} (−1)^{|ρ|−1}(|ρ|−1)!·∏_{b∈ρ} m_{|b|}`,
/// with `moments[k-1]` the raw moment of order `k`.
pub fn moments_to_cumulants(moments: &[LambdaPoly]) -> Result<Vec<LambdaPoly>> {
    mobius_transform(moments, true)
}

/// Inverse transform: `m_n = Σ_{ρ∈Π([n])} ∏_{b∈ρ} κ_{|b|}`.
pub fn cumulants_to_moments(cumulants: &[LambdaPoly]) -> Result<Vec<LambdaPoly>> {
    mobius_transform(cumulants, false)
}

/// `κ_n(λ)/κ₂(λ)^{n/2}` for `n ≥ 2`; exactly 1 at `n = 2`.
pub fn normalized_cumulant(
    n: usize,
    spec: &GraphSpec,
    model: &ModelConfig,
    lambda: f64,
    opts: &EngineOptions,
) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain("normalized cumulants start at order 2"));
    }
    if !(lambda > 0.0) {
        return Err(Error::domain("normalized cumulant needs λ > 0"));
    }
    let k2 = cumulant(2, spec, model, opts)?.value.evaluate(lambda)?;
    if k2 <= 0.0 {
        return Err(Error::domain("κ₂ vanishes; nothing to normalize by"));
    }
    if n == 2 {
        return Ok(1.0);
    }
    let kn = cumulant(n, spec, model, opts)?.value.evaluate(lambda)?;
    Ok(kn / k2.powf(n as f64 / 2.0))
}
