//! Monte Carlo sampling of the random-connection model with fixed
//! endpoints, exact embedding counting on samples, and batch-means
//! estimation of moments and cumulants — the cross-check for the exact
//! engine.
//!
//! Determinism: every replication derives its own counter-based streams
//! from `(seed, replication index)`, and pair adjacency is a pure hash of
//! `(replication, pair)`, so results are bit-identical for any worker
//! count and any query order.

use std::collections::HashMap;
#[cfg(test)]
use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::{global_endpoint_count, GraphSpec};
use crate::engine::{Intensity, ModelConfig};
use crate::error::{Error, Result};
use crate::stats::normal_cdf;

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

fn rep_seed(seed: u64, replication: u64) -> u64 {
    splitmix64(seed ^ replication.wrapping_mul(0xd1b54a32d192ed03))
}

/// Uniform in [0,1) from a pure hash of the pair; order-independent.
fn edge_uniform(seed: u64, a: usize, b: usize) -> f64 {
    let (lo, hi) = (a.min(b) as u64, a.max(b) as u64);
    let h = splitmix64(
        splitmix64(seed.wrapping_add(lo.wrapping_mul(0x8cb92ba72f3d8dd7)))
            ^ hi.wrapping_mul(0xaef17502108ef2d9),
    );
    (h >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Simulation parameters. Points are sampled uniformly on `[-L, L]^d` with
/// a Poisson count of mean `λ(2L)^d`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub lambda: f64,
    /// Window half-width `L`.
    pub half_width: f64,
    pub replications: usize,
    pub batches: usize,
    pub seed: u64,
}

impl SimConfig {
    /// Default window: the farthest endpoint coordinate plus `5/√β`, where
    /// the connection kernel has decayed to `e^{-25}` — truncation bias far
    /// below Monte Carlo noise.
    pub fn new(model: &ModelConfig, lambda: f64, replications: usize, seed: u64) -> Result<Self> {
        let guard = 5.0 / model.beta_value().sqrt();
        let reach = model
            .endpoint_positions
            .iter()
            .flat_map(|y| y.iter().map(|c| c.abs()))
            .fold(0.0, f64::max);
        let cfg = SimConfig {
            lambda,
            half_width: reach + guard,
            replications,
            batches: 20,
            seed,
        };
        cfg.validate(model)?;
        Ok(cfg)
    }

    pub fn with_half_width(mut self, half_width: f64) -> Self {
        self.half_width = half_width;
        self
    }

    pub fn with_batches(mut self, batches: usize) -> Self {
        self.batches = batches;
        self
    }

    pub fn validate(&self, model: &ModelConfig) -> Result<()> {
        if !(self.lambda >= 0.0) {
            return Err(Error::domain("intensity λ must be ≥ 0"));
        }
        let reach = model
            .endpoint_positions
            .iter()
            .flat_map(|y| y.iter().map(|c| c.abs()))
            .fold(0.0, f64::max);
        if !(self.half_width > reach) {
            return Err(Error::domain(format!(
                "window half-width {} must exceed the farthest endpoint coordinate {reach}",
                self.half_width
            )));
        }
        if self.batches == 0 || self.replications < 2 * self.batches {
            return Err(Error::domain(format!(
                "replications ({}) must be at least twice the batch count ({})",
                self.replications, self.batches
            )));
        }
        if self.replications % self.batches != 0 {
            return Err(Error::domain(format!(
                "replications ({}) must divide evenly into {} batches",
                self.replications, self.batches
            )));
        }
        Ok(())
    }
}

enum EdgeSource {
    Sampled { seed: u64, beta: f64 },
    #[cfg(test)]
    Fixed(HashSet<(u32, u32)>),
}

/// One sampled configuration: Poisson points plus the fixed endpoints,
/// with pair adjacency drawn lazily on first query and cached. Vertices
/// `0..point_count()` are points; the endpoints follow. Endpoints are
/// never adjacent to each other.
pub struct SampleGraph {
    points: Vec<Vec<f64>>,
    endpoints: Vec<Vec<f64>>,
    edges: EdgeSource,
    cache: HashMap<(u32, u32), bool>,
}

impl SampleGraph {
    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn endpoint_count(&self) -> usize {
        self.endpoints.len()
    }

    pub fn position(&self, v: usize) -> &[f64] {
        if v < self.points.len() {
            &self.points[v]
        } else {
            &self.endpoints[v - self.points.len()]
        }
    }

    pub fn adjacent(&mut self, a: usize, b: usize) -> bool {
        if a == b {
            return false;
        }
        let p = self.points.len();
        if a >= p && b >= p {
            return false;
        }
        let key = (a.min(b) as u32, a.max(b) as u32);
        if let Some(&hit) = self.cache.get(&key) {
            return hit;
        }
        let value = match &self.edges {
            EdgeSource::Sampled { seed, beta } => {
                let dist2: f64 = self
                    .position(a)
                    .iter()
                    .zip(self.position(b))
                    .map(|(x, y)| (x - y) * (x - y))
                    .sum();
                edge_uniform(*seed, a, b) < (-beta * dist2).exp()
            }
            #[cfg(test)]
            EdgeSource::Fixed(set) => set.contains(&key),
        };
        self.cache.insert(key, value);
        value
    }

    #[cfg(test)]
    fn with_fixed_edges(
        points: Vec<Vec<f64>>,
        endpoints: Vec<Vec<f64>>,
        edges: HashSet<(u32, u32)>,
    ) -> Self {
        SampleGraph {
            points,
            endpoints,
            edges: EdgeSource::Fixed(edges),
            cache: HashMap::new(),
        }
    }

    #[cfg(test)]
    fn with_sampled_edges(
        seed: u64,
        beta: f64,
        points: Vec<Vec<f64>>,
        endpoints: Vec<Vec<f64>>,
    ) -> Self {
        SampleGraph {
            points,
            endpoints,
            edges: EdgeSource::Sampled { seed, beta },
            cache: HashMap::new(),
        }
    }
}

/// Draws one configuration: a Poisson(λ(2L)^d) number of uniform points on
/// the window, with the given endpoint positions adjoined. Only the flat
/// intensity is sampled; the exact engine covers the Gaussian one.
pub fn sample_rcm(
    model: &ModelConfig,
    sim: &SimConfig,
    endpoints: &[Vec<f64>],
    replication: u64,
) -> Result<SampleGraph> {
    if model.intensity != Intensity::Flat {
        return Err(Error::domain(
            "only the flat intensity is sampled; the Gaussian case is exact-path only",
        ));
    }
    model.validate()?;
    sim.validate(model)?;
    let d = model.dimension;
    let seed = rep_seed(sim.seed, replication);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let volume = (2.0 * sim.half_width).powi(d as i32);
    let mean = sim.lambda * volume;
    let count = if mean > 0.0 {
        Poisson::new(mean)
            .map_err(|e| Error::domain(format!("bad Poisson mean {mean}: {e}")))?
            .sample(&mut rng) as usize
    } else {
        0
    };
    let points = (0..count)
        .map(|_| {
            (0..d)
                .map(|_| rng.gen_range(-sim.half_width..sim.half_width))
                .collect()
        })
        .collect();
    Ok(SampleGraph {
        points,
        endpoints: endpoints.to_vec(),
        edges: EdgeSource::Sampled {
            seed: splitmix64(seed ^ 0x5851f42d4c957f2d),
            beta: model.beta_value(),
        },
        cache: HashMap::new(),
    })
}

/// Number of ordered injections of the template's core vertices into the
/// sample's points, with endpoint vertices fixed to their positions and
/// every required adjacency present. Backtracking over a
/// connectivity-respecting vertex order, seeded by per-vertex candidate
/// lists (points adjacent to all endpoints the vertex requires).
pub fn count_embeddings(g: &mut SampleGraph, spec: &GraphSpec) -> u64 {
    let r = spec.vertex_count();
    let p = g.point_count();
    if p < r {
        return 0;
    }
    let mut required: Vec<Vec<usize>> = vec![Vec::new(); r + 1];
    for (ep, &j) in spec.endpoint_attachments().iter().zip(spec.attaches()) {
        for &v in ep {
            required[v].push(j);
        }
    }
    let mut candidates: Vec<Vec<usize>> = vec![Vec::new(); r + 1];
    for v in 1..=r {
        'point: for i in 0..p {
            for &j in &required[v] {
                if !g.adjacent(i, p + j - 1) {
                    continue 'point;
                }
            }
            candidates[v].push(i);
        }
        if candidates[v].is_empty() {
            return 0;
        }
    }
    let mut adj = vec![Vec::new(); r + 1];
    for (a, b) in spec.edges() {
        adj[a].push(b);
        adj[b].push(a);
    }
    // Order: smallest candidate set first, then always adjacent to a
    // placed vertex (the core is connected, so this covers everything).
    let mut order = Vec::with_capacity(r);
    let mut placed = vec![false; r + 1];
    let start = (1..=r).min_by_key(|&v| candidates[v].len()).unwrap();
    order.push(start);
    placed[start] = true;
    while order.len() < r {
        let next = (1..=r)
            .filter(|&v| !placed[v] && adj[v].iter().any(|&w| placed[w]))
            .min_by_key(|&v| candidates[v].len())
            .expect("core graph is connected");
        order.push(next);
        placed[next] = true;
    }
    // For each position, the earlier positions it must be adjacent to.
    let pos_of: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let earlier: Vec<Vec<usize>> = order
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            adj[v]
                .iter()
                .filter_map(|w| pos_of.get(w).copied().filter(|&q| q < i))
                .collect()
        })
        .collect();

    fn backtrack(
        g: &mut SampleGraph,
        order: &[usize],
        candidates: &[Vec<usize>],
        earlier: &[Vec<usize>],
        assignment: &mut Vec<usize>,
        used: &mut [bool],
    ) -> u64 {
        let pos = assignment.len();
        if pos == order.len() {
            return 1;
        }
        let mut count = 0;
        let v = order[pos];
        for idx in 0..candidates[v].len() {
            let point = candidates[v][idx];
            if used[point] {
                continue;
            }
            if earlier[pos].iter().all(|&q| {
                let other = assignment[q];
                g.adjacent(point, other)
            }) {
                used[point] = true;
                assignment.push(point);
                count += backtrack(g, order, candidates, earlier, assignment, used);
                assignment.pop();
                used[point] = false;
            }
        }
        count
    }

    let mut used = vec![false; p];
    let mut assignment = Vec::with_capacity(r);
    backtrack(g, &order, &candidates, &earlier, &mut assignment, &mut used)
}

/// Per-replication subgraph counts, in replication order; parallel but
/// bit-deterministic for every worker count.
pub fn replication_counts(
    model: &ModelConfig,
    spec: &GraphSpec,
    sim: &SimConfig,
    workers: Option<usize>,
) -> Result<Vec<u64>> {
    let m = global_endpoint_count(&[spec])?;
    let endpoints = model.resolved_endpoints(m)?;
    sim.validate(model)?;
    crate::pool::run(workers, || {
        (0..sim.replications as u64)
            .into_par_iter()
            .map(|rep| {
                let mut g = sample_rcm(model, sim, &endpoints, rep)?;
                Ok(count_embeddings(&mut g, spec))
            })
            .collect::<Result<Vec<u64>>>()
    })
}

/// Bias-corrected k-statistics: `(mean, k₂, k₃)`.
fn k_statistics(xs: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let mut s2 = 0.0;
    let mut s3 = 0.0;
    for &x in xs {
        let d = x - mean;
        s2 += d * d;
        s3 += d * d * d;
    }
    let k2 = s2 / (n - 1.0);
    let k3 = n * s3 / ((n - 1.0) * (n - 2.0));
    (mean, k2, k3)
}

/// Monte Carlo estimates with batch-means standard errors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimates {
    pub mean: f64,
    pub second_moment: f64,
    pub k2: f64,
    pub k3: f64,
    pub p_positive: f64,
    pub se_mean: f64,
    pub se_k2: f64,
    pub se_k3: f64,
    pub se_p_positive: f64,
    pub replications: usize,
    pub batches: usize,
}

/// Runs the replications and aggregates. Cumulants use k-statistics
/// (`κ̂₂` with `1/(R−1)`, `κ̂₃` with `R²/((R−1)(R−2))` on the central
/// third); standard errors come from batch means over `sim.batches`
/// batches in replication order.
pub fn estimate(
    model: &ModelConfig,
    spec: &GraphSpec,
    sim: &SimConfig,
    workers: Option<usize>,
) -> Result<Estimates> {
    if sim.replications / sim.batches < 3 {
        return Err(Error::domain(
            "κ₃ estimation needs at least 3 replications per batch",
        ));
    }
    let counts = replication_counts(model, spec, sim, workers)?;
    let xs: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
    let (mean, k2, k3) = k_statistics(&xs);
    let second_moment = xs.iter().map(|x| x * x).sum::<f64>() / xs.len() as f64;
    let p_positive = counts.iter().filter(|&&c| c > 0).count() as f64 / xs.len() as f64;

    let b = sim.batches;
    let size = sim.replications / b;
    let mut batch_stats = vec![Vec::with_capacity(b); 4];
    for i in 0..b {
        let chunk = &xs[i * size..(i + 1) * size];
        let (bm, bk2, bk3) = k_statistics(chunk);
        let bp = chunk.iter().filter(|&&x| x > 0.0).count() as f64 / size as f64;
        batch_stats[0].push(bm);
        batch_stats[1].push(bk2);
        batch_stats[2].push(bk3);
        batch_stats[3].push(bp);
    }
    let se = |vals: &[f64]| {
        let n = vals.len() as f64;
        let m = vals.iter().sum::<f64>() / n;
        let var = vals.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (n - 1.0);
        (var / n).sqrt()
    };
    Ok(Estimates {
        mean,
        second_moment,
        k2,
        k3,
        p_positive,
        se_mean: se(&batch_stats[0]),
        se_k2: se(&batch_stats[1]),
        se_k3: se(&batch_stats[2]),
        se_p_positive: se(&batch_stats[3]),
        replications: sim.replications,
        batches: sim.batches,
    })
}

/// Kolmogorov distance between the empirical distribution of the samples
/// and the standard normal.
pub fn kolmogorov_distance_normal(samples: &[f64]) -> f64 {
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let mut dist = 0.0f64;
    for (i, x) in xs.iter().enumerate() {
        let phi = normal_cdf(*x);
        dist = dist
            .max(((i + 1) as f64 / n - phi).abs())
            .max((phi - i as f64 / n).abs());
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Beta;
    use crate::tables;

    fn flat_model(d: usize) -> ModelConfig {
        ModelConfig::exact(d, Intensity::Flat)
    }

    #[test]
    fn zero_intensity_yields_empty_samples() {
        let model = flat_model(1);
        let sim = SimConfig::new(&model, 0.0, 40, 7).unwrap();
        let g = sample_rcm(&model, &sim, &[vec![0.0], vec![0.0]], 0).unwrap();
        assert_eq!(g.point_count(), 0);
        let mut g = g;
        assert_eq!(count_embeddings(&mut g, &tables::single_edge_spec()), 0);
    }

    #[test]
    fn point_counts_match_the_poisson_mean() {
        let model = flat_model(1);
        let sim = SimConfig::new(&model, 1.0, 10_000, 11).unwrap();
        let mean_expected = sim.lambda * 2.0 * sim.half_width;
        let mut total = 0usize;
        for rep in 0..10_000u64 {
            total += sample_rcm(&model, &sim, &[], rep).unwrap().point_count();
        }
        let mean = total as f64 / 10_000.0;
        let se = (mean_expected / 10_000.0).sqrt();
        assert!(
            (mean - mean_expected).abs() < 3.0 * se,
            "{mean} vs {mean_expected} (se {se})"
        );
    }

    #[test]
    fn connection_probability_matches_the_kernel() {
        // Two points at distance u connect with probability e^{-βu²}.
        let beta = std::f64::consts::PI;
        let u = 0.4;
        let trials = 20_000;
        let mut hits = 0;
        for rep in 0..trials {
            let mut g = SampleGraph::with_sampled_edges(
                splitmix64(rep),
                beta,
                vec![vec![0.0], vec![u]],
                vec![],
            );
            if g.adjacent(0, 1) {
                hits += 1;
            }
        }
        let want = (-beta * u * u).exp();
        let got = hits as f64 / trials as f64;
        let se = (want * (1.0 - want) / trials as f64).sqrt();
        assert!((got - want).abs() < 3.0 * se, "{got} vs {want} (se {se})");
    }

    #[test]
    fn triangle_on_three_mutual_points_has_six_embeddings() {
        let edges: HashSet<(u32, u32)> = [(0, 1), (0, 2), (1, 2)].into_iter().collect();
        let mut g = SampleGraph::with_fixed_edges(
            vec![vec![0.0], vec![1.0], vec![2.0]],
            vec![],
            edges,
        );
        assert_eq!(count_embeddings(&mut g, &tables::triangle_spec()), 6);
    }

    #[test]
    fn endpoints_are_never_adjacent() {
        let mut g = SampleGraph::with_sampled_edges(
            42,
            std::f64::consts::PI,
            vec![vec![0.0]],
            vec![vec![0.0], vec![0.0]],
        );
        assert!(!g.adjacent(1, 2));
        assert!(!g.adjacent(2, 1));
    }

    /// Brute force over all ordered r-tuples of distinct points.
    fn brute_force_count(g: &mut SampleGraph, spec: &GraphSpec) -> u64 {
        let r = spec.vertex_count();
        let p = g.point_count();
        let attach: Vec<(usize, usize)> = spec
            .endpoint_attachments()
            .iter()
            .zip(spec.attaches())
            .flat_map(|(ep, &j)| ep.iter().map(move |&v| (v, j)))
            .collect();
        let mut tuple = vec![0usize; r];
        let mut count = 0;
        'outer: loop {
            let distinct = (0..r).all(|i| (0..i).all(|j| tuple[i] != tuple[j]));
            if distinct {
                let mut ok = true;
                for (a, b) in spec.edges() {
                    if !g.adjacent(tuple[a - 1], tuple[b - 1]) {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    for &(v, j) in &attach {
                        if !g.adjacent(tuple[v - 1], p + j - 1) {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    count += 1;
                }
            }
            for i in (0..r).rev() {
                tuple[i] += 1;
                if tuple[i] < p {
                    continue 'outer;
                }
                tuple[i] = 0;
                if i == 0 {
                    break 'outer;
                }
            }
        }
        count
    }

    #[test]
    fn backtracking_matches_brute_force_on_small_samples() {
        let specs = [
            tables::single_edge_spec(),
            tables::four_hop_spec(),
            tables::triangle_three_endpoints_spec(),
            tables::tree_one_endpoint_spec(),
            tables::triangle_spec(),
        ];
        let model = flat_model(1);
        for seed in 0..30u64 {
            let sim = SimConfig {
                lambda: 1.2,
                half_width: 1.5,
                replications: 40,
                batches: 4,
                seed,
            };
            for spec in &specs {
                let m = global_endpoint_count(&[spec]).unwrap();
                let endpoints = model.resolved_endpoints(m).unwrap();
                let mut g = sample_rcm(&model, &sim, &endpoints, seed).unwrap();
                if g.point_count() > 8 {
                    continue;
                }
                let fast = count_embeddings(&mut g, spec);
                let slow = brute_force_count(&mut g, spec);
                assert_eq!(fast, slow, "seed {seed}");
            }
        }
    }

    #[test]
    fn estimates_are_deterministic_across_worker_counts() {
        let model = flat_model(1);
        let sim = SimConfig::new(&model, 1.0, 400, 5).unwrap();
        let spec = tables::single_edge_spec();
        let base = estimate(&model, &spec, &sim, Some(1)).unwrap();
        for workers in [2, 4] {
            let again = estimate(&model, &spec, &sim, Some(workers)).unwrap();
            assert_eq!(base, again);
        }
    }

    #[test]
    fn estimates_track_the_exact_values() {
        let model = flat_model(1);
        let sim = SimConfig::new(&model, 1.0, 20_000, 12345).unwrap();
        let spec = tables::single_edge_spec();
        let est = estimate(&model, &spec, &sim, None).unwrap();
        let k1 = tables::single_edge_kappa(1).evaluate(1.0).unwrap();
        let k2 = tables::single_edge_kappa(2).evaluate(1.0).unwrap();
        assert!(
            (est.mean - k1).abs() < 3.0 * est.se_mean,
            "mean {} vs {k1} (se {})",
            est.mean,
            est.se_mean
        );
        assert!(
            (est.k2 - k2).abs() < 3.0 * est.se_k2,
            "k2 {} vs {k2} (se {})",
            est.k2,
            est.se_k2
        );
    }

    #[test]
    fn doubling_the_window_changes_nothing_beyond_noise() {
        // The default guard margin puts truncation bias near e^{-25}; the
        // two runs draw independent noise, so compare through the exact
        // value and through their combined standard error.
        let model = flat_model(1);
        let spec = tables::single_edge_spec();
        let sim = SimConfig::new(&model, 1.0, 20_000, 99).unwrap();
        let wide = sim.clone().with_half_width(sim.half_width * 2.0);
        let a = estimate(&model, &spec, &sim, None).unwrap();
        let b = estimate(&model, &spec, &wide, None).unwrap();
        let k1 = tables::single_edge_kappa(1).evaluate(1.0).unwrap();
        assert!((a.mean - k1).abs() < 3.0 * a.se_mean);
        assert!((b.mean - k1).abs() < 3.0 * b.se_mean);
        let combined = (a.se_mean * a.se_mean + b.se_mean * b.se_mean).sqrt();
        assert!(
            (a.mean - b.mean).abs() < 3.0 * combined,
            "window sensitivity: {} vs {} (combined se {combined})",
            a.mean,
            b.mean
        );
    }

    #[test]
    fn standardized_counts_approach_normality_as_lambda_grows() {
        let model = flat_model(1);
        let spec = tables::single_edge_spec();
        let k1_poly = tables::single_edge_kappa(1);
        let k2_poly = tables::single_edge_kappa(2);
        let mut distances = Vec::new();
        for lambda in [5.0, 50.0] {
            let sim = SimConfig::new(&model, lambda, 800, 2024).unwrap();
            let counts = replication_counts(&model, &spec, &sim, None).unwrap();
            let k1 = k1_poly.evaluate(lambda).unwrap();
            let sd = k2_poly.evaluate(lambda).unwrap().sqrt();
            let standardized: Vec<f64> =
                counts.iter().map(|&c| (c as f64 - k1) / sd).collect();
            distances.push(kolmogorov_distance_normal(&standardized));
        }
        // Kolmogorov-Smirnov acceptance at significance 0.01 for λ = 50.
        let critical = 1.6276 / (800f64).sqrt();
        assert!(
            distances[1] < critical,
            "KS distance {} ≥ critical {critical}",
            distances[1]
        );
        assert!(
            distances[1] < distances[0],
            "distance did not decrease: {distances:?}"
        );
    }

    #[test]
    fn config_validation() {
        let model = flat_model(1);
        assert!(SimConfig::new(&model, -1.0, 40, 0).is_err());
        let ok = SimConfig::new(&model, 1.0, 40, 0).unwrap();
        assert!(ok.clone().with_batches(40).validate(&model).is_err());
        assert!(ok.clone().with_batches(7).validate(&model).is_err());
        assert!(ok.with_half_width(0.0).validate(&model).is_err());
        let gaussian = ModelConfig::exact(1, Intensity::Gaussian);
        let sim = SimConfig::new(&gaussian, 1.0, 40, 0).unwrap();
        assert!(sample_rcm(&gaussian, &sim, &[], 0).is_err());
        let off_window = ModelConfig {
            dimension: 1,
            beta: Beta::Pi,
            intensity: Intensity::Flat,
            endpoint_positions: vec![vec![9.0]],
        };
        let sim = SimConfig::new(&off_window, 1.0, 40, 0).unwrap();
        assert!(sim.half_width > 9.0);
    }
}
