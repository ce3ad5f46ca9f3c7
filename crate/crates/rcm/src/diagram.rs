//! Template graphs, the merged graph induced by a set partition, and the
//! integer quadratic form of the resulting Gaussian integral.

use std::collections::{BTreeMap, BTreeSet};

use num::bigint::BigInt;

use crate::algebra::det_fraction_free;
use crate::error::{Error, Result};
use crate::partition::SetPartition;

/// A connected core graph on vertices `{1..r}` plus an ordered list of
/// endpoint attachment sets: `endpoints[l]` lists the core vertices adjacent
/// to local endpoint `l`, and `attaches[l]` is the 1-based index of that
/// endpoint in the global endpoint list (several templates in a joint
/// computation may share global endpoints).
///
/// Endpoints are never adjacent to each other: attachments only ever join an
/// endpoint to core vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphSpec {
    vertices: usize,
    edges: BTreeSet<(usize, usize)>,
    endpoints: Vec<BTreeSet<usize>>,
    attaches: Vec<usize>,
}

/// Checks raw edge/endpoint input, naming each violation instead of
/// stopping at the first.
pub fn validate_spec(
    edges: &[(usize, usize)],
    endpoints: &[Vec<usize>],
    attaches: Option<&[usize]>,
) -> Vec<String> {
    let mut diags = Vec::new();
    if edges.is_empty() {
        diags.push("core graph has no edges (r ≥ 2 requires at least one)".into());
        return diags;
    }
    let mut r = 0;
    let mut seen = BTreeSet::new();
    for &(a, b) in edges {
        if a == 0 || b == 0 {
            diags.push(format!("vertex labels are 1-based: edge [{a},{b}]"));
            return diags;
        }
        if a == b {
            diags.push(format!("self-loop at vertex {a}"));
        }
        let key = (a.min(b), a.max(b));
        if !seen.insert(key) {
            diags.push(format!("duplicate edge [{},{}]", key.0, key.1));
        }
        r = r.max(a).max(b);
    }
    // Core connectivity over {1..r}; an unused label shows up as isolation.
    let mut adj = vec![Vec::new(); r + 1];
    for &(a, b) in &seen {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut visited = vec![false; r + 1];
    let mut stack = vec![1];
    visited[1] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !visited[w] {
                visited[w] = true;
                stack.push(w);
            }
        }
    }
    if (1..=r).any(|v| !visited[v]) {
        diags.push("core not connected".into());
    }
    for (l, ep) in endpoints.iter().enumerate() {
        if ep.is_empty() {
            diags.push(format!("empty endpoint attachment at position {}", l + 1));
        }
        for &v in ep {
            if v == 0 || v > r {
                diags.push(format!(
                    "endpoint {} attaches to vertex {v} outside 1..{r}",
                    l + 1
                ));
            }
        }
    }
    if let Some(at) = attaches {
        if at.len() != endpoints.len() {
            diags.push(format!(
                "attaches lists {} endpoints but {} attachment sets are given",
                at.len(),
                endpoints.len()
            ));
        }
        let mut seen = BTreeSet::new();
        for &j in at {
            if j == 0 {
                diags.push("global endpoint indices are 1-based".into());
            }
            if !seen.insert(j) {
                diags.push(format!("global endpoint {j} attached twice by one template"));
            }
        }
    }
    diags
}

impl GraphSpec {
    /// Template with the identity endpoint numbering (local endpoint `l`
    /// is global endpoint `l`).
    pub fn new(edges: Vec<(usize, usize)>, endpoints: Vec<Vec<usize>>) -> Result<Self> {
        let attaches = (1..=endpoints.len()).collect();
        Self::with_attaches(edges, endpoints, attaches)
    }

    pub fn with_attaches(
        edges: Vec<(usize, usize)>,
        endpoints: Vec<Vec<usize>>,
        attaches: Vec<usize>,
    ) -> Result<Self> {
        let diags = validate_spec(&edges, &endpoints, Some(&attaches));
        if !diags.is_empty() {
            return Err(Error::domain(format!(
                "invalid graph spec: {}",
                diags.join("; ")
            )));
        }
        let vertices = edges.iter().map(|&(a, b)| a.max(b)).max().unwrap();
        Ok(GraphSpec {
            vertices,
            edges: edges
                .into_iter()
                .map(|(a, b)| (a.min(b), a.max(b)))
                .collect(),
            endpoints: endpoints
                .into_iter()
                .map(|ep| ep.into_iter().collect())
                .collect(),
            attaches,
        })
    }

    /// Parses `{"edges": [[1,2],...], "endpoints": [[1],[2],...]}` with an
    /// optional `"attaches": [j,...]` mapping local to global endpoints.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let parse_pairs = |val: &serde_json::Value, what: &str| -> Result<Vec<(usize, usize)>> {
            val.as_array()
                .ok_or_else(|| Error::domain(format!("{what} must be an array")))?
                .iter()
                .map(|e| {
                    let pair = e
                        .as_array()
                        .filter(|p| p.len() == 2)
                        .ok_or_else(|| Error::domain(format!("{what} entries must be pairs")))?;
                    let a = pair[0]
                        .as_u64()
                        .ok_or_else(|| Error::domain(format!("bad vertex in {what}")))?;
                    let b = pair[1]
                        .as_u64()
                        .ok_or_else(|| Error::domain(format!("bad vertex in {what}")))?;
                    Ok((a as usize, b as usize))
                })
                .collect()
        };
        let edges = parse_pairs(&v["edges"], "edges")?;
        let endpoints: Vec<Vec<usize>> = match &v["endpoints"] {
            serde_json::Value::Null => Vec::new(),
            val => val
                .as_array()
                .ok_or_else(|| Error::domain("endpoints must be an array of arrays"))?
                .iter()
                .map(|ep| {
                    ep.as_array()
                        .ok_or_else(|| Error::domain("endpoints must be an array of arrays"))?
                        .iter()
                        .map(|x| {
                            x.as_u64()
                                .map(|u| u as usize)
                                .ok_or_else(|| Error::domain("bad vertex in endpoints"))
                        })
                        .collect()
                })
                .collect::<Result<_>>()?,
        };
        match &v["attaches"] {
            serde_json::Value::Null => Self::new(edges, endpoints),
            val => {
                let attaches = val
                    .as_array()
                    .ok_or_else(|| Error::domain("attaches must be an array"))?
                    .iter()
                    .map(|x| {
                        x.as_u64()
                            .map(|u| u as usize)
                            .ok_or_else(|| Error::domain("bad index in attaches"))
                    })
                    .collect::<Result<_>>()?;
                Self::with_attaches(edges, endpoints, attaches)
            }
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(s)
            .map_err(|e| Error::domain(format!("bad graph spec JSON: {e}")))?;
        Self::from_json(&v)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let edges: Vec<Vec<usize>> = self.edges.iter().map(|&(a, b)| vec![a, b]).collect();
        let endpoints: Vec<Vec<usize>> = self
            .endpoints
            .iter()
            .map(|ep| ep.iter().copied().collect())
            .collect();
        let identity = self.attaches.iter().copied().eq(1..=self.endpoints.len());
        if identity {
            serde_json::json!({ "edges": edges, "endpoints": endpoints })
        } else {
            serde_json::json!({
                "edges": edges,
                "endpoints": endpoints,
                "attaches": self.attaches,
            })
        }
    }

    /// Number of core vertices `r`.
    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of local endpoints.
    pub fn endpoint_count(&self) -> usize {
        self.endpoints.len()
    }

    pub fn endpoint_attachments(&self) -> &[BTreeSet<usize>] {
        &self.endpoints
    }

    /// Global endpoint indices, one per local endpoint.
    pub fn attaches(&self) -> &[usize] {
        &self.attaches
    }

    /// Global endpoints this vertex is attached to.
    pub fn global_endpoints_of_vertex(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.endpoints
            .iter()
            .zip(&self.attaches)
            .filter(move |(ep, _)| ep.contains(&v))
            .map(|(_, &j)| j)
    }
}

/// The merged graph on `|ρ| + m` vertices: one vertex per block of the
/// partition (in canonical order), endpoints indexed after the blocks.
/// Stacking one template copy per row, replacing each vertex by its block
/// and deduplicating yields the edge set; `endpoint_neighborhoods[j]` is the
/// set of blocks adjacent to global endpoint `j+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoGraph {
    pub core_vertices: usize,
    pub endpoint_count: usize,
    pub edges: BTreeSet<(usize, usize)>,
    pub endpoint_neighborhoods: Vec<BTreeSet<usize>>,
}

/// Merges `specs` (one per row of the partition's ground set) along `p`.
///
/// The partition must be non-flat on every merged edge: merging the two
/// ends of one copy's core edge would create a loop, which no summation
/// domain ever evaluates, so it is reported as a caller bug.
pub fn build_rho_graph(specs: &[&GraphSpec], p: &SetPartition) -> Result<RhoGraph> {
    let rows = p.ground().row_sizes();
    if specs.len() != rows.len() {
        return Err(Error::domain(format!(
            "{} templates for {} rows",
            specs.len(),
            rows.len()
        )));
    }
    for (i, (spec, &r)) in specs.iter().zip(rows).enumerate() {
        if spec.vertex_count() != r {
            return Err(Error::domain(format!(
                "row {} has size {r} but its template has {} vertices",
                i + 1,
                spec.vertex_count()
            )));
        }
    }
    let m = specs
        .iter()
        .flat_map(|s| s.attaches().iter().copied())
        .max()
        .unwrap_or(0);
    let mut edges = BTreeSet::new();
    let mut neighborhoods = vec![BTreeSet::new(); m];
    for (i, spec) in specs.iter().enumerate() {
        let row = i + 1;
        for (a, b) in spec.edges() {
            let u = p.block_index((row, a))?;
            let v = p.block_index((row, b))?;
            if u == v {
                return Err(Error::domain(format!(
                    "flat partition merges the ends of core edge [{a},{b}] in row {row}"
                )));
            }
            edges.insert((u.min(v), u.max(v)));
        }
        for (ep, &j) in spec.endpoint_attachments().iter().zip(spec.attaches()) {
            for &v in ep {
                neighborhoods[j - 1].insert(p.block_index((row, v))?);
            }
        }
    }
    Ok(RhoGraph {
        core_vertices: p.block_count(),
        endpoint_count: m,
        edges,
        endpoint_neighborhoods: neighborhoods,
    })
}

impl RhoGraph {
    /// Degree of a block vertex within the core (endpoint edges excluded).
    pub fn core_degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    /// True iff the whole graph on `|ρ|+m` vertices is connected.
    pub fn is_connected_with_endpoints(&self) -> bool {
        let k = self.core_vertices + self.endpoint_count;
        if k == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); k + 1];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for (j, nb) in self.endpoint_neighborhoods.iter().enumerate() {
            let e = self.core_vertices + j + 1;
            for &v in nb {
                adj[e].push(v);
                adj[v].push(e);
            }
        }
        let mut visited = vec![false; k + 1];
        let mut stack = vec![1];
        visited[1] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !visited[w] {
                    visited[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == k
    }
}

/// The symmetric integer matrix `M` of the per-coordinate quadratic form
/// `β·xᵀMx` of the merged graph's Gaussian integrand, with all endpoints at
/// the origin: `M` is the core Laplacian plus, on the diagonal, one unit per
/// adjacent endpoint and one unit when the intensity is itself Gaussian.
/// The exact integral over all `d·|ρ|` coordinates is
/// `(π/β)^{|ρ|d/2}·det(M)^{−d/2}`; each deduplicated edge contributes a
/// single factor to the integrand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerGramMatrix {
    entries: Vec<Vec<i64>>,
}

pub fn assemble_gram_matrix(rg: &RhoGraph, gaussian_intensity: bool) -> IntegerGramMatrix {
    let k = rg.core_vertices;
    let mut m = vec![vec![0i64; k]; k];
    for &(a, b) in &rg.edges {
        m[a - 1][b - 1] = -1;
        m[b - 1][a - 1] = -1;
        m[a - 1][a - 1] += 1;
        m[b - 1][b - 1] += 1;
    }
    for nb in &rg.endpoint_neighborhoods {
        for &v in nb {
            m[v - 1][v - 1] += 1;
        }
    }
    if gaussian_intensity {
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += 1;
        }
    }
    IntegerGramMatrix { entries: m }
}

impl IntegerGramMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn det(&self) -> BigInt {
        det_fraction_free(&self.entries)
    }

    /// Flat entry list, the memoization key for per-partition integrals.
    pub fn key(&self) -> Vec<i64> {
        let mut key = Vec::with_capacity(self.size() * self.size() + 1);
        key.push(self.size() as i64);
        for row in &self.entries {
            key.extend_from_slice(row);
        }
        key
    }

    pub fn from_rows(entries: Vec<Vec<i64>>) -> Self {
        IntegerGramMatrix { entries }
    }
}

/// Groups the global endpoint indices attached by a family of templates and
/// checks they form a contiguous range `1..=m`.
pub fn global_endpoint_count(specs: &[&GraphSpec]) -> Result<usize> {
    let mut all: BTreeMap<usize, usize> = BTreeMap::new();
    for s in specs {
        for &j in s.attaches() {
            *all.entry(j).or_insert(0) += 1;
        }
    }
    let m = all.keys().next_back().copied().unwrap_or(0);
    for j in 1..=m {
        if !all.contains_key(&j) {
            return Err(Error::domain(format!(
                "global endpoint {j} is attached by no template (indices must cover 1..={m})"
            )));
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{
        enumerate_partitions, GroundSet, PartitionFilter, SetPartition, DEFAULT_GROUND_LIMIT,
    };
    use num::Zero;

    fn spec(edges: &[(usize, usize)], eps: &[&[usize]]) -> GraphSpec {
        GraphSpec::new(
            edges.to_vec(),
            eps.iter().map(|e| e.to_vec()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(validate_spec(&[(1, 2)], &[vec![1], vec![2]], None).is_empty());

        let diags = validate_spec(&[(1, 2), (3, 4)], &[], None);
        assert!(diags.iter().any(|d| d.contains("core not connected")));

        let diags = validate_spec(&[(1, 2)], &[vec![]], None);
        assert!(diags.iter().any(|d| d.contains("empty endpoint attachment")));
    }

    #[test]
    fn validate_flags_loops_and_duplicates() {
        let diags = validate_spec(&[(1, 1), (1, 2), (2, 1)], &[], None);
        assert!(diags.iter().any(|d| d.contains("self-loop")));
        assert!(diags.iter().any(|d| d.contains("duplicate edge")));
    }

    #[test]
    fn nine_block_merge_example() {
        // Three copies of a 4-vertex tree with two endpoints, merged along
        // a 9-block partition: the endpoint neighborhoods come out as
        // {1,5} and {4,7}.
        let s = spec(&[(1, 2), (2, 3), (2, 4)], &[&[1], &[4]]);
        let ground = GroundSet::uniform(3, 4).unwrap();
        let p = SetPartition::from_blocks(
            ground,
            &[
                vec![(1, 1)],
                vec![(1, 2), (2, 2)],
                vec![(1, 3)],
                vec![(1, 4)],
                vec![(2, 1), (3, 1)],
                vec![(2, 3)],
                vec![(2, 4), (3, 4)],
                vec![(3, 2)],
                vec![(3, 3)],
            ],
        )
        .unwrap();
        let rg = build_rho_graph(&[&s, &s, &s], &p).unwrap();
        assert_eq!(rg.core_vertices, 9);
        assert_eq!(rg.endpoint_count, 2);
        assert_eq!(
            rg.endpoint_neighborhoods[0],
            [1usize, 5].into_iter().collect()
        );
        assert_eq!(
            rg.endpoint_neighborhoods[1],
            [4usize, 7].into_iter().collect()
        );
        let expect: BTreeSet<(usize, usize)> = [
            (1, 2),
            (2, 3),
            (2, 4),
            (2, 5),
            (2, 6),
            (2, 7),
            (5, 8),
            (8, 9),
            (7, 8),
        ]
        .into_iter()
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
        assert_eq!(rg.edges, expect);
    }

    #[test]
    fn singleton_partition_reproduces_the_template() {
        let s = spec(&[(1, 2), (2, 3), (3, 1)], &[&[1], &[2], &[3]]);
        let ground = GroundSet::uniform(1, 3).unwrap();
        let p = SetPartition::from_blocks(
            ground,
            &[vec![(1, 1)], vec![(1, 2)], vec![(1, 3)]],
        )
        .unwrap();
        let rg = build_rho_graph(&[&s], &p).unwrap();
        assert_eq!(rg.core_vertices, 3);
        assert_eq!(rg.edges.len(), 3);
        for (j, nb) in rg.endpoint_neighborhoods.iter().enumerate() {
            assert_eq!(nb.iter().copied().collect::<Vec<_>>(), vec![j + 1]);
        }
    }

    #[test]
    fn two_copies_merge_to_one_edge() {
        let s = spec(&[(1, 2)], &[&[1], &[2]]);
        let ground = GroundSet::uniform(2, 2).unwrap();
        let p = SetPartition::from_blocks(
            ground,
            &[vec![(1, 1), (2, 1)], vec![(1, 2), (2, 2)]],
        )
        .unwrap();
        let rg = build_rho_graph(&[&s, &s], &p).unwrap();
        assert_eq!(rg.core_vertices, 2);
        assert_eq!(rg.edges.len(), 1);
    }

    #[test]
    fn degenerate_merge_is_a_domain_error() {
        let s = spec(&[(1, 2)], &[&[1], &[2]]);
        let ground = GroundSet::uniform(1, 2).unwrap();
        let p = SetPartition::from_blocks(ground, &[vec![(1, 1), (1, 2)]]).unwrap();
        let err = build_rho_graph(&[&s], &p).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn gram_matrix_examples() {
        // Triangle with three endpoints: det 16 (forced by κ₁ = λ³/4).
        let s = spec(&[(1, 2), (2, 3), (3, 1)], &[&[1], &[2], &[3]]);
        let ground = GroundSet::uniform(1, 3).unwrap();
        let p = enumerate_partitions(&ground, PartitionFilter::ConnectedNonFlat, 16)
            .unwrap()
            .next()
            .unwrap();
        let rg = build_rho_graph(&[&s], &p).unwrap();
        let m = assemble_gram_matrix(&rg, false);
        assert_eq!(
            m.entries(),
            &[vec![3, -1, -1], vec![-1, 3, -1], vec![-1, -1, 3]]
        );
        assert_eq!(m.det(), BigInt::from(16));

        // Single edge with two endpoints: det 3 (forced by κ₁ = λ²/√3).
        let s = spec(&[(1, 2)], &[&[1], &[2]]);
        let ground = GroundSet::uniform(1, 2).unwrap();
        let p = enumerate_partitions(&ground, PartitionFilter::ConnectedNonFlat, 16)
            .unwrap()
            .next()
            .unwrap();
        let rg = build_rho_graph(&[&s], &p).unwrap();
        let m = assemble_gram_matrix(&rg, false);
        assert_eq!(m.entries(), &[vec![2, -1], vec![-1, 2]]);
        assert_eq!(m.det(), BigInt::from(3));

        // Tree with one endpoint on vertices {1,3,4}: det 12 (forced by
        // κ₁ = λ⁴/12 at d = 2).
        let s = spec(&[(1, 2), (2, 3), (2, 4)], &[&[1, 3, 4]]);
        let ground = GroundSet::uniform(1, 4).unwrap();
        let p = enumerate_partitions(&ground, PartitionFilter::ConnectedNonFlat, 16)
            .unwrap()
            .next()
            .unwrap();
        let rg = build_rho_graph(&[&s], &p).unwrap();
        let m = assemble_gram_matrix(&rg, false);
        assert_eq!(
            m.entries(),
            &[
                vec![2, -1, 0, 0],
                vec![-1, 3, -1, -1],
                vec![0, -1, 2, 0],
                vec![0, -1, 0, 2]
            ]
        );
        assert_eq!(m.det(), BigInt::from(12));
    }

    #[test]
    fn merged_graphs_stay_connected_across_the_census() {
        let s = spec(&[(1, 2), (2, 3)], &[&[1], &[3]]);
        let ground = GroundSet::uniform(2, 3).unwrap();
        for p in
            enumerate_partitions(&ground, PartitionFilter::ConnectedNonFlat, 16).unwrap()
        {
            let rg = build_rho_graph(&[&s, &s], &p).unwrap();
            assert!(rg.is_connected_with_endpoints(), "disconnected for {p}");
        }
    }

    #[test]
    fn laplacian_rows_sum_to_zero() {
        let s = spec(&[(1, 2), (2, 3)], &[&[1], &[3]]);
        let ground = GroundSet::uniform(2, 3).unwrap();
        let p = enumerate_partitions(&ground, PartitionFilter::ConnectedNonFlat, 16)
            .unwrap()
            .nth(5)
            .unwrap();
        let rg = build_rho_graph(&[&s, &s], &p).unwrap();
        let m = assemble_gram_matrix(&rg, false);
        for (i, row) in m.entries().iter().enumerate() {
            let anchors = rg
                .endpoint_neighborhoods
                .iter()
                .filter(|nb| nb.contains(&(i + 1)))
                .count() as i64;
            let degree = rg.core_degree(i + 1) as i64;
            assert_eq!(row.iter().sum::<i64>(), anchors, "row {i}");
            assert_eq!(row[i], degree + anchors, "diag {i}");
        }
    }

    #[test]
    fn determinant_positivity_matches_anchoring() {
        // Endpoints anchor the form; with none and a flat intensity the
        // Laplacian is singular.
        let anchored = spec(&[(1, 2), (2, 3), (3, 1)], &[&[1]]);
        let free = spec(&[(1, 2), (2, 3), (3, 1)], &[]);
        let ground = GroundSet::uniform(2, 3).unwrap();
        for p in
            enumerate_partitions(&ground, PartitionFilter::ConnectedNonFlat, 16).unwrap()
        {
            let rg = build_rho_graph(&[&anchored, &anchored], &p).unwrap();
            assert!(assemble_gram_matrix(&rg, false).det() > BigInt::zero());
            let rg = build_rho_graph(&[&free, &free], &p).unwrap();
            assert!(assemble_gram_matrix(&rg, false).det().is_zero());
            assert!(assemble_gram_matrix(&rg, true).det() > BigInt::zero());
        }
    }

    #[test]
    fn rebuilding_from_built_edges_changes_nothing() {
        let s = spec(&[(1, 2), (2, 3)], &[&[1], &[3]]);
        let ground = GroundSet::uniform(3, 3).unwrap();
        let p = enumerate_partitions(&ground, PartitionFilter::ConnectedNonFlat, 16)
            .unwrap()
            .nth(20)
            .unwrap();
        let rg = build_rho_graph(&[&s, &s, &s], &p).unwrap();
        let again: BTreeSet<(usize, usize)> = rg.edges.iter().copied().collect();
        assert_eq!(again, rg.edges);
    }

    #[test]
    fn json_round_trip() {
        let s = spec(&[(1, 2), (2, 3)], &[&[1], &[3]]);
        let parsed = GraphSpec::from_json(&s.to_json()).unwrap();
        assert_eq!(parsed, s);

        let joint = GraphSpec::with_attaches(vec![(1, 2)], vec![vec![1], vec![2]], vec![2, 3])
            .unwrap();
        let parsed = GraphSpec::from_json(&joint.to_json()).unwrap();
        assert_eq!(parsed, joint);
    }

    #[test]
    fn global_endpoint_indices_must_be_contiguous() {
        let a = GraphSpec::with_attaches(vec![(1, 2)], vec![vec![1]], vec![1]).unwrap();
        let b = GraphSpec::with_attaches(vec![(1, 2)], vec![vec![2]], vec![3]).unwrap();
        assert!(global_endpoint_count(&[&a, &b]).is_err());
        let b = GraphSpec::with_attaches(vec![(1, 2)], vec![vec![2]], vec![2]).unwrap();
        assert_eq!(global_endpoint_count(&[&a, &b]).unwrap(), 2);
    }

    #[test]
    fn limit_respected_by_enumeration_used_here() {
        let ground = GroundSet::uniform(3, 3).unwrap();
        assert!(enumerate_partitions(&ground, PartitionFilter::All, DEFAULT_GROUND_LIMIT).is_ok());
    }
}
