//! Set partitions of multirow ground sets and their enumeration.
//!
//! The ground set is `π₁ ∪ … ∪ πₙ` with `πᵢ = {(i,1), …, (i,rᵢ)}`; the
//! uniform case `r₁ = … = rₙ = r` is `[n]×[r]`. Moments sum over the
//! non-flat partitions of this set (no block holds two elements of one row)
//! and cumulants over the non-flat partitions that additionally connect all
//! rows.
//!
//! Partitions are generated as restricted-growth strings over the elements
//! in row-major order, with flat prefixes pruned the moment a block would
//! receive a second element from its latest row. Connectivity is tracked
//! incrementally by a rollback union-find over the rows.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default ceiling on the number of ground-set elements; Bell(16) ≈ 10^10
/// is past desk scale. A knob, not a constant: every entry point takes the
/// limit as an argument.
pub const DEFAULT_GROUND_LIMIT: usize = 16;

const NEW_BLOCK: u8 = u8::MAX;

/// A multirow ground set with rows of sizes `r₁, …, rₙ`; elements are the
/// 1-based pairs `(i, j)` with `1 ≤ i ≤ n`, `1 ≤ j ≤ rᵢ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    row_sizes: Vec<usize>,
    offsets: Vec<usize>,
}

impl GroundSet {
    pub fn new(row_sizes: Vec<usize>) -> Result<Self> {
        if row_sizes.is_empty() {
            return Err(Error::domain("ground set needs at least one row"));
        }
        if row_sizes.iter().any(|&r| r == 0) {
            return Err(Error::domain("ground set rows must be non-empty"));
        }
        let mut offsets = Vec::with_capacity(row_sizes.len() + 1);
        let mut acc = 0;
        offsets.push(0);
        for &r in &row_sizes {
            acc += r;
            offsets.push(acc);
        }
        Ok(GroundSet { row_sizes, offsets })
    }

    /// `[n]×[r]`.
    pub fn uniform(rows: usize, row_size: usize) -> Result<Self> {
        Self::new(vec![row_size; rows])
    }

    pub fn rows(&self) -> usize {
        self.row_sizes.len()
    }

    pub fn row_sizes(&self) -> &[usize] {
        &self.row_sizes
    }

    /// Total number of elements.
    pub fn len(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Elements in row-major order, the canonical element order everywhere.
    pub fn elements(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.row_sizes
            .iter()
            .enumerate()
            .flat_map(|(i, &r)| (1..=r).map(move |j| (i + 1, j)))
    }

    pub fn flat_index(&self, e: (usize, usize)) -> Option<usize> {
        let (i, j) = e;
        if i == 0 || i > self.rows() || j == 0 || j > self.row_sizes[i - 1] {
            return None;
        }
        Some(self.offsets[i - 1] + j - 1)
    }

    /// 0-based row of a flat element index.
    fn row_of(&self, flat: usize) -> usize {
        debug_assert!(flat < self.len());
        self.offsets.partition_point(|&o| o <= flat) - 1
    }

    fn element_at(&self, flat: usize) -> (usize, usize) {
        let row = self.row_of(flat);
        (row + 1, flat - self.offsets[row] + 1)
    }

    fn check_limit(&self, limit: usize) -> Result<()> {
        if self.len() > limit {
            return Err(Error::GroundSetTooLarge {
                size: self.len(),
                limit,
            });
        }
        Ok(())
    }
}

/// A set partition in canonical form: blocks ordered by their smallest
/// element (row-major order), elements sorted within each block. Stored as
/// a restricted-growth string, so two partitions are equal iff their
/// encodings are byte-identical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetPartition {
    ground: GroundSet,
    rgs: Vec<u8>,
}

impl SetPartition {
    pub(crate) fn from_rgs(ground: GroundSet, rgs: Vec<u8>) -> Self {
        debug_assert_eq!(rgs.len(), ground.len());
        SetPartition { ground, rgs }
    }

    /// Builds a partition from explicit blocks, canonicalizing their order.
    pub fn from_blocks(ground: GroundSet, blocks: &[Vec<(usize, usize)>]) -> Result<Self> {
        let n = ground.len();
        let mut owner = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::domain("empty block"));
            }
            for &e in block {
                let f = ground
                    .flat_index(e)
                    .ok_or_else(|| Error::domain(format!("element {e:?} outside ground set")))?;
                if owner[f] != usize::MAX {
                    return Err(Error::domain(format!("element {e:?} appears twice")));
                }
                owner[f] = b;
            }
        }
        if owner.iter().any(|&b| b == usize::MAX) {
            return Err(Error::domain("blocks do not cover the ground set"));
        }
        // Relabel blocks by first appearance in row-major element order.
        let mut relabel = vec![u8::MAX; blocks.len()];
        let mut next = 0u8;
        let mut rgs = Vec::with_capacity(n);
        for &b in &owner {
            if relabel[b] == u8::MAX {
                relabel[b] = next;
                next += 1;
            }
            rgs.push(relabel[b]);
        }
        Ok(SetPartition { ground, rgs })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn block_count(&self) -> usize {
        self.rgs.iter().map(|&l| l as usize + 1).max().unwrap_or(0)
    }

    /// The canonical restricted-growth encoding.
    pub fn encoding(&self) -> &[u8] {
        &self.rgs
    }

    /// Blocks in canonical order.
    pub fn blocks(&self) -> Vec<Vec<(usize, usize)>> {
        let mut out = vec![Vec::new(); self.block_count()];
        for (f, &l) in self.rgs.iter().enumerate() {
            out[l as usize].push(self.ground.element_at(f));
        }
        out
    }

    /// 1-based index of the block containing `e` in canonical order.
    pub fn block_index(&self, e: (usize, usize)) -> Result<usize> {
        let f = self
            .ground
            .flat_index(e)
            .ok_or_else(|| Error::domain(format!("element {e:?} outside ground set")))?;
        Ok(self.rgs[f] as usize + 1)
    }

    /// True iff no block holds two elements of the same row.
    pub fn is_non_flat(&self) -> bool {
        let mut seen: Vec<(usize, usize)> = Vec::with_capacity(self.rgs.len());
        for (f, &l) in self.rgs.iter().enumerate() {
            let row = self.ground.row_of(f);
            if seen
                .iter()
                .any(|&(bl, br)| bl == l as usize && br == row)
            {
                return false;
            }
            seen.push((l as usize, row));
        }
        true
    }

    /// True iff the blocks, read as hyperedges over the rows they touch,
    /// connect all rows. A single-row ground set is always connected.
    pub fn is_connected(&self) -> bool {
        self.row_components().len() == 1
    }

    /// The partition of the rows induced by block contacts: rows `i₁, i₂`
    /// share a group iff some chain of blocks links them. Splitting the
    /// partition along these groups recovers its connected subpartitions.
    pub fn row_components(&self) -> Vec<Vec<usize>> {
        let n = self.ground.rows();
        let mut dsu = RowDsu::new(n);
        let mut first_row = vec![usize::MAX; self.block_count()];
        for (f, &l) in self.rgs.iter().enumerate() {
            let row = self.ground.row_of(f);
            let b = l as usize;
            if first_row[b] == usize::MAX {
                first_row[b] = row;
            } else {
                dsu.union(row as u8, first_row[b] as u8);
            }
        }
        let mut groups: BTreeMap<u8, Vec<usize>> = BTreeMap::new();
        for row in 0..n {
            groups.entry(dsu.find(row as u8)).or_default().push(row + 1);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort_by_key(|g| g[0]);
        out
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (bi, block) in self.blocks().iter().enumerate() {
            if bi > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (ei, e) in block.iter().enumerate() {
                if ei > 0 {
                    write!(f, ",")?;
                }
                write!(f, "({},{})", e.0, e.1)?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

/// Which partitions an enumeration yields.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PartitionFilter {
    All,
    NonFlat,
    ConnectedNonFlat,
}

/// Union-find over rows with rollback (no path compression).
#[derive(Clone, Debug)]
struct RowDsu {
    parent: Vec<u8>,
    size: Vec<u16>,
    components: usize,
}

type UnionRecord = Option<(u8, u8)>; // (child root, parent root)

impl RowDsu {
    fn new(n: usize) -> Self {
        RowDsu {
            parent: (0..n as u8).collect(),
            size: vec![1; n],
            components: n,
        }
    }

    fn find(&self, mut x: u8) -> u8 {
        while self.parent[x as usize] != x {
            x = self.parent[x as usize];
        }
        x
    }

    fn union(&mut self, a: u8, b: u8) -> UnionRecord {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return None;
        }
        let (child, parent) = if self.size[ra as usize] < self.size[rb as usize] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[child as usize] = parent;
        self.size[parent as usize] += self.size[child as usize];
        self.components -= 1;
        Some((child, parent))
    }

    fn rollback(&mut self, rec: UnionRecord) {
        if let Some((child, parent)) = rec {
            self.parent[child as usize] = child;
            self.size[parent as usize] -= self.size[child as usize];
            self.components += 1;
        }
    }
}

#[derive(Debug)]
enum IterState {
    NotStarted,
    Running,
    Done,
}

/// Streaming enumerator. Yields each qualifying partition exactly once, in
/// the lexicographic order of the restricted-growth strings; the order is
/// deterministic and identical on every run. A prefix may be pinned to
/// enumerate one chunk of the space, which is how the parallel drivers
/// split work.
#[derive(Debug)]
pub struct Partitions {
    ground: GroundSet,
    filter: PartitionFilter,
    n: usize,
    prefix_len: usize,
    rgs: Vec<u8>,
    nblocks: Vec<u8>,
    row_of: Vec<u8>,
    last_row: Vec<u8>,
    first_row: Vec<u8>,
    undo_last_row: Vec<u8>,
    dsu: RowDsu,
    dsu_undo: Vec<UnionRecord>,
    state: IterState,
}

impl Partitions {
    fn new(ground: GroundSet, filter: PartitionFilter) -> Self {
        let n = ground.len();
        let row_of = (0..n).map(|f| ground.row_of(f) as u8).collect();
        let rows = ground.rows();
        Partitions {
            ground,
            filter,
            n,
            prefix_len: 0,
            rgs: vec![0; n],
            nblocks: vec![0; n + 1],
            row_of,
            last_row: vec![0; n],
            first_row: vec![0; n],
            undo_last_row: vec![0; n],
            dsu: RowDsu::new(rows),
            dsu_undo: vec![None; n],
            state: IterState::NotStarted,
        }
    }

    /// Pins the first `prefix.len()` assignments; the iterator then runs
    /// over all completions of that prefix.
    pub(crate) fn with_prefix(ground: GroundSet, filter: PartitionFilter, prefix: &[u8]) -> Self {
        let mut it = Self::new(ground, filter);
        for (t, &label) in prefix.iter().enumerate() {
            debug_assert!(it.is_valid_choice(t, label));
            it.apply(t, label);
        }
        it.prefix_len = prefix.len();
        it
    }

    fn is_valid_choice(&self, t: usize, label: u8) -> bool {
        if label == self.nblocks[t] {
            return true;
        }
        if label > self.nblocks[t] {
            return false;
        }
        match self.filter {
            PartitionFilter::All => true,
            _ => self.last_row[label as usize] != self.row_of[t],
        }
    }

    /// Smallest valid label ≥ `from` for element `t`; the fresh-block label
    /// `nblocks[t]` is always valid, so this is `None` only past it.
    fn next_choice(&self, t: usize, from: u8) -> Option<u8> {
        (from..=self.nblocks[t]).find(|&l| self.is_valid_choice(t, l))
    }

    fn apply(&mut self, t: usize, label: u8) {
        let row = self.row_of[t];
        if label == self.nblocks[t] {
            self.last_row[label as usize] = row;
            self.first_row[label as usize] = row;
            self.undo_last_row[t] = NEW_BLOCK;
            self.dsu_undo[t] = None;
            self.nblocks[t + 1] = self.nblocks[t] + 1;
        } else {
            let b = label as usize;
            self.undo_last_row[t] = self.last_row[b];
            self.last_row[b] = row;
            self.dsu_undo[t] = self.dsu.union(row, self.first_row[b]);
            self.nblocks[t + 1] = self.nblocks[t];
        }
        self.rgs[t] = label;
    }

    fn undo(&mut self, t: usize) {
        let label = self.rgs[t] as usize;
        if self.undo_last_row[t] != NEW_BLOCK {
            self.last_row[label] = self.undo_last_row[t];
        }
        self.dsu.rollback(self.dsu_undo[t]);
    }

    /// Backtracks from `from`, leaving the cursor just past the deepest
    /// position that still had an untried choice.
    fn retreat(&mut self, from: usize) -> Option<usize> {
        for t in (self.prefix_len..from).rev() {
            self.undo(t);
            if let Some(l) = self.next_choice(t, self.rgs[t] + 1) {
                self.apply(t, l);
                return Some(t + 1);
            }
        }
        None
    }

    fn accept(&self) -> bool {
        match self.filter {
            PartitionFilter::ConnectedNonFlat => self.dsu.components == 1,
            _ => true,
        }
    }

    /// Advances to the next accepted full assignment.
    pub(crate) fn advance(&mut self) -> bool {
        let mut t = match self.state {
            IterState::Done => return false,
            IterState::NotStarted => {
                self.state = IterState::Running;
                self.prefix_len
            }
            IterState::Running => match self.retreat(self.n) {
                Some(t) => t,
                None => {
                    self.state = IterState::Done;
                    return false;
                }
            },
        };
        loop {
            while t < self.n {
                let l = self.next_choice(t, 0).expect("fresh block always valid");
                self.apply(t, l);
                t += 1;
            }
            if self.accept() {
                return true;
            }
            match self.retreat(self.n) {
                Some(back) => t = back,
                None => {
                    self.state = IterState::Done;
                    return false;
                }
            }
        }
    }

    #[cfg_attr(not(test), allow(dead_code))]
    pub(crate) fn current_encoding(&self) -> &[u8] {
        &self.rgs
    }

    pub(crate) fn current_block_count(&self) -> usize {
        self.nblocks[self.n] as usize
    }

    pub(crate) fn current_partition(&self) -> SetPartition {
        SetPartition::from_rgs(self.ground.clone(), self.rgs.clone())
    }
}

impl Iterator for Partitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.advance() {
            Some(self.current_partition())
        } else {
            None
        }
    }
}

/// Streams the qualifying partitions of `ground`.
pub fn enumerate_partitions(
    ground: &GroundSet,
    filter: PartitionFilter,
    limit: usize,
) -> Result<Partitions> {
    ground.check_limit(limit)?;
    Ok(Partitions::new(ground.clone(), filter))
}

/// Histogram of partition counts by block count.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub by_block_count: BTreeMap<usize, u64>,
    pub total: u64,
}

impl Census {
    pub fn record(&mut self, blocks: usize) {
        *self.by_block_count.entry(blocks).or_insert(0) += 1;
        self.total += 1;
    }

    pub fn merge(&mut self, other: &Census) {
        for (&b, &c) in &other.by_block_count {
            *self.by_block_count.entry(b).or_insert(0) += c;
        }
        self.total += other.total;
    }

    pub fn from_pairs(pairs: &[(usize, u64)]) -> Self {
        let mut c = Census::default();
        for &(b, n) in pairs {
            c.by_block_count.insert(b, n);
            c.total += n;
        }
        c
    }
}

impl fmt::Display for Census {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (b, c)) in self.by_block_count.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b}:{c}")?;
        }
        write!(f, "}} total {}", self.total)
    }
}

/// Serial census.
pub fn partition_census(
    ground: &GroundSet,
    filter: PartitionFilter,
    limit: usize,
) -> Result<Census> {
    ground.check_limit(limit)?;
    let mut it = Partitions::new(ground.clone(), filter);
    let mut census = Census::default();
    while it.advance() {
        census.record(it.current_block_count());
    }
    Ok(census)
}

/// Number of chunks the parallel drivers aim for. Fixed — independent of
/// the worker count — so that chunk boundaries, and with them any float
/// reductions downstream, never depend on parallelism.
pub(crate) const CHUNK_TARGET: usize = 256;

/// Splits the enumeration into prefix-defined chunks. Chunks are ordered:
/// concatenating their streams reproduces the serial enumeration exactly.
pub(crate) fn partition_chunks(
    ground: &GroundSet,
    filter: PartitionFilter,
    limit: usize,
) -> Result<Vec<Vec<u8>>> {
    ground.check_limit(limit)?;
    let n = ground.len();
    let mut depth = 1;
    loop {
        let prefixes = collect_prefixes(ground, filter, depth);
        if prefixes.len() >= CHUNK_TARGET || depth == n {
            return Ok(prefixes);
        }
        depth += 1;
    }
}

fn collect_prefixes(ground: &GroundSet, filter: PartitionFilter, depth: usize) -> Vec<Vec<u8>> {
    fn rec(it: &mut Partitions, t: usize, depth: usize, out: &mut Vec<Vec<u8>>) {
        if t == depth {
            out.push(it.rgs[..depth].to_vec());
            return;
        }
        let mut choice = it.next_choice(t, 0);
        while let Some(l) = choice {
            it.apply(t, l);
            rec(it, t + 1, depth, out);
            it.undo(t);
            choice = it.next_choice(t, l + 1);
        }
    }
    let mut it = Partitions::new(ground.clone(), filter);
    let mut out = Vec::new();
    rec(&mut it, 0, depth, &mut out);
    out
}

/// Parallel census over prefix chunks; the reduction is exact, so the
/// result is identical for every worker count.
pub fn partition_census_parallel(
    ground: &GroundSet,
    filter: PartitionFilter,
    limit: usize,
    workers: Option<usize>,
) -> Result<Census> {
    use rayon::prelude::*;
    let prefixes = partition_chunks(ground, filter, limit)?;
    let chunk_censuses: Vec<Census> = crate::pool::run(workers, || {
        prefixes
            .par_iter()
            .map(|p| {
                let mut it = Partitions::with_prefix(ground.clone(), filter, p);
                let mut census = Census::default();
                while it.advance() {
                    census.record(it.current_block_count());
                }
                census
            })
            .collect()
    });
    let mut out = Census::default();
    for c in &chunk_censuses {
        out.merge(c);
    }
    Ok(out)
}
