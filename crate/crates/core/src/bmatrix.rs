//! B-matrix fragment retrieval.
//!
//! The strictly lower-triangular half B of the interconnection matrix
//! (T = B + B^t) acts as a generator: starting from a fragment of the first
//! k neuron states, each further bit is produced from the bits before it.
//! Retrieval runs in the current neuron ordering; to start the activity
//! spread at a different neuron, permute the network so that neuron comes
//! first.

use crate::error::{Error, Result};
use crate::matrix::{ThresholdVector, WeightMatrix};
use crate::pattern::{BipolarPattern, MemorySet};
use crate::vthreshold::threshold_sign;

/// Strictly lower-triangular integer matrix with B + B^t equal to the source T.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BMatrix {
    n: usize,
    entries: Vec<i32>,
}

impl BMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i32 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[i32] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    /// Rebuilds the full symmetric matrix B + B^t.
    pub fn reconstruct(&self) -> WeightMatrix {
        let n = self.n;
        let mut entries = vec![0i32; n * n];
        for i in 0..n {
            for j in 0..i {
                let v = self.get(i, j);
                entries[i * n + j] = v;
                entries[j * n + i] = v;
            }
        }
        WeightMatrix::from_parts_unchecked(n, entries)
    }
}

/// Takes the strictly lower triangle of T. Symmetry and the zero diagonal are
/// guaranteed by the [`WeightMatrix`] type, so B + B^t = T exactly.
pub fn build_b_matrix(t: &WeightMatrix) -> BMatrix {
    let n = t.n();
    let mut entries = vec![0i32; n * n];
    for i in 0..n {
        for j in 0..i {
            entries[i * n + j] = t.get(i, j);
        }
    }
    BMatrix { n, entries }
}

/// A known prefix of a memory: the first k neuron states in the current
/// ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fragment {
    bits: Vec<i8>,
}

impl Fragment {
    pub fn new(bits: Vec<i8>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::InvalidDimension("fragment length must be >= 1".into()));
        }
        for (index, &v) in bits.iter().enumerate() {
            if v != 1 && v != -1 {
                return Err(Error::InvalidElement { index, value: v as i64 });
            }
        }
        Ok(Self { bits })
    }

    /// The first k bits of a pattern.
    pub fn prefix_of(pattern: &BipolarPattern, k: usize) -> Result<Self> {
        if k == 0 || k > pattern.len() {
            return Err(Error::InvalidDimension(format!(
                "fragment length {k} out of range 1..={}",
                pattern.len()
            )));
        }
        Ok(Self { bits: pattern.as_slice()[..k].to_vec() })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.bits
    }
}

/// The order in which activity spreads across neurons (a permutation of 0..n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProximityOrder {
    order: Vec<usize>,
}

impl ProximityOrder {
    /// Validates a permutation of 0..n. `order[a] = b` means position `a` in
    /// the spread is occupied by original neuron `b`.
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty order".into()));
        }
        let mut seen = vec![false; n];
        for &b in &order {
            if b >= n {
                return Err(Error::InvalidPermutation(format!("index {b} out of range 0..{n}")));
            }
            if seen[b] {
                return Err(Error::InvalidPermutation(format!("index {b} repeated")));
            }
            seen[b] = true;
        }
        Ok(Self { order })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.order
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0usize; self.order.len()];
        for (a, &b) in self.order.iter().enumerate() {
            inv[b] = a;
        }
        Self { order: inv }
    }
}

/// Reindexes T into spread order: T'[a][b] = T[order(a)][order(b)].
pub fn permute_network(t: &WeightMatrix, order: &ProximityOrder) -> Result<WeightMatrix> {
    let n = t.n();
    if order.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: order.len() });
    }
    let ord = order.as_slice();
    let mut entries = vec![0i32; n * n];
    for a in 0..n {
        for b in 0..n {
            entries[a * n + b] = t.get(ord[a], ord[b]);
        }
    }
    Ok(WeightMatrix::from_parts_unchecked(n, entries))
}

/// Reindexes a pattern consistently with [`permute_network`].
pub fn permute_pattern(x: &BipolarPattern, order: &ProximityOrder) -> Result<BipolarPattern> {
    if order.len() != x.len() {
        return Err(Error::DimensionMismatch { expected: x.len(), got: order.len() });
    }
    BipolarPattern::new(order.as_slice().iter().map(|&b| x.get(b)).collect())
}

/// Reindexes every memory consistently with [`permute_network`].
pub fn permute_memories(memories: &MemorySet, order: &ProximityOrder) -> Result<MemorySet> {
    let patterns: Result<Vec<_>> = memories.iter().map(|x| permute_pattern(x, order)).collect();
    MemorySet::new(patterns?)
}

/// Generates the remaining bits of a memory from a fragment.
///
/// Bits k+1..N are produced in order; bit i sees only bits 1..i-1 through row
/// i of B, so the fragment itself is never altered. Fixed-threshold retrieval
/// is the special case of all-zero thresholds.
pub fn retrieve_from_fragment(
    b: &BMatrix,
    fragment: &Fragment,
    theta: &ThresholdVector,
) -> Result<BipolarPattern> {
    let n = b.n();
    let k = fragment.len();
    if k > n {
        return Err(Error::InvalidDimension(format!("fragment length {k} exceeds network size {n}")));
    }
    if theta.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: theta.len() });
    }
    let mut bits = Vec::with_capacity(n);
    bits.extend_from_slice(fragment.as_slice());
    for i in k..n {
        let row = b.row(i);
        let act: i64 = bits
            .iter()
            .enumerate()
            .map(|(j, &v)| row[j] as i64 * v as i64)
            .sum();
        bits.push(threshold_sign(act as f64, theta.get(i)));
    }
    BipolarPattern::new(bits)
}

/// Smallest k in 1..=n-1 whose prefix regenerates `x` exactly, or None if
/// every proper prefix fails. The full-length fragment is excluded: with
/// k = n there is nothing left to generate.
pub fn min_fragment_len(
    b: &BMatrix,
    x: &BipolarPattern,
    theta: &ThresholdVector,
) -> Result<Option<usize>> {
    let n = b.n();
    if x.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: x.len() });
    }
    for k in 1..n {
        let fragment = Fragment::prefix_of(x, k)?;
        if retrieve_from_fragment(b, &fragment, theta)? == *x {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Number of memories whose first-k-bit fragment regenerates them exactly.
pub fn count_retrieved(
    b: &BMatrix,
    memories: &MemorySet,
    theta: &ThresholdVector,
    k: usize,
) -> Result<usize> {
    let n = b.n();
    if memories.neuron_count() != n {
        return Err(Error::DimensionMismatch { expected: n, got: memories.neuron_count() });
    }
    if k == 0 || k > n {
        return Err(Error::InvalidDimension(format!("fragment length {k} out of range 1..={n}")));
    }
    let mut count = 0;
    for x in memories.iter() {
        let fragment = Fragment::prefix_of(x, k)?;
        if retrieve_from_fragment(b, &fragment, theta)? == *x {
            count += 1;
        }
    }
    Ok(count)
}
