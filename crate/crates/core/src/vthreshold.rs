//! Per-neuron variable thresholds.
//!
//! Under a variable threshold, neuron i fires +1 exactly when its net input
//! reaches its own threshold theta[i]; a memory is stored when every neuron
//! reproduces its own bit. Three learners find the thresholds:
//!
//! * [`learn_thresholds_grid`] scans a uniform grid per neuron (the reference
//!   procedure; step 0.1 by default),
//! * [`learn_thresholds_exact`] solves each neuron's 1-D problem exactly by
//!   sorting, serving as an oracle for the grid scan,
//! * [`learn_thresholds_widrow`] learns each threshold as a bias weight with
//!   an LMS-style correction.
//!
//! The storage condition factorizes over neurons, so the grid and exact
//! learners optimize one row at a time. Both restrict their candidates to
//! thresholds that keep every memory the zero threshold already classifies
//! correctly at that row (an interval around 0; see
//! [`zero_preserving_bounds`]). Raising one row's correct count by sacrificing
//! a different memory can otherwise shrink the set of fully stored memories
//! below the fixed-threshold baseline; the restriction makes the learned
//! stored set a superset of the fixed-threshold stored set on every instance,
//! while leaving every full-count threshold admissible.

use crate::error::{Error, Result};
use crate::hebbian::LearningConfig;
use crate::matrix::{ThresholdVector, WeightMatrix};
use crate::pattern::{BipolarPattern, MemorySet};

/// Threshold comparison: +1 when the activation reaches theta, else -1.
#[inline]
pub fn threshold_sign(y: f64, theta: f64) -> i8 {
    if y >= theta {
        1
    } else {
        -1
    }
}

/// True when every neuron reproduces its bit of `x` under its own threshold.
pub fn is_stored_variable(
    t: &WeightMatrix,
    x: &BipolarPattern,
    theta: &ThresholdVector,
) -> Result<bool> {
    if theta.len() != t.n() {
        return Err(Error::DimensionMismatch { expected: t.n(), got: theta.len() });
    }
    let acts = t.activations(x)?;
    Ok(acts
        .iter()
        .zip(x.iter())
        .enumerate()
        .all(|(i, (&a, &xi))| threshold_sign(a as f64, theta.get(i)) == xi))
}

/// Number of memories stored under the given thresholds.
pub fn count_stored_variable(
    t: &WeightMatrix,
    memories: &MemorySet,
    theta: &ThresholdVector,
) -> Result<usize> {
    let mut count = 0;
    for x in memories.iter() {
        if is_stored_variable(t, x, theta)? {
            count += 1;
        }
    }
    Ok(count)
}

/// A symmetric threshold scan grid.
///
/// The candidate thresholds are the integer multiples of `step` lying in
/// [start, stop], so 0.0 is always a candidate. `start` and `stop` merely
/// bound the scan; they need not be multiples of `step` themselves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdGrid {
    start: f64,
    step: f64,
    stop: f64,
}

impl ThresholdGrid {
    pub const DEFAULT_STEP: f64 = 0.1;

    pub fn new(start: f64, step: f64, stop: f64) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() {
            return Err(Error::InvalidConfig(format!("grid step must be positive, got {step}")));
        }
        if !start.is_finite() || !stop.is_finite() {
            return Err(Error::InvalidConfig("grid bounds must be finite".into()));
        }
        if start > 0.0 || stop < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "grid must bracket zero, got [{start}, {stop}]"
            )));
        }
        if (stop - start) / step > 1e9 {
            return Err(Error::InvalidConfig(format!(
                "grid has too many candidates: ({stop} - {start}) / {step}"
            )));
        }
        Ok(Self { start, step, stop })
    }

    /// The default scan range for an N-neuron network: [-2(N-1), 2(N-1)] in
    /// steps of 0.1, wide enough to cover every row activation seen in
    /// practice at the experiment sizes.
    pub fn default_for(n: usize) -> Self {
        Self::with_step(n, Self::DEFAULT_STEP).expect("default step is valid")
    }

    /// The default range with a custom step.
    pub fn with_step(n: usize, step: f64) -> Result<Self> {
        let bound = 2.0 * (n.saturating_sub(1)) as f64;
        Self::new(-bound, step, bound)
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn stop(&self) -> f64 {
        self.stop
    }

    /// Candidate value for grid index k.
    #[inline]
    fn value(&self, k: i64) -> f64 {
        k as f64 * self.step
    }

    /// Index range [k_min, k_max] of candidates inside [start, stop].
    fn index_range(&self) -> (i64, i64) {
        let mut k_min = (self.start / self.step).ceil() as i64;
        while self.value(k_min) < self.start {
            k_min += 1;
        }
        while self.value(k_min - 1) >= self.start {
            k_min -= 1;
        }
        let mut k_max = (self.stop / self.step).floor() as i64;
        while self.value(k_max) > self.stop {
            k_max -= 1;
        }
        while self.value(k_max + 1) <= self.stop {
            k_max += 1;
        }
        debug_assert!(k_min <= 0 && k_max >= 0);
        (k_min, k_max)
    }
}

/// Learned thresholds plus the storage outcome they produce.
#[derive(Debug, Clone)]
pub struct ThresholdLearnResult {
    pub thresholds: ThresholdVector,
    pub stored_count: usize,
    /// Per-memory flags, index-aligned with the memory set.
    pub stored_flags: Vec<bool>,
}

/// The per-memory net inputs at each neuron: table[s][i] = (T . x^(s))_i.
fn activation_table(t: &WeightMatrix, memories: &MemorySet) -> Result<Vec<Vec<i64>>> {
    memories.iter().map(|x| t.activations(x)).collect()
}

fn result_for(
    t: &WeightMatrix,
    memories: &MemorySet,
    thresholds: Vec<f64>,
) -> Result<ThresholdLearnResult> {
    let thresholds = ThresholdVector::new(thresholds)?;
    let mut stored_flags = Vec::with_capacity(memories.len());
    for x in memories.iter() {
        stored_flags.push(is_stored_variable(t, x, &thresholds)?);
    }
    let stored_count = stored_flags.iter().filter(|&&f| f).count();
    Ok(ThresholdLearnResult { thresholds, stored_count, stored_flags })
}

/// Correctly classified memories at neuron `i` for threshold `theta`.
fn row_correct_count(
    table: &[Vec<i64>],
    memories: &MemorySet,
    i: usize,
    theta: f64,
) -> usize {
    table
        .iter()
        .zip(memories.iter())
        .filter(|(acts, x)| threshold_sign(acts[i] as f64, theta) == x.get(i))
        .count()
}

/// The interval (lo, hi] of thresholds at neuron `i` that keep every memory
/// correctly classified there by theta = 0 still correct.
///
/// A +1-target memory correct at zero (activation >= 0) stays correct while
/// theta <= its activation; a -1-target memory correct at zero (activation
/// < 0) stays correct while theta exceeds its activation. The admissible set
/// is therefore the interval from the largest protected negative activation
/// (exclusive) to the smallest protected non-negative activation (inclusive),
/// which always contains 0.
fn zero_preserving_bounds(table: &[Vec<i64>], memories: &MemorySet, i: usize) -> (f64, f64) {
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for (acts, x) in table.iter().zip(memories.iter()) {
        let a = acts[i] as f64;
        if x.get(i) == 1 {
            if a >= 0.0 {
                hi = hi.min(a);
            }
        } else if a < 0.0 {
            lo = lo.max(a);
        }
    }
    (lo, hi)
}

/// Grid-scan threshold learning.
///
/// Each neuron independently picks the admissible grid candidate (see
/// [`zero_preserving_bounds`]) maximizing the number of memories whose bit it
/// reproduces; ties go to the candidate closest to zero, then to the smaller
/// value. Row activations are precomputed once per memory, so the scan costs
/// one comparison per (neuron, candidate, memory).
pub fn learn_thresholds_grid(
    t: &WeightMatrix,
    memories: &MemorySet,
    grid: &ThresholdGrid,
) -> Result<ThresholdLearnResult> {
    let n = t.n();
    if memories.neuron_count() != n {
        return Err(Error::DimensionMismatch { expected: n, got: memories.neuron_count() });
    }
    let m = memories.len();
    let table = activation_table(t, memories)?;
    let (k_min, k_max) = grid.index_range();

    let mut thresholds = Vec::with_capacity(n);
    for i in 0..n {
        let (clamp_lo, clamp_hi) = zero_preserving_bounds(&table, memories, i);
        // All candidates below every activation behave identically, as do all
        // candidates above; one representative of each class suffices.
        let min_act = table.iter().map(|acts| acts[i]).min().unwrap() as f64;
        let max_act = table.iter().map(|acts| acts[i]).max().unwrap() as f64;
        let mut seen_below = false;
        let mut seen_above = false;

        let mut best_k = 0i64;
        let mut best_count = 0usize;
        let mut have_best = false;

        // Scan order 0, -1, +1, -2, +2, ... realizes the tie-break: the first
        // candidate reaching a given count is the closest to zero, with the
        // negative twin checked before the positive one.
        for k in SpiralIndices::new(k_min, k_max) {
            let theta = grid.value(k);
            if theta <= clamp_lo || theta > clamp_hi {
                continue;
            }
            if theta <= min_act {
                if seen_below {
                    continue;
                }
                seen_below = true;
            } else if theta > max_act {
                if seen_above {
                    continue;
                }
                seen_above = true;
            }
            let count = row_correct_count(&table, memories, i, theta);
            if !have_best || count > best_count {
                best_k = k;
                best_count = count;
                have_best = true;
                if best_count == m {
                    break;
                }
            }
        }
        thresholds.push(grid.value(best_k));
    }
    result_for(t, memories, thresholds)
}

/// Yields 0, -1, 1, -2, 2, ... clipped to [k_min, k_max].
struct SpiralIndices {
    k_min: i64,
    k_max: i64,
    radius: i64,
    phase: u8,
    done: bool,
}

impl SpiralIndices {
    fn new(k_min: i64, k_max: i64) -> Self {
        Self { k_min, k_max, radius: 0, phase: 0, done: k_min > k_max }
    }
}

impl Iterator for SpiralIndices {
    type Item = i64;

    fn next(&mut self) -> Option<i64> {
        while !self.done {
            let (candidate, advance) = if self.radius == 0 {
                (0, true)
            } else if self.phase == 0 {
                (-self.radius, false)
            } else {
                (self.radius, true)
            };
            if advance {
                if self.radius == 0 {
                    self.radius = 1;
                } else {
                    self.phase = 0;
                    self.radius += 1;
                }
            } else {
                self.phase = 1;
            }
            if -self.radius < self.k_min && self.radius - 1 > self.k_max {
                self.done = true;
            }
            if candidate >= self.k_min && candidate <= self.k_max {
                return Some(candidate);
            }
        }
        None
    }
}

/// Exact per-neuron threshold optimization (the oracle for the grid scan).
///
/// For one neuron the correct-count as a function of theta is piecewise
/// constant, changing only where theta crosses an activation value; sorting
/// the activations enumerates all pieces, and only pieces inside the
/// [`zero_preserving_bounds`] interval are admitted. The returned threshold
/// is 0 when 0 lies in an optimal piece, otherwise the midpoint of a bounded
/// optimal piece (or one unit beyond the extreme activation for unbounded
/// pieces), preferring the representative closest to zero, then the smaller
/// one.
pub fn learn_thresholds_exact(
    t: &WeightMatrix,
    memories: &MemorySet,
) -> Result<ThresholdLearnResult> {
    let n = t.n();
    if memories.neuron_count() != n {
        return Err(Error::DimensionMismatch { expected: n, got: memories.neuron_count() });
    }
    let table = activation_table(t, memories)?;

    let mut thresholds = Vec::with_capacity(n);
    for i in 0..n {
        let (clamp_lo, clamp_hi) = zero_preserving_bounds(&table, memories, i);
        // (activation, target) pairs sorted by activation.
        let mut pairs: Vec<(i64, i8)> = table
            .iter()
            .zip(memories.iter())
            .map(|(acts, x)| (acts[i], x.get(i)))
            .collect();
        pairs.sort_by_key(|&(a, _)| a);

        let total_plus = pairs.iter().filter(|&&(_, t)| t == 1).count();

        // Distinct activation values and cumulative target counts up to and
        // including each value.
        let mut values: Vec<i64> = Vec::new();
        let mut plus_upto: Vec<usize> = Vec::new(); // targets +1 with a <= value
        let mut minus_upto: Vec<usize> = Vec::new(); // targets -1 with a <= value
        let (mut plus_acc, mut minus_acc) = (0usize, 0usize);
        for &(a, target) in &pairs {
            if target == 1 {
                plus_acc += 1;
            } else {
                minus_acc += 1;
            }
            if values.last() == Some(&a) {
                *plus_upto.last_mut().unwrap() = plus_acc;
                *minus_upto.last_mut().unwrap() = minus_acc;
            } else {
                values.push(a);
                plus_upto.push(plus_acc);
                minus_upto.push(minus_acc);
            }
        }

        // Piece p = 0 is theta <= values[0]; piece p in 1..r is
        // values[p-1] < theta <= values[p]; piece r is theta > values[r-1].
        // Inside piece p, predictions are +1 exactly for activations > values[p-1].
        // The clamp bounds are activation values (or infinite), so every piece
        // is entirely admissible or entirely excluded.
        let r = values.len();
        let mut best: Option<(usize, f64)> = None; // (count, representative)
        for p in 0..=r {
            let piece_lo = if p == 0 { f64::NEG_INFINITY } else { values[p - 1] as f64 };
            let piece_hi = if p == r { f64::INFINITY } else { values[p] as f64 };
            if piece_lo < clamp_lo || piece_hi > clamp_hi {
                continue;
            }
            let (plus_below, minus_below) = if p == 0 {
                (0, 0)
            } else {
                (plus_upto[p - 1], minus_upto[p - 1])
            };
            // Correct: targets -1 predicted -1 (a <= values[p-1]) plus
            // targets +1 predicted +1 (a > values[p-1]).
            let count = minus_below + (total_plus - plus_below);
            let rep = piece_representative(p, &values);
            let better = match best {
                None => true,
                Some((bc, br)) => {
                    count > bc
                        || (count == bc
                            && (rep.abs() < br.abs() || (rep.abs() == br.abs() && rep < br)))
                }
            };
            if better {
                best = Some((count, rep));
            }
        }
        thresholds.push(best.expect("the zero piece is always admissible").1);
    }
    result_for(t, memories, thresholds)
}

/// A deterministic threshold inside piece `p` of the sorted value list.
fn piece_representative(p: usize, values: &[i64]) -> f64 {
    let r = values.len();
    let lo = if p == 0 { None } else { Some(values[p - 1] as f64) };
    let hi = if p == r { None } else { Some(values[p] as f64) };
    match (lo, hi) {
        // theta <= hi: zero qualifies when hi >= 0.
        (None, Some(hi)) => {
            if hi >= 0.0 {
                0.0
            } else {
                hi - 1.0
            }
        }
        // lo < theta <= hi.
        (Some(lo), Some(hi)) => {
            if lo < 0.0 && hi >= 0.0 {
                0.0
            } else {
                (lo + hi) / 2.0
            }
        }
        // theta > lo.
        (Some(lo), None) => {
            if lo < 0.0 {
                0.0
            } else {
                lo + 1.0
            }
        }
        (None, None) => 0.0, // no activations cannot happen: m >= 1
    }
}

/// LMS-style threshold learning with thresholds initialized to zero.
pub fn learn_thresholds_widrow(
    t: &WeightMatrix,
    memories: &MemorySet,
    cfg: &LearningConfig,
) -> Result<ThresholdLearnResult> {
    let zeros = ThresholdVector::zeros(t.n())?;
    learn_thresholds_widrow_from(t, memories, cfg, &zeros)
}

/// LMS-style threshold learning from explicit initial thresholds.
///
/// Each theta[i] acts as a bias weight with constant input -1: for every
/// memory in cyclic order, every neuron compares its prediction with its
/// target bit and moves its threshold by -eta (target - predicted). Training
/// stops once all memories are stored or after `max_epochs` passes;
/// non-convergence is reported through the stored count.
pub fn learn_thresholds_widrow_from(
    t: &WeightMatrix,
    memories: &MemorySet,
    cfg: &LearningConfig,
    init: &ThresholdVector,
) -> Result<ThresholdLearnResult> {
    let n = t.n();
    if memories.neuron_count() != n {
        return Err(Error::DimensionMismatch { expected: n, got: memories.neuron_count() });
    }
    if init.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: init.len() });
    }
    let m = memories.len();
    let table = activation_table(t, memories)?;
    let mut theta: Vec<f64> = init.as_slice().to_vec();

    for _ in 0..cfg.max_epochs {
        for (s, x) in memories.iter().enumerate() {
            for i in 0..n {
                let predicted = threshold_sign(table[s][i] as f64, theta[i]);
                let target = x.get(i);
                if predicted != target {
                    theta[i] -= cfg.eta * (target - predicted) as f64;
                }
            }
        }
        // Storage check at the epoch boundary.
        let stored = (0..m).all(|s| {
            (0..n).all(|i| threshold_sign(table[s][i] as f64, theta[i]) == memories.get(s).get(i))
        });
        if stored {
            break;
        }
    }
    result_for(t, memories, theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hebbian::{build_t_matrix, count_stored_fixed, is_stored_fixed};

    fn set(patterns: &[&[i8]]) -> MemorySet {
        MemorySet::new(
            patterns
                .iter()
                .map(|p| BipolarPattern::new(p.to_vec()).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn threshold_sign_examples() {
        assert_eq!(threshold_sign(0.0, 0.0), 1);
        assert_eq!(threshold_sign(-3.0, -3.9), 1);
        assert_eq!(threshold_sign(2.0, 4.1), -1);
        assert_eq!(threshold_sign(-5.0, -3.9), -1);
    }

    #[test]
    fn zero_thresholds_reduce_to_fixed() {
        let memories = set(&[&[1, -1, 1, 1], &[-1, -1, 1, -1], &[1, 1, -1, 1]]);
        let t = build_t_matrix(&memories);
        let zeros = ThresholdVector::zeros(4).unwrap();
        for x in memories.iter() {
            assert_eq!(
                is_stored_variable(&t, x, &zeros).unwrap(),
                is_stored_fixed(&t, x).unwrap()
            );
        }
    }

    #[test]
    fn grid_contains_zero_and_respects_bounds() {
        let grid = ThresholdGrid::new(-1.0, 0.3, 1.0).unwrap();
        let (k_min, k_max) = grid.index_range();
        assert!(k_min <= 0 && k_max >= 0);
        assert!(grid.value(k_min) >= -1.0 - 1e-12);
        assert!(grid.value(k_max) <= 1.0 + 1e-12);
        assert!(ThresholdGrid::new(0.5, 0.1, 1.0).is_err());
        assert!(ThresholdGrid::new(-1.0, 0.0, 1.0).is_err());
        assert!(ThresholdGrid::new(-1.0, -0.1, 1.0).is_err());
    }

    #[test]
    fn spiral_order_is_zero_then_negative_first() {
        let order: Vec<i64> = SpiralIndices::new(-3, 2).collect();
        assert_eq!(order, vec![0, -1, 1, -2, 2, -3]);
        let tight: Vec<i64> = SpiralIndices::new(0, 0).collect();
        assert_eq!(tight, vec![0]);
    }

    #[test]
    fn single_memory_grid_learns_storage() {
        let memories = set(&[&[1, -1, 1, -1, 1]]);
        let t = build_t_matrix(&memories);
        let grid = ThresholdGrid::default_for(5);
        let out = learn_thresholds_grid(&t, &memories, &grid).unwrap();
        assert_eq!(out.stored_count, 1);
        assert_eq!(out.stored_flags, vec![true]);
        // theta = 0 already stores a single memory, so the tie-break keeps it.
        assert!(out.thresholds.as_slice().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn grid_dominates_fixed_on_small_random_instances() {
        use crate::rng::{random_memories, RandomSource};
        for seed in 0..20 {
            let src = RandomSource::new(seed);
            let memories = random_memories(9, 5, &src).unwrap();
            let t = build_t_matrix(&memories);
            let fixed = count_stored_fixed(&t, &memories).unwrap();
            let out = learn_thresholds_grid(&t, &memories, &ThresholdGrid::default_for(9)).unwrap();
            assert!(
                out.stored_count >= fixed,
                "seed {seed}: variable {} < fixed {fixed}",
                out.stored_count
            );
        }
    }

    #[test]
    fn exact_learner_stores_single_memory_everywhere() {
        let memories = set(&[&[1, 1, -1]]);
        let t = build_t_matrix(&memories);
        let out = learn_thresholds_exact(&t, &memories).unwrap();
        assert_eq!(out.stored_count, 1);
    }

    #[test]
    fn exact_dominates_grid_per_neuron() {
        use crate::rng::{random_memories, RandomSource};
        for seed in 0..30 {
            let src = RandomSource::new(1000 + seed);
            let memories = random_memories(8, 4, &src).unwrap();
            let t = build_t_matrix(&memories);
            let table = activation_table(&t, &memories).unwrap();
            let grid_out =
                learn_thresholds_grid(&t, &memories, &ThresholdGrid::default_for(8)).unwrap();
            let exact_out = learn_thresholds_exact(&t, &memories).unwrap();
            for i in 0..8 {
                let g = row_correct_count(&table, &memories, i, grid_out.thresholds.get(i));
                let e = row_correct_count(&table, &memories, i, exact_out.thresholds.get(i));
                assert!(e >= g, "seed {seed}, neuron {i}: exact {e} < grid {g}");
            }
        }
    }

    #[test]
    fn widrow_keeps_thresholds_when_already_stored() {
        let memories = set(&[&[1, -1, 1, -1]]);
        let t = build_t_matrix(&memories);
        let cfg = LearningConfig::new(0.05, 100).unwrap();
        let out = learn_thresholds_widrow(&t, &memories, &cfg).unwrap();
        assert_eq!(out.stored_count, 1);
        assert!(out.thresholds.as_slice().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn widrow_recovers_from_bad_initialization() {
        let memories = set(&[&[1, -1, 1, -1, 1, 1]]);
        let t = build_t_matrix(&memories);
        let cfg = LearningConfig::new(0.5, 200).unwrap();
        let init = ThresholdVector::new(vec![25.0, -25.0, 25.0, -25.0, 25.0, -25.0]).unwrap();
        let out = learn_thresholds_widrow_from(&t, &memories, &cfg, &init).unwrap();
        assert_eq!(out.stored_count, 1, "thresholds {:?}", out.thresholds.as_slice());
    }

    #[test]
    fn flipping_one_threshold_only_affects_its_row() {
        let memories = set(&[&[1, -1, 1, 1], &[-1, 1, 1, -1]]);
        let t = build_t_matrix(&memories);
        let x = memories.get(0);
        let acts = t.activations(x).unwrap();
        let base = ThresholdVector::zeros(4).unwrap();
        for i in 0..4 {
            // Push threshold i beyond the row activation so only row i flips.
            let mut values = base.as_slice().to_vec();
            values[i] = acts[i] as f64 + 1.0;
            let theta = ThresholdVector::new(values).unwrap();
            for (j, &a) in acts.iter().enumerate() {
                let expect = if j == i {
                    threshold_sign(a as f64, a as f64 + 1.0)
                } else {
                    threshold_sign(a as f64, 0.0)
                };
                assert_eq!(threshold_sign(a as f64, theta.get(j)), expect);
            }
        }
    }
}
