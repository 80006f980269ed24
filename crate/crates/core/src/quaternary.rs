//! Four-level (quaternary) networks.
//!
//! Neurons output one of four symmetric levels {-a, -b, b, a} selected by a
//! three-threshold activation at -t, 0, and t. Patterns are stored with a
//! delta rule on the weight rows, and the convergence ratio t/c from
//! [`convergence_ratio`] gives the smallest threshold-to-learning-constant
//! ratio guaranteeing a single pattern is storable.

use crate::error::{Error, Result};
use crate::rng::RandomSource;
use rand_chacha::rand_core::RngCore;

/// The symmetric four-level alphabet (-a, -b, b, a) and its activation
/// threshold t.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuaternaryLevels {
    a: f64,
    b: f64,
    t: f64,
}

impl QuaternaryLevels {
    pub fn new(a: f64, b: f64, t: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && t.is_finite()) {
            return Err(Error::InvalidConfig("levels must be finite".into()));
        }
        if !(a > b && b > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "levels must satisfy a > b > 0, got a={a}, b={b}"
            )));
        }
        if !(t > 0.0) {
            return Err(Error::InvalidConfig(format!("threshold t must be positive, got {t}")));
        }
        Ok(Self { a, b, t })
    }

    /// The capacity-experiment alphabet {-2, -1, 1, 2}.
    pub fn experiment(t: f64) -> Result<Self> {
        Self::new(2.0, 1.0, t)
    }

    /// The wide alphabet {-4, -1, 1, 4}.
    pub fn wide(t: f64) -> Result<Self> {
        Self::new(4.0, 1.0, t)
    }

    pub fn outer(&self) -> f64 {
        self.a
    }

    pub fn inner(&self) -> f64 {
        self.b
    }

    pub fn threshold(&self) -> f64 {
        self.t
    }

    /// The four levels in increasing order.
    pub fn values(&self) -> [f64; 4] {
        [-self.a, -self.b, self.b, self.a]
    }

    /// Maximum difference between adjacent levels (the Vdiff of the
    /// convergence-ratio formula). For a symmetric alphabet this is the
    /// larger of the middle gap 2b and the outer gap a - b.
    pub fn max_adjacent_diff(&self) -> f64 {
        (2.0 * self.b).max(self.a - self.b)
    }

    fn contains(&self, v: f64) -> bool {
        v == self.a || v == -self.a || v == self.b || v == -self.b
    }
}

/// A state vector over the four levels.
#[derive(Debug, Clone, PartialEq)]
pub struct QuaternaryPattern {
    values: Vec<f64>,
}

impl QuaternaryPattern {
    pub fn new(values: Vec<f64>, levels: &QuaternaryLevels) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidDimension("pattern length must be >= 1".into()));
        }
        for (index, &v) in values.iter().enumerate() {
            if !levels.contains(v) {
                return Err(Error::InvalidConfig(format!(
                    "element {v} at index {index} is not one of the four levels"
                )));
            }
        }
        Ok(Self { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, i: usize) -> f64 {
        self.values[i]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }
}

/// Real-valued synaptic weights of a quaternary network.
#[derive(Debug, Clone, PartialEq)]
pub struct QuaternaryWeights {
    n: usize,
    entries: Vec<f64>,
}

impl QuaternaryWeights {
    pub fn zeros(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension("network size must be >= 1".into()));
        }
        Ok(Self { n, entries: vec![0.0; n * n] })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.entries[i * self.n + j] = value;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.entries[i * self.n..(i + 1) * self.n]
    }
}

/// The four-level activation. Boundaries follow the same closed-on-the-left
/// convention as sgn: x = -t gives -b, x = 0 gives +b, x = t gives +a.
#[inline]
pub fn quat_activation(x: f64, levels: &QuaternaryLevels) -> f64 {
    if x < -levels.t {
        -levels.a
    } else if x < 0.0 {
        -levels.b
    } else if x < levels.t {
        levels.b
    } else {
        levels.a
    }
}

/// Synchronous next state: each neuron applies the activation to its net
/// input sum_j W[i][j] V[j].
pub fn quat_next_state(
    w: &QuaternaryWeights,
    v: &QuaternaryPattern,
    levels: &QuaternaryLevels,
) -> Result<QuaternaryPattern> {
    if v.len() != w.n() {
        return Err(Error::DimensionMismatch { expected: w.n(), got: v.len() });
    }
    let values = (0..w.n())
        .map(|i| {
            let x: f64 = w
                .row(i)
                .iter()
                .zip(v.as_slice().iter())
                .map(|(&wij, &vj)| wij * vj)
                .sum();
            quat_activation(x, levels)
        })
        .collect();
    // Outputs are levels by construction.
    Ok(QuaternaryPattern { values })
}

/// Outcome of a delta-rule training run.
#[derive(Debug, Clone)]
pub struct DeltaRuleOutcome {
    pub weights: QuaternaryWeights,
    /// True when a full sweep over the patterns required no updates.
    pub success: bool,
    /// Sweeps performed, including the final clean sweep on success.
    pub sweeps: usize,
}

/// Trains weights so every pattern becomes a fixed point, starting from zero
/// weights.
pub fn delta_rule_train(
    patterns: &[QuaternaryPattern],
    c: f64,
    levels: &QuaternaryLevels,
    max_sweeps: usize,
) -> Result<DeltaRuleOutcome> {
    if patterns.is_empty() {
        return Err(Error::InvalidDimension("need at least one pattern".into()));
    }
    let init = QuaternaryWeights::zeros(patterns[0].len())?;
    delta_rule_train_from(patterns, c, levels, max_sweeps, init)
}

/// Delta-rule training from explicit initial weights.
///
/// Sweeps cycle over the patterns in index order. For pattern V^s the current
/// response V is computed, and every disagreeing neuron i adjusts its row:
/// W[i][j] += c (V^s_i - V_i) V^s_j. Training succeeds when one full sweep
/// makes no update; it gives up (success = false) after `max_sweeps`.
pub fn delta_rule_train_from(
    patterns: &[QuaternaryPattern],
    c: f64,
    levels: &QuaternaryLevels,
    max_sweeps: usize,
    init: QuaternaryWeights,
) -> Result<DeltaRuleOutcome> {
    if patterns.is_empty() {
        return Err(Error::InvalidDimension("need at least one pattern".into()));
    }
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::InvalidConfig(format!("learning constant must be positive, got {c}")));
    }
    let n = patterns[0].len();
    for p in patterns {
        if p.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: p.len() });
        }
    }
    if init.n() != n {
        return Err(Error::DimensionMismatch { expected: n, got: init.n() });
    }

    let mut w = init;
    let mut sweeps = 0;
    let mut success = false;
    while sweeps < max_sweeps {
        sweeps += 1;
        let mut updated = false;
        for target in patterns {
            let response = quat_next_state(&w, target, levels)?;
            for i in 0..n {
                let want = target.get(i);
                let got = response.get(i);
                if want != got {
                    let step = c * (want - got);
                    let row = w.row_mut(i);
                    for (j, &vj) in target.as_slice().iter().enumerate() {
                        row[j] += step * vj;
                    }
                    updated = true;
                }
            }
        }
        if !updated {
            success = true;
            break;
        }
    }
    Ok(DeltaRuleOutcome { weights: w, success, sweeps })
}

/// Minimum t/c guaranteeing single-pattern storage: v_max^2 * v_diff * (n-1).
pub fn convergence_ratio(v_max: f64, v_diff: f64, n: usize) -> f64 {
    v_max * v_max * v_diff * (n.saturating_sub(1)) as f64
}

/// Draws `count` patterns of length `n`, each element uniform over the four
/// levels.
pub fn random_quaternary_patterns(
    n: usize,
    count: usize,
    levels: &QuaternaryLevels,
    source: &RandomSource,
) -> Result<Vec<QuaternaryPattern>> {
    if n == 0 || count == 0 {
        return Err(Error::InvalidDimension("pattern size and count must be >= 1".into()));
    }
    let choices = levels.values();
    let mut rng = source.rng();
    Ok((0..count)
        .map(|_| {
            let values = (0..n)
                .map(|_| choices[(rng.next_u32() % 4) as usize])
                .collect();
            QuaternaryPattern { values }
        })
        .collect())
}

/// Fraction of trials (percent) in which all `p` random patterns become fixed
/// points, with learning constant c = 1 and activation threshold t = t_over_c.
///
/// Trial i draws from `source.substream(i)`, so trials are reproducible and
/// independent of execution order; callers running several experiments space
/// their base streams at least `trials` apart.
pub fn quat_capacity_experiment(
    n: usize,
    p: usize,
    t_over_c: f64,
    trials: usize,
    source: &RandomSource,
    levels: &QuaternaryLevels,
    max_sweeps: usize,
) -> Result<f64> {
    if trials == 0 {
        return Err(Error::InvalidDimension("trials must be >= 1".into()));
    }
    let run_levels = QuaternaryLevels::new(levels.outer(), levels.inner(), t_over_c)?;
    let mut successes = 0usize;
    for trial in 0..trials {
        let patterns =
            random_quaternary_patterns(n, p, &run_levels, &source.substream(trial as u64))?;
        let outcome = delta_rule_train(&patterns, 1.0, &run_levels, max_sweeps)?;
        if outcome.success {
            successes += 1;
        }
    }
    Ok(100.0 * successes as f64 / trials as f64)
}

/// Default sweep cap for the capacity experiments.
pub const DEFAULT_MAX_SWEEPS: usize = 1000;

#[cfg(test)]
mod tests {
    use super::*;

    fn levels() -> QuaternaryLevels {
        QuaternaryLevels::experiment(4.0).unwrap()
    }

    #[test]
    fn activation_branches_and_boundaries() {
        let lv = levels(); // a=2, b=1, t=4
        assert_eq!(quat_activation(-5.0, &lv), -2.0);
        assert_eq!(quat_activation(-4.0, &lv), -1.0); // x = -t goes to -b
        assert_eq!(quat_activation(-0.5, &lv), -1.0);
        assert_eq!(quat_activation(0.0, &lv), 1.0); // x = 0 goes to +b
        assert_eq!(quat_activation(3.9, &lv), 1.0);
        assert_eq!(quat_activation(4.0, &lv), 2.0); // x = t goes to +a
        let wide = QuaternaryLevels::wide(3.0).unwrap();
        assert_eq!(quat_activation(-3.0 - 1.0, &wide), -4.0);
    }

    #[test]
    fn activation_is_monotone_and_surjective() {
        let lv = levels();
        let probes: Vec<f64> = (-100..=100).map(|k| k as f64 * 0.1).collect();
        let mut last = f64::NEG_INFINITY;
        let mut seen = std::collections::BTreeSet::new();
        for &x in &probes {
            let v = quat_activation(x, &lv);
            assert!(v >= last, "activation decreased at x={x}");
            last = v;
            seen.insert((v * 10.0) as i64);
        }
        assert_eq!(seen.len(), 4);
    }

    #[test]
    fn zero_weights_respond_with_inner_positive_level() {
        let lv = levels();
        let w = QuaternaryWeights::zeros(5).unwrap();
        let v = QuaternaryPattern::new(vec![2.0, -2.0, 1.0, -1.0, 2.0], &lv).unwrap();
        let out = quat_next_state(&w, &v, &lv).unwrap();
        assert!(out.as_slice().iter().all(|&x| x == 1.0));
    }

    #[test]
    fn diagonal_drive_crosses_threshold_exactly() {
        // W[i][i] = t and V = all +b with b = 1 puts every net input at t,
        // which lands on the +a branch.
        let lv = levels(); // t = 4
        let mut w = QuaternaryWeights::zeros(3).unwrap();
        for i in 0..3 {
            w.set(i, i, lv.threshold());
        }
        let v = QuaternaryPattern::new(vec![1.0; 3], &lv).unwrap();
        let out = quat_next_state(&w, &v, &lv).unwrap();
        assert!(out.as_slice().iter().all(|&x| x == 2.0));
    }

    #[test]
    fn fixed_points_produce_no_updates() {
        let lv = QuaternaryLevels::experiment(48.0).unwrap();
        let src = RandomSource::new(21);
        let patterns = random_quaternary_patterns(7, 2, &lv, &src).unwrap();
        let trained = delta_rule_train(&patterns, 1.0, &lv, 1000).unwrap();
        assert!(trained.success);
        for p in &patterns {
            assert_eq!(quat_next_state(&trained.weights, p, &lv).unwrap(), *p);
        }
        // Re-training from the converged weights is a single clean sweep
        // leaving them untouched.
        let again =
            delta_rule_train_from(&patterns, 1.0, &lv, 1000, trained.weights.clone()).unwrap();
        assert!(again.success);
        assert_eq!(again.sweeps, 1);
        assert_eq!(again.weights, trained.weights);
    }

    #[test]
    fn convergence_ratio_formula() {
        assert_eq!(convergence_ratio(2.0, 2.0, 7), 48.0);
        assert_eq!(convergence_ratio(1.0, 2.0, 7), 12.0);
        assert_eq!(convergence_ratio(5.0, 3.0, 1), 0.0);
    }

    #[test]
    fn single_pattern_stores_reliably_at_guaranteed_ratio() {
        let lv = QuaternaryLevels::experiment(1.0).unwrap();
        let src = RandomSource::new(2);
        let pct =
            quat_capacity_experiment(7, 1, 48.0, 50, &src, &lv, DEFAULT_MAX_SWEEPS).unwrap();
        assert!(pct >= 88.0, "success {pct}% below the expected regime");
    }

    #[test]
    fn odd_symmetry_away_from_boundaries() {
        let lv = levels();
        for k in 1..200 {
            let x = k as f64 * 0.07 + 0.003;
            for sign in [1.0, -1.0] {
                let v = quat_activation(sign * x, &lv);
                let neg = quat_activation(-sign * x, &lv);
                if x != lv.threshold() {
                    assert_eq!(v, -neg, "asymmetry at x={x}");
                }
            }
        }
    }
}
