//! Hebbian storage and Widrow-Hoff refinement.
//!
//! The T-matrix is the sum of memory outer products with a zeroed diagonal.
//! A memory is stored under the fixed (uniform zero) threshold when one
//! synchronous pass maps it to itself: x = sgn(T . x). Widrow-Hoff refinement
//! iterates rank-one corrections W <- W + eta (x - W x) x^t until every memory
//! passes the sign test or an epoch cap is hit.

use crate::error::{Error, Result};
use crate::matrix::{RealWeightMatrix, WeightMatrix};
use crate::pattern::{BipolarPattern, MemorySet};

/// Signum with the +1-at-zero convention.
#[inline]
pub fn sgn(k: f64) -> i8 {
    if k >= 0.0 {
        1
    } else {
        -1
    }
}

/// Builds the Hebbian interconnection matrix T[i][j] = sum_s x_i^(s) x_j^(s),
/// with a zero diagonal.
pub fn build_t_matrix(memories: &MemorySet) -> WeightMatrix {
    let n = memories.neuron_count();
    let mut entries = vec![0i32; n * n];
    for x in memories.iter() {
        let v = x.as_slice();
        for i in 0..n {
            let vi = v[i] as i32;
            for j in (i + 1)..n {
                entries[i * n + j] += vi * v[j] as i32;
            }
        }
    }
    // Mirror the upper triangle; the diagonal stays zero.
    for i in 0..n {
        for j in (i + 1)..n {
            entries[j * n + i] = entries[i * n + j];
        }
    }
    WeightMatrix::from_parts_unchecked(n, entries)
}

/// True when one synchronous pass reproduces `x`: sgn(T . x) = x.
pub fn is_stored_fixed(t: &WeightMatrix, x: &BipolarPattern) -> Result<bool> {
    let acts = t.activations(x)?;
    Ok(acts
        .iter()
        .zip(x.iter())
        .all(|(&a, &xi)| sgn(a as f64) == xi))
}

/// Number of memories in the set passing the fixed-threshold storage test.
pub fn count_stored_fixed(t: &WeightMatrix, memories: &MemorySet) -> Result<usize> {
    let mut count = 0;
    for x in memories.iter() {
        if is_stored_fixed(t, x)? {
            count += 1;
        }
    }
    Ok(count)
}

/// Like [`is_stored_fixed`] but for a refined real-valued matrix.
pub fn is_stored_fixed_real(w: &RealWeightMatrix, x: &BipolarPattern) -> Result<bool> {
    let y = w.multiply(x)?;
    Ok(y.iter().zip(x.iter()).all(|(&yi, &xi)| sgn(yi) == xi))
}

/// Widrow-Hoff settings: learning rate and the training-pass cap.
///
/// `new` enforces the normal-use contract (eta > 0, at least one epoch); the
/// fields are public so a zero-epoch config can be expressed where "return the
/// initial weights untouched" is the intent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LearningConfig {
    pub eta: f64,
    pub max_epochs: usize,
}

impl LearningConfig {
    pub fn new(eta: f64, max_epochs: usize) -> Result<Self> {
        if !(eta > 0.0) || !eta.is_finite() {
            return Err(Error::InvalidConfig(format!("eta must be positive, got {eta}")));
        }
        if max_epochs == 0 {
            return Err(Error::InvalidConfig("max_epochs must be >= 1".into()));
        }
        Ok(Self { eta, max_epochs })
    }
}

/// Outcome of a Widrow-Hoff run.
#[derive(Debug, Clone)]
pub struct WidrowHoffResult {
    pub weights: RealWeightMatrix,
    /// Completed update passes over the memory set.
    pub epochs: usize,
    /// Whether every memory satisfied x = sgn(W . x) when training stopped.
    pub all_stored: bool,
    /// Per-epoch mean over memories of ||x - W x||^2 / N, measured on the
    /// pre-update residuals within each pass.
    pub mse_trace: Vec<f64>,
}

/// Refines the Hebbian matrix of `memories` (taken as the initial weights).
pub fn widrow_hoff_refine(memories: &MemorySet, cfg: &LearningConfig) -> Result<WidrowHoffResult> {
    let init = RealWeightMatrix::from_weight_matrix(&build_t_matrix(memories));
    widrow_hoff_refine_from(memories, cfg, &init)
}

/// Widrow-Hoff refinement from explicit initial weights.
///
/// Memories are visited cyclically in index order. For each memory the error
/// e = x - W x is computed and the rank-one update W <- W + eta e x^t applied
/// to every entry, diagonal included. Training stops at the first epoch
/// boundary where all memories pass the sign test, or after `max_epochs`
/// passes; failing to converge is reported through `all_stored`, not an error.
pub fn widrow_hoff_refine_from(
    memories: &MemorySet,
    cfg: &LearningConfig,
    init: &RealWeightMatrix,
) -> Result<WidrowHoffResult> {
    let n = memories.neuron_count();
    if init.n() != n {
        return Err(Error::DimensionMismatch { expected: n, got: init.n() });
    }
    if !(cfg.eta > 0.0) || !cfg.eta.is_finite() {
        return Err(Error::InvalidConfig(format!("eta must be positive, got {}", cfg.eta)));
    }

    let mut w = init.clone();
    let mut mse_trace = Vec::new();
    let mut epochs = 0;

    let all_stored = loop {
        let mut stored = true;
        for x in memories.iter() {
            if !is_stored_fixed_real(&w, x)? {
                stored = false;
                break;
            }
        }
        if stored {
            break true;
        }
        if epochs == cfg.max_epochs {
            break false;
        }

        let mut sq_err_sum = 0.0;
        for x in memories.iter() {
            let y = w.multiply(x)?;
            let errors: Vec<f64> = x
                .iter()
                .zip(y.iter())
                .map(|(&xi, &yi)| xi as f64 - yi)
                .collect();
            sq_err_sum += errors.iter().map(|e| e * e).sum::<f64>() / n as f64;
            for (i, &ei) in errors.iter().enumerate() {
                let step = cfg.eta * ei;
                for (j, &xj) in x.as_slice().iter().enumerate() {
                    w.add_assign(i, j, step * xj as f64);
                }
            }
        }
        mse_trace.push(sq_err_sum / memories.len() as f64);
        epochs += 1;
    };

    Ok(WidrowHoffResult { weights: w, epochs, all_stored, mse_trace })
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn sgn_convention() {
        assert_eq!(sgn(0.0), 1);
        assert_eq!(sgn(-0.3), -1);
        assert_eq!(sgn(5.0), 1);
    }

    #[test]
    fn single_memory_outer_product() {
        let memories = set(&[&[1, -1, 1]]);
        let t = build_t_matrix(&memories);
        let expected =
            WeightMatrix::from_rows(vec![vec![0, -1, 1], vec![-1, 0, -1], vec![1, -1, 0]]).unwrap();
        assert_eq!(t, expected);
    }

    #[test]
    fn single_memory_is_stored() {
        // T . x = (N-1) x for a single memory, so the sign test passes.
        let memories = set(&[&[1, -1, 1, 1]]);
        let t = build_t_matrix(&memories);
        assert!(is_stored_fixed(&t, memories.get(0)).unwrap());
        assert_eq!(count_stored_fixed(&t, &memories).unwrap(), 1);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let memories = set(&[&[1, -1, 1]]);
        let t = build_t_matrix(&memories);
        let probe = BipolarPattern::new(vec![1, 1]).unwrap();
        assert!(is_stored_fixed(&t, &probe).is_err());
    }

    #[test]
    fn zero_epochs_returns_init_unchanged() {
        let memories = set(&[&[1, -1, 1], &[-1, -1, 1]]);
        let init = RealWeightMatrix::zeros(3).unwrap();
        let cfg = LearningConfig { eta: 0.5, max_epochs: 0 };
        let out = widrow_hoff_refine_from(&memories, &cfg, &init).unwrap();
        assert_eq!(out.weights, init);
        assert_eq!(out.epochs, 0);
        assert!(out.mse_trace.is_empty());
    }

    #[test]
    fn already_stored_memories_leave_weights_untouched() {
        let memories = set(&[&[1, -1, 1, -1, 1]]);
        let t = build_t_matrix(&memories);
        let init = RealWeightMatrix::from_weight_matrix(&t);
        let cfg = LearningConfig::new(0.1, 50).unwrap();
        let out = widrow_hoff_refine_from(&memories, &cfg, &init).unwrap();
        assert!(out.all_stored);
        assert_eq!(out.epochs, 0);
        assert_eq!(out.weights, init);
    }

    #[test]
    fn single_memory_trains_from_zero() {
        let memories = set(&[&[1, -1, 1, 1, -1]]);
        let init = RealWeightMatrix::zeros(5).unwrap();
        let cfg = LearningConfig::new(0.5, 50).unwrap();
        let out = widrow_hoff_refine_from(&memories, &cfg, &init).unwrap();
        assert!(out.all_stored, "single memory should store quickly");
        assert!(out.epochs <= 5, "took {} epochs", out.epochs);
        assert!(out.mse_trace.iter().all(|v| v.is_finite()));
    }

    #[test]
    fn invalid_eta_rejected() {
        assert!(LearningConfig::new(0.0, 10).is_err());
        assert!(LearningConfig::new(-1.0, 10).is_err());
        assert!(LearningConfig::new(0.1, 0).is_err());
        assert!(LearningConfig::new(0.1, 10).is_ok());
    }
}
