//! Hopfield-style associative memories with per-neuron variable thresholds.
//!
//! The crate covers five pieces:
//!
//! * [`hebbian`] — the integer T-matrix built from memory outer products, the
//!   classical sgn storage test, and Widrow-Hoff weight refinement;
//! * [`vthreshold`] — per-neuron thresholds: the storage condition and three
//!   learners (grid scan, exact 1-D oracle, LMS-style);
//! * [`bmatrix`] — the lower-triangular generator model that regenerates a
//!   memory bit by bit from a prefix fragment, with or without thresholds;
//! * [`quaternary`] — four-level networks trained by a delta rule, plus the
//!   convergence-ratio formula and capacity experiments;
//! * [`harness`] — deterministic sweeps comparing the approaches, emitting
//!   CSV or aligned tables.
//!
//! Everything randomized flows through [`rng::RandomSource`], a (seed,
//! stream) pair with platform-independent output, so every experiment is
//! exactly reproducible.

pub mod bmatrix;
pub mod error;
pub mod harness;
pub mod hebbian;
pub mod matrix;
pub mod pattern;
pub mod quaternary;
pub mod rng;
pub mod vthreshold;

pub use bmatrix::{
    build_b_matrix, count_retrieved, min_fragment_len, permute_memories, permute_network,
    permute_pattern, retrieve_from_fragment, BMatrix, Fragment, ProximityOrder,
};
pub use error::{Error, Result};
pub use harness::{
    emit, emit_to_path, run_quaternary_sweep, run_retrieval_sweep, run_storage_sweep, LearnerKind,
    LearnerSettings, OutputFormat, QuatRow, QuaternarySweep, RetrievalRow, RetrievalSweep,
    StorageRow, StorageSweep, SweepRecord,
};
pub use hebbian::{
    build_t_matrix, count_stored_fixed, is_stored_fixed, is_stored_fixed_real, sgn,
    widrow_hoff_refine, widrow_hoff_refine_from, LearningConfig, WidrowHoffResult,
};
pub use matrix::{RealWeightMatrix, ThresholdVector, WeightMatrix};
pub use pattern::{BipolarPattern, MemorySet};
pub use quaternary::{
    convergence_ratio, delta_rule_train, delta_rule_train_from, quat_activation,
    quat_capacity_experiment, quat_next_state, random_quaternary_patterns, DeltaRuleOutcome,
    QuaternaryLevels, QuaternaryPattern, QuaternaryWeights,
};
pub use rng::{random_memories, RandomSource};
pub use vthreshold::{
    count_stored_variable, is_stored_variable, learn_thresholds_exact, learn_thresholds_grid,
    learn_thresholds_widrow, learn_thresholds_widrow_from, threshold_sign, ThresholdGrid,
    ThresholdLearnResult,
};
