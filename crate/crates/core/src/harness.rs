//! Experiment driver.
//!
//! Each sweep draws fresh random instances per (cell, trial), runs the fixed-
//! and variable-threshold procedures, and reports per-cell means. Trials get
//! their own random stream derived from the master seed and a global trial
//! index, so output is a pure function of the sweep spec: any degree of
//! parallelism and any worker count produce byte-identical results.

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;

use crate::bmatrix::{build_b_matrix, min_fragment_len, BMatrix};
use crate::error::{Error, Result};
use crate::hebbian::{build_t_matrix, is_stored_fixed, LearningConfig};
use crate::matrix::{ThresholdVector, WeightMatrix};
use crate::pattern::MemorySet;
use crate::quaternary::{quat_capacity_experiment, QuaternaryLevels, DEFAULT_MAX_SWEEPS};
use crate::rng::{random_memories, RandomSource};
use crate::vthreshold::{
    learn_thresholds_exact, learn_thresholds_grid, learn_thresholds_widrow, ThresholdGrid,
    ThresholdLearnResult,
};

/// Which threshold learner a sweep uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LearnerKind {
    Grid,
    Exact,
    Widrow,
}

impl fmt::Display for LearnerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            LearnerKind::Grid => "grid",
            LearnerKind::Exact => "exact",
            LearnerKind::Widrow => "widrow",
        };
        f.write_str(name)
    }
}

impl FromStr for LearnerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grid" => Ok(LearnerKind::Grid),
            "exact" => Ok(LearnerKind::Exact),
            "widrow" => Ok(LearnerKind::Widrow),
            other => Err(Error::InvalidConfig(format!(
                "unknown learner {other:?} (expected grid, exact, or widrow)"
            ))),
        }
    }
}

/// Shared learner settings for the binary-network sweeps.
#[derive(Debug, Clone, Copy)]
pub struct LearnerSettings {
    pub kind: LearnerKind,
    /// Grid step for the grid learner.
    pub grid_step: f64,
    /// Learning rate for the Widrow-Hoff threshold learner.
    pub eta: f64,
    /// Epoch cap for the Widrow-Hoff threshold learner.
    pub max_epochs: usize,
}

impl Default for LearnerSettings {
    fn default() -> Self {
        Self {
            kind: LearnerKind::Grid,
            grid_step: ThresholdGrid::DEFAULT_STEP,
            eta: 0.05,
            max_epochs: 100,
        }
    }
}

impl LearnerSettings {
    fn learn(&self, t: &WeightMatrix, memories: &MemorySet) -> Result<ThresholdLearnResult> {
        match self.kind {
            LearnerKind::Grid => {
                let grid = ThresholdGrid::with_step(t.n(), self.grid_step)?;
                learn_thresholds_grid(t, memories, &grid)
            }
            LearnerKind::Exact => learn_thresholds_exact(t, memories),
            LearnerKind::Widrow => {
                let cfg = LearningConfig::new(self.eta, self.max_epochs)?;
                learn_thresholds_widrow(t, memories, &cfg)
            }
        }
    }
}

/// Spec for the fixed-vs-variable storage sweep.
#[derive(Debug, Clone)]
pub struct StorageSweep {
    pub neuron_counts: Vec<usize>,
    pub memories: usize,
    pub trials: usize,
    pub seed: u64,
    pub learner: LearnerSettings,
}

/// Spec for the B-matrix retrieval sweep.
#[derive(Debug, Clone)]
pub struct RetrievalSweep {
    pub neuron_counts: Vec<usize>,
    pub memories: usize,
    pub trials: usize,
    pub seed: u64,
    pub learner: LearnerSettings,
}

/// Spec for the quaternary capacity sweep.
#[derive(Debug, Clone)]
pub struct QuaternarySweep {
    pub neurons: usize,
    pub t_over_c: Vec<f64>,
    pub pattern_counts: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    /// Outer and inner level magnitudes (a, b).
    pub levels: (f64, f64),
    pub max_sweeps: usize,
}

impl QuaternarySweep {
    /// The capacity-table shape: alphabet {-2,-1,1,2}, 1000-sweep cap.
    pub fn new(
        neurons: usize,
        t_over_c: Vec<f64>,
        pattern_counts: Vec<usize>,
        trials: usize,
        seed: u64,
    ) -> Self {
        Self {
            neurons,
            t_over_c,
            pattern_counts,
            trials,
            seed,
            levels: (2.0, 1.0),
            max_sweeps: DEFAULT_MAX_SWEEPS,
        }
    }
}

fn check_common(neuron_counts: &[usize], memories: usize, trials: usize) -> Result<()> {
    if neuron_counts.is_empty() {
        return Err(Error::InvalidConfig("neuron count list must be non-empty".into()));
    }
    if neuron_counts.iter().any(|&n| n == 0) {
        return Err(Error::InvalidConfig("neuron counts must be positive".into()));
    }
    if memories == 0 {
        return Err(Error::InvalidConfig("memory count must be >= 1".into()));
    }
    if trials == 0 {
        return Err(Error::InvalidConfig("trials must be >= 1".into()));
    }
    Ok(())
}

/// One row of the storage sweep: mean stored counts over the trials.
#[derive(Debug, Clone, PartialEq)]
pub struct StorageRow {
    pub n: usize,
    pub m: usize,
    pub trials: usize,
    pub stored_fixed: f64,
    pub stored_variable: f64,
}

/// One row of the retrieval sweep: mean counts over the trials.
#[derive(Debug, Clone, PartialEq)]
pub struct RetrievalRow {
    pub n: usize,
    pub m: usize,
    pub trials: usize,
    /// Mean variable-threshold stored count (the retrieval candidates).
    pub stored: f64,
    pub retrieved_fixed: f64,
    pub retrieved_variable: f64,
}

/// One cell of the quaternary capacity table.
#[derive(Debug, Clone, PartialEq)]
pub struct QuatRow {
    pub t_over_c: f64,
    pub patterns: usize,
    pub trials: usize,
    pub success_percent: f64,
}

/// Runs the fixed-vs-variable storage comparison for each neuron count.
pub fn run_storage_sweep(spec: &StorageSweep) -> Result<Vec<StorageRow>> {
    check_common(&spec.neuron_counts, spec.memories, spec.trials)?;
    let master = RandomSource::new(spec.seed);
    let mut rows = Vec::with_capacity(spec.neuron_counts.len());
    for (ci, &n) in spec.neuron_counts.iter().enumerate() {
        let base = (ci * spec.trials) as u64;
        let counts: Result<Vec<(usize, usize)>> = (0..spec.trials)
            .into_par_iter()
            .map(|ti| {
                let src = master.with_stream(base + ti as u64);
                storage_trial(n, spec.memories, &src, &spec.learner)
            })
            .collect();
        let counts = counts?;
        let fixed_sum: usize = counts.iter().map(|c| c.0).sum();
        let variable_sum: usize = counts.iter().map(|c| c.1).sum();
        rows.push(StorageRow {
            n,
            m: spec.memories,
            trials: spec.trials,
            stored_fixed: fixed_sum as f64 / spec.trials as f64,
            stored_variable: variable_sum as f64 / spec.trials as f64,
        });
    }
    Ok(rows)
}

fn storage_trial(
    n: usize,
    m: usize,
    src: &RandomSource,
    learner: &LearnerSettings,
) -> Result<(usize, usize)> {
    let memories = random_memories(n, m, src)?;
    let t = build_t_matrix(&memories);
    let fixed = crate::hebbian::count_stored_fixed(&t, &memories)?;
    let learned = learner.learn(&t, &memories)?;
    Ok((fixed, learned.stored_count))
}

/// Runs the retrieval comparison: how many stored memories regenerate from a
/// proper prefix fragment, under zero thresholds and under learned ones.
pub fn run_retrieval_sweep(spec: &RetrievalSweep) -> Result<Vec<RetrievalRow>> {
    check_common(&spec.neuron_counts, spec.memories, spec.trials)?;
    let master = RandomSource::new(spec.seed);
    let mut rows = Vec::with_capacity(spec.neuron_counts.len());
    for (ci, &n) in spec.neuron_counts.iter().enumerate() {
        let base = (ci * spec.trials) as u64;
        let counts: Result<Vec<(usize, usize, usize)>> = (0..spec.trials)
            .into_par_iter()
            .map(|ti| {
                let src = master.with_stream(base + ti as u64);
                retrieval_trial(n, spec.memories, &src, &spec.learner)
            })
            .collect();
        let counts = counts?;
        let stored_sum: usize = counts.iter().map(|c| c.0).sum();
        let fixed_sum: usize = counts.iter().map(|c| c.1).sum();
        let variable_sum: usize = counts.iter().map(|c| c.2).sum();
        rows.push(RetrievalRow {
            n,
            m: spec.memories,
            trials: spec.trials,
            stored: stored_sum as f64 / spec.trials as f64,
            retrieved_fixed: fixed_sum as f64 / spec.trials as f64,
            retrieved_variable: variable_sum as f64 / spec.trials as f64,
        });
    }
    Ok(rows)
}

/// Retrieval is attempted for the memories stored under each threshold mode;
/// a memory counts as retrieved when some proper prefix regenerates it.
fn retrieval_trial(
    n: usize,
    m: usize,
    src: &RandomSource,
    learner: &LearnerSettings,
) -> Result<(usize, usize, usize)> {
    let memories = random_memories(n, m, src)?;
    let t = build_t_matrix(&memories);
    let b = build_b_matrix(&t);

    let zeros = ThresholdVector::zeros(n)?;
    let mut retrieved_fixed = 0;
    for x in memories.iter() {
        if is_stored_fixed(&t, x)? && retrievable(&b, x, &zeros)? {
            retrieved_fixed += 1;
        }
    }

    let learned = learner.learn(&t, &memories)?;
    let mut retrieved_variable = 0;
    for (s, x) in memories.iter().enumerate() {
        if learned.stored_flags[s] && retrievable(&b, x, &learned.thresholds)? {
            retrieved_variable += 1;
        }
    }
    Ok((learned.stored_count, retrieved_fixed, retrieved_variable))
}

fn retrievable(
    b: &BMatrix,
    x: &crate::pattern::BipolarPattern,
    theta: &ThresholdVector,
) -> Result<bool> {
    Ok(min_fragment_len(b, x, theta)?.is_some())
}

/// Runs the (t/c x pattern count) capacity grid.
pub fn run_quaternary_sweep(spec: &QuaternarySweep) -> Result<Vec<QuatRow>> {
    if spec.neurons == 0 {
        return Err(Error::InvalidConfig("neuron count must be positive".into()));
    }
    if spec.t_over_c.is_empty() || spec.pattern_counts.is_empty() {
        return Err(Error::InvalidConfig("t/c and pattern lists must be non-empty".into()));
    }
    if spec.trials == 0 {
        return Err(Error::InvalidConfig("trials must be >= 1".into()));
    }
    let levels = QuaternaryLevels::new(spec.levels.0, spec.levels.1, 1.0)?;
    let master = RandomSource::new(spec.seed);

    let cells: Vec<(usize, f64, usize)> = spec
        .t_over_c
        .iter()
        .enumerate()
        .flat_map(|(ri, &tc)| {
            spec.pattern_counts
                .iter()
                .enumerate()
                .map(move |(pi, &p)| (ri * spec.pattern_counts.len() + pi, tc, p))
        })
        .collect();

    let rows: Result<Vec<QuatRow>> = cells
        .into_par_iter()
        .map(|(ci, tc, p)| {
            let base = master.with_stream((ci * spec.trials) as u64);
            let pct = quat_capacity_experiment(
                spec.neurons,
                p,
                tc,
                spec.trials,
                &base,
                &levels,
                spec.max_sweeps,
            )?;
            Ok(QuatRow { t_over_c: tc, patterns: p, trials: spec.trials, success_percent: pct })
        })
        .collect();
    rows
}

/// Output format for [`emit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Table,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "table" => Ok(OutputFormat::Table),
            other => Err(Error::InvalidConfig(format!(
                "unknown format {other:?} (expected csv or table)"
            ))),
        }
    }
}

/// A row type the harness can emit.
pub trait SweepRecord {
    fn headers() -> &'static [&'static str];
    fn fields(&self) -> Vec<String>;
}

impl SweepRecord for StorageRow {
    fn headers() -> &'static [&'static str] {
        &["n", "m", "trials", "stored_fixed", "stored_variable"]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.m.to_string(),
            self.trials.to_string(),
            format!("{:.2}", self.stored_fixed),
            format!("{:.2}", self.stored_variable),
        ]
    }
}

impl SweepRecord for RetrievalRow {
    fn headers() -> &'static [&'static str] {
        &["n", "m", "trials", "stored", "retrieved_fixed", "retrieved_variable"]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.m.to_string(),
            self.trials.to_string(),
            format!("{:.2}", self.stored),
            format!("{:.2}", self.retrieved_fixed),
            format!("{:.2}", self.retrieved_variable),
        ]
    }
}

impl SweepRecord for QuatRow {
    fn headers() -> &'static [&'static str] {
        &["t_over_c", "patterns", "trials", "success_percent"]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            format!("{:.2}", self.t_over_c),
            self.patterns.to_string(),
            self.trials.to_string(),
            format!("{:.2}", self.success_percent),
        ]
    }
}

/// Writes rows as CSV (exact schema headers, LF endings) or as an aligned
/// text table. Identical rows produce byte-identical output.
pub fn emit<R: SweepRecord, W: Write>(
    rows: &[R],
    format: OutputFormat,
    mut writer: W,
    dest: &str,
) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::EmptyRows);
    }
    let io_err = |e| Error::Io { dest: dest.to_string(), source: e };
    match format {
        OutputFormat::Csv => {
            writeln!(writer, "{}", R::headers().join(",")).map_err(io_err)?;
            for row in rows {
                writeln!(writer, "{}", row.fields().join(",")).map_err(io_err)?;
            }
        }
        OutputFormat::Table => {
            let headers = R::headers();
            let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
            let all_fields: Vec<Vec<String>> = rows.iter().map(|r| r.fields()).collect();
            for fields in &all_fields {
                for (w, f) in widths.iter_mut().zip(fields.iter()) {
                    *w = (*w).max(f.len());
                }
            }
            let header_line: Vec<String> = headers
                .iter()
                .zip(widths.iter())
                .map(|(h, w)| format!("{h:>w$}"))
                .collect();
            writeln!(writer, "{}", header_line.join("  ")).map_err(io_err)?;
            for fields in &all_fields {
                let line: Vec<String> = fields
                    .iter()
                    .zip(widths.iter())
                    .map(|(f, w)| format!("{f:>w$}"))
                    .collect();
                writeln!(writer, "{}", line.join("  ")).map_err(io_err)?;
            }
        }
    }
    writer.flush().map_err(io_err)
}

/// [`emit`] to a file path.
pub fn emit_to_path<R: SweepRecord>(rows: &[R], format: OutputFormat, path: &Path) -> Result<()> {
    let dest = path.display().to_string();
    let file = File::create(path).map_err(|e| Error::Io { dest: dest.clone(), source: e })?;
    emit(rows, format, BufWriter::new(file), &dest)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn storage_sweep_is_deterministic_and_dominant() {
        let spec = StorageSweep {
            neuron_counts: vec![10, 20],
            memories: 5,
            trials: 3,
            seed: 99,
            learner: LearnerSettings::default(),
        };
        let a = run_storage_sweep(&spec).unwrap();
        let b = run_storage_sweep(&spec).unwrap();
        assert_eq!(a, b);
        for row in &a {
            assert!(row.stored_variable >= row.stored_fixed);
            assert!(row.stored_fixed >= 0.0 && row.stored_variable <= 5.0);
        }
    }

    #[test]
    fn retrieval_counts_stay_within_bounds() {
        let spec = RetrievalSweep {
            neuron_counts: vec![15],
            memories: 4,
            trials: 3,
            seed: 7,
            learner: LearnerSettings::default(),
        };
        let rows = run_retrieval_sweep(&spec).unwrap();
        assert_eq!(rows.len(), 1);
        let row = &rows[0];
        assert!(row.retrieved_variable <= row.stored);
        assert!(row.stored <= 4.0);
    }

    #[test]
    fn quaternary_sweep_covers_the_grid() {
        let spec = QuaternarySweep::new(5, vec![32.0, 64.0], vec![1, 2], 5, 3);
        let rows = run_quaternary_sweep(&spec).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[0].t_over_c, 32.0);
        assert_eq!(rows[0].patterns, 1);
        assert_eq!(rows[1].patterns, 2);
        for row in &rows {
            assert!((0.0..=100.0).contains(&row.success_percent));
        }
    }

    #[test]
    fn emit_rejects_empty_rows() {
        let rows: Vec<StorageRow> = Vec::new();
        let mut buf = Vec::new();
        assert!(matches!(
            emit(&rows, OutputFormat::Csv, &mut buf, "buffer"),
            Err(Error::EmptyRows)
        ));
    }

    #[test]
    fn csv_schema_matches_the_contract() {
        let rows = vec![StorageRow { n: 10, m: 10, trials: 1, stored_fixed: 1.0, stored_variable: 3.0 }];
        let mut buf = Vec::new();
        emit(&rows, OutputFormat::Csv, &mut buf, "buffer").unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "n,m,trials,stored_fixed,stored_variable\n10,10,1,1.00,3.00\n");
    }
}
