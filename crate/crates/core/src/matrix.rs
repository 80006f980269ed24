//! Interconnection matrices and threshold vectors.
//!
//! [`WeightMatrix`] is the integer Hebbian T-matrix: symmetric with a zero
//! diagonal, enforced at construction. [`RealWeightMatrix`] is its real-valued
//! counterpart produced by iterative refinement, with neither constraint.
//! Both serialize to plain text: a first line holding N, then N rows of
//! space-separated entries.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::pattern::BipolarPattern;

/// Symmetric integer interconnection matrix with zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMatrix {
    n: usize,
    entries: Vec<i32>,
}

impl WeightMatrix {
    /// Validates and wraps a square row-major matrix.
    pub fn from_rows(rows: Vec<Vec<i32>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidDimension("matrix side must be >= 1".into()));
        }
        for row in &rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: row.len() });
            }
        }
        for i in 0..n {
            if rows[i][i] != 0 {
                return Err(Error::NonzeroDiagonal(i));
            }
            for j in (i + 1)..n {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        let entries = rows.into_iter().flatten().collect();
        Ok(Self { n, entries })
    }

    /// Internal constructor for matrices built to satisfy the invariants.
    pub(crate) fn from_parts_unchecked(n: usize, entries: Vec<i32>) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        Self { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i32 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[i32] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    /// Net input to neuron `i` when the network state is `x`.
    pub fn row_activation(&self, i: usize, x: &BipolarPattern) -> Result<i64> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: x.len() });
        }
        Ok(self
            .row(i)
            .iter()
            .zip(x.iter())
            .map(|(&w, &v)| w as i64 * v as i64)
            .sum())
    }

    /// All N net inputs for state `x`.
    pub fn activations(&self, x: &BipolarPattern) -> Result<Vec<i64>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: x.len() });
        }
        Ok((0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x.iter())
                    .map(|(&w, &v)| w as i64 * v as i64)
                    .sum()
            })
            .collect())
    }

    /// Writes the text form: N, then N rows of integers.
    pub fn write_text<W: Write>(&self, mut writer: W) -> Result<()> {
        let io_err = |e| Error::Io { dest: "weight matrix output".into(), source: e };
        writeln!(writer, "{}", self.n).map_err(io_err)?;
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(writer, "{}", row.join(" ")).map_err(io_err)?;
        }
        Ok(())
    }

    /// Reads the text form, re-validating symmetry and the zero diagonal.
    pub fn read_text<R: BufRead>(reader: R) -> Result<Self> {
        let rows = read_numeric_rows(reader, |token, line| {
            token.parse::<i32>().map_err(|_| Error::Parse {
                line,
                msg: format!("expected integer, found {token:?}"),
            })
        })?;
        Self::from_rows(rows)
    }
}

/// Real-valued weight matrix; no symmetry or diagonal constraint.
#[derive(Debug, Clone, PartialEq)]
pub struct RealWeightMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl RealWeightMatrix {
    pub fn zeros(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension("matrix side must be >= 1".into()));
        }
        Ok(Self { n, entries: vec![0.0; n * n] })
    }

    /// The integer matrix reinterpreted as real, optionally scaled.
    pub fn from_weight_matrix(t: &WeightMatrix) -> Self {
        Self {
            n: t.n(),
            entries: t.entries.iter().map(|&v| v as f64).collect(),
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            n: self.n,
            entries: self.entries.iter().map(|v| v * factor).collect(),
        }
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

    pub fn add_assign(&mut self, i: usize, j: usize, delta: f64) {
        self.entries[i * self.n + j] += delta;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    /// W . x for a bipolar state.
    pub fn multiply(&self, x: &BipolarPattern) -> Result<Vec<f64>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: x.len() });
        }
        Ok((0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x.iter())
                    .map(|(&w, &v)| w * v as f64)
                    .sum()
            })
            .collect())
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|v| v.is_finite())
    }

    /// Writes the text form: N, then N rows of decimals (shortest round-trip
    /// representation, so reading back restores the exact values).
    pub fn write_text<W: Write>(&self, mut writer: W) -> Result<()> {
        let io_err = |e| Error::Io { dest: "weight matrix output".into(), source: e };
        writeln!(writer, "{}", self.n).map_err(io_err)?;
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|v| format!("{v}")).collect();
            writeln!(writer, "{}", row.join(" ")).map_err(io_err)?;
        }
        Ok(())
    }

    pub fn read_text<R: BufRead>(reader: R) -> Result<Self> {
        let rows = read_numeric_rows(reader, |token, line| {
            token.parse::<f64>().map_err(|_| Error::Parse {
                line,
                msg: format!("expected number, found {token:?}"),
            })
        })?;
        let n = rows.len();
        for row in &rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: row.len() });
            }
        }
        let entries: Vec<f64> = rows.into_iter().flatten().collect();
        if !entries.iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidConfig("weight entries must be finite".into()));
        }
        Ok(Self { n, entries })
    }
}

/// One real threshold per neuron.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdVector {
    values: Vec<f64>,
}

impl ThresholdVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidDimension("threshold vector must be non-empty".into()));
        }
        if !values.iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidConfig("thresholds must be finite".into()));
        }
        Ok(Self { values })
    }

    /// The all-zero vector, i.e. the fixed-threshold special case.
    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(vec![0.0; n])
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

    /// Writes one decimal per line.
    pub fn write_text<W: Write>(&self, mut writer: W) -> Result<()> {
        for v in &self.values {
            writeln!(writer, "{v}").map_err(|e| Error::Io { dest: "threshold output".into(), source: e })?;
        }
        Ok(())
    }

    /// Reads one decimal per line; `#` comment lines and blanks are skipped.
    pub fn read_text<R: BufRead>(reader: R) -> Result<Self> {
        let mut values = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line.map_err(|e| Error::Io { dest: format!("line {line_no}"), source: e })?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let v: f64 = trimmed.parse().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("expected number, found {trimmed:?}"),
            })?;
            values.push(v);
        }
        Self::new(values)
    }
}

/// Shared reader for the `N` + N rows text layout.
fn read_numeric_rows<R: BufRead, T, F>(reader: R, parse: F) -> Result<Vec<Vec<T>>>
where
    F: Fn(&str, usize) -> Result<T>,
{
    let mut lines = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| Error::Io { dest: format!("line {line_no}"), source: e })?;
        let trimmed = line.trim().to_string();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        lines.push((line_no, trimmed));
    }
    let Some((first_no, first)) = lines.first() else {
        return Err(Error::Parse { line: 0, msg: "empty matrix input".into() });
    };
    let n: usize = first.parse().map_err(|_| Error::Parse {
        line: *first_no,
        msg: format!("expected matrix size, found {first:?}"),
    })?;
    if n == 0 {
        return Err(Error::InvalidDimension("matrix side must be >= 1".into()));
    }
    if lines.len() != n + 1 {
        return Err(Error::Parse {
            line: lines.last().map(|(no, _)| *no).unwrap_or(0),
            msg: format!("expected {n} matrix rows, found {}", lines.len() - 1),
        });
    }
    let mut rows = Vec::with_capacity(n);
    for (line_no, line) in &lines[1..] {
        let mut row = Vec::with_capacity(n);
        for token in line.split_whitespace() {
            row.push(parse(token, *line_no)?);
        }
        if row.len() != n {
            return Err(Error::Parse {
                line: *line_no,
                msg: format!("expected {n} entries, found {}", row.len()),
            });
        }
        rows.push(row);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_asymmetric_and_nonzero_diagonal() {
        assert!(matches!(
            WeightMatrix::from_rows(vec![vec![0, 1], vec![2, 0]]),
            Err(Error::NotSymmetric { row: 0, col: 1 })
        ));
        assert!(matches!(
            WeightMatrix::from_rows(vec![vec![1, 2], vec![2, 0]]),
            Err(Error::NonzeroDiagonal(0))
        ));
        assert!(WeightMatrix::from_rows(vec![vec![0, 2], vec![2, 0]]).is_ok());
    }

    #[test]
    fn activation_checks_dimensions() {
        let t = WeightMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let x = BipolarPattern::new(vec![1, -1, 1]).unwrap();
        assert!(matches!(
            t.activations(&x),
            Err(Error::DimensionMismatch { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn weight_matrix_text_round_trip() {
        let t = WeightMatrix::from_rows(vec![vec![0, -3, 1], vec![-3, 0, 2], vec![1, 2, 0]]).unwrap();
        let mut buf = Vec::new();
        t.write_text(&mut buf).unwrap();
        let back = WeightMatrix::read_text(buf.as_slice()).unwrap();
        assert_eq!(t, back);
    }

    #[test]
    fn threshold_text_round_trip_is_exact() {
        let th = ThresholdVector::new(vec![-7.9, 0.1, 4.1, 0.0]).unwrap();
        let mut buf = Vec::new();
        th.write_text(&mut buf).unwrap();
        let back = ThresholdVector::read_text(buf.as_slice()).unwrap();
        assert_eq!(th, back);
    }

    #[test]
    fn rejects_non_finite_thresholds() {
        assert!(ThresholdVector::new(vec![0.0, f64::NAN]).is_err());
        assert!(ThresholdVector::new(vec![f64::INFINITY]).is_err());
    }
}
