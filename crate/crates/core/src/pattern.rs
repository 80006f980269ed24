//! Bipolar patterns and memory sets.
//!
//! A pattern is a dense vector over {-1, +1}, one entry per neuron. Patterns
//! are immutable after construction; invalid elements are rejected up front so
//! the rest of the crate can assume well-formed inputs.

use std::fmt;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

/// A length-N vector over {-1, +1}: a memory, a probe, or a network state.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BipolarPattern {
    values: Vec<i8>,
}

impl BipolarPattern {
    /// Builds a pattern, rejecting empty input and any element outside {-1, +1}.
    pub fn new(values: Vec<i8>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidDimension("pattern length must be >= 1".into()));
        }
        for (index, &v) in values.iter().enumerate() {
            if v != 1 && v != -1 {
                return Err(Error::InvalidElement { index, value: v as i64 });
            }
        }
        Ok(Self { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false // length >= 1 by construction
    }

    pub fn get(&self, i: usize) -> i8 {
        self.values[i]
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.values
    }

    pub fn iter(&self) -> std::slice::Iter<'_, i8> {
        self.values.iter()
    }

    /// Parses a single text line of space-separated `1` / `-1` elements.
    fn parse_line(line: &str, line_no: usize) -> Result<Self> {
        let mut values = Vec::new();
        for token in line.split_whitespace() {
            match token {
                "1" | "+1" => values.push(1),
                "-1" => values.push(-1),
                other => {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("expected 1 or -1, found {other:?}"),
                    })
                }
            }
        }
        if values.is_empty() {
            return Err(Error::Parse {
                line: line_no,
                msg: "empty pattern line".into(),
            });
        }
        BipolarPattern::new(values)
    }
}

impl fmt::Display for BipolarPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.values {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

/// An ordered collection of equal-length bipolar patterns.
///
/// Duplicates are permitted; every index counts separately in storage and
/// retrieval statistics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemorySet {
    patterns: Vec<BipolarPattern>,
}

impl MemorySet {
    /// Builds a set from at least one pattern; all patterns must share a length.
    pub fn new(patterns: Vec<BipolarPattern>) -> Result<Self> {
        let Some(first) = patterns.first() else {
            return Err(Error::InvalidDimension("memory set must hold at least one pattern".into()));
        };
        let n = first.len();
        for p in &patterns {
            if p.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: p.len() });
            }
        }
        Ok(Self { patterns })
    }

    /// Number of neurons N.
    pub fn neuron_count(&self) -> usize {
        self.patterns[0].len()
    }

    /// Number of memories m.
    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        false // at least one pattern by construction
    }

    pub fn get(&self, s: usize) -> &BipolarPattern {
        &self.patterns[s]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BipolarPattern> {
        self.patterns.iter()
    }

    /// Returns a new set with `extra` appended, for re-learning after new
    /// memories arrive.
    pub fn with_memory(&self, extra: BipolarPattern) -> Result<Self> {
        if extra.len() != self.neuron_count() {
            return Err(Error::DimensionMismatch {
                expected: self.neuron_count(),
                got: extra.len(),
            });
        }
        let mut patterns = self.patterns.clone();
        patterns.push(extra);
        Ok(Self { patterns })
    }

    /// Reads the pattern file format: one pattern per line, elements `1` or
    /// `-1` separated by spaces, `#` starting a comment line. Blank lines are
    /// skipped.
    pub fn read_text<R: BufRead>(reader: R) -> Result<Self> {
        let mut patterns = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line.map_err(|e| Error::Io { dest: format!("line {line_no}"), source: e })?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            patterns.push(BipolarPattern::parse_line(trimmed, line_no)?);
        }
        if patterns.is_empty() {
            return Err(Error::Parse { line: 0, msg: "no patterns in input".into() });
        }
        MemorySet::new(patterns)
    }

    /// Writes the pattern file format (no comments, LF line endings).
    pub fn write_text<W: Write>(&self, mut writer: W) -> Result<()> {
        for p in &self.patterns {
            writeln!(writer, "{p}").map_err(|e| Error::Io { dest: "pattern output".into(), source: e })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_elements() {
        assert!(matches!(
            BipolarPattern::new(vec![1, 0, -1]),
            Err(Error::InvalidElement { index: 1, value: 0 })
        ));
        assert!(BipolarPattern::new(vec![]).is_err());
        assert!(BipolarPattern::new(vec![1, -1, 1]).is_ok());
    }

    #[test]
    fn memory_set_requires_equal_lengths() {
        let a = BipolarPattern::new(vec![1, -1]).unwrap();
        let b = BipolarPattern::new(vec![1, -1, 1]).unwrap();
        assert!(MemorySet::new(vec![a.clone(), b]).is_err());
        assert!(MemorySet::new(vec![]).is_err());
        let set = MemorySet::new(vec![a]).unwrap();
        assert_eq!(set.neuron_count(), 2);
        assert_eq!(set.len(), 1);
    }

    #[test]
    fn parses_pattern_file_with_comments() {
        let text = "# two memories\n1 -1 1\n\n-1 -1 1\n";
        let set = MemorySet::read_text(text.as_bytes()).unwrap();
        assert_eq!(set.len(), 2);
        assert_eq!(set.get(0).as_slice(), &[1, -1, 1]);
        assert_eq!(set.get(1).as_slice(), &[-1, -1, 1]);
    }

    #[test]
    fn parse_error_names_line_number() {
        let text = "1 -1\n1 2\n";
        match MemorySet::read_text(text.as_bytes()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn round_trips_through_text() {
        let set = MemorySet::new(vec![
            BipolarPattern::new(vec![1, 1, -1]).unwrap(),
            BipolarPattern::new(vec![-1, 1, 1]).unwrap(),
        ])
        .unwrap();
        let mut buf = Vec::new();
        set.write_text(&mut buf).unwrap();
        let back = MemorySet::read_text(buf.as_slice()).unwrap();
        assert_eq!(set, back);
    }
}
