//! Batch sweeps over `(n, c, d)` grids and their report formats.

mod record;
mod sweep;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use thiserror::Error;

pub use record::{
    audit_header, parse_record, record_header, serialize_audit, serialize_record, AuditLine,
};
pub use sweep::{run_sweep, run_sweep_to, SweepOutcome, SweepStatus};

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("cannot parse record: {0}")]
pub struct ParseError(pub String);

/// Closed integer interval `lo..=hi`; written `a..b` or a single value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntRange {
    pub lo: i64,
    pub hi: i64,
}

impl IntRange {
    pub fn new(lo: i64, hi: i64) -> Self {
        Self { lo, hi }
    }

    pub fn single(v: i64) -> Self {
        Self { lo: v, hi: v }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }

    pub fn len(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            (self.hi - self.lo) as usize + 1
        }
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| format!("invalid integer {t:?}: {e}"))
        };
        match s.split_once("..") {
            Some((lo, hi)) => Ok(Self::new(parse(lo)?, parse(hi)?)),
            None => Ok(Self::single(parse(s)?)),
        }
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Assert the congruence on every in-hypothesis cell.
    Verify,
    /// Same grid, no assertions.
    Explore,
    /// Primes only: `M = V C V^T` and the ranks.
    Decompose,
    /// Composites only: `n | V_n` and the valuation bounds.
    CompositeAudit,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "verify" => Ok(Mode::Verify),
            "explore" => Ok(Mode::Explore),
            "decompose" => Ok(Mode::Decompose),
            "composite-audit" => Ok(Mode::CompositeAudit),
            other => Err(format!(
                "unknown mode {other:?} (expected verify, explore, decompose or composite-audit)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    JsonLines,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json-lines" | "jsonl" => Ok(Format::JsonLines),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format {other:?} (expected json-lines or csv)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub n_range: IntRange,
    pub c_range: IntRange,
    pub d_range: IntRange,
    pub mode: Mode,
    pub format: Format,
    /// `None` writes to standard output.
    pub output: Option<PathBuf>,
    pub jobs: usize,
    /// Fill the `ms` column with wall-clock timings. Off by default, since
    /// timings make reports differ from run to run.
    pub timing: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            n_range: IntRange::single(4),
            c_range: IntRange::single(0),
            d_range: IntRange::single(0),
            mode: Mode::Verify,
            format: Format::JsonLines,
            output: None,
            jobs: 1,
            timing: false,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), SweepError> {
        for (name, r) in [("n", self.n_range), ("c", self.c_range), ("d", self.d_range)] {
            if r.is_empty() {
                return Err(SweepError::Config(format!("{name} range {r} is empty")));
            }
        }
        if self.n_range.lo < 4 {
            return Err(SweepError::Config(format!(
                "n range must start at 4 or above, got {}",
                self.n_range
            )));
        }
        if self.n_range.hi > i64::from(u32::MAX) {
            return Err(SweepError::Config(format!("n range {} is too large", self.n_range)));
        }
        if self.jobs == 0 {
            return Err(SweepError::Config("jobs must be positive".into()));
        }
        Ok(())
    }
}
