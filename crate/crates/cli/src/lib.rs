//! Scenario runner for the `twotime` library.
//!
//! Each command returns a [`Summary`] of notes and pass/fail [`Check`]s; the
//! binary prints it and exits nonzero when any check fails. Tables are written
//! only after all computation has finished.

use std::fmt;
use std::path::PathBuf;

pub mod commands;
pub mod output;
pub mod reports;

pub use commands::{cmd_figure1, cmd_lambda, cmd_tpm_gap};
pub use output::{fmt_num, Format, Table};
pub use reports::{cmd_report, Scenario};

pub const DEFAULT_SEED: u64 = 20_240_001;
pub const DEFAULT_SAMPLES: usize = 10_000;
pub const OUT_DIR_ENV: &str = "TWOTIME_OUT_DIR";

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    /// Random states per band for the Figure-1 scan.
    pub samples: usize,
    pub out_dir: PathBuf,
    pub format: Format,
}

impl RunConfig {
    pub fn new(
        seed: u64,
        samples: usize,
        out_dir: impl Into<PathBuf>,
        format: Format,
    ) -> anyhow::Result<Self> {
        anyhow::ensure!(samples >= 1, "samples must be at least 1");
        Ok(Self {
            seed,
            samples,
            out_dir: out_dir.into(),
            format,
        })
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
            out_dir: PathBuf::from("."),
            format: Format::Csv,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound {
    AtMost(f64),
    AtLeast(f64),
}

/// One asserted inequality with its measured value.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub label: String,
    pub measured: f64,
    pub bound: Bound,
}

impl Check {
    pub fn at_most(label: impl Into<String>, measured: f64, limit: f64) -> Self {
        Self {
            label: label.into(),
            measured,
            bound: Bound::AtMost(limit),
        }
    }

    pub fn at_least(label: impl Into<String>, measured: f64, limit: f64) -> Self {
        Self {
            label: label.into(),
            measured,
            bound: Bound::AtLeast(limit),
        }
    }

    /// Distance to the limit, positive when the check passes. NaN fails.
    pub fn slack(&self) -> f64 {
        match self.bound {
            Bound::AtMost(limit) => limit - self.measured,
            Bound::AtLeast(limit) => self.measured - limit,
        }
    }

    pub fn passed(&self) -> bool {
        self.slack() >= 0.0
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (op, limit) = match self.bound {
            Bound::AtMost(l) => ("<=", l),
            Bound::AtLeast(l) => (">=", l),
        };
        write!(
            f,
            "{} {}: {} {op} {} (slack {})",
            if self.passed() { "PASS" } else { "FAIL" },
            self.label,
            fmt_num(self.measured),
            fmt_num(limit),
            fmt_num(self.slack()),
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Line {
    Note(String),
    Check(Check),
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Summary {
    pub lines: Vec<Line>,
    pub written: Vec<PathBuf>,
}

impl Summary {
    pub fn note(&mut self, s: impl Into<String>) {
        self.lines.push(Line::Note(s.into()));
    }

    pub fn check(&mut self, c: Check) {
        self.lines.push(Line::Check(c));
    }

    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        self.lines.iter().filter_map(|l| match l {
            Line::Check(c) => Some(c),
            Line::Note(_) => None,
        })
    }

    pub fn passed(&self) -> bool {
        self.checks().all(Check::passed)
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.lines {
            match line {
                Line::Note(s) => writeln!(f, "{s}")?,
                Line::Check(c) => writeln!(f, "{c}")?,
            }
        }
        for p in &self.written {
            writeln!(f, "wrote {}", p.display())?;
        }
        Ok(())
    }
}
