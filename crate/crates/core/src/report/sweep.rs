use std::fs::File;
use std::io::{self, BufWriter, Write};

use rayon::prelude::*;

use super::record::{audit_header, record_header, serialize_audit, serialize_record, AuditLine};
use super::{Format, Mode, SweepConfig, SweepError};
use crate::error::Result as CoreResult;
use crate::modmath::is_prime;
use crate::sun::{audit_composite, prime_decomposition_check, verify_theorem, SunParams, VerificationRecord};

/// Process-level outcome of a sweep, mapped onto exit codes 0 / 1 / 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepStatus {
    Passed,
    AssertionFailed,
    UsageError,
}

impl SweepStatus {
    pub fn exit_code(self) -> u8 {
        match self {
            SweepStatus::Passed => 0,
            SweepStatus::AssertionFailed => 1,
            SweepStatus::UsageError => 2,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepOutcome {
    /// Data lines written, header excluded.
    pub lines: usize,
    /// One message per failed assertion, in grid order.
    pub failures: Vec<String>,
}

impl SweepOutcome {
    pub fn status(&self) -> SweepStatus {
        if self.failures.is_empty() {
            SweepStatus::Passed
        } else {
            SweepStatus::AssertionFailed
        }
    }
}

/// Runs the sweep and writes to `config.output` (or standard output).
/// Failures are reported on standard error.
pub fn run_sweep(config: &SweepConfig) -> SweepStatus {
    let result = config.validate().and_then(|()| {
        let sink: Box<dyn Write> = match &config.output {
            Some(path) => Box::new(File::create(path)?),
            None => Box::new(io::stdout().lock()),
        };
        let mut out = BufWriter::new(sink);
        let outcome = run_sweep_to(config, &mut out)?;
        out.flush()?;
        Ok(outcome)
    });
    match result {
        Ok(outcome) => {
            for f in &outcome.failures {
                eprintln!("assertion failed: {f}");
            }
            outcome.status()
        }
        Err(e) => {
            eprintln!("error: {e}");
            SweepStatus::UsageError
        }
    }
}

/// Evaluates every cell and writes the sorted report to `out`.
///
/// Records are emitted sorted by `(n, c, d)` whatever the parallelism, and
/// all records are written before the outcome is returned.
pub fn run_sweep_to<W: Write>(config: &SweepConfig, out: &mut W) -> Result<SweepOutcome, SweepError> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| SweepError::Config(format!("cannot start worker pool: {e}")))?;

    match config.mode {
        Mode::CompositeAudit => audit_sweep(config, &pool, out),
        _ => record_sweep(config, &pool, out),
    }
}

fn grid(config: &SweepConfig, primes_only: bool) -> Vec<SunParams> {
    let mut cells = Vec::new();
    for n in config.n_range.iter() {
        if primes_only && !is_prime(n as u64) {
            continue;
        }
        for c in config.c_range.iter() {
            for d in config.d_range.iter() {
                cells.push(SunParams::new(n as u32, c, d).expect("validated n range"));
            }
        }
    }
    cells
}

fn cell_name(p: &SunParams) -> String {
    format!("(n, c, d) = ({}, {}, {})", p.n(), p.c(), p.d())
}

fn evaluate(params: &SunParams, mode: Mode, timing: bool) -> CoreResult<(VerificationRecord, Vec<String>)> {
    let mut rec = verify_theorem(params)?;
    let mut failures = Vec::new();
    match mode {
        Mode::Verify => {
            if rec.violates_theorem() {
                failures.push(format!(
                    "{}: hypothesis met but D_n mod n^2 = {}",
                    cell_name(params),
                    rec.d_mod_n2
                ));
            }
        }
        Mode::Explore => {}
        Mode::Decompose => {
            let p = u64::from(params.n());
            let dec = prime_decomposition_check(p, params.c(), params.d())?;
            rec.decomposition_rank = Some(dec.rank_m);
            if dec.rank_m != dec.rank_c {
                failures.push(format!(
                    "{}: rank M = {} but rank C = {}",
                    cell_name(params),
                    dec.rank_m,
                    dec.rank_c
                ));
            }
            if rec.hypothesis_met && dec.rank_m > p as usize - 2 {
                failures.push(format!("{}: rank M = {} exceeds p - 2", cell_name(params), dec.rank_m));
            }
            if rec.violates_theorem() {
                failures.push(format!(
                    "{}: hypothesis met but D_p mod p^2 = {}",
                    cell_name(params),
                    rec.d_mod_n2
                ));
            }
        }
        Mode::CompositeAudit => unreachable!("handled by audit_sweep"),
    }
    if !timing {
        rec.elapsed_ms = None;
    }
    Ok((rec, failures))
}

fn record_sweep<W: Write>(
    config: &SweepConfig,
    pool: &rayon::ThreadPool,
    out: &mut W,
) -> Result<SweepOutcome, SweepError> {
    let cells = grid(config, config.mode == Mode::Decompose);
    let results: Vec<_> = pool.install(|| {
        cells
            .par_iter()
            .map(|params| evaluate(params, config.mode, config.timing))
            .collect()
    });

    let mut outcome = SweepOutcome::default();
    if config.format == Format::Csv {
        writeln!(out, "{}", record_header())?;
    }
    for (params, result) in cells.iter().zip(results) {
        match result {
            Ok((rec, failures)) => {
                writeln!(out, "{}", serialize_record(&rec, config.format))?;
                outcome.lines += 1;
                outcome.failures.extend(failures);
            }
            Err(e) => outcome.failures.push(format!("{}: {e}", cell_name(params))),
        }
    }
    Ok(outcome)
}

fn audit_sweep<W: Write>(
    config: &SweepConfig,
    pool: &rayon::ThreadPool,
    out: &mut W,
) -> Result<SweepOutcome, SweepError> {
    let ns: Vec<u64> = config
        .n_range
        .iter()
        .map(|n| n as u64)
        .filter(|&n| !is_prime(n))
        .collect();
    let audits: Vec<_> = pool.install(|| ns.par_iter().map(|&n| audit_composite(n)).collect());

    let mut outcome = SweepOutcome::default();
    if config.format == Format::Csv {
        writeln!(out, "{}", audit_header())?;
    }
    for (n, audit) in ns.iter().zip(audits) {
        match audit {
            Ok(audit) => {
                for f in &audit.factors {
                    let line = AuditLine::new(*n, f);
                    writeln!(out, "{}", serialize_audit(&line, config.format))?;
                    outcome.lines += 1;
                    if !line.holds {
                        outcome.failures.push(format!(
                            "n = {n}, p = {}: nu_p(V_n) = {} below max(alpha = {}, n - p = {})",
                            f.p, f.valuation, f.alpha, f.bound
                        ));
                    }
                }
            }
            Err(e) => outcome.failures.push(format!("n = {n}: {e}")),
        }
    }
    Ok(outcome)
}
