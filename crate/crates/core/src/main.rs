use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use sundet::report::{run_sweep, Format, IntRange, Mode, SweepConfig};

/// Sweep (n, c, d) grids and check det[(i^2 + cij + dj^2)^(n-2)] = 0 (mod n^2).
///
/// Exit status: 0 when every assertion passed, 1 when an asserted invariant
/// failed, 2 on usage or configuration errors.
#[derive(Debug, Parser)]
#[command(name = "sundet", version)]
struct Cli {
    /// verify | explore | decompose | composite-audit
    #[arg(long, default_value = "verify")]
    mode: Mode,

    /// Range of n, as `a..b` (inclusive) or a single value.
    #[arg(long, allow_hyphen_values = true, default_value = "4")]
    n: IntRange,

    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    c: IntRange,

    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    d: IntRange,

    /// json-lines | csv
    #[arg(long, default_value = "json-lines")]
    format: Format,

    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Number of concurrent evaluations.
    #[arg(long, default_value_t = 1)]
    jobs: usize,

    /// Report wall-clock milliseconds per cell (makes output non-reproducible).
    #[arg(long)]
    timing: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = SweepConfig {
        n_range: cli.n,
        c_range: cli.c,
        d_range: cli.d,
        mode: cli.mode,
        format: cli.format,
        output: cli.out,
        jobs: cli.jobs,
        timing: cli.timing,
    };
    ExitCode::from(run_sweep(&config).exit_code())
}
