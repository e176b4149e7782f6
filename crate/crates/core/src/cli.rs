//! `feige` command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure (or an inconclusive
//! certificate), 2 usage error.

use std::ffi::OsString;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::error::Error;
use crate::exact::{to_f64, Rational};
use crate::mc::{parse_instance_spec, simulate, McConfig, DEFAULT_TRIALS};
use crate::minimizer::{global_min_with_terms, DEFAULT_E_TERMS, MAX_E_TERMS};
use crate::report::{describe, serialize_bundle, sweep, sweep_minimum, write_sweep_csv};
use crate::tail::{exact_heterogeneous, HeterogeneousInstance, ENUMERATION_CAP};
use crate::verify::run_battery;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "feige", version, about = "Exact checks of P(S_n < n+1) >= 1/e for two-point variables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate f(p) on a grid plus all breakpoints and write CSV.
    Sweep {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        points: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Minimize f over (0, 1) and certify the minimum against 1/e.
    Minimize {
        #[arg(long)]
        n: u32,
        #[arg(long = "e-terms", default_value_t = DEFAULT_E_TERMS)]
        e_terms: u32,
    },
    /// Run the full verification battery and write a JSON report.
    Verify {
        #[arg(long = "n-max")]
        n_max: u32,
        #[arg(long)]
        out: PathBuf,
        /// Corrupt one comparison to prove failures are detected.
        #[arg(long = "self-test-fault")]
        self_test_fault: bool,
    },
    /// Monte Carlo estimate for an instance file.
    Simulate {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Exact probability for an instance file by enumeration.
    Oracle {
        #[arg(long)]
        spec: PathBuf,
    },
}

struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

type CmdResult = Result<u8, Usage>;

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let result = match cli.command {
        Command::Sweep { n, points, out: path } => cmd_sweep(n, points, &path, out),
        Command::Minimize { n, e_terms } => cmd_minimize(n, e_terms, out, err),
        Command::Verify {
            n_max,
            out: path,
            self_test_fault,
        } => cmd_verify(n_max, &path, self_test_fault, out, err),
        Command::Simulate {
            spec,
            trials,
            seed,
            workers,
        } => cmd_simulate(&spec, trials, seed, workers, out),
        Command::Oracle { spec } => cmd_oracle(&spec, out),
    };
    match result {
        Ok(code) => code,
        Err(Usage(message)) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_USAGE
        }
    }
}

fn write_file(path: &Path, contents: impl FnOnce(&mut dyn Write) -> std::io::Result<()>) -> Result<(), Usage> {
    let file = fs::File::create(path).map_err(|e| Usage(format!("cannot write {}: {e}", path.display())))?;
    let mut writer = BufWriter::new(file);
    contents(&mut writer)
        .and_then(|_| writer.flush())
        .map_err(|e| Usage(format!("cannot write {}: {e}", path.display())))
}

fn cmd_sweep(n: u32, points: u32, path: &Path, out: &mut dyn Write) -> CmdResult {
    let records = sweep(n, points)?;
    write_file(path, |w| write_sweep_csv(&records, w))?;
    let min = sweep_minimum(&records).expect("sweep is non-empty");
    let _ = writeln!(
        out,
        "n={n} records={} min at p={} value={}",
        records.len(),
        describe(&min.p),
        describe(&min.f_value)
    );
    Ok(EXIT_OK)
}

fn cmd_minimize(n: u32, e_terms: u32, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    if n == 0 {
        return Err(Error::EmptyN.into());
    }
    if e_terms < 2 {
        return Err(Error::TooFewTerms(e_terms).into());
    }
    let result = global_min_with_terms(n, e_terms);
    let _ = writeln!(out, "n={n}");
    let _ = writeln!(out, "argmin p = {}", describe(&result.argmin_p));
    let _ = writeln!(out, "min f = {}", describe(&result.min_value));
    let _ = writeln!(
        out,
        "certified above 1/e: {} (e terms: {})",
        result.certified_above_1_over_e, result.e_terms_used
    );
    if result.certified_above_1_over_e {
        Ok(EXIT_OK)
    } else {
        let _ = writeln!(
            err,
            "certificate inconclusive after doubling to {MAX_E_TERMS} terms; raise --e-terms"
        );
        Ok(EXIT_FAILED)
    }
}

fn cmd_verify(n_max: u32, path: &Path, fault: bool, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    if n_max < 2 {
        return Err(Usage(format!("--n-max must be at least 2, got {n_max}")));
    }
    let bundle = run_battery(n_max, fault);
    write_file(path, |w| writeln!(w, "{}", serialize_bundle(&bundle)))?;
    for r in &bundle.reports {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(
            out,
            "{status} {:<28} checks={:<7} failures={}",
            r.suite,
            r.checks_run,
            r.failures.len()
        );
    }
    let failures = bundle.failure_count();
    let _ = writeln!(out, "total checks={} failures={failures}", bundle.checks_run());
    if failures == 0 {
        return Ok(EXIT_OK);
    }
    for r in &bundle.reports {
        for w in &r.failures {
            let _ = writeln!(
                err,
                "failure in {}: {:?} n={:?} m={:?} point={} lhs={} {:?} rhs={}",
                r.suite,
                w.lemma_id,
                w.n,
                w.m,
                w.point.as_ref().map_or_else(|| "-".to_string(), |p| p.to_string()),
                w.lhs,
                w.relation,
                w.rhs
            );
        }
    }
    Ok(EXIT_FAILED)
}

fn read_instance(path: &Path) -> Result<HeterogeneousInstance, Usage> {
    let text = fs::read_to_string(path).map_err(|e| Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_instance_spec(&text)?)
}

fn cmd_simulate(spec: &Path, trials: u64, seed: u64, workers: usize, out: &mut dyn Write) -> CmdResult {
    let inst = read_instance(spec)?;
    let estimate = simulate(&inst, &McConfig { trials, seed, workers })?;
    let _ = writeln!(out, "n={} trials={} seed={}", inst.len(), estimate.trials, estimate.seed);
    let _ = writeln!(
        out,
        "p_hat = {} std_error = {} ci95 = [{}, {}]",
        estimate.p_hat, estimate.std_error, estimate.ci95_low, estimate.ci95_high
    );
    if inst.len() <= ENUMERATION_CAP {
        let exact = exact_heterogeneous(&inst)?;
        let _ = writeln!(out, "exact = {}", describe(&exact));
        let _ = writeln!(out, "z = {:.4}", estimate.z_score(to_f64(&exact)));
    }
    Ok(EXIT_OK)
}

fn cmd_oracle(spec: &Path, out: &mut dyn Write) -> CmdResult {
    let inst = read_instance(spec)?;
    let exact: Rational = exact_heterogeneous(&inst)?;
    let _ = writeln!(out, "{} ({})", exact, to_f64(&exact));
    Ok(EXIT_OK)
}
