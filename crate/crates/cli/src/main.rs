//! `qcong`: batch verification sweeps over the q-binomial congruences.

use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use qcong::sweep::{self, render_report, Format, Suite, Summary, SweepConfig};
use qcong::Error;

#[derive(Debug, Parser)]
#[command(name = "qcong", version, about = "Exact verification sweeps for q-binomial congruences")]
struct Cli {
    /// thm1, thm2, identities, conjecture, faulhaber or all
    #[arg(long, default_value = "all")]
    suite: Suite,

    #[arg(long, default_value_t = 25)]
    n_max: usize,

    #[arg(long, default_value_t = 3)]
    m_max: usize,

    /// Largest a_i in the first theorem's grid; parameter bound for the identities
    #[arg(long, default_value_t = 5)]
    a_max: usize,

    /// Primes for the second theorem, comma separated
    #[arg(long, value_delimiter = ',', default_value = "2,3,5,7,11,13")]
    primes: Vec<usize>,

    /// Seeded random instances per sampled family
    #[arg(long, default_value_t = 100)]
    samples: usize,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Worker threads (defaults to the available parallelism)
    #[arg(long, env = "QCONG_JOBS")]
    jobs: Option<usize>,

    /// text, json or csv
    #[arg(long, default_value = "text")]
    format: Format,

    /// Stop dispatching new instances after the first failure
    #[arg(long)]
    fail_fast: bool,

    /// Zero elapsed_ms so reports can be diffed byte for byte
    #[arg(long)]
    stable_output: bool,
}

impl Cli {
    fn into_config(self) -> SweepConfig {
        let jobs = self
            .jobs
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        SweepConfig {
            suite: self.suite,
            n_max: self.n_max,
            m_max: self.m_max,
            a_max: self.a_max,
            prime_set: self.primes,
            sample_count: self.samples,
            rng_seed: self.seed,
            jobs,
            format: self.format,
            fail_fast: self.fail_fast,
            stable_output: self.stable_output,
        }
    }
}

fn main() -> ExitCode {
    let config = Cli::parse().into_config();
    let outcome = match sweep::run_suite(&config) {
        Ok(outcome) => outcome,
        Err(Error::InvalidParams(msg)) => {
            eprintln!("qcong: {msg}");
            return ExitCode::from(sweep::EXIT_USAGE as u8);
        }
        Err(e) => {
            eprintln!("qcong: THEOREM CHECK ABORTED: {e}");
            return ExitCode::from(sweep::EXIT_THEOREM_FAILURE as u8);
        }
    };

    let rendered = render_report(&outcome.reports, config.format);
    if let Err(e) = writeln!(io::stdout().lock(), "{rendered}") {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("qcong: cannot write report: {e}");
            return ExitCode::from(sweep::EXIT_USAGE as u8);
        }
    }

    for r in outcome.theorem_failures() {
        eprintln!("qcong: THEOREM CHECK FAILED (implementation bug): {} {}", r.claim_id, r.params);
    }
    for r in outcome.counterexamples() {
        eprintln!("qcong: COUNTEREXAMPLE to the open conjecture at {}", r.params);
        if let Some(w) = &r.witness {
            eprintln!("  value:   {}", w.lhs);
            eprintln!("  modulus: {}", w.rhs);
            eprintln!("  residue: {}", w.difference);
        }
    }
    eprintln!("qcong: {}", Summary(&outcome));
    ExitCode::from(outcome.exit_code() as u8)
}
