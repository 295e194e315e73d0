//! Batch verification: enumerate parameter grids and seeded samples, run the
//! checkers on a worker pool, and aggregate the reports in a fixed order.
//!
//! Sampling uses ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64(seed)`, with one fixed stream number per sampler, so a given
//! seed always yields the same instance set independent of the job count.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bigint_poly::BigRat;
use crate::congruence::{CongruenceReport, Params, Status, Witness};
use crate::faulhaber::{self, ConjectureInstance};
use crate::int_arith::is_prime;
use crate::q_objects::{q_binomial, q_binomial_oracle};
use crate::theorems::{self, PfaffPoint, ThmParams, Verifier};
use crate::Error;

pub const QBINOMIAL_ORACLE: &str = "qbinomial_oracle";

/// Bounds for the seeded samples added to the first theorem's grid.
pub const THM1_SAMPLE_BOUNDS: SampleBounds = SampleBounds { n_max: 40, m_max: 5, a_max: 8 };
/// Bounds for the seeded samples comparing the two routes to `S_n`.
pub const RECURRENCE_SAMPLE_BOUNDS: SampleBounds = SampleBounds { n_max: 20, m_max: 4, a_max: 6 };
/// Largest `n` in sampled q-Pfaff-Saalschütz specializations.
pub const PFAFF_N_MAX: usize = 8;

const STREAM_THM1: u64 = 1;
const STREAM_RECURRENCE: u64 = 2;
const STREAM_PFAFF: u64 = 3;

pub const EXIT_OK: i32 = 0;
pub const EXIT_THEOREM_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_COUNTEREXAMPLE: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleBounds {
    pub n_max: usize,
    pub m_max: usize,
    pub a_max: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Thm1,
    Thm2,
    Identities,
    Conjecture,
    Faulhaber,
    All,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "thm1" => Suite::Thm1,
            "thm2" => Suite::Thm2,
            "identities" => Suite::Identities,
            "conjecture" => Suite::Conjecture,
            "faulhaber" => Suite::Faulhaber,
            "all" => Suite::All,
            other => return Err(format!("unknown suite `{other}`")),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "text" => Format::Text,
            "json" => Format::Json,
            "csv" => Format::Csv,
            other => return Err(format!("unknown format `{other}`")),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub suite: Suite,
    pub n_max: usize,
    pub m_max: usize,
    pub a_max: usize,
    pub prime_set: Vec<usize>,
    pub sample_count: usize,
    pub rng_seed: u64,
    pub jobs: usize,
    pub format: Format,
    pub fail_fast: bool,
    pub stable_output: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            suite: Suite::All,
            n_max: 25,
            m_max: 3,
            a_max: 5,
            prime_set: vec![2, 3, 5, 7, 11, 13],
            sample_count: 100,
            rng_seed: 0,
            jobs: 1,
            format: Format::Text,
            fail_fast: false,
            stable_output: false,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if self.n_max == 0 || self.m_max == 0 {
            return Err(Error::InvalidParams("n-max and m-max must be positive".into()));
        }
        if self.jobs == 0 {
            return Err(Error::InvalidParams("jobs must be positive".into()));
        }
        if let Some(bad) = self.prime_set.iter().find(|&&p| !is_prime(p as u64)) {
            return Err(Error::InvalidParams(format!("{bad} in prime set is not prime")));
        }
        Ok(())
    }
}

/// One unit of work for the pool.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Instance {
    /// Polynomial divisibility plus its `q = 1` integer counterpart.
    Thm1(ThmParams),
    Recurrence(ThmParams),
    Thm2 { p: usize, a: usize, b: usize },
    PMinusOne { p: usize, j: usize },
    SumLemma { n: usize, a: usize },
    ChuVandermonde { a: usize, b: usize, n: usize },
    New3 { a: usize, b: usize },
    FinalIdentity { a: usize, b: usize },
    QBinomialOracle { n: usize, k: usize },
    Pfaff { x: (i64, i64), y: (i64, i64), z: (i64, i64), q: (i64, i64), n: usize },
    Faulhaber { n: u64, m: u64 },
    Conjecture(ConjectureInstance),
}

impl Instance {
    pub fn run(&self, verifier: &Verifier) -> Result<Vec<CongruenceReport>, Error> {
        let one = |r: Result<CongruenceReport, Error>| r.map(|r| vec![r]);
        match self {
            Instance::Thm1(t) => {
                let (poly, int) = verifier.check_thm1_with_q1(t.n, &t.a_list)?;
                Ok(vec![poly, int])
            }
            Instance::Recurrence(t) => one(verifier.check_recurrence(t.n, &t.a_list)),
            Instance::Thm2 { p, a, b } => one(verifier.check_thm2(*p, *a, *b)),
            Instance::PMinusOne { p, j } => one(verifier.check_p_minus_one_lemma(*p, *j)),
            Instance::SumLemma { n, a } => one(verifier.check_sum_lemma(*n, *a)),
            Instance::ChuVandermonde { a, b, n } => one(verifier.check_chu_vandermonde(*a, *b, *n)),
            Instance::New3 { a, b } => one(verifier.check_identity_new3(*a, *b)),
            Instance::FinalIdentity { a, b } => one(verifier.check_final_identity(*a, *b)),
            Instance::QBinomialOracle { n, k } => one(check_qbinomial_oracle(*n, *k)),
            Instance::Pfaff { x, y, z, q, n } => {
                let r = |(a, b): (i64, i64)| BigRat::new_i64(a, b);
                let pt = PfaffPoint::new(r(*x), r(*y), r(*z), r(*q), *n);
                one(theorems::check_pfaff_saalschutz(&pt))
            }
            Instance::Faulhaber { n, m } => one(faulhaber::check_faulhaber_cong(*n, *m)),
            Instance::Conjecture(inst) => one(faulhaber::check_conjecture(*inst)),
        }
    }
}

/// Product formula against the q-Pascal recurrence.
pub fn check_qbinomial_oracle(n: usize, k: usize) -> Result<CongruenceReport, Error> {
    let product = q_binomial(n as i64, k as i64)?;
    let oracle = q_binomial_oracle(n as i64, k as i64);
    let params = Params::new().with("n", n as i64).with("k", k as i64);
    Ok(CongruenceReport::from_outcome(QBINOMIAL_ORACLE, params, product == oracle, || {
        Witness::new(&product, &oracle, &product - &oracle)
    }))
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// `count` parameter sets with `1 <= n <= n_max`, `1 <= m <= m_max` and
/// entries in `0..=a_max`, drawn in that order from the given stream.
fn sample_thm_params(seed: u64, stream: u64, count: usize, bounds: SampleBounds) -> Vec<ThmParams> {
    let mut rng = rng_for(seed, stream);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=bounds.n_max);
            let m = rng.gen_range(1..=bounds.m_max);
            let a_list = (0..m).map(|_| rng.gen_range(0..=bounds.a_max)).collect();
            ThmParams { n, a_list }
        })
        .collect()
}

/// Seeded samples for the first theorem.
pub fn sample_thm1(seed: u64, count: usize) -> Vec<ThmParams> {
    sample_thm_params(seed, STREAM_THM1, count, THM1_SAMPLE_BOUNDS)
}

/// Seeded samples for the recurrence comparison.
pub fn sample_recurrence(seed: u64, count: usize) -> Vec<ThmParams> {
    sample_thm_params(seed, STREAM_RECURRENCE, count, RECURRENCE_SAMPLE_BOUNDS)
}

/// Seeded rational specializations `(x, y, z, q, n)` as `(num, den)` pairs.
///
/// `x`, `y`, `z` have numerators in `[-12, 12] \ {0}` and denominators in
/// `[1, 9]`; `q` is redrawn until it avoids `{0, 1, -1}`; `n` is in
/// `[0, PFAFF_N_MAX]`. Points where a denominator vanishes are left in and
/// show up as skipped reports.
pub fn sample_pfaff(seed: u64, count: usize) -> Vec<Instance> {
    let mut rng = rng_for(seed, STREAM_PFAFF);
    let rational = |rng: &mut ChaCha8Rng| loop {
        let num = rng.gen_range(-12i64..=12);
        let den = rng.gen_range(1i64..=9);
        if num != 0 {
            return (num, den);
        }
    };
    (0..count)
        .map(|_| {
            let x = rational(&mut rng);
            let y = rational(&mut rng);
            let z = rational(&mut rng);
            let q = loop {
                let q = rational(&mut rng);
                if q.0.abs() != q.1 {
                    break q;
                }
            };
            let n = rng.gen_range(0..=PFAFF_N_MAX);
            Instance::Pfaff { x, y, z, q, n }
        })
        .collect()
}

/// Every ordered tuple of length `m` over `0..=a_max`.
fn tuples(m: usize, a_max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..=a_max).map(move |a| {
                    let mut next = t.clone();
                    next.push(a);
                    next
                })
            })
            .collect();
    }
    out
}

/// Exhaustive grid `1 <= n <= n_max`, `1 <= m <= m_max`, entries in `0..=a_max`.
pub fn thm1_grid(n_max: usize, m_max: usize, a_max: usize) -> Vec<ThmParams> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for m in 1..=m_max {
            for a_list in tuples(m, a_max) {
                out.push(ThmParams { n, a_list });
            }
        }
    }
    out
}

pub fn thm1_instances(cfg: &SweepConfig) -> Vec<Instance> {
    let mut set: BTreeSet<ThmParams> = thm1_grid(cfg.n_max, cfg.m_max, cfg.a_max).into_iter().collect();
    set.extend(sample_thm1(cfg.rng_seed, cfg.sample_count));
    set.into_iter().map(Instance::Thm1).collect()
}

pub fn thm2_instances(cfg: &SweepConfig) -> Vec<Instance> {
    let mut out = Vec::new();
    for &p in &cfg.prime_set {
        for a in 0..p {
            for b in 0..p {
                out.push(Instance::Thm2 { p, a, b });
            }
        }
        for j in 0..p {
            out.push(Instance::PMinusOne { p, j });
        }
    }
    out
}

/// The summation identities with every parameter in `0..=a_max`, the
/// q-binomial oracle for `n <= n_max`, and seeded samples of the recurrence
/// comparison and of q-Pfaff-Saalschütz.
pub fn identity_instances(cfg: &SweepConfig) -> Vec<Instance> {
    let bound = cfg.a_max;
    let mut out = Vec::new();
    for a in 0..=bound {
        for n in 1..=bound.max(1) {
            out.push(Instance::SumLemma { n, a });
        }
        for b in 0..=bound {
            for n in 0..=bound {
                out.push(Instance::ChuVandermonde { a, b, n });
            }
            out.push(Instance::New3 { a, b });
            out.push(Instance::FinalIdentity { a, b });
        }
    }
    for n in 0..=cfg.n_max {
        for k in 0..=n {
            out.push(Instance::QBinomialOracle { n, k });
        }
    }
    let recurrence: BTreeSet<ThmParams> = sample_recurrence(cfg.rng_seed, cfg.sample_count).into_iter().collect();
    out.extend(recurrence.into_iter().map(Instance::Recurrence));
    out.extend(sample_pfaff(cfg.rng_seed, cfg.sample_count));
    out
}

pub fn faulhaber_instances(cfg: &SweepConfig) -> Vec<Instance> {
    let mut out = Vec::new();
    for m in 1..=cfg.m_max as u64 {
        for n in 1..=cfg.n_max as u64 {
            out.push(Instance::Faulhaber { n, m });
        }
    }
    out
}

pub fn conjecture_instances(cfg: &SweepConfig) -> Vec<Instance> {
    let mut out = Vec::new();
    for m in 1..=cfg.m_max as u64 {
        for k in 1..=m {
            for n in 1..=cfg.n_max as u64 {
                out.push(Instance::Conjecture(ConjectureInstance { n, m, k }));
            }
        }
    }
    out
}

pub fn instances(cfg: &SweepConfig) -> Vec<Instance> {
    match cfg.suite {
        Suite::Thm1 => thm1_instances(cfg),
        Suite::Thm2 => thm2_instances(cfg),
        Suite::Identities => identity_instances(cfg),
        Suite::Faulhaber => faulhaber_instances(cfg),
        Suite::Conjecture => conjecture_instances(cfg),
        Suite::All => [
            thm1_instances(cfg),
            thm2_instances(cfg),
            identity_instances(cfg),
            faulhaber_instances(cfg),
            conjecture_instances(cfg),
        ]
        .concat(),
    }
}

/// Sorted reports of one sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepOutcome {
    pub reports: Vec<CongruenceReport>,
}

impl SweepOutcome {
    pub fn count(&self, status: Status) -> usize {
        self.reports.iter().filter(|r| r.status == status).count()
    }

    pub fn theorem_failures(&self) -> impl Iterator<Item = &CongruenceReport> {
        self.reports
            .iter()
            .filter(|r| r.status == Status::Fail && r.claim_id != faulhaber::claims::CONJECTURE)
    }

    pub fn counterexamples(&self) -> impl Iterator<Item = &CongruenceReport> {
        self.reports
            .iter()
            .filter(|r| r.status == Status::Fail && r.claim_id == faulhaber::claims::CONJECTURE)
    }

    /// A theorem failure outranks a conjecture counterexample.
    pub fn exit_code(&self) -> i32 {
        if self.theorem_failures().next().is_some() {
            EXIT_THEOREM_FAILURE
        } else if self.counterexamples().next().is_some() {
            EXIT_COUNTEREXAMPLE
        } else {
            EXIT_OK
        }
    }
}

/// Runs every instance of the configured suite on `cfg.jobs` workers.
///
/// With `fail_fast`, instances not yet started when a failure is observed are
/// dropped, so the report set then depends on scheduling.
pub fn run_suite(cfg: &SweepConfig) -> Result<SweepOutcome, Error> {
    cfg.validate()?;
    let work = instances(cfg);
    let verifier = Verifier::new();
    let stop = AtomicBool::new(false);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::InvalidParams(format!("cannot start {} workers: {e}", cfg.jobs)))?;
    let batches: Vec<Vec<CongruenceReport>> = pool.install(|| {
        work.par_iter()
            .map(|inst| {
                if cfg.fail_fast && stop.load(Ordering::Relaxed) {
                    return Ok(Vec::new());
                }
                let reports = inst.run(&verifier)?;
                if reports.iter().any(|r| r.status == Status::Fail) {
                    stop.store(true, Ordering::Relaxed);
                }
                Ok(reports)
            })
            .collect::<Result<_, Error>>()
    })?;
    let mut reports: Vec<CongruenceReport> = batches.into_iter().flatten().collect();
    if cfg.stable_output {
        for r in &mut reports {
            r.elapsed_ms = 0;
        }
    }
    reports.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(SweepOutcome { reports })
}

/// Renders sorted reports; no trailing newline.
pub fn render_report(reports: &[CongruenceReport], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(reports).expect("reports serialize"),
        Format::Csv => {
            let mut out = String::from("claim_id,params,status,elapsed_ms");
            for r in reports {
                out.push_str(&format!("\n{},{},{},{}", r.claim_id, r.params, r.status, r.elapsed_ms));
            }
            out
        }
        Format::Text => render_text(reports),
    }
}

fn render_text(reports: &[CongruenceReport]) -> String {
    let headers = ["claim", "params", "status", "ms", "note"];
    let rows: Vec<[String; 5]> = reports
        .iter()
        .map(|r| {
            [
                r.claim_id.clone(),
                r.params.to_string(),
                r.status.to_string(),
                r.elapsed_ms.to_string(),
                r.note.clone().unwrap_or_default(),
            ]
        })
        .collect();
    let mut widths = headers.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: [&str; 5]| {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(widths).enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            if i == 3 {
                s.push_str(&format!("{cell:>w$}"));
            } else {
                s.push_str(&format!("{cell:<w$}"));
            }
        }
        s.trim_end().to_string()
    };
    let mut lines = vec![line(headers)];
    for (row, r) in rows.iter().zip(reports) {
        lines.push(line([&row[0], &row[1], &row[2], &row[3], &row[4]]));
        if let Some(w) = &r.witness {
            lines.push(format!("    lhs:        {}", w.lhs));
            lines.push(format!("    rhs:        {}", w.rhs));
            lines.push(format!("    difference: {}", w.difference));
        }
    }
    lines.join("\n")
}

/// One-line tally, with the skip rate when anything was skipped.
pub struct Summary<'a>(pub &'a SweepOutcome);

impl fmt::Display for Summary<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let o = self.0;
        let total = o.reports.len();
        let skipped = o.count(Status::Skipped);
        write!(
            f,
            "{total} checks: {} pass, {} fail, {skipped} skipped",
            o.count(Status::Pass),
            o.count(Status::Fail)
        )?;
        if skipped > 0 {
            write!(f, " (skip rate {:.1}%)", 100.0 * skipped as f64 / total as f64)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(suite: Suite) -> SweepConfig {
        SweepConfig {
            suite,
            stable_output: true,
            ..SweepConfig::default()
        }
    }

    #[test]
    fn trivial_thm1_sweep() {
        let c = SweepConfig {
            n_max: 1,
            m_max: 1,
            a_max: 0,
            sample_count: 0,
            ..cfg(Suite::Thm1)
        };
        let out = run_suite(&c).unwrap();
        let thm1: Vec<_> = out.reports.iter().filter(|r| r.claim_id == "thm1").collect();
        assert_eq!(thm1.len(), 1);
        assert!(thm1[0].is_pass());
        assert_eq!(thm1[0].params.to_string(), "n=1;a1=0");
        assert_eq!(out.exit_code(), EXIT_OK);
    }

    #[test]
    fn thm2_sweep_rows() {
        let out = run_suite(&cfg(Suite::Thm2)).unwrap();
        let rows = out.reports.iter().filter(|r| r.claim_id == "thm2").count();
        assert_eq!(rows, [2, 3, 5, 7, 11, 13].iter().map(|p| p * p).sum::<usize>());
        assert_eq!(out.exit_code(), EXIT_OK);
    }

    #[test]
    fn rejects_composite_primes() {
        let c = SweepConfig {
            prime_set: vec![2, 9],
            ..cfg(Suite::Thm2)
        };
        assert!(matches!(run_suite(&c), Err(Error::InvalidParams(_))));
        assert!(SweepConfig { jobs: 0, ..cfg(Suite::Thm1) }.validate().is_err());
    }

    #[test]
    fn seeded_samples_reproduce() {
        assert_eq!(sample_thm1(42, 50), sample_thm1(42, 50));
        assert_ne!(sample_thm1(42, 50), sample_thm1(43, 50));
        assert_eq!(sample_pfaff(7, 20), sample_pfaff(7, 20));
        for t in sample_thm1(3, 200) {
            assert!((1..=40).contains(&t.n));
            assert!((1..=5).contains(&t.a_list.len()));
            assert!(t.a_list.iter().all(|&a| a <= 8));
        }
    }

    #[test]
    fn render_examples() {
        assert_eq!(render_report(&[], Format::Json), "[]");
        let pass = CongruenceReport::pass("thm1", Params::new().with("n", 3).with("a1", 1));
        assert_eq!(
            render_report(std::slice::from_ref(&pass), Format::Csv),
            "claim_id,params,status,elapsed_ms\nthm1,n=3;a1=1,pass,0"
        );
        let fail = CongruenceReport::fail("thm1", Params::new(), Witness::new("q", "0", "q"));
        let json = render_report(std::slice::from_ref(&fail), Format::Json);
        assert!(json.contains("\"difference\": \"q\""));
        let csv = render_report(std::slice::from_ref(&fail), Format::Csv);
        assert!(!csv.contains("difference"));
        let text = render_report(&[pass, fail], Format::Text);
        assert!(text.starts_with("claim"));
        assert!(text.contains("difference: q"));
    }

    #[test]
    fn exit_codes_follow_failure_kind() {
        let fail = |claim: &str| CongruenceReport::fail(claim, Params::new(), Witness::new("1", "0", "1"));
        let ok = SweepOutcome { reports: vec![CongruenceReport::pass("thm1", Params::new())] };
        assert_eq!(ok.exit_code(), EXIT_OK);
        let conj = SweepOutcome { reports: vec![fail("conjecture")] };
        assert_eq!(conj.exit_code(), EXIT_COUNTEREXAMPLE);
        let thm = SweepOutcome { reports: vec![fail("conjecture"), fail("thm2")] };
        assert_eq!(thm.exit_code(), EXIT_THEOREM_FAILURE);
    }

    #[test]
    fn grid_sizes() {
        assert_eq!(tuples(3, 5).len(), 216);
        assert_eq!(thm1_grid(25, 3, 5).len(), 25 * (6 + 36 + 216));
        assert_eq!(tuples(0, 4), vec![Vec::<usize>::new()]);
    }
}
