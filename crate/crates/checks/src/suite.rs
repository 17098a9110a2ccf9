//! Check registry and the parallel suite runner.

use std::time::Instant;

use rayon::prelude::*;

use crate::checks::{boost, ccr, cyclicity, descent, grading, positivity, relativistic, smeared, CheckFn};
use crate::config::SuiteConfig;
use crate::error::CheckError;
use crate::result::{CheckReport, CheckResult, Status};

pub const THREADS_ENV: &str = "BARGMANN_LAB_THREADS";

pub struct CheckSpec {
    pub name: &'static str,
    pub summary: &'static str,
    pub run: CheckFn,
}

/// Every check, sorted by name.
pub const CHECKS: &[CheckSpec] = &[
    CheckSpec { name: "boost_identity", summary: "boost conjugation of H: exact Hadamard series and truncated oscillator", run: boost::check_boost_identity },
    CheckSpec { name: "boost_positivity", summary: "sign of E0 - v.p0 + (M/2)|v|^2 for positive, zero and negative mass", run: positivity::check_boost_positivity },
    CheckSpec { name: "ccr_exactness", summary: "[psi(g1), psi_dag(g2)] = <g1, g2> on the guarded subspace", run: ccr::check_ccr_exactness },
    CheckSpec { name: "cyclicity_defect", summary: "local words on the vacuum span C(|G|+n_max, n_max) dimensions", run: cyclicity::check_cyclicity_defect },
    CheckSpec { name: "descent", summary: "creation-on-power identities, descent certificates and their Fock echo", run: descent::check_descent },
    CheckSpec { name: "high_power", summary: "(K+1)-fold annihilation of the shifted reference vector vanishes", run: grading::check_high_power },
    CheckSpec { name: "mass_lattice", summary: "field words carry definite charge; mass spectrum is m0 * {0..n_max}", run: grading::check_mass_lattice },
    CheckSpec { name: "relativistic_evasion", summary: "complex structure leaks out of the region; one-mode field reconstruction", run: relativistic::check_relativistic_evasion },
    CheckSpec { name: "separating_failure", summary: "nonzero local operators that annihilate the vacuum, on every window", run: smeared::check_separating_failure },
    CheckSpec { name: "time_zero_identity", summary: "time-smeared field equals the time-zero field of the transformed test function", run: smeared::check_time_zero_identity },
    CheckSpec { name: "vacuum_annihilation", summary: "time-zero and time-smeared annihilators kill the vacuum", run: smeared::check_vacuum_annihilation },
];

pub fn check_names() -> Vec<String> {
    CHECKS.iter().map(|c| c.name.to_string()).collect()
}

fn lookup(name: &str) -> Result<&'static CheckSpec, CheckError> {
    CHECKS.iter().find(|c| c.name == name).ok_or_else(|| CheckError::UnknownCheck { name: name.to_string(), valid: check_names() })
}

/// Checks selected by the config's include/exclude lists, sorted by name.
pub fn selected_checks(cfg: &SuiteConfig) -> Result<Vec<&'static CheckSpec>, CheckError> {
    for name in cfg.checks.include.iter().chain(&cfg.checks.exclude) {
        lookup(name)?;
    }
    Ok(CHECKS
        .iter()
        .filter(|c| cfg.checks.include.is_empty() || cfg.checks.include.iter().any(|n| n == c.name))
        .filter(|c| !cfg.checks.exclude.iter().any(|n| n == c.name))
        .collect())
}

pub fn run_check(spec: &CheckSpec, cfg: &SuiteConfig) -> CheckResult {
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| (spec.run)(cfg)))
        .unwrap_or_else(|payload| Err(CheckError::Panicked(panic_message(payload.as_ref()))));
    let duration_s = start.elapsed().as_secs_f64();
    match outcome {
        Ok(o) => {
            let (status, notes) = if let Some(reason) = o.skipped {
                (Status::Skipped, vec![reason])
            } else if o.rec.failures.is_empty() {
                (Status::Pass, Vec::new())
            } else {
                (Status::Fail, o.rec.failures)
            };
            CheckResult { name: spec.name.into(), status, metrics: o.rec.metrics, tolerance: o.tolerance, witness: o.witness, notes, duration_s }
        }
        Err(e) => CheckResult {
            name: spec.name.into(),
            status: Status::Fail,
            metrics: Default::default(),
            tolerance: 0.0,
            witness: None,
            notes: vec![e.to_string()],
            duration_s,
        },
    }
}

fn panic_message(payload: &(dyn std::any::Any + Send)) -> String {
    payload.downcast_ref::<&str>().map(|s| s.to_string()).or_else(|| payload.downcast_ref::<String>().cloned()).unwrap_or_else(|| "unknown panic".into())
}

/// Thread cap from the environment, if set.
pub fn threads_from_env() -> Result<Option<usize>, CheckError> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CheckError::Config(format!("{THREADS_ENV} must be a positive integer, got `{v}`"))),
        },
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(CheckError::Config(format!("{THREADS_ENV}: {e}"))),
    }
}

/// Runs the selected checks concurrently. Results are independent of the thread count.
pub fn run_suite_with_threads(cfg: &SuiteConfig, threads: Option<usize>) -> Result<CheckReport, CheckError> {
    cfg.validate()?;
    let selected = selected_checks(cfg)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| CheckError::Config(format!("thread pool: {e}")))?;
    let results: Vec<CheckResult> = pool.install(|| selected.par_iter().map(|spec| run_check(spec, cfg)).collect());
    Ok(CheckReport::new(cfg.clone(), results))
}

/// [`run_suite_with_threads`] with the cap taken from the environment.
pub fn run_suite(cfg: &SuiteConfig) -> Result<CheckReport, CheckError> {
    run_suite_with_threads(cfg, threads_from_env()?)
}
