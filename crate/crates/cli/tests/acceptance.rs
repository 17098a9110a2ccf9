//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::Command;

use bargmann_checks::{run_suite_with_threads, CheckReport, CheckResult, Status, SuiteConfig};
use bargmann_symbolic::{descent_certificate, power_commutator_check};

struct Criterion {
    failures: Vec<String>,
    facts: Vec<String>,
}

impl Criterion {
    fn new() -> Self {
        Self { failures: Vec::new(), facts: Vec::new() }
    }

    fn at_most(&mut self, what: &str, value: f64, bound: f64) {
        self.facts.push(format!("{what} {value:.3e} <= {bound:.0e}"));
        if !(value <= bound) {
            self.failures.push(format!("{what} = {value:e} exceeds {bound:e}"));
        }
    }

    fn above(&mut self, what: &str, value: f64, bound: f64) {
        self.facts.push(format!("{what} {value:.3e} > {bound:.0e}"));
        if !(value > bound) {
            self.failures.push(format!("{what} = {value:e} not above {bound:e}"));
        }
    }

    fn equals(&mut self, what: &str, value: f64, want: f64) {
        self.facts.push(format!("{what} = {value}"));
        if value != want {
            self.failures.push(format!("{what} = {value}, expected {want}"));
        }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn passed(&mut self, r: &CheckResult) {
        self.require(r.status == Status::Pass, format!("{} status {} {:?}", r.name, r.status.as_str(), r.notes));
    }
}

fn metric(r: &CheckResult, key: &str) -> f64 {
    r.metrics.get(key).copied().unwrap_or(f64::NAN)
}

fn ccr(results: &BTreeMap<String, CheckResult>, c: &mut Criterion) {
    let r = &results["ccr_exactness"];
    c.passed(r);
    c.equals("pairs", metric(r, "pairs"), 50.0);
    c.at_most("guarded deviation", metric(r, "max_guarded_deviation"), 1e-12);
    c.at_most("unguarded [a,a]", metric(r, "max_annihilator_commutator"), 1e-13);
}

fn vacuum(results: &BTreeMap<String, CheckResult>, c: &mut Criterion) {
    let v = &results["vacuum_annihilation"];
    let t = &results["time_zero_identity"];
    c.passed(v);
    c.passed(t);
    c.equals("time-zero vacuum norm", metric(v, "max_time_zero_vacuum_norm"), 0.0);
    c.at_most("smeared vacuum norm", metric(v, "max_smeared_vacuum_norm"), 1e-10);
    c.at_most("oracle distance at order 32", metric(t, "distance_order_032"), 1e-8);
    let d: Vec<f64> = [8, 16, 32].iter().map(|o| metric(t, &format!("distance_order_{o:03}"))).collect();
    let floor = metric(t, "noise_floor");
    let improving = d.windows(2).all(|w| w[1] < w[0] || w[1] <= floor);
    c.facts.push(format!("orders 8/16/32: {:.2e} {:.2e} {:.2e}", d[0], d[1], d[2]));
    c.require(improving, format!("no improvement across orders: {d:?} (floor {floor:e})"));
}

fn separating(results: &BTreeMap<String, CheckResult>, c: &mut Criterion) {
    let r = &results["separating_failure"];
    c.passed(r);
    // contiguous proper windows on a 6-site ring: 6 starts times lengths 1..=5
    c.equals("windows", metric(r, "windows"), 30.0);
    c.at_most("max |A Omega|", metric(r, "max_vacuum_image_norm"), 1e-10);
    c.above("min |A|_F / |g|", metric(r, "min_frobenius_over_norm"), 0.0);
    c.above("min CCR constant", metric(r, "min_ccr_constant"), 0.0);
    let listed = r.witness.as_ref().and_then(|w| w["windows"].as_array()).map_or(0, |w| w.len());
    c.equals("witnesses listed", listed as f64, 30.0);
}

fn cyclicity(results: &BTreeMap<String, CheckResult>, c: &mut Criterion) {
    let r = &results["cyclicity_defect"];
    c.passed(r);
    c.equals("oracle mismatches", metric(r, "oracle_mismatches"), 0.0);
    c.equals("proper windows not below full", metric(r, "proper_regions_not_below_full"), 0.0);
    c.equals("dim |G|=3", metric(r, "dimension_sites_3"), 20.0);
    c.equals("dim full", metric(r, "full_dimension"), 84.0);
}

fn symbolic(results: &BTreeMap<String, CheckResult>, c: &mut Criterion) {
    let r = &results["descent"];
    c.passed(r);
    let powers = power_commutator_check(50);
    c.equals("power identities", powers.len() as f64, 51.0);
    c.require(powers.iter().all(|p| p.passed()), "nonzero power identity residual");
    for k in [0, 2, 10, 20] {
        let cert = descent_certificate(k);
        c.require(cert.verified(), format!("certificate K={k} not verified"));
    }
    c.facts.push("certificates K=0,2,10,20 verified".into());
    c.equals("confluence words", metric(r, "confluence_words"), 200.0);
    c.equals("confluence mismatches", metric(r, "confluence_mismatches"), 0.0);
}

fn boost(results: &BTreeMap<String, CheckResult>, c: &mut Criterion) {
    let r = &results["boost_identity"];
    c.passed(r);
    c.equals("symbolic failures", metric(r, "symbolic_failures"), 0.0);
    c.equals("highest nonzero order", metric(r, "highest_nonzero_order"), 2.0);
    c.at_most("oscillator deviation", metric(r, "operator_max_deviation"), 1e-6);
}

fn positivity(results: &BTreeMap<String, CheckResult>, c: &mut Criterion) {
    let r = &results["boost_positivity"];
    c.passed(r);
    c.equals("M>0 violation", metric(r, "case_0_violation"), 0.0);
    c.equals("M=0 violation", metric(r, "case_1_violation"), 1.0);
    c.equals("M<0 violation", metric(r, "case_2_violation"), 1.0);
    c.equals("M<0 unbounded", metric(r, "case_2_unbounded_below"), 1.0);
    c.at_most("|min - (E0 - p0^2/2M)|", (metric(r, "case_0_grid_min") - 0.5).abs(), 1e-12);
}

fn relativistic(results: &BTreeMap<String, CheckResult>, c: &mut Criterion) {
    let r = &results["relativistic_evasion"];
    c.passed(r);
    c.at_most("J^2 + 1", metric(r, "j_squared_relative_defect"), 1e-10);
    c.above("leakage", metric(r, "leakage_ratio"), 1e-8);
    let (wide, narrow) = (metric(r, "shrink_leakage_wide_region"), metric(r, "shrink_leakage_narrow_region"));
    c.facts.push(format!("shrink {wide:.2e} -> {narrow:.2e}"));
    c.require(narrow > wide, "leakage did not increase when the region shrank");
    c.at_most("one-mode residual", metric(r, "one_mode_identity_residual"), 1e-12);
    c.above("|phi(f) Omega|", metric(r, "hermitian_field_vacuum_norm"), 0.0);
}

fn grading(results: &BTreeMap<String, CheckResult>, c: &mut Criterion) {
    let r = &results["mass_lattice"];
    c.passed(r);
    c.equals("grading failures", metric(r, "grading_failures"), 0.0);
    c.equals("psi + psi_dag mixed", metric(r, "hermitian_sum_reported_mixed"), 1.0);
    c.equals("mass spectrum deviation", metric(r, "mass_spectrum_deviation"), 0.0);
    c.equals("mass levels", metric(r, "mass_levels"), 4.0);
}

fn strip_durations(text: &str) -> String {
    text.lines().filter(|l| !l.contains("\"duration_s\"")).collect::<Vec<_>>().join("\n")
}

fn reproducibility(c: &mut Criterion) {
    let dir = std::env::temp_dir().join(format!("bargmann-acceptance-{}", std::process::id()));
    if let Err(e) = std::fs::create_dir_all(&dir) {
        c.require(false, format!("temp dir: {e}"));
        return;
    }
    let run = |path: &Path| {
        Command::new(env!("CARGO_BIN_EXE_bargmann-lab"))
            .args(["run", "--format", "json", "--seed", "20240601", "--out"])
            .arg(path)
            .stderr(std::process::Stdio::null())
            .status()
            .map(|s| s.code())
    };
    let (a, b) = (dir.join("first.json"), dir.join("second.json"));
    for p in [&a, &b] {
        match run(p) {
            Ok(Some(0)) => {}
            other => c.require(false, format!("run exited with {other:?}")),
        }
    }
    let read = |p: &Path| std::fs::read_to_string(p).unwrap_or_default();
    let (ta, tb) = (read(&a), read(&b));
    c.require(!ta.is_empty(), "empty report");
    c.require(strip_durations(&ta) == strip_durations(&tb), "reports differ outside duration fields");
    c.require(CheckReport::from_json(&ta).is_ok_and(|r| r.to_json().ok() == Some(ta.clone())), "report does not round-trip");
    c.facts.push(format!("{} bytes, identical modulo duration_s", ta.len()));
    let _ = std::fs::remove_dir_all(&dir);
}

fn main() {
    let report = match run_suite_with_threads(&SuiteConfig::default(), None) {
        Ok(r) => r,
        Err(e) => {
            println!("FAIL suite could not run: {e}");
            std::process::exit(1);
        }
    };
    let results: BTreeMap<String, CheckResult> = report.results.iter().map(|r| (r.name.clone(), r.clone())).collect();
    type Body<'a> = Box<dyn Fn(&mut Criterion) + 'a>;
    let r = &results;
    let criteria: Vec<(&str, Body)> = vec![
        ("ccr exactness", Box::new(move |c| ccr(r, c))),
        ("vacuum annihilation and time-smeared identity", Box::new(move |c| vacuum(r, c))),
        ("separating-failure witness", Box::new(move |c| separating(r, c))),
        ("cyclicity defect", Box::new(move |c| cyclicity(r, c))),
        ("symbolic identities", Box::new(move |c| symbolic(r, c))),
        ("boost identity", Box::new(move |c| boost(r, c))),
        ("boost positivity trichotomy", Box::new(move |c| positivity(r, c))),
        ("relativistic evasion", Box::new(move |c| relativistic(r, c))),
        ("grading and mass lattice", Box::new(move |c| grading(r, c))),
        ("reproducibility", Box::new(reproducibility)),
    ];
    let mut failed = 0;
    for (i, (name, body)) in criteria.iter().enumerate() {
        let mut c = Criterion::new();
        body(&mut c);
        if c.failures.is_empty() {
            println!("PASS {:>2} {name}: {}", i + 1, c.facts.join("; "));
        } else {
            failed += 1;
            println!("FAIL {:>2} {name}: {}", i + 1, c.failures.join("; "));
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
