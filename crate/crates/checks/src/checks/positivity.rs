//! Sign structure of the boosted energy `E(v) = E₀ − v·p₀ + (M/2)|v|²` on axis-aligned rays.

use serde_json::json;

use super::Outcome;
use crate::config::{PositivityCase, SuiteConfig};
use crate::error::CheckError;

#[derive(Debug, Clone, PartialEq)]
pub struct CaseAnalysis {
    pub grid_min: f64,
    pub grid_argmin: [f64; 3],
    /// Analytic minimum `E₀ − |p₀|²/(2M)` and minimiser `p₀/M`, only for `M > 0`.
    pub analytic: Option<(f64, [f64; 3])>,
    pub violation: bool,
    /// For `M < 0`: `E` decreases strictly over the outer quarter of every half-ray.
    pub unbounded_below: bool,
}

pub fn energy(case: &PositivityCase, v: [f64; 3]) -> f64 {
    let vp: f64 = (0..3).map(|i| v[i] * case.momentum[i]).sum();
    let v2: f64 = v.iter().map(|x| x * x).sum();
    case.energy - vp + 0.5 * case.mass * v2
}

/// Points `k·step` for `|k·step| ≤ max`.
pub fn grid(max: f64, step: f64) -> Vec<f64> {
    let n = (max / step + 1e-9).floor() as i64;
    (-n..=n).map(|k| k as f64 * step).collect()
}

pub fn analyse(case: &PositivityCase, max: f64, step: f64) -> CaseAnalysis {
    let ts = grid(max, step);
    let mut grid_min = f64::INFINITY;
    let mut grid_argmin = [0.0; 3];
    let mut unbounded = true;
    for axis in 0..3 {
        let ray = |t: f64| {
            let mut v = [0.0; 3];
            v[axis] = t;
            v
        };
        for &t in &ts {
            let e = energy(case, ray(t));
            if e < grid_min {
                grid_min = e;
                grid_argmin = ray(t);
            }
        }
        // outer quarter of each half-ray
        let q = ts.len() / 4;
        for w in ts[ts.len() - q - 1..].windows(2) {
            if !(energy(case, ray(w[1])) < energy(case, ray(w[0]))) {
                unbounded = false;
            }
        }
        for w in ts[..=q].windows(2) {
            if !(energy(case, ray(w[0])) < energy(case, ray(w[1]))) {
                unbounded = false;
            }
        }
    }
    let analytic = (case.mass > 0.0).then(|| {
        let p2: f64 = case.momentum.iter().map(|p| p * p).sum();
        let vstar = case.momentum.map(|p| p / case.mass);
        (case.energy - p2 / (2.0 * case.mass), vstar)
    });
    let violation = grid_min < 0.0 || analytic.is_some_and(|(m, _)| m < 0.0);
    CaseAnalysis { grid_min, grid_argmin, analytic, violation, unbounded_below: case.mass < 0.0 && unbounded }
}

/// Violation is expected unless `M > 0` with `E₀ ≥ |p₀|²/(2M)`, or `M = 0 = p₀` with `E₀ ≥ 0`.
pub fn expect_violation(case: &PositivityCase) -> bool {
    let p2: f64 = case.momentum.iter().map(|p| p * p).sum();
    if case.mass > 0.0 {
        case.energy < p2 / (2.0 * case.mass)
    } else if case.mass == 0.0 {
        p2 > 0.0 || case.energy < 0.0
    } else {
        true
    }
}

pub fn check_boost_positivity(cfg: &SuiteConfig) -> Result<Outcome, CheckError> {
    let p = &cfg.positivity;
    let tol = &cfg.tolerances;
    let mut out = Outcome::new(tol.boost_minimum);
    let mut rows = Vec::new();
    let mut mismatches = 0usize;
    for (i, case) in p.cases.iter().enumerate() {
        let a = analyse(case, p.grid_max, p.grid_step);
        let expected = expect_violation(case);
        if a.violation != expected {
            mismatches += 1;
        }
        out.rec.metric(&format!("case_{i}_grid_min"), a.grid_min);
        out.rec.metric(&format!("case_{i}_violation"), a.violation as u8 as f64);
        if let Some((min, vstar)) = a.analytic {
            let err = (energy(case, vstar) - min).abs();
            out.rec.at_most(&format!("case_{i}_minimum_error"), err, tol.boost_minimum);
            out.rec.require(a.grid_min >= min - tol.boost_minimum, format!("case {i}: grid value below the analytic minimum"));
        }
        if case.mass < 0.0 {
            out.rec.exactly(&format!("case_{i}_unbounded_below"), a.unbounded_below as u8 as f64, 1.0);
        }
        rows.push(json!({
            "energy": case.energy,
            "momentum": case.momentum,
            "mass": case.mass,
            "grid_min": a.grid_min,
            "grid_argmin": a.grid_argmin,
            "analytic_min": a.analytic.map(|x| x.0),
            "violation": a.violation,
            "expected_violation": expected,
        }));
    }
    out.rec.exactly("classification_mismatches", mismatches as f64, 0.0);
    out.witness = Some(json!({ "cases": rows }));
    Ok(out)
}
