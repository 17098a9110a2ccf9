//! Boost conjugation of the Hamiltonian, exactly in the Lie algebra and numerically on the
//! truncated oscillator.

use bargmann_core::{oscillator_model, Oscillator64, C64};
use bargmann_symbolic::{hadamard_conjugation, GaussianRational, Rational};
use serde_json::json;

use super::{parse_rational, Outcome};
use crate::config::SuiteConfig;
use crate::error::CheckError;

pub fn check_boost_identity(cfg: &SuiteConfig) -> Result<Outcome, CheckError> {
    let b = &cfg.boost;
    let tol = &cfg.tolerances;
    let mut out = Outcome::new(tol.boost_identity);

    let mut symbolic_failures = 0usize;
    let mut highest_nonzero = 0usize;
    let mut closed_forms = Vec::new();
    for v in &b.symbolic_velocities {
        let parsed: Vec<Rational> = v
            .iter()
            .map(|s| parse_rational(s).ok_or_else(|| CheckError::Config(format!("`{s}` is not a rational"))))
            .collect::<Result<_, _>>()?;
        let v3: [Rational; 3] = [parsed[0].clone(), parsed[1].clone(), parsed[2].clone()];
        let h = hadamard_conjugation::<GaussianRational>(&v3, 4)?;
        if !(h.terminates() && h.matches_closed_form()) {
            symbolic_failures += 1;
        }
        if let Some(n) = h.symbolic.terms.iter().rposition(|t| !t.is_zero()) {
            highest_nonzero = highest_nonzero.max(n);
        }
        closed_forms.push(json!({ "v": v, "closed_form": h.closed_form.to_string() }));
    }
    out.rec.metric("symbolic_cases", b.symbolic_velocities.len() as f64);
    out.rec.exactly("symbolic_failures", symbolic_failures as f64, 0.0);
    out.rec.exactly("highest_nonzero_order", highest_nonzero as f64, 2.0);

    let osc = oscillator_model(b.n_trunc, b.mass)?;
    let boosted = osc.boosted_hamiltonian(b.velocity)?;
    let rhs = osc.boost_identity_rhs(b.velocity);
    let keep = b.level_cut + 1;
    let dev = (&boosted - &rhs).leading_block(keep).max_abs();
    out.rec.at_most("operator_max_deviation", dev, tol.boost_identity);

    let psi = osc.coherent_state(C64::new(b.coherent_amplitude[0], b.coherent_amplitude[1]));
    let e0 = Oscillator64::expectation(osc.h(), &psi).re;
    let p0 = Oscillator64::expectation(osc.p(), &psi).re;
    let eb = Oscillator64::expectation(&boosted, &psi).re;
    let predicted = e0 - b.velocity * p0 + 0.5 * b.mass * b.velocity * b.velocity;
    out.rec.metric("state_energy", e0);
    out.rec.metric("state_momentum", p0);
    out.rec.at_most("expectation_deviation", (eb - predicted).abs(), tol.boost_expectation);
    out.witness = Some(json!({ "closed_forms": closed_forms }));
    Ok(out)
}
