//! Creation-on-power identities, descent certificates, rewriting confluence, and the numeric
//! echo of the symbolic identities on a Fock mode.

use bargmann_core::{build_fock, field_operator, inner_product, FieldKind, GuardedSubspace, LatticeSpec, Operator64, TestFunction64, C64};
use bargmann_symbolic::rewrite::{expand, rewrite_to_normal, word_expr, Letter};
use bargmann_symbolic::{descent_certificate, normal_order, power_commutator_check, NormalPolyQ, OperatorExpr, Rational, Strategy};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::Outcome;
use crate::config::SuiteConfig;
use crate::error::CheckError;

const SEED_OFFSET: u64 = 0xde5c;

fn op_pow(op: &Operator64, n: u32) -> Result<Operator64, CheckError> {
    let mut out = Operator64::identity(op.space());
    for _ in 0..n {
        out = out.mul(op)?;
    }
    Ok(out)
}

/// `Σ coef(p, q)(c) · ad^p a^q` with `a`, `ad` replaced by operators.
pub fn evaluate_normal(nf: &NormalPolyQ, a: &Operator64, ad: &Operator64, c: f64) -> Result<Operator64, CheckError> {
    let mut out = Operator64::zero(a.space());
    for ((p, q), coef) in nf.terms() {
        let z = coef.map(|r| r.to_f64().unwrap_or(f64::NAN)).evaluate(&c, &(1.0 / c));
        let term = op_pow(ad, p)?.mul(&op_pow(a, q)?)?;
        out = out.lincomb(C64::new(1.0, 0.0), &term, C64::new(z, 0.0))?;
    }
    Ok(out)
}

pub fn check_descent(cfg: &SuiteConfig) -> Result<Outcome, CheckError> {
    let d = &cfg.descent;
    let tol = &cfg.tolerances;
    let mut out = Outcome::new(tol.descent_echo);

    let powers = power_commutator_check(d.power_n_max);
    let power_failures = powers.iter().filter(|p| !p.passed()).count();
    out.rec.metric("power_identities", powers.len() as f64);
    out.rec.exactly("power_identity_failures", power_failures as f64, 0.0);

    let mut cert_failures = 0usize;
    let mut certs = Vec::new();
    for &k in &d.certificate_ks {
        let cert = descent_certificate(k);
        if !cert.verified() {
            cert_failures += 1;
        }
        certs.push(json!({ "k": k, "steps": cert.steps.len(), "coefficient": cert.coefficient.to_string(), "verified": cert.verified(), "contradiction": cert.contradiction }));
    }
    out.rec.metric("certificates", d.certificate_ks.len() as f64);
    out.rec.exactly("certificate_failures", cert_failures as f64, 0.0);

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(SEED_OFFSET));
    let mut mismatches = 0usize;
    for _ in 0..d.confluence_words {
        let len = rng.gen_range(0..=d.max_word_len);
        let word: Vec<Letter> = (0..len).map(|_| if rng.gen_bool(0.5) { Letter::A } else { Letter::Ad }).collect();
        let e = word_expr(&word);
        let reference: NormalPolyQ = normal_order(&e);
        let seed = rng.gen();
        for st in [Strategy::Leftmost, Strategy::Rightmost, Strategy::Random(seed)] {
            if rewrite_to_normal::<Rational>(expand(&e), st).0 != reference {
                mismatches += 1;
            }
        }
    }
    out.rec.metric("confluence_words", d.confluence_words as f64);
    out.rec.exactly("confluence_mismatches", mismatches as f64, 0.0);

    // numeric echo: one mode of a two-site chain, a = ψ₀(g), c = ‖g‖²
    let lattice = LatticeSpec::chain(2, cfg.lattice.spacing)?;
    let space = build_fock(lattice, d.echo_levels)?;
    let g = TestFunction64::delta(lattice, 0)?.scale(C64::new(d.echo_amplitude, 0.0));
    let a = field_operator(&space, &g, FieldKind::Annihilate)?;
    let ad = field_operator(&space, &g, FieldKind::Create)?;
    let c = inner_product(&g, &g)?.re;
    let guard = GuardedSubspace::new(&space, d.echo_levels - 1);
    let mut echo = 0.0f64;
    for n in 1..=d.echo_n_max {
        let lhs = op_pow(&a, n + 1)?.commutator(&ad)?;
        let nf: NormalPolyQ = normal_order(&OperatorExpr::commutator(OperatorExpr::A.pow(n + 1), OperatorExpr::Ad));
        let rhs = evaluate_normal(&nf, &a, &ad, c)?;
        let closed = op_pow(&a, n)?.scale(C64::new((n + 1) as f64 * c, 0.0));
        echo = echo.max(guard.restrict(&lhs.sub(&rhs)?).max_abs()).max(guard.restrict(&lhs.sub(&closed)?).max_abs());
    }
    out.rec.metric("echo_central_value", c);
    out.rec.at_most("echo_max_deviation", echo, tol.descent_echo);
    out.witness = Some(json!({ "certificates": certs }));
    Ok(out)
}
