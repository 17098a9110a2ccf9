//! Vacuum annihilation, the time-zero correspondence and the separating-failure witness.

use std::collections::BTreeSet;

use bargmann_core::{
    build_fock, field_operator, inner_product, mode_space_oracle, mode_spectrum, time_smeared_field, Dispersion, FieldKind, LatticeSpec,
    Region64, TestFunction64, TimeProfile64, C64,
};
use serde_json::json;

use super::{image_norm, main_lattice, profile, Outcome};
use crate::config::SuiteConfig;
use crate::error::CheckError;

pub fn check_vacuum_annihilation(cfg: &SuiteConfig) -> Result<Outcome, CheckError> {
    let tol = &cfg.tolerances;
    let lattice = main_lattice(cfg)?;
    let space = build_fock(lattice, cfg.fock.n_max)?;
    let chi = profile(cfg)?;
    let vac = space.vacuum();
    let mut sites = BTreeSet::new();
    for w in &cfg.regions {
        let region = Region64::window(lattice, w.start, w.len)?;
        if !region.is_proper() {
            return Err(CheckError::Config(format!("region `{}` is not proper", w.name)));
        }
        sites.extend(region.sites().iter().copied());
    }
    let mut out = Outcome::new(tol.vacuum_smeared);
    let (mut time_zero, mut smeared, mut creator_dev) = (0.0f64, 0.0f64, 0.0f64);
    let mut creator_min = f64::INFINITY;
    for &site in &sites {
        let g = TestFunction64::delta(lattice, site)?;
        time_zero = time_zero.max(image_norm(&field_operator(&space, &g, FieldKind::Annihilate)?, &vac));
        let a = time_smeared_field(&space, &g, &chi, cfg.profile.quad_order, cfg.fock.mass)?;
        smeared = smeared.max(image_norm(&a, &vac));
        let c = image_norm(&field_operator(&space, &g, FieldKind::Create)?, &vac);
        creator_min = creator_min.min(c);
        creator_dev = creator_dev.max((c - g.norm()).abs() / g.norm());
    }
    out.rec.metric("basis_functions", sites.len() as f64);
    out.rec.exactly("max_time_zero_vacuum_norm", time_zero, 0.0);
    out.rec.at_most("max_smeared_vacuum_norm", smeared, tol.vacuum_smeared);
    out.rec.above("min_creator_vacuum_norm", creator_min, 0.0);
    out.rec.at_most("max_creator_norm_deviation", creator_dev, tol.creator_norm);
    Ok(out)
}

pub fn check_time_zero_identity(cfg: &SuiteConfig) -> Result<Outcome, CheckError> {
    let tol = &cfg.tolerances;
    let tz = &cfg.time_zero;
    let lattice = LatticeSpec::chain(tz.sites, cfg.lattice.spacing)?;
    let space = build_fock(lattice, tz.n_max)?;
    let m0 = cfg.fock.mass;
    let chi = profile(cfg)?;
    let spec = mode_spectrum(lattice, Dispersion::Galilean { mass: m0 })?;
    let g = TestFunction64::delta(lattice, tz.site)?;
    let psi0 = field_operator(&space, &g, FieldKind::Annihilate)?;
    let psi0_norm = psi0.frobenius_norm();
    let target = field_operator(&space, &mode_space_oracle(&g, &chi, &spec)?, FieldKind::Annihilate)?;

    let mut out = Outcome::new(tol.time_zero);
    let mut distances = Vec::new();
    for &order in &tz.quad_orders {
        let a = time_smeared_field(&space, &g, &chi, order, m0)?;
        let d = a.sub(&target)?.frobenius_norm();
        out.rec.metric(&format!("distance_order_{order:03}"), d);
        distances.push(d);
    }
    let floor = tol.quadrature_noise_floor * psi0_norm;
    out.rec.metric("noise_floor", floor);
    for (w, orders) in distances.windows(2).zip(tz.quad_orders.windows(2)) {
        let improved = w[1] < w[0] || w[1] <= floor;
        out.rec.require(improved, format!("distance did not improve from order {} ({:e}) to {} ({:e})", orders[0], w[0], orders[1], w[1]));
    }
    let last = *distances.last().expect("at least two orders");
    let top = *tz.quad_orders.last().expect("at least two orders");
    out.rec.at_most("distance_highest_order", last, tol.time_zero);

    let narrow = TimeProfile64::named(&cfg.profile.name, tz.narrow_width)?;
    let a_narrow = time_smeared_field(&space, &g, &narrow, top, m0)?;
    out.rec.at_most("narrow_window_relative_distance", a_narrow.sub(&psi0)?.frobenius_norm() / psi0_norm, tol.narrow_window);

    let zero = TestFunction64::zeros(lattice);
    let zs = time_smeared_field(&space, &zero, &chi, top, m0)?.frobenius_norm();
    let zo = field_operator(&space, &mode_space_oracle(&zero, &chi, &spec)?, FieldKind::Annihilate)?.frobenius_norm();
    out.rec.exactly("zero_input_smeared_norm", zs, 0.0);
    out.rec.exactly("zero_input_oracle_norm", zo, 0.0);
    Ok(out)
}

/// Test function used as the witness smearing on a window: a delta on one-site windows, the
/// sum of the first two sites otherwise.
fn witness_function(lattice: bargmann_core::Lattice64, region: &Region64, start: usize) -> Result<TestFunction64, CheckError> {
    let n = lattice.num_sites();
    let mut g = TestFunction64::delta(lattice, start % n)?;
    if region.len() > 1 {
        g = g.combine(C64::new(1.0, 0.0), &TestFunction64::delta(lattice, (start + 1) % n)?, C64::new(1.0, 0.0))?;
    }
    Ok(g)
}

pub fn check_separating_failure(cfg: &SuiteConfig) -> Result<Outcome, CheckError> {
    let tol = &cfg.tolerances;
    let lattice = main_lattice(cfg)?;
    let space = build_fock(lattice, cfg.fock.n_max)?;
    let chi = profile(cfg)?;
    let vac = space.vacuum();
    let n = lattice.num_sites();
    let mut out = Outcome::new(tol.separating_vacuum);
    let mut witnesses = Vec::new();
    let (mut vac_max, mut norm_ratio_min, mut ccr_min, mut ccr_dev, mut phi_dev) = (0.0f64, f64::INFINITY, f64::INFINITY, 0.0f64, 0.0f64);
    let mut phi_min = f64::INFINITY;
    let mut windows = 0usize;
    for len in 1..n {
        for start in 0..n {
            let region = Region64::window(lattice, start, len)?;
            let g = witness_function(lattice, &region, start)?;
            if g.support().iter().any(|s| !region.contains(*s)) {
                return Err(CheckError::Config("witness function leaves its window".into()));
            }
            let a = time_smeared_field(&space, &g, &chi, cfg.profile.quad_order, cfg.fock.mass)?;
            let vac_norm = image_norm(&a, &vac);
            let fro = a.frobenius_norm();
            let ccr = inner_product(&g, &g)?.re;
            // ⟨Ω, [ψ₀(g), ψ₀†(g)] Ω⟩ measured on the Fock space
            let psi = field_operator(&space, &g, FieldKind::Annihilate)?;
            let psi_dag = field_operator(&space, &g, FieldKind::Create)?;
            let comm_vac = bargmann_core::scalar::vec_dot(&vac, &psi.commutator(&psi_dag)?.apply(&vac)).re;
            let phi = psi.add(&psi_dag)?.scale(C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
            let phi_norm = image_norm(&phi, &vac);
            vac_max = vac_max.max(vac_norm);
            norm_ratio_min = norm_ratio_min.min(fro / g.norm());
            ccr_min = ccr_min.min(ccr);
            ccr_dev = ccr_dev.max((comm_vac - ccr).abs());
            phi_min = phi_min.min(phi_norm);
            phi_dev = phi_dev.max((phi_norm - std::f64::consts::FRAC_1_SQRT_2 * g.norm()).abs());
            windows += 1;
            witnesses.push(json!({
                "start": start,
                "len": len,
                "smearing_support": g.support().into_iter().collect::<Vec<_>>(),
                "vacuum_image_norm": vac_norm,
                "frobenius_norm": fro,
                "ccr_constant": ccr,
            }));
        }
    }
    out.rec.metric("windows", windows as f64);
    out.rec.at_most("max_vacuum_image_norm", vac_max, tol.separating_vacuum);
    out.rec.at_least("min_frobenius_over_norm", norm_ratio_min, tol.separating_norm_fraction);
    out.rec.above("min_ccr_constant", ccr_min, 0.0);
    out.rec.at_most("max_measured_ccr_deviation", ccr_dev, tol.ccr);
    out.rec.above("min_hermitian_field_vacuum_norm", phi_min, 0.0);
    out.rec.at_most("max_hermitian_field_norm_deviation", phi_dev, tol.creator_norm);
    out.witness = Some(json!({ "operator": "time-smeared annihilator", "windows": witnesses }));
    Ok(out)
}

