//! Relativistic contrast: the complex structure on Cauchy data leaks out of the region, and the
//! one-mode reconstruction of the annihilator from Hermitian fields.

use bargmann_core::{
    build_fock, complex_structure_j, field_operator, leakage_ratio, mode_spectrum, CauchyDoublet64, Dispersion, FieldKind, LatticeSpec,
    Region64, TestFunction64, C64,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{image_norm, Outcome};
use crate::config::SuiteConfig;
use crate::error::CheckError;

const SEED_OFFSET: u64 = 0x7e1a;

pub fn check_relativistic_evasion(cfg: &SuiteConfig) -> Result<Outcome, CheckError> {
    let r = &cfg.relativistic;
    let tol = &cfg.tolerances;
    let lattice = LatticeSpec::chain(r.sites, r.spacing)?;
    let margin = r.sites / 8;
    if r.region_start < margin || r.region_start + r.region_len + margin > r.sites {
        return Err(CheckError::Config(format!("region needs a margin of at least L/8 = {margin} sites on each side")));
    }
    let spec = mode_spectrum(lattice, Dispersion::Relativistic { mass: r.mass })?;
    let region = Region64::window(lattice, r.region_start, r.region_len)?;
    let shrunk = Region64::window(lattice, r.shrunk_start, r.shrunk_len)?;
    let bump = TestFunction64::window_bump(lattice, r.region_start, r.region_len)?;
    let d = CauchyDoublet64::new(bump.clone(), TestFunction64::zeros(lattice))?;
    let mut out = Outcome::new(tol.one_mode);

    // J² = −1 on the canonical doublet and on seeded random doublets
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(SEED_OFFSET));
    let mut doublets = vec![d.clone()];
    for _ in 0..3 {
        let mut real = || {
            let v: Vec<f64> = (0..r.sites).map(|_| rng.gen_range(-1.0..1.0)).collect();
            TestFunction64::from_real(lattice, &v)
        };
        doublets.push(CauchyDoublet64::new(real()?, real()?)?);
    }
    let mut j2 = 0.0f64;
    for x in &doublets {
        let jj = complex_structure_j(&complex_structure_j(x, &spec)?, &spec)?;
        j2 = j2.max(jj.max_abs_diff(&x.neg()) / x.euclidean_norm());
    }
    out.rec.at_most("j_squared_relative_defect", j2, tol.j_squared);

    let leak = leakage_ratio(&d, &region, &spec)?;
    out.rec.above("leakage_ratio", leak, tol.leakage_floor);
    let small = CauchyDoublet64::new(TestFunction64::window_bump(lattice, r.shrunk_start, r.shrunk_len)?, TestFunction64::zeros(lattice))?;
    let leak_wide = leakage_ratio(&small, &region, &spec)?;
    let leak_narrow = leakage_ratio(&small, &shrunk, &spec)?;
    out.rec.metric("shrink_leakage_wide_region", leak_wide);
    out.rec.metric("shrink_leakage_narrow_region", leak_narrow);
    out.rec.require(leak_narrow > leak_wide, format!("leakage did not grow when the region shrank ({leak_wide:e} → {leak_narrow:e})"));

    // a(f) = 2^{-1/2} (φ(f) + i φ(i f)) with φ(h) = 2^{-1/2}(a(h) + a†(h))
    let space = build_fock(lattice, r.fock_n_max)?;
    let s = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let phi = |h: &TestFunction64| -> Result<_, CheckError> {
        Ok(field_operator(&space, h, FieldKind::Annihilate)?.add(&field_operator(&space, h, FieldKind::Create)?)?.scale(s))
    };
    let i = C64::new(0.0, 1.0);
    let a = field_operator(&space, &bump, FieldKind::Annihilate)?;
    let rebuilt = phi(&bump)?.lincomb(s, &phi(&bump.scale(i))?, i * s)?;
    out.rec.at_most("one_mode_identity_residual", a.sub(&rebuilt)?.max_abs(), tol.one_mode);
    let phi_vac = image_norm(&phi(&bump)?, &space.vacuum());
    out.rec.above("hermitian_field_vacuum_norm", phi_vac, 0.0);
    let predicted = std::f64::consts::FRAC_1_SQRT_2 * bump.norm();
    out.rec.at_most("hermitian_field_norm_deviation", (phi_vac - predicted).abs() / predicted, tol.one_mode);
    out.witness = Some(json!({
        "region": [r.region_start, r.region_len],
        "leakage_ratio": leak,
        "shrunk_region": [r.shrunk_start, r.shrunk_len],
        "hermitian_field_vacuum_norm": phi_vac,
    }));
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeakageRow {
    pub region_start: usize,
    pub region_len: usize,
    pub leakage: f64,
}

/// Leakage of the bump on the centred `window`-site block, measured against every centred
/// region that contains the block and keeps a margin of `sites/8` on each side.
pub fn leakage_table(sites: usize, spacing: f64, mass: f64, window: usize) -> Result<Vec<LeakageRow>, CheckError> {
    let lattice = LatticeSpec::chain(sites, spacing)?;
    let margin = sites.div_ceil(8);
    let widest = sites.saturating_sub(2 * margin);
    if window == 0 || window > widest {
        return Err(CheckError::Config(format!("window must lie in 1..={widest} for {sites} sites")));
    }
    let spec = mode_spectrum(lattice, Dispersion::Relativistic { mass })?;
    let start = (sites - window) / 2;
    let d = CauchyDoublet64::new(TestFunction64::window_bump(lattice, start, window)?, TestFunction64::zeros(lattice))?;
    let mut rows = Vec::new();
    for len in window..=widest {
        let region_start = (sites - len) / 2;
        if region_start > start || region_start + len < start + window {
            continue;
        }
        let region = Region64::window(lattice, region_start, len)?;
        rows.push(LeakageRow { region_start, region_len: len, leakage: leakage_ratio(&d, &region, &spec)? });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leakage_decreases_as_the_region_grows() {
        let rows = leakage_table(64, 1.0, 1.0, 10).unwrap();
        assert_eq!(rows.first().unwrap().region_len, 10);
        assert!(rows.iter().all(|r| r.leakage > 0.0));
        assert!(rows.first().unwrap().leakage > rows.last().unwrap().leakage);
    }

    #[test]
    fn oversized_window_rejected() {
        assert!(leakage_table(64, 1.0, 1.0, 60).is_err());
        assert!(leakage_table(64, 1.0, 1.0, 0).is_err());
    }
}
