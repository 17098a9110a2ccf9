//! Equal-time canonical commutation relations on the guarded subspace.

use bargmann_core::{build_fock, field_operator, inner_product, FieldKind, GuardedSubspace, Operator64, TestFunction64, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{main_lattice, Outcome};
use crate::config::SuiteConfig;
use crate::error::CheckError;

const SEED_OFFSET: u64 = 0x0c0c;

pub fn random_function(lattice: bargmann_core::Lattice64, rng: &mut impl Rng) -> TestFunction64 {
    let values = (0..lattice.num_sites()).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    TestFunction64::new(lattice, values).expect("length matches")
}

pub fn check_ccr_exactness(cfg: &SuiteConfig) -> Result<Outcome, CheckError> {
    let tol = &cfg.tolerances;
    let lattice = main_lattice(cfg)?;
    let space = build_fock(lattice, cfg.fock.n_max)?;
    let guard = GuardedSubspace::new(&space, cfg.fock.n_max - 1);
    let id = Operator64::identity(&space);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(SEED_OFFSET));

    let mut out = Outcome::new(tol.ccr);
    let (mut guarded, mut unguarded, mut edge) = (0.0f64, 0.0f64, 0.0f64);
    let mut min_ccr = f64::INFINITY;
    for _ in 0..cfg.ccr.pairs {
        let g1 = random_function(lattice, &mut rng);
        let g2 = random_function(lattice, &mut rng);
        let a1 = field_operator(&space, &g1, FieldKind::Annihilate)?;
        let a2 = field_operator(&space, &g2, FieldKind::Annihilate)?;
        let c2 = field_operator(&space, &g2, FieldKind::Create)?;
        let ip = inner_product(&g1, &g2)?;
        let defect = a1.commutator(&c2)?.sub(&id.scale(ip))?;
        guarded = guarded.max(guard.restrict(&defect).max_abs());
        edge = edge.max(defect.max_abs());
        unguarded = unguarded.max(a1.commutator(&a2)?.max_abs());
        min_ccr = min_ccr.min(inner_product(&g1, &g1)?.re);
    }
    out.rec.metric("pairs", cfg.ccr.pairs as f64);
    out.rec.at_most("max_guarded_deviation", guarded, tol.ccr);
    out.rec.at_most("max_annihilator_commutator", unguarded, tol.ccr_unguarded);
    // the truncation edge breaks the c-number commutator; recorded, not bounded
    out.rec.metric("max_truncation_edge_defect", edge);
    out.rec.above("min_ccr_constant", min_ccr, 0.0);
    Ok(out)
}
