//! Charge grading of field words, the mass lattice, and high-power vanishing on a shifted
//! reference vector.

use bargmann_core::scalar::vec_norm;
use bargmann_core::{build_fock, field_operator, generator, grading_check, FieldKind, FockSpace64, Generator, Grade, Operator64, TestFunction64, C64};
use serde_json::json;

use super::{main_lattice, Outcome};
use crate::config::SuiteConfig;
use crate::error::CheckError;

#[derive(Debug, Clone, Copy)]
enum Letter {
    Psi,
    PsiDag,
}

fn word_operator(space: &FockSpace64, word: &[(Letter, usize)]) -> Result<(Operator64, i32), CheckError> {
    let lattice = *space.lattice();
    let mut op = Operator64::identity(space);
    let mut grade = 0;
    for &(letter, site) in word {
        let g = TestFunction64::delta(lattice, site % lattice.num_sites())?;
        let (kind, q) = match letter {
            Letter::Psi => (FieldKind::Annihilate, -1),
            Letter::PsiDag => (FieldKind::Create, 1),
        };
        op = op.mul(&field_operator(space, &g, kind)?)?;
        grade += q;
    }
    Ok((op, grade))
}

fn word_name(word: &[(Letter, usize)]) -> String {
    word.iter()
        .map(|(l, s)| match l {
            Letter::Psi => format!("psi({s})"),
            Letter::PsiDag => format!("psi_dag({s})"),
        })
        .collect::<Vec<_>>()
        .join("*")
}

pub fn check_mass_lattice(cfg: &SuiteConfig) -> Result<Outcome, CheckError> {
    use Letter::*;
    let lattice = main_lattice(cfg)?;
    let n_max = cfg.fock.n_max;
    let space = build_fock(lattice, n_max)?;
    let words: Vec<Vec<(Letter, usize)>> = vec![
        vec![(Psi, 0)],
        vec![(PsiDag, 0)],
        vec![(PsiDag, 0), (PsiDag, 1), (Psi, 2)],
        vec![(PsiDag, 1), (Psi, 0)],
        vec![(Psi, 0), (Psi, 1)],
        vec![(PsiDag, 2), (PsiDag, 2)],
        vec![(Psi, 1), (PsiDag, 0), (Psi, 3), (PsiDag, 1)],
    ];
    let mut out = Outcome::new(0.0);
    let (mut grade_failures, mut transport_failures, mut trivial_words) = (0usize, 0usize, 0usize);
    let mut rows = Vec::new();
    for word in &words {
        let (op, declared) = word_operator(&space, word)?;
        let grade = grading_check(&op);
        let ok = match &grade {
            Grade::Definite(n) => *n == declared,
            Grade::Any => true,
            Grade::Mixed(_) => false,
        };
        if !ok {
            grade_failures += 1;
        }
        // sector transport on every number eigenvector
        let mut nonzero = false;
        for k in 0..=n_max {
            // states pushed past either end of the truncation must map to zero
            let target = k as i32 + declared;
            let to = if (0..=n_max as i32).contains(&target) { space.sector(target as usize) } else { 0..0 };
            for i in space.sector(k) {
                let mut e = vec![C64::new(0.0, 0.0); space.dimension()];
                e[i] = C64::new(1.0, 0.0);
                let img = op.apply(&e);
                for (j, z) in img.iter().enumerate() {
                    if *z != C64::new(0.0, 0.0) {
                        nonzero = true;
                        if !to.contains(&j) {
                            transport_failures += 1;
                        }
                    }
                }
            }
        }
        if !nonzero {
            trivial_words += 1;
        }
        rows.push(json!({ "word": word_name(word), "declared_grade": declared, "grade": format!("{grade:?}") }));
    }
    out.rec.metric("words", words.len() as f64);
    out.rec.exactly("grading_failures", grade_failures as f64, 0.0);
    out.rec.exactly("sector_transport_failures", transport_failures as f64, 0.0);
    out.rec.exactly("words_acting_trivially", trivial_words as f64, 0.0);

    let g = TestFunction64::delta(lattice, 0)?;
    let herm = field_operator(&space, &g, FieldKind::Annihilate)?.add(&field_operator(&space, &g, FieldKind::Create)?)?;
    let mixed = matches!(grading_check(&herm), Grade::Mixed(ref v) if v == &[-1, 1]);
    out.rec.exactly("hermitian_sum_reported_mixed", mixed as u8 as f64, 1.0);

    let m0 = cfg.fock.mass;
    let mass = generator(&space, Generator::Mass(m0))?;
    let off_diagonal = mass.iter().filter(|(r, c, _)| r != c).count();
    let mut levels: Vec<f64> = (0..space.dimension()).map(|i| mass.get(i, i).re).collect();
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    let expected: Vec<f64> = (0..=n_max).map(|n| m0 * n as f64).collect();
    let deviation = if levels.len() == expected.len() {
        levels.iter().zip(&expected).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    out.rec.exactly("mass_off_diagonal_entries", off_diagonal as f64, 0.0);
    out.rec.exactly("mass_levels", levels.len() as f64, (n_max + 1) as f64);
    out.rec.exactly("mass_spectrum_deviation", deviation, 0.0);
    out.rec.exactly("mass_vacuum_image_norm", vec_norm(&mass.apply(&space.vacuum())), 0.0);
    out.witness = Some(json!({ "words": rows, "mass_spectrum": levels }));
    Ok(out)
}

fn power_apply(op: &Operator64, k: usize, v: &[C64]) -> Vec<C64> {
    (0..k).fold(v.to_vec(), |acc, _| op.apply(&acc))
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

pub fn check_high_power(cfg: &SuiteConfig) -> Result<Outcome, CheckError> {
    let tol = &cfg.tolerances;
    let k_top = cfg.high_power.k;
    let n_max = cfg.fock.n_max;
    let mut out = Outcome::new(tol.high_power);
    if k_top + 1 > n_max {
        out.skipped = Some(format!("K + 1 = {} exceeds n_max = {n_max}; the (K+1)-fold power is not representable", k_top + 1));
        return Ok(out);
    }
    let lattice = main_lattice(cfg)?;
    let space = build_fock(lattice, n_max)?;
    let n = lattice.num_sites();
    let g = TestFunction64::delta(lattice, 0)?.combine(C64::new(1.0, 0.0), &TestFunction64::delta(lattice, 1 % n)?, C64::new(0.5, 0.0))?;
    let g_perp = TestFunction64::delta(lattice, 2 % n)?;
    let psi = field_operator(&space, &g, FieldKind::Annihilate)?;
    let psi_perp = field_operator(&space, &g_perp, FieldKind::Annihilate)?;
    let psi_dag = field_operator(&space, &g, FieldKind::Create)?;
    let vac = space.vacuum();
    let (mut vanish, mut vanish_perp, mut dev) = (0.0f64, 0.0f64, 0.0f64);
    let mut kfold_min = f64::INFINITY;
    for k in 0..=k_top {
        let raw = power_apply(&psi_dag, k, &vac);
        let raw_norm = vec_norm(&raw);
        let omega_k: Vec<C64> = raw.iter().map(|z| z / raw_norm).collect();
        vanish = vanish.max(vec_norm(&power_apply(&psi, k + 1, &omega_k)));
        vanish_perp = vanish_perp.max(vec_norm(&power_apply(&psi_perp, k + 1, &omega_k)));
        let kfold = vec_norm(&power_apply(&psi, k, &omega_k));
        let oracle = factorial(k).sqrt() * g.norm().powi(k as i32);
        kfold_min = kfold_min.min(kfold);
        dev = dev.max((kfold - oracle).abs() / oracle).max((raw_norm - oracle).abs() / oracle);
        out.rec.metric(&format!("k{k}_fold_norm"), kfold);
    }
    out.rec.metric("k_max", k_top as f64);
    out.rec.exactly("max_excess_power_norm", vanish, 0.0);
    out.rec.exactly("max_excess_power_norm_orthogonal", vanish_perp, 0.0);
    out.rec.above("min_k_fold_norm", kfold_min, 0.0);
    out.rec.at_most("max_k_fold_relative_deviation", dev, tol.high_power);
    Ok(out)
}
