//! Time-smeared fields `∫ χ(t) e^{iHt} ψ₀(g) e^{−iHt} dt` and their closed mode-space form.
//!
//! Because `e^{iHt} a_k e^{−iHt} = e^{−iε_k t} a_k`, the smeared annihilator equals the
//! time-zero annihilator of `g′` with `ĝ′(k) = ĝ(k) · conj(χ̃(ε_k))`, `χ̃(ε) = ∫ χ(t) e^{−iεt} dt`.

use num_complex::Complex;

use crate::dense::{expm, DenseMatrix};
use crate::error::{Error, Result};
use crate::fock::{field_operator, generator, FieldKind, FockSpace, Generator};
use crate::krylov::expm_action;
use crate::lattice::TestFunction;
use crate::quadrature::{profile_rule, TimeProfile};
use crate::scalar::{ci, czero, Real};
use crate::sparse::SparseOperator;
use crate::spectrum::{apply_spectral_multiplier, ModeSpectrum};

pub const MIN_QUAD_ORDER: usize = 4;
pub const ORACLE_QUAD_ORDER: usize = 64;

/// Largest particle-number sector evolved with dense exponentials.
pub const DENSE_SECTOR_LIMIT: usize = 2000;

fn check_order(order: usize) -> Result<()> {
    if order < MIN_QUAD_ORDER {
        return Err(Error::QuadratureOrder(order, MIN_QUAD_ORDER));
    }
    Ok(())
}

fn block<T: Real>(m: &SparseOperator<T>, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> DenseMatrix<T> {
    let mut out = DenseMatrix::zeros(rows.len(), cols.len());
    for r in rows.clone() {
        for c in cols.clone() {
            out[(r - rows.start, c - cols.start)] = m.get(r, c);
        }
    }
    out
}

/// Gauss–Legendre quadrature of the Heisenberg-evolved annihilator against `profile`, with
/// the free Hamiltonian of mass `m0`. Each particle-number sector is evolved with a dense
/// exponential.
pub fn time_smeared_field<T: Real>(
    space: &FockSpace<T>,
    g: &TestFunction<T>,
    profile: &TimeProfile<T>,
    quad_order: usize,
    m0: T,
) -> Result<SparseOperator<T>> {
    check_order(quad_order)?;
    let h = generator(space, Generator::Hamiltonian(m0))?;
    let psi = field_operator(space, g, FieldKind::Annihilate)?;
    let sectors: Vec<_> = (0..=space.n_max()).map(|n| space.sector(n)).collect();
    if let Some(big) = sectors.iter().map(|r| r.len()).find(|&d| d > DENSE_SECTOR_LIMIT) {
        return Err(Error::SectorTooLarge(big));
    }
    let h_blocks: Vec<_> = sectors.iter().map(|r| block(&h, r.clone(), r.clone())).collect();
    // ψ maps sector n+1 into sector n
    let psi_blocks: Vec<_> = (0..space.n_max()).map(|n| block(&psi, sectors[n].clone(), sectors[n + 1].clone())).collect();
    let mut acc: Vec<DenseMatrix<T>> = psi_blocks.iter().map(|b| DenseMatrix::zeros(b.rows(), b.cols())).collect();
    for (t, w) in profile_rule(profile, quad_order) {
        if w == T::zero() {
            continue;
        }
        let evol = h_blocks.iter().map(|hb| expm(&hb.scale(ci::<T>() * t))).collect::<Result<Vec<_>>>()?;
        for n in 0..space.n_max() {
            let term = evol[n].matmul(&psi_blocks[n]).matmul(&evol[n + 1].adjoint());
            acc[n] = &acc[n] + &term.scale(Complex::new(w, T::zero()));
        }
    }
    let mut triplets = Vec::new();
    for (n, b) in acc.iter().enumerate() {
        for r in 0..b.rows() {
            for c in 0..b.cols() {
                let v = b[(r, c)];
                if v != czero() {
                    triplets.push((sectors[n].start + r, sectors[n + 1].start + c, v));
                }
            }
        }
    }
    Ok(SparseOperator::from_triplets(space, triplets, Some(-1)))
}

/// `ψ(χ⊗g) v` computed with Krylov exponential actions, for spaces too large to evolve densely.
pub fn time_smeared_apply<T: Real>(
    space: &FockSpace<T>,
    g: &TestFunction<T>,
    profile: &TimeProfile<T>,
    quad_order: usize,
    m0: T,
    v: &[Complex<T>],
) -> Result<Vec<Complex<T>>> {
    check_order(quad_order)?;
    let h = generator(space, Generator::Hamiltonian(m0))?;
    let psi = field_operator(space, g, FieldKind::Annihilate)?;
    let mut out = vec![czero(); space.dimension()];
    for (t, w) in profile_rule(profile, quad_order) {
        if w == T::zero() {
            continue;
        }
        let back = expm_action(&h, -ci::<T>() * t, v)?;
        let fwd = expm_action(&h, ci::<T>() * t, &psi.apply(&back))?;
        for (o, f) in out.iter_mut().zip(&fwd) {
            *o = *o + f * w;
        }
    }
    Ok(out)
}

/// Test function `g′` whose time-zero annihilator equals the smeared field in closed form.
pub fn mode_space_oracle<T: Real>(g: &TestFunction<T>, profile: &TimeProfile<T>, spec: &ModeSpectrum<T>) -> Result<TestFunction<T>> {
    if spec.is_relativistic() {
        return Err(Error::RequiresGalilean);
    }
    apply_spectral_multiplier(spec, |eps| profile.fourier(eps, ORACLE_QUAD_ORDER).conj(), g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::build_fock;
    use crate::lattice::LatticeSpec;
    use crate::spectrum::{mode_spectrum, Dispersion};

    #[test]
    fn low_quadrature_order_rejected() {
        let l = LatticeSpec::<f64>::chain(4, 1.0).unwrap();
        let s = build_fock(l, 2).unwrap();
        let g = TestFunction::delta(l, 0).unwrap();
        let p = TimeProfile::bump(1.0).unwrap();
        assert_eq!(time_smeared_field(&s, &g, &p, 3, 1.0).unwrap_err(), Error::QuadratureOrder(3, 4));
    }

    #[test]
    fn zero_mode_is_unchanged_by_the_oracle() {
        let l = LatticeSpec::<f64>::chain(8, 1.0).unwrap();
        let spec = mode_spectrum(l, Dispersion::Galilean { mass: 1.0 }).unwrap();
        let g = TestFunction::from_real(l, &[1.0; 8]).unwrap();
        let out = mode_space_oracle(&g, &TimeProfile::bump(1.0).unwrap(), &spec).unwrap();
        for v in out.values() {
            assert!((v - Complex::new(1.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn krylov_and_dense_paths_agree_on_a_vector() {
        let l = LatticeSpec::<f64>::chain(4, 1.0).unwrap();
        let s = build_fock(l, 2).unwrap();
        let g = TestFunction::from_real(l, &[1.0, -0.5, 0.0, 0.25]).unwrap();
        let p = TimeProfile::bump(1.0).unwrap();
        let dense = time_smeared_field(&s, &g, &p, 16, 1.0).unwrap();
        let v: Vec<Complex<f64>> = (0..s.dimension()).map(|i| Complex::new(1.0 / (1.0 + i as f64), 0.1 * i as f64)).collect();
        let a = dense.apply(&v);
        let b = time_smeared_apply(&s, &g, &p, 16, 1.0, &v).unwrap();
        let err = a.iter().zip(&b).fold(0.0f64, |m, (x, y)| m.max((x - y).norm()));
        assert!(err < 1e-12, "err = {err}");
    }
}
