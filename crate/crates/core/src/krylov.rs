//! Action of the exponential of a sparse operator on a vector by Arnoldi projection.

use num_complex::Complex;

use crate::dense::{expm, DenseMatrix};
use crate::error::Result;
use crate::scalar::{czero, from_usize, lit, vec_dot, vec_norm, Real};
use crate::sparse::SparseOperator;

/// Krylov subspace dimension per substep.
const KRYLOV_DIM: usize = 30;

/// `exp(tau · op) v`, advancing in substeps with `|tau|·‖op‖₁ / steps ≤ 1`.
pub fn expm_action<T: Real>(op: &SparseOperator<T>, tau: Complex<T>, v: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    let dim = op.dimension();
    let m = KRYLOV_DIM.min(dim);
    let norm1 = column_norm_one(op);
    let steps = ((tau.norm() * norm1).to_f64().unwrap_or(1.0).ceil() as usize).max(1);
    let h = tau / from_usize::<T>(steps);
    let mut w = v.to_vec();
    for _ in 0..steps {
        w = arnoldi_step(op, h, &w, m)?;
    }
    Ok(w)
}

fn column_norm_one<T: Real>(op: &SparseOperator<T>) -> T {
    let mut cols = vec![T::zero(); op.dimension()];
    for (_, c, v) in op.iter() {
        cols[c] = cols[c] + v.norm();
    }
    cols.into_iter().fold(T::zero(), |m, x| m.max(x))
}

fn arnoldi_step<T: Real>(op: &SparseOperator<T>, h: Complex<T>, v: &[Complex<T>], m: usize) -> Result<Vec<Complex<T>>> {
    let beta = vec_norm(v);
    if beta == T::zero() {
        return Ok(v.to_vec());
    }
    let mut basis: Vec<Vec<Complex<T>>> = vec![v.iter().map(|x| x / beta).collect()];
    let mut hess = DenseMatrix::<T>::zeros(m, m);
    let mut size = m;
    for j in 0..m {
        let mut w = op.apply(&basis[j]);
        for (i, b) in basis.iter().enumerate() {
            let p = vec_dot(b, &w);
            hess[(i, j)] = hess[(i, j)] + p;
            for (wk, bk) in w.iter_mut().zip(b) {
                *wk = *wk - bk * p;
            }
        }
        // reorthogonalise once
        for (i, b) in basis.iter().enumerate() {
            let p = vec_dot(b, &w);
            hess[(i, j)] = hess[(i, j)] + p;
            for (wk, bk) in w.iter_mut().zip(b) {
                *wk = *wk - bk * p;
            }
        }
        let norm = vec_norm(&w);
        if j + 1 == m {
            break;
        }
        if norm <= T::epsilon() * lit(16.0) * beta.max(T::one()) {
            // invariant subspace: the projection is exact
            size = j + 1;
            break;
        }
        hess[(j + 1, j)] = Complex::new(norm, T::zero());
        basis.push(w.into_iter().map(|x| x / norm).collect());
    }
    let small = hess.leading_block(size).scale(h);
    let e = expm(&small)?;
    let mut out = vec![czero(); v.len()];
    for (i, b) in basis.iter().take(size).enumerate() {
        let coef = e[(i, 0)] * beta;
        for (o, bk) in out.iter_mut().zip(b) {
            *o = *o + bk * coef;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{build_fock, generator, Generator};
    use crate::lattice::LatticeSpec;

    #[test]
    fn matches_dense_exponential() {
        let l = LatticeSpec::<f64>::chain(5, 1.0).unwrap();
        let s = build_fock(l, 3).unwrap();
        let h = generator(&s, Generator::Hamiltonian(0.7)).unwrap();
        let v: Vec<Complex<f64>> = (0..s.dimension()).map(|i| Complex::new((i as f64 * 0.3).sin(), (i as f64 * 0.11).cos())).collect();
        let tau = Complex::new(0.0, 2.5);
        let dense = expm(&h.to_dense().scale(tau)).unwrap().matvec(&v);
        let kry = expm_action(&h, tau, &v).unwrap();
        let err = dense.iter().zip(&kry).fold(0.0f64, |m, (a, b)| m.max((a - b).norm()));
        assert!(err < 1e-11, "err = {err}");
    }

    #[test]
    fn vacuum_is_stationary() {
        let l = LatticeSpec::<f64>::chain(4, 1.0).unwrap();
        let s = build_fock(l, 2).unwrap();
        let h = generator(&s, Generator::Hamiltonian(1.0)).unwrap();
        let out = expm_action(&h, Complex::new(0.0, -3.0), &s.vacuum()).unwrap();
        assert_eq!(out, s.vacuum());
    }
}
