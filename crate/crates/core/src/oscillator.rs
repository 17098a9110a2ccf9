//! Truncated single-particle ladder realisation with `K = m0 X` and `H = P²/(2 m0)`.

use num_complex::Complex;

use crate::dense::{expm, DenseMatrix};
use crate::error::{Error, Result};
use crate::scalar::{ci, cone, from_usize, lit, Real};

pub const MIN_OSCILLATOR_LEVELS: usize = 16;

#[derive(Debug, Clone)]
pub struct OscillatorModel<T> {
    n_trunc: usize,
    mass: T,
    x: DenseMatrix<T>,
    p: DenseMatrix<T>,
    h: DenseMatrix<T>,
    k: DenseMatrix<T>,
}

/// Truncated lowering operator `b|n⟩ = √n |n−1⟩`.
pub fn lowering<T: Real>(levels: usize) -> DenseMatrix<T> {
    let mut b = DenseMatrix::zeros(levels, levels);
    for n in 1..levels {
        b[(n - 1, n)] = Complex::new(from_usize::<T>(n).sqrt(), T::zero());
    }
    b
}

pub fn oscillator_model<T: Real>(n_trunc: usize, m0: T) -> Result<OscillatorModel<T>> {
    if n_trunc < MIN_OSCILLATOR_LEVELS {
        return Err(Error::OscillatorTruncation(n_trunc));
    }
    if !(m0 > T::zero()) {
        return Err(Error::NonPositiveMass(m0.to_f64().unwrap_or(f64::NAN)));
    }
    let b = lowering::<T>(n_trunc);
    let bd = b.adjoint();
    let r = Complex::new(lit::<T>(0.5).sqrt(), T::zero());
    let x = (&b + &bd).scale(r);
    let p = (&bd - &b).scale(ci::<T>() * r);
    let h = p.matmul(&p).scale(Complex::new(T::one() / (m0 + m0), T::zero()));
    let k = x.scale(Complex::new(m0, T::zero()));
    Ok(OscillatorModel { n_trunc, mass: m0, x, p, h, k })
}

impl<T: Real> OscillatorModel<T> {
    pub fn levels(&self) -> usize {
        self.n_trunc
    }

    pub fn mass(&self) -> T {
        self.mass
    }

    pub fn x(&self) -> &DenseMatrix<T> {
        &self.x
    }

    pub fn p(&self) -> &DenseMatrix<T> {
        &self.p
    }

    pub fn h(&self) -> &DenseMatrix<T> {
        &self.h
    }

    pub fn k(&self) -> &DenseMatrix<T> {
        &self.k
    }

    /// Boost unitary `exp(−i v K)`.
    pub fn boost(&self, v: T) -> Result<DenseMatrix<T>> {
        expm(&self.k.scale(-ci::<T>() * v))
    }

    /// `U† H U` for `U = exp(−i v K)`.
    pub fn boosted_hamiltonian(&self, v: T) -> Result<DenseMatrix<T>> {
        let u = self.boost(v)?;
        Ok(u.adjoint().matmul(&self.h).matmul(&u))
    }

    /// `H − v P + (m0/2) v²`.
    pub fn boost_identity_rhs(&self, v: T) -> DenseMatrix<T> {
        let shift = self.mass * v * v / lit(2.0);
        let id = DenseMatrix::identity(self.n_trunc).scale(Complex::new(shift, T::zero()));
        &(&self.h - &self.p.scale(Complex::new(v, T::zero()))) + &id
    }

    /// Normalised coherent state `∝ Σ αⁿ/√n! |n⟩`, truncated.
    pub fn coherent_state(&self, alpha: Complex<T>) -> Vec<Complex<T>> {
        let mut v = Vec::with_capacity(self.n_trunc);
        let mut amp = cone::<T>();
        for n in 0..self.n_trunc {
            if n > 0 {
                amp = amp * alpha / from_usize::<T>(n).sqrt();
            }
            v.push(amp);
        }
        let norm = crate::scalar::vec_norm(&v);
        v.into_iter().map(|z| z / norm).collect()
    }

    /// `⟨ψ|A|ψ⟩` for one of the model's matrices.
    pub fn expectation(m: &DenseMatrix<T>, psi: &[Complex<T>]) -> Complex<T> {
        crate::scalar::vec_dot(psi, &m.matvec(psi))
    }
}
