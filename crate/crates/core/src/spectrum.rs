//! Discrete Fourier mode spectra and the spectral functional calculus built on them.
//!
//! Every operator here is diagonal in the discrete Fourier basis of the periodic lattice. The
//! lattice Laplacian symbol is `|k|² = Σ_j (4/a²) sin²(π n_j / L)`, the Galilean dispersion is
//! `|k|²/(2 m0)` and the relativistic one is `(|k|² + m²)^{1/2}`.

use num_complex::Complex;
use rustfft::{FftDirection, FftPlanner};

use crate::error::{Error, Result};
use crate::lattice::{CauchyDoublet, LatticeSpec, Region, TestFunction};
use crate::scalar::{from_usize, lit, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Dispersion<T> {
    /// Free nonrelativistic particle of mass `m0`.
    Galilean { mass: T },
    /// `(-∇² + m²)^{1/2}` with mass gap `m`.
    Relativistic { mass: T },
}

impl<T: Real> Dispersion<T> {
    pub fn mass(&self) -> T {
        match *self {
            Dispersion::Galilean { mass } | Dispersion::Relativistic { mass } => mass,
        }
    }

    pub fn energy(&self, k2: T) -> T {
        match *self {
            Dispersion::Galilean { mass } => k2 / (mass + mass),
            Dispersion::Relativistic { mass } => (k2 + mass * mass).sqrt(),
        }
    }
}

/// Eigenvalue of a translation-invariant one-particle operator for every Fourier mode.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSpectrum<T> {
    lattice: LatticeSpec<T>,
    kind: Dispersion<T>,
    values: Vec<T>,
}

/// Fourier index along one axis mapped to `(-L/2, L/2]`.
fn wrapped(n: usize, len: usize) -> i64 {
    let n = n as i64;
    let len = len as i64;
    if 2 * n > len {
        n - len
    } else {
        n
    }
}

/// Lattice Laplacian symbol `Σ_j (4/a²) sin²(π n_j/L)` for the mode with linear index `mode`.
pub fn lattice_k2<T: Real>(lattice: &LatticeSpec<T>, mode: usize) -> T {
    let a = lattice.spacing();
    let len = from_usize::<T>(lattice.sites_per_axis());
    lattice.coords(mode).into_iter().fold(T::zero(), |acc, n| {
        let s = (T::PI() * from_usize::<T>(n) / len).sin();
        acc + lit::<T>(4.0) * s * s / (a * a)
    })
}

/// Lattice momentum `(2/a) sin(π ñ_j / L)` along `axis`, with `ñ_j` the wrapped Fourier index.
/// Summing its square over the axes reproduces [`lattice_k2`].
pub fn lattice_momentum<T: Real>(lattice: &LatticeSpec<T>, axis: usize, mode: usize) -> Result<T> {
    if axis >= lattice.dims() {
        return Err(Error::UnknownAxis { axis, dims: lattice.dims() });
    }
    let n = lattice.coords(mode)[axis];
    let nw = wrapped(n, lattice.sites_per_axis()) as f64;
    let angle = T::PI() * lit::<T>(nw) / from_usize::<T>(lattice.sites_per_axis());
    Ok(lit::<T>(2.0) * angle.sin() / lattice.spacing())
}

pub fn mode_spectrum<T: Real>(lattice: LatticeSpec<T>, kind: Dispersion<T>) -> Result<ModeSpectrum<T>> {
    let mass = kind.mass();
    if !(mass > T::zero()) || !mass.is_finite() {
        return Err(Error::NonPositiveMass(mass.to_f64().unwrap_or(f64::NAN)));
    }
    let values = (0..lattice.num_sites()).map(|k| kind.energy(lattice_k2(&lattice, k))).collect();
    Ok(ModeSpectrum { lattice, kind, values })
}

impl<T: Real> ModeSpectrum<T> {
    pub fn lattice(&self) -> &LatticeSpec<T> {
        &self.lattice
    }

    pub fn kind(&self) -> Dispersion<T> {
        self.kind
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn is_relativistic(&self) -> bool {
        matches!(self.kind, Dispersion::Relativistic { .. })
    }

    pub fn max_value(&self) -> T {
        self.values.iter().fold(T::zero(), |m, &v| m.max(v))
    }
}

/// Multidimensional DFT on the lattice, unnormalised in both directions.
pub(crate) fn dft<T: Real>(lattice: &LatticeSpec<T>, data: &mut [Complex<T>], direction: FftDirection) {
    let len = lattice.sites_per_axis();
    let mut planner = FftPlanner::<T>::new();
    let fft = planner.plan_fft(len, direction);
    let mut line = vec![Complex::new(T::zero(), T::zero()); len];
    for axis in 0..lattice.dims() {
        let stride = len.pow(axis as u32);
        for base in 0..data.len() {
            // visit each line once, from its first element
            if (base / stride) % len != 0 {
                continue;
            }
            for (i, slot) in line.iter_mut().enumerate() {
                *slot = data[base + i * stride];
            }
            fft.process(&mut line);
            for (i, v) in line.iter().enumerate() {
                data[base + i * stride] = *v;
            }
        }
    }
}

/// `F⁻¹[ φ(λ_k) · F[u](k) ]` for a complex-valued multiplier.
pub fn apply_spectral_multiplier<T: Real>(
    spec: &ModeSpectrum<T>,
    phi: impl Fn(T) -> Complex<T>,
    u: &TestFunction<T>,
) -> Result<TestFunction<T>> {
    if u.lattice() != spec.lattice() {
        return Err(Error::LatticeMismatch);
    }
    let multipliers = spec
        .values
        .iter()
        .enumerate()
        .map(|(mode, &lambda)| {
            let m = phi(lambda);
            if m.re.is_finite() && m.im.is_finite() {
                Ok(m)
            } else {
                Err(Error::SpectralFunctionUndefined { mode, eigenvalue: lambda.to_f64().unwrap_or(f64::NAN) })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    apply_fourier_multiplier(&multipliers, u)
}

/// `F⁻¹[ m_k · F[u](k) ]` for an explicit multiplier per Fourier mode.
pub fn apply_fourier_multiplier<T: Real>(multipliers: &[Complex<T>], u: &TestFunction<T>) -> Result<TestFunction<T>> {
    let lattice = *u.lattice();
    if multipliers.len() != lattice.num_sites() {
        return Err(Error::LengthMismatch { expected: lattice.num_sites(), got: multipliers.len() });
    }
    let mut data = u.values().to_vec();
    dft(&lattice, &mut data, FftDirection::Forward);
    for (d, m) in data.iter_mut().zip(multipliers) {
        *d = *d * m;
    }
    dft(&lattice, &mut data, FftDirection::Inverse);
    let n = from_usize::<T>(data.len());
    for d in data.iter_mut() {
        *d = *d / n;
    }
    TestFunction::new(lattice, data)
}

/// Real functional calculus `φ(spec) u`.
pub fn apply_spectral_function<T: Real>(
    spec: &ModeSpectrum<T>,
    phi: impl Fn(T) -> T,
    u: &TestFunction<T>,
) -> Result<TestFunction<T>> {
    apply_spectral_multiplier(spec, |x| Complex::new(phi(x), T::zero()), u)
}

fn real_part<T: Real>(f: TestFunction<T>) -> TestFunction<T> {
    let lattice = *f.lattice();
    let values = f.into_values().into_iter().map(|v| Complex::new(v.re, T::zero())).collect();
    TestFunction::new(lattice, values).expect("same length")
}

/// Complex structure `J(u0 ⊕ u1) = −H⁻¹u1 ⊕ H u0` of the relativistic one-particle space.
///
/// `H` is real symmetric on the lattice, so the outputs are real up to rounding; the imaginary
/// parts are discarded to keep the result a valid [`CauchyDoublet`].
pub fn complex_structure_j<T: Real>(d: &CauchyDoublet<T>, spec: &ModeSpectrum<T>) -> Result<CauchyDoublet<T>> {
    if !spec.is_relativistic() {
        return Err(Error::RequiresRelativistic);
    }
    if d.lattice() != spec.lattice() {
        return Err(Error::LatticeMismatch);
    }
    let v0 = apply_spectral_function(spec, |x| -T::one() / x, d.u1())?;
    let v1 = apply_spectral_function(spec, |x| x, d.u0())?;
    CauchyDoublet::new(real_part(v0), real_part(v1))
}

/// Fraction of the squared norm of `J d` that lies outside `region`.
pub fn leakage_ratio<T: Real>(d: &CauchyDoublet<T>, region: &Region<T>, spec: &ModeSpectrum<T>) -> Result<T> {
    if region.lattice() != d.lattice() {
        return Err(Error::LatticeMismatch);
    }
    if d.is_zero() {
        return Err(Error::ZeroData);
    }
    if let Some(&outside) = d.support().iter().find(|&&s| !region.contains(s)) {
        return Err(Error::SupportOutsideRegion(outside));
    }
    let jd = complex_structure_j(d, spec)?;
    let total = jd.euclidean_norm();
    if total == T::zero() {
        return Err(Error::ZeroData);
    }
    // summing the exterior directly avoids cancellation when the leak is tiny
    let mut outside = T::zero();
    for (site, (a, b)) in jd.u0().values().iter().zip(jd.u1().values()).enumerate() {
        if !region.contains(site) {
            outside = outside + a.norm_sqr() + b.norm_sqr();
        }
    }
    Ok(outside / (total * total))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> LatticeSpec<f64> {
        LatticeSpec::chain(n, 1.0).unwrap()
    }

    #[test]
    fn zero_mode_energies() {
        let l = chain(8);
        let gal = mode_spectrum(l, Dispersion::Galilean { mass: 1.0 }).unwrap();
        assert_eq!(gal.values()[0], 0.0);
        let rel = mode_spectrum(l, Dispersion::Relativistic { mass: 1.0 }).unwrap();
        assert_eq!(rel.values()[0], 1.0);
    }

    #[test]
    fn first_mode_on_four_sites() {
        let gal = mode_spectrum(chain(4), Dispersion::Galilean { mass: 1.0 }).unwrap();
        let symbol = 4.0 * (std::f64::consts::PI / 4.0).sin().powi(2);
        assert!((gal.values()[1] - symbol / 2.0).abs() < 1e-15);
        assert!((gal.values()[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn nonpositive_mass_rejected() {
        assert!(mode_spectrum(chain(4), Dispersion::Galilean { mass: 0.0 }).is_err());
        assert!(mode_spectrum(chain(4), Dispersion::Relativistic { mass: -1.0 }).is_err());
    }

    #[test]
    fn momentum_squares_sum_to_laplacian_symbol() {
        let l = LatticeSpec::<f64>::new(2, 5, 0.7).unwrap();
        for mode in 0..l.num_sites() {
            let p2: f64 = (0..2).map(|ax| lattice_momentum(&l, ax, mode).unwrap().powi(2)).sum();
            assert!((p2 - lattice_k2(&l, mode)).abs() < 1e-12);
        }
        assert!(lattice_momentum(&l, 2, 0).is_err());
    }

    #[test]
    fn constant_one_is_identity() {
        let l = chain(16);
        let spec = mode_spectrum(l, Dispersion::Relativistic { mass: 1.0 }).unwrap();
        let u = TestFunction::window_bump(l, 3, 7).unwrap();
        let out = apply_spectral_function(&spec, |_| 1.0, &u).unwrap();
        for (a, b) in out.values().iter().zip(u.values()) {
            assert!((a - b).norm() <= 1e-12 * b.norm().max(1e-300) + 1e-15);
        }
    }

    #[test]
    fn inverse_undefined_on_galilean_zero_mode() {
        let l = chain(8);
        let spec = mode_spectrum(l, Dispersion::Galilean { mass: 1.0 }).unwrap();
        let u = TestFunction::delta(l, 0).unwrap();
        assert!(matches!(
            apply_spectral_function(&spec, |x| 1.0 / x, &u),
            Err(Error::SpectralFunctionUndefined { mode: 0, .. })
        ));
    }

    #[test]
    fn j_requires_relativistic_spectrum() {
        let l = chain(8);
        let spec = mode_spectrum(l, Dispersion::Galilean { mass: 1.0 }).unwrap();
        let d = CauchyDoublet::zeros(l);
        assert_eq!(complex_structure_j(&d, &spec), Err(Error::RequiresRelativistic));
    }

    #[test]
    fn j_of_zero_is_zero() {
        let l = chain(8);
        let spec = mode_spectrum(l, Dispersion::Relativistic { mass: 1.0 }).unwrap();
        let d = CauchyDoublet::zeros(l);
        assert!(complex_structure_j(&d, &spec).unwrap().is_zero());
    }

    #[test]
    fn leakage_errors_and_full_region() {
        let l = chain(32);
        let spec = mode_spectrum(l, Dispersion::Relativistic { mass: 1.0 }).unwrap();
        let bump = TestFunction::window_bump(l, 10, 12).unwrap();
        let d = CauchyDoublet::new(bump, TestFunction::zeros(l)).unwrap();
        assert_eq!(leakage_ratio(&d, &Region::full(l), &spec).unwrap(), 0.0);
        let small = Region::window(l, 12, 4).unwrap();
        assert!(matches!(leakage_ratio(&d, &small, &spec), Err(Error::SupportOutsideRegion(_))));
        let z = CauchyDoublet::zeros(l);
        assert_eq!(leakage_ratio(&z, &small, &spec), Err(Error::ZeroData));
    }
}
