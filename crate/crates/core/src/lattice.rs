//! Periodic spatial lattices, complex test functions on them, and site regions.

use std::collections::BTreeSet;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{czero, from_usize, lit, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    Periodic,
}

/// A hypercubic lattice of `sites_per_axis^dims` sites with uniform spacing.
///
/// Sites are indexed linearly with axis 0 running fastest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeSpec<T> {
    dims: usize,
    sites_per_axis: usize,
    spacing: T,
    boundary: Boundary,
}

impl<T: Real> LatticeSpec<T> {
    pub fn new(dims: usize, sites_per_axis: usize, spacing: T) -> Result<Self> {
        if !(1..=3).contains(&dims) {
            return Err(Error::InvalidLattice(format!("dims must be 1, 2 or 3, got {dims}")));
        }
        if sites_per_axis == 0 {
            return Err(Error::InvalidLattice("sites_per_axis must be positive".into()));
        }
        if !(spacing > T::zero()) || !spacing.is_finite() {
            return Err(Error::InvalidLattice(format!("spacing must be positive, got {spacing}")));
        }
        let total = sites_per_axis
            .checked_pow(dims as u32)
            .ok_or_else(|| Error::InvalidLattice("site count overflows".into()))?;
        if total < 2 {
            return Err(Error::InvalidLattice("a lattice needs at least two sites".into()));
        }
        Ok(Self { dims, sites_per_axis, spacing, boundary: Boundary::Periodic })
    }

    /// One-dimensional chain of `sites` sites.
    pub fn chain(sites: usize, spacing: T) -> Result<Self> {
        Self::new(1, sites, spacing)
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn sites_per_axis(&self) -> usize {
        self.sites_per_axis
    }

    pub fn spacing(&self) -> T {
        self.spacing
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn num_sites(&self) -> usize {
        self.sites_per_axis.pow(self.dims as u32)
    }

    /// Cell volume `a^dims`.
    pub fn cell_volume(&self) -> T {
        self.spacing.powi(self.dims as i32)
    }

    pub fn coords(&self, site: usize) -> Vec<usize> {
        let mut rest = site;
        (0..self.dims)
            .map(|_| {
                let c = rest % self.sites_per_axis;
                rest /= self.sites_per_axis;
                c
            })
            .collect()
    }

    pub fn site_index(&self, coords: &[usize]) -> usize {
        coords.iter().rev().fold(0, |acc, &c| acc * self.sites_per_axis + (c % self.sites_per_axis))
    }

    /// Physical position of a site along each axis.
    pub fn position(&self, site: usize) -> Vec<T> {
        self.coords(site).into_iter().map(|c| from_usize::<T>(c) * self.spacing).collect()
    }
}

/// Complex-valued function on the sites of a lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct TestFunction<T> {
    lattice: LatticeSpec<T>,
    values: Vec<Complex<T>>,
}

impl<T: Real> TestFunction<T> {
    pub fn new(lattice: LatticeSpec<T>, values: Vec<Complex<T>>) -> Result<Self> {
        let expected = lattice.num_sites();
        if values.len() != expected {
            return Err(Error::LengthMismatch { expected, got: values.len() });
        }
        Ok(Self { lattice, values })
    }

    pub fn from_real(lattice: LatticeSpec<T>, values: &[T]) -> Result<Self> {
        Self::new(lattice, values.iter().map(|&v| Complex::new(v, T::zero())).collect())
    }

    pub fn zeros(lattice: LatticeSpec<T>) -> Self {
        Self { values: vec![czero(); lattice.num_sites()], lattice }
    }

    /// Unit value at one site, zero elsewhere.
    pub fn delta(lattice: LatticeSpec<T>, site: usize) -> Result<Self> {
        if site >= lattice.num_sites() {
            return Err(Error::InvalidRegion(format!("site {site} out of range")));
        }
        let mut f = Self::zeros(lattice);
        f.values[site] = Complex::new(T::one(), T::zero());
        Ok(f)
    }

    /// Smooth compact bump `(1 - (r/w)^2)^4` for `r < w`, where `r` is the periodic distance of
    /// each site from `center` (physical units).
    pub fn bump(lattice: LatticeSpec<T>, center: &[T], half_width: T) -> Result<Self> {
        if center.len() != lattice.dims() {
            return Err(Error::LengthMismatch { expected: lattice.dims(), got: center.len() });
        }
        if !(half_width > T::zero()) {
            return Err(Error::InvalidProfile(format!("bump half-width must be positive, got {half_width}")));
        }
        let period = from_usize::<T>(lattice.sites_per_axis()) * lattice.spacing();
        let half_period = period / lit(2.0);
        let values = (0..lattice.num_sites())
            .map(|site| {
                let r2 = lattice.position(site).iter().zip(center).fold(T::zero(), |acc, (&x, &c)| {
                    let mut d = x - c;
                    while d > half_period {
                        d = d - period;
                    }
                    while d < -half_period {
                        d = d + period;
                    }
                    acc + d * d
                });
                let s = r2 / (half_width * half_width);
                if s < T::one() {
                    Complex::new((T::one() - s).powi(4), T::zero())
                } else {
                    czero()
                }
            })
            .collect();
        Ok(Self { lattice, values })
    }

    /// Default demonstration profile: bump centred on a 1D window, half-width equal to the
    /// window half-width.
    pub fn window_bump(lattice: LatticeSpec<T>, start: usize, len: usize) -> Result<Self> {
        if lattice.dims() != 1 {
            return Err(Error::InvalidLattice("window bumps are defined on chains".into()));
        }
        let a = lattice.spacing();
        let center = (from_usize::<T>(start) + from_usize::<T>(len.saturating_sub(1)) / lit(2.0)) * a;
        Self::bump(lattice, &[center], from_usize::<T>(len) * a / lit(2.0))
    }

    pub fn lattice(&self) -> &LatticeSpec<T> {
        &self.lattice
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex<T>> {
        self.values
    }

    /// Sites where the value is not exactly zero.
    pub fn support(&self) -> BTreeSet<usize> {
        self.values.iter().enumerate().filter(|(_, v)| **v != czero()).map(|(i, _)| i).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| *v == czero())
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im == T::zero())
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self { lattice: self.lattice, values: self.values.iter().map(|v| v * s).collect() }
    }

    /// `alpha * self + beta * other`.
    pub fn combine(&self, alpha: Complex<T>, other: &Self, beta: Complex<T>) -> Result<Self> {
        self.same_lattice(other)?;
        Ok(Self {
            lattice: self.lattice,
            values: self.values.iter().zip(&other.values).map(|(u, w)| u * alpha + w * beta).collect(),
        })
    }

    /// `L²` norm with the Riemann-sum measure, `sqrt(inner_product(self, self))`.
    pub fn norm(&self) -> T {
        (self.lattice.cell_volume() * crate::scalar::vec_norm(&self.values).powi(2)).sqrt()
    }

    /// Zeroes every value outside `region`.
    pub fn restrict(&self, region: &Region<T>) -> Result<Self> {
        if region.lattice() != &self.lattice {
            return Err(Error::LatticeMismatch);
        }
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| if region.contains(i) { *v } else { czero() })
            .collect();
        Ok(Self { lattice: self.lattice, values })
    }

    pub(crate) fn same_lattice(&self, other: &Self) -> Result<()> {
        if self.lattice != other.lattice {
            return Err(Error::LatticeMismatch);
        }
        Ok(())
    }
}

/// `a^dims · Σ_x conj(g1(x)) g2(x)`.
pub fn inner_product<T: Real>(g1: &TestFunction<T>, g2: &TestFunction<T>) -> Result<Complex<T>> {
    g1.same_lattice(g2)?;
    Ok(crate::scalar::vec_dot(&g1.values, &g2.values) * g1.lattice.cell_volume())
}

/// Nonempty set of lattice sites with an optional time window.
#[derive(Debug, Clone, PartialEq)]
pub struct Region<T> {
    lattice: LatticeSpec<T>,
    sites: BTreeSet<usize>,
    time_window: Option<(T, T)>,
}

impl<T: Real> Region<T> {
    pub fn new(lattice: LatticeSpec<T>, sites: impl IntoIterator<Item = usize>) -> Result<Self> {
        let sites: BTreeSet<usize> = sites.into_iter().collect();
        if sites.is_empty() {
            return Err(Error::InvalidRegion("region has no sites".into()));
        }
        if let Some(&s) = sites.iter().find(|&&s| s >= lattice.num_sites()) {
            return Err(Error::InvalidRegion(format!("site {s} out of range")));
        }
        Ok(Self { lattice, sites, time_window: None })
    }

    pub fn full(lattice: LatticeSpec<T>) -> Self {
        Self { sites: (0..lattice.num_sites()).collect(), lattice, time_window: None }
    }

    /// `len` consecutive linear site indices starting at `start`, wrapping periodically.
    pub fn window(lattice: LatticeSpec<T>, start: usize, len: usize) -> Result<Self> {
        let n = lattice.num_sites();
        if len == 0 || len > n {
            return Err(Error::InvalidRegion(format!("window length {len} outside 1..={n}")));
        }
        Self::new(lattice, (0..len).map(|i| (start + i) % n))
    }

    /// Every contiguous proper window on the lattice, in (length, start) order.
    pub fn proper_windows(lattice: LatticeSpec<T>) -> Vec<Self> {
        let n = lattice.num_sites();
        (1..n)
            .flat_map(|len| (0..n).map(move |start| (start, len)))
            .map(|(start, len)| Self::window(lattice, start, len).expect("valid window"))
            .collect()
    }

    pub fn with_time_window(mut self, t0: T, t1: T) -> Result<Self> {
        if !(t0 < t1) {
            return Err(Error::InvalidRegion(format!("time window [{t0}, {t1}] is empty")));
        }
        self.time_window = Some((t0, t1));
        Ok(self)
    }

    pub fn lattice(&self) -> &LatticeSpec<T> {
        &self.lattice
    }

    pub fn sites(&self) -> &BTreeSet<usize> {
        &self.sites
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn time_window(&self) -> Option<(T, T)> {
        self.time_window
    }

    pub fn contains(&self, site: usize) -> bool {
        self.sites.contains(&site)
    }

    /// True when the complement is nonempty.
    pub fn is_proper(&self) -> bool {
        self.sites.len() < self.lattice.num_sites()
    }
}

/// Real Cauchy data `u0 ⊕ u1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CauchyDoublet<T> {
    u0: TestFunction<T>,
    u1: TestFunction<T>,
}

impl<T: Real> CauchyDoublet<T> {
    pub fn new(u0: TestFunction<T>, u1: TestFunction<T>) -> Result<Self> {
        u0.same_lattice(&u1)?;
        if !u0.is_real() || !u1.is_real() {
            return Err(Error::ComplexCauchyData);
        }
        Ok(Self { u0, u1 })
    }

    pub fn zeros(lattice: LatticeSpec<T>) -> Self {
        Self { u0: TestFunction::zeros(lattice), u1: TestFunction::zeros(lattice) }
    }

    pub fn u0(&self) -> &TestFunction<T> {
        &self.u0
    }

    pub fn u1(&self) -> &TestFunction<T> {
        &self.u1
    }

    pub fn lattice(&self) -> &LatticeSpec<T> {
        self.u0.lattice()
    }

    pub fn is_zero(&self) -> bool {
        self.u0.is_zero() && self.u1.is_zero()
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.u0.support().union(&self.u1.support()).copied().collect()
    }

    /// Euclidean norm over both components (no volume factor).
    pub fn euclidean_norm(&self) -> T {
        let a = crate::scalar::vec_norm(self.u0.values());
        let b = crate::scalar::vec_norm(self.u1.values());
        (a * a + b * b).sqrt()
    }

    pub fn neg(&self) -> Self {
        let m = Complex::new(-T::one(), T::zero());
        Self { u0: self.u0.scale(m), u1: self.u1.scale(m) }
    }

    /// Largest componentwise absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.u0
            .values()
            .iter()
            .zip(other.u0.values())
            .chain(self.u1.values().iter().zip(other.u1.values()))
            .fold(T::zero(), |m, (a, b)| m.max((a - b).norm()))
    }

    pub fn restrict(&self, region: &Region<T>) -> Result<Self> {
        Ok(Self { u0: self.u0.restrict(region)?, u1: self.u1.restrict(region)? })
    }
}
