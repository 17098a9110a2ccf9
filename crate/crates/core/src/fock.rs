//! Truncated symmetric Fock space over the sites of a lattice.
//!
//! Basis states are occupation vectors `n: site → ℕ` with `Σ n ≤ n_max`, ordered first by total
//! occupation and then in descending lexicographic order of the vector, so site 0 is filled
//! first. The vacuum is always index 0 and each particle-number sector is a contiguous range.

use std::collections::HashMap;
use std::ops::Range;
use std::sync::Arc;

use num_complex::Complex;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::lattice::{LatticeSpec, Region, TestFunction};
use crate::scalar::{cone, czero, from_usize, lit, vec_dot, vec_norm, Real};
use crate::sparse::SparseOperator;
use crate::spectrum::{apply_fourier_multiplier, lattice_momentum, mode_spectrum, Dispersion};

pub const DEFAULT_DIMENSION_CAP: usize = 200_000;

/// Relative rank threshold used when orthogonalising spanning sets.
pub const RANK_TOLERANCE: f64 = 1e-9;

#[derive(Debug)]
struct FockInner<T> {
    lattice: LatticeSpec<T>,
    n_max: usize,
    basis: Vec<Vec<u8>>,
    totals: Vec<usize>,
    index: HashMap<Vec<u8>, usize>,
    sectors: Vec<Range<usize>>,
}

/// Shared, immutable Fock space; cloning is cheap.
#[derive(Debug, Clone)]
pub struct FockSpace<T> {
    inner: Arc<FockInner<T>>,
}

impl<T: Real> PartialEq for FockSpace<T> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.lattice == other.inner.lattice && self.inner.n_max == other.inner.n_max)
    }
}

/// `C(n, k)` in `u128`, saturating.
pub fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n - k.min(n));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Compositions of `total` into `parts` nonnegative parts, descending lexicographic.
fn compositions(total: usize, parts: usize, prefix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if parts == 1 {
        prefix.push(total as u8);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for first in (0..=total).rev() {
        prefix.push(first as u8);
        compositions(total - first, parts - 1, prefix, out);
        prefix.pop();
    }
}

pub fn build_fock<T: Real>(lattice: LatticeSpec<T>, n_max: usize) -> Result<FockSpace<T>> {
    build_fock_with_cap(lattice, n_max, DEFAULT_DIMENSION_CAP)
}

pub fn build_fock_with_cap<T: Real>(lattice: LatticeSpec<T>, n_max: usize, cap: usize) -> Result<FockSpace<T>> {
    if n_max == 0 || n_max > u8::MAX as usize {
        return Err(Error::InvalidTruncation);
    }
    let sites = lattice.num_sites();
    let dimension = binomial((sites + n_max) as u64, n_max as u64);
    if dimension > cap as u128 {
        return Err(Error::DimensionCap { dimension, cap });
    }
    let mut basis = Vec::with_capacity(dimension as usize);
    let mut sectors = Vec::with_capacity(n_max + 1);
    for total in 0..=n_max {
        let start = basis.len();
        compositions(total, sites, &mut Vec::with_capacity(sites), &mut basis);
        sectors.push(start..basis.len());
    }
    let totals = basis.iter().map(|n| n.iter().map(|&x| x as usize).sum()).collect();
    let index = basis.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
    Ok(FockSpace { inner: Arc::new(FockInner { lattice, n_max, basis, totals, index, sectors }) })
}

impl<T: Real> FockSpace<T> {
    pub fn lattice(&self) -> &LatticeSpec<T> {
        &self.inner.lattice
    }

    pub fn n_max(&self) -> usize {
        self.inner.n_max
    }

    pub fn dimension(&self) -> usize {
        self.inner.basis.len()
    }

    pub fn occupation(&self, index: usize) -> &[u8] {
        &self.inner.basis[index]
    }

    pub fn index_of(&self, occupation: &[u8]) -> Option<usize> {
        self.inner.index.get(occupation).copied()
    }

    pub fn total_occupation(&self, index: usize) -> usize {
        self.inner.totals[index]
    }

    /// Basis indices with total occupation `n`.
    pub fn sector(&self, n: usize) -> Range<usize> {
        self.inner.sectors.get(n).cloned().unwrap_or(0..0)
    }

    pub fn vacuum(&self) -> Vec<Complex<T>> {
        let mut v = vec![czero(); self.dimension()];
        v[0] = cone();
        v
    }

    /// Number of basis states with total occupation at most `max_total`.
    pub fn guarded_dimension(&self, max_total: usize) -> usize {
        self.sector(max_total.min(self.n_max())).end
    }

    /// Applies the single-site annihilator `a_x`.
    fn lower(&self, index: usize, site: usize) -> Option<(usize, T)> {
        let occ = &self.inner.basis[index];
        let n = occ[site];
        if n == 0 {
            return None;
        }
        let mut target = occ.clone();
        target[site] -= 1;
        Some((self.inner.index[&target], from_usize::<T>(n as usize).sqrt()))
    }
}

/// Projection onto the states with total occupation `≤ max_total`.
#[derive(Debug, Clone)]
pub struct GuardedSubspace<T> {
    space: FockSpace<T>,
    max_total: usize,
}

impl<T: Real> GuardedSubspace<T> {
    pub fn new(space: &FockSpace<T>, max_total: usize) -> Self {
        Self { space: space.clone(), max_total: max_total.min(space.n_max()) }
    }

    pub fn max_total(&self) -> usize {
        self.max_total
    }

    pub fn dimension(&self) -> usize {
        self.space.guarded_dimension(self.max_total)
    }

    pub fn contains(&self, index: usize) -> bool {
        self.space.total_occupation(index) <= self.max_total
    }

    pub fn projector(&self) -> SparseOperator<T> {
        SparseOperator::from_triplets(&self.space, (0..self.dimension()).map(|i| (i, i, cone())), Some(0))
    }

    /// `op · P_guard`: the action of `op` on guarded states.
    pub fn restrict(&self, op: &SparseOperator<T>) -> SparseOperator<T> {
        SparseOperator::from_triplets(&self.space, op.iter().filter(|&(_, c, _)| self.contains(c)), op.grade())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    Annihilate,
    Create,
}

/// Smeared field `Σ_x a^{dims/2} conj(g(x)) a_x` or its adjoint.
pub fn field_operator<T: Real>(space: &FockSpace<T>, g: &TestFunction<T>, kind: FieldKind) -> Result<SparseOperator<T>> {
    if g.lattice() != space.lattice() {
        return Err(Error::LatticeMismatch);
    }
    let weight = space.lattice().cell_volume().sqrt();
    let mut triplets = Vec::new();
    for col in 0..space.dimension() {
        for (site, gx) in g.values().iter().enumerate() {
            if *gx == czero() {
                continue;
            }
            if let Some((row, amp)) = space.lower(col, site) {
                triplets.push((row, col, gx.conj() * (amp * weight)));
            }
        }
    }
    let annihilator = SparseOperator::from_triplets(space, triplets, Some(-1));
    Ok(match kind {
        FieldKind::Annihilate => annihilator,
        FieldKind::Create => annihilator.adjoint(),
    })
}

/// Second quantisation `Σ_{x,y} h_xy a†_x a_y` of a one-particle matrix (row-major, `|Λ|²`).
pub fn second_quantize<T: Real>(space: &FockSpace<T>, h: &[Complex<T>]) -> SparseOperator<T> {
    let sites = space.lattice().num_sites();
    assert_eq!(h.len(), sites * sites);
    let mut triplets = Vec::new();
    for col in 0..space.dimension() {
        let occ = space.occupation(col);
        for y in 0..sites {
            if occ[y] == 0 {
                continue;
            }
            let mut lowered = occ.to_vec();
            lowered[y] -= 1;
            let down = from_usize::<T>(occ[y] as usize).sqrt();
            for x in 0..sites {
                let hxy = h[x * sites + y];
                if hxy == czero() {
                    continue;
                }
                let mut raised = lowered.clone();
                raised[x] += 1;
                let up = from_usize::<T>(raised[x] as usize).sqrt();
                triplets.push((space.index_of(&raised).expect("number conserving"), col, hxy * (down * up)));
            }
        }
    }
    SparseOperator::from_triplets(space, triplets, Some(0))
}

/// Site-basis matrix of a translation-invariant one-particle operator with the given Fourier
/// multipliers, Hermitian-symmetrised with rounding noise removed.
fn one_particle_matrix<T: Real>(lattice: &LatticeSpec<T>, multipliers: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    let sites = lattice.num_sites();
    let mut h = vec![czero(); sites * sites];
    for y in 0..sites {
        let col = apply_fourier_multiplier(multipliers, &TestFunction::delta(*lattice, y)?)?;
        for (x, v) in col.values().iter().enumerate() {
            h[x * sites + y] = *v;
        }
    }
    let scale = h.iter().fold(T::zero(), |m, v| m.max(v.norm()));
    let chop = scale * T::epsilon() * lit(64.0);
    let half = lit::<T>(0.5);
    let mut sym = vec![czero(); sites * sites];
    for x in 0..sites {
        for y in 0..sites {
            let v = (h[x * sites + y] + h[y * sites + x].conj()) * half;
            let re = if Float::abs(v.re) <= chop { T::zero() } else { v.re };
            let im = if Float::abs(v.im) <= chop { T::zero() } else { v.im };
            sym[x * sites + y] = Complex::new(re, im);
        }
    }
    Ok(sym)
}


#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Generator<T> {
    /// Total particle number.
    Number,
    /// Bargmann mass `m0 · N`.
    Mass(T),
    /// Free Hamiltonian `Σ_k ε_k a†_k a_k` with Galilean dispersion of mass `m0`.
    Hamiltonian(T),
    /// Lattice momentum along one axis.
    Momentum(usize),
}

pub fn generator<T: Real>(space: &FockSpace<T>, which: Generator<T>) -> Result<SparseOperator<T>> {
    let lattice = *space.lattice();
    match which {
        Generator::Number => Ok(diagonal_number(space, T::one())),
        Generator::Mass(m0) => {
            if !(m0 > T::zero()) {
                return Err(Error::NonPositiveMass(m0.to_f64().unwrap_or(f64::NAN)));
            }
            Ok(diagonal_number(space, m0))
        }
        Generator::Hamiltonian(m0) => {
            let spec = mode_spectrum(lattice, Dispersion::Galilean { mass: m0 })?;
            let mult: Vec<_> = spec.values().iter().map(|&e| Complex::new(e, T::zero())).collect();
            Ok(second_quantize(space, &one_particle_matrix(&lattice, &mult)?))
        }
        Generator::Momentum(axis) => {
            let mult = (0..lattice.num_sites())
                .map(|k| lattice_momentum(&lattice, axis, k).map(|p| Complex::new(p, T::zero())))
                .collect::<Result<Vec<_>>>()?;
            Ok(second_quantize(space, &one_particle_matrix(&lattice, &mult)?))
        }
    }
}

fn diagonal_number<T: Real>(space: &FockSpace<T>, factor: T) -> SparseOperator<T> {
    let triplets = (0..space.dimension()).map(|i| (i, i, Complex::new(from_usize::<T>(space.total_occupation(i)) * factor, T::zero())));
    SparseOperator::from_triplets(space, triplets, Some(0))
}

/// Outcome of [`grading_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Grade {
    /// Every nonzero entry shifts the particle number by this amount.
    Definite(i32),
    /// The zero operator is compatible with every grade.
    Any,
    /// Entries connect sectors at these distinct shifts.
    Mixed(Vec<i32>),
}

impl Grade {
    pub fn definite(&self) -> Option<i32> {
        match self {
            Grade::Definite(n) => Some(*n),
            _ => None,
        }
    }
}

/// Determines the particle-number shift of an operator from its nonzero entries.
pub fn grading_check<T: Real>(op: &SparseOperator<T>) -> Grade {
    let space = op.space();
    let mut shifts: Vec<i32> = op
        .iter()
        .map(|(r, c, _)| space.total_occupation(r) as i32 - space.total_occupation(c) as i32)
        .collect();
    shifts.sort_unstable();
    shifts.dedup();
    match shifts.len() {
        0 => Grade::Any,
        1 => Grade::Definite(shifts[0]),
        _ => Grade::Mixed(shifts),
    }
}

/// Orthonormal basis builder with a relative rank threshold.
#[derive(Debug, Clone)]
pub struct SpanBuilder<T> {
    basis: Vec<Vec<Complex<T>>>,
    tolerance: T,
}

impl<T: Real> SpanBuilder<T> {
    pub fn new(tolerance: T) -> Self {
        Self { basis: Vec::new(), tolerance }
    }

    /// Adds `v` if it is independent of the current span; returns the new orthonormal vector.
    pub fn insert(&mut self, v: &[Complex<T>]) -> Option<&[Complex<T>]> {
        let scale = vec_norm(v);
        if scale == T::zero() {
            return None;
        }
        let mut w = v.to_vec();
        // two passes of modified Gram–Schmidt
        for _ in 0..2 {
            for b in &self.basis {
                let p = vec_dot(b, &w);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi = *wi - bi * p;
                }
            }
        }
        let norm = vec_norm(&w);
        if norm <= self.tolerance * scale.max(T::one()) {
            return None;
        }
        for wi in w.iter_mut() {
            *wi = *wi / norm;
        }
        self.basis.push(w);
        self.basis.last().map(|v| v.as_slice())
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Complex<T>>] {
        &self.basis
    }
}

/// Dimension of the span of all words of length `≤ max_word_len` in the single-site
/// annihilators and creators of `region`, applied to the vacuum.
pub fn cyclic_span_dimension<T: Real>(space: &FockSpace<T>, region: &Region<T>, max_word_len: usize) -> Result<usize> {
    if region.lattice() != space.lattice() {
        return Err(Error::LatticeMismatch);
    }
    if region.is_empty() {
        return Err(Error::InvalidRegion("region has no sites".into()));
    }
    if max_word_len < space.n_max() {
        return Err(Error::WordLengthTooShort { given: max_word_len, n_max: space.n_max() });
    }
    let mut letters = Vec::with_capacity(2 * region.len());
    for &site in region.sites() {
        let delta = TestFunction::delta(*space.lattice(), site)?;
        letters.push(field_operator(space, &delta, FieldKind::Annihilate)?);
        letters.push(field_operator(space, &delta, FieldKind::Create)?);
    }
    let mut span = SpanBuilder::new(lit::<T>(RANK_TOLERANCE));
    let mut frontier = vec![span.insert(&space.vacuum()).expect("vacuum is nonzero").to_vec()];
    // span_k = span_{k-1} + letters·(vectors added at step k-1)
    for _ in 0..max_word_len {
        let mut next = Vec::new();
        for v in &frontier {
            for letter in &letters {
                if let Some(added) = span.insert(&letter.apply(v)) {
                    next.push(added.to_vec());
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(span.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::inner_product;

    fn chain(n: usize) -> LatticeSpec<f64> {
        LatticeSpec::chain(n, 1.0).unwrap()
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(9, 3), 84);
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(66, 2), 2145);
    }

    #[test]
    fn dimensions_follow_stars_and_bars() {
        for (sites, n_max, want) in [(2, 3, 10), (6, 3, 84), (3, 3, 20), (4, 2, 15)] {
            let s = build_fock(chain(sites), n_max).unwrap();
            assert_eq!(s.dimension(), want);
        }
    }

    #[test]
    fn dimension_cap_is_enforced() {
        let err = build_fock_with_cap(chain(10), 5, 1000).unwrap_err();
        assert_eq!(err, Error::DimensionCap { dimension: 3003, cap: 1000 });
        assert!(err.to_string().contains("1000"));
        assert_eq!(build_fock(chain(4), 0).unwrap_err(), Error::InvalidTruncation);
    }

    #[test]
    fn basis_is_graded_and_vacuum_first() {
        let s = build_fock(chain(3), 2).unwrap();
        assert_eq!(s.occupation(0), &[0, 0, 0]);
        assert_eq!(s.occupation(1), &[1, 0, 0]);
        assert_eq!(s.occupation(3), &[0, 0, 1]);
        assert_eq!(s.occupation(4), &[2, 0, 0]);
        assert_eq!(s.sector(1), 1..4);
        assert_eq!(s.sector(2), 4..10);
        for i in 1..s.dimension() {
            assert!(s.total_occupation(i - 1) <= s.total_occupation(i));
            assert_eq!(s.index_of(s.occupation(i)), Some(i));
        }
    }

    #[test]
    fn annihilator_kills_vacuum_and_creator_places_particle() {
        let l = LatticeSpec::new(1, 4, 0.5).unwrap();
        let s = build_fock(l, 2).unwrap();
        let g = TestFunction::delta(l, 2).unwrap();
        let a = field_operator(&s, &g, FieldKind::Annihilate).unwrap();
        assert!(a.apply(&s.vacuum()).iter().all(|z| *z == Complex::new(0.0, 0.0)));
        let out = field_operator(&s, &g, FieldKind::Create).unwrap().apply(&s.vacuum());
        let idx = s.index_of(&[0, 0, 1, 0]).unwrap();
        assert!((out[idx] - Complex::new(0.5f64.sqrt(), 0.0)).norm() < 1e-15);
        assert_eq!(out.iter().filter(|z| **z != Complex::new(0.0, 0.0)).count(), 1);
    }

    #[test]
    fn number_operator_single_mode_levels() {
        // two sites with the particle confined to site 0's ladder: N is diag(total occupation)
        let s = build_fock(chain(2), 3).unwrap();
        let n = generator(&s, Generator::Number).unwrap();
        let diag: Vec<f64> = (0..s.dimension()).map(|i| n.get(i, i).re).collect();
        assert_eq!(diag, vec![0.0, 1.0, 1.0, 2.0, 2.0, 2.0, 3.0, 3.0, 3.0, 3.0]);
        let site0: Vec<f64> = [[0u8, 0], [1, 0], [2, 0], [3, 0]].iter().map(|o| n.get(s.index_of(o).unwrap(), s.index_of(o).unwrap()).re).collect();
        assert_eq!(site0, vec![0.0, 1.0, 2.0, 3.0]);
    }

    #[test]
    fn hamiltonian_matches_finite_difference_laplacian() {
        let l = LatticeSpec::new(1, 5, 0.8).unwrap();
        let s = build_fock(l, 1).unwrap();
        let m0 = 1.3;
        let h = generator(&s, Generator::Hamiltonian(m0)).unwrap();
        // one-particle block equals -Δ/(2 m0) with the nearest-neighbour stencil
        let a2 = 0.8 * 0.8;
        for x in 0..5 {
            for y in 0..5 {
                let want = if x == y {
                    2.0 / a2 / (2.0 * m0)
                } else if (x + 1) % 5 == y || (y + 1) % 5 == x {
                    -1.0 / a2 / (2.0 * m0)
                } else {
                    0.0
                };
                let got = h.get(1 + x, 1 + y);
                assert!((got - Complex::new(want, 0.0)).norm() < 1e-14, "({x},{y})");
            }
        }
        assert!(h.apply(&s.vacuum()).iter().all(|z| *z == Complex::new(0.0, 0.0)));
    }

    #[test]
    fn generators_are_hermitian_and_grade_zero() {
        let l = LatticeSpec::new(2, 3, 1.0).unwrap();
        let s = build_fock(l, 2).unwrap();
        for g in [Generator::Number, Generator::Mass(2.0), Generator::Hamiltonian(1.0), Generator::Momentum(0), Generator::Momentum(1)] {
            let op = generator(&s, g).unwrap();
            assert!(op.hermiticity_defect() < 1e-14, "{g:?}");
            assert_eq!(grading_check(&op), Grade::Definite(0));
        }
        assert_eq!(generator(&s, Generator::Momentum(2)).unwrap_err(), Error::UnknownAxis { axis: 2, dims: 2 });
    }

    #[test]
    fn grades_of_fields_and_products() {
        let l = chain(4);
        let s = build_fock(l, 3).unwrap();
        let g1 = TestFunction::delta(l, 0).unwrap();
        let g2 = TestFunction::from_real(l, &[0.0, 1.0, -1.0, 0.5]).unwrap();
        let a = field_operator(&s, &g1, FieldKind::Annihilate).unwrap();
        let c1 = field_operator(&s, &g1, FieldKind::Create).unwrap();
        let c2 = field_operator(&s, &g2, FieldKind::Create).unwrap();
        assert_eq!(grading_check(&a), Grade::Definite(-1));
        let word = c1.mul(&c2).unwrap().mul(&a).unwrap();
        assert_eq!(grading_check(&word), Grade::Definite(1));
        assert_eq!(word.grade(), Some(1));
        let herm = a.add(&c1).unwrap();
        assert_eq!(grading_check(&herm), Grade::Mixed(vec![-1, 1]));
        assert_eq!(herm.grade(), None);
        assert_eq!(grading_check(&SparseOperator::zero(&s)), Grade::Any);
    }

    #[test]
    fn guarded_ccr_single_pair() {
        let l = chain(3);
        let s = build_fock(l, 3).unwrap();
        let g = TestFunction::from_real(l, &[1.0, 0.5, -2.0]).unwrap();
        let a = field_operator(&s, &g, FieldKind::Annihilate).unwrap();
        let ad = field_operator(&s, &g, FieldKind::Create).unwrap();
        let comm = a.commutator(&ad).unwrap();
        let c = inner_product(&g, &g).unwrap();
        let guard = GuardedSubspace::new(&s, 2);
        let dev = guard.restrict(&comm).sub(&guard.projector().scale(c)).unwrap();
        assert!(dev.max_abs() < 1e-12);
        // the truncation edge violates the c-number relation
        assert!(comm.sub(&SparseOperator::identity(&s).scale(c)).unwrap().max_abs() > 1.0);
    }

    #[test]
    fn cyclic_span_matches_region_fock_dimension() {
        let l = chain(6);
        let s = build_fock(l, 3).unwrap();
        for (len, want) in [(3, 20), (5, 56), (6, 84)] {
            let g = Region::window(l, 0, len).unwrap();
            assert_eq!(cyclic_span_dimension(&s, &g, 3).unwrap(), want);
        }
        let g = Region::window(l, 0, 2).unwrap();
        assert!(matches!(cyclic_span_dimension(&s, &g, 2), Err(Error::WordLengthTooShort { .. })));
    }
}
