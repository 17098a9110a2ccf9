//! Compressed sparse row operators on a truncated Fock space, with an optional charge grade.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::fock::FockSpace;
use crate::scalar::{cone, czero, lit, Real};

#[derive(Debug, Clone)]
pub struct SparseOperator<T> {
    space: FockSpace<T>,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    values: Vec<Complex<T>>,
    grade: Option<i32>,
}

impl<T: Real> SparseOperator<T> {
    /// Builds from `(row, col, value)` triplets; duplicates are summed and exact zeros dropped.
    pub fn from_triplets(
        space: &FockSpace<T>,
        triplets: impl IntoIterator<Item = (usize, usize, Complex<T>)>,
        grade: Option<i32>,
    ) -> Self {
        let dim = space.dimension();
        let mut acc: BTreeMap<(usize, usize), Complex<T>> = BTreeMap::new();
        for (r, c, v) in triplets {
            assert!(r < dim && c < dim, "triplet ({r}, {c}) outside dimension {dim}");
            let e = acc.entry((r, c)).or_insert_with(czero);
            *e = *e + v;
        }
        let mut row_ptr = vec![0; dim + 1];
        let mut cols = Vec::with_capacity(acc.len());
        let mut values = Vec::with_capacity(acc.len());
        for ((r, c), v) in acc {
            if v == czero() {
                continue;
            }
            row_ptr[r + 1] += 1;
            cols.push(c);
            values.push(v);
        }
        for i in 0..dim {
            row_ptr[i + 1] += row_ptr[i];
        }
        Self { space: space.clone(), row_ptr, cols, values, grade }
    }

    pub fn zero(space: &FockSpace<T>) -> Self {
        Self::from_triplets(space, std::iter::empty(), None)
    }

    pub fn identity(space: &FockSpace<T>) -> Self {
        Self::from_triplets(space, (0..space.dimension()).map(|i| (i, i, cone())), Some(0))
    }

    pub fn from_dense(space: &FockSpace<T>, m: &DenseMatrix<T>, grade: Option<i32>) -> Self {
        assert_eq!(m.rows(), space.dimension());
        let triplets = (0..m.rows())
            .flat_map(|r| (0..m.cols()).map(move |c| (r, c)))
            .map(|(r, c)| (r, c, m[(r, c)]))
            .filter(|(_, _, v)| *v != czero());
        Self::from_triplets(space, triplets, grade)
    }

    pub fn space(&self) -> &FockSpace<T> {
        &self.space
    }

    pub fn dimension(&self) -> usize {
        self.space.dimension()
    }

    /// Declared charge grade, if any.
    pub fn grade(&self) -> Option<i32> {
        self.grade
    }

    pub fn with_grade(mut self, grade: Option<i32>) -> Self {
        self.grade = grade;
        self
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, Complex<T>)> + '_ {
        (0..self.dimension()).flat_map(move |r| {
            (self.row_ptr[r]..self.row_ptr[r + 1]).map(move |k| (r, self.cols[k], self.values[k]))
        })
    }

    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        let range = self.row_ptr[row]..self.row_ptr[row + 1];
        match self.cols[range.clone()].binary_search(&col) {
            Ok(k) => self.values[range.start + k],
            Err(_) => czero(),
        }
    }

    pub fn apply(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(v.len(), self.dimension());
        (0..self.dimension())
            .map(|r| {
                (self.row_ptr[r]..self.row_ptr[r + 1]).fold(czero(), |acc, k| acc + self.values[k] * v[self.cols[k]])
            })
            .collect()
    }

    fn check_space(&self, other: &Self) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(())
    }

    /// Operator product `self · other`; grades add.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        let mut triplets = Vec::new();
        for r in 0..self.dimension() {
            let mut row: BTreeMap<usize, Complex<T>> = BTreeMap::new();
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                let (mid, a) = (self.cols[k], self.values[k]);
                for j in other.row_ptr[mid]..other.row_ptr[mid + 1] {
                    let e = row.entry(other.cols[j]).or_insert_with(czero);
                    *e = *e + a * other.values[j];
                }
            }
            triplets.extend(row.into_iter().map(|(c, v)| (r, c, v)));
        }
        let grade = match (self.grade, other.grade) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        Ok(Self::from_triplets(&self.space, triplets, grade))
    }

    /// `alpha·self + beta·other`; the grade survives only when both grades agree.
    pub fn lincomb(&self, alpha: Complex<T>, other: &Self, beta: Complex<T>) -> Result<Self> {
        self.check_space(other)?;
        let triplets = self.iter().map(|(r, c, v)| (r, c, v * alpha)).chain(other.iter().map(|(r, c, v)| (r, c, v * beta)));
        let grade = if self.grade == other.grade { self.grade } else { None };
        Ok(Self::from_triplets(&self.space, triplets, grade))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.lincomb(cone(), other, cone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.lincomb(cone(), other, -cone::<T>())
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self::from_triplets(&self.space, self.iter().map(|(r, c, v)| (r, c, v * s)), self.grade)
    }

    pub fn adjoint(&self) -> Self {
        Self::from_triplets(&self.space, self.iter().map(|(r, c, v)| (c, r, v.conj())), self.grade.map(|g| -g))
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn frobenius_norm(&self) -> T {
        self.values.iter().fold(T::zero(), |acc, v| acc + v.norm_sqr()).sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.norm()))
    }

    /// Largest deviation from Hermiticity, `max |A_ij − conj(A_ji)|`.
    pub fn hermiticity_defect(&self) -> T {
        self.iter().fold(T::zero(), |m, (r, c, v)| m.max((v - self.get(c, r).conj()).norm()))
    }

    pub fn to_dense(&self) -> DenseMatrix<T> {
        let mut m = DenseMatrix::zeros(self.dimension(), self.dimension());
        for (r, c, v) in self.iter() {
            m[(r, c)] = v;
        }
        m
    }

    /// Keeps only entries whose row and column both have total occupation `≤ max_total`.
    pub fn compress_to(&self, max_total: usize) -> Self {
        let keep = |i: usize| self.space.total_occupation(i) <= max_total;
        Self::from_triplets(&self.space, self.iter().filter(|&(r, c, _)| keep(r) && keep(c)), self.grade)
    }

    /// Coordinate dump: header `fock |Λ| n_max grade` followed by `row col re im` lines.
    pub fn to_dump(&self) -> String {
        let grade = self.grade.map_or_else(|| "none".to_string(), |g| g.to_string());
        let mut out = format!("fock {} {} {}\n", self.space.lattice().num_sites(), self.space.n_max(), grade);
        for (r, c, v) in self.iter() {
            let re = v.re.to_f64().unwrap_or(f64::NAN);
            let im = v.im.to_f64().unwrap_or(f64::NAN);
            writeln!(out, "{r} {c} {re:.16e} {im:.16e}").expect("writing to a String");
        }
        out
    }

    /// Parses [`SparseOperator::to_dump`] output against an existing space.
    pub fn from_dump(space: &FockSpace<T>, text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(Error::Dump { line: 1, reason: "missing header".into() })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let bad = |line: usize, reason: &str| Error::Dump { line, reason: reason.to_string() };
        if fields.len() != 4 || fields[0] != "fock" {
            return Err(bad(1, "header must read `fock <sites> <n_max> <grade>`"));
        }
        let sites: usize = fields[1].parse().map_err(|_| bad(1, "site count"))?;
        let n_max: usize = fields[2].parse().map_err(|_| bad(1, "n_max"))?;
        if sites != space.lattice().num_sites() || n_max != space.n_max() {
            return Err(bad(1, "dump does not match the target space"));
        }
        let grade = match fields[3] {
            "none" => None,
            g => Some(g.parse().map_err(|_| bad(1, "grade"))?),
        };
        let mut triplets = Vec::new();
        for (i, line) in lines {
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 4 {
                return Err(bad(i + 1, "expected `row col re im`"));
            }
            let r: usize = f[0].parse().map_err(|_| bad(i + 1, "row"))?;
            let c: usize = f[1].parse().map_err(|_| bad(i + 1, "col"))?;
            let re: f64 = f[2].parse().map_err(|_| bad(i + 1, "real part"))?;
            let im: f64 = f[3].parse().map_err(|_| bad(i + 1, "imaginary part"))?;
            if r >= space.dimension() || c >= space.dimension() {
                return Err(bad(i + 1, "index out of range"));
            }
            triplets.push((r, c, Complex::new(lit(re), lit(im))));
        }
        Ok(Self::from_triplets(space, triplets, grade))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::build_fock;
    use crate::lattice::LatticeSpec;

    fn space() -> FockSpace<f64> {
        build_fock(LatticeSpec::chain(2, 1.0).unwrap(), 2).unwrap()
    }

    #[test]
    fn duplicates_sum_and_zeros_drop() {
        let s = space();
        let op = SparseOperator::from_triplets(
            &s,
            [(0, 1, Complex::new(1.0, 0.0)), (0, 1, Complex::new(-1.0, 0.0)), (2, 2, Complex::new(0.5, 0.0))],
            None,
        );
        assert_eq!(op.nnz(), 1);
        assert_eq!(op.get(2, 2), Complex::new(0.5, 0.0));
        assert_eq!(op.get(0, 1), Complex::new(0.0, 0.0));
    }

    #[test]
    fn product_matches_dense() {
        let s = space();
        let n = s.dimension();
        let a = SparseOperator::from_triplets(&s, (0..n).map(|i| (i, (i * 2) % n, Complex::new(i as f64, 1.0))), Some(1));
        let b = SparseOperator::from_triplets(&s, (0..n).map(|i| ((i + 1) % n, i, Complex::new(0.5, -(i as f64)))), Some(2));
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.grade(), Some(3));
        let dense = a.to_dense().matmul(&b.to_dense());
        assert!((&ab.to_dense() - &dense).max_abs() < 1e-14);
    }

    #[test]
    fn dump_round_trip() {
        let s = space();
        let op = SparseOperator::from_triplets(&s, [(1, 0, Complex::new(1.0 / 3.0, -2.5)), (4, 3, Complex::new(2f64.sqrt(), 0.0))], Some(-1));
        let text = op.to_dump();
        assert!(text.starts_with("fock 2 2 -1\n"));
        let back = SparseOperator::from_dump(&s, &text).unwrap();
        assert_eq!(back.to_dense(), op.to_dense());
        assert_eq!(back.grade(), Some(-1));
    }

    #[test]
    fn dump_rejects_wrong_space() {
        let s = space();
        let other = build_fock(LatticeSpec::chain(3, 1.0).unwrap(), 2).unwrap();
        let text = SparseOperator::identity(&s).to_dump();
        assert!(matches!(SparseOperator::from_dump(&other, &text), Err(Error::Dump { line: 1, .. })));
    }
}
