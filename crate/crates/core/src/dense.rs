//! Small dense complex matrices: products, LU solves and the matrix exponential.
//!
//! The exponential uses scaling and squaring with diagonal Padé approximants of degree
//! 3, 5, 7, 9 or 13, selected from the 1-norm (Higham 2005).

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cone, czero, lit, Real};

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> DenseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![czero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = cone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_diagonal(diag: &[Complex<T>]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = *d;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v * s).collect() }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == czero() {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, b) in orow.iter_mut().zip(brow) {
                    *o = *o + a * b;
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                self.data[r * self.cols..(r + 1) * self.cols].iter().zip(v).fold(czero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &self.matmul(other) - &other.matmul(self)
    }

    /// Maximum absolute column sum.
    pub fn norm_one(&self) -> T {
        (0..self.cols)
            .map(|c| (0..self.rows).fold(T::zero(), |acc, r| acc + self[(r, c)].norm()))
            .fold(T::zero(), |m, v| m.max(v))
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, v| acc + v.norm_sqr()).sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, v| m.max(v.norm()))
    }

    /// Upper-left `n × n` block.
    pub fn leading_block(&self, n: usize) -> Self {
        Self::from_fn(n.min(self.rows), n.min(self.cols), |r, c| self[(r, c)])
    }

    /// Solves `self · X = rhs` by LU decomposition with partial pivoting.
    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        assert!(self.is_square() && rhs.rows == self.rows);
        let n = self.rows;
        let mut lu = self.clone();
        let mut x = rhs.clone();
        for k in 0..n {
            let (p, pmax) = (k..n).map(|r| (r, lu[(r, k)].norm())).fold((k, T::zero()), |best, cur| {
                if cur.1 > best.1 {
                    cur
                } else {
                    best
                }
            });
            if pmax == T::zero() {
                return Err(Error::Singular);
            }
            if p != k {
                lu.swap_rows(p, k);
                x.swap_rows(p, k);
            }
            let pivot = lu[(k, k)];
            for r in (k + 1)..n {
                let factor = lu[(r, k)] / pivot;
                if factor == czero() {
                    continue;
                }
                for c in k..n {
                    let v = lu[(k, c)];
                    lu[(r, c)] = lu[(r, c)] - factor * v;
                }
                for c in 0..x.cols {
                    let v = x[(k, c)];
                    x[(r, c)] = x[(r, c)] - factor * v;
                }
            }
        }
        for k in (0..n).rev() {
            let pivot = lu[(k, k)];
            for c in 0..x.cols {
                let mut acc = x[(k, c)];
                for j in (k + 1)..n {
                    acc = acc - lu[(k, j)] * x[(j, c)];
                }
                x[(k, c)] = acc / pivot;
            }
        }
        Ok(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl<T> Index<(usize, usize)> for DenseMatrix<T> {
    type Output = Complex<T>;
    fn index(&self, (r, c): (usize, usize)) -> &Complex<T> {
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for DenseMatrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[r * self.cols + c]
    }
}

impl<T: Real> Add for &DenseMatrix<T> {
    type Output = DenseMatrix<T>;
    fn add(self, rhs: Self) -> DenseMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        DenseMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl<T: Real> Sub for &DenseMatrix<T> {
    type Output = DenseMatrix<T>;
    fn sub(self, rhs: Self) -> DenseMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        DenseMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl<T: Real> Mul for &DenseMatrix<T> {
    type Output = DenseMatrix<T>;
    fn mul(self, rhs: Self) -> DenseMatrix<T> {
        self.matmul(rhs)
    }
}

const PADE_3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const PADE_5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const PADE_7: [f64; 8] = [17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0];
const PADE_9: [f64; 10] =
    [17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0, 2162160.0, 110880.0, 3960.0, 90.0, 1.0];
const PADE_13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const THETA: [(usize, f64); 4] = [(3, 1.495585217958292e-2), (5, 2.539398330063230e-1), (7, 9.504178996162932e-1), (9, 2.097847961257068)];
const THETA_13: f64 = 5.371920351148152;

fn lincomb<T: Real>(terms: &[(f64, &DenseMatrix<T>)], n: usize) -> DenseMatrix<T> {
    let mut out = DenseMatrix::zeros(n, n);
    for (coef, m) in terms {
        let c = Complex::new(lit::<T>(*coef), T::zero());
        for (o, v) in out.data.iter_mut().zip(&m.data) {
            *o = *o + *v * c;
        }
    }
    out
}

/// Matrix exponential by scaling and squaring.
pub fn expm<T: Real>(a: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
    assert!(a.is_square(), "expm needs a square matrix");
    let n = a.rows();
    if n == 0 {
        return Ok(a.clone());
    }
    let ident = DenseMatrix::identity(n);
    let norm = a.norm_one().to_f64().unwrap_or(f64::INFINITY);
    let a2 = a.matmul(a);
    for &(m, theta) in &THETA {
        if norm <= theta {
            let coeffs: &[f64] = match m {
                3 => &PADE_3,
                5 => &PADE_5,
                7 => &PADE_7,
                _ => &PADE_9,
            };
            // odd part U = A Σ b_{2j+1} A^{2j}, even part V = Σ b_{2j} A^{2j}
            let mut powers = vec![ident.clone(), a2.clone()];
            while powers.len() <= m / 2 {
                let next = powers.last().unwrap().matmul(&a2);
                powers.push(next);
            }
            let odd: Vec<(f64, &DenseMatrix<T>)> = (0..=m / 2).map(|j| (coeffs[2 * j + 1], &powers[j])).collect();
            let even: Vec<(f64, &DenseMatrix<T>)> = (0..=m / 2).map(|j| (coeffs[2 * j], &powers[j])).collect();
            let u = a.matmul(&lincomb(&odd, n));
            let v = lincomb(&even, n);
            return (&v - &u).solve(&(&v + &u));
        }
    }
    let s = if norm > THETA_13 { (norm / THETA_13).log2().ceil().max(0.0) as i32 } else { 0 };
    let scale = Complex::new(lit::<T>(0.5f64.powi(s)), T::zero());
    let a1 = a.scale(scale);
    let a2 = a1.matmul(&a1);
    let a4 = a2.matmul(&a2);
    let a6 = a4.matmul(&a2);
    let b = &PADE_13;
    let u_inner = lincomb(&[(b[13], &a6), (b[11], &a4), (b[9], &a2)], n);
    let u_outer = lincomb(&[(b[7], &a6), (b[5], &a4), (b[3], &a2), (b[1], &ident)], n);
    let u = a1.matmul(&(&a6.matmul(&u_inner) + &u_outer));
    let v_inner = lincomb(&[(b[12], &a6), (b[10], &a4), (b[8], &a2)], n);
    let v_outer = lincomb(&[(b[6], &a6), (b[4], &a4), (b[2], &a2), (b[0], &ident)], n);
    let v = &a6.matmul(&v_inner) + &v_outer;
    let mut r = (&v - &u).solve(&(&v + &u))?;
    for _ in 0..s {
        r = r.matmul(&r);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = DenseMatrix<f64>;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn solve_recovers_rhs() {
        let a = M::from_fn(3, 3, |r, col| c((r * 3 + col) as f64 + if r == col { 5.0 } else { 0.0 }, (r as f64) - (col as f64)));
        let x = M::from_fn(3, 2, |r, col| c(r as f64 + 1.0, col as f64));
        let b = a.matmul(&x);
        let y = a.solve(&b).unwrap();
        assert!((&y - &x).max_abs() < 1e-12);
    }

    #[test]
    fn singular_solve_fails() {
        let a = M::zeros(2, 2);
        assert_eq!(a.solve(&M::identity(2)), Err(Error::Singular));
    }

    #[test]
    fn expm_of_diagonal_matches_scalar_exponentials() {
        for scale in [1e-3, 0.2, 1.0, 3.0, 40.0] {
            let d = [c(0.5, 1.0), c(-1.0, 0.25), c(0.0, -2.0)].map(|z| z * scale);
            let e = expm(&M::from_diagonal(&d)).unwrap();
            for (i, z) in d.iter().enumerate() {
                let want = z.exp();
                assert!((e[(i, i)] - want).norm() <= 1e-12 * want.norm().max(1.0), "scale {scale}");
            }
        }
    }

    #[test]
    fn expm_of_nilpotent_is_polynomial() {
        // N² = 0 ⇒ exp(N) = 1 + N
        let mut nil = M::zeros(3, 3);
        nil[(0, 2)] = c(2.0, -1.0);
        let e = expm(&nil).unwrap();
        let want = &M::identity(3) + &nil;
        assert!((&e - &want).max_abs() < 1e-15);
    }

    #[test]
    fn expm_of_antihermitian_is_unitary() {
        let h = M::from_fn(6, 6, |r, col| {
            let x = ((r + 1) * (col + 2)) as f64 * 0.37;
            if r == col {
                c(x.sin(), 0.0)
            } else if r < col {
                c(x.cos(), x.sin() * 0.5)
            } else {
                let y = ((col + 1) * (r + 2)) as f64 * 0.37;
                c(y.cos(), -y.sin() * 0.5)
            }
        });
        let u = expm(&h.scale(c(0.0, 7.5))).unwrap();
        let should_be_one = u.adjoint().matmul(&u);
        assert!((&should_be_one - &M::identity(6)).max_abs() < 1e-12);
    }

    #[test]
    fn expm_rotation_generator() {
        // exp(θ [[0,-1],[1,0]]) is the rotation by θ
        let theta = 2.3;
        let mut g = M::zeros(2, 2);
        g[(0, 1)] = c(-theta, 0.0);
        g[(1, 0)] = c(theta, 0.0);
        let e = expm(&g).unwrap();
        assert!((e[(0, 0)] - c(theta.cos(), 0.0)).norm() < 1e-14);
        assert!((e[(1, 0)] - c(theta.sin(), 0.0)).norm() < 1e-14);
    }
}
