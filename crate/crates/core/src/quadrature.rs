//! Gauss–Legendre quadrature and normalised time profiles.

use num_complex::Complex;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, Real};

/// Nodes and weights of the `order`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre<T: Real>(order: usize) -> (Vec<T>, Vec<T>) {
    assert!(order >= 1);
    let n = order;
    let nf = from_usize::<T>(n);
    let mut nodes = vec![T::zero(); n];
    let mut weights = vec![T::zero(); n];
    for i in 0..n.div_ceil(2) {
        // Chebyshev-like initial guess, then Newton on P_n
        let mut x = (T::PI() * (from_usize::<T>(i) + lit(0.75)) / (nf + lit(0.5))).cos();
        let mut dp = T::one();
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x = x - dx;
            if Float::abs(dx) <= T::epsilon() * lit(4.0) {
                let (_, d) = legendre(n, x);
                dp = d;
                break;
            }
        }
        let w = lit::<T>(2.0) / ((T::one() - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = T::zero();
    }
    (nodes, weights)
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    for k in 2..=n {
        let kf = from_usize::<T>(k);
        let p2 = ((kf + kf - T::one()) * x * p1 - (kf - T::one()) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (T::one(), T::zero());
    }
    let nf = from_usize::<T>(n);
    (p1, nf * (x * p1 - p0) / (x * x - T::one()))
}

/// Integrates `f` over `[a, b]` with an `order`-point Gauss–Legendre rule.
pub fn integrate<T: Real, V>(a: T, b: T, order: usize, f: impl Fn(T) -> V) -> V
where
    V: std::ops::Add<Output = V> + std::ops::Mul<T, Output = V>,
{
    let (nodes, weights) = gauss_legendre::<T>(order);
    let half = (b - a) / lit(2.0);
    let mid = (a + b) / lit(2.0);
    let mut terms = nodes.iter().zip(&weights).map(|(&x, &w)| f(mid + half * x) * (w * half));
    let first = terms.next().expect("order >= 1");
    terms.fold(first, |acc, t| acc + t)
}

/// Normalised smearing profile in time, `∫ χ = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeProfile<T> {
    /// `∝ (1 − (t/w)²)⁴` on `|t| < w`.
    Bump { half_width: T },
    /// Gaussian of width `σ`, truncated at `8σ`.
    Gaussian { sigma: T },
}

/// `∫_{-1}^{1} (1 − s²)⁴ ds`.
const BUMP_MASS: f64 = 256.0 / 315.0;

/// `∫_{-8}^{8} e^{-s²/2} ds = √(2π)·erf(8/√2)`.
const GAUSSIAN_MASS: f64 = 2.506_628_274_630_997_4;

impl<T: Real> TimeProfile<T> {
    pub fn bump(half_width: T) -> Result<Self> {
        if !(half_width > T::zero()) || !half_width.is_finite() {
            return Err(Error::InvalidProfile(format!("bump half-width must be positive, got {half_width}")));
        }
        Ok(TimeProfile::Bump { half_width })
    }

    pub fn gaussian(sigma: T) -> Result<Self> {
        if !(sigma > T::zero()) || !sigma.is_finite() {
            return Err(Error::InvalidProfile(format!("gaussian width must be positive, got {sigma}")));
        }
        Ok(TimeProfile::Gaussian { sigma })
    }

    /// Parses `bump` or `gaussian` together with a width.
    pub fn named(name: &str, width: T) -> Result<Self> {
        match name {
            "bump" => Self::bump(width),
            "gaussian" => Self::gaussian(width),
            other => Err(Error::InvalidProfile(format!("unknown profile `{other}` (expected bump or gaussian)"))),
        }
    }

    /// Closed support window `[t0, t1]`.
    pub fn window(&self) -> (T, T) {
        match *self {
            TimeProfile::Bump { half_width } => (-half_width, half_width),
            TimeProfile::Gaussian { sigma } => (-sigma * lit(8.0), sigma * lit(8.0)),
        }
    }

    pub fn eval(&self, t: T) -> T {
        match *self {
            TimeProfile::Bump { half_width } => {
                let s = t / half_width;
                if Float::abs(s) < T::one() {
                    (T::one() - s * s).powi(4) / (half_width * lit(BUMP_MASS))
                } else {
                    T::zero()
                }
            }
            TimeProfile::Gaussian { sigma } => {
                let s = t / sigma;
                if Float::abs(s) <= lit(8.0) {
                    (-(s * s) / lit(2.0)).exp() / (sigma * lit(GAUSSIAN_MASS))
                } else {
                    T::zero()
                }
            }
        }
    }

    /// Quadrature order used for transforms at frequency `eps`: at least `min_order`, growing
    /// with the number of oscillations across the window.
    pub fn transform_order(&self, eps: T, min_order: usize) -> usize {
        let (t0, t1) = self.window();
        let cycles = (Float::abs(eps) * (t1 - t0)).to_f64().unwrap_or(0.0);
        min_order.max(64).max(cycles.ceil() as usize + 64)
    }

    /// `χ̃(ε) = ∫ χ(t) e^{−iεt} dt`.
    pub fn fourier(&self, eps: T, min_order: usize) -> Complex<T> {
        let (t0, t1) = self.window();
        let order = self.transform_order(eps, min_order);
        integrate(t0, t1, order, |t: T| {
            let phase = -eps * t;
            Complex::new(phase.cos(), phase.sin()) * self.eval(t)
        })
    }

    /// Mass of the profile by quadrature; `1` up to rounding.
    pub fn total_mass(&self) -> T {
        let (t0, t1) = self.window();
        integrate(t0, t1, 128, |t| self.eval(t))
    }
}

/// Nodes and weights `(t_i, w_i χ(t_i))` for smearing against `profile`.
pub fn profile_rule<T: Real>(profile: &TimeProfile<T>, order: usize) -> Vec<(T, T)> {
    let (t0, t1) = profile.window();
    let (nodes, weights) = gauss_legendre::<T>(order);
    let half = (t1 - t0) / lit(2.0);
    let mid = (t0 + t1) / lit(2.0);
    nodes.iter().zip(&weights).map(|(&x, &w)| {
        let t = mid + half * x;
        (t, w * half * profile.eval(t))
    })
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two_and_nodes_are_symmetric() {
        for order in [1, 2, 5, 8, 32, 64, 128] {
            let (x, w) = gauss_legendre::<f64>(order);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13, "order {order}");
            for i in 0..order {
                assert!((x[i] + x[order - 1 - i]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn exact_for_polynomials_up_to_degree_2n_minus_1() {
        let (x, w) = gauss_legendre::<f64>(6);
        for deg in 0..12 {
            let got: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(deg)).sum();
            let want = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
            assert!((got - want).abs() < 1e-14, "degree {deg}");
        }
    }

    #[test]
    fn profiles_are_normalised() {
        for p in [TimeProfile::bump(1.0).unwrap(), TimeProfile::bump(0.05).unwrap(), TimeProfile::gaussian(0.3).unwrap()] {
            assert!((p.total_mass() - 1.0).abs() < 1e-13, "{p:?}");
            assert!((p.fourier(0.0, 64) - Complex::new(1.0, 0.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn named_profiles() {
        assert_eq!(TimeProfile::named("bump", 2.0).unwrap(), TimeProfile::Bump { half_width: 2.0 });
        assert!(TimeProfile::<f64>::named("boxcar", 1.0).is_err());
        assert!(TimeProfile::<f64>::bump(0.0).is_err());
    }

    #[test]
    fn symmetric_profiles_have_real_transforms() {
        let p = TimeProfile::bump(1.0).unwrap();
        for eps in [0.3, 1.0, 2.0, 7.5] {
            assert!(p.fourier(eps, 64).im.abs() < 1e-15);
        }
    }
}
