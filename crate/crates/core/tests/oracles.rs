use bargmann_core::spectrum::apply_spectral_function;
use bargmann_core::{
    build_fock, complex_structure_j, field_operator, leakage_ratio, mode_spectrum, CauchyDoublet64, Dispersion, FieldKind, Lattice64,
    LatticeSpec, Region64, TestFunction64, TimeProfile64, C64,
};
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use proptest::prelude::*;

fn occ(text: &str) -> Vec<u8> {
    text.trim().split(',').map(|s| s.parse().unwrap()).collect()
}

#[test]
fn field_operator_matches_golden_dump() {
    let l = LatticeSpec::chain(2, 4.0).unwrap();
    let s = build_fock(l, 2).unwrap();
    let g = TestFunction64::new(l, vec![C64::new(1.0, 0.0), C64::new(0.0, 2.0)]).unwrap();
    let op = field_operator(&s, &g, FieldKind::Annihilate).unwrap();
    let golden = include_str!("golden/field_chain2.txt");
    let mut expected = 0;
    for line in golden.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()) {
        let (states, value) = line.split_once(':').unwrap();
        let (from, to) = states.split_once("->").unwrap();
        let mut parts = value.split_whitespace().map(|x| x.parse::<f64>().unwrap());
        let want = C64::new(parts.next().unwrap(), parts.next().unwrap());
        let col = s.index_of(&occ(from)).unwrap();
        let row = s.index_of(&occ(to)).unwrap();
        assert!((op.get(row, col) - want).norm() < 1e-15, "{line}: got {}", op.get(row, col));
        expected += 1;
    }
    assert_eq!(op.iter().filter(|(_, _, v)| v.norm() > 0.0).count(), expected);
}

/// Periodic lattice Laplacian `-Δ` as a dense real matrix.
fn dense_laplacian(l: &Lattice64) -> DMatrix<f64> {
    let n = l.num_sites();
    let len = l.sites_per_axis();
    let a2 = l.spacing() * l.spacing();
    let mut m = DMatrix::zeros(n, n);
    for site in 0..n {
        let c = l.coords(site);
        for axis in 0..l.dims() {
            for step in [1, len - 1] {
                let mut nb = c.clone();
                nb[axis] = (nb[axis] + step) % len;
                let j = l.site_index(&nb);
                m[(site, site)] += 1.0 / a2;
                m[(site, j)] -= 1.0 / a2;
            }
        }
    }
    m
}

fn dense_function(l: &Lattice64, mass: f64, phi: impl Fn(f64) -> f64) -> DMatrix<f64> {
    let n = l.num_sites();
    let h2 = dense_laplacian(l) + DMatrix::identity(n, n) * (mass * mass);
    let eig = SymmetricEigen::new(h2);
    let d = DMatrix::from_diagonal(&eig.eigenvalues.map(|x| phi(x.max(0.0).sqrt())));
    &eig.eigenvectors * d * eig.eigenvectors.transpose()
}

fn as_vector(f: &TestFunction64) -> DVector<f64> {
    DVector::from_iterator(f.values().len(), f.values().iter().map(|v| v.re))
}

#[test]
fn spectral_function_matches_dense_diagonalisation() {
    for (dims, sites, spacing, mass) in [(1, 12, 0.5, 1.3), (2, 5, 1.0, 0.7), (3, 3, 2.0, 2.0)] {
        let l = LatticeSpec::new(dims, sites, spacing).unwrap();
        let spec = mode_spectrum(l, Dispersion::Relativistic { mass }).unwrap();
        let n = l.num_sites();
        let u: Vec<f64> = (0..n).map(|i| ((i * 7 + 3) % 11) as f64 - 5.0).collect();
        let f = TestFunction64::from_real(l, &u).unwrap();
        for phi in [|x: f64| x, |x: f64| 1.0 / x, |x: f64| (-x).exp()] {
            let fast = apply_spectral_function(&spec, phi, &f).unwrap();
            let dense = dense_function(&l, mass, phi) * as_vector(&f);
            let err = fast.values().iter().zip(dense.iter()).fold(0.0f64, |m, (a, b)| m.max((a.re - b).abs().max(a.im.abs())));
            assert!(err < 1e-11, "dims {dims}: err {err}");
        }
    }
}

#[test]
fn leakage_matches_dense_oracle() {
    let l = LatticeSpec::chain(64, 1.0).unwrap();
    let spec = mode_spectrum(l, Dispersion::Relativistic { mass: 1.0 }).unwrap();
    let region = Region64::window(l, 21, 22).unwrap();
    let d = CauchyDoublet64::new(TestFunction64::window_bump(l, 21, 22).unwrap(), TestFunction64::zeros(l)).unwrap();
    let fast = leakage_ratio(&d, &region, &spec).unwrap();

    let h = dense_function(&l, 1.0, |x| x);
    let hinv = dense_function(&l, 1.0, |x| 1.0 / x);
    let j0 = -(&hinv * as_vector(d.u1()));
    let j1 = &h * as_vector(d.u0());
    let total = j0.norm_squared() + j1.norm_squared();
    let outside: f64 = (0..64).filter(|s| !region.contains(*s)).map(|s| j0[s] * j0[s] + j1[s] * j1[s]).sum();
    let oracle = outside / total;
    assert!(oracle > 1e-8, "oracle {oracle:e}");
    assert!(((fast - oracle) / oracle).abs() < 1e-6, "fast {fast:e} oracle {oracle:e}");
}

/// Adaptive Simpson quadrature.
fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn rule(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (f(a) + 4.0 * f((a + b) / 2.0) + f(b))
    }
    fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = (a + b) / 2.0;
        let (l, r) = (rule(f, a, m), rule(f, m, b));
        if depth == 0 || (l + r - whole).abs() <= 15.0 * tol {
            l + r + (l + r - whole) / 15.0
        } else {
            rec(f, a, m, l, tol / 2.0, depth - 1) + rec(f, m, b, r, tol / 2.0, depth - 1)
        }
    }
    rec(f, a, b, rule(f, a, b), tol, 40)
}

#[test]
fn profile_transform_matches_adaptive_simpson() {
    for p in [TimeProfile64::bump(1.0).unwrap(), TimeProfile64::gaussian(0.4).unwrap(), TimeProfile64::bump(0.05).unwrap()] {
        let (t0, t1) = p.window();
        for eps in [0.0, 1.0, 3.7] {
            let re = simpson(&|t| p.eval(t) * (eps * t).cos(), t0, t1, 1e-14);
            let im = simpson(&|t| -p.eval(t) * (eps * t).sin(), t0, t1, 1e-14);
            let got = p.fourier(eps, 64);
            assert!((got - C64::new(re, im)).norm() < 1e-12, "{p:?} eps {eps}: {got} vs {re} {im}");
        }
    }
}

proptest! {
    #[test]
    fn complex_structure_squares_to_minus_one(
        u0 in prop::collection::vec(-10.0f64..10.0, 16),
        u1 in prop::collection::vec(-10.0f64..10.0, 16),
        mass in 0.1f64..5.0,
        spacing in 0.2f64..3.0,
    ) {
        let l = LatticeSpec::chain(16, spacing).unwrap();
        let spec = mode_spectrum(l, Dispersion::Relativistic { mass }).unwrap();
        let d = CauchyDoublet64::new(TestFunction64::from_real(l, &u0).unwrap(), TestFunction64::from_real(l, &u1).unwrap()).unwrap();
        prop_assume!(d.euclidean_norm() > 1e-6);
        let jj = complex_structure_j(&complex_structure_j(&d, &spec).unwrap(), &spec).unwrap();
        prop_assert!(jj.max_abs_diff(&d.neg()) <= 1e-10 * d.euclidean_norm());
    }
}
