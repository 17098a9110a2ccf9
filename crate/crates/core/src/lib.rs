//! Numerical core: periodic lattices, spectral calculus, truncated bosonic Fock spaces and
//! the single-particle oscillator realisation of the Galilean boost generator.
//!
//! All routines are generic over the real scalar type ([`Real`]); the `*64` aliases below fix
//! it to `f64`, which is what the checks use.

pub mod dense;
pub mod error;
pub mod fock;
pub mod krylov;
pub mod lattice;
pub mod oscillator;
pub mod quadrature;
pub mod scalar;
pub mod smeared;
pub mod sparse;
pub mod spectrum;

pub use dense::{expm, DenseMatrix};
pub use error::{Error, Result};
pub use fock::{
    build_fock, build_fock_with_cap, cyclic_span_dimension, field_operator, generator, grading_check, second_quantize,
    FieldKind, FockSpace, Generator, Grade, GuardedSubspace, SpanBuilder,
};
pub use krylov::expm_action;
pub use lattice::{inner_product, Boundary, CauchyDoublet, LatticeSpec, Region, TestFunction};
pub use oscillator::{oscillator_model, OscillatorModel};
pub use quadrature::{gauss_legendre, TimeProfile};
pub use scalar::Real;
pub use smeared::{mode_space_oracle, time_smeared_apply, time_smeared_field};
pub use sparse::SparseOperator;
pub use spectrum::{
    apply_fourier_multiplier, apply_spectral_function, apply_spectral_multiplier, complex_structure_j, leakage_ratio,
    mode_spectrum, Dispersion, ModeSpectrum,
};

pub use num_complex::Complex;

pub type C64 = Complex<f64>;
pub type Lattice64 = LatticeSpec<f64>;
pub type TestFunction64 = TestFunction<f64>;
pub type Region64 = Region<f64>;
pub type CauchyDoublet64 = CauchyDoublet<f64>;
pub type ModeSpectrum64 = ModeSpectrum<f64>;
pub type FockSpace64 = FockSpace<f64>;
pub type Operator64 = SparseOperator<f64>;
pub type Dense64 = DenseMatrix<f64>;
pub type Oscillator64 = OscillatorModel<f64>;
pub type TimeProfile64 = TimeProfile<f64>;
