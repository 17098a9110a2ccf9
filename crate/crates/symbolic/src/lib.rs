//! Exact algebra for a single canonical mode `[a, ad] = c` with `c` a formal central symbol,
//! and the Bargmann Lie algebra used for Galilean boosts.
//!
//! ```
//! use bargmann_symbolic::{normal_order_str, NormalPolyQ};
//! let n: NormalPolyQ = normal_order_str("[a^4, ad]").unwrap();
//! assert_eq!(n.to_string(), "((4)*c)*a^3");
//! ```

pub mod certificate;
pub mod coeff;
pub mod error;
pub mod expr;
pub mod laurent;
pub mod lie;
pub mod normal;
pub mod parser;
pub mod rewrite;

use num_complex::Complex;
use num_rational::BigRational;

pub use certificate::{descent_certificate, power_commutator_check, DescentCertificate, DescentStep, PowerCheck};
pub use coeff::{rational, Coefficient, ImaginaryUnit};
pub use error::SymbolicError;
pub use expr::OperatorExpr;
pub use laurent::CPoly;
pub use lie::{hadamard_conjugation, hadamard_series, Basis, HadamardExpansion, LieElement, LieSeries, VPoly};
pub use normal::{normal_order, NormalPoly};
pub use parser::{parse_expr, ParseError, ParseErrorKind, MAX_INPUT_BYTES};
pub use rewrite::{rewrite_normal_order, Strategy};

pub type Rational = BigRational;
pub type GaussianRational = Complex<BigRational>;
pub type CPolyQ = CPoly<Rational>;
pub type NormalPolyQ = NormalPoly<Rational>;
pub type LieElementQ = LieElement<GaussianRational>;
pub type LieSeriesQ = LieSeries<GaussianRational>;
pub type HadamardExpansionQ = HadamardExpansion<GaussianRational>;

/// Parses and normal-orders in one step.
pub fn normal_order_str(text: &str) -> Result<NormalPolyQ, SymbolicError> {
    Ok(normal_order(&parse_expr(text)?))
}
