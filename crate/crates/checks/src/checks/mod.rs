//! The individual checks. Each returns an [`Outcome`]; timing and status are filled in by the
//! suite runner.

use bargmann_core::scalar::vec_norm;
use bargmann_core::{Lattice64, LatticeSpec, Operator64, TimeProfile64, C64};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::Value;

use crate::config::SuiteConfig;
use crate::error::CheckError;
use crate::result::Recorder;

pub mod boost;
pub mod ccr;
pub mod cyclicity;
pub mod descent;
pub mod grading;
pub mod positivity;
pub mod relativistic;
pub mod smeared;

#[derive(Debug, Default)]
pub struct Outcome {
    pub rec: Recorder,
    /// Headline tolerance reported with the result.
    pub tolerance: f64,
    pub witness: Option<Value>,
    pub skipped: Option<String>,
}

impl Outcome {
    pub fn new(tolerance: f64) -> Self {
        Self { tolerance, ..Self::default() }
    }
}

pub type CheckFn = fn(&SuiteConfig) -> Result<Outcome, CheckError>;

pub(crate) fn main_lattice(cfg: &SuiteConfig) -> Result<Lattice64, CheckError> {
    Ok(LatticeSpec::new(cfg.lattice.dims, cfg.lattice.sites, cfg.lattice.spacing)?)
}

pub(crate) fn profile(cfg: &SuiteConfig) -> Result<TimeProfile64, CheckError> {
    Ok(TimeProfile64::named(&cfg.profile.name, cfg.profile.width)?)
}

pub(crate) fn image_norm(op: &Operator64, v: &[C64]) -> f64 {
    vec_norm(&op.apply(v))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}
