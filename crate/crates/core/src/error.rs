use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("objects live on different lattices")]
    LatticeMismatch,
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("mass must be positive, got {0}")]
    NonPositiveMass(f64),
    #[error("spectral function is not finite at eigenvalue {eigenvalue} (mode {mode})")]
    SpectralFunctionUndefined { mode: usize, eigenvalue: f64 },
    #[error("operation requires a relativistic (gapped) spectrum")]
    RequiresRelativistic,
    #[error("operation requires a Galilean spectrum")]
    RequiresGalilean,
    #[error("Cauchy data must be real-valued")]
    ComplexCauchyData,
    #[error("test data vanishes identically")]
    ZeroData,
    #[error("support of the data is not contained in the region (site {0} lies outside)")]
    SupportOutsideRegion(usize),
    #[error("invalid region: {0}")]
    InvalidRegion(String),
    #[error("Fock dimension {dimension} exceeds the configured cap {cap}")]
    DimensionCap { dimension: u128, cap: usize },
    #[error("truncation n_max must be at least 1")]
    InvalidTruncation,
    #[error("unknown axis {axis} for a {dims}-dimensional lattice")]
    UnknownAxis { axis: usize, dims: usize },
    #[error("operators act on different Fock spaces")]
    SpaceMismatch,
    #[error("quadrature order {0} is below the minimum of {1}")]
    QuadratureOrder(usize, usize),
    #[error("invalid time profile: {0}")]
    InvalidProfile(String),
    #[error("maximum word length {given} is below n_max = {n_max}; the span would not saturate")]
    WordLengthTooShort { given: usize, n_max: usize },
    #[error("oscillator truncation {0} is below the minimum of 16 levels")]
    OscillatorTruncation(usize),
    #[error("dense evolution of a {0}-dimensional sector is too large; use the Krylov action")]
    SectorTooLarge(usize),
    #[error("singular matrix in linear solve")]
    Singular,
    #[error("malformed operator dump at line {line}: {reason}")]
    Dump { line: usize, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
