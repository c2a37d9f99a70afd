use alloc::string::String;
use core::fmt;

/// Errors produced by constructors and operations across the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Component dimensions do not agree.
    DimensionMismatch { expected: usize, got: usize },
    /// A matrix is not Hermitian within tolerance.
    NotHermitian { max_deviation: f64 },
    /// A density matrix trace deviates from 1.
    TraceNotOne { trace: f64 },
    /// A matrix has an eigenvalue below the PSD floor.
    NotPositiveSemidefinite { min_eigenvalue: f64 },
    /// An amplitude or ancilla vector is not normalized.
    NotNormalized { norm_sq: f64 },
    /// A Gram matrix diagonal entry deviates from 1.
    NotUnitDiagonal { index: usize, value: f64 },
    /// A Gram matrix overlap has modulus above 1.
    OverlapTooLarge { row: usize, col: usize, modulus: f64 },
    /// An off-diagonal entry violates the Cauchy-Schwarz bound.
    CauchySchwarzViolation { row: usize, col: usize },
    /// A phase angle is not finite.
    NonFiniteAngle,
    /// A path index is outside 1..=n.
    PathIndexOutOfRange { index: usize, n: usize },
    /// Both blocked paths carry zero population.
    DegenerateBlock { i: usize, j: usize },
    /// The same path was given twice.
    SamePath { index: usize },
    /// Detector coupling must be positive.
    NonPositiveCoupling { alpha_sq: f64 },
    /// Sweeping requires the single-parameter (linear) phase model.
    UnsupportedSweep,
    /// Grid too small for the requested operation.
    GridTooSmall { grid: usize },
    /// Exhaustive grid search is limited to small path counts.
    DimensionTooLarge { n: usize, max: usize },
    /// Visibility is undefined when both extrema vanish.
    UndefinedVisibility,
    /// The measure is undefined for a single path.
    SinglePath,
    /// A measure does not apply to the given scenario.
    MeasureInapplicable { reason: String },
    /// The state is not pure within tolerance.
    NotPure { defect: f64 },
    /// A duality checker input is outside [0, 1].
    ValueOutOfRange { name: &'static str, value: f64 },
    /// Not enough samples for certification.
    TooFewSamples { samples: usize, min: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::NotHermitian { max_deviation } => {
                write!(f, "matrix is not Hermitian (max deviation {max_deviation:e})")
            }
            Error::TraceNotOne { trace } => write!(f, "trace is {trace}, expected 1"),
            Error::NotPositiveSemidefinite { min_eigenvalue } => {
                write!(f, "matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")
            }
            Error::NotNormalized { norm_sq } => {
                write!(f, "vector is not normalized (squared norm {norm_sq})")
            }
            Error::NotUnitDiagonal { index, value } => {
                write!(f, "Gram diagonal entry {index} is {value}, expected 1")
            }
            Error::OverlapTooLarge { row, col, modulus } => {
                write!(f, "overlap ({row},{col}) has modulus {modulus} > 1")
            }
            Error::CauchySchwarzViolation { row, col } => {
                write!(f, "entry ({row},{col}) violates the Cauchy-Schwarz bound")
            }
            Error::NonFiniteAngle => write!(f, "phase angle is not finite"),
            Error::PathIndexOutOfRange { index, n } => {
                write!(f, "path index {index} outside 1..={n}")
            }
            Error::DegenerateBlock { i, j } => {
                write!(f, "paths {i} and {j} are both dark; blocked state undefined")
            }
            Error::SamePath { index } => write!(f, "path {index} given twice"),
            Error::NonPositiveCoupling { alpha_sq } => {
                write!(f, "detector coupling |alpha|^2 = {alpha_sq} must be > 0")
            }
            Error::UnsupportedSweep => {
                write!(f, "sweep requires the linear phase model")
            }
            Error::GridTooSmall { grid } => write!(f, "grid {grid} too small"),
            Error::DimensionTooLarge { n, max } => {
                write!(f, "exhaustive search limited to n <= {max}, got {n}")
            }
            Error::UndefinedVisibility => {
                write!(f, "visibility undefined: both extremal intensities vanish")
            }
            Error::SinglePath => write!(f, "measure undefined for a single path"),
            Error::MeasureInapplicable { reason } => write!(f, "measure inapplicable: {reason}"),
            Error::NotPure { defect } => {
                write!(f, "state is not pure (||rho^2 - rho|| = {defect:e})")
            }
            Error::ValueOutOfRange { name, value } => {
                write!(f, "{name} = {value} outside [0, 1]")
            }
            Error::TooFewSamples { samples, min } => {
                write!(f, "{samples} samples below minimum {min}")
            }
        }
    }
}

impl core::error::Error for Error {}
