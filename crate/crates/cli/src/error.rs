use explicit_formula_core::curve::CurveError;
use explicit_formula_core::formula::FormulaError;
use explicit_formula_core::riemann::RiemannError;
use explicit_formula_core::spectral::SpectralError;
use explicit_formula_core::test_function::TestFunctionError;
use thiserror::Error;

/// Input problems exit with status 2; failed computations with status 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Input(_) => 2,
            Self::Failure(_) => 1,
        }
    }
}

impl From<CurveError> for CliError {
    fn from(e: CurveError) -> Self {
        Self::Input(e.to_string())
    }
}

impl From<SpectralError> for CliError {
    fn from(e: SpectralError) -> Self {
        Self::Input(e.to_string())
    }
}

impl From<TestFunctionError> for CliError {
    fn from(e: TestFunctionError) -> Self {
        match e {
            TestFunctionError::TruncationTooDeep { .. } => Self::Failure(e.to_string()),
            _ => Self::Input(e.to_string()),
        }
    }
}

impl From<FormulaError> for CliError {
    fn from(e: FormulaError) -> Self {
        match e {
            FormulaError::Quadrature(_) | FormulaError::NoConvergence(_) => Self::Failure(e.to_string()),
            _ => Self::Input(e.to_string()),
        }
    }
}

impl From<RiemannError> for CliError {
    fn from(e: RiemannError) -> Self {
        match e {
            RiemannError::Quadrature(_) => Self::Failure(e.to_string()),
            _ => Self::Input(e.to_string()),
        }
    }
}
