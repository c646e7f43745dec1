use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("matrix is singular; pth root framework requires a_{{r-1}} != 0")]
    Singular,

    #[error("polynomial does not annihilate the matrix (residual {residual:.3e})")]
    NotAnnihilator { residual: f64 },

    #[error("root finder did not converge after {iterations} iterations (worst residual {worst_residual:.3e})")]
    RootFinding {
        iterations: usize,
        worst_residual: f64,
        best_roots: Vec<Complex64>,
    },

    #[error("coincident eigenvalues {0} and {1}")]
    CoincidentRoots(Complex64, Complex64),

    #[error("outside the convergence disk: |t|*rho = {rho:.6} >= 1 (eigenvalue {eigenvalue})")]
    Convergence { rho: f64, eigenvalue: Complex64 },

    #[error("argument {0} lies on the branch cut of the principal root")]
    BranchCut(Complex64),

    #[error("stirling table limited to n <= {max}, requested {requested}")]
    StirlingOverflow { requested: usize, max: usize },

    #[error("series cache exhausted: index {requested} beyond {available}")]
    CacheExhausted { requested: usize, available: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("oracle unavailable: {0}")]
    OracleUnavailable(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
