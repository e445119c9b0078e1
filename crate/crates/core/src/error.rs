use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix order must be positive")]
    EmptyMatrix,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },
    #[error("non-finite vector component at index {index}")]
    NonFiniteComponent { index: usize },
    #[error(
        "matrix is not symmetric: entries ({row}, {col}) and ({col}, {row}) differ by {diff:e}"
    )]
    Asymmetric { row: usize, col: usize, diff: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error("argument {value} outside [{lo}, {hi}]")]
    OutOfDomain { value: f64, lo: f64, hi: f64 },
    #[error("resolvent at spectrum: {re}{im:+}i is {distance:e} from eigenvalue {eigenvalue}")]
    ResolventAtSpectrum {
        re: f64,
        im: f64,
        eigenvalue: f64,
        distance: f64,
    },
    #[error("{lambda0} is within tolerance of two distinct eigenvalue clusters")]
    AmbiguousCluster { lambda0: f64 },
    #[error("{lambda0} is not an eigenvalue (nearest {nearest}, tolerance {tol:e})")]
    NotAnEigenvalue {
        lambda0: f64,
        nearest: f64,
        tol: f64,
    },
    #[error("secular function evaluated at its pole {pole}")]
    PoleEvaluation { lambda: f64, pole: f64 },
    #[error("secular function vanishes at {re}{im:+}i (|w| = {modulus:e}); it is an eigenvalue of the perturbed operator")]
    EigenvalueOfPerturbed { re: f64, im: f64, modulus: f64 },
    #[error("Cauchy-Schwarz violation: (f|R²f) = {0:e} in a multiplicity-raising case")]
    CauchySchwarz(f64),
    #[error("matrix is singular at pivot {0}")]
    Singular(usize),
    #[error("symmetric eigenvalue iteration did not converge")]
    NoConvergence,
    #[error("kernel pole: |sin({angle})| = {sine:e}")]
    KernelPole { angle: f64, sine: f64 },
    #[error("{k0} is not a Dirichlet wavenumber nπ")]
    NotDirichletWavenumber { k0: f64 },
}

pub type Result<T> = core::result::Result<T, Error>;
