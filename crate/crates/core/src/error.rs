use thiserror::Error;

/// Errors raised by the special-function core, the spectral machinery and
/// the verification checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of {function} at argument {at}")]
    Pole { function: &'static str, at: f64 },

    #[error("argument out of domain for {function}: {detail}")]
    Domain {
        function: &'static str,
        detail: String,
    },

    #[error("invalid parameter for {function}: {detail}")]
    Parameter {
        function: &'static str,
        detail: String,
    },

    #[error("{function} did not converge within {terms} terms")]
    NonConvergence { function: &'static str, terms: usize },

    #[error("unsupported dimension m = {m}: {detail}")]
    Dimension { m: i64, detail: &'static str },

    #[error("constant {name} is not available from the {source_form} calculation")]
    Unavailable {
        name: &'static str,
        source_form: &'static str,
    },

    #[error("root count mismatch for p = {p}, ratio {ratio}: bracketing found {bracketed}, sign scan found {scanned}")]
    RootCount {
        p: usize,
        ratio: f64,
        bracketed: usize,
        scanned: usize,
    },

    #[error("insufficient cutoff: truncation bound {bound:e} exceeds {limit:e} (trace value {value:e})")]
    InsufficientCutoff { bound: f64, limit: f64, value: f64 },

    #[error("ill-conditioned fit: condition estimate {condition:e} exceeds {limit:e}")]
    IllConditioned { condition: f64, limit: f64 },

    #[error("invalid fit input: {detail}")]
    FitInput { detail: String },

    #[error("mu = {mu} is off-shell: eigenvalue condition residual {residual:e}")]
    OffShell { mu: f64, residual: f64 },

    #[error("analytic derivative disagrees with finite differences: residual {residual:e}")]
    DerivativeMismatch { residual: f64 },

    #[error("semi-infinite tail bound {bound:e} exceeds tolerance {tol:e}")]
    TailBound { bound: f64, tol: f64 },

    #[error("quadrature failed to reach tolerance: estimated error {estimate:e} over [{a}, {b}]")]
    Quadrature { estimate: f64, a: f64, b: f64 },

    #[error("scaled product e^(u^2) erfc(u) overflowed at u = {u}")]
    Overflow { u: f64 },

    #[error("identity check `{what}` failed: max residual {residual:e}")]
    Assertion { what: &'static str, residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
