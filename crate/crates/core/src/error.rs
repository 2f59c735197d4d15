use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Failure modes of the numerical engine.
///
/// The variants split into two groups that callers treat differently:
/// invalid input ([`Error::is_validation`]) and numerical breakdown.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument of Γ at (or within rounding of) a non-positive integer.
    Pole { re: f64, im: f64 },
    /// A recursion coefficient `b_n` needed to advance the recursion is zero.
    ZeroOffdiag { index: usize },
    /// The continuous dual Hahn recursion has `n + μ + a = 0` for some `n`.
    DegenerateRecursion { index: usize },
    /// Argument outside the domain of an operation.
    Domain(String),
    /// Invalid physical parameters or configuration.
    Param(String),
    /// The tridiagonal eigensolver exhausted its iteration budget.
    Convergence { index: usize },
    /// A matrix function is not finite at some eigenvalue.
    Singularity { eigenvalue: f64 },
    /// Zero pivot in the closed-form tridiagonal inverse.
    Singular { index: usize },
    /// Two independent computations of the same quantity disagree.
    CrossCheck { what: &'static str, discrepancy: f64 },
    /// Assembled operator is not symmetric within tolerance.
    Asymmetry { max_asymmetry: f64, scale: f64 },
    /// Every Gauss node fell outside the range of the coordinate map.
    NoValidNodes,
    /// Two interpolation nodes share the same abscissa.
    DegenerateNodes { x: f64 },
    /// The continued-fraction fit hit a vanishing inverse difference.
    Pivot { level: usize },
}

impl Error {
    /// True for errors caused by the caller's input rather than by arithmetic.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Domain(_)
                | Error::Param(_)
                | Error::DegenerateNodes { .. }
                | Error::DegenerateRecursion { .. }
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Pole { re, im } => write!(f, "gamma function pole at {re}{im:+}i"),
            Error::ZeroOffdiag { index } => {
                write!(f, "recursion coefficient b_{index} is zero")
            }
            Error::DegenerateRecursion { index } => write!(
                f,
                "degenerate recursion: n + mu + a = 0 at n = {index} (b_{index} vanishes)"
            ),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Param(msg) => write!(f, "{msg}"),
            Error::Convergence { index } => {
                write!(f, "eigensolver did not converge for eigenvalue {index}")
            }
            Error::Singularity { eigenvalue } => {
                write!(f, "matrix function is not finite at eigenvalue {eigenvalue}")
            }
            Error::Singular { index } => {
                write!(f, "zero pivot at index {index} in tridiagonal inverse")
            }
            Error::CrossCheck { what, discrepancy } => {
                write!(f, "cross-check failed for {what}: discrepancy {discrepancy:e}")
            }
            Error::Asymmetry {
                max_asymmetry,
                scale,
            } => write!(
                f,
                "operator asymmetry {max_asymmetry:e} exceeds tolerance (scale {scale:e})"
            ),
            Error::NoValidNodes => {
                write!(f, "no quadrature node lies inside the coordinate range")
            }
            Error::DegenerateNodes { x } => write!(f, "duplicate interpolation node x = {x}"),
            Error::Pivot { level } => {
                write!(f, "vanishing inverse difference at continued-fraction level {level}")
            }
        }
    }
}

impl core::error::Error for Error {}
