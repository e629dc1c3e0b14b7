use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A real-valued argument is outside its admissible range.
    InvalidParameter {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },
    /// An integer index violates an ordering constraint, e.g. `j > n` for a
    /// Gaussian binomial.
    IndexOutOfRange {
        op: &'static str,
        index: i64,
        bound: i64,
    },
    /// A series or product did not reach the requested tolerance within its
    /// term cap.
    NonConvergence {
        op: &'static str,
        terms: usize,
    },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, value: f64, expected: &'static str) -> Self {
        Error::InvalidParameter {
            name,
            value,
            expected,
        }
    }

    /// True for [`Error::NonConvergence`].
    pub fn is_non_convergence(&self) -> bool {
        matches!(self, Error::NonConvergence { .. })
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter {
                name,
                value,
                expected,
            } => write!(f, "invalid {name} = {value}: expected {expected}"),
            Error::IndexOutOfRange { op, index, bound } => {
                write!(f, "{op}: index {index} out of range (bound {bound})")
            }
            Error::NonConvergence { op, terms } => {
                write!(f, "{op}: no convergence within {terms} terms")
            }
        }
    }
}

impl core::error::Error for Error {}

/// Checks `tol` is a usable tolerance: finite and strictly positive.
pub(crate) fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid("tol", tol, "a finite value > 0"))
    }
}
