use std::fmt;

/// Error type shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument fell outside the domain of an operation.
    Domain {
        what: &'static str,
        value: f64,
    },
    /// A Gamma ratio exceeded the representable f64 range.
    Overflow {
        what: &'static str,
    },
    /// An operation required an even degree.
    EvenDegreeRequired {
        degree: usize,
    },
    /// An interval [lo, hi] with lo <= hi was required.
    InvalidInterval {
        lo: f64,
        hi: f64,
    },
    /// A bracket must satisfy p(lo) > 0 >= p(hi).
    InvalidBracket {
        lo: f64,
        hi: f64,
    },
    /// A column specification and an approximation disagree on the
    /// fractional index.
    AlphaMismatch {
        spec_alpha: f64,
        s0_alpha: f64,
    },
    /// No even truncation up to `max_degree` had a certified positive root.
    NoRootFound {
        alpha: f64,
        max_degree: usize,
    },
    /// Curve samples were not on a uniform grid.
    NonUniformGrid,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => {
                write!(f, "domain error: {what} (got {value})")
            }
            Error::Overflow { what } => write!(f, "overflow computing {what}"),
            Error::EvenDegreeRequired { degree } => {
                write!(f, "even degree required, got {degree}")
            }
            Error::InvalidInterval { lo, hi } => {
                write!(f, "invalid interval [{lo}, {hi}]")
            }
            Error::InvalidBracket { lo, hi } => {
                write!(f, "invalid bracket [{lo}, {hi}]: need p(lo) > 0 >= p(hi)")
            }
            Error::AlphaMismatch {
                spec_alpha,
                s0_alpha,
            } => {
                write!(
                    f,
                    "fractional index mismatch: column has alpha={spec_alpha}, \
                     approximation has alpha={s0_alpha}"
                )
            }
            Error::NoRootFound { alpha, max_degree } => {
                write!(
                    f,
                    "no even truncation of degree <= {max_degree} has a certified \
                     positive root at alpha={alpha}"
                )
            }
            Error::NonUniformGrid => write!(f, "curve samples are not on a uniform grid"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
