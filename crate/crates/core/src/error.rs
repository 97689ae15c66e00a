use core::fmt;

/// Errors reported by the numerical core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument was NaN or infinite.
    NonFinite {
        /// Name of the offending argument.
        what: &'static str,
    },
    /// An argument was finite but outside the domain of the operation.
    Domain {
        /// Name of the offending argument.
        what: &'static str,
        /// The rejected value.
        value: f64,
    },
    /// `f̄` cannot be recovered from `(γ1, γ2)` at broadside, where `γ1 ≡ 0`.
    SingularInversion,
    /// The threshold leaves no admissible region (`τ ≥ 1`).
    EmptyRegion {
        /// Threshold as a linear gain.
        tau: f64,
    },
    /// A narrowband model was requested at a nonzero baseband frequency.
    NarrowbandOffset {
        /// The rejected baseband frequency (Hz).
        baseband_hz: f64,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFinite { what } => write!(f, "{what} must be finite"),
            Error::Domain { what, value } => write!(f, "{what} = {value} is out of range"),
            Error::SingularInversion => {
                f.write_str("normalized frequency is not recoverable at broadside (sin θ = 0)")
            }
            Error::EmptyRegion { tau } => {
                write!(f, "no gain region at threshold {tau} (must be below 1)")
            }
            Error::NarrowbandOffset { baseband_hz } => write!(
                f,
                "narrowband model evaluated at baseband frequency {baseband_hz} Hz (must be 0)"
            ),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn finite(what: &'static str, value: f64) -> Result<f64, Error> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { what })
    }
}
