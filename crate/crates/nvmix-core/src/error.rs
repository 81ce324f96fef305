//! Error type shared across the crate.

use core::fmt;

/// Everything that can go wrong when constructing domain values or running
/// the numerical routines.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A field component, frequency, or rate was NaN or infinite.
    NonFinite(&'static str),
    /// Physical constants violate their constraints (signs or the requirement
    /// that the strain splitting stays small against the zero-field
    /// splitting).
    InvalidConstants(&'static str),
    /// Direction vector is not normalized to within 1e-12.
    DirectionNotNormalized,
    /// The static frame requires a vanishing y component of the static field.
    StaticFieldOffPlane,
    /// Rotation angle undefined: both the axial detuning and the transverse
    /// coupling vanish, so the crossing pair is exactly degenerate.
    DegenerateCrossing,
    /// Relaxation rates must be positive.
    InvalidRates(&'static str),
    /// A drive decomposition parameter is out of range.
    InvalidDrive(&'static str),
    /// Geometry configuration out of range.
    InvalidGeometry(&'static str),
    /// Scan window is empty, reversed, or too coarse.
    InvalidWindow(&'static str),
    /// Density matrix fails Hermiticity, unit trace, or positivity.
    InvalidState(&'static str),
    /// Adaptive integrator drove the step size below the representable floor.
    StepUnderflow {
        /// Time at which the step collapsed.
        time: f64,
    },
    /// Trace, Hermiticity, or positivity was lost along a trajectory.
    ConservationLost(&'static str),
    /// Cycle averages did not settle within the allowed number of periods.
    NoSteadyState {
        /// Number of drive periods integrated before giving up.
        periods: usize,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFinite(what) => write!(f, "non-finite value: {what}"),
            Error::InvalidConstants(why) => write!(f, "invalid constants: {why}"),
            Error::DirectionNotNormalized => write!(f, "direction vector is not unit length"),
            Error::StaticFieldOffPlane => {
                write!(f, "static field must lie in the xz plane (y component is zero)")
            }
            Error::DegenerateCrossing => {
                write!(f, "rotation angle undefined at the exact degeneracy point")
            }
            Error::InvalidRates(why) => write!(f, "invalid relaxation rates: {why}"),
            Error::InvalidDrive(why) => write!(f, "invalid drive decomposition: {why}"),
            Error::InvalidGeometry(why) => write!(f, "invalid geometry: {why}"),
            Error::InvalidWindow(why) => write!(f, "invalid scan window: {why}"),
            Error::InvalidState(why) => write!(f, "invalid density matrix: {why}"),
            Error::StepUnderflow { time } => {
                write!(f, "integrator step size underflow at t = {time:e} s (stiff problem)")
            }
            Error::ConservationLost(what) => {
                write!(f, "trajectory conservation violated: {what}")
            }
            Error::NoSteadyState { periods } => {
                write!(f, "no steady state after {periods} drive periods")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
