//! Field positions solving the frequency-mixing resonance conditions.
//!
//! Three condition families organize the measured maps: superharmonics of a
//! single tone (`splitting = l * drive_freq` on the hyperbola of the
//! crossing-pair splitting versus field), halved-splitting lines
//! (`2 * splitting = drive_freq`), and two-tone matching against the exact
//! triplet eigenvalues (`exact pair splitting = drive_freq + l * mod_freq`).

use alloc::vec::Vec;

use crate::eigen::hermitian_eigenvalues;
use crate::frame::LevelPair;
use crate::roots::scan_roots;
use crate::spin::{build_hamiltonian, FieldVector, PhysicalConstants};
use crate::{Error, Result};

#[cfg(not(feature = "std"))]
#[allow(unused_imports)]
use num_traits::Float;

/// Misalignment geometry: angle between the static field and the defect
/// axis, plus the magnet calibration used by current-driven field axes.
#[derive(Clone, Copy, Debug)]
pub struct GeometryConfig {
    misalignment: f64,
    field_per_current: f64,
    constants: PhysicalConstants,
}

impl GeometryConfig {
    /// Validated constructor: |misalignment| < pi/2 rad, positive tesla per
    /// ampere.
    pub fn new(misalignment: f64, field_per_current: f64, constants: PhysicalConstants) -> Result<Self> {
        if !misalignment.is_finite() || misalignment.abs() >= core::f64::consts::FRAC_PI_2 {
            return Err(Error::InvalidGeometry("misalignment must satisfy |alpha| < pi/2"));
        }
        if !(field_per_current.is_finite() && field_per_current > 0.0) {
            return Err(Error::InvalidGeometry("field-per-current must be positive"));
        }
        Ok(Self { misalignment, field_per_current, constants })
    }

    /// Misalignment angle (rad).
    pub fn misalignment(&self) -> f64 {
        self.misalignment
    }

    /// Field per unit magnet current (T/A).
    pub fn field_per_current(&self) -> f64 {
        self.field_per_current
    }

    /// Physical constants in use.
    pub fn constants(&self) -> &PhysicalConstants {
        &self.constants
    }

    /// Static field vector (rad/s components) at magnitude `b` tesla, tilted
    /// by the misalignment in the xz plane.
    pub fn static_field(&self, b: f64) -> Result<FieldVector> {
        let g = self.constants.gyromagnetic_ratio();
        FieldVector::new(g * b * self.misalignment.sin(), 0.0, g * b * self.misalignment.cos())
    }

    /// Crossing-pair splitting (rad/s) versus field from the hyperbola
    /// `sqrt(axial_detuning^2 + 2 (transverse)^2)`.
    pub fn pair_splitting(&self, b: f64) -> f64 {
        let g = self.constants.gyromagnetic_ratio();
        let axial = g * b * self.misalignment.cos() - self.constants.zero_field_splitting();
        let transverse = core::f64::consts::SQRT_2 * g * b * self.misalignment.sin();
        axial.hypot(transverse)
    }

    /// Exact eigenvalue splitting (rad/s) of a level pair at field `b`.
    pub fn exact_pair_splitting(&self, b: f64, pair: LevelPair) -> Result<f64> {
        let field = self.static_field(b)?;
        let ev = hermitian_eigenvalues(&build_hamiltonian(&field, &self.constants).matrix);
        let (i, j) = pair.indices();
        Ok(ev[j] - ev[i])
    }
}

/// Field scan window in tesla with the bracketing grid density.
#[derive(Clone, Copy, Debug)]
pub struct FieldWindow {
    min: f64,
    max: f64,
    points: usize,
}

impl FieldWindow {
    /// Default grid density for the bracketing scan.
    pub const DEFAULT_POINTS: usize = 2000;

    /// Window with the default grid density.
    pub fn new(min: f64, max: f64) -> Result<Self> {
        Self::with_points(min, max, Self::DEFAULT_POINTS)
    }

    /// Window with an explicit grid density.
    pub fn with_points(min: f64, max: f64, points: usize) -> Result<Self> {
        if !(min.is_finite() && max.is_finite()) {
            return Err(Error::NonFinite("field window"));
        }
        if !(max > min) {
            return Err(Error::InvalidWindow("max must exceed min"));
        }
        if points < 2 {
            return Err(Error::InvalidWindow("at least two grid points"));
        }
        Ok(Self { min, max, points })
    }

    /// Lower edge (T).
    pub fn min(&self) -> f64 {
        self.min
    }

    /// Upper edge (T).
    pub fn max(&self) -> f64 {
        self.max
    }

    /// Bracketing grid nodes.
    pub fn points(&self) -> usize {
        self.points
    }
}

/// Which matching condition produced a line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResonanceKind {
    /// `splitting = l * drive_freq` for a single tone.
    Superharmonic,
    /// `2 * splitting = drive_freq`.
    HalvedSplitting,
    /// `exact pair splitting = drive_freq + l * mod_freq`.
    TwoTone,
}

impl ResonanceKind {
    /// Stable lowercase name used by the CLI output.
    pub fn name(&self) -> &'static str {
        match self {
            ResonanceKind::Superharmonic => "superharmonic",
            ResonanceKind::HalvedSplitting => "second_larmor",
            ResonanceKind::TwoTone => "two_tone",
        }
    }
}

/// One solved resonance line.
#[derive(Clone, Copy, Debug)]
pub struct ResonanceLine {
    /// Condition family.
    pub kind: ResonanceKind,
    /// Mixing order `l`.
    pub order: i32,
    /// Field position (T).
    pub b_field: f64,
    /// Residual of the defining equation at the solution (rad/s).
    pub residual: f64,
}

const B_TOLERANCE: f64 = 1e-12;

/// Fields where the crossing-pair splitting equals `l * drive_freq` for each
/// order in the range.
///
/// Orders whose harmonic lies below the bottom of the splitting hyperbola
/// have no solutions and contribute nothing.
pub fn superharmonic_fields(
    drive_freq: f64,
    orders: core::ops::RangeInclusive<u32>,
    window: &FieldWindow,
    geom: &GeometryConfig,
) -> Result<Vec<ResonanceLine>> {
    if !(drive_freq.is_finite() && drive_freq > 0.0) {
        return Err(Error::InvalidDrive("drive frequency must be positive"));
    }
    let mut lines = Vec::new();
    for l in orders {
        if l == 0 {
            continue;
        }
        let target = l as f64 * drive_freq;
        let f = |b: f64| geom.pair_splitting(b) - target;
        for b in scan_roots(&f, window.min(), window.max(), window.points(), B_TOLERANCE) {
            lines.push(ResonanceLine {
                kind: ResonanceKind::Superharmonic,
                order: l as i32,
                b_field: b,
                residual: f(b).abs(),
            });
        }
    }
    Ok(lines)
}

/// Fields where twice the crossing-pair splitting equals the drive
/// frequency.
pub fn second_larmor_fields(
    drive_freq: f64,
    window: &FieldWindow,
    geom: &GeometryConfig,
) -> Result<Vec<ResonanceLine>> {
    if !(drive_freq.is_finite() && drive_freq > 0.0) {
        return Err(Error::InvalidDrive("drive frequency must be positive"));
    }
    let f = |b: f64| 2.0 * geom.pair_splitting(b) - drive_freq;
    Ok(scan_roots(&f, window.min(), window.max(), window.points(), B_TOLERANCE)
        .into_iter()
        .map(|b| ResonanceLine {
            kind: ResonanceKind::HalvedSplitting,
            order: 1,
            b_field: b,
            residual: f(b).abs(),
        })
        .collect())
}

/// Fields where the exact eigenvalue splitting of a pair matches
/// `drive_freq + l * mod_freq`, for each order in the range.
///
/// Uses the full 3x3 eigenvalues rather than the crossing-pair closed form,
/// matching the construction of the two-tone level diagrams.
pub fn two_tone_matching(
    drive_freq: f64,
    mod_freq: f64,
    orders: core::ops::RangeInclusive<i32>,
    window: &FieldWindow,
    geom: &GeometryConfig,
    pair: LevelPair,
) -> Result<Vec<ResonanceLine>> {
    if !(drive_freq.is_finite() && drive_freq > 0.0) || !(mod_freq.is_finite() && mod_freq >= 0.0) {
        return Err(Error::InvalidDrive("frequencies must be positive"));
    }
    let mut lines = Vec::new();
    for l in orders {
        let target = drive_freq + l as f64 * mod_freq;
        if target <= 0.0 {
            continue;
        }
        let f = |b: f64| geom.exact_pair_splitting(b, pair).unwrap_or(f64::NAN) - target;
        for b in scan_roots(&f, window.min(), window.max(), window.points(), B_TOLERANCE) {
            lines.push(ResonanceLine {
                kind: ResonanceKind::TwoTone,
                order: l,
                b_field: b,
                residual: f(b).abs(),
            });
        }
    }
    Ok(lines)
}
