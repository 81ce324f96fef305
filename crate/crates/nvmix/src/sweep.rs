//! Grid execution: one polarization-coefficient evaluation per cell,
//! data-parallel, deterministic output ordering.

use rayon::prelude::*;

use nvmix_core::frame::{static_frame, LevelPair, StaticFrame};
use nvmix_core::resonance::{
    second_larmor_fields, superharmonic_fields, two_tone_matching, FieldWindow, ResonanceKind,
    ResonanceLine,
};
use nvmix_core::rwa::{
    dominant_term, polarization_coefficient, sideband_expansion,
    single_antenna_pair_decomposition, two_antenna_pair_decomposition, DriveDecomposition,
};
use nvmix_core::spin::FieldVector;

use crate::config::{AxisParam, DriveMode, ResonanceRequest, SweepConfig};
use crate::error::{AppError, AppResult};

/// One evaluated grid cell.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CellValue {
    /// Polarization coefficient of the best term over the configured pairs.
    pub p: f64,
    /// Dominance ratio of the winning expansion (best over second-best
    /// coefficient within the winning pair).
    pub ratio: f64,
    /// Sideband order of the winning term.
    pub l_star: i32,
    /// Level pair the winner belongs to.
    pub pair: LevelPair,
    /// True when the cell could not be evaluated (for example, the rotation
    /// angle is undefined at the exact on-axis crossing); such cells carry
    /// zeros.
    pub flagged: bool,
}

impl CellValue {
    fn flagged() -> Self {
        Self { p: 0.0, ratio: 0.0, l_star: 0, pair: LevelPair::OneTwo, flagged: true }
    }
}

/// Which axis an overlay line is drawn against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OverlayAxis {
    /// Vertical line at an x value.
    X,
    /// Horizontal line at a y value.
    Y,
}

/// A resonance line mapped into grid axis coordinates.
#[derive(Clone, Copy, Debug)]
pub struct OverlayLine {
    /// Axis the line is perpendicular to.
    pub axis: OverlayAxis,
    /// Position in that axis's unit.
    pub value: f64,
    /// Condition family.
    pub kind: ResonanceKind,
    /// Mixing order.
    pub order: i32,
}

/// Evaluated sweep: axes, row-major cells (y rows, x fastest), overlays.
#[derive(Clone, Debug)]
pub struct SweepGrid {
    /// Horizontal axis values.
    pub x_values: Vec<f64>,
    /// Vertical axis values.
    pub y_values: Vec<f64>,
    /// Cells indexed `iy * nx + ix`.
    pub cells: Vec<CellValue>,
    /// Attached resonance overlays.
    pub overlays: Vec<OverlayLine>,
}

impl SweepGrid {
    /// Cell accessor.
    pub fn cell(&self, ix: usize, iy: usize) -> &CellValue {
        &self.cells[iy * self.x_values.len() + ix]
    }

    /// Largest coefficient on the grid.
    pub fn max_p(&self) -> f64 {
        self.cells.iter().map(|c| c.p).fold(0.0, f64::max)
    }
}

/// All drive decompositions for one grid point, one per configured pair.
pub fn cell_decompositions(
    cfg: &SweepConfig,
    frame: &StaticFrame,
    xv: f64,
    yv: f64,
) -> AppResult<Vec<DriveDecomposition>> {
    let mw_amp = cfg
        .mw_amplitude_at(xv, yv)
        .ok_or_else(|| AppError::Config("no transverse drive source".into()))?;
    cfg.pairs
        .iter()
        .map(|&pair| {
            match cfg.mode {
                DriveMode::SingleAntenna => {
                    single_antenna_pair_decomposition(pair, mw_amp, cfg.mw_frequency, frame)
                }
                DriveMode::TwoAntenna => {
                    let rf_amp = cfg.rf_amplitude_at(xv, yv).ok_or(
                        nvmix_core::Error::InvalidDrive("no longitudinal drive source"),
                    )?;
                    let rf_freq = cfg
                        .rf_frequency
                        .ok_or(nvmix_core::Error::InvalidDrive("no longitudinal frequency"))?;
                    two_antenna_pair_decomposition(
                        pair,
                        rf_amp,
                        rf_freq,
                        mw_amp,
                        cfg.mw_frequency,
                        frame,
                    )
                }
            }
            .map_err(AppError::from)
        })
        .collect()
}

/// Evaluate one grid point.
pub fn evaluate_cell(cfg: &SweepConfig, xv: f64, yv: f64) -> AppResult<CellValue> {
    let b = cfg
        .field_at(xv, yv)
        .ok_or_else(|| AppError::Config("no static field source".into()))?;
    let field: FieldVector = match cfg.geometry.static_field(b) {
        Ok(f) => f,
        Err(_) => return Ok(CellValue::flagged()),
    };
    let frame = match static_frame(&field, cfg.geometry.constants()) {
        Ok(f) => f,
        Err(_) => return Ok(CellValue::flagged()),
    };
    let mut best: Option<CellValue> = None;
    for decomp in cell_decompositions(cfg, &frame, xv, yv)? {
        let expansion = sideband_expansion(&decomp, cfg.l_max);
        let Some((term, ratio)) = dominant_term(&expansion.terms, &cfg.rates) else {
            continue;
        };
        let p = polarization_coefficient(term.amplitude, term.detuning, &cfg.rates);
        let candidate =
            CellValue { p, ratio, l_star: term.order, pair: decomp.pair(), flagged: false };
        if best.as_ref().is_none_or(|b| candidate.p > b.p) {
            best = Some(candidate);
        }
    }
    Ok(best.unwrap_or_else(CellValue::flagged))
}

/// Run the whole map. Cells are independent and evaluated in parallel;
/// the output ordering is fixed by grid indices.
pub fn run_map(cfg: &SweepConfig) -> AppResult<SweepGrid> {
    let x_values = cfg.x.values();
    let y_values = cfg.y.values();
    let nx = x_values.len();
    let cells: Vec<CellValue> = (0..nx * y_values.len())
        .into_par_iter()
        .map(|idx| evaluate_cell(cfg, x_values[idx % nx], y_values[idx / nx]))
        .collect::<AppResult<Vec<_>>>()?;
    Ok(SweepGrid { x_values, y_values, cells, overlays: Vec::new() })
}

/// Solve the configured resonance conditions.
pub fn compute_resonances(cfg: &SweepConfig) -> AppResult<Vec<ResonanceLine>> {
    let request: ResonanceRequest = cfg
        .resonances
        .clone()
        .ok_or_else(|| AppError::Config("config has no [resonances] section".into()))?;
    let window = match request.window {
        Some(w) => w,
        None => {
            let (lo, hi) = cfg.field_axis_range().ok_or_else(|| {
                AppError::Config(
                    "resonances need b_min/b_max when no axis sweeps the field".into(),
                )
            })?;
            FieldWindow::with_points(lo, hi, request.points)
                .map_err(|e| AppError::Config(e.to_string()))?
        }
    };
    let mut lines = Vec::new();
    for kind in &request.kinds {
        match kind {
            ResonanceKind::Superharmonic => {
                lines.extend(superharmonic_fields(
                    cfg.mw_frequency,
                    1..=request.orders,
                    &window,
                    &cfg.geometry,
                )?);
            }
            ResonanceKind::HalvedSplitting => {
                lines.extend(second_larmor_fields(cfg.mw_frequency, &window, &cfg.geometry)?);
            }
            ResonanceKind::TwoTone => {
                let rf = cfg.rf_frequency.ok_or_else(|| {
                    AppError::Config("two-tone resonances need drive.rf_frequency".into())
                })?;
                let orders = request.orders as i32;
                for &pair in &request.pairs {
                    lines.extend(two_tone_matching(
                        cfg.mw_frequency,
                        rf,
                        -orders..=orders,
                        &window,
                        &cfg.geometry,
                        pair,
                    )?);
                }
            }
        }
    }
    Ok(lines)
}

/// Attach resonance lines to the grid in axis coordinates.
///
/// Lines are positions in tesla, so one of the axes must be field-like
/// (`b_field`, or `magnet_current` through the calibration); anything else
/// is a unit mismatch.
pub fn overlay_resonances(
    grid: &mut SweepGrid,
    cfg: &SweepConfig,
    lines: &[ResonanceLine],
) -> AppResult<()> {
    if lines.is_empty() {
        return Ok(());
    }
    let place = |axis: &crate::config::AxisSpec, which: OverlayAxis| -> Option<(OverlayAxis, f64)> {
        match axis.parameter {
            AxisParam::BField => Some((which, 1.0)),
            AxisParam::MagnetCurrent => Some((which, 1.0 / cfg.geometry.field_per_current())),
            _ => None,
        }
    };
    let slot = place(&cfg.x, OverlayAxis::X)
        .or_else(|| place(&cfg.y, OverlayAxis::Y))
        .ok_or_else(|| {
            AppError::Config("overlay lines are in tesla but no axis carries a field".into())
        })?;
    for line in lines {
        grid.overlays.push(OverlayLine {
            axis: slot.0,
            value: line.b_field * slot.1,
            kind: line.kind,
            order: line.order,
        });
    }
    Ok(())
}
