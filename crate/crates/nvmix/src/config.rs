//! TOML configuration schema and its resolution into typed, unit-converted
//! values.
//!
//! Every physical quantity in the file is a string with an explicit unit
//! (`"145 MHz"`, `"1 deg"`, `"0.045 T"`). The parameter names that can sit
//! on a sweep axis form a closed set: `b_field`, `magnet_current`,
//! `mw_power`, `mw_amplitude`, `rf_power`, `rf_voltage`, `rf_amplitude`.

use std::path::Path;

use serde::Deserialize;

use nvmix_core::frame::LevelPair;
use nvmix_core::lindblad::Gamma2Convention;
use nvmix_core::resonance::{FieldWindow, GeometryConfig, ResonanceKind};
use nvmix_core::rwa::RelaxationRates;
use nvmix_core::spin::PhysicalConstants;

use crate::antenna::AntennaModel;
use crate::error::{AppError, AppResult};
use crate::units;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    sweep: RawSweep,
    drive: RawDrive,
    rates: RawRates,
    geometry: RawGeometry,
    #[serde(default)]
    constants: RawConstants,
    #[serde(default)]
    antenna: RawAntennas,
    resonances: Option<RawResonances>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    mode: String,
    l_max: Option<u32>,
    pairs: Option<Vec<String>>,
    x: RawAxis,
    y: RawAxis,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAxis {
    parameter: String,
    min: String,
    max: String,
    points: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDrive {
    mw_frequency: String,
    rf_frequency: Option<String>,
    mw_power: Option<String>,
    mw_amplitude: Option<String>,
    rf_power: Option<String>,
    rf_voltage: Option<String>,
    rf_amplitude: Option<String>,
    b_field: Option<String>,
    magnet_current: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRates {
    gamma1: String,
    gamma2: String,
    #[serde(default)]
    angular: bool,
    equilibrium_polarization: Option<f64>,
    gamma2_convention: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGeometry {
    misalignment: String,
    field_per_current: Option<String>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawConstants {
    zero_field_splitting: Option<String>,
    gyromagnetic_ratio: Option<String>,
    strain_splitting: Option<String>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawAntennas {
    mw: Option<RawAntenna>,
    rf: Option<RawAntenna>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAntenna {
    inductance: String,
    impedance: Option<String>,
    power_calibration: String,
    voltage_calibration: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawResonances {
    kinds: Option<Vec<String>>,
    orders: Option<u32>,
    b_min: Option<String>,
    b_max: Option<String>,
    points: Option<usize>,
    pairs: Option<Vec<String>>,
}

/// Which drive configuration the sweep models.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DriveMode {
    /// One transverse tone; its own longitudinal projection supplies the
    /// modulation.
    SingleAntenna,
    /// Separate longitudinal and transverse tones.
    TwoAntenna,
}

/// The closed set of sweepable parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxisParam {
    /// Static field magnitude (T).
    BField,
    /// Static-field magnet current (A), converted through the geometry
    /// calibration.
    MagnetCurrent,
    /// Transverse-antenna power (dBm).
    MwPower,
    /// Transverse drive amplitude (rad/s), bypassing the antenna model.
    MwAmplitude,
    /// Longitudinal-antenna power (dBm).
    RfPower,
    /// Longitudinal-antenna voltage (V).
    RfVoltage,
    /// Longitudinal drive amplitude (rad/s), bypassing the antenna model.
    RfAmplitude,
}

impl AxisParam {
    fn parse(name: &str) -> AppResult<Self> {
        Ok(match name {
            "b_field" => AxisParam::BField,
            "magnet_current" => AxisParam::MagnetCurrent,
            "mw_power" => AxisParam::MwPower,
            "mw_amplitude" => AxisParam::MwAmplitude,
            "rf_power" => AxisParam::RfPower,
            "rf_voltage" => AxisParam::RfVoltage,
            "rf_amplitude" => AxisParam::RfAmplitude,
            other => {
                return Err(AppError::Config(format!(
                    "unknown axis parameter {other:?} (expected one of b_field, \
                     magnet_current, mw_power, mw_amplitude, rf_power, rf_voltage, \
                     rf_amplitude)"
                )))
            }
        })
    }

    /// Stable name used in files.
    pub fn name(&self) -> &'static str {
        match self {
            AxisParam::BField => "b_field",
            AxisParam::MagnetCurrent => "magnet_current",
            AxisParam::MwPower => "mw_power",
            AxisParam::MwAmplitude => "mw_amplitude",
            AxisParam::RfPower => "rf_power",
            AxisParam::RfVoltage => "rf_voltage",
            AxisParam::RfAmplitude => "rf_amplitude",
        }
    }

    /// Unit the axis values are stored in.
    pub fn unit(&self) -> &'static str {
        match self {
            AxisParam::BField => "T",
            AxisParam::MagnetCurrent => "A",
            AxisParam::MwPower | AxisParam::RfPower => "dBm",
            AxisParam::MwAmplitude | AxisParam::RfAmplitude => "rad/s",
            AxisParam::RfVoltage => "V",
        }
    }

    fn parse_value(&self, s: &str) -> AppResult<f64> {
        match self {
            AxisParam::BField => units::field(s),
            AxisParam::MagnetCurrent => units::current(s),
            AxisParam::MwPower | AxisParam::RfPower => units::power_dbm(s),
            AxisParam::MwAmplitude | AxisParam::RfAmplitude => units::frequency(s),
            AxisParam::RfVoltage => units::voltage(s),
        }
    }
}

/// One sweep axis: parameter, range in the parameter's own unit, node count.
#[derive(Clone, Debug)]
pub struct AxisSpec {
    /// Swept parameter.
    pub parameter: AxisParam,
    /// Lower edge in the axis unit.
    pub min: f64,
    /// Upper edge in the axis unit.
    pub max: f64,
    /// Number of grid nodes (>= 2).
    pub points: usize,
}

impl AxisSpec {
    /// The grid node values, evenly spaced, endpoints included.
    pub fn values(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|k| self.min + (self.max - self.min) * k as f64 / (n - 1) as f64)
            .collect()
    }

    /// Grid spacing.
    pub fn step(&self) -> f64 {
        (self.max - self.min) / (self.points - 1) as f64
    }
}

/// Fixed values for parameters not on an axis, in the same units the axes
/// use.
#[derive(Clone, Copy, Debug, Default)]
pub struct FixedValues {
    /// Static field (T).
    pub b_field: Option<f64>,
    /// Magnet current (A).
    pub magnet_current: Option<f64>,
    /// Transverse power (dBm).
    pub mw_power: Option<f64>,
    /// Transverse amplitude (rad/s).
    pub mw_amplitude: Option<f64>,
    /// Longitudinal power (dBm).
    pub rf_power: Option<f64>,
    /// Longitudinal voltage (V).
    pub rf_voltage: Option<f64>,
    /// Longitudinal amplitude (rad/s).
    pub rf_amplitude: Option<f64>,
}

impl FixedValues {
    fn get(&self, p: AxisParam) -> Option<f64> {
        match p {
            AxisParam::BField => self.b_field,
            AxisParam::MagnetCurrent => self.magnet_current,
            AxisParam::MwPower => self.mw_power,
            AxisParam::MwAmplitude => self.mw_amplitude,
            AxisParam::RfPower => self.rf_power,
            AxisParam::RfVoltage => self.rf_voltage,
            AxisParam::RfAmplitude => self.rf_amplitude,
        }
    }
}

/// What the `resonances` subcommand and map overlays should solve for.
#[derive(Clone, Debug)]
pub struct ResonanceRequest {
    /// Condition families to solve.
    pub kinds: Vec<ResonanceKind>,
    /// Highest order: superharmonics use `1..=orders`, two-tone uses
    /// `-orders..=orders`.
    pub orders: u32,
    /// Field window; defaults to the field axis range.
    pub window: Option<FieldWindow>,
    /// Scan density override.
    pub points: usize,
    /// Level pairs for the two-tone condition.
    pub pairs: Vec<LevelPair>,
}

/// Fully resolved sweep configuration.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    /// Drive configuration.
    pub mode: DriveMode,
    /// Horizontal axis.
    pub x: AxisSpec,
    /// Vertical axis.
    pub y: AxisSpec,
    /// Transverse tone frequency (rad/s).
    pub mw_frequency: f64,
    /// Longitudinal tone frequency (rad/s), two-antenna mode only.
    pub rf_frequency: Option<f64>,
    /// Fixed parameter values.
    pub fixed: FixedValues,
    /// Relaxation rates (rad/s).
    pub rates: RelaxationRates,
    /// Equilibrium polarization the dissipator relaxes toward.
    pub equilibrium: f64,
    /// Whether gamma2 includes the lifetime contribution.
    pub gamma2_convention: Gamma2Convention,
    /// Misalignment geometry and constants.
    pub geometry: GeometryConfig,
    /// Transverse antenna, needed for power axes.
    pub mw_antenna: Option<AntennaModel>,
    /// Longitudinal antenna, needed for power or voltage axes.
    pub rf_antenna: Option<AntennaModel>,
    /// Sideband cutoff order.
    pub l_max: u32,
    /// Level pairs evaluated per cell; the map reports the best one.
    pub pairs: Vec<LevelPair>,
    /// Resonance-line request for overlays and the `resonances` subcommand.
    pub resonances: Option<ResonanceRequest>,
}

fn parse_pair(s: &str) -> AppResult<LevelPair> {
    match s {
        "1-2" => Ok(LevelPair::OneTwo),
        "1-3" => Ok(LevelPair::OneThree),
        "2-3" => Ok(LevelPair::TwoThree),
        other => Err(AppError::Config(format!("unknown level pair {other:?}"))),
    }
}

fn parse_opt<T>(
    raw: &Option<String>,
    f: impl Fn(&str) -> AppResult<T>,
) -> AppResult<Option<T>> {
    raw.as_ref().map(|s| f(s)).transpose()
}

impl SweepConfig {
    /// Parse and resolve a configuration file.
    pub fn from_path(path: &Path) -> AppResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| AppError::io(path, e))?;
        Self::from_str(&text)
    }

    /// Parse and resolve configuration text.
    #[allow(clippy::should_implement_trait)]
    pub fn from_str(text: &str) -> AppResult<Self> {
        let raw: RawConfig =
            toml::from_str(text).map_err(|e| AppError::Config(e.to_string()))?;
        resolve(raw)
    }

    /// Value of a parameter at a grid point, if that parameter is present on
    /// an axis or as a fixed value.
    pub fn parameter_at(&self, p: AxisParam, xv: f64, yv: f64) -> Option<f64> {
        if self.x.parameter == p {
            Some(xv)
        } else if self.y.parameter == p {
            Some(yv)
        } else {
            self.fixed.get(p)
        }
    }

    /// Static field (T) at a grid point.
    pub fn field_at(&self, xv: f64, yv: f64) -> Option<f64> {
        self.parameter_at(AxisParam::BField, xv, yv).or_else(|| {
            self.parameter_at(AxisParam::MagnetCurrent, xv, yv)
                .map(|i| i * self.geometry.field_per_current())
        })
    }

    /// Transverse drive amplitude (rad/s) at a grid point.
    pub fn mw_amplitude_at(&self, xv: f64, yv: f64) -> Option<f64> {
        self.parameter_at(AxisParam::MwAmplitude, xv, yv).or_else(|| {
            let dbm = self.parameter_at(AxisParam::MwPower, xv, yv)?;
            Some(self.mw_antenna.as_ref()?.power_to_amplitude(dbm))
        })
    }

    /// Longitudinal drive amplitude (rad/s) at a grid point.
    pub fn rf_amplitude_at(&self, xv: f64, yv: f64) -> Option<f64> {
        self.parameter_at(AxisParam::RfAmplitude, xv, yv)
            .or_else(|| {
                let v = self.parameter_at(AxisParam::RfVoltage, xv, yv)?;
                self.rf_antenna.as_ref()?.voltage_to_amplitude(v).ok()
            })
            .or_else(|| {
                let dbm = self.parameter_at(AxisParam::RfPower, xv, yv)?;
                Some(self.rf_antenna.as_ref()?.power_to_amplitude(dbm))
            })
    }

    /// Field range (T) implied by the field-like axis, if any.
    pub fn field_axis_range(&self) -> Option<(f64, f64)> {
        for axis in [&self.x, &self.y] {
            match axis.parameter {
                AxisParam::BField => return Some((axis.min, axis.max)),
                AxisParam::MagnetCurrent => {
                    let f = self.geometry.field_per_current();
                    return Some((axis.min * f, axis.max * f));
                }
                _ => {}
            }
        }
        None
    }
}

fn resolve(raw: RawConfig) -> AppResult<SweepConfig> {
    let mode = match raw.sweep.mode.as_str() {
        "single_antenna" => DriveMode::SingleAntenna,
        "two_antenna" => DriveMode::TwoAntenna,
        other => {
            return Err(AppError::Config(format!(
                "unknown mode {other:?} (expected single_antenna or two_antenna)"
            )))
        }
    };

    let axis = |r: &RawAxis| -> AppResult<AxisSpec> {
        let parameter = AxisParam::parse(&r.parameter)?;
        let min = parameter.parse_value(&r.min)?;
        let max = parameter.parse_value(&r.max)?;
        if !(max > min) {
            return Err(AppError::Config(format!(
                "axis {} has an empty range",
                parameter.name()
            )));
        }
        if r.points < 2 {
            return Err(AppError::Config(format!(
                "axis {} needs at least two points",
                parameter.name()
            )));
        }
        Ok(AxisSpec { parameter, min, max, points: r.points })
    };
    let x = axis(&raw.sweep.x)?;
    let y = axis(&raw.sweep.y)?;
    if x.parameter == y.parameter {
        return Err(AppError::Config("x and y sweep the same parameter".into()));
    }

    let constants = PhysicalConstants::new(
        parse_opt(&raw.constants.zero_field_splitting, units::frequency)?
            .unwrap_or_else(|| PhysicalConstants::nv().zero_field_splitting()),
        match &raw.constants.gyromagnetic_ratio {
            Some(s) => {
                // gyromagnetic ratio carries per-tesla units
                let (body, per) = s
                    .trim()
                    .strip_suffix("/T")
                    .map(|b| (b, 1.0))
                    .ok_or_else(|| {
                        AppError::Config(format!("gyromagnetic ratio needs /T units, got {s:?}"))
                    })?;
                units::frequency(body)? * per
            }
            None => PhysicalConstants::nv().gyromagnetic_ratio(),
        },
        parse_opt(&raw.constants.strain_splitting, units::frequency)?.unwrap_or(0.0),
    )
    .map_err(|e| AppError::Config(e.to_string()))?;

    let misalignment = units::angle(&raw.geometry.misalignment)?;
    let field_per_current =
        parse_opt(&raw.geometry.field_per_current, units::field_per_current)?.unwrap_or(1.0);
    let geometry = GeometryConfig::new(misalignment, field_per_current, constants)
        .map_err(|e| AppError::Config(e.to_string()))?;

    let rates = RelaxationRates::new(
        units::rate(&raw.rates.gamma1, raw.rates.angular)?,
        units::rate(&raw.rates.gamma2, raw.rates.angular)?,
    )
    .map_err(|e| AppError::Config(e.to_string()))?;
    let equilibrium = raw.rates.equilibrium_polarization.unwrap_or(1.0);
    if !equilibrium.is_finite() || equilibrium == 0.0 || equilibrium.abs() > 1.0 {
        return Err(AppError::Config(
            "equilibrium polarization must be nonzero and within [-1, 1]".into(),
        ));
    }
    let gamma2_convention = match raw.rates.gamma2_convention.as_deref() {
        None | Some("total") => Gamma2Convention::TotalDecoherence,
        Some("dephasing_only") => Gamma2Convention::DephasingOnly,
        Some(other) => {
            return Err(AppError::Config(format!(
                "unknown gamma2 convention {other:?} (total or dephasing_only)"
            )))
        }
    };

    let antenna = |r: &RawAntenna| -> AppResult<AntennaModel> {
        AntennaModel::new(
            units::inductance(&r.inductance)?,
            parse_opt(&r.impedance, units::resistance)?.unwrap_or(50.0),
            units::frequency_per_sqrt_watt(&r.power_calibration)?,
            parse_opt(&r.voltage_calibration, units::frequency_per_volt)?,
        )
    };
    let mw_antenna = raw.antenna.mw.as_ref().map(antenna).transpose()?;
    let rf_antenna = raw.antenna.rf.as_ref().map(antenna).transpose()?;

    let fixed = FixedValues {
        b_field: parse_opt(&raw.drive.b_field, units::field)?,
        magnet_current: parse_opt(&raw.drive.magnet_current, units::current)?,
        mw_power: parse_opt(&raw.drive.mw_power, units::power_dbm)?,
        mw_amplitude: parse_opt(&raw.drive.mw_amplitude, units::frequency)?,
        rf_power: parse_opt(&raw.drive.rf_power, units::power_dbm)?,
        rf_voltage: parse_opt(&raw.drive.rf_voltage, units::voltage)?,
        rf_amplitude: parse_opt(&raw.drive.rf_amplitude, units::frequency)?,
    };
    // a parameter must not be both swept and fixed
    for axis in [&x, &y] {
        if fixed.get(axis.parameter).is_some() {
            return Err(AppError::Config(format!(
                "{} is both a sweep axis and a fixed value",
                axis.parameter.name()
            )));
        }
    }

    let mw_frequency = units::frequency(&raw.drive.mw_frequency)?;
    let rf_frequency = parse_opt(&raw.drive.rf_frequency, units::frequency)?;

    let pairs = match &raw.sweep.pairs {
        None => LevelPair::all().to_vec(),
        Some(names) => {
            if names.is_empty() {
                return Err(AppError::Config("pairs must not be empty".into()));
            }
            names.iter().map(|s| parse_pair(s)).collect::<AppResult<Vec<_>>>()?
        }
    };

    let resonances = match &raw.resonances {
        None => None,
        Some(r) => {
            let kinds = match &r.kinds {
                None => match mode {
                    DriveMode::SingleAntenna => {
                        vec![ResonanceKind::Superharmonic, ResonanceKind::HalvedSplitting]
                    }
                    DriveMode::TwoAntenna => vec![ResonanceKind::TwoTone],
                },
                Some(names) => names
                    .iter()
                    .map(|s| match s.as_str() {
                        "superharmonic" => Ok(ResonanceKind::Superharmonic),
                        "second_larmor" => Ok(ResonanceKind::HalvedSplitting),
                        "two_tone" => Ok(ResonanceKind::TwoTone),
                        other => {
                            Err(AppError::Config(format!("unknown resonance kind {other:?}")))
                        }
                    })
                    .collect::<AppResult<Vec<_>>>()?,
            };
            let points = r.points.unwrap_or(FieldWindow::DEFAULT_POINTS);
            let window = match (&r.b_min, &r.b_max) {
                (Some(lo), Some(hi)) => Some(
                    FieldWindow::with_points(units::field(lo)?, units::field(hi)?, points)
                        .map_err(|e| AppError::Config(e.to_string()))?,
                ),
                (None, None) => None,
                _ => {
                    return Err(AppError::Config(
                        "resonances need both b_min and b_max, or neither".into(),
                    ))
                }
            };
            let pairs = match &r.pairs {
                None => vec![LevelPair::OneThree, LevelPair::TwoThree],
                Some(names) => names.iter().map(|s| parse_pair(s)).collect::<AppResult<Vec<_>>>()?,
            };
            Some(ResonanceRequest {
                kinds,
                orders: r.orders.unwrap_or(10),
                window,
                points,
                pairs,
            })
        }
    };

    let cfg = SweepConfig {
        mode,
        x,
        y,
        mw_frequency,
        rf_frequency,
        fixed,
        rates,
        equilibrium,
        gamma2_convention,
        geometry,
        mw_antenna,
        rf_antenna,
        l_max: raw.sweep.l_max.unwrap_or(80),
        pairs,
        resonances,
    };
    validate_sources(&cfg)?;
    Ok(cfg)
}

/// Check once that every quantity the per-cell evaluation needs has a
/// source, so the grid loop itself cannot hit configuration errors.
fn validate_sources(cfg: &SweepConfig) -> AppResult<()> {
    let probe = |p: AxisParam| -> bool {
        cfg.x.parameter == p || cfg.y.parameter == p || cfg.fixed.get(p).is_some()
    };
    if !probe(AxisParam::BField) && !probe(AxisParam::MagnetCurrent) {
        return Err(AppError::Config(
            "no static field source: provide b_field or magnet_current".into(),
        ));
    }
    if probe(AxisParam::MagnetCurrent) && cfg.field_at(0.0, 0.0).is_none() {
        return Err(AppError::Config("magnet_current needs geometry.field_per_current".into()));
    }
    let mw_ok = probe(AxisParam::MwAmplitude)
        || (probe(AxisParam::MwPower) && cfg.mw_antenna.is_some());
    if !mw_ok {
        return Err(AppError::Config(
            "no transverse drive source: provide mw_amplitude, or mw_power plus [antenna.mw]"
                .into(),
        ));
    }
    if cfg.mode == DriveMode::TwoAntenna {
        if cfg.rf_frequency.is_none() {
            return Err(AppError::Config("two_antenna mode needs drive.rf_frequency".into()));
        }
        let rf_ok = probe(AxisParam::RfAmplitude)
            || (probe(AxisParam::RfVoltage)
                && cfg.rf_antenna.as_ref().is_some_and(|a| a.voltage_calibration.is_some()))
            || (probe(AxisParam::RfPower) && cfg.rf_antenna.is_some());
        if !rf_ok {
            return Err(AppError::Config(
                "no longitudinal drive source: provide rf_amplitude, rf_voltage plus a \
                 voltage-calibration, or rf_power plus [antenna.rf]"
                    .into(),
            ));
        }
    } else {
        for p in [AxisParam::RfPower, AxisParam::RfVoltage, AxisParam::RfAmplitude] {
            if probe(p) {
                return Err(AppError::Config(format!(
                    "{} requires two_antenna mode",
                    p.name()
                )));
            }
        }
    }
    Ok(())
}
