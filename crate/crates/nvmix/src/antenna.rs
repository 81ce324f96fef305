//! Antenna model: impedance mismatch bookkeeping and the power-to-amplitude
//! calibration.
//!
//! Delivered drive amplitude scales with the square root of the applied
//! power; the proportionality constant is a per-antenna calibration. The
//! mismatch coefficient `omega L / Z0` is carried for reference and for
//! backing out inductances from measured mismatch values.

use crate::error::{AppError, AppResult};

/// Inductance, line impedance, and drive calibration of one antenna.
#[derive(Clone, Copy, Debug)]
pub struct AntennaModel {
    /// Antenna inductance (H).
    pub inductance: f64,
    /// Line impedance (ohm), conventionally 50.
    pub impedance: f64,
    /// Drive amplitude per root watt delivered (rad/s per sqrt(W)).
    pub power_calibration: f64,
    /// Drive amplitude per volt applied, for voltage-driven axes
    /// (rad/s per V).
    pub voltage_calibration: Option<f64>,
}

impl AntennaModel {
    /// Validated constructor.
    pub fn new(
        inductance: f64,
        impedance: f64,
        power_calibration: f64,
        voltage_calibration: Option<f64>,
    ) -> AppResult<Self> {
        if !(inductance > 0.0 && impedance > 0.0 && power_calibration > 0.0) {
            return Err(AppError::Config(
                "antenna inductance, impedance, and calibration must be positive".into(),
            ));
        }
        if let Some(vc) = voltage_calibration {
            if !(vc > 0.0) {
                return Err(AppError::Config("voltage calibration must be positive".into()));
            }
        }
        Ok(Self { inductance, impedance, power_calibration, voltage_calibration })
    }

    /// Impedance mismatch coefficient `omega L / Z0` at an angular drive
    /// frequency (rad/s).
    pub fn mismatch_coefficient(&self, omega: f64) -> f64 {
        omega * self.inductance / self.impedance
    }

    /// Drive amplitude (rad/s) delivered at the given power (dBm).
    pub fn power_to_amplitude(&self, power_dbm: f64) -> f64 {
        self.power_calibration * dbm_to_watts(power_dbm).sqrt()
    }

    /// Drive amplitude (rad/s) at the given voltage (V); requires the
    /// voltage calibration.
    pub fn voltage_to_amplitude(&self, volts: f64) -> AppResult<f64> {
        let vc = self.voltage_calibration.ok_or_else(|| {
            AppError::Config("antenna has no voltage calibration".into())
        })?;
        Ok(vc * volts.abs())
    }
}

/// dBm to watts.
pub fn dbm_to_watts(dbm: f64) -> f64 {
    1e-3 * 10f64.powf(dbm / 10.0)
}
