//! Parsing of unit-annotated quantities from configuration files.
//!
//! Every physical entry is a string like `"145 MHz"`, `"-30 dBm"`, or
//! `"0.01 T/A"`. Frequencies given in hertz units are ordinary frequencies
//! and are converted to angular rad/s at this boundary; `rad/s` units pass
//! through untouched. That keeps a single angular convention inside and the
//! factor-2-pi handling in exactly one place.

use std::f64::consts::TAU;

use crate::error::{AppError, AppResult};

fn split(s: &str) -> AppResult<(f64, &str)> {
    let t = s.trim();
    let cut = t
        .find(|ch: char| !(ch.is_ascii_digit() || "+-.eE".contains(ch)))
        .ok_or_else(|| AppError::Config(format!("missing unit in {t:?}")))?;
    let (num, unit) = t.split_at(cut);
    let value: f64 = num
        .trim()
        .parse()
        .map_err(|_| AppError::Config(format!("bad number in {t:?}")))?;
    if !value.is_finite() {
        return Err(AppError::Config(format!("non-finite value in {t:?}")));
    }
    Ok((value, unit.trim()))
}

fn lookup(value: f64, unit: &str, table: &[(&str, f64)], what: &str) -> AppResult<f64> {
    for (name, scale) in table {
        if unit == *name {
            return Ok(value * scale);
        }
    }
    Err(AppError::Config(format!("unknown {what} unit {unit:?}")))
}

/// Frequency to angular rad/s. Hertz units take the 2 pi; `rad/s` units do
/// not.
pub fn frequency(s: &str) -> AppResult<f64> {
    let (v, u) = split(s)?;
    lookup(
        v,
        u,
        &[
            ("Hz", TAU),
            ("kHz", TAU * 1e3),
            ("MHz", TAU * 1e6),
            ("GHz", TAU * 1e9),
            ("rad/s", 1.0),
            ("krad/s", 1e3),
            ("Mrad/s", 1e6),
            ("Grad/s", 1e9),
        ],
        "frequency",
    )
}

/// Relaxation rate to rad/s. With `angular` set, hertz units are read as
/// angular frequencies expressed in cycles-like notation (no extra 2 pi).
pub fn rate(s: &str, angular: bool) -> AppResult<f64> {
    if angular {
        let (v, u) = split(s)?;
        lookup(
            v,
            u,
            &[
                ("Hz", 1.0),
                ("kHz", 1e3),
                ("MHz", 1e6),
                ("GHz", 1e9),
                ("rad/s", 1.0),
                ("krad/s", 1e3),
                ("Mrad/s", 1e6),
                ("Grad/s", 1e9),
            ],
            "rate",
        )
    } else {
        frequency(s)
    }
}

/// Magnetic field to tesla.
pub fn field(s: &str) -> AppResult<f64> {
    let (v, u) = split(s)?;
    lookup(v, u, &[("T", 1.0), ("mT", 1e-3), ("uT", 1e-6), ("nT", 1e-9), ("G", 1e-4)], "field")
}

/// Power to dBm. Watt units are converted.
pub fn power_dbm(s: &str) -> AppResult<f64> {
    let (v, u) = split(s)?;
    match u {
        "dBm" => Ok(v),
        "W" | "mW" | "uW" => {
            let watts = match u {
                "W" => v,
                "mW" => v * 1e-3,
                _ => v * 1e-6,
            };
            if watts <= 0.0 {
                return Err(AppError::Config(format!("power must be positive in {s:?}")));
            }
            Ok(10.0 * (watts / 1e-3).log10())
        }
        _ => Err(AppError::Config(format!("unknown power unit {u:?}"))),
    }
}

/// Angle to radians.
pub fn angle(s: &str) -> AppResult<f64> {
    let (v, u) = split(s)?;
    lookup(
        v,
        u,
        &[("rad", 1.0), ("mrad", 1e-3), ("deg", std::f64::consts::PI / 180.0)],
        "angle",
    )
}

/// Voltage to volts.
pub fn voltage(s: &str) -> AppResult<f64> {
    let (v, u) = split(s)?;
    lookup(v, u, &[("V", 1.0), ("mV", 1e-3), ("uV", 1e-6)], "voltage")
}

/// Current to amperes.
pub fn current(s: &str) -> AppResult<f64> {
    let (v, u) = split(s)?;
    lookup(v, u, &[("A", 1.0), ("mA", 1e-3), ("uA", 1e-6)], "current")
}

/// Inductance to henry.
pub fn inductance(s: &str) -> AppResult<f64> {
    let (v, u) = split(s)?;
    lookup(v, u, &[("H", 1.0), ("mH", 1e-3), ("uH", 1e-6), ("nH", 1e-9)], "inductance")
}

/// Resistance to ohm.
pub fn resistance(s: &str) -> AppResult<f64> {
    let (v, u) = split(s)?;
    lookup(v, u, &[("ohm", 1.0), ("kohm", 1e3)], "resistance")
}

/// Field-to-current calibration to T/A.
pub fn field_per_current(s: &str) -> AppResult<f64> {
    let (v, u) = split(s)?;
    lookup(v, u, &[("T/A", 1.0), ("mT/A", 1e-3), ("uT/A", 1e-6), ("G/A", 1e-4)], "field/current")
}

/// Drive-amplitude-per-volt calibration to rad/s per volt.
pub fn frequency_per_volt(s: &str) -> AppResult<f64> {
    let (v, u) = split(s)?;
    lookup(
        v,
        u,
        &[
            ("Hz/V", TAU),
            ("kHz/V", TAU * 1e3),
            ("MHz/V", TAU * 1e6),
            ("GHz/V", TAU * 1e9),
            ("rad/s/V", 1.0),
        ],
        "frequency-per-volt",
    )
}

/// Drive-amplitude-per-root-watt calibration to rad/s per sqrt(W).
pub fn frequency_per_sqrt_watt(s: &str) -> AppResult<f64> {
    let (v, u) = split(s)?;
    lookup(
        v,
        u,
        &[
            ("Hz/sqrt(W)", TAU),
            ("kHz/sqrt(W)", TAU * 1e3),
            ("MHz/sqrt(W)", TAU * 1e6),
            ("GHz/sqrt(W)", TAU * 1e9),
            ("rad/s/sqrt(W)", 1.0),
        ],
        "frequency-per-root-watt",
    )
}

/// Dimensionless entry (plain number allowed, no unit).
pub fn dimensionless(s: &str) -> AppResult<f64> {
    s.trim()
        .parse()
        .map_err(|_| AppError::Config(format!("bad number {s:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frequencies_take_the_two_pi() {
        assert!((frequency("145 MHz").unwrap() - TAU * 145e6).abs() < 1e-3);
        assert!((frequency("2.87 GHz").unwrap() - TAU * 2.87e9).abs() < 1.0);
        assert_eq!(frequency("7 rad/s").unwrap(), 7.0);
        assert!(frequency("12 parsec").is_err());
        assert!(frequency("12").is_err());
    }

    #[test]
    fn rates_respect_the_angular_switch() {
        assert!((rate("0.5 MHz", false).unwrap() - TAU * 0.5e6).abs() < 1e-6);
        assert_eq!(rate("0.5 MHz", true).unwrap(), 0.5e6);
    }

    #[test]
    fn power_units() {
        assert_eq!(power_dbm("-30 dBm").unwrap(), -30.0);
        assert!((power_dbm("1 W").unwrap() - 30.0).abs() < 1e-12);
        assert!((power_dbm("1 mW").unwrap() - 0.0).abs() < 1e-12);
        assert!(power_dbm("-1 W").is_err());
    }

    #[test]
    fn misc_units() {
        assert!((angle("1 deg").unwrap() - 0.017_453_292_519_943_295).abs() < 1e-17);
        assert!((field("10 mT").unwrap() - 0.01).abs() < 1e-18);
        assert_eq!(field("1 G").unwrap(), 1e-4);
        assert!((inductance("74.8 uH").unwrap() - 74.8e-6).abs() < 1e-18);
        assert!((field_per_current("0.01 T/A").unwrap() - 0.01).abs() < 1e-18);
        assert!((frequency_per_volt("35 MHz/V").unwrap() - TAU * 35e6).abs() < 1e-3);
        assert!((frequency_per_sqrt_watt("20 GHz/sqrt(W)").unwrap() - TAU * 20e9).abs() < 1.0);
    }
}
