//! Map-level integration: a two-tone interference sweep over voltage and
//! magnet current, overlay placement on the current axis, and file output
//! smoke checks.

use std::f64::consts::TAU;

use nvmix::config::SweepConfig;
use nvmix::emit::{csv_string, parse_csv, write_csv};
use nvmix::render::write_png;
use nvmix::sweep::{compute_resonances, overlay_resonances, run_map, OverlayAxis};

// voltage-driven interference sweep far above the crossing: the modulation
// index in volts is very nearly the voltage itself (calibration matches the
// modulation frequency, the mixing angle is almost closed)
const INTERFERENCE_MAP: &str = r#"
[sweep]
mode = "two_antenna"
l_max = 40
pairs = ["1-2"]

[sweep.x]
parameter = "rf_voltage"
min = "0.05 V"
max = "4 V"
points = 320

[sweep.y]
parameter = "magnet_current"
min = "21.3 A"
max = "21.7 A"
points = 41

[drive]
mw_frequency = "3.15 GHz"
rf_frequency = "10.5 MHz"
mw_amplitude = "5.6 MHz"

[rates]
gamma1 = "0.5 MHz"
gamma2 = "2 MHz"

[geometry]
misalignment = "1 deg"
field_per_current = "0.01 T/A"

[antenna.rf]
inductance = "74.8 uH"
power_calibration = "1 GHz/sqrt(W)"
voltage_calibration = "10.5 MHz/V"

[resonances]
kinds = ["two_tone"]
orders = 1
pairs = ["1-2"]
"#;

#[test]
fn interference_null_sits_near_the_first_bessel_zero() {
    let cfg = SweepConfig::from_str(INTERFERENCE_MAP).unwrap();
    let grid = run_map(&cfg).unwrap();
    // row closest to the direct resonance: exact splitting equals the drive
    let lines = compute_resonances(&cfg).unwrap();
    let center = lines
        .iter()
        .find(|l| l.order == 0)
        .expect("direct-transition line in range");
    let f2c = cfg.geometry.field_per_current();
    let iy = grid
        .y_values
        .iter()
        .enumerate()
        .min_by(|a, b| {
            (a.1 * f2c - center.b_field)
                .abs()
                .total_cmp(&(b.1 * f2c - center.b_field).abs())
        })
        .unwrap()
        .0;
    // on that row the coefficient dips where the carrier weight crosses its
    // first zero; the dip bottom is a plateau set by the neighboring
    // sidebands, so the check is a window rather than a point
    let row: Vec<f64> =
        (0..grid.x_values.len()).map(|ix| grid.cell(ix, iy).p).collect();
    let in_window = |v: f64| (1.5..3.5).contains(&v);
    let (k_min, _) = row
        .iter()
        .enumerate()
        .filter(|(k, _)| in_window(grid.x_values[*k]))
        .min_by(|a, b| a.1.total_cmp(b.1))
        .unwrap();
    let volts = grid.x_values[k_min];
    // modulation index per volt: calibration times |cos(theta)| over the
    // modulation frequency = 0.9989
    let index = volts * 0.9989;
    assert!(
        (index - 2.404_825_557_695_773).abs() < 0.25,
        "null at index {index} (voltage {volts})"
    );
    // the carrier order loses dominance around the null
    assert!(grid.cell(k_min, iy).l_star.abs() <= 1);
}

#[test]
fn overlays_land_on_the_current_axis() {
    let cfg = SweepConfig::from_str(INTERFERENCE_MAP).unwrap();
    let mut grid = run_map(&cfg).unwrap();
    let lines = compute_resonances(&cfg).unwrap();
    assert!(!lines.is_empty());
    overlay_resonances(&mut grid, &cfg, &lines).unwrap();
    let f2c = cfg.geometry.field_per_current();
    for (overlay, line) in grid.overlays.iter().zip(&lines) {
        assert_eq!(overlay.axis, OverlayAxis::Y);
        assert!((overlay.value * f2c - line.b_field).abs() < 1e-12);
    }
}

#[test]
fn csv_and_png_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let small = INTERFERENCE_MAP
        .replace("points = 320", "points = 24")
        .replace("points = 41", "points = 8");
    let cfg = SweepConfig::from_str(&small).unwrap();
    let mut grid = run_map(&cfg).unwrap();
    let lines = compute_resonances(&cfg).unwrap();
    overlay_resonances(&mut grid, &cfg, &lines).unwrap();

    let csv_path = dir.path().join("map.csv");
    write_csv(&cfg, &grid, &csv_path).unwrap();
    let text = std::fs::read_to_string(&csv_path).unwrap();
    let parsed = parse_csv(&text).unwrap();
    assert_eq!(csv_string(&cfg, &parsed.grid), text);

    let png_path = dir.path().join("map.png");
    write_png(&cfg, &grid, &png_path).unwrap();
    let meta = std::fs::metadata(&png_path).unwrap();
    assert!(meta.len() > 1000, "png suspiciously small");
}
