//! Raster heatmap rendering with axis annotations and overlay lines.
//!
//! The image format carries no contract: it exists so a map can be eyeballed
//! next to the measured panels. Cells are scaled to at least a 500-pixel
//! plot, colored on a perceptually uniform ramp normalized to the grid
//! maximum, with resonance overlays drawn as dashed vertical or horizontal
//! lines.

use std::path::Path;

use image::{Rgb, RgbImage};

use nvmix_core::resonance::ResonanceKind;

use crate::config::SweepConfig;
use crate::error::{AppError, AppResult};
use crate::sweep::{OverlayAxis, SweepGrid};

const MARGIN_LEFT: u32 = 84;
const MARGIN_RIGHT: u32 = 16;
const MARGIN_TOP: u32 = 16;
const MARGIN_BOTTOM: u32 = 56;

// sampled anchors of the familiar dark-blue-to-yellow ramp
const RAMP: [[u8; 3]; 9] = [
    [68, 1, 84],
    [71, 44, 122],
    [59, 81, 139],
    [44, 113, 142],
    [33, 144, 141],
    [39, 173, 129],
    [92, 200, 99],
    [170, 220, 50],
    [253, 231, 37],
];

fn ramp_color(t: f64) -> Rgb<u8> {
    let t = t.clamp(0.0, 1.0) * (RAMP.len() - 1) as f64;
    let i = (t as usize).min(RAMP.len() - 2);
    let f = t - i as f64;
    let mix = |a: u8, b: u8| (a as f64 + f * (b as f64 - a as f64)).round() as u8;
    Rgb([
        mix(RAMP[i][0], RAMP[i + 1][0]),
        mix(RAMP[i][1], RAMP[i + 1][1]),
        mix(RAMP[i][2], RAMP[i + 1][2]),
    ])
}

fn overlay_color(kind: ResonanceKind) -> Rgb<u8> {
    match kind {
        ResonanceKind::Superharmonic => Rgb([255, 255, 255]),
        ResonanceKind::HalvedSplitting => Rgb([255, 64, 64]),
        ResonanceKind::TwoTone => Rgb([255, 160, 0]),
    }
}

// 5x7 glyphs, row bytes with bit 4 the left column
fn glyph(ch: char) -> [u8; 7] {
    match ch.to_ascii_uppercase() {
        '0' => [0x0E, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0E],
        '1' => [0x04, 0x0C, 0x04, 0x04, 0x04, 0x04, 0x0E],
        '2' => [0x0E, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1F],
        '3' => [0x1F, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0E],
        '4' => [0x02, 0x06, 0x0A, 0x12, 0x1F, 0x02, 0x02],
        '5' => [0x1F, 0x10, 0x1E, 0x01, 0x01, 0x11, 0x0E],
        '6' => [0x06, 0x08, 0x10, 0x1E, 0x11, 0x11, 0x0E],
        '7' => [0x1F, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08],
        '8' => [0x0E, 0x11, 0x11, 0x0E, 0x11, 0x11, 0x0E],
        '9' => [0x0E, 0x11, 0x11, 0x0F, 0x01, 0x02, 0x0C],
        'A' => [0x0E, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11],
        'B' => [0x1E, 0x11, 0x11, 0x1E, 0x11, 0x11, 0x1E],
        'C' => [0x0E, 0x11, 0x10, 0x10, 0x10, 0x11, 0x0E],
        'D' => [0x1C, 0x12, 0x11, 0x11, 0x11, 0x12, 0x1C],
        'E' => [0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x1F],
        'F' => [0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x10],
        'G' => [0x0E, 0x11, 0x10, 0x17, 0x11, 0x11, 0x0F],
        'H' => [0x11, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11],
        'I' => [0x0E, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0E],
        'J' => [0x07, 0x02, 0x02, 0x02, 0x02, 0x12, 0x0C],
        'K' => [0x11, 0x12, 0x14, 0x18, 0x14, 0x12, 0x11],
        'L' => [0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1F],
        'M' => [0x11, 0x1B, 0x15, 0x15, 0x11, 0x11, 0x11],
        'N' => [0x11, 0x19, 0x15, 0x13, 0x11, 0x11, 0x11],
        'O' => [0x0E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E],
        'P' => [0x1E, 0x11, 0x11, 0x1E, 0x10, 0x10, 0x10],
        'Q' => [0x0E, 0x11, 0x11, 0x11, 0x15, 0x12, 0x0D],
        'R' => [0x1E, 0x11, 0x11, 0x1E, 0x14, 0x12, 0x11],
        'S' => [0x0F, 0x10, 0x10, 0x0E, 0x01, 0x01, 0x1E],
        'T' => [0x1F, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04],
        'U' => [0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E],
        'V' => [0x11, 0x11, 0x11, 0x11, 0x11, 0x0A, 0x04],
        'W' => [0x11, 0x11, 0x11, 0x15, 0x15, 0x15, 0x0A],
        'X' => [0x11, 0x11, 0x0A, 0x04, 0x0A, 0x11, 0x11],
        'Y' => [0x11, 0x11, 0x0A, 0x04, 0x04, 0x04, 0x04],
        'Z' => [0x1F, 0x01, 0x02, 0x04, 0x08, 0x10, 0x1F],
        '-' => [0x00, 0x00, 0x00, 0x0E, 0x00, 0x00, 0x00],
        '+' => [0x00, 0x04, 0x04, 0x1F, 0x04, 0x04, 0x00],
        '.' => [0x00, 0x00, 0x00, 0x00, 0x00, 0x0C, 0x0C],
        '/' => [0x01, 0x01, 0x02, 0x04, 0x08, 0x10, 0x10],
        '(' => [0x02, 0x04, 0x08, 0x08, 0x08, 0x04, 0x02],
        ')' => [0x08, 0x04, 0x02, 0x02, 0x02, 0x04, 0x08],
        ':' => [0x00, 0x0C, 0x0C, 0x00, 0x0C, 0x0C, 0x00],
        '_' => [0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x1F],
        '=' => [0x00, 0x00, 0x1F, 0x00, 0x1F, 0x00, 0x00],
        _ => [0x00; 7],
    }
}

fn draw_text(img: &mut RgbImage, x: i64, y: i64, text: &str, color: Rgb<u8>) {
    let mut cx = x;
    for ch in text.chars() {
        let g = glyph(ch);
        for (row, bits) in g.iter().enumerate() {
            for col in 0..5 {
                if bits & (0x10 >> col) != 0 {
                    let px = cx + col as i64;
                    let py = y + row as i64;
                    if px >= 0 && py >= 0 && (px as u32) < img.width() && (py as u32) < img.height()
                    {
                        img.put_pixel(px as u32, py as u32, color);
                    }
                }
            }
        }
        cx += 6;
    }
}

fn fmt_tick(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let a = v.abs();
    if (1e-3..1e5).contains(&a) {
        format!("{v:.4}")
    } else {
        format!("{v:.2e}")
    }
}

/// Render the grid to a PNG file.
pub fn write_png(cfg: &SweepConfig, grid: &SweepGrid, path: &Path) -> AppResult<()> {
    let nx = grid.x_values.len() as u32;
    let ny = grid.y_values.len() as u32;
    let sx = (500 / nx).max(1).min(12);
    let sy = (400 / ny).max(1).min(12);
    let plot_w = nx * sx;
    let plot_h = ny * sy;
    let width = MARGIN_LEFT + plot_w + MARGIN_RIGHT;
    let height = MARGIN_TOP + plot_h + MARGIN_BOTTOM;
    let mut img = RgbImage::from_pixel(width, height, Rgb([24, 24, 24]));

    let p_max = grid.max_p().max(1e-30);
    for iy in 0..ny {
        for ix in 0..nx {
            let cell = grid.cell(ix as usize, iy as usize);
            let color = if cell.flagged {
                Rgb([96, 96, 96])
            } else {
                ramp_color(cell.p / p_max)
            };
            // y axis increases upward
            let y0 = MARGIN_TOP + (ny - 1 - iy) * sy;
            let x0 = MARGIN_LEFT + ix * sx;
            for dy in 0..sy {
                for dx in 0..sx {
                    img.put_pixel(x0 + dx, y0 + dy, color);
                }
            }
        }
    }

    // overlays as dashed lines
    let x_lo = grid.x_values[0];
    let x_hi = *grid.x_values.last().unwrap();
    let y_lo = grid.y_values[0];
    let y_hi = *grid.y_values.last().unwrap();
    for line in &grid.overlays {
        let color = overlay_color(line.kind);
        match line.axis {
            OverlayAxis::X => {
                if line.value < x_lo || line.value > x_hi {
                    continue;
                }
                let frac = (line.value - x_lo) / (x_hi - x_lo);
                let px = MARGIN_LEFT + (frac * (plot_w - 1) as f64).round() as u32;
                for py in MARGIN_TOP..MARGIN_TOP + plot_h {
                    if (py - MARGIN_TOP) % 7 < 4 {
                        img.put_pixel(px, py, color);
                    }
                }
            }
            OverlayAxis::Y => {
                if line.value < y_lo || line.value > y_hi {
                    continue;
                }
                let frac = (line.value - y_lo) / (y_hi - y_lo);
                let py = MARGIN_TOP + plot_h - 1 - (frac * (plot_h - 1) as f64).round() as u32;
                for px in MARGIN_LEFT..MARGIN_LEFT + plot_w {
                    if (px - MARGIN_LEFT) % 7 < 4 {
                        img.put_pixel(px, py, color);
                    }
                }
            }
        }
    }

    // frame
    let frame_color = Rgb([200, 200, 200]);
    for px in MARGIN_LEFT - 1..=MARGIN_LEFT + plot_w {
        img.put_pixel(px, MARGIN_TOP - 1, frame_color);
        img.put_pixel(px, MARGIN_TOP + plot_h, frame_color);
    }
    for py in MARGIN_TOP - 1..=MARGIN_TOP + plot_h {
        img.put_pixel(MARGIN_LEFT - 1, py, frame_color);
        img.put_pixel(MARGIN_LEFT + plot_w, py, frame_color);
    }

    // ticks and labels
    let text = Rgb([230, 230, 230]);
    let n_ticks = 5;
    for k in 0..n_ticks {
        let f = k as f64 / (n_ticks - 1) as f64;
        let xv = x_lo + f * (x_hi - x_lo);
        let px = MARGIN_LEFT + (f * (plot_w - 1) as f64).round() as u32;
        for dy in 0..4 {
            img.put_pixel(px, MARGIN_TOP + plot_h + dy, frame_color);
        }
        let label = fmt_tick(xv);
        draw_text(
            &mut img,
            px as i64 - 3 * label.len() as i64,
            (MARGIN_TOP + plot_h + 6) as i64,
            &label,
            text,
        );

        let yv = y_lo + f * (y_hi - y_lo);
        let py = MARGIN_TOP + plot_h - 1 - (f * (plot_h - 1) as f64).round() as u32;
        for dx in 0..4 {
            img.put_pixel(MARGIN_LEFT - 1 - dx, py, frame_color);
        }
        let label = fmt_tick(yv);
        draw_text(
            &mut img,
            (MARGIN_LEFT as i64) - 8 - 6 * label.len() as i64,
            py as i64 - 3,
            &label,
            text,
        );
    }
    let x_label = format!("{} ({})", cfg.x.parameter.name(), cfg.x.parameter.unit());
    draw_text(
        &mut img,
        (MARGIN_LEFT + plot_w / 2) as i64 - 3 * x_label.len() as i64,
        (height - 14) as i64,
        &x_label,
        text,
    );
    let y_label = format!("{} ({})", cfg.y.parameter.name(), cfg.y.parameter.unit());
    draw_text(&mut img, 4, 4, &y_label, text);
    let scale_label = format!("P MAX = {:.3}", p_max);
    draw_text(
        &mut img,
        (MARGIN_LEFT + plot_w).saturating_sub(6 * scale_label.len() as u32 + 2) as i64,
        4,
        &scale_label,
        text,
    );

    img.save(path).map_err(|e| AppError::Io(format!("{}: {e}", path.display())))
}
