//! CSV emission and parsing for sweep grids.
//!
//! Layout: comment header lines describing the axes, one column-name line,
//! then `x,y,P,dominance_ratio,l_star` rows in row-major order (y outer, x
//! inner). Numbers carry nine significant digits; identical configurations
//! produce byte-identical files. Flagged cells are written with a dominance
//! ratio of zero (real ratios are always at least one).

use std::fmt::Write as _;
use std::io::{BufWriter, Write};
use std::path::Path;

use nvmix_core::frame::LevelPair;

use crate::config::SweepConfig;
use crate::error::{AppError, AppResult};
use crate::sweep::{CellValue, SweepGrid};

fn fmt_sig9(v: f64) -> String {
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    format!("{v:.8e}")
}

/// Render the CSV into a string.
pub fn csv_string(cfg: &SweepConfig, grid: &SweepGrid) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# nvmix map");
    let _ = writeln!(
        out,
        "# axis x {} {} {} {} {}",
        cfg.x.parameter.name(),
        cfg.x.parameter.unit(),
        fmt_sig9(cfg.x.min),
        fmt_sig9(cfg.x.max),
        cfg.x.points
    );
    let _ = writeln!(
        out,
        "# axis y {} {} {} {} {}",
        cfg.y.parameter.name(),
        cfg.y.parameter.unit(),
        fmt_sig9(cfg.y.min),
        fmt_sig9(cfg.y.max),
        cfg.y.points
    );
    let _ = writeln!(out, "x,y,P,dominance_ratio,l_star");
    let nx = grid.x_values.len();
    for (iy, y) in grid.y_values.iter().enumerate() {
        for (ix, x) in grid.x_values.iter().enumerate() {
            let cell = &grid.cells[iy * nx + ix];
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                fmt_sig9(*x),
                fmt_sig9(*y),
                fmt_sig9(cell.p),
                fmt_sig9(if cell.flagged { 0.0 } else { cell.ratio }),
                cell.l_star
            );
        }
    }
    out
}

/// Write the CSV to a file.
pub fn write_csv(cfg: &SweepConfig, grid: &SweepGrid, path: &Path) -> AppResult<()> {
    let file = std::fs::File::create(path).map_err(|e| AppError::io(path, e))?;
    let mut writer = BufWriter::new(file);
    writer
        .write_all(csv_string(cfg, grid).as_bytes())
        .and_then(|_| writer.flush())
        .map_err(|e| AppError::io(path, e))
}

/// Axis metadata recovered from a CSV header.
#[derive(Clone, Debug, PartialEq)]
pub struct ParsedAxis {
    /// Parameter name.
    pub name: String,
    /// Unit label.
    pub unit: String,
    /// Range and node count.
    pub min: f64,
    /// Upper edge.
    pub max: f64,
    /// Node count.
    pub points: usize,
}

/// A grid read back from CSV.
#[derive(Clone, Debug)]
pub struct ParsedGrid {
    /// x-axis metadata.
    pub x: ParsedAxis,
    /// y-axis metadata.
    pub y: ParsedAxis,
    /// The grid itself (no overlays; those are not serialized).
    pub grid: SweepGrid,
}

/// Parse CSV text produced by [`csv_string`].
pub fn parse_csv(text: &str) -> AppResult<ParsedGrid> {
    let bad = |msg: &str| AppError::Io(format!("csv parse: {msg}"));
    let mut axes: Vec<ParsedAxis> = Vec::new();
    let mut x_values = Vec::new();
    let mut y_values = Vec::new();
    let mut cells = Vec::new();
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix("# axis ") {
            let f: Vec<&str> = rest.split_whitespace().collect();
            if f.len() != 6 {
                return Err(bad("malformed axis line"));
            }
            axes.push(ParsedAxis {
                name: f[1].to_string(),
                unit: f[2].to_string(),
                min: f[3].parse().map_err(|_| bad("axis min"))?,
                max: f[4].parse().map_err(|_| bad("axis max"))?,
                points: f[5].parse().map_err(|_| bad("axis points"))?,
            });
            continue;
        }
        if line.starts_with('#') || line.starts_with('x') || line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 5 {
            return Err(bad("malformed data row"));
        }
        let parse = |s: &str| -> AppResult<f64> {
            match s {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                _ => s.parse().map_err(|_| bad("number")),
            }
        };
        let x = parse(f[0])?;
        let y = parse(f[1])?;
        let p = parse(f[2])?;
        let ratio = parse(f[3])?;
        let l_star: i32 = f[4].parse().map_err(|_| bad("order"))?;
        if y_values.last() != Some(&y) {
            y_values.push(y);
            x_values.clear();
        }
        x_values.push(x);
        cells.push(CellValue {
            p,
            ratio,
            l_star,
            pair: LevelPair::OneTwo,
            flagged: ratio == 0.0,
        });
    }
    let [x, y] = axes.as_slice() else {
        return Err(bad("expected two axis lines"));
    };
    if x_values.len() != x.points || y_values.len() != y.points {
        return Err(bad("row count does not match axis metadata"));
    }
    if cells.len() != x.points * y.points {
        return Err(bad("cell count does not match axes"));
    }
    Ok(ParsedGrid {
        x: x.clone(),
        y: y.clone(),
        grid: SweepGrid { x_values, y_values, cells, overlays: Vec::new() },
    })
}
