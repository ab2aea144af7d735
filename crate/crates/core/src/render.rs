//! CSV and PGM serialization of analysis results.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::signal::{GridUnit, SpectralDensity, SpectrogramGrid};

/// Dynamic range used when no explicit display range is given.
pub const DEFAULT_DYNAMIC_RANGE_DB: f64 = 80.0;

/// Nine significant digits in scientific notation.
pub fn format_sci(v: f64) -> String {
    format!("{v:.8e}")
}

/// `freq_hz,psd` header, then one row per bin.
pub fn psd_to_csv(psd: &SpectralDensity) -> String {
    let mut out = String::with_capacity(32 * (psd.freqs_hz.len() + 1));
    out.push_str("freq_hz,psd\n");
    for (f, p) in psd.freqs_hz.iter().zip(&psd.power) {
        let _ = writeln!(out, "{},{}", format_sci(*f), format_sci(*p));
    }
    out
}

/// Header row `time_s,<freq>...`, then one row per time frame.
pub fn grid_to_csv(grid: &SpectrogramGrid) -> Result<String> {
    if grid.is_empty() {
        return Err(Error::EmptyInput);
    }
    grid.validate()?;
    let mut out = String::new();
    out.push_str("time_s");
    for f in &grid.freqs_hz {
        out.push(',');
        out.push_str(&format_sci(*f));
    }
    out.push('\n');
    for (t, time) in grid.times_s.iter().enumerate() {
        out.push_str(&format_sci(*time));
        for row in &grid.values {
            out.push(',');
            out.push_str(&format_sci(row[t]));
        }
        out.push('\n');
    }
    Ok(out)
}

/// `(min_db, max_db)` spanning the grid maximum and the 80 dB below it.
pub fn default_display_range(grid: &SpectrogramGrid) -> Option<(f64, f64)> {
    grid.max_value()
        .map(|max| (max - DEFAULT_DYNAMIC_RANGE_DB, max))
}

/// Pixel intensity for a dB value: `round(255 · clamp((v − min)/(max − min), 0, 1))`.
pub fn db_to_pixel(v: f64, min_db: f64, max_db: f64) -> u8 {
    let x = (v - min_db) / (max_db - min_db);
    let x = if x.is_nan() { 0.0 } else { x.clamp(0.0, 1.0) };
    (255.0 * x).round() as u8
}

/// Binary greyscale PGM. Width is the number of time frames, height the
/// number of frequency bins; the top row is the highest frequency.
pub fn grid_to_pgm(grid: &SpectrogramGrid, min_db: f64, max_db: f64) -> Result<Vec<u8>> {
    if grid.unit != GridUnit::Db {
        return Err(Error::UnitMismatch {
            expected: GridUnit::Db,
            found: grid.unit,
        });
    }
    if !(min_db < max_db) {
        return Err(Error::invalid(format!(
            "display range needs min_db < max_db, got {min_db} and {max_db}"
        )));
    }
    if grid.is_empty() {
        return Err(Error::EmptyInput);
    }
    grid.validate()?;

    let width = grid.n_times();
    let height = grid.n_freqs();
    let header = format!("P5\n{width} {height}\n255\n");
    let mut out = Vec::with_capacity(header.len() + width * height);
    out.extend_from_slice(header.as_bytes());
    for row in grid.values.iter().rev() {
        out.extend(row.iter().map(|&v| db_to_pixel(v, min_db, max_db)));
    }
    Ok(out)
}
