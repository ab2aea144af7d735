//! Short-time spectral analysis on the Welch segmentation.

use crate::error::{Error, Result};
use crate::signal::{argmax_lowest, AnalysisParams, GridUnit, SpectrogramGrid, TimeSeries};
use crate::welch::segment_periodograms;

/// Time × frequency periodogram grid. Column `j` is the periodogram of
/// segment `j`, stamped at the segment center `(start + nperseg/2) / fs`.
pub fn spectrogram(ts: &TimeSeries, params: &AnalysisParams) -> Result<SpectrogramGrid> {
    let (segments, freqs_hz, columns) = segment_periodograms(ts, params)?;
    let fs = ts.sample_rate_hz();
    let half = params.nperseg as f64 / 2.0;
    let times_s = segments
        .iter()
        .map(|s| (s.start_index as f64 + half) / fs)
        .collect();

    let values = (0..freqs_hz.len())
        .map(|f| columns.iter().map(|col| col[f]).collect())
        .collect();

    Ok(SpectrogramGrid {
        times_s,
        freqs_hz,
        values,
        unit: GridUnit::Power,
    })
}

/// Converts a power grid to decibels, `max(10·log10(v), floor_db)`.
pub fn to_db(grid: &SpectrogramGrid, floor_db: f64) -> Result<SpectrogramGrid> {
    if grid.unit != GridUnit::Power {
        return Err(Error::UnitMismatch {
            expected: GridUnit::Power,
            found: grid.unit,
        });
    }
    if !(floor_db < 0.0) {
        return Err(Error::invalid(format!(
            "dB floor must be negative, got {floor_db}"
        )));
    }
    let values = grid
        .values
        .iter()
        .map(|row| row.iter().map(|&v| power_to_db(v, floor_db)).collect())
        .collect();
    Ok(SpectrogramGrid {
        times_s: grid.times_s.clone(),
        freqs_hz: grid.freqs_hz.clone(),
        values,
        unit: GridUnit::Db,
    })
}

pub fn power_to_db(v: f64, floor_db: f64) -> f64 {
    if v > 0.0 {
        (10.0 * v.log10()).max(floor_db)
    } else {
        floor_db
    }
}

/// Frequency of the strongest bin in every column, as `(time_s, freq_hz)`.
/// Ties resolve to the lower frequency.
pub fn ridge_track(grid: &SpectrogramGrid) -> Vec<(f64, f64)> {
    (0..grid.n_times())
        .filter_map(|t| {
            let column = grid.column(t);
            argmax_lowest(&column).map(|f| (grid.times_s[t], grid.freqs_hz[f]))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::Detrend;
    use crate::synth::{synth_cosine_sum, SynthComponent};
    use crate::window::WindowKind;

    #[test]
    fn constant_signal_lands_in_dc_row() {
        // a Hann window's own transform spans bins 0 and 1, so only the
        // rectangular window keeps a constant confined to DC
        let ts = TimeSeries::new(vec![1.5; 4096], 1000.0).unwrap();
        let params = AnalysisParams::new(256, 128)
            .unwrap()
            .with_window(WindowKind::Rectangular)
            .with_detrend(Detrend::None);
        let grid = spectrogram(&ts, &params).unwrap();
        grid.validate().unwrap();
        for t in 0..grid.n_times() {
            let col = grid.column(t);
            let total: f64 = col.iter().sum();
            assert!(col[0] > 0.0);
            assert!(col[1..].iter().all(|&v| v <= 1e-9 * total), "column {t}");
        }
    }

    #[test]
    fn paper_spectrogram_layout() {
        let ts = TimeSeries::new(vec![0.0; 44100], 44100.0).unwrap();
        let grid = spectrogram(&ts, &AnalysisParams::spectrogram_default()).unwrap();
        assert_eq!(grid.n_freqs(), 129);
        assert_eq!(grid.n_times(), (44100 - 128) / 128);
        let spacing = grid.times_s[1] - grid.times_s[0];
        assert!((spacing - 128.0 / 44100.0).abs() < 1e-15);
        assert!((spacing * 1e3 - 2.902).abs() < 1e-3);
        assert_eq!(grid.times_s[0], 128.0 / 44100.0);
    }

    #[test]
    fn nineteen_columns() {
        let ts = TimeSeries::new(vec![0.0; 192000], 96000.0).unwrap();
        let grid = spectrogram(&ts, &AnalysisParams::new(10000, 0).unwrap()).unwrap();
        assert_eq!(grid.n_times(), 19);
    }

    #[test]
    fn too_short_signal() {
        let ts = TimeSeries::new(vec![0.0; 100], 1000.0).unwrap();
        assert!(matches!(
            spectrogram(&ts, &AnalysisParams::spectrogram_default()),
            Err(Error::SignalTooShort { .. })
        ));
    }

    #[test]
    fn db_conversion() {
        let grid = SpectrogramGrid {
            times_s: vec![0.0, 1.0, 2.0],
            freqs_hz: vec![0.0],
            values: vec![vec![1.0, 0.0, 1e-3]],
            unit: GridUnit::Power,
        };
        let db = to_db(&grid, -120.0).unwrap();
        assert_eq!(db.unit, GridUnit::Db);
        assert_eq!(db.values[0][0], 0.0);
        assert_eq!(db.values[0][1], -120.0);
        assert!((db.values[0][2] + 30.0).abs() < 1e-12);

        assert!(matches!(
            to_db(&db, -120.0),
            Err(Error::UnitMismatch { .. })
        ));
        assert!(to_db(&grid, 0.0).is_err());
        assert_eq!(to_db(&grid, -20.0).unwrap().values[0][2], -20.0);
    }

    #[test]
    fn ridge_of_tone() {
        let fs = 8000.0;
        let ts = synth_cosine_sum(0.0, &[SynthComponent::new(1.0, 1000.0, 0.3)], fs, 0.5).unwrap();
        let params = AnalysisParams::new(256, 128).unwrap();
        let grid = spectrogram(&ts, &params).unwrap();
        let df = fs / 256.0;
        for (_, f) in ridge_track(&grid) {
            assert!((f - 1000.0).abs() <= df / 2.0);
        }
    }

    #[test]
    fn ridge_of_silence_is_dc() {
        let ts = TimeSeries::new(vec![0.0; 1024], 1000.0).unwrap();
        let grid = spectrogram(&ts, &AnalysisParams::new(128, 64).unwrap()).unwrap();
        let ridge = ridge_track(&grid);
        assert_eq!(ridge.len(), grid.n_times());
        assert!(ridge.iter().all(|&(_, f)| f == 0.0));
    }
}
