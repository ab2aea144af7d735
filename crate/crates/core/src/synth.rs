//! Test-signal generators with analytically known spectra.
//!
//! Sample `n` is taken at `t = n / fs`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::signal::TimeSeries;

/// One cosine term `A·cos(2πft + φ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthComponent {
    pub amplitude: f64,
    pub freq_hz: f64,
    pub phase_rad: f64,
}

impl SynthComponent {
    pub fn new(amplitude: f64, freq_hz: f64, phase_rad: f64) -> Self {
        Self {
            amplitude,
            freq_hz,
            phase_rad,
        }
    }
}

fn sample_count(fs_hz: f64, duration_s: f64) -> Result<usize> {
    if !(fs_hz.is_finite() && fs_hz > 0.0) {
        return Err(Error::invalid(format!(
            "sample rate must be positive, got {fs_hz}"
        )));
    }
    if !(duration_s.is_finite() && duration_s > 0.0) {
        return Err(Error::invalid(format!(
            "duration must be positive, got {duration_s}"
        )));
    }
    let n = (fs_hz * duration_s).round();
    if n < 1.0 {
        return Err(Error::invalid(format!(
            "{duration_s} s at {fs_hz} Hz yields no samples"
        )));
    }
    Ok(n as usize)
}

/// `a0 + Σ A_k cos(2π f_k t + φ_k)` sampled for `round(fs · duration)` samples.
pub fn synth_cosine_sum(
    a0: f64,
    components: &[SynthComponent],
    fs_hz: f64,
    duration_s: f64,
) -> Result<TimeSeries> {
    let n = sample_count(fs_hz, duration_s)?;
    if let Some(bad) = components
        .iter()
        .find(|c| !(c.freq_hz.is_finite() && c.freq_hz >= 0.0))
    {
        return Err(Error::invalid(format!(
            "component frequency must be non-negative, got {}",
            bad.freq_hz
        )));
    }
    let samples = (0..n)
        .map(|i| {
            let t = i as f64 / fs_hz;
            a0 + components
                .iter()
                .map(|c| c.amplitude * (2.0 * PI * c.freq_hz * t + c.phase_rad).cos())
                .sum::<f64>()
        })
        .collect();
    TimeSeries::new(samples, fs_hz)
}

/// Partial Fourier sum of the odd-symmetric ±1 square wave of fundamental
/// `f0_hz` using the first `n_harmonics` odd harmonics:
/// `Σ_{m=1..M} 4/(π(2m−1)) · sin(2π(2m−1) f0 t)`.
pub fn synth_square_partial_sum(
    f0_hz: f64,
    n_harmonics: usize,
    fs_hz: f64,
    duration_s: f64,
) -> Result<TimeSeries> {
    if n_harmonics == 0 {
        return Err(Error::invalid("at least one harmonic is required"));
    }
    if !(f0_hz.is_finite() && f0_hz > 0.0) {
        return Err(Error::invalid(format!(
            "fundamental must be positive, got {f0_hz}"
        )));
    }
    let n = sample_count(fs_hz, duration_s)?;
    let highest = f0_hz * (2 * n_harmonics - 1) as f64;
    check_nyquist(highest, fs_hz)?;

    let samples = (0..n)
        .map(|i| square_partial_sum_at(f0_hz, n_harmonics, i as f64 / fs_hz))
        .collect();
    TimeSeries::new(samples, fs_hz)
}

/// Value of the square-wave partial sum at time `t`.
pub fn square_partial_sum_at(f0_hz: f64, n_harmonics: usize, t: f64) -> f64 {
    (1..=n_harmonics)
        .map(|m| {
            let h = (2 * m - 1) as f64;
            4.0 / (PI * h) * (2.0 * PI * h * f0_hz * t).sin()
        })
        .sum()
}

/// Ideal square wave matching [`synth_square_partial_sum`]: `+1` on the
/// first half of each period, `-1` on the second, `0` at the jumps.
pub fn ideal_square(f0_hz: f64, t: f64) -> f64 {
    let phase = (t * f0_hz).rem_euclid(1.0);
    if phase == 0.0 || phase == 0.5 {
        0.0
    } else if phase < 0.5 {
        1.0
    } else {
        -1.0
    }
}

/// Linear chirp `cos(2π f0 t + π·rate·t²)`, whose instantaneous frequency is
/// `f0 + rate·t`.
pub fn synth_linear_chirp(
    f0_hz: f64,
    rate_hz_per_s: f64,
    fs_hz: f64,
    duration_s: f64,
) -> Result<TimeSeries> {
    let n = sample_count(fs_hz, duration_s)?;
    if !(f0_hz.is_finite() && rate_hz_per_s.is_finite()) {
        return Err(Error::invalid("chirp parameters must be finite"));
    }
    let f_end = f0_hz + rate_hz_per_s * duration_s;
    if f0_hz < 0.0 || f_end < 0.0 {
        return Err(Error::invalid(format!(
            "chirp sweeps through negative frequency ({f0_hz} Hz to {f_end} Hz)"
        )));
    }
    check_nyquist(f0_hz.max(f_end), fs_hz)?;

    let samples = (0..n)
        .map(|i| {
            let t = i as f64 / fs_hz;
            (2.0 * PI * f0_hz * t + PI * rate_hz_per_s * t * t).cos()
        })
        .collect();
    TimeSeries::new(samples, fs_hz)
}

/// Instantaneous frequency of [`synth_linear_chirp`] at time `t`.
pub fn chirp_instantaneous_freq(f0_hz: f64, rate_hz_per_s: f64, t: f64) -> f64 {
    f0_hz + rate_hz_per_s * t
}

fn check_nyquist(highest_hz: f64, fs_hz: f64) -> Result<()> {
    let nyquist_hz = fs_hz / 2.0;
    if highest_hz >= nyquist_hz {
        return Err(Error::NyquistViolation {
            highest_hz,
            nyquist_hz,
        });
    }
    Ok(())
}
