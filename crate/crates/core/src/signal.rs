//! Core data types shared by every analysis stage.
//!
//! All types are plain owned data: once built they are never mutated by the
//! analysis functions, so they can be shared freely across threads.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::window::WindowKind;

/// A uniformly sampled, real-valued signal.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    samples: Vec<f64>,
    sample_rate_hz: f64,
}

impl TimeSeries {
    /// Builds a series. The sample rate must be finite and positive; the
    /// sample vector may be empty, but analysis operations reject empty input.
    pub fn new(samples: Vec<f64>, sample_rate_hz: f64) -> Result<Self> {
        if !(sample_rate_hz.is_finite() && sample_rate_hz > 0.0) {
            return Err(Error::invalid(format!(
                "sample rate must be positive and finite, got {sample_rate_hz}"
            )));
        }
        Ok(Self {
            samples,
            sample_rate_hz,
        })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn sample_rate_hz(&self) -> f64 {
        self.sample_rate_hz
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    /// Length of the signal in seconds, `len / fs`.
    pub fn duration_s(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate_hz
    }

    /// Mean of the squared samples, `(1/N) Σ x[n]²`.
    pub fn mean_power(&self) -> Result<f64> {
        if self.samples.is_empty() {
            return Err(Error::EmptyInput);
        }
        let energy: f64 = self.samples.iter().map(|x| x * x).sum();
        Ok(energy / self.samples.len() as f64)
    }

    /// Returns a copy with every sample multiplied by `gain`.
    pub fn scaled(&self, gain: f64) -> Self {
        Self {
            samples: self.samples.iter().map(|x| x * gain).collect(),
            sample_rate_hz: self.sample_rate_hz,
        }
    }

    /// Appends `other` to `self`. Both series must share a sample rate.
    pub fn concat(&self, other: &TimeSeries) -> Result<Self> {
        if self.sample_rate_hz != other.sample_rate_hz {
            return Err(Error::invalid(format!(
                "cannot concatenate series at {} Hz and {} Hz",
                self.sample_rate_hz, other.sample_rate_hz
            )));
        }
        let mut samples = Vec::with_capacity(self.len() + other.len());
        samples.extend_from_slice(&self.samples);
        samples.extend_from_slice(&other.samples);
        Ok(Self {
            samples,
            sample_rate_hz: self.sample_rate_hz,
        })
    }

    /// Splits into `[0, at)` and `[at, len)`.
    pub fn split_at(&self, at: usize) -> Result<(Self, Self)> {
        if at > self.len() {
            return Err(Error::invalid(format!(
                "split index {at} beyond signal length {}",
                self.len()
            )));
        }
        let (a, b) = self.samples.split_at(at);
        Ok((
            Self {
                samples: a.to_vec(),
                sample_rate_hz: self.sample_rate_hz,
            },
            Self {
                samples: b.to_vec(),
                sample_rate_hz: self.sample_rate_hz,
            },
        ))
    }

    /// Sub-range `[start, start + len)`.
    pub fn slice(&self, start: usize, len: usize) -> Result<Self> {
        let end = start
            .checked_add(len)
            .filter(|&end| end <= self.len())
            .ok_or_else(|| {
                Error::invalid(format!(
                    "range {start}..{start}+{len} outside signal of length {}",
                    self.len()
                ))
            })?;
        Ok(Self {
            samples: self.samples[start..end].to_vec(),
            sample_rate_hz: self.sample_rate_hz,
        })
    }
}

/// Complex DFT coefficients of a length-N transform. Bin `k` sits at
/// `k * fs / N`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSpectrum {
    bins: Vec<Complex64>,
    sample_rate_hz: f64,
}

impl ComplexSpectrum {
    pub fn new(bins: Vec<Complex64>, sample_rate_hz: f64) -> Result<Self> {
        if bins.is_empty() {
            return Err(Error::EmptyInput);
        }
        if !(sample_rate_hz.is_finite() && sample_rate_hz > 0.0) {
            return Err(Error::invalid(format!(
                "sample rate must be positive and finite, got {sample_rate_hz}"
            )));
        }
        Ok(Self {
            bins,
            sample_rate_hz,
        })
    }

    pub fn bins(&self) -> &[Complex64] {
        &self.bins
    }

    pub fn bin_count(&self) -> usize {
        self.bins.len()
    }

    pub fn sample_rate_hz(&self) -> f64 {
        self.sample_rate_hz
    }

    pub fn bin_freq_hz(&self, k: usize) -> f64 {
        k as f64 * self.sample_rate_hz / self.bins.len() as f64
    }

    pub fn into_bins(self) -> Vec<Complex64> {
        self.bins
    }
}

/// Normalization applied to a periodogram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scaling {
    /// Power per hertz (V²/Hz), normalized by `fs * Σw²`.
    #[default]
    Density,
    /// Power per bin (V²), normalized by `(Σw)²`.
    Spectrum,
}

/// Per-segment trend removal applied before windowing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Detrend {
    None,
    /// Subtract the segment mean.
    #[default]
    Constant,
}

/// One-sided power spectral density.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDensity {
    pub freqs_hz: Vec<f64>,
    pub power: Vec<f64>,
    pub scaling: Scaling,
    pub segment_count_used: usize,
}

impl SpectralDensity {
    /// Bin spacing in hertz.
    pub fn resolution_hz(&self) -> f64 {
        if self.freqs_hz.len() < 2 {
            0.0
        } else {
            self.freqs_hz[1] - self.freqs_hz[0]
        }
    }

    /// `Σ P[k]·Δf`: total power for density scaling.
    pub fn integrated_power(&self) -> f64 {
        self.power.iter().sum::<f64>() * self.resolution_hz()
    }

    /// Index and frequency of the largest bin (lowest index on ties).
    pub fn peak(&self) -> Option<(usize, f64)> {
        argmax_lowest(&self.power).map(|k| (k, self.freqs_hz[k]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridUnit {
    Power,
    Db,
}

/// Time × frequency matrix. `values[f][t]` holds the value for frequency
/// row `f` and time column `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrogramGrid {
    pub times_s: Vec<f64>,
    pub freqs_hz: Vec<f64>,
    pub values: Vec<Vec<f64>>,
    pub unit: GridUnit,
}

impl SpectrogramGrid {
    pub fn n_times(&self) -> usize {
        self.times_s.len()
    }

    pub fn n_freqs(&self) -> usize {
        self.freqs_hz.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times_s.is_empty() || self.freqs_hz.is_empty()
    }

    pub fn column(&self, t: usize) -> Vec<f64> {
        self.values.iter().map(|row| row[t]).collect()
    }

    /// Checks that the matrix shape matches both axes.
    pub fn validate(&self) -> Result<()> {
        if self.values.len() != self.freqs_hz.len() {
            return Err(Error::LengthMismatch {
                expected: self.freqs_hz.len(),
                actual: self.values.len(),
            });
        }
        for row in &self.values {
            if row.len() != self.times_s.len() {
                return Err(Error::LengthMismatch {
                    expected: self.times_s.len(),
                    actual: row.len(),
                });
            }
        }
        Ok(())
    }

    /// Largest finite value in the grid.
    pub fn max_value(&self) -> Option<f64> {
        self.values
            .iter()
            .flatten()
            .copied()
            .filter(|v| v.is_finite())
            .reduce(f64::max)
    }
}

/// Segmentation and estimator settings shared by Welch and the spectrogram.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisParams {
    pub nperseg: usize,
    pub noverlap: usize,
    pub window: WindowKind,
    pub scaling: Scaling,
    pub detrend: Detrend,
}

impl AnalysisParams {
    /// Hann, density scaling, constant detrend.
    pub fn new(nperseg: usize, noverlap: usize) -> Result<Self> {
        let params = Self {
            nperseg,
            noverlap,
            window: WindowKind::Hann,
            scaling: Scaling::Density,
            detrend: Detrend::Constant,
        };
        params.validate()?;
        Ok(params)
    }

    /// 256-sample segments without overlap.
    pub fn psd_default() -> Self {
        Self::new(256, 0).expect("static parameters are valid")
    }

    /// 256-sample segments with 128 samples of overlap.
    pub fn spectrogram_default() -> Self {
        Self::new(256, 128).expect("static parameters are valid")
    }

    pub fn with_window(mut self, window: WindowKind) -> Self {
        self.window = window;
        self
    }

    pub fn with_scaling(mut self, scaling: Scaling) -> Self {
        self.scaling = scaling;
        self
    }

    pub fn with_detrend(mut self, detrend: Detrend) -> Self {
        self.detrend = detrend;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.nperseg == 0 {
            return Err(Error::invalid("nperseg must be at least 1"));
        }
        if self.noverlap >= self.nperseg {
            return Err(Error::invalid(format!(
                "noverlap ({}) must be smaller than nperseg ({})",
                self.noverlap, self.nperseg
            )));
        }
        Ok(())
    }

    /// Distance between consecutive segment starts.
    pub fn hop(&self) -> usize {
        self.nperseg - self.noverlap
    }
}

pub(crate) fn argmax_lowest(values: &[f64]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, &v) in values.iter().enumerate() {
        match best {
            Some(b) if !(v > values[b]) => {}
            _ => best = Some(i),
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(samples: Vec<f64>, fs: f64) -> TimeSeries {
        TimeSeries::new(samples, fs).unwrap()
    }

    #[test]
    fn duration_examples() {
        assert_eq!(ts(vec![0.0; 88200], 44100.0).duration_s(), 2.0);
        assert_eq!(ts(vec![0.0; 192000], 96000.0).duration_s(), 2.0);
        assert_eq!(ts(vec![0.0], 1.0).duration_s(), 1.0);
    }

    #[test]
    fn rejects_bad_sample_rate() {
        assert!(TimeSeries::new(vec![1.0], 0.0).is_err());
        assert!(TimeSeries::new(vec![1.0], -3.0).is_err());
        assert!(TimeSeries::new(vec![1.0], f64::NAN).is_err());
    }

    #[test]
    fn mean_power_examples() {
        assert_eq!(ts(vec![0.0; 16], 1.0).mean_power().unwrap(), 0.0);
        assert_eq!(ts(vec![1.0; 7], 1.0).mean_power().unwrap(), 1.0);

        // direct summation of cos(2πn/8)² over one period
        let cosine: Vec<f64> = (0..8)
            .map(|n| (2.0 * std::f64::consts::PI * n as f64 / 8.0).cos())
            .collect();
        let oracle = cosine.iter().map(|c| c * c).sum::<f64>() / 8.0;
        assert!((oracle - 0.5).abs() < 1e-15);
        let got = ts(cosine, 8.0).mean_power().unwrap();
        assert!((got - 0.5).abs() < 1e-15);
    }

    #[test]
    fn mean_power_of_empty_is_error() {
        assert_eq!(ts(vec![], 1.0).mean_power(), Err(Error::EmptyInput));
    }

    #[test]
    fn concat_split_round_trip() {
        let a = ts(vec![1.0, 2.0, 3.0], 10.0);
        let b = ts(vec![-1.0, 0.5], 10.0);
        let joined = a.concat(&b).unwrap();
        assert_eq!(joined.duration_s(), a.duration_s() + b.duration_s());
        let (a2, b2) = joined.split_at(3).unwrap();
        assert_eq!(a2, a);
        assert_eq!(b2, b);
        assert!(a.concat(&ts(vec![1.0], 11.0)).is_err());
    }

    #[test]
    fn params_validation() {
        assert!(AnalysisParams::new(256, 255).is_ok());
        assert!(AnalysisParams::new(256, 256).is_err());
        assert!(AnalysisParams::new(0, 0).is_err());
        assert_eq!(AnalysisParams::spectrogram_default().hop(), 128);
    }

    #[test]
    fn argmax_prefers_lowest_index() {
        assert_eq!(argmax_lowest(&[0.0, 0.0, 0.0]), Some(0));
        assert_eq!(argmax_lowest(&[1.0, 3.0, 3.0]), Some(1));
        assert_eq!(argmax_lowest(&[]), None);
    }
}
