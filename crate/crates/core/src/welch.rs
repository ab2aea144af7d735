//! Welch's averaged periodogram.
//!
//! The signal is cut into segments of `nperseg` samples whose starts are
//! `nperseg - noverlap` apart; trailing samples that cannot fill a segment
//! are dropped. Each segment is detrended, windowed and turned into a
//! one-sided periodogram, and the periodograms are averaged with equal
//! weights.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fft::{rfft_freqs, FftPlan};
use crate::signal::{AnalysisParams, Detrend, Scaling, SpectralDensity, TimeSeries};
use crate::window::{make_window, Symmetry, WindowVector};

/// Position of one analysis segment inside the signal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SegmentView {
    pub start_index: usize,
    pub length: usize,
}

impl SegmentView {
    pub fn end_index(&self) -> usize {
        self.start_index + self.length
    }

    pub fn slice<'a>(&self, samples: &'a [f64]) -> &'a [f64] {
        &samples[self.start_index..self.end_index()]
    }
}

/// Segment layout: `floor((n − noverlap) / (nperseg − noverlap))` segments.
pub fn segment_starts(
    n_samples: usize,
    nperseg: usize,
    noverlap: usize,
) -> Result<Vec<SegmentView>> {
    if nperseg == 0 {
        return Err(Error::invalid("nperseg must be at least 1"));
    }
    if noverlap >= nperseg {
        return Err(Error::invalid(format!(
            "noverlap ({noverlap}) must be smaller than nperseg ({nperseg})"
        )));
    }
    if nperseg > n_samples {
        return Err(Error::SignalTooShort { n_samples, nperseg });
    }
    let hop = nperseg - noverlap;
    let count = (n_samples - noverlap) / hop;
    Ok((0..count)
        .map(|i| SegmentView {
            start_index: i * hop,
            length: nperseg,
        })
        .collect())
}

/// Reusable per-length state: FFT plan, window and normalization.
pub(crate) struct PeriodogramKernel {
    plan: FftPlan,
    window: WindowVector,
    norm: f64,
    fs_hz: f64,
}

impl PeriodogramKernel {
    pub(crate) fn new(window: WindowVector, fs_hz: f64, scaling: Scaling) -> Result<Self> {
        if !(fs_hz.is_finite() && fs_hz > 0.0) {
            return Err(Error::invalid(format!(
                "sample rate must be positive, got {fs_hz}"
            )));
        }
        let norm = match scaling {
            Scaling::Density => fs_hz * window.power_sum(),
            Scaling::Spectrum => window.coherent_sum().powi(2),
        };
        if !(norm > 0.0) {
            return Err(Error::invalid(
                "window has zero energy; periodogram normalization is undefined",
            ));
        }
        Ok(Self {
            plan: FftPlan::new(window.len())?,
            window,
            norm,
            fs_hz,
        })
    }

    pub(crate) fn freqs(&self) -> Vec<f64> {
        let n = self.window.len();
        if n == 1 {
            vec![0.0]
        } else {
            rfft_freqs(n, self.fs_hz).expect("n >= 2")
        }
    }

    /// One-sided periodogram of `frame` after optional mean removal.
    pub(crate) fn run(&self, frame: &[f64], detrend: Detrend) -> Result<Vec<f64>> {
        let n = self.window.len();
        if frame.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: frame.len(),
            });
        }
        let offset = match detrend {
            Detrend::None => 0.0,
            Detrend::Constant => frame.iter().sum::<f64>() / n as f64,
        };
        let mut buf: Vec<Complex64> = frame
            .iter()
            .zip(self.window.coefficients())
            .map(|(x, w)| Complex64::new((x - offset) * w, 0.0))
            .collect();
        self.plan.forward(&mut buf)?;

        let n_out = n / 2 + 1;
        // bins strictly between DC and Nyquist carry the mirrored negative half
        let last_doubled = n.div_ceil(2).saturating_sub(1);
        Ok(buf[..n_out]
            .iter()
            .enumerate()
            .map(|(k, z)| {
                let p = z.norm_sqr() / self.norm;
                if k >= 1 && k <= last_doubled {
                    2.0 * p
                } else {
                    p
                }
            })
            .collect())
    }
}

/// One-sided periodogram `|FFT(frame ⊙ w)|² / norm` of a single frame.
///
/// `norm` is `fs·Σw²` for density scaling and `(Σw)²` for spectrum scaling.
/// No detrending is applied.
pub fn periodogram(
    frame: &[f64],
    window: &WindowVector,
    fs_hz: f64,
    scaling: Scaling,
) -> Result<SpectralDensity> {
    if frame.len() != window.len() {
        return Err(Error::LengthMismatch {
            expected: window.len(),
            actual: frame.len(),
        });
    }
    let kernel = PeriodogramKernel::new(window.clone(), fs_hz, scaling)?;
    let power = kernel.run(frame, Detrend::None)?;
    Ok(SpectralDensity {
        freqs_hz: kernel.freqs(),
        power,
        scaling,
        segment_count_used: 1,
    })
}

/// Segments, frequency axis and one periodogram per segment.
pub(crate) type SegmentSpectra = (Vec<SegmentView>, Vec<f64>, Vec<Vec<f64>>);

/// Per-segment periodograms in segment order, plus their frequency axis.
pub(crate) fn segment_periodograms(
    ts: &TimeSeries,
    params: &AnalysisParams,
) -> Result<SegmentSpectra> {
    params.validate()?;
    if ts.is_empty() {
        return Err(Error::EmptyInput);
    }
    let segments = segment_starts(ts.len(), params.nperseg, params.noverlap)?;
    let window = make_window(params.window, params.nperseg, Symmetry::Periodic)?;
    let kernel = PeriodogramKernel::new(window, ts.sample_rate_hz(), params.scaling)?;
    let samples = ts.samples();
    let columns = segments
        .par_iter()
        .map(|seg| kernel.run(seg.slice(samples), params.detrend))
        .collect::<Result<Vec<_>>>()?;
    Ok((segments, kernel.freqs(), columns))
}

/// Welch PSD estimate: the unweighted mean of the segment periodograms.
pub fn welch_psd(ts: &TimeSeries, params: &AnalysisParams) -> Result<SpectralDensity> {
    let (segments, freqs_hz, columns) = segment_periodograms(ts, params)?;
    let mut power = vec![0.0; freqs_hz.len()];
    for column in &columns {
        for (acc, p) in power.iter_mut().zip(column) {
            *acc += p;
        }
    }
    let count = segments.len() as f64;
    power.iter_mut().for_each(|p| *p /= count);
    Ok(SpectralDensity {
        freqs_hz,
        power,
        scaling: params.scaling,
        segment_count_used: segments.len(),
    })
}
