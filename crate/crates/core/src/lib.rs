//! Spectral analysis toolkit.
//!
//! Synthesizes test signals, computes FFTs, Welch power spectral densities
//! and STFT spectrograms with Hann or rectangular windows, and reads or
//! writes WAV audio, CSV tables and PGM images.
//!
//! ```
//! use spectrokit::{synth_linear_chirp, spectrogram, ridge_track, AnalysisParams};
//!
//! let chirp = synth_linear_chirp(75.0, 9000.0, 44100.0, 1.0).unwrap();
//! let grid = spectrogram(&chirp, &AnalysisParams::spectrogram_default()).unwrap();
//! let ridge = ridge_track(&grid);
//! assert_eq!(ridge.len(), grid.n_times());
//! ```

// `!(a < b)` is used on purpose so NaN parameters are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod fft;
pub mod render;
pub mod signal;
pub mod spectrogram;
pub mod synth;
pub mod wav;
pub mod welch;
pub mod window;

pub use error::{Error, Result};
pub use fft::{dft_naive, fft, ifft, rfft_freqs, spectrum, FftPlan, Strategy};
pub use render::{grid_to_csv, grid_to_pgm, psd_to_csv};
pub use signal::{
    AnalysisParams, ComplexSpectrum, Detrend, GridUnit, Scaling, SpectralDensity, SpectrogramGrid,
    TimeSeries,
};
pub use spectrogram::{ridge_track, spectrogram, to_db};
pub use synth::{synth_cosine_sum, synth_linear_chirp, synth_square_partial_sum, SynthComponent};
pub use wav::{read_wav, write_wav, SampleFormat, WavError, WavMetadata};
pub use welch::{periodogram, segment_starts, welch_psd, SegmentView};
pub use window::{
    make_window, window_coherent_sum, window_power_sum, Symmetry, WindowKind, WindowVector,
};
