//! Checks against independent reference computations.

mod common;

use std::f64::consts::PI;

use num_complex::Complex64;
use spectrokit::synth::{ideal_square, square_partial_sum_at};
use spectrokit::*;

use common::{random_complex, relative_error, rng, white_noise};

#[test]
fn fft_matches_naive_for_every_small_length() {
    let mut r = rng(7);
    for n in 1..=64 {
        let x = random_complex(&mut r, n);
        let err = relative_error(&fft(&x).unwrap(), &dft_naive(&x).unwrap());
        assert!(err < 1e-9, "n={n} err={err}");
    }
}

#[test]
fn fft_matches_naive_for_paper_segment_lengths() {
    let mut r = rng(8);
    for n in [1000usize, 5000] {
        let x = random_complex(&mut r, n);
        let err = relative_error(&fft(&x).unwrap(), &dft_naive(&x).unwrap());
        assert!(err < 1e-9, "n={n} err={err}");
    }
}

#[test]
fn naive_dft_matches_hand_evaluation() {
    // evaluate the DFT sum with std trig, independent of the twiddle tables
    let x = [0.5, -1.0, 2.0, 0.25, 3.0];
    let n = x.len();
    let spec = dft_naive(&x.map(|v| Complex64::new(v, 0.0))).unwrap();
    for (k, got) in spec.iter().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, &v) in x.iter().enumerate() {
            let a = -2.0 * PI * (k * i) as f64 / n as f64;
            acc += Complex64::new(v * a.cos(), v * a.sin());
        }
        assert!((got - acc).norm() < 1e-12);
    }
}

#[test]
fn ifft_round_trip_1024() {
    let mut r = rng(9);
    let x = random_complex(&mut r, 1024);
    let back = ifft(&fft(&x).unwrap()).unwrap();
    let max = x
        .iter()
        .zip(&back)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    assert!(max < 1e-9);
}

#[test]
fn square_fundamental_coefficient_by_quadrature() {
    // b1 = (2/T) ∫_0^T sq(t) sin(2π f0 t) dt, composite Simpson on each half
    let f0 = 5.0;
    let period = 1.0 / f0;
    let simpson = |a: f64, b: f64, n: usize, f: &dyn Fn(f64) -> f64| {
        let h = (b - a) / n as f64;
        let mut s = f(a) + f(b);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            s += w * f(a + i as f64 * h);
        }
        s * h / 3.0
    };
    let integrand = |t: f64| (2.0 * PI * f0 * t).sin();
    let first = simpson(0.0, period / 2.0, 2000, &integrand);
    let second = simpson(period / 2.0, period, 2000, &|t| -integrand(t));
    let b1 = 2.0 / period * (first + second);
    assert!((b1 - 4.0 / PI).abs() < 1e-9);

    let ts = synth_square_partial_sum(f0, 1, 1000.0, period).unwrap();
    let peak = ts.samples().iter().cloned().fold(f64::MIN, f64::max);
    assert!((peak - b1).abs() < 1e-9);
}

#[test]
fn square_partial_sum_converges_away_from_jumps() {
    let f0 = 5.0;
    let max_err = |m: usize| {
        (0..2000)
            .map(|i| i as f64 / 2000.0 / f0)
            .filter(|t| {
                let p = (t * f0).fract();
                (0.1..0.4).contains(&p) || (0.6..0.9).contains(&p)
            })
            .map(|t| (square_partial_sum_at(f0, m, t) - ideal_square(f0, t)).abs())
            .fold(0.0, f64::max)
    };
    assert!(max_err(3) < max_err(1));
    assert!(max_err(9) < max_err(3));
}

#[test]
fn square_partial_sum_has_no_even_harmonics() {
    // 1 s at 1 kHz: bin k is exactly k Hz, f0 = 10 Hz sits on bin 10
    let ts = synth_square_partial_sum(10.0, 9, 1000.0, 1.0).unwrap();
    let spec = spectrum(&ts).unwrap();
    let fundamental = spec.bins()[10].norm();
    for m in 1..=20 {
        let even = spec.bins()[20 * m].norm();
        assert!(even < 1e-9 * fundamental, "harmonic {}: {even}", 2 * m);
    }
    for m in 0..9 {
        assert!(spec.bins()[10 * (2 * m + 1)].norm() > 1e-3 * fundamental);
    }
}

fn leakage_db(kind: WindowKind, cycles: f64, offset_bins: usize) -> f64 {
    let n = 256;
    let frame: Vec<f64> = (0..n)
        .map(|i| (2.0 * PI * cycles * i as f64 / n as f64).cos())
        .collect();
    let w = make_window(kind, n, Symmetry::Periodic).unwrap();
    let p = periodogram(&frame, &w, n as f64, Scaling::Spectrum).unwrap();
    let (peak_bin, _) = p.peak().unwrap();
    let far: f64 = p.power[peak_bin + offset_bins..]
        .iter()
        .cloned()
        .fold(0.0, f64::max);
    10.0 * (far / p.power[peak_bin]).log10()
}

#[test]
fn hann_suppresses_leakage() {
    // bin-centered tone: Hann confines the energy to the peak and its two
    // neighbours; everything past them is far below -31 dB
    assert!(leakage_db(WindowKind::Hann, 20.0, 2) < -31.0);
    // the nearest bin holds the -6 dB Hann response itself
    let near = leakage_db(WindowKind::Hann, 20.0, 1);
    assert!((near - 20.0 * 0.5f64.log10()).abs() < 1e-9);

    // off-bin tone: rectangular leaks more than Hann a few bins away
    let rect = leakage_db(WindowKind::Rectangular, 20.5, 4);
    let hann = leakage_db(WindowKind::Hann, 20.5, 4);
    assert!(rect > hann + 10.0, "rect {rect} dB vs hann {hann} dB");
}

#[test]
fn white_noise_density_integrates_to_variance() {
    let mut r = rng(1234);
    let ts = TimeSeries::new(white_noise(&mut r, 256 * 100), 1000.0).unwrap();
    let psd = welch_psd(&ts, &AnalysisParams::new(256, 0).unwrap()).unwrap();
    assert_eq!(psd.segment_count_used, 100);
    let total = psd.integrated_power();
    assert!((total - 1.0).abs() < 0.1, "{total}");
}

#[test]
fn rectangular_density_obeys_parseval_per_segment() {
    let mut r = rng(99);
    for n in [255usize, 256] {
        let frame = white_noise(&mut r, n);
        let w = make_window(WindowKind::Rectangular, n, Symmetry::Periodic).unwrap();
        let fs = 123.0;
        let p = periodogram(&frame, &w, fs, Scaling::Density).unwrap();
        let mean_power = TimeSeries::new(frame, fs).unwrap().mean_power().unwrap();
        // Δf = fs / n
        let total: f64 = p.power.iter().sum::<f64>() * fs / n as f64;
        assert!((total - mean_power).abs() < 1e-9 * mean_power);
    }
}

#[test]
fn chirp_ridge_follows_instantaneous_frequency() {
    let fs = 44100.0;
    let ts = synth_linear_chirp(75.0, 9000.0, fs, 1.0).unwrap();
    let grid = spectrogram(&ts, &AnalysisParams::spectrogram_default()).unwrap();
    for (t, f) in ridge_track(&grid) {
        let expected = 75.0 + 9000.0 * t;
        assert!((f - expected).abs() <= fs / 256.0, "t={t} f={f}");
    }
}

#[test]
fn longer_segments_trade_time_for_frequency() {
    let fs = 44100.0;
    let ts = synth_linear_chirp(75.0, 9000.0, fs, 1.0).unwrap();
    let rms_error = |nperseg: usize| {
        let params = AnalysisParams::new(nperseg, nperseg / 2).unwrap();
        let grid = spectrogram(&ts, &params).unwrap();
        let ridge = ridge_track(&grid);
        let sq: f64 = ridge
            .iter()
            .map(|&(t, f)| (f - (75.0 + 9000.0 * t)).powi(2))
            .sum();
        ((sq / ridge.len() as f64).sqrt(), grid.n_times())
    };
    let (err_short, cols_short) = rms_error(256);
    let (err_long, cols_long) = rms_error(1024);
    assert!(err_long < err_short, "{err_long} vs {err_short}");
    assert!(cols_long < cols_short);
}
