//! Segment length versus frequency and time resolution.
//!
//!     cargo run --release --example resolution_study

use spectrokit::{
    ridge_track, spectrogram, synth_cosine_sum, synth_linear_chirp, welch_psd, AnalysisParams,
    SynthComponent,
};

fn local_maxima(power: &[f64]) -> usize {
    let max = power.iter().cloned().fold(0.0, f64::max);
    (1..power.len() - 1)
        .filter(|&k| power[k] > power[k - 1] && power[k] >= power[k + 1] && power[k] >= 0.01 * max)
        .count()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fs = 44100.0;

    // two tones 26.46 Hz apart, sampled long enough for 50000-point segments
    let df = fs / 5000.0;
    let pair = synth_cosine_sum(
        0.0,
        &[
            SynthComponent::new(0.5, 500.0 * df, 0.0),
            SynthComponent::new(0.5, 503.0 * df, 0.7),
        ],
        fs,
        4.0,
    )?;
    println!(
        "PSD of two tones at {:.2} and {:.2} Hz:",
        500.0 * df,
        503.0 * df
    );
    for nperseg in [1000, 5000, 50_000] {
        let psd = welch_psd(&pair, &AnalysisParams::new(nperseg, 0)?)?;
        println!(
            "  nperseg {nperseg:>6}: Δf = {:>6.3} Hz, {:>2} segments, {} peak(s)",
            psd.resolution_hz(),
            psd.segment_count_used,
            local_maxima(&psd.power)
        );
    }

    // 2 s at 96 kHz is 192000 samples; 10000-point segments give 19 columns
    let fs = 96_000.0;
    let chirp = synth_linear_chirp(75.0, 9000.0, fs, 2.0)?;
    println!("spectrogram of the chirp at 96 kHz (no overlap):");
    for nperseg in [1000, 5000, 10_000] {
        let grid = spectrogram(&chirp, &AnalysisParams::new(nperseg, 0)?)?;
        let ridge = ridge_track(&grid);
        let rms = (ridge
            .iter()
            .map(|&(t, f)| (f - (75.0 + 9000.0 * t)).powi(2))
            .sum::<f64>()
            / ridge.len() as f64)
            .sqrt();
        println!(
            "  nperseg {nperseg:>6}: {:>3} columns every {:>6.1} ms, Δf = {:>5.2} Hz, ridge RMS error {rms:.1} Hz",
            grid.n_times(),
            1e3 * nperseg as f64 / fs,
            fs / nperseg as f64
        );
    }
    Ok(())
}
