//! Analyse a WAV recording, or a synthetic snap-like burst if none is given.
//!
//!     cargo run --example wav_analysis -- snap.wav

use spectrokit::wav::{read_wav_file, write_wav_file};
use spectrokit::{ridge_track, spectrogram, welch_psd, AnalysisParams, TimeSeries};

// Three decaying 4.5 kHz bursts at 0.25, 1.0 and 1.5 s.
fn synthetic_snaps(fs: f64) -> TimeSeries {
    let n = (2.0 * fs) as usize;
    let samples = (0..n)
        .map(|i| {
            let t = i as f64 / fs;
            [0.25, 1.0, 1.5]
                .iter()
                .filter(|&&onset| t >= onset)
                .map(|&onset| {
                    let dt = t - onset;
                    0.8 * (-dt / 0.004).exp() * (2.0 * std::f64::consts::PI * 4500.0 * dt).sin()
                })
                .sum()
        })
        .collect();
    TimeSeries::new(samples, fs).expect("positive sample rate")
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let signal = match std::env::args().nth(1) {
        Some(path) => {
            let (ts, meta) = read_wav_file(&path)?;
            println!(
                "{path}: {} Hz, {} channel(s), {} bit, {} frames",
                meta.sample_rate_hz, meta.channels, meta.bits_per_sample, meta.n_frames
            );
            ts
        }
        None => {
            let ts = synthetic_snaps(44100.0);
            let path = std::env::temp_dir().join("synthetic_snaps.wav");
            write_wav_file(&path, &ts)?;
            println!(
                "no input given; wrote synthetic bursts to {}",
                path.display()
            );
            ts
        }
    };

    let psd = welch_psd(&signal, &AnalysisParams::psd_default())?;
    let (_, peak_hz) = psd.peak().unwrap();
    println!("PSD peak: {peak_hz:.0} Hz");

    let grid = spectrogram(&signal, &AnalysisParams::spectrogram_default())?;
    let loudest = (0..grid.n_times())
        .map(|t| (t, grid.column(t).iter().sum::<f64>()))
        .fold(
            (0, 0.0),
            |best, cur| if cur.1 > best.1 { cur } else { best },
        );
    let ridge = ridge_track(&grid);
    println!(
        "loudest frame at {:.3} s, dominant frequency there {:.0} Hz",
        grid.times_s[loudest.0], ridge[loudest.0].1
    );
    Ok(())
}
