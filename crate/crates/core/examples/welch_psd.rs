//! Welch PSD with 256-sample Hann segments and no overlap.
//!
//!     cargo run --example welch_psd [-- out.csv]

use spectrokit::{
    psd_to_csv, synth_cosine_sum, welch_psd, AnalysisParams, SynthComponent, TimeSeries,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fs = 44100.0;
    // two tones on top of a little deterministic broadband noise
    let tones = synth_cosine_sum(
        0.0,
        &[
            SynthComponent::new(0.4, 4500.0, 0.0),
            SynthComponent::new(0.1, 9000.0, 1.0),
        ],
        fs,
        2.0,
    )?;
    let mut state = 0x2545_f491_4f6c_dd1du64;
    let samples: Vec<f64> = tones
        .samples()
        .iter()
        .map(|x| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            x + 0.01 * ((state >> 11) as f64 / (1u64 << 53) as f64 - 0.5)
        })
        .collect();
    let signal = TimeSeries::new(samples, fs)?;

    let params = AnalysisParams::psd_default();
    let psd = welch_psd(&signal, &params)?;
    let (_, peak_hz) = psd.peak().unwrap();
    println!(
        "{} segments of {} samples, {} bins from 0 to {} Hz (Δf = {:.1} Hz)",
        psd.segment_count_used,
        params.nperseg,
        psd.freqs_hz.len(),
        psd.freqs_hz.last().unwrap(),
        psd.resolution_hz()
    );
    println!("strongest bin: {peak_hz:.1} Hz");
    println!(
        "integrated power {:.5} vs mean power {:.5}",
        psd.integrated_power(),
        signal.mean_power()?
    );

    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, psd_to_csv(&psd))?;
        println!("wrote {path}");
    }
    Ok(())
}
