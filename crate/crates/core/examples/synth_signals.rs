//! Cosine sums, square-wave partial sums and the linear chirp.
//!
//!     cargo run --example synth_signals

use spectrokit::synth::{chirp_instantaneous_freq, ideal_square};
use spectrokit::{synth_cosine_sum, synth_linear_chirp, synth_square_partial_sum, SynthComponent};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // x(t) = 0.1 + 0.5 cos(2π·440t) + 0.25 cos(2π·880t + π/4)
    let tone = synth_cosine_sum(
        0.1,
        &[
            SynthComponent::new(0.5, 440.0, 0.0),
            SynthComponent::new(0.25, 880.0, std::f64::consts::FRAC_PI_4),
        ],
        8000.0,
        0.5,
    )?;
    println!(
        "cosine sum: {} samples, {:.3} s, mean power {:.4}",
        tone.len(),
        tone.duration_s(),
        tone.mean_power()?
    );

    // adding odd harmonics moves the partial sum towards the square wave
    let f0 = 5.0;
    let fs = 20_000.0;
    for harmonics in [1, 3, 9, 27] {
        let sq = synth_square_partial_sum(f0, harmonics, fs, 1.0 / f0)?;
        let rms = (sq
            .samples()
            .iter()
            .enumerate()
            .map(|(i, x)| (x - ideal_square(f0, i as f64 / fs)).powi(2))
            .sum::<f64>()
            / sq.len() as f64)
            .sqrt();
        println!("square wave, {harmonics:>2} harmonics: RMS error {rms:.4}");
    }

    // cos(150πt + 9000πt²): starts at 75 Hz and sweeps at 9 kHz/s
    let chirp = synth_linear_chirp(75.0, 9000.0, 44100.0, 1.0)?;
    for t in [0.0, 0.25, 0.5, 0.75] {
        println!(
            "chirp at t = {t:.2} s: instantaneous frequency {:.0} Hz",
            chirp_instantaneous_freq(75.0, 9000.0, t)
        );
    }
    println!("chirp: {} samples", chirp.len());
    Ok(())
}
