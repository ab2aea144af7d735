//! FFT plans: radix-2, Bluestein and the naive reference.
//!
//!     cargo run --release --example fft_engine

use std::time::Instant;

use num_complex::Complex64;
use spectrokit::{dft_naive, ifft, FftPlan};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in [256usize, 1000, 4096, 5000, 50_000] {
        let x: Vec<Complex64> = (0..n)
            .map(|i| Complex64::new((i as f64 * 0.013).sin(), (i as f64 * 0.007).cos()))
            .collect();
        let plan = FftPlan::new(n)?;
        let mut spec = x.clone();
        let started = Instant::now();
        plan.forward(&mut spec)?;
        let elapsed = started.elapsed();

        let energy_t: f64 = x.iter().map(|z| z.norm_sqr()).sum();
        let energy_f: f64 = spec.iter().map(|z| z.norm_sqr()).sum::<f64>() / n as f64;
        let back = ifft(&spec)?;
        let round_trip = x
            .iter()
            .zip(&back)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);

        print!(
            "n = {n:>6} {:?}: {elapsed:>10.2?}, Parseval rel. error {:.1e}, round trip {:.1e}",
            plan.strategy(),
            (energy_t - energy_f).abs() / energy_t,
            round_trip
        );
        if n <= 5000 {
            let reference = dft_naive(&x)?;
            let diff: f64 = spec
                .iter()
                .zip(&reference)
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            let norm: f64 = reference.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            print!(", vs naive DFT {:.1e}", diff / norm);
        }
        println!();
    }
    Ok(())
}
