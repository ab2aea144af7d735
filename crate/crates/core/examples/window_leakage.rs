//! Spectral leakage of Hann and rectangular windows.
//!
//!     cargo run --example window_leakage

use spectrokit::{make_window, periodogram, Scaling, Symmetry, WindowKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 256;
    for kind in [WindowKind::Rectangular, WindowKind::Hann] {
        let w = make_window(kind, n, Symmetry::Periodic)?;
        println!(
            "{kind:?}: Σw = {}, Σw² = {}",
            w.coherent_sum(),
            w.power_sum()
        );
        // 20 cycles is bin-centred, 20.5 falls between bins
        for cycles in [20.0, 20.5] {
            let frame: Vec<f64> = (0..n)
                .map(|i| (2.0 * std::f64::consts::PI * cycles * i as f64 / n as f64).cos())
                .collect();
            let p = periodogram(&frame, &w, n as f64, Scaling::Spectrum)?;
            let (peak, _) = p.peak().unwrap();
            let far = p.power[peak + 5..].iter().cloned().fold(0.0, f64::max);
            let level = if far > 0.0 {
                10.0 * (far / p.power[peak]).log10()
            } else {
                f64::NEG_INFINITY
            };
            println!("  {cycles:>4} cycles: worst leakage 5+ bins from peak {level:.1} dB");
        }
    }
    Ok(())
}
