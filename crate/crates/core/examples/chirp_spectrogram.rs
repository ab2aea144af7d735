//! Spectrogram of cos(150πt + 9000πt²) and its frequency-vs-time ridge.
//!
//!     cargo run --example chirp_spectrogram [-- out_dir]

use std::path::PathBuf;

use spectrokit::render::default_display_range;
use spectrokit::{
    grid_to_csv, grid_to_pgm, ridge_track, spectrogram, synth_linear_chirp, to_db, AnalysisParams,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fs = 44100.0;
    let chirp = synth_linear_chirp(75.0, 9000.0, fs, 1.0)?;
    let params = AnalysisParams::spectrogram_default();
    let grid = spectrogram(&chirp, &params)?;
    println!(
        "{} frames x {} bins, frame spacing {:.3} ms",
        grid.n_times(),
        grid.n_freqs(),
        1e3 * params.hop() as f64 / fs
    );

    let ridge = ridge_track(&grid);
    for &(t, f) in ridge.iter().step_by(ridge.len() / 8) {
        println!(
            "t = {t:.3} s  ridge {f:>7.1} Hz  expected {:>7.1} Hz",
            75.0 + 9000.0 * t
        );
    }

    let out_dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(std::env::temp_dir);
    let db = to_db(&grid, -120.0)?;
    let (min_db, max_db) = default_display_range(&db).unwrap();
    let pgm = out_dir.join("chirp_spectrogram.pgm");
    std::fs::write(&pgm, grid_to_pgm(&db, min_db, max_db)?)?;
    let csv = out_dir.join("chirp_spectrogram.csv");
    std::fs::write(&csv, grid_to_csv(&db)?)?;
    println!("wrote {} and {}", pgm.display(), csv.display());
    Ok(())
}
