//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 I/O or parse error, 3 parameter
//! or precondition error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::render::{default_display_range, format_sci, grid_to_csv, grid_to_pgm, psd_to_csv};
use crate::signal::{AnalysisParams, Detrend, Scaling, TimeSeries};
use crate::spectrogram::{spectrogram, to_db};
use crate::synth::{
    synth_cosine_sum, synth_linear_chirp, synth_square_partial_sum, SynthComponent,
};
use crate::wav::{read_wav, write_wav, SampleFormat, WavError};
use crate::welch::welch_psd;
use crate::window::WindowKind;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_PARAM: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "spectrokit",
    version,
    about = "FFT, Welch PSD and spectrogram analysis of WAV audio"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print WAV metadata.
    Info {
        /// WAV file to inspect.
        wav: PathBuf,
    },
    /// Synthesize a test signal.
    Synth(SynthArgs),
    /// Complex spectrum of a signal as CSV.
    Fft(FftArgs),
    /// Welch power spectral density as CSV.
    Psd(PsdArgs),
    /// STFT spectrogram as CSV or PGM.
    Spec(SpecArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SignalKind {
    Cosine,
    Square,
    Chirp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Pgm,
    Wav,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum WindowArg {
    Hann,
    #[value(alias = "rectangular")]
    Rect,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ScalingArg {
    Density,
    Spectrum,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DetrendArg {
    None,
    Constant,
}

impl From<WindowArg> for WindowKind {
    fn from(w: WindowArg) -> Self {
        match w {
            WindowArg::Hann => WindowKind::Hann,
            WindowArg::Rect => WindowKind::Rectangular,
        }
    }
}

impl From<ScalingArg> for Scaling {
    fn from(s: ScalingArg) -> Self {
        match s {
            ScalingArg::Density => Scaling::Density,
            ScalingArg::Spectrum => Scaling::Spectrum,
        }
    }
}

impl From<DetrendArg> for Detrend {
    fn from(d: DetrendArg) -> Self {
        match d {
            DetrendArg::None => Detrend::None,
            DetrendArg::Constant => Detrend::Constant,
        }
    }
}

#[derive(Debug, Args)]
struct SynthArgs {
    /// Signal family.
    #[arg(long, value_enum)]
    kind: SignalKind,
    /// Sample rate in Hz.
    #[arg(long, default_value_t = 44100.0)]
    fs: f64,
    /// Duration in seconds.
    #[arg(long, default_value_t = 2.0)]
    duration: f64,
    /// Constant offset (cosine).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    a0: f64,
    /// Cosine component as AMP:FREQ_HZ[:PHASE_RAD]; repeatable.
    #[arg(long = "component", value_parser = parse_component, default_value = "0.5:1000:0", allow_hyphen_values = true)]
    components: Vec<SynthComponent>,
    /// Fundamental (square, default 5 Hz) or start frequency (chirp, default 75 Hz).
    #[arg(long)]
    f0: Option<f64>,
    /// Number of odd harmonics (square).
    #[arg(long, default_value_t = 9)]
    harmonics: usize,
    /// Sweep rate in Hz/s (chirp).
    #[arg(long, default_value_t = 9000.0, allow_negative_numbers = true)]
    rate: f64,
    /// Multiplies every sample before writing.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    gain: f64,
    /// Output file (.wav or .csv).
    #[arg(long)]
    out: PathBuf,
    /// Overrides the format implied by the output extension.
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
}

#[derive(Debug, Args)]
struct FftArgs {
    /// Input WAV file.
    #[arg(long = "in")]
    input: PathBuf,
    /// First sample of the transformed range.
    #[arg(long, default_value_t = 0)]
    start: usize,
    /// Number of samples to transform (default: rest of the signal).
    #[arg(long)]
    len: Option<usize>,
    /// Output CSV (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct AnalysisArgs {
    /// Input WAV file.
    #[arg(long = "in")]
    input: PathBuf,
    /// Samples per segment.
    #[arg(long, default_value_t = 256)]
    nperseg: usize,
    #[arg(long, value_enum, default_value = "hann")]
    window: WindowArg,
    #[arg(long, value_enum, default_value = "density")]
    scaling: ScalingArg,
    #[arg(long, value_enum, default_value = "constant")]
    detrend: DetrendArg,
}

#[derive(Debug, Args)]
struct PsdArgs {
    #[command(flatten)]
    analysis: AnalysisArgs,
    /// Samples shared by consecutive segments.
    #[arg(long, default_value_t = 0)]
    noverlap: usize,
    /// Output CSV (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SpecArgs {
    #[command(flatten)]
    analysis: AnalysisArgs,
    /// Samples shared by consecutive segments (default: nperseg / 2).
    #[arg(long)]
    noverlap: Option<usize>,
    /// Write CSV values in dB instead of power. PGM output is always dB.
    #[arg(long)]
    db: bool,
    /// Lower clamp for the dB conversion.
    #[arg(long, default_value_t = -120.0, allow_negative_numbers = true)]
    floor_db: f64,
    /// PGM black level (default: max_db − 80).
    #[arg(long, allow_negative_numbers = true)]
    min_db: Option<f64>,
    /// PGM white level (default: grid maximum).
    #[arg(long, allow_negative_numbers = true)]
    max_db: Option<f64>,
    /// Output file (.csv or .pgm; default: CSV on stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides the format implied by the output extension.
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
}

fn parse_component(s: &str) -> Result<SynthComponent, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if !(2..=3).contains(&parts.len()) {
        return Err(format!("expected AMP:FREQ[:PHASE], got {s:?}"));
    }
    let num = |p: &str| {
        p.trim()
            .parse::<f64>()
            .map_err(|e| format!("{p:?} in {s:?}: {e}"))
    };
    let phase = match parts.get(2) {
        Some(p) => num(p)?,
        None => 0.0,
    };
    Ok(SynthComponent::new(num(parts[0])?, num(parts[1])?, phase))
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(String),
    Param(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
            CliError::Param(_) => EXIT_PARAM,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::Param(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Wav(w) => w.into(),
            other => CliError::Param(other.to_string()),
        }
    }
}

impl From<WavError> for CliError {
    fn from(e: WavError) -> Self {
        match e {
            WavError::EmptySignal
            | WavError::SampleOutOfRange { .. }
            | WavError::BadSampleRate(_) => CliError::Param(e.to_string()),
            other => CliError::Io(other.to_string()),
        }
    }
}

/// Parses `args` (including the program name) and runs the command against
/// the process stdout/stderr. Returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Like [`run`], with explicit output streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Info { wav } => info(&wav, out),
        Command::Synth(args) => synth(args),
        Command::Fft(args) => fft_cmd(args, out),
        Command::Psd(args) => psd(args, out),
        Command::Spec(args) => spec(args, out),
    }
}

fn load(path: &Path) -> Result<(TimeSeries, crate::wav::WavMetadata), CliError> {
    let bytes =
        fs::read(path).map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))?;
    read_wav(&bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn emit(path: Option<&Path>, bytes: &[u8], out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => {
            fs::write(p, bytes).map_err(|e| CliError::Io(format!("writing {}: {e}", p.display())))
        }
        None => out
            .write_all(bytes)
            .map_err(|e| CliError::Io(format!("writing stdout: {e}"))),
    }
}

fn resolve_format(
    path: Option<&Path>,
    explicit: Option<OutputFormat>,
    default: OutputFormat,
) -> Result<OutputFormat, CliError> {
    if let Some(f) = explicit {
        return Ok(f);
    }
    let Some(path) = path else {
        return Ok(default);
    };
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase);
    match ext.as_deref() {
        Some("csv") => Ok(OutputFormat::Csv),
        Some("pgm") => Ok(OutputFormat::Pgm),
        Some("wav") => Ok(OutputFormat::Wav),
        _ => Err(CliError::Usage(format!(
            "cannot infer output format from {}; use --format",
            path.display()
        ))),
    }
}

fn info(path: &Path, out: &mut dyn Write) -> Result<(), CliError> {
    let (_, meta) = load(path)?;
    let format = match meta.sample_format {
        SampleFormat::PcmInt => "pcm_int",
        SampleFormat::IeeeFloat => "ieee_float",
    };
    let text = format!(
        "sample_rate_hz: {}\nchannels: {}\nbits_per_sample: {}\nsample_format: {}\nframes: {}\nduration_s: {}\n",
        meta.sample_rate_hz,
        meta.channels,
        meta.bits_per_sample,
        format,
        meta.n_frames,
        meta.duration_s()
    );
    emit(None, text.as_bytes(), out)
}

fn synth(args: SynthArgs) -> Result<(), CliError> {
    let format = resolve_format(Some(&args.out), args.format, OutputFormat::Wav)?;
    let ts = match args.kind {
        SignalKind::Cosine => synth_cosine_sum(args.a0, &args.components, args.fs, args.duration)?,
        SignalKind::Square => synth_square_partial_sum(
            args.f0.unwrap_or(5.0),
            args.harmonics,
            args.fs,
            args.duration,
        )?,
        SignalKind::Chirp => {
            synth_linear_chirp(args.f0.unwrap_or(75.0), args.rate, args.fs, args.duration)?
        }
    };
    let ts = if args.gain == 1.0 {
        ts
    } else {
        ts.scaled(args.gain)
    };
    let bytes = match format {
        OutputFormat::Wav => write_wav(&ts, 16).map_err(|e| match e {
            WavError::SampleOutOfRange { .. } => {
                CliError::Param(format!("{e}; lower the level with --gain"))
            }
            other => other.into(),
        })?,
        OutputFormat::Csv => {
            let mut text = String::from("time_s,value\n");
            for (i, x) in ts.samples().iter().enumerate() {
                let t = i as f64 / ts.sample_rate_hz();
                let _ = writeln!(text, "{},{}", format_sci(t), format_sci(*x));
            }
            text.into_bytes()
        }
        OutputFormat::Pgm => {
            return Err(CliError::Usage("synth writes .wav or .csv".into()));
        }
    };
    emit(Some(&args.out), &bytes, &mut std::io::sink())
}

fn fft_cmd(args: FftArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (ts, _) = load(&args.input)?;
    let len = match args.len {
        Some(len) => len,
        None => ts.len().checked_sub(args.start).ok_or_else(|| {
            CliError::Param(format!(
                "start {} beyond signal length {}",
                args.start,
                ts.len()
            ))
        })?,
    };
    let part = ts.slice(args.start, len)?;
    let spectrum = crate::fft::spectrum(&part)?;
    let mut text = String::from("bin,freq_hz,re,im,magnitude\n");
    for (k, z) in spectrum.bins().iter().enumerate() {
        let _ = writeln!(
            text,
            "{k},{},{},{},{}",
            format_sci(spectrum.bin_freq_hz(k)),
            format_sci(z.re),
            format_sci(z.im),
            format_sci(z.norm())
        );
    }
    emit(args.out.as_deref(), text.as_bytes(), out)
}

fn params_from(a: &AnalysisArgs, noverlap: usize) -> Result<AnalysisParams, CliError> {
    Ok(AnalysisParams::new(a.nperseg, noverlap)?
        .with_window(a.window.into())
        .with_scaling(a.scaling.into())
        .with_detrend(a.detrend.into()))
}

fn psd(args: PsdArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let format = resolve_format(args.out.as_deref(), None, OutputFormat::Csv)?;
    if format != OutputFormat::Csv {
        return Err(CliError::Usage("psd writes CSV only".into()));
    }
    let (ts, _) = load(&args.analysis.input)?;
    let params = params_from(&args.analysis, args.noverlap)?;
    let psd = welch_psd(&ts, &params)?;
    emit(args.out.as_deref(), psd_to_csv(&psd).as_bytes(), out)
}

fn spec(args: SpecArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let format = resolve_format(args.out.as_deref(), args.format, OutputFormat::Csv)?;
    if format == OutputFormat::Wav {
        return Err(CliError::Usage("spec writes .csv or .pgm".into()));
    }
    let (ts, _) = load(&args.analysis.input)?;
    let noverlap = args.noverlap.unwrap_or(args.analysis.nperseg / 2);
    let params = params_from(&args.analysis, noverlap)?;
    let grid = spectrogram(&ts, &params)?;

    let bytes = match format {
        OutputFormat::Csv if args.db => grid_to_csv(&to_db(&grid, args.floor_db)?)?.into_bytes(),
        OutputFormat::Csv => grid_to_csv(&grid)?.into_bytes(),
        _ => {
            let db = to_db(&grid, args.floor_db)?;
            let (auto_min, auto_max) = default_display_range(&db)
                .ok_or_else(|| CliError::Param("spectrogram has no finite values".into()))?;
            let max_db = args.max_db.unwrap_or(auto_max);
            let min_db = args.min_db.unwrap_or(max_db - (auto_max - auto_min));
            grid_to_pgm(&db, min_db, max_db)?
        }
    };
    emit(args.out.as_deref(), &bytes, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_with(
            std::iter::once("spectrokit").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8_lossy(&out).into_owned(),
            String::from_utf8_lossy(&err).into_owned(),
        )
    }

    #[test]
    fn component_parser() {
        assert_eq!(
            parse_component("2:1000").unwrap(),
            SynthComponent::new(2.0, 1000.0, 0.0)
        );
        assert_eq!(
            parse_component("0.5:50:-1.5").unwrap(),
            SynthComponent::new(0.5, 50.0, -1.5)
        );
        assert!(parse_component("1").is_err());
        assert!(parse_component("a:b").is_err());
    }

    #[test]
    fn usage_errors_exit_one() {
        let (code, _, err) = run_capture(&["bogus"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(!err.is_empty());
        let (code, _, _) = run_capture(&["psd"]);
        assert_eq!(code, EXIT_USAGE);
        let (code, _, _) = run_capture(&["psd", "--in", "x.wav", "--window", "kaiser"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("spec"));
    }

    #[test]
    fn missing_file_exits_two() {
        let (code, _, err) = run_capture(&["info", "/nonexistent/snap.wav"]);
        assert_eq!(code, EXIT_IO);
        assert!(err.contains("snap.wav"));
    }

    #[test]
    fn format_inference() {
        assert_eq!(
            resolve_format(Some(Path::new("a.PGM")), None, OutputFormat::Csv).unwrap(),
            OutputFormat::Pgm
        );
        assert_eq!(
            resolve_format(
                Some(Path::new("a.txt")),
                Some(OutputFormat::Csv),
                OutputFormat::Wav
            )
            .unwrap(),
            OutputFormat::Csv
        );
        assert_eq!(
            resolve_format(None, None, OutputFormat::Csv).unwrap(),
            OutputFormat::Csv
        );
        assert!(resolve_format(Some(Path::new("a.txt")), None, OutputFormat::Csv).is_err());
    }
}
