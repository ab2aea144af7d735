//! RIFF/WAVE reading and writing.
//!
//! Reads PCM16 and IEEE float32 files, mono or multichannel (channels are
//! averaged to mono). Writes mono PCM16. PCM16 decodes as `s / 32768` and
//! encodes as `round(x · 32767)`, so a write/read round trip is off by
//! `(x − d) / 32768` with `|d| ≤ 0.5`: at most `1/32768` for `|x| ≤ 0.5`
//! and at most `1.5/32768` at full scale.

use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::signal::TimeSeries;

const FORMAT_PCM: u16 = 1;
const FORMAT_IEEE_FLOAT: u16 = 3;
const FORMAT_EXTENSIBLE: u16 = 0xFFFE;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WavError {
    #[error("not a RIFF/WAVE stream: expected {expected:?} at offset {offset}")]
    BadMagic {
        expected: &'static str,
        offset: usize,
    },

    #[error("missing `{chunk}` chunk")]
    MissingChunk { chunk: &'static str },

    #[error(
        "`{chunk}` chunk at offset {offset} declares {declared} bytes but only {available} remain"
    )]
    Truncated {
        chunk: String,
        offset: usize,
        declared: usize,
        available: usize,
    },

    #[error("malformed `fmt ` chunk at offset {offset}: {reason}")]
    BadFormat { offset: usize, reason: String },

    #[error("unsupported format tag {tag:#06x} in `fmt ` chunk at offset {offset}")]
    UnsupportedFormat { tag: u16, offset: usize },

    #[error(
        "unsupported bit depth {bits} for format tag {tag} in `fmt ` chunk at offset {offset}"
    )]
    UnsupportedBitDepth { bits: u16, tag: u16, offset: usize },

    #[error("cannot encode an empty signal")]
    EmptySignal,

    #[error("sample {index} = {value} lies outside [-1, 1]")]
    SampleOutOfRange { index: usize, value: f64 },

    #[error("sample rate {0} Hz cannot be stored in a WAV header")]
    BadSampleRate(f64),

    #[error("I/O error on {path}: {message}")]
    Io { path: String, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleFormat {
    PcmInt,
    IeeeFloat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WavMetadata {
    pub sample_rate_hz: u32,
    pub channels: u16,
    pub bits_per_sample: u16,
    pub sample_format: SampleFormat,
    pub n_frames: usize,
}

impl WavMetadata {
    pub fn duration_s(&self) -> f64 {
        self.n_frames as f64 / self.sample_rate_hz as f64
    }
}

struct Chunk<'a> {
    id: [u8; 4],
    // offset of the chunk header
    offset: usize,
    body: &'a [u8],
}

fn u16_at(b: &[u8], at: usize) -> u16 {
    u16::from_le_bytes([b[at], b[at + 1]])
}

fn u32_at(b: &[u8], at: usize) -> u32 {
    u32::from_le_bytes([b[at], b[at + 1], b[at + 2], b[at + 3]])
}

fn chunk_name(id: &[u8; 4]) -> String {
    String::from_utf8_lossy(id).into_owned()
}

/// Walks the chunk list after the 12-byte RIFF header. The walk is bounded
/// by the RIFF size field and by the buffer itself.
fn chunks(bytes: &[u8]) -> Result<Vec<Chunk<'_>>, WavError> {
    if bytes.len() < 12 || &bytes[0..4] != b"RIFF" {
        return Err(WavError::BadMagic {
            expected: "RIFF",
            offset: 0,
        });
    }
    if &bytes[8..12] != b"WAVE" {
        return Err(WavError::BadMagic {
            expected: "WAVE",
            offset: 8,
        });
    }
    let riff_size = u32_at(bytes, 4) as usize;
    let declared_end = 8usize.saturating_add(riff_size);
    if declared_end > bytes.len() {
        return Err(WavError::Truncated {
            chunk: "RIFF".into(),
            offset: 0,
            declared: riff_size,
            available: bytes.len() - 8,
        });
    }
    let end = declared_end;

    let mut out = Vec::new();
    let mut pos = 12;
    while pos + 8 <= end {
        let id = [bytes[pos], bytes[pos + 1], bytes[pos + 2], bytes[pos + 3]];
        let size = u32_at(bytes, pos + 4) as usize;
        let body_start = pos + 8;
        let available = end - body_start;
        if size > available {
            return Err(WavError::Truncated {
                chunk: chunk_name(&id),
                offset: pos,
                declared: size,
                available,
            });
        }
        out.push(Chunk {
            id,
            offset: pos,
            body: &bytes[body_start..body_start + size],
        });
        // odd-sized chunks are followed by one pad byte
        pos = body_start + size + (size & 1);
    }
    Ok(out)
}

struct Format {
    channels: u16,
    sample_rate: u32,
    block_align: u16,
    bits: u16,
    sample_format: SampleFormat,
}

fn parse_fmt(chunk: &Chunk<'_>) -> Result<Format, WavError> {
    let b = chunk.body;
    let offset = chunk.offset;
    if b.len() < 16 {
        return Err(WavError::BadFormat {
            offset,
            reason: format!("body is {} bytes, need at least 16", b.len()),
        });
    }
    let mut tag = u16_at(b, 0);
    let channels = u16_at(b, 2);
    let sample_rate = u32_at(b, 4);
    let block_align = u16_at(b, 12);
    let bits = u16_at(b, 14);

    if tag == FORMAT_EXTENSIBLE {
        // cbSize(2) validBits(2) channelMask(4) subformat GUID(16)
        if b.len() < 40 {
            return Err(WavError::BadFormat {
                offset,
                reason: "extensible format without sub-format GUID".into(),
            });
        }
        tag = u16_at(b, 24);
    }

    let sample_format = match tag {
        FORMAT_PCM => SampleFormat::PcmInt,
        FORMAT_IEEE_FLOAT => SampleFormat::IeeeFloat,
        other => return Err(WavError::UnsupportedFormat { tag: other, offset }),
    };
    let supported = matches!(
        (sample_format, bits),
        (SampleFormat::PcmInt, 16) | (SampleFormat::IeeeFloat, 32)
    );
    if !supported {
        return Err(WavError::UnsupportedBitDepth { bits, tag, offset });
    }
    if channels == 0 {
        return Err(WavError::BadFormat {
            offset,
            reason: "zero channels".into(),
        });
    }
    if sample_rate == 0 {
        return Err(WavError::BadFormat {
            offset,
            reason: "zero sample rate".into(),
        });
    }
    let expected_align = channels as usize * (bits as usize / 8);
    if block_align as usize != expected_align {
        return Err(WavError::BadFormat {
            offset,
            reason: format!("block align {block_align}, expected {expected_align}"),
        });
    }
    Ok(Format {
        channels,
        sample_rate,
        block_align,
        bits,
        sample_format,
    })
}

/// Parses a RIFF/WAVE byte stream into a mono series and its metadata.
pub fn read_wav(bytes: &[u8]) -> Result<(TimeSeries, WavMetadata), WavError> {
    let chunks = chunks(bytes)?;
    let fmt_chunk = chunks
        .iter()
        .find(|c| &c.id == b"fmt ")
        .ok_or(WavError::MissingChunk { chunk: "fmt " })?;
    let format = parse_fmt(fmt_chunk)?;
    let data = chunks
        .iter()
        .find(|c| &c.id == b"data")
        .ok_or(WavError::MissingChunk { chunk: "data" })?;

    let block = format.block_align as usize;
    if data.body.len() % block != 0 {
        return Err(WavError::Truncated {
            chunk: "data".into(),
            offset: data.offset,
            declared: data.body.len(),
            available: data.body.len() - data.body.len() % block,
        });
    }
    let channels = format.channels as usize;
    let n_frames = data.body.len() / block;

    let decode: fn(&[u8]) -> f64 = match format.sample_format {
        SampleFormat::PcmInt => |s| i16::from_le_bytes([s[0], s[1]]) as f64 / 32768.0,
        SampleFormat::IeeeFloat => |s| f32::from_le_bytes([s[0], s[1], s[2], s[3]]) as f64,
    };
    let width = format.bits as usize / 8;
    let samples = data
        .body
        .chunks_exact(block)
        .map(|frame| {
            let sum: f64 = frame.chunks_exact(width).map(decode).sum();
            sum / channels as f64
        })
        .collect();

    let meta = WavMetadata {
        sample_rate_hz: format.sample_rate,
        channels: format.channels,
        bits_per_sample: format.bits,
        sample_format: format.sample_format,
        n_frames,
    };
    let ts = TimeSeries::new(samples, format.sample_rate as f64)
        .expect("sample rate validated as non-zero");
    Ok((ts, meta))
}

/// Encodes a mono series as 16-bit PCM. Samples must lie in `[-1, 1]`;
/// nothing is clipped.
pub fn write_wav(ts: &TimeSeries, bits: u16) -> Result<Vec<u8>, WavError> {
    if bits != 16 {
        return Err(WavError::UnsupportedBitDepth {
            bits,
            tag: FORMAT_PCM,
            offset: 12,
        });
    }
    if ts.is_empty() {
        return Err(WavError::EmptySignal);
    }
    let fs = ts.sample_rate_hz();
    if fs.fract() != 0.0 || fs > u32::MAX as f64 {
        return Err(WavError::BadSampleRate(fs));
    }
    if let Some((index, &value)) = ts
        .samples()
        .iter()
        .enumerate()
        .find(|(_, v)| !(-1.0..=1.0).contains(*v))
    {
        return Err(WavError::SampleOutOfRange { index, value });
    }

    let sample_rate = fs as u32;
    let data_len = ts.len() * 2;
    if data_len + 36 > u32::MAX as usize {
        return Err(WavError::BadFormat {
            offset: 40,
            reason: "signal too long for a RIFF file".into(),
        });
    }
    let mut out = Vec::with_capacity(44 + data_len);
    out.extend_from_slice(b"RIFF");
    out.extend_from_slice(&((36 + data_len) as u32).to_le_bytes());
    out.extend_from_slice(b"WAVE");
    out.extend_from_slice(b"fmt ");
    out.extend_from_slice(&16u32.to_le_bytes());
    out.extend_from_slice(&FORMAT_PCM.to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes());
    out.extend_from_slice(&sample_rate.to_le_bytes());
    out.extend_from_slice(&(sample_rate * 2).to_le_bytes());
    out.extend_from_slice(&2u16.to_le_bytes());
    out.extend_from_slice(&16u16.to_le_bytes());
    out.extend_from_slice(b"data");
    out.extend_from_slice(&(data_len as u32).to_le_bytes());
    for &x in ts.samples() {
        let q = (x * 32767.0).round() as i16;
        out.extend_from_slice(&q.to_le_bytes());
    }
    Ok(out)
}

pub fn read_wav_file(path: impl AsRef<Path>) -> Result<(TimeSeries, WavMetadata), WavError> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| io_error(path, e))?;
    read_wav(&bytes)
}

pub fn write_wav_file(path: impl AsRef<Path>, ts: &TimeSeries) -> Result<(), WavError> {
    let path = path.as_ref();
    let bytes = write_wav(ts, 16)?;
    fs::write(path, bytes).map_err(|e| io_error(path, e))
}

fn io_error(path: &Path, e: std::io::Error) -> WavError {
    WavError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}
