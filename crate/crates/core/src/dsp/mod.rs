//! Deterministic signal mathematics: STFT analysis/synthesis, mel filterbank
//! construction and pseudo-inversion, log compression, segment slicing, and
//! WAV I/O.
//!
//! All operations here are pure functions of their inputs and are safe to
//! call concurrently. Audio is processed in `f64` end to end; the neural
//! network converts to `f32` at its own boundary.

mod mel;
mod stft;
mod wav;

pub use mel::{build_mel_filterbank, from_log_mel, to_log_mel, MelFilterbank};
pub use stft::{compute_stft, invert_stft, Spectrogram};
pub use wav::{read_wav, write_wav};

use ndarray::Array2;
use thiserror::Error;

/// Sample rate every waveform must carry, in Hz.
pub const SAMPLE_RATE: u32 = 16_000;
/// STFT window length in samples (40 ms at 16 kHz, one video frame).
pub const WIN_LENGTH: usize = 640;
/// STFT hop length in samples (10 ms, 75% overlap).
pub const HOP_LENGTH: usize = 160;
/// Number of one-sided frequency bins: WIN_LENGTH / 2 + 1.
pub const N_FREQ: usize = WIN_LENGTH / 2 + 1;
/// Number of mel bands.
pub const N_MELS: usize = 80;
/// Mel filterbank frequency range, in Hz.
pub const MEL_FMIN: f64 = 0.0;
pub const MEL_FMAX: f64 = 8_000.0;
/// Columns per 200 ms log-mel segment (20 hops of 10 ms).
pub const SEGMENT_COLS: usize = 20;
/// Floor added inside the log so silence maps to `ln(LOG_EPS)` instead of -inf.
pub const LOG_EPS: f64 = 1e-5;

#[derive(Debug, Error)]
pub enum DspError {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("unsupported WAV encoding in {path}: {detail}")]
    UnsupportedWav { path: String, detail: String },
    #[error("sample rate is {got} Hz, expected {expected} Hz (resampling is out of scope)")]
    SampleRate { expected: u32, got: u32 },
    #[error("waveform contains non-finite samples")]
    NonFinite,
    #[error("input has {got} samples, shorter than one STFT window ({need})")]
    TooShort { got: usize, need: usize },
    #[error("log-mel matrix has {got} columns, need at least {need} for one segment")]
    TooFewColumns { got: usize, need: usize },
}

/// Mono sample sequence tagged with its sample rate. The raw audio currency.
#[derive(Debug, Clone, PartialEq)]
pub struct Waveform {
    samples: Vec<f64>,
    sample_rate: u32,
}

impl Waveform {
    /// Wraps samples at 16 kHz, rejecting other rates and non-finite values.
    pub fn new(samples: Vec<f64>, sample_rate: u32) -> Result<Self, DspError> {
        if sample_rate != SAMPLE_RATE {
            return Err(DspError::SampleRate {
                expected: SAMPLE_RATE,
                got: sample_rate,
            });
        }
        if samples.iter().any(|s| !s.is_finite()) {
            return Err(DspError::NonFinite);
        }
        Ok(Self {
            samples,
            sample_rate,
        })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration_secs(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate as f64
    }
}

/// 80 x 20 block of natural-log mel magnitudes spanning 200 ms; the
/// network's audio input/output unit.
#[derive(Debug, Clone, PartialEq)]
pub struct LogMelSegment {
    values: Array2<f64>,
}

impl LogMelSegment {
    /// Wraps an 80 x 20 matrix; panics on any other shape (internal misuse).
    pub fn new(values: Array2<f64>) -> Self {
        assert_eq!(
            values.dim(),
            (N_MELS, SEGMENT_COLS),
            "log-mel segment must be {N_MELS}x{SEGMENT_COLS}"
        );
        Self { values }
    }

    pub fn values(&self) -> &Array2<f64> {
        &self.values
    }
}

/// Splits a log-mel matrix into consecutive non-overlapping 20-column
/// segments; remainder columns are dropped.
pub fn slice_segments(m: &Array2<f64>) -> Result<Vec<LogMelSegment>, DspError> {
    let cols = m.ncols();
    if cols < SEGMENT_COLS {
        return Err(DspError::TooFewColumns {
            got: cols,
            need: SEGMENT_COLS,
        });
    }
    let count = cols / SEGMENT_COLS;
    let segments = (0..count)
        .map(|k| {
            let slice = m
                .slice(ndarray::s![.., k * SEGMENT_COLS..(k + 1) * SEGMENT_COLS])
                .to_owned();
            LogMelSegment::new(slice)
        })
        .collect();
    Ok(segments)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::Array2;

    #[test]
    fn waveform_rejects_wrong_rate() {
        let err = Waveform::new(vec![0.0; 4], 44_100).unwrap_err();
        assert!(matches!(err, DspError::SampleRate { got: 44_100, .. }));
    }

    #[test]
    fn waveform_rejects_non_finite() {
        let err = Waveform::new(vec![0.0, f64::NAN], SAMPLE_RATE).unwrap_err();
        assert!(matches!(err, DspError::NonFinite));
    }

    #[test]
    fn slice_drops_remainder() {
        let m = Array2::from_shape_fn((N_MELS, 21), |(r, c)| (r * 100 + c) as f64);
        let segs = slice_segments(&m).unwrap();
        assert_eq!(segs.len(), 1);
        assert_eq!(segs[0].values()[(3, 19)], (300 + 19) as f64);
    }

    #[test]
    fn slice_exact_multiple_concatenates_back() {
        let m = Array2::from_shape_fn((N_MELS, 40), |(r, c)| (r + 7 * c) as f64);
        let segs = slice_segments(&m).unwrap();
        assert_eq!(segs.len(), 2);
        for (k, seg) in segs.iter().enumerate() {
            for r in 0..N_MELS {
                for c in 0..SEGMENT_COLS {
                    assert_eq!(seg.values()[(r, c)], m[(r, k * SEGMENT_COLS + c)]);
                }
            }
        }
    }

    #[test]
    fn slice_too_short_errors() {
        let m = Array2::zeros((N_MELS, 19));
        assert!(matches!(
            slice_segments(&m),
            Err(DspError::TooFewColumns { got: 19, .. })
        ));
    }
}
