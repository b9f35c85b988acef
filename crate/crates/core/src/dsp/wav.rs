//! RIFF/PCM WAV reading and writing.
//!
//! Input: mono or stereo (averaged to mono), 16-bit integer or 32-bit float
//! PCM at 16 kHz. Output: 16-bit PCM mono at 16 kHz.

use std::path::Path;

use hound::{SampleFormat, WavReader, WavSpec, WavWriter};

use super::{DspError, Waveform, SAMPLE_RATE};

fn io_err(path: &Path, source: std::io::Error) -> DspError {
    DspError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn hound_err(path: &Path, err: hound::Error) -> DspError {
    match err {
        hound::Error::IoError(e) => io_err(path, e),
        other => DspError::UnsupportedWav {
            path: path.display().to_string(),
            detail: other.to_string(),
        },
    }
}

/// Reads a PCM WAV file into a [`Waveform`], averaging stereo to mono and
/// scaling samples to [-1, 1]. Rejects sample rates other than 16 kHz.
pub fn read_wav(path: impl AsRef<Path>) -> Result<Waveform, DspError> {
    let path = path.as_ref();
    let mut reader = WavReader::open(path).map_err(|e| hound_err(path, e))?;
    let spec = reader.spec();
    if spec.sample_rate != SAMPLE_RATE {
        return Err(DspError::SampleRate {
            expected: SAMPLE_RATE,
            got: spec.sample_rate,
        });
    }
    if spec.channels == 0 || spec.channels > 2 {
        return Err(DspError::UnsupportedWav {
            path: path.display().to_string(),
            detail: format!("{} channels (mono or stereo only)", spec.channels),
        });
    }

    let interleaved: Vec<f64> = match (spec.sample_format, spec.bits_per_sample) {
        (SampleFormat::Int, 16) => reader
            .samples::<i16>()
            .map(|s| s.map(|v| v as f64 / 32768.0))
            .collect::<Result<_, _>>()
            .map_err(|e| hound_err(path, e))?,
        (SampleFormat::Float, 32) => reader
            .samples::<f32>()
            .map(|s| s.map(|v| v as f64))
            .collect::<Result<_, _>>()
            .map_err(|e| hound_err(path, e))?,
        (fmt, bits) => {
            return Err(DspError::UnsupportedWav {
                path: path.display().to_string(),
                detail: format!("{bits}-bit {fmt:?} (16-bit int or 32-bit float only)"),
            })
        }
    };

    let mono = if spec.channels == 2 {
        interleaved
            .chunks_exact(2)
            .map(|pair| 0.5 * (pair[0] + pair[1]))
            .collect()
    } else {
        interleaved
    };
    Waveform::new(mono, SAMPLE_RATE)
}

/// Writes a waveform as 16-bit PCM mono at 16 kHz, clamping to [-1, 1].
pub fn write_wav(path: impl AsRef<Path>, w: &Waveform) -> Result<(), DspError> {
    let path = path.as_ref();
    let spec = WavSpec {
        channels: 1,
        sample_rate: SAMPLE_RATE,
        bits_per_sample: 16,
        sample_format: SampleFormat::Int,
    };
    let mut writer = WavWriter::create(path, spec).map_err(|e| hound_err(path, e))?;
    for &s in w.samples() {
        let q = (s.clamp(-1.0, 1.0) * 32767.0).round() as i16;
        writer.write_sample(q).map_err(|e| hound_err(path, e))?;
    }
    writer.finalize().map_err(|e| hound_err(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ramp_round_trips_within_quantization() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ramp.wav");
        let samples: Vec<f64> = (0..3200).map(|i| i as f64 / 3200.0 * 1.8 - 0.9).collect();
        let w = Waveform::new(samples.clone(), SAMPLE_RATE).unwrap();
        write_wav(&path, &w).unwrap();
        let r = read_wav(&path).unwrap();
        assert_eq!(r.len(), 3200);
        let tol = 1.0 / 32768.0;
        for (a, b) in samples.iter().zip(r.samples()) {
            assert!((a - b).abs() <= tol, "{a} vs {b}");
        }
    }

    #[test]
    fn zeros_round_trip_exactly() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("zero.wav");
        let w = Waveform::new(vec![0.0; 1000], SAMPLE_RATE).unwrap();
        write_wav(&path, &w).unwrap();
        let r = read_wav(&path).unwrap();
        assert_eq!(r.len(), 1000);
        assert!(r.samples().iter().all(|&s| s == 0.0));
    }

    #[test]
    fn rejects_other_sample_rates() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cd.wav");
        let spec = WavSpec {
            channels: 1,
            sample_rate: 44_100,
            bits_per_sample: 16,
            sample_format: SampleFormat::Int,
        };
        let mut writer = WavWriter::create(&path, spec).unwrap();
        for _ in 0..100 {
            writer.write_sample(0i16).unwrap();
        }
        writer.finalize().unwrap();
        let err = read_wav(&path).unwrap_err();
        assert!(matches!(err, DspError::SampleRate { got: 44_100, .. }));
    }

    #[test]
    fn stereo_averages_to_mono() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("st.wav");
        let spec = WavSpec {
            channels: 2,
            sample_rate: SAMPLE_RATE,
            bits_per_sample: 16,
            sample_format: SampleFormat::Int,
        };
        let mut writer = WavWriter::create(&path, spec).unwrap();
        for _ in 0..10 {
            writer.write_sample(16384i16).unwrap();
            writer.write_sample(-16384i16).unwrap();
        }
        writer.finalize().unwrap();
        let r = read_wav(&path).unwrap();
        assert_eq!(r.len(), 10);
        assert!(r.samples().iter().all(|&s| s.abs() < 1e-12));
    }

    #[test]
    fn float32_input_accepted() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f32.wav");
        let spec = WavSpec {
            channels: 1,
            sample_rate: SAMPLE_RATE,
            bits_per_sample: 32,
            sample_format: SampleFormat::Float,
        };
        let mut writer = WavWriter::create(&path, spec).unwrap();
        for i in 0..16 {
            writer.write_sample(i as f32 / 32.0).unwrap();
        }
        writer.finalize().unwrap();
        let r = read_wav(&path).unwrap();
        assert_eq!(r.len(), 16);
        assert!((r.samples()[8] - 0.25).abs() < 1e-7);
    }
}
