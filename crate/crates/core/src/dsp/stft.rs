//! Short-time Fourier transform and its overlap-add inverse.
//!
//! Analysis uses a periodic Hann window of 640 samples hopped by 160
//! (75% overlap), with reflect padding of win/2 on each side so frame `t`
//! is centered on sample `t * hop` and the frame count is
//! `floor(n / hop) + 1`. Synthesis overlap-adds Hann-windowed inverse
//! transforms and divides by the accumulated squared window.

use ndarray::Array2;
use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use super::{DspError, Waveform, HOP_LENGTH, N_FREQ, SAMPLE_RATE, WIN_LENGTH};

/// Complex STFT split into magnitude and phase planes of shape 321 x T.
#[derive(Debug, Clone)]
pub struct Spectrogram {
    pub magnitude: Array2<f64>,
    pub phase: Array2<f64>,
    pub hop: usize,
    pub win: usize,
}

impl Spectrogram {
    pub fn frames(&self) -> usize {
        self.magnitude.ncols()
    }
}

/// Periodic Hann window: satisfies constant-overlap-add at hop = win/4.
fn hann(win: usize) -> Vec<f64> {
    (0..win)
        .map(|n| 0.5 - 0.5 * (2.0 * std::f64::consts::PI * n as f64 / win as f64).cos())
        .collect()
}

/// Mirror-reflect an out-of-range index into [0, n), numpy "reflect" style
/// (the edge sample is not repeated).
fn reflect_index(i: isize, n: usize) -> usize {
    debug_assert!(n >= 2);
    let period = (2 * n - 2) as isize;
    let mut j = i % period;
    if j < 0 {
        j += period;
    }
    let j = j as usize;
    if j < n {
        j
    } else {
        2 * n - 2 - j
    }
}

/// Computes the magnitude/phase STFT of a waveform.
pub fn compute_stft(w: &Waveform) -> Result<Spectrogram, DspError> {
    let x = w.samples();
    let n = x.len();
    if n < WIN_LENGTH {
        return Err(DspError::TooShort {
            got: n,
            need: WIN_LENGTH,
        });
    }
    let pad = WIN_LENGTH / 2;
    let frames = n / HOP_LENGTH + 1;
    let window = hann(WIN_LENGTH);

    let mut planner = FftPlanner::<f64>::new();
    let fft = planner.plan_fft_forward(WIN_LENGTH);

    let mut magnitude = Array2::zeros((N_FREQ, frames));
    let mut phase = Array2::zeros((N_FREQ, frames));
    let mut buf = vec![Complex64::default(); WIN_LENGTH];
    for t in 0..frames {
        for (j, slot) in buf.iter_mut().enumerate() {
            let src = t as isize * HOP_LENGTH as isize + j as isize - pad as isize;
            let idx = if (0..n as isize).contains(&src) {
                src as usize
            } else {
                reflect_index(src, n)
            };
            *slot = Complex64::new(x[idx] * window[j], 0.0);
        }
        fft.process(&mut buf);
        for k in 0..N_FREQ {
            magnitude[(k, t)] = buf[k].norm();
            phase[(k, t)] = buf[k].arg();
        }
    }
    Ok(Spectrogram {
        magnitude,
        phase,
        hop: HOP_LENGTH,
        win: WIN_LENGTH,
    })
}

/// Reconstructs a waveform by overlap-add synthesis with window-sum
/// normalization. Output length is `(frames - 1) * hop` after removing the
/// center padding.
pub fn invert_stft(s: &Spectrogram) -> Result<Waveform, DspError> {
    let frames = s.frames();
    let win = s.win;
    let hop = s.hop;
    let n_freq = s.magnitude.nrows();
    let pad = win / 2;
    let window = hann(win);

    let padded_len = (frames - 1) * hop + win;
    let mut acc = vec![0.0f64; padded_len];
    let mut wsum = vec![0.0f64; padded_len];

    let mut planner = FftPlanner::<f64>::new();
    let ifft = planner.plan_fft_inverse(win);
    let mut buf = vec![Complex64::default(); win];

    for t in 0..frames {
        for k in 0..n_freq {
            let (sin, cos) = s.phase[(k, t)].sin_cos();
            buf[k] = Complex64::new(s.magnitude[(k, t)] * cos, s.magnitude[(k, t)] * sin);
        }
        // Hermitian extension of the one-sided spectrum.
        for k in 1..win - n_freq + 1 {
            buf[n_freq - 1 + k] = buf[n_freq - 1 - k].conj();
        }
        ifft.process(&mut buf);
        let start = t * hop;
        for j in 0..win {
            let y = buf[j].re / win as f64;
            acc[start + j] += y * window[j];
            wsum[start + j] += window[j] * window[j];
        }
    }

    let out_len = (frames - 1) * hop;
    let mut out = Vec::with_capacity(out_len);
    for i in 0..out_len {
        let p = pad + i;
        out.push(acc[p] / wsum[p].max(1e-15));
    }
    Waveform::new(out, SAMPLE_RATE)
}

/// Signal-to-noise ratio of `estimate` against `reference` over their common
/// prefix, in dB. Returns +inf for a zero residual.
pub fn reconstruction_snr_db(reference: &[f64], estimate: &[f64]) -> f64 {
    let n = reference.len().min(estimate.len());
    let mut sig = 0.0;
    let mut res = 0.0;
    for i in 0..n {
        sig += reference[i] * reference[i];
        let d = reference[i] - estimate[i];
        res += d * d;
    }
    if res == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (sig / res).log10()
    }
}
