//! Audio-visual speech enhancement toolkit.
//!
//! Separates the voice of a visible speaker from background noise using a
//! dual-tower convolutional encoder-decoder that fuses mouth-region video
//! with a log mel spectrogram of the noisy audio. The crate provides the
//! full pipeline: WAV and frame I/O, STFT/mel signal processing, the
//! network and its training loop, dataset synthesis with SNR-controlled
//! mixing, and objective evaluation (SNR, log-spectral distance).

pub mod cli;
pub mod datapipe;
pub mod dsp;
pub mod metrics;
pub mod model;
pub mod nn;
pub mod training;
