//! Sounding captures: Welch power spectrum, per-subcarrier SNR estimation,
//! synthetic captures, and the raw I/Q file format.
//!
//! The sounding signal occupies the even bins of a 128-point FFT (one per
//! subcarrier); the odd bins carry only noise and give the noise estimate.
//!
//! Raw captures are interleaved little-endian `f32` I/Q pairs. The sidecar
//! JSON next to them (same path, `.json` extension) holds the sample rate,
//! period count, carrier count and center frequency.

use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use physec_core::channel::db_to_linear;
use physec_core::SUBCARRIERS;

use crate::error::{Error, Result};

pub const FFT_LEN: usize = 2 * SUBCARRIERS;

/// Sidecar metadata for a raw capture.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CaptureMeta {
    pub sample_rate_hz: u64,
    pub periods: usize,
    pub carriers: usize,
    pub center_freq_hz: u64,
}

impl Default for CaptureMeta {
    fn default() -> Self {
        Self {
            sample_rate_hz: 20_000_000,
            periods: 32,
            carriers: SUBCARRIERS,
            center_freq_hz: 1_250_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SoundingCapture {
    pub iq: Vec<Complex<f32>>,
    pub meta: CaptureMeta,
}

/// Mean periodogram `|X_k|² / N` over non-overlapping rectangular segments
/// of `fft_len` samples. At most `meta.periods` segments are used.
pub fn welch_psd(cap: &SoundingCapture, fft_len: usize) -> Result<Vec<f64>> {
    if fft_len != 2 * cap.meta.carriers {
        return Err(Error::FftLength {
            fft_len,
            carriers: cap.meta.carriers,
        });
    }
    let segments = (cap.iq.len() / fft_len).min(cap.meta.periods.max(1));
    if segments == 0 {
        return Err(Error::TooFewSamples {
            need: fft_len,
            found: cap.iq.len(),
            fft_len,
            segments: 1,
        });
    }
    let fft = FftPlanner::<f64>::new().plan_fft_forward(fft_len);
    let mut acc = vec![0.0f64; fft_len];
    let mut buf = vec![Complex::new(0.0, 0.0); fft_len];
    for seg in cap.iq.chunks_exact(fft_len).take(segments) {
        for (b, s) in buf.iter_mut().zip(seg) {
            *b = Complex::new(s.re as f64, s.im as f64);
        }
        fft.process(&mut buf);
        for (a, x) in acc.iter_mut().zip(&buf) {
            *a += x.norm_sqr() / fft_len as f64;
        }
    }
    for a in &mut acc {
        *a /= segments as f64;
    }
    Ok(acc)
}

/// Noise below this fraction of the strongest bin is treated as no noise at
/// all (120 dB, well past any receiver's dynamic range; `f32` rounding of a
/// clean tone sits near -140 dB).
pub const NOISE_FLOOR_RATIO: f64 = 1e-12;

/// Per-subcarrier SNR in dB: even-bin power over the mean odd-bin power.
pub fn snr_estimate(cap: &SoundingCapture) -> Result<Vec<f64>> {
    let psd = welch_psd(cap, 2 * cap.meta.carriers)?;
    let odd: Vec<f64> = psd.iter().skip(1).step_by(2).copied().collect();
    let noise = odd.iter().sum::<f64>() / odd.len() as f64;
    let peak = psd.iter().copied().fold(0.0, f64::max);
    if noise <= peak * NOISE_FLOOR_RATIO || !noise.is_finite() {
        return Err(Error::ZeroNoise);
    }
    Ok(psd.iter().step_by(2).map(|&p| 10.0 * (p / noise).log10()).collect())
}

/// Capture whose tone on subcarrier `i` sits `snr_db[i]` above the per-bin
/// noise power (unit-variance complex Gaussian noise). `None` entries, or a
/// `noise` flag of false, leave the corresponding part out.
pub fn synthesize_capture(snr_db: &[Option<f64>], meta: CaptureMeta, noise: bool, seed: u64) -> SoundingCapture {
    let n = 2 * meta.carriers;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // One period built in the frequency domain: bin power |X|²/N = A²N.
    let mut spectrum = vec![Complex::new(0.0f64, 0.0); n];
    for (i, snr) in snr_db.iter().enumerate().take(meta.carriers) {
        let phase: f64 = rng.random::<f64>() * std::f64::consts::TAU;
        if let Some(db) = snr {
            let amplitude = (db_to_linear(*db) / n as f64).sqrt();
            spectrum[2 * i] = Complex::from_polar(amplitude * n as f64, phase);
        }
    }
    FftPlanner::<f64>::new().plan_fft_inverse(n).process(&mut spectrum);
    let period: Vec<Complex<f64>> = spectrum.iter().map(|x| x / n as f64).collect();

    let sigma = std::f64::consts::FRAC_1_SQRT_2;
    let iq = (0..meta.periods * n)
        .map(|t| {
            let mut s = period[t % n];
            if noise {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                s += Complex::new(re, im) * sigma;
            }
            Complex::new(s.re as f32, s.im as f32)
        })
        .collect();
    SoundingCapture { iq, meta }
}

/// Sidecar path for a raw capture file.
pub fn sidecar_path(iq_path: &Path) -> PathBuf {
    iq_path.with_extension("json")
}

pub fn write_capture(iq_path: &Path, cap: &SoundingCapture) -> Result<()> {
    let mut bytes = Vec::with_capacity(cap.iq.len() * 8);
    for s in &cap.iq {
        bytes.extend_from_slice(&s.re.to_le_bytes());
        bytes.extend_from_slice(&s.im.to_le_bytes());
    }
    fs::write(iq_path, bytes).map_err(|e| Error::io(iq_path, e))?;
    let side = sidecar_path(iq_path);
    let json = serde_json::to_string_pretty(&cap.meta).map_err(|e| Error::json(&side, e))?;
    fs::write(&side, json + "\n").map_err(|e| Error::io(&side, e))
}

pub fn read_capture(iq_path: &Path, sidecar: Option<&Path>) -> Result<SoundingCapture> {
    let side = sidecar.map_or_else(|| sidecar_path(iq_path), Path::to_path_buf);
    let text = fs::read_to_string(&side).map_err(|e| Error::io(&side, e))?;
    let meta: CaptureMeta = serde_json::from_str(&text).map_err(|e| Error::json(&side, e))?;
    if meta.sample_rate_hz == 0 || meta.carriers == 0 {
        return Err(Error::Malformed {
            path: side,
            line: 1,
            message: "sample_rate_hz and carriers must be positive".into(),
            schema: "{sample_rate_hz, periods, carriers, center_freq_hz}",
        });
    }
    let bytes = fs::read(iq_path).map_err(|e| Error::io(iq_path, e))?;
    if bytes.len() % 8 != 0 {
        return Err(Error::Malformed {
            path: iq_path.into(),
            line: 0,
            message: format!("{} bytes is not a whole number of I/Q pairs", bytes.len()),
            schema: "interleaved little-endian f32 I,Q pairs",
        });
    }
    let f = |b: &[u8]| f32::from_le_bytes(b.try_into().expect("4-byte chunk"));
    let iq: Vec<Complex<f32>> = bytes
        .chunks_exact(8)
        .map(|c| Complex::new(f(&c[..4]), f(&c[4..])))
        .collect();
    let need = meta.periods * 2 * meta.carriers;
    if iq.len() < need {
        return Err(Error::TooFewSamples {
            need,
            found: iq.len(),
            fft_len: 2 * meta.carriers,
            segments: meta.periods,
        });
    }
    Ok(SoundingCapture { iq, meta })
}
