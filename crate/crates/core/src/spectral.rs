//! Fourier decomposition of sampled signals and band-limited Gaussian
//! mutual information.
//!
//! Frequencies are kept in Hz: the `n`-th component of a record lasting `T`
//! seconds sits at `f_n = n / T`. The angular form `2πn / T` is available
//! through [`FourierCoefficients::angular_frequency`].
//!
//! Power per component is `S_n = a_n² + b_n²` with no factor of ½, so the
//! mean-square of a signal is `x_0² + Σ S_n / 2` (see [`parseval_power`]).

use std::f64::consts::PI;

use rayon::prelude::*;
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::discrete::{log2, Bits};
use crate::error::{Error, Result};
use crate::numeric::pairwise_sum;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampledSignal {
    samples: Vec<f64>,
    sample_rate: f64,
}

impl SampledSignal {
    pub fn new(samples: Vec<f64>, sample_rate: f64) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::validation(format!(
                "a signal needs at least 2 samples, got {}",
                samples.len()
            )));
        }
        if !(sample_rate > 0.0 && sample_rate.is_finite()) {
            return Err(Error::domain("sample_rate", sample_rate, "must be > 0"));
        }
        if let Some(i) = samples.iter().position(|x| !x.is_finite()) {
            return Err(Error::validation(format!("sample {i} is not finite")));
        }
        Ok(Self {
            samples,
            sample_rate,
        })
    }

    /// Builds a signal from `(t, x)` rows, inferring the sample rate from
    /// the (uniform) time step.
    pub fn from_timed(rows: &[(f64, f64)]) -> Result<Self> {
        if rows.len() < 2 {
            return Err(Error::validation("a signal needs at least 2 samples"));
        }
        let dt = rows[1].0 - rows[0].0;
        if !(dt > 0.0) {
            return Err(Error::validation("time column must be strictly increasing"));
        }
        for (k, w) in rows.windows(2).enumerate() {
            let step = w[1].0 - w[0].0;
            if (step - dt).abs() > 1e-6 * dt {
                return Err(Error::validation(format!(
                    "non-uniform sampling at row {}: step {step} vs {dt}",
                    k + 1
                )));
            }
        }
        let span = rows[rows.len() - 1].0 - rows[0].0;
        let rate = (rows.len() - 1) as f64 / span;
        Self::new(rows.iter().map(|r| r.1).collect(), rate)
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn sample_rate(&self) -> f64 {
        self.sample_rate
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// `T = count / sample_rate`.
    pub fn duration(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.samples.len())
            .map(|k| k as f64 / self.sample_rate)
            .collect()
    }

    pub fn mean_square(&self) -> f64 {
        pairwise_sum(&self.samples.iter().map(|x| x * x).collect::<Vec<_>>()) / self.len() as f64
    }
}

/// Cosine and sine amplitudes for `n = 1..=count/2`, plus the constant term.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FourierCoefficients {
    pub x0: f64,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    /// `f_n = n / T` in Hz.
    pub frequencies: Vec<f64>,
    pub duration: f64,
    /// The last component is the Nyquist bin of an even-length record.
    pub has_nyquist_bin: bool,
}

impl FourierCoefficients {
    pub fn new(x0: f64, a: Vec<f64>, b: Vec<f64>, duration: f64) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::validation(format!(
                "{} cosine but {} sine coefficients",
                a.len(),
                b.len()
            )));
        }
        if !(duration > 0.0) {
            return Err(Error::domain("duration", duration, "must be > 0"));
        }
        let frequencies = (1..=a.len()).map(|n| n as f64 / duration).collect();
        Ok(Self {
            x0,
            a,
            b,
            frequencies,
            duration,
            has_nyquist_bin: false,
        })
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// `2πn / T` in rad/s for the component at index `idx` (n = idx + 1).
    pub fn angular_frequency(&self, idx: usize) -> f64 {
        hz_to_angular(self.frequencies[idx])
    }
}

pub fn hz_to_angular(f: f64) -> f64 {
    2.0 * PI * f
}

pub fn angular_to_hz(w: f64) -> f64 {
    w / (2.0 * PI)
}

fn coefficient_scales(count: usize) -> (usize, bool) {
    let half = count / 2;
    (half, count.is_multiple_of(2))
}

/// Fourier coefficients by direct evaluation of the coefficient sums.
///
/// The integrals `a_n = (2/T) ∫ x_t cos(2π f_n t) dt` (and likewise `b_n`) are
/// evaluated with the periodic trapezoid rule on the samples. The Nyquist bin
/// of an even-length record has weight `1/N` instead of `2/N`.
pub fn fourier_analyze_direct(sig: &SampledSignal) -> FourierCoefficients {
    let x = sig.samples();
    let n_samples = x.len();
    let nf = n_samples as f64;
    let (half, even) = coefficient_scales(n_samples);
    let x0 = pairwise_sum(x) / nf;
    let (a, b): (Vec<f64>, Vec<f64>) = (1..=half)
        .map(|n| {
            let scale = if even && n == half {
                1.0 / nf
            } else {
                2.0 / nf
            };
            let mut c = Vec::with_capacity(n_samples);
            let mut s = Vec::with_capacity(n_samples);
            for (k, &xk) in x.iter().enumerate() {
                // reduce n*k mod N first so the phase stays exact for long records
                let phase = 2.0 * PI * ((n * k) % n_samples) as f64 / nf;
                c.push(xk * phase.cos());
                s.push(xk * phase.sin());
            }
            let bn = if even && n == half {
                0.0
            } else {
                scale * pairwise_sum(&s)
            };
            (scale * pairwise_sum(&c), bn)
        })
        .unzip();
    let mut coeffs = FourierCoefficients::new(x0, a, b, sig.duration()).expect("lengths agree");
    coeffs.has_nyquist_bin = even;
    coeffs
}

/// Same coefficients as [`fourier_analyze_direct`], computed with an FFT.
pub fn fourier_analyze(sig: &SampledSignal) -> FourierCoefficients {
    let x = sig.samples();
    let n_samples = x.len();
    let nf = n_samples as f64;
    let (half, even) = coefficient_scales(n_samples);
    let mut buf: Vec<Complex<f64>> = x.iter().map(|&v| Complex::new(v, 0.0)).collect();
    FftPlanner::new()
        .plan_fft_forward(n_samples)
        .process(&mut buf);
    let x0 = pairwise_sum(x) / nf;
    let mut a = Vec::with_capacity(half);
    let mut b = Vec::with_capacity(half);
    for (n, c) in buf.iter().enumerate().take(half + 1).skip(1) {
        if even && n == half {
            a.push(c.re / nf);
            b.push(0.0);
        } else {
            a.push(2.0 * c.re / nf);
            b.push(-2.0 * c.im / nf);
        }
    }
    let mut coeffs = FourierCoefficients::new(x0, a, b, sig.duration()).expect("lengths agree");
    coeffs.has_nyquist_bin = even;
    coeffs
}

/// `x_t = x_0 + Σ a_n cos(2π f_n t) + Σ b_n sin(2π f_n t)` at each time.
pub fn synthesize(coeffs: &FourierCoefficients, times: &[f64]) -> Vec<f64> {
    times
        .par_iter()
        .map(|&t| {
            let mut terms = Vec::with_capacity(2 * coeffs.len() + 1);
            terms.push(coeffs.x0);
            for ((&an, &bn), &f) in coeffs.a.iter().zip(&coeffs.b).zip(&coeffs.frequencies) {
                let w = 2.0 * PI * f * t;
                terms.push(an * w.cos());
                terms.push(bn * w.sin());
            }
            pairwise_sum(&terms)
        })
        .collect()
}

/// Synthesizes `count` samples at `sample_rate`, starting at `t = 0`.
pub fn synthesize_signal(
    coeffs: &FourierCoefficients,
    sample_rate: f64,
    count: usize,
) -> Result<SampledSignal> {
    let times: Vec<f64> = (0..count).map(|k| k as f64 / sample_rate).collect();
    SampledSignal::new(synthesize(coeffs, &times), sample_rate)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectralLine {
    pub frequency: f64,
    /// `a_n² + b_n²`.
    pub power: f64,
    /// `atan2(b_n, a_n)` in radians.
    pub phase: f64,
}

pub fn power_spectrum(coeffs: &FourierCoefficients) -> Vec<SpectralLine> {
    coeffs
        .a
        .iter()
        .zip(&coeffs.b)
        .zip(&coeffs.frequencies)
        .map(|((&a, &b), &f)| SpectralLine {
            frequency: f,
            power: a * a + b * b,
            phase: b.atan2(a),
        })
        .collect()
}

/// Mean-square signal value implied by the spectrum: `x_0² + Σ S_n / 2`,
/// with the Nyquist bin (if any) counted at full weight.
pub fn parseval_power(coeffs: &FourierCoefficients) -> f64 {
    let lines = power_spectrum(coeffs);
    let last = lines.len().saturating_sub(1);
    let mut terms: Vec<f64> = lines
        .iter()
        .enumerate()
        .map(|(i, l)| {
            if coeffs.has_nyquist_bin && i == last {
                l.power
            } else {
                0.5 * l.power
            }
        })
        .collect();
    terms.push(coeffs.x0 * coeffs.x0);
    pairwise_sum(&terms)
}

/// Signal and noise power on a frequency grid inside `[0, W]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumPair {
    frequencies: Vec<f64>,
    signal: Vec<f64>,
    noise: Vec<f64>,
    bandwidth: f64,
}

fn check_grid(frequencies: &[f64], bandwidth: f64) -> Result<()> {
    if frequencies.is_empty() {
        return Err(Error::validation("frequency grid is empty"));
    }
    if !(bandwidth > 0.0 && bandwidth.is_finite()) {
        return Err(Error::domain("bandwidth", bandwidth, "must be > 0"));
    }
    if let Some(f) = frequencies
        .iter()
        .find(|f| !(**f >= 0.0 && **f <= bandwidth))
    {
        return Err(Error::validation(format!(
            "frequency {f} lies outside [0, {bandwidth}]"
        )));
    }
    if let Some(k) = frequencies.windows(2).position(|w| !(w[1] > w[0])) {
        return Err(Error::validation(format!(
            "frequency grid is not strictly increasing at index {}",
            k + 1
        )));
    }
    Ok(())
}

impl SpectrumPair {
    pub fn new(
        frequencies: Vec<f64>,
        signal: Vec<f64>,
        noise: Vec<f64>,
        bandwidth: f64,
    ) -> Result<Self> {
        if signal.len() != frequencies.len() || noise.len() != frequencies.len() {
            return Err(Error::validation(format!(
                "grid has {} frequencies, {} signal and {} noise values",
                frequencies.len(),
                signal.len(),
                noise.len()
            )));
        }
        check_grid(&frequencies, bandwidth)?;
        if let Some(i) = signal.iter().position(|s| !(*s >= 0.0 && s.is_finite())) {
            return Err(Error::validation(format!("S at index {i} must be >= 0")));
        }
        if let Some(i) = noise.iter().position(|n| !(*n > 0.0 && n.is_finite())) {
            return Err(Error::validation(format!("N at index {i} must be > 0")));
        }
        Ok(Self {
            frequencies,
            signal,
            noise,
            bandwidth,
        })
    }

    /// Constant `S` and `N` on an evenly spaced grid of `points` covering `[0, W]`.
    pub fn flat(signal: f64, noise: f64, bandwidth: f64, points: usize) -> Result<Self> {
        let points = points.max(2);
        let mut freqs: Vec<f64> = (0..points)
            .map(|i| bandwidth * i as f64 / (points - 1) as f64)
            .collect();
        // the division can round the last point just past the band edge
        freqs[points - 1] = bandwidth;
        Self::new(freqs, vec![signal; points], vec![noise; points], bandwidth)
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    pub fn signal(&self) -> &[f64] {
        &self.signal
    }

    pub fn noise(&self) -> &[f64] {
        &self.noise
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    /// `∫_0^W S(f) df` under the same quadrature as the MI integral.
    pub fn total_signal_power(&self) -> f64 {
        let w = quadrature_weights(&self.frequencies, self.bandwidth);
        pairwise_sum(
            &w.iter()
                .zip(&self.signal)
                .map(|(a, b)| a * b)
                .collect::<Vec<_>>(),
        )
    }
}

/// Trapezoid weights on the grid, with the uncovered tails `[0, f_first]`
/// and `[f_last, W]` assigned to the nearest grid point.
pub fn quadrature_weights(frequencies: &[f64], bandwidth: f64) -> Vec<f64> {
    let n = frequencies.len();
    let mut w = vec![0.0; n];
    if n == 0 {
        return w;
    }
    w[0] += frequencies[0];
    w[n - 1] += bandwidth - frequencies[n - 1];
    for i in 0..n.saturating_sub(1) {
        let h = frequencies[i + 1] - frequencies[i];
        w[i] += 0.5 * h;
        w[i + 1] += 0.5 * h;
    }
    w
}

/// `log2(1 + S(f) / N(f))`, bits/s per Hz of bandwidth.
pub fn per_frequency_mi(signal_power: f64, noise_power: f64) -> Result<f64> {
    if !(noise_power > 0.0) {
        return Err(Error::domain("N_f", noise_power, "noise power must be > 0"));
    }
    if !(signal_power >= 0.0) {
        return Err(Error::domain(
            "S_f",
            signal_power,
            "signal power must be >= 0",
        ));
    }
    Ok(log2(1.0 + signal_power / noise_power))
}

/// `∫_0^W log2(1 + S(f)/N(f)) df` in bits/s.
///
/// Per-frequency terms are evaluated in parallel and reduced pairwise, so the
/// result does not depend on the thread count.
pub fn spectral_mutual_information(sp: &SpectrumPair) -> Bits {
    let w = quadrature_weights(&sp.frequencies, sp.bandwidth);
    let terms: Vec<f64> = (0..w.len())
        .into_par_iter()
        .map(|i| w[i] * log2(1.0 + sp.signal[i] / sp.noise[i]))
        .collect();
    Bits(pairwise_sum(&terms))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Allocation {
    pub spectrum: SpectrumPair,
    /// Water level `k`; `S(f) + N(f) = k` wherever `S(f) > 0`.
    pub level: f64,
}

/// Spreads `total_signal_power` so that `S(f) + N(f)` is flat, clipping at
/// `S(f) = 0` where the noise already exceeds the level.
pub fn flat_spectrum_allocation(
    frequencies: &[f64],
    noise: &[f64],
    bandwidth: f64,
    total_signal_power: f64,
) -> Result<Allocation> {
    check_grid(frequencies, bandwidth)?;
    if noise.len() != frequencies.len() {
        return Err(Error::validation(
            "noise and frequency grids differ in length",
        ));
    }
    if let Some(i) = noise.iter().position(|n| !(*n > 0.0 && n.is_finite())) {
        return Err(Error::validation(format!("N at index {i} must be > 0")));
    }
    if !(total_signal_power >= 0.0 && total_signal_power.is_finite()) {
        return Err(Error::domain(
            "total_signal_power",
            total_signal_power,
            "must be >= 0",
        ));
    }
    let w = quadrature_weights(frequencies, bandwidth);
    let allocated = |k: f64| -> f64 {
        pairwise_sum(
            &w.iter()
                .zip(noise)
                .map(|(wi, ni)| wi * (k - ni).max(0.0))
                .collect::<Vec<_>>(),
        )
    };
    let min_noise = noise.iter().cloned().fold(f64::INFINITY, f64::min);
    let max_noise = noise.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let level = if total_signal_power == 0.0 {
        min_noise
    } else {
        let total_weight: f64 = w.iter().sum();
        if !(total_weight > 0.0) {
            return Err(Error::validation("grid carries no bandwidth"));
        }
        let mut lo = min_noise;
        let mut hi = max_noise + total_signal_power / total_weight;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if allocated(mid) < total_signal_power {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        // pick whichever bracket end lands closer to the budget
        if (allocated(lo) - total_signal_power).abs() <= (allocated(hi) - total_signal_power).abs()
        {
            lo
        } else {
            hi
        }
    };
    let signal: Vec<f64> = noise.iter().map(|n| (level - n).max(0.0)).collect();
    Ok(Allocation {
        spectrum: SpectrumPair::new(frequencies.to_vec(), signal, noise.to_vec(), bandwidth)?,
        level,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimation::SeededStream;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    fn cosine(amplitude: f64, harmonic: usize, n: usize, rate: f64) -> SampledSignal {
        let samples = (0..n)
            .map(|k| amplitude * (2.0 * PI * (harmonic * k) as f64 / n as f64).cos())
            .collect();
        SampledSignal::new(samples, rate).unwrap()
    }

    #[test]
    fn pure_cosine() {
        let c = fourier_analyze(&cosine(1.0, 1, 64, 64.0));
        close(c.a[0], 1.0, 1e-12);
        close(c.x0, 0.0, 1e-12);
        for i in 1..c.len() {
            close(c.a[i], 0.0, 1e-12);
        }
        c.b.iter().for_each(|&b| close(b, 0.0, 1e-12));
        assert_eq!(c.frequencies[0], 1.0);
    }

    #[test]
    fn constant_signal() {
        let s = SampledSignal::new(vec![2.5; 32], 8.0).unwrap();
        let c = fourier_analyze(&s);
        close(c.x0, 2.5, 1e-12);
        c.a.iter().chain(&c.b).for_each(|&v| close(v, 0.0, 1e-12));
    }

    #[test]
    fn fft_matches_direct_sum() {
        let mut rng = SeededStream::new(3);
        for n in [16usize, 17, 100, 256] {
            let s =
                SampledSignal::new((0..n).map(|_| rng.next_gaussian()).collect(), 10.0).unwrap();
            let fast = fourier_analyze(&s);
            let slow = fourier_analyze_direct(&s);
            assert_eq!(fast.has_nyquist_bin, n % 2 == 0);
            close(fast.x0, slow.x0, 1e-12);
            for i in 0..fast.len() {
                close(fast.a[i], slow.a[i], 1e-9);
                close(fast.b[i], slow.b[i], 1e-9);
            }
        }
    }

    #[test]
    fn nyquist_bin_round_trips() {
        let s = SampledSignal::new(
            (0..8)
                .map(|k| if k % 2 == 0 { 1.0 } else { -1.0 })
                .collect(),
            8.0,
        )
        .unwrap();
        let c = fourier_analyze_direct(&s);
        assert!(c.has_nyquist_bin);
        close(*c.a.last().unwrap(), 1.0, 1e-12);
        let back = synthesize(&c, &s.times());
        for (x, y) in s.samples().iter().zip(&back) {
            close(*x, *y, 1e-12);
        }
        close(parseval_power(&c), s.mean_square(), 1e-12);
    }

    #[test]
    fn frequency_units() {
        let s = SampledSignal::new(vec![0.0; 100], 50.0).unwrap();
        let c = fourier_analyze(&s);
        // T = 2 s, so f_3 = 1.5 Hz and 3π rad/s
        close(c.frequencies[2], 1.5, 1e-15);
        close(c.angular_frequency(2), 2.0 * PI * 3.0 / 2.0, 1e-12);
        close(angular_to_hz(c.angular_frequency(2)), 1.5, 1e-15);
    }

    #[test]
    fn synthesis_examples() {
        let zero = FourierCoefficients::new(0.0, vec![0.0; 4], vec![0.0; 4], 1.0).unwrap();
        assert!(synthesize(&zero, &[0.0, 0.1, 0.7])
            .iter()
            .all(|&v| v == 0.0));
        let c = FourierCoefficients::new(0.0, vec![2.0], vec![0.0], 1.0).unwrap();
        let t = [0.0, 0.25, 0.5, 0.125];
        let v = synthesize(&c, &t);
        for (ti, vi) in t.iter().zip(v) {
            close(vi, 2.0 * (2.0 * PI * ti).cos(), 1e-12);
        }
        assert!(FourierCoefficients::new(0.0, vec![1.0], vec![], 1.0).is_err());
    }

    #[test]
    fn power_and_phase() {
        let c = FourierCoefficients::new(0.0, vec![3.0], vec![4.0], 1.0).unwrap();
        let p = power_spectrum(&c);
        assert_eq!(p[0].power, 25.0);
        close(p[0].phase, (4.0f64 / 3.0).atan(), 1e-15);
        let z = fourier_analyze(&SampledSignal::new(vec![0.0; 16], 1.0).unwrap());
        assert!(power_spectrum(&z).iter().all(|l| l.power == 0.0));
    }

    #[test]
    fn white_noise_spectrum_is_flat() {
        // S_n = a_n² + b_n² with a_n, b_n ~ N(0, 2σ²/N): mean 4σ²/N, and each
        // band of K bins averages to within 6/√K (relative) at six sigma.
        let n = 1 << 12;
        let mut rng = SeededStream::new(7);
        let s = SampledSignal::new((0..n).map(|_| rng.next_gaussian()).collect(), 1.0).unwrap();
        let lines = power_spectrum(&fourier_analyze(&s));
        let expected = 4.0 / n as f64;
        let band = 256;
        for chunk in lines[..lines.len() - 1].chunks(band) {
            let mean = chunk.iter().map(|l| l.power).sum::<f64>() / chunk.len() as f64;
            let rel = (mean - expected).abs() / expected;
            assert!(
                rel < 6.0 / (chunk.len() as f64).sqrt(),
                "band mean off by {rel}"
            );
        }
    }

    #[test]
    fn gaussian_fourier_components_are_uncorrelated() {
        let trials = 4000;
        let n = 32;
        let mut rng = SeededStream::new(11);
        let mut rows = Vec::with_capacity(trials);
        for _ in 0..trials {
            let s = SampledSignal::new((0..n).map(|_| rng.next_gaussian()).collect(), 1.0).unwrap();
            let c = fourier_analyze(&s);
            let mut v = c.a[..c.len() - 1].to_vec();
            v.extend_from_slice(&c.b[..c.len() - 1]);
            rows.push(v);
        }
        let dims = rows[0].len();
        let mean: Vec<f64> = (0..dims)
            .map(|d| rows.iter().map(|r| r[d]).sum::<f64>() / trials as f64)
            .collect();
        let sd: Vec<f64> = (0..dims)
            .map(|d| {
                (rows.iter().map(|r| (r[d] - mean[d]).powi(2)).sum::<f64>() / trials as f64).sqrt()
            })
            .collect();
        let bound = 5.0 / (trials as f64).sqrt();
        for i in 0..dims {
            for j in (i + 1)..dims {
                let cov = rows
                    .iter()
                    .map(|r| (r[i] - mean[i]) * (r[j] - mean[j]))
                    .sum::<f64>()
                    / trials as f64;
                let corr = cov / (sd[i] * sd[j]);
                assert!(corr.abs() < bound, "components {i},{j} correlate at {corr}");
            }
        }
    }

    #[test]
    fn per_frequency_examples() {
        assert_eq!(per_frequency_mi(2.0, 2.0).unwrap(), 1.0);
        assert_eq!(per_frequency_mi(0.0, 1.0).unwrap(), 0.0);
        assert_eq!(per_frequency_mi(3.0, 1.0).unwrap(), 2.0);
        assert!(per_frequency_mi(1.0, 0.0).is_err());
    }

    #[test]
    fn spectral_mi_examples() {
        let flat = SpectrumPair::flat(1.0, 1.0, 2.0, 11).unwrap();
        close(spectral_mutual_information(&flat).0, 2.0, 1e-12);
        let silent = SpectrumPair::flat(0.0, 1.0, 2.0, 11).unwrap();
        assert_eq!(spectral_mutual_information(&silent).0, 0.0);
        // a grid not touching the band edges still covers [0, W]
        let inner =
            SpectrumPair::new(vec![0.5, 1.0, 1.5], vec![1.0; 3], vec![1.0; 3], 2.0).unwrap();
        close(spectral_mutual_information(&inner).0, 2.0, 1e-12);
    }

    #[test]
    fn triangular_spectrum_against_refined_grid() {
        let tri = |f: f64| 4.0 * (1.0 - (2.0 * f - 1.0).abs());
        let build = |points: usize| {
            let freqs: Vec<f64> = (0..points)
                .map(|i| i as f64 / (points - 1) as f64)
                .collect();
            let s = freqs.iter().map(|&f| tri(f)).collect();
            SpectrumPair::new(freqs, s, vec![1.0; points], 1.0).unwrap()
        };
        let coarse = spectral_mutual_information(&build(2001)).0;
        let fine = spectral_mutual_information(&build(20001)).0;
        close(coarse, fine, 1e-6);
    }

    #[test]
    fn spectrum_validation() {
        assert!(SpectrumPair::new(vec![0.0, 0.0], vec![1.0; 2], vec![1.0; 2], 1.0).is_err());
        assert!(SpectrumPair::new(vec![0.0, 2.0], vec![1.0; 2], vec![1.0; 2], 1.0).is_err());
        assert!(SpectrumPair::new(vec![0.0, 0.5], vec![1.0; 2], vec![0.0; 2], 1.0).is_err());
        assert!(SpectrumPair::new(vec![0.0, 0.5], vec![-1.0; 2], vec![1.0; 2], 1.0).is_err());
        assert!(SpectrumPair::new(vec![], vec![], vec![], 1.0).is_err());
    }

    #[test]
    fn allocation_examples() {
        let freqs: Vec<f64> = (0..11).map(|i| i as f64 / 10.0).collect();
        let a = flat_spectrum_allocation(&freqs, &[1.0; 11], 1.0, 1.0).unwrap();
        close(a.level, 2.0, 1e-9);
        a.spectrum
            .signal()
            .iter()
            .for_each(|&s| close(s, 1.0, 1e-9));

        // two bins of weight ½ each: ½(k−1) + ½(k−3) = 4 gives k = 6
        let a = flat_spectrum_allocation(&[0.25, 0.75], &[1.0, 3.0], 1.0, 4.0).unwrap();
        close(a.level, 6.0, 1e-9);
        close(a.spectrum.signal()[0], 5.0, 1e-9);
        close(a.spectrum.signal()[1], 3.0, 1e-9);
        close(a.spectrum.total_signal_power(), 4.0, 1e-9);

        // small budget only fills the quiet bin
        let a = flat_spectrum_allocation(&[0.25, 0.75], &[1.0, 3.0], 1.0, 0.5).unwrap();
        close(a.level, 2.0, 1e-9);
        assert_eq!(a.spectrum.signal()[1], 0.0);

        let a = flat_spectrum_allocation(&freqs, &[1.0; 11], 1.0, 0.0).unwrap();
        assert!(a.spectrum.signal().iter().all(|&s| s == 0.0));
        assert!(flat_spectrum_allocation(&[], &[], 1.0, 1.0).is_err());
    }
}
