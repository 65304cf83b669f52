//! Seeded simulation of Gaussian channels and plug-in (histogram) estimates
//! of entropy and mutual information.
//!
//! Random numbers come from ChaCha20 keyed by a 64-bit seed. Normal variates
//! use the Marsaglia polar method. Work is split into fixed blocks of
//! [`BLOCK_LEN`] samples; block `b` always draws from ChaCha stream `b`, so
//! sequential and sharded runs produce the same bits.

use std::f64::consts::LN_2;

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::GaussianChannelSpec;
use crate::discrete::{entropy, joint_entropy, mutual_information, Bits, DiscretePmf, JointPmf};
use crate::error::{Error, Result};

/// Identifier of the generator and normal-variate method.
pub const ALGORITHM: &str = "chacha20/polar";

/// Samples per simulation block (one ChaCha stream each).
pub const BLOCK_LEN: usize = 1 << 16;

/// A reproducible stream of uniform and normal variates.
#[derive(Clone, Debug)]
pub struct SeededStream {
    rng: ChaCha20Rng,
    seed: u64,
    stream: u64,
    spare: Option<f64>,
}

impl SeededStream {
    pub fn new(seed: u64) -> Self {
        Self::for_shard(seed, 0)
    }

    /// The stream for shard `shard` of a run keyed by `seed`.
    pub fn for_shard(seed: u64, shard: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(shard);
        Self {
            rng,
            seed,
            stream: shard,
            spare: None,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    pub fn algorithm(&self) -> &'static str {
        ALGORITHM
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform on `[0, 1)` from the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal variate.
    pub fn next_gaussian(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        loop {
            let u = 2.0 * self.next_f64() - 1.0;
            let v = 2.0 * self.next_f64() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let k = (-2.0 * s.ln() / s).sqrt();
                self.spare = Some(v * k);
                return u * k;
            }
        }
    }

    /// Index drawn from the probabilities of `pmf` by inversion.
    pub fn next_index<S>(&mut self, pmf: &DiscretePmf<S>) -> usize {
        let u = self.next_f64();
        let mut acc = 0.0;
        for (i, &p) in pmf.probs().iter().enumerate() {
            acc += p;
            if u < acc {
                return i;
            }
        }
        pmf.probs().len() - 1
    }
}

/// Paired channel input and output samples.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ChannelSamples {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl ChannelSamples {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}

fn simulate_block(
    spec: &GaussianChannelSpec,
    seed: u64,
    block: usize,
    len: usize,
) -> ChannelSamples {
    let mut stream = SeededStream::for_shard(seed, block as u64);
    let sx = spec.signal_power().sqrt();
    let sn = spec.noise_power().sqrt();
    let mut out = ChannelSamples {
        x: Vec::with_capacity(len),
        y: Vec::with_capacity(len),
    };
    for _ in 0..len {
        let gx = stream.next_gaussian();
        let gn = stream.next_gaussian();
        let x = if spec.signal_power() == 0.0 {
            0.0
        } else {
            sx * gx
        };
        out.x.push(x);
        out.y.push(x + sn * gn);
    }
    out
}

fn block_lengths(n: usize) -> impl Iterator<Item = (usize, usize)> + Clone {
    let blocks = n.div_ceil(BLOCK_LEN);
    (0..blocks).map(move |b| (b, BLOCK_LEN.min(n - b * BLOCK_LEN)))
}

/// `n` iid draws of `x ~ N(0, S)` and `y = x + η`, `η ~ N(0, N)`.
pub fn simulate_additive_gaussian(
    spec: &GaussianChannelSpec,
    n: usize,
    seed: u64,
) -> Result<ChannelSamples> {
    if n == 0 {
        return Err(Error::validation("sample count must be >= 1"));
    }
    let mut out = ChannelSamples::default();
    for (b, len) in block_lengths(n) {
        let part = simulate_block(spec, seed, b, len);
        out.x.extend(part.x);
        out.y.extend(part.y);
    }
    Ok(out)
}

/// Same output as [`simulate_additive_gaussian`], with blocks spread over
/// `workers` threads and concatenated in block order.
pub fn simulate_additive_gaussian_sharded(
    spec: &GaussianChannelSpec,
    n: usize,
    seed: u64,
    workers: usize,
) -> Result<ChannelSamples> {
    if n == 0 {
        return Err(Error::validation("sample count must be >= 1"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Resource(e.to_string()))?;
    let parts: Vec<ChannelSamples> = pool.install(|| {
        block_lengths(n)
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|(b, len)| simulate_block(spec, seed, b, len))
            .collect()
    });
    let mut out = ChannelSamples {
        x: Vec::with_capacity(n),
        y: Vec::with_capacity(n),
    };
    for part in parts {
        out.x.extend(part.x);
        out.y.extend(part.y);
    }
    Ok(out)
}

/// Sample variance with the `1/n` normalization.
pub fn sample_variance(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n
}

/// Equal-probability bin edges: `bins + 1` strictly increasing values
/// spanning the sample range.
pub fn quantile_edges(values: &[f64], bins: usize) -> Result<Vec<f64>> {
    if bins == 0 {
        return Err(Error::validation("need at least one bin"));
    }
    if values.is_empty() {
        return Err(Error::validation("cannot bin an empty sample"));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    let mut edges = Vec::with_capacity(bins + 1);
    edges.push(sorted[0]);
    for i in 1..bins {
        edges.push(sorted[i * n / bins]);
    }
    edges.push(sorted[n - 1]);
    if edges.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::validation(format!(
            "{bins} quantile bins do not fit the sample's distinct values"
        )));
    }
    Ok(edges)
}

/// `bins` equal-width bins over `[lo, hi]`.
pub fn uniform_edges(lo: f64, hi: f64, bins: usize) -> Result<Vec<f64>> {
    if bins == 0 || !(hi > lo) {
        return Err(Error::validation("need bins >= 1 and hi > lo"));
    }
    Ok((0..=bins)
        .map(|i| lo + (hi - lo) * i as f64 / bins as f64)
        .collect())
}

/// Default marginal bin count for `n` observations: 64 from 10⁵ samples up.
pub fn default_bins(n: usize) -> usize {
    if n >= 100_000 {
        64
    } else {
        (((n as f64).sqrt() / 4.0) as usize).clamp(2, 64)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Histogram2D {
    x_edges: Vec<f64>,
    y_edges: Vec<f64>,
    counts: Vec<u64>,
}

fn check_edges(edges: &[f64], what: &str) -> Result<()> {
    if edges.len() < 2 {
        return Err(Error::validation(format!("{what} needs at least 2 edges")));
    }
    if edges.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::validation(format!(
            "{what} must be strictly increasing"
        )));
    }
    Ok(())
}

fn bin_of(edges: &[f64], v: f64) -> Option<usize> {
    let bins = edges.len() - 1;
    if !(v >= edges[0] && v <= edges[bins]) {
        return None;
    }
    Some((edges.partition_point(|&e| e <= v) - 1).min(bins - 1))
}

impl Histogram2D {
    pub fn from_counts(x_edges: Vec<f64>, y_edges: Vec<f64>, counts: Vec<u64>) -> Result<Self> {
        check_edges(&x_edges, "x_edges")?;
        check_edges(&y_edges, "y_edges")?;
        if counts.len() != (x_edges.len() - 1) * (y_edges.len() - 1) {
            return Err(Error::validation("count grid does not match the edges"));
        }
        Ok(Self {
            x_edges,
            y_edges,
            counts,
        })
    }

    /// Bins paired samples; values outside the edges are an error.
    pub fn from_samples(
        xs: &[f64],
        ys: &[f64],
        x_edges: Vec<f64>,
        y_edges: Vec<f64>,
    ) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::validation("x and y samples differ in length"));
        }
        check_edges(&x_edges, "x_edges")?;
        check_edges(&y_edges, "y_edges")?;
        let cols = y_edges.len() - 1;
        let mut counts = vec![0u64; (x_edges.len() - 1) * cols];
        for (k, (&x, &y)) in xs.iter().zip(ys).enumerate() {
            let (i, j) = bin_of(&x_edges, x)
                .zip(bin_of(&y_edges, y))
                .ok_or_else(|| {
                    Error::validation(format!("sample {k} ({x}, {y}) lies outside the bins"))
                })?;
            counts[i * cols + j] += 1;
        }
        Ok(Self {
            x_edges,
            y_edges,
            counts,
        })
    }

    /// Equal-probability `bins × bins` histogram of the samples.
    pub fn quantile(xs: &[f64], ys: &[f64], bins: usize) -> Result<Self> {
        let xe = quantile_edges(xs, bins)?;
        let ye = quantile_edges(ys, bins)?;
        Self::from_samples(xs, ys, xe, ye)
    }

    pub fn x_bins(&self) -> usize {
        self.x_edges.len() - 1
    }

    pub fn y_bins(&self) -> usize {
        self.y_edges.len() - 1
    }

    pub fn x_edges(&self) -> &[f64] {
        &self.x_edges
    }

    pub fn y_edges(&self) -> &[f64] {
        &self.y_edges
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn x_counts(&self) -> Vec<u64> {
        self.counts
            .chunks(self.y_bins())
            .map(|r| r.iter().sum())
            .collect()
    }

    pub fn y_counts(&self) -> Vec<u64> {
        let cols = self.y_bins();
        (0..cols)
            .map(|j| self.counts.iter().skip(j).step_by(cols).sum())
            .collect()
    }

    fn joint_pmf(&self) -> Result<JointPmf<usize, usize>> {
        let total = self.total();
        if total == 0 {
            return Err(Error::validation("histogram is empty"));
        }
        let grid = self
            .counts
            .chunks(self.y_bins())
            .map(|r| r.iter().map(|&c| c as f64 / total as f64).collect())
            .collect();
        JointPmf::new(
            (0..self.x_bins()).collect(),
            (0..self.y_bins()).collect(),
            grid,
        )
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum BiasCorrection {
    #[default]
    None,
    /// Adds `(K − 1) / (2 n ln 2)` bits, `K` the number of occupied bins.
    MillerMadow,
}

fn miller_madow(counts: &[u64]) -> f64 {
    let n: u64 = counts.iter().sum();
    let occupied = counts.iter().filter(|&&c| c > 0).count();
    (occupied as f64 - 1.0) / (2.0 * n as f64 * LN_2)
}

/// Entropy of the empirical pmf `counts / total`.
pub fn plugin_entropy(counts: &[u64], correction: BiasCorrection) -> Result<Bits> {
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return Err(Error::validation("histogram is empty"));
    }
    let weights: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
    let pmf = DiscretePmf::from_weights((0..counts.len()).collect(), &weights)?;
    let h = entropy(&pmf).0;
    Ok(Bits(match correction {
        BiasCorrection::None => h,
        BiasCorrection::MillerMadow => h + miller_madow(counts),
    }))
}

/// Mutual information of the empirical joint pmf.
pub fn plugin_mutual_information(h: &Histogram2D, correction: BiasCorrection) -> Result<Bits> {
    let j = h.joint_pmf()?;
    Ok(match correction {
        BiasCorrection::None => mutual_information(&j),
        BiasCorrection::MillerMadow => {
            let hx = plugin_entropy(&h.x_counts(), correction)?.0;
            let hy = plugin_entropy(&h.y_counts(), correction)?.0;
            let hxy = joint_entropy(&j).0 + miller_madow(h.counts());
            Bits((hx + hy - hxy).max(0.0))
        }
    })
}

/// Summary of a plug-in estimate against the analytic Gaussian value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimatorReport {
    pub n: usize,
    pub bins: usize,
    #[serde(rename = "H_x")]
    pub h_x: f64,
    #[serde(rename = "H_y")]
    pub h_y: f64,
    #[serde(rename = "H_xy")]
    pub h_xy: f64,
    #[serde(rename = "I")]
    pub mi: f64,
    #[serde(rename = "analytic_I")]
    pub analytic_mi: f64,
    /// `analytic_I − I`.
    pub gap: f64,
}

/// Quantile-binned plug-in estimates for paired samples, compared with
/// `analytic_mi`.
pub fn estimate_report(
    xs: &[f64],
    ys: &[f64],
    bins: usize,
    analytic_mi: f64,
) -> Result<EstimatorReport> {
    let h = Histogram2D::quantile(xs, ys, bins)?;
    let j = h.joint_pmf()?;
    let mi = mutual_information(&j).0;
    Ok(EstimatorReport {
        n: xs.len(),
        bins,
        h_x: plugin_entropy(&h.x_counts(), BiasCorrection::None)?.0,
        h_y: plugin_entropy(&h.y_counts(), BiasCorrection::None)?.0,
        h_xy: joint_entropy(&j).0,
        mi,
        analytic_mi,
        gap: analytic_mi - mi,
    })
}
