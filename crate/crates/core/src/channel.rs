//! Additive channels, discrete memoryless channels and their capacities.

use serde::Serialize;

use crate::discrete::{
    entropy, log2, mutual_information, Bits, DiscretePmf, JointPmf, NORMALIZATION_TOLERANCE,
};
use crate::error::{Error, Result};
use crate::numeric::canonical_sum;

/// Absolute tolerance for merging real-valued output levels of an additive channel.
pub const LEVEL_TOLERANCE: f64 = 1e-12;

/// A discrete channel `y = x + η` with noise independent of the input.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteAdditiveChannel {
    input_values: Vec<f64>,
    noise: DiscretePmf<f64>,
}

impl DiscreteAdditiveChannel {
    pub fn new(input_values: Vec<f64>, noise: DiscretePmf<f64>) -> Result<Self> {
        if input_values.is_empty() {
            return Err(Error::validation("channel needs at least one input level"));
        }
        if let Some(v) = input_values.iter().find(|v| !v.is_finite()) {
            return Err(Error::validation(format!("input level {v} is not finite")));
        }
        if noise.symbols().iter().any(|v| !v.is_finite()) {
            return Err(Error::validation("noise levels must be finite"));
        }
        for i in 0..input_values.len() {
            if input_values[..i].contains(&input_values[i]) {
                return Err(Error::validation(format!(
                    "duplicate input level {}",
                    input_values[i]
                )));
            }
        }
        Ok(Self {
            input_values,
            noise,
        })
    }

    pub fn input_values(&self) -> &[f64] {
        &self.input_values
    }

    pub fn noise(&self) -> &DiscretePmf<f64> {
        &self.noise
    }

    fn integral_levels(&self) -> bool {
        self.input_values
            .iter()
            .chain(self.noise.symbols())
            .all(|v| v.fract() == 0.0 && v.abs() < 2f64.powi(52))
    }

    fn input_probs(&self, input_pmf: &DiscretePmf<f64>) -> Result<Vec<f64>> {
        if input_pmf.len() != self.input_values.len() {
            return Err(Error::validation(format!(
                "input pmf has {} symbols but the channel has {} input levels",
                input_pmf.len(),
                self.input_values.len()
            )));
        }
        self.input_values
            .iter()
            .map(|v| {
                input_pmf.prob_of(v).ok_or_else(|| {
                    Error::validation(format!("input pmf has no symbol for level {v}"))
                })
            })
            .collect()
    }
}

/// Entropy bookkeeping of an additive channel's output.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OutputDecomposition {
    pub h_x: Bits,
    pub h_noise: Bits,
    pub h_y: Bits,
    /// Some two positive-probability `(x, η)` pairs land on the same output.
    pub collision: bool,
}

struct FanOut {
    joint: JointPmf<f64, f64>,
    collision: bool,
}

fn fan_out_inner(ch: &DiscreteAdditiveChannel, input_pmf: &DiscretePmf<f64>) -> Result<FanOut> {
    let px = ch.input_probs(input_pmf)?;
    let exact = ch.integral_levels();
    let same = |a: f64, b: f64| {
        if exact {
            a == b
        } else {
            (a - b).abs() <= LEVEL_TOLERANCE
        }
    };

    let mut sums: Vec<f64> = ch
        .input_values
        .iter()
        .flat_map(|x| ch.noise.symbols().iter().map(move |n| x + n))
        .collect();
    sums.sort_by(f64::total_cmp);
    let mut outputs: Vec<f64> = Vec::with_capacity(sums.len());
    for s in sums {
        match outputs.last() {
            Some(&last) if same(last, s) => {}
            _ => outputs.push(s),
        }
    }

    let mut grid = vec![vec![0.0; outputs.len()]; ch.input_values.len()];
    let mut hits = vec![0usize; outputs.len()];
    for (i, &x) in ch.input_values.iter().enumerate() {
        for (&eta, pn) in ch.noise.iter() {
            let y = x + eta;
            let j = outputs
                .iter()
                .position(|&o| same(o, y))
                .expect("every sum has an output level");
            let p = px[i] * pn;
            grid[i][j] += p;
            if p > 0.0 {
                hits[j] += 1;
            }
        }
    }
    let collision = hits.iter().any(|&h| h > 1);
    let joint = JointPmf::new(ch.input_values.clone(), outputs, grid)?;
    Ok(FanOut { joint, collision })
}

/// The joint pmf of input and output, `p(x_i, y) = p(x_i) p(η = y − x_i)`.
/// Outputs are the distinct sums in ascending order.
pub fn fan_out(
    ch: &DiscreteAdditiveChannel,
    input_pmf: &DiscretePmf<f64>,
) -> Result<JointPmf<f64, f64>> {
    Ok(fan_out_inner(ch, input_pmf)?.joint)
}

pub fn output_entropy_decomposition(
    ch: &DiscreteAdditiveChannel,
    input_pmf: &DiscretePmf<f64>,
) -> Result<OutputDecomposition> {
    let f = fan_out_inner(ch, input_pmf)?;
    Ok(OutputDecomposition {
        h_x: entropy(input_pmf),
        h_noise: entropy(&ch.noise),
        h_y: entropy(&f.joint.marginal_y()),
        collision: f.collision,
    })
}

pub fn mutual_information_of_channel(
    ch: &DiscreteAdditiveChannel,
    input_pmf: &DiscretePmf<f64>,
) -> Result<Bits> {
    Ok(mutual_information(&fan_out(ch, input_pmf)?))
}

/// A discrete memoryless channel, row `i` holding `p(y_j | x_i)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransitionMatrix {
    inputs: Vec<String>,
    outputs: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl TransitionMatrix {
    pub fn new(inputs: Vec<String>, outputs: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        if inputs.is_empty() || outputs.is_empty() {
            return Err(Error::validation(
                "transition matrix needs inputs and outputs",
            ));
        }
        if rows.len() != inputs.len() {
            return Err(Error::validation(format!(
                "{} rows for {} inputs",
                rows.len(),
                inputs.len()
            )));
        }
        let mut normalized = Vec::with_capacity(rows.len());
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != outputs.len() {
                return Err(Error::validation(format!(
                    "row {i} has {} entries for {} outputs",
                    row.len(),
                    outputs.len()
                )));
            }
            if let Some(p) = row.iter().find(|p| !p.is_finite() || **p < 0.0) {
                return Err(Error::validation(format!("row {i} has invalid entry {p}")));
            }
            let total = canonical_sum(row.iter().copied());
            if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
                return Err(Error::validation(format!("row {i} sums to {total}, not 1")));
            }
            normalized.push(row.into_iter().map(|p| p / total).collect());
        }
        for (what, labels) in [("inputs", &inputs), ("outputs", &outputs)] {
            for i in 0..labels.len() {
                if labels[..i].contains(&labels[i]) {
                    return Err(Error::validation(format!(
                        "duplicate {what} label {:?}",
                        labels[i]
                    )));
                }
            }
        }
        Ok(Self {
            inputs,
            outputs,
            rows: normalized,
        })
    }

    /// Rows labelled by index.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n_out = rows.first().map_or(0, Vec::len);
        let inputs = (0..rows.len()).map(|i| i.to_string()).collect();
        let outputs = (0..n_out).map(|j| j.to_string()).collect();
        Self::new(inputs, outputs, rows)
    }

    pub fn identity(m: usize) -> Result<Self> {
        Self::from_rows(
            (0..m)
                .map(|i| (0..m).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
                .collect(),
        )
    }

    pub fn binary_symmetric(flip: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&flip) {
            return Err(Error::domain("flip", flip, "must lie in [0, 1]"));
        }
        Self::from_rows(vec![vec![1.0 - flip, flip], vec![flip, 1.0 - flip]])
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[String] {
        &self.outputs
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// The joint pmf induced by driving the channel with `input`.
    pub fn joint(&self, input: &[f64]) -> Result<JointPmf> {
        let grid = self
            .rows
            .iter()
            .zip(input)
            .map(|(row, &p)| row.iter().map(|w| p * w).collect())
            .collect();
        JointPmf::new(self.inputs.clone(), self.outputs.clone(), grid)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CapacityOptions {
    pub tol: f64,
    pub max_iters: usize,
}

impl Default for CapacityOptions {
    fn default() -> Self {
        Self {
            tol: 1e-9,
            max_iters: 10_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CapacityResult {
    pub capacity: Bits,
    pub optimal_input: DiscretePmf,
    pub iterations: usize,
    /// Upper bound minus achieved mutual information at termination.
    pub gap: f64,
}

/// Relative entropies `D(W_i || q)` of each row against the output marginal.
fn row_divergences(rows: &[Vec<f64>], q: &[f64]) -> Vec<f64> {
    rows.iter()
        .map(|row| {
            canonical_sum(row.iter().zip(q).map(
                |(&w, &qj)| {
                    if w > 0.0 {
                        w * log2(w / qj)
                    } else {
                        0.0
                    }
                },
            ))
        })
        .collect()
}

/// Capacity `max_p I(x, y)` of a discrete memoryless channel by alternating
/// maximization from the uniform input.
///
/// Each step evaluates the lower bound `I(p)` and the upper bound
/// `max_i D(W_i || q)`; iteration stops once their gap is within `tol`.
pub fn dmc_capacity(t: &TransitionMatrix, opts: CapacityOptions) -> Result<CapacityResult> {
    if !(opts.tol > 0.0) {
        return Err(Error::domain("tol", opts.tol, "tolerance must be > 0"));
    }
    let m = t.rows.len();
    let n = t.outputs.len();
    let mut p = vec![1.0 / m as f64; m];
    let mut gap = f64::INFINITY;
    for iter in 0..opts.max_iters {
        let q: Vec<f64> = (0..n)
            .map(|j| (0..m).map(|i| p[i] * t.rows[i][j]).sum())
            .collect();
        let d = row_divergences(&t.rows, &q);
        let lower = canonical_sum(p.iter().zip(&d).map(|(a, b)| a * b));
        let upper = d.iter().cloned().fold(f64::MIN, f64::max);
        gap = upper - lower;
        if gap <= opts.tol {
            return Ok(CapacityResult {
                capacity: Bits(lower.max(0.0)),
                optimal_input: DiscretePmf::new(t.inputs.clone(), p)?,
                iterations: iter,
                gap,
            });
        }
        // shift by the max exponent so the weights never overflow
        let weights: Vec<f64> = p
            .iter()
            .zip(&d)
            .map(|(pi, di)| pi * (di - upper).exp2())
            .collect();
        let total: f64 = weights.iter().sum();
        p = weights.into_iter().map(|w| w / total).collect();
    }
    Err(Error::NotConverged {
        iterations: opts.max_iters,
        gap,
    })
}

/// An additive white Gaussian channel. Powers are in J/s, bandwidth in Hz.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GaussianChannelSpec {
    signal_power: f64,
    noise_power: f64,
    bandwidth: Option<f64>,
}

impl GaussianChannelSpec {
    pub fn new(signal_power: f64, noise_power: f64, bandwidth: Option<f64>) -> Result<Self> {
        if !(signal_power >= 0.0 && signal_power.is_finite()) {
            return Err(Error::domain("signal_power", signal_power, "must be >= 0"));
        }
        if !(noise_power > 0.0 && noise_power.is_finite()) {
            return Err(Error::domain("noise_power", noise_power, "must be > 0"));
        }
        if let Some(w) = bandwidth {
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::domain("bandwidth", w, "must be > 0"));
            }
        }
        Ok(Self {
            signal_power,
            noise_power,
            bandwidth,
        })
    }

    pub fn signal_power(&self) -> f64 {
        self.signal_power
    }

    pub fn noise_power(&self) -> f64 {
        self.noise_power
    }

    pub fn bandwidth(&self) -> Option<f64> {
        self.bandwidth
    }

    pub fn snr(&self) -> f64 {
        self.signal_power / self.noise_power
    }
}

/// `½ log2(1 + v_x / v_η)` for Gaussian input and noise.
pub fn gaussian_mutual_information(signal_variance: f64, noise_variance: f64) -> Result<Bits> {
    if !(signal_variance >= 0.0) {
        return Err(Error::domain("v_x", signal_variance, "must be >= 0"));
    }
    if !(noise_variance > 0.0) {
        return Err(Error::domain("v_noise", noise_variance, "must be > 0"));
    }
    Ok(Bits(0.5 * log2(1.0 + signal_variance / noise_variance)))
}

/// Bits per channel use, or bits/s when a bandwidth is present (2W uses per second).
pub fn gaussian_capacity(spec: &GaussianChannelSpec) -> Bits {
    let per_use = 0.5 * log2(1.0 + spec.snr());
    match spec.bandwidth {
        None => Bits(per_use),
        Some(w) => Bits(2.0 * w * per_use),
    }
}

/// `(S, C(S))` at `points` evenly spaced signal powers in `[0, max_signal]`.
pub fn capacity_curve(
    noise_power: f64,
    max_signal: f64,
    points: usize,
) -> Result<Vec<(f64, Bits)>> {
    if points < 2 {
        return Err(Error::validation(format!(
            "curve needs at least 2 points, got {points}"
        )));
    }
    if !(max_signal > 0.0) {
        return Err(Error::domain("max_signal", max_signal, "must be > 0"));
    }
    (0..points)
        .map(|i| {
            let s = max_signal * i as f64 / (points - 1) as f64;
            let spec = GaussianChannelSpec::new(s, noise_power, None)?;
            Ok((s, gaussian_capacity(&spec)))
        })
        .collect()
}

/// The Gaussian error function.
pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

/// `½ log2(1 + erf(√(S / 8N)))`, evaluated exactly as written.
///
/// The value is bounded above by 0.5, so it does not behave like a
/// probability over the full `[0, 1]` range.
pub fn detection_probability(signal_power: f64, noise_power: f64) -> Result<f64> {
    if !(signal_power >= 0.0) {
        return Err(Error::domain("S", signal_power, "must be >= 0"));
    }
    if !(noise_power > 0.0) {
        return Err(Error::domain("N", noise_power, "must be > 0"));
    }
    let arg = (signal_power / (8.0 * noise_power)).sqrt();
    Ok(0.5 * log2(1.0 + erf(arg)))
}

/// `I(x, y) ≤ H(x)` up to 1e-10.
pub fn data_processing_check<X, Y>(j: &JointPmf<X, Y>, h_x: Bits) -> bool
where
    X: Clone + PartialEq,
    Y: Clone + PartialEq,
{
    mutual_information(j).0 <= h_x.0 + 1e-10
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discrete::entropy_of_probs;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    fn fan_channel() -> (DiscreteAdditiveChannel, DiscretePmf<f64>) {
        let noise = DiscretePmf::uniform(vec![10.0, 20.0]).unwrap();
        let ch = DiscreteAdditiveChannel::new(vec![100.0, 200.0, 300.0], noise).unwrap();
        let input = DiscretePmf::uniform(vec![100.0, 200.0, 300.0]).unwrap();
        (ch, input)
    }

    fn colliding() -> (DiscreteAdditiveChannel, DiscretePmf<f64>) {
        let noise = DiscretePmf::uniform(vec![0.0, 1.0]).unwrap();
        let ch = DiscreteAdditiveChannel::new(vec![0.0, 1.0], noise).unwrap();
        (ch, DiscretePmf::uniform(vec![0.0, 1.0]).unwrap())
    }

    #[test]
    fn fan_out_examples() {
        let (ch, input) = fan_channel();
        let j = fan_out(&ch, &input).unwrap();
        assert_eq!(j.y_symbols(), &[110.0, 120.0, 210.0, 220.0, 310.0, 320.0]);
        j.marginal_y()
            .probs()
            .iter()
            .for_each(|&p| close(p, 1.0 / 6.0, 1e-15));

        let point = DiscreteAdditiveChannel::new(
            vec![0.0],
            DiscretePmf::new(vec![1.0], vec![1.0]).unwrap(),
        )
        .unwrap();
        let j = fan_out(&point, &DiscretePmf::new(vec![0.0], vec![1.0]).unwrap()).unwrap();
        assert_eq!(j.cells(), &[1.0]);
        assert_eq!(j.y_symbols(), &[1.0]);

        // enumerate (x, η): (0,0)->0, (0,1)->1, (1,0)->1, (1,1)->2
        let (ch, input) = colliding();
        let j = fan_out(&ch, &input).unwrap();
        assert_eq!(j.y_symbols(), &[0.0, 1.0, 2.0]);
        assert_eq!(j.marginal_y().probs(), &[0.25, 0.5, 0.25]);
    }

    #[test]
    fn fan_out_rejects_mismatched_input() {
        let (ch, _) = fan_channel();
        let wrong = DiscretePmf::uniform(vec![100.0, 200.0, 400.0]).unwrap();
        assert!(matches!(fan_out(&ch, &wrong), Err(Error::Validation(_))));
        let short = DiscretePmf::uniform(vec![100.0, 200.0]).unwrap();
        assert!(fan_out(&ch, &short).is_err());
    }

    #[test]
    fn real_valued_levels_merge_within_tolerance() {
        let noise = DiscretePmf::uniform(vec![0.1, 0.2]).unwrap();
        let ch = DiscreteAdditiveChannel::new(vec![0.2, 0.1], noise).unwrap();
        let input = DiscretePmf::uniform(vec![0.2, 0.1]).unwrap();
        // 0.2 + 0.1 and 0.1 + 0.2 land on the same output
        let j = fan_out(&ch, &input).unwrap();
        assert_eq!(j.cols(), 3);
        assert!(output_entropy_decomposition(&ch, &input).unwrap().collision);
    }

    #[test]
    fn decomposition_examples() {
        let (ch, input) = fan_channel();
        let d = output_entropy_decomposition(&ch, &input).unwrap();
        close(d.h_x.0, 1.58, 0.005);
        close(d.h_noise.0, 1.0, 1e-15);
        close(d.h_y.0, 2.58, 0.005);
        assert!(!d.collision);
        close(d.h_y.0, d.h_x.0 + d.h_noise.0, 1e-12);

        let point = DiscreteAdditiveChannel::new(
            vec![0.0],
            DiscretePmf::new(vec![0.0], vec![1.0]).unwrap(),
        )
        .unwrap();
        let d =
            output_entropy_decomposition(&point, &DiscretePmf::new(vec![0.0], vec![1.0]).unwrap())
                .unwrap();
        assert_eq!(
            (d.h_x.0, d.h_noise.0, d.h_y.0, d.collision),
            (0.0, 0.0, 0.0, false)
        );

        let (ch, input) = colliding();
        let d = output_entropy_decomposition(&ch, &input).unwrap();
        assert!(d.collision);
        close(
            d.h_y.0,
            entropy_of_probs(&[0.25, 0.5, 0.25]).unwrap().0,
            1e-15,
        );
        close(d.h_y.0, 1.5, 1e-15);
        assert!(d.h_y.0 < d.h_x.0 + d.h_noise.0);
    }

    #[test]
    fn channel_mi_examples() {
        let (ch, input) = fan_channel();
        let i = mutual_information_of_channel(&ch, &input).unwrap();
        close(i.0, 1.58, 0.005);
        let d = output_entropy_decomposition(&ch, &input).unwrap();
        close(i.0, d.h_y.0 - d.h_noise.0, 1e-10);

        let quiet = DiscreteAdditiveChannel::new(
            vec![1.0, 2.0, 3.0, 4.0],
            DiscretePmf::new(vec![0.0], vec![1.0]).unwrap(),
        )
        .unwrap();
        let input = DiscretePmf::new(vec![1.0, 2.0, 3.0, 4.0], vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        close(
            mutual_information_of_channel(&quiet, &input).unwrap().0,
            entropy(&input).0,
            1e-12,
        );

        // I = H(y) − H(y|x) = 1.5 − 1
        let (ch, input) = colliding();
        close(
            mutual_information_of_channel(&ch, &input).unwrap().0,
            0.5,
            1e-12,
        );
    }

    #[test]
    fn capacity_identity() {
        let r = dmc_capacity(
            &TransitionMatrix::identity(4).unwrap(),
            CapacityOptions::default(),
        )
        .unwrap();
        close(r.capacity.0, 2.0, 1e-12);
        r.optimal_input
            .probs()
            .iter()
            .for_each(|&p| close(p, 0.25, 1e-12));
    }

    #[test]
    fn capacity_bsc_matches_closed_form() {
        for eps in [0.05, 0.1, 0.25, 0.5] {
            let r = dmc_capacity(
                &TransitionMatrix::binary_symmetric(eps).unwrap(),
                CapacityOptions::default(),
            )
            .unwrap();
            let closed = 1.0 - entropy_of_probs(&[eps, 1.0 - eps]).unwrap().0;
            close(r.capacity.0, closed, 1e-6);
        }
        let r = dmc_capacity(
            &TransitionMatrix::binary_symmetric(0.1).unwrap(),
            CapacityOptions::default(),
        )
        .unwrap();
        close(r.capacity.0, 0.531, 0.0005);
    }

    #[test]
    fn capacity_of_useless_channel_is_zero() {
        let t = TransitionMatrix::from_rows(vec![vec![0.2, 0.8]; 3]).unwrap();
        let r = dmc_capacity(&t, CapacityOptions::default()).unwrap();
        assert_eq!(r.capacity.0, 0.0);
    }

    #[test]
    fn capacity_asymmetric_channel() {
        // Z-channel with crossover 0.5: C = log2(5/4), optimal p(1) = 2/5
        let t = TransitionMatrix::from_rows(vec![vec![1.0, 0.0], vec![0.5, 0.5]]).unwrap();
        let r = dmc_capacity(&t, CapacityOptions::default()).unwrap();
        close(r.capacity.0, (1.25f64).log2(), 1e-8);
        close(r.optimal_input.probs()[1], 0.4, 1e-4);
    }

    #[test]
    fn capacity_reports_non_convergence() {
        let t = TransitionMatrix::from_rows(vec![vec![1.0, 0.0], vec![0.5, 0.5]]).unwrap();
        let err = dmc_capacity(
            &t,
            CapacityOptions {
                tol: 1e-12,
                max_iters: 2,
            },
        )
        .unwrap_err();
        match err {
            Error::NotConverged { iterations, gap } => {
                assert_eq!(iterations, 2);
                assert!(gap > 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn transition_matrix_validation() {
        assert!(TransitionMatrix::from_rows(vec![vec![0.5, 0.4]]).is_err());
        assert!(TransitionMatrix::from_rows(vec![vec![1.5, -0.5]]).is_err());
        assert!(TransitionMatrix::from_rows(vec![vec![1.0], vec![0.5, 0.5]]).is_err());
        assert!(TransitionMatrix::new(vec!["a".into()], vec!["b".into()], vec![]).is_err());
    }

    #[test]
    fn gaussian_mi_examples() {
        assert_eq!(gaussian_mutual_information(2.0, 2.0).unwrap().0, 0.5);
        assert_eq!(gaussian_mutual_information(0.0, 1.0).unwrap().0, 0.0);
        assert_eq!(gaussian_mutual_information(15.0, 1.0).unwrap().0, 2.0);
        assert!(gaussian_mutual_information(1.0, 0.0).is_err());
    }

    #[test]
    fn gaussian_capacity_examples() {
        let s = GaussianChannelSpec::new(1.0, 1.0, None).unwrap();
        assert_eq!(gaussian_capacity(&s).0, 0.5);
        let s = GaussianChannelSpec::new(3.0, 1.0, Some(1.0)).unwrap();
        assert_eq!(gaussian_capacity(&s).0, 2.0);
        assert!(GaussianChannelSpec::new(-1.0, 1.0, None).is_err());
        assert!(GaussianChannelSpec::new(1.0, 0.0, None).is_err());
        assert!(GaussianChannelSpec::new(1.0, 1.0, Some(0.0)).is_err());
    }

    #[test]
    fn capacity_curve_is_monotone_and_concave() {
        let c = capacity_curve(1.0, 100.0, 201).unwrap();
        assert_eq!(c[0].1 .0, 0.0);
        for w in c.windows(2) {
            assert!(w[1].1 .0 > w[0].1 .0);
        }
        for w in c.windows(3) {
            let second = w[2].1 .0 - 2.0 * w[1].1 .0 + w[0].1 .0;
            assert!(second < 0.0);
        }
    }

    /// erf by its Maclaurin series for |x| < 3, continued fraction for erfc beyond.
    fn erf_oracle(x: f64) -> f64 {
        let ax = x.abs();
        let v = if ax < 3.0 {
            let mut term = ax;
            let mut sum = ax;
            let mut n = 0.0;
            loop {
                n += 1.0;
                term *= -ax * ax / n;
                let add = term / (2.0 * n + 1.0);
                sum += add;
                if add.abs() <= 1e-17 * sum.abs() {
                    break;
                }
            }
            2.0 / std::f64::consts::PI.sqrt() * sum
        } else {
            // erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + 1/2/(x + 1/(x + 3/2/(x + ...))))
            let mut frac = ax;
            for k in (1..60).rev() {
                frac = ax + (k as f64 / 2.0) / frac;
            }
            1.0 - (-ax * ax).exp() / std::f64::consts::PI.sqrt() / frac
        };
        v.copysign(x)
    }

    #[test]
    fn erf_against_series_oracle() {
        let mut worst: f64 = 0.0;
        for k in -600..=600 {
            let x = k as f64 / 100.0;
            worst = worst.max((erf(x) - erf_oracle(x)).abs());
        }
        assert!(worst <= 1e-7, "max abs error {worst}");
        close(erf_oracle(1.0), 0.8427, 5e-5);
    }

    #[test]
    fn detection_probability_examples() {
        assert_eq!(detection_probability(0.0, 1.0).unwrap(), 0.0);
        close(detection_probability(1e300, 1.0).unwrap(), 0.5, 1e-15);
        let expected = 0.5 * (1.0 + erf_oracle(1.0)).log2();
        close(detection_probability(8.0, 1.0).unwrap(), expected, 1e-7);
        close(detection_probability(8.0, 1.0).unwrap(), 0.440911, 1e-6);
        let mut prev = 0.0;
        for k in 1..200 {
            let p = detection_probability(k as f64 * 0.5, 1.0).unwrap();
            assert!(p >= prev && p <= 0.5);
            prev = p;
        }
        assert!(detection_probability(-1.0, 1.0).is_err());
        assert!(detection_probability(1.0, 0.0).is_err());
    }

    #[test]
    fn data_processing_examples() {
        let (ch, input) = fan_channel();
        let j = fan_out(&ch, &input).unwrap();
        assert!(data_processing_check(&j, entropy(&input)));
        let px = DiscretePmf::from_probs(vec![0.3, 0.7]).unwrap();
        let prod = JointPmf::product(&px, &px);
        assert!(data_processing_check(&prod, entropy(&px)));
    }
}
