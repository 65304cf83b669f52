//! Discrete distributions and the entropy / information functionals over them.
//!
//! All logarithms are base 2 and go through [`log2`]. The term `0 · log2(1/0)`
//! is taken to be 0. Distributions are validated and renormalized on
//! construction, so every value of [`DiscretePmf`] or [`JointPmf`] is a proper
//! distribution and the functionals on them cannot fail.

use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::canonical_sum;

/// Absolute tolerance on `Σ p = 1` accepted at construction.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// Information-valued results this close below zero are reported as zero.
pub const CLAMP_SLACK: f64 = 1e-12;

/// Base-2 logarithm. Every information quantity in the crate is computed
/// through this function.
#[inline]
pub fn log2(x: f64) -> f64 {
    x.log2()
}

/// `p · log2(1/p)`, with the continuity convention at `p = 0`.
#[inline]
pub(crate) fn entropy_term(p: f64) -> f64 {
    if p > 0.0 {
        -p * log2(p)
    } else {
        0.0
    }
}

pub(crate) fn clamp_nonnegative(v: f64) -> f64 {
    debug_assert!(
        v > -1e-9,
        "information quantity {v} is unexpectedly negative"
    );
    if v < 0.0 {
        0.0
    } else {
        v
    }
}

/// An amount of information in bits (or bits/s where the caller says so).
#[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd, Serialize)]
pub struct Bits(pub f64);

impl Bits {
    pub const ZERO: Bits = Bits(0.0);

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} bits", self.0)
    }
}

impl Add for Bits {
    type Output = Bits;
    fn add(self, rhs: Bits) -> Bits {
        Bits(self.0 + rhs.0)
    }
}

impl Sub for Bits {
    type Output = Bits;
    fn sub(self, rhs: Bits) -> Bits {
        Bits(self.0 - rhs.0)
    }
}

fn check_probs(probs: &[f64]) -> Result<f64> {
    for (i, &p) in probs.iter().enumerate() {
        if !p.is_finite() || p < 0.0 {
            return Err(Error::validation(format!(
                "probability at index {i} is {p}; must be finite and >= 0"
            )));
        }
    }
    let total = canonical_sum(probs.iter().copied());
    if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(Error::validation(format!(
            "probabilities sum to {total}, not 1 (tolerance {NORMALIZATION_TOLERANCE:e})"
        )));
    }
    Ok(total)
}

fn check_unique<S: PartialEq>(symbols: &[S], what: &str) -> Result<()> {
    for i in 0..symbols.len() {
        if symbols[..i].contains(&symbols[i]) {
            return Err(Error::validation(format!(
                "{what} contains a duplicate at index {i}"
            )));
        }
    }
    Ok(())
}

/// A normalized probability mass function over labelled symbols.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscretePmf<S = String> {
    symbols: Vec<S>,
    probs: Vec<f64>,
}

impl<S: Clone + PartialEq> DiscretePmf<S> {
    /// Validates and renormalizes `probs` (see [`NORMALIZATION_TOLERANCE`]).
    pub fn new(symbols: Vec<S>, probs: Vec<f64>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::validation("a pmf needs at least one symbol"));
        }
        if symbols.len() != probs.len() {
            return Err(Error::validation(format!(
                "{} symbols but {} probabilities",
                symbols.len(),
                probs.len()
            )));
        }
        check_unique(&symbols, "symbols")?;
        let total = check_probs(&probs)?;
        let probs = probs.into_iter().map(|p| p / total).collect();
        Ok(DiscretePmf { symbols, probs })
    }

    /// Builds a pmf from nonnegative weights (counts, frequencies) by
    /// dividing through by their total.
    pub fn from_weights(symbols: Vec<S>, weights: &[f64]) -> Result<Self> {
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::validation("weights must be finite and >= 0"));
        }
        let total = canonical_sum(weights.iter().copied());
        if total <= 0.0 {
            return Err(Error::validation("weights sum to zero"));
        }
        Self::new(symbols, weights.iter().map(|w| w / total).collect())
    }

    pub fn uniform(symbols: Vec<S>) -> Result<Self> {
        let m = symbols.len();
        if m == 0 {
            return Err(Error::validation("a pmf needs at least one symbol"));
        }
        Self::new(symbols, vec![1.0 / m as f64; m])
    }

    pub fn prob_of(&self, symbol: &S) -> Option<f64> {
        self.symbols
            .iter()
            .position(|s| s == symbol)
            .map(|i| self.probs[i])
    }

    /// Relabels the symbols; the new labels must still be unique.
    pub fn map_symbols<T: Clone + PartialEq>(
        &self,
        f: impl FnMut(&S) -> T,
    ) -> Result<DiscretePmf<T>> {
        let symbols: Vec<T> = self.symbols.iter().map(f).collect();
        check_unique(&symbols, "symbols")?;
        Ok(DiscretePmf {
            symbols,
            probs: self.probs.clone(),
        })
    }
}

impl<S> DiscretePmf<S> {
    pub fn symbols(&self) -> &[S] {
        &self.symbols
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn iter(&self) -> impl Iterator<Item = (&S, f64)> + '_ {
        self.symbols.iter().zip(self.probs.iter().copied())
    }
}

impl DiscretePmf<usize> {
    /// A pmf over the symbols `0..probs.len()`.
    pub fn from_probs(probs: Vec<f64>) -> Result<Self> {
        Self::new((0..probs.len()).collect(), probs)
    }
}

/// The sum of two fair six-sided dice: symbols 2..=12 with probabilities freq/36.
pub fn two_dice_sum() -> DiscretePmf<u32> {
    let freq = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 5.0, 4.0, 3.0, 2.0, 1.0];
    DiscretePmf::from_weights((2..=12).collect(), &freq).expect("dice pmf is valid")
}

/// Shannon information of an outcome with probability `p`: `log2(1/p)`.
pub fn surprisal(p: f64) -> Result<Bits> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::domain("p", p, "surprisal needs 0 < p <= 1"));
    }
    Ok(Bits(-log2(p)))
}

/// One symbol's share of the entropy, `p · log2(1/p)`.
pub fn surprisal_contribution(p: f64) -> Result<Bits> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain("p", p, "probability must lie in [0, 1]"));
    }
    Ok(Bits(entropy_term(p)))
}

pub fn entropy<S>(pmf: &DiscretePmf<S>) -> Bits {
    Bits(clamp_nonnegative(canonical_sum(
        pmf.probs.iter().map(|&p| entropy_term(p)),
    )))
}

/// Entropy of a raw probability vector, validated first.
pub fn entropy_of_probs(probs: &[f64]) -> Result<Bits> {
    if probs.is_empty() {
        return Err(Error::validation("empty probability vector"));
    }
    let total = check_probs(probs)?;
    Ok(Bits(clamp_nonnegative(canonical_sum(
        probs.iter().map(|&p| entropy_term(p / total)),
    ))))
}

/// Number of equiprobable values carrying the same entropy: `2^h`.
pub fn equivalent_equiprobable_count(h: Bits) -> Result<f64> {
    if !(h.0 >= 0.0) {
        return Err(Error::domain("h", h.0, "entropy must be >= 0"));
    }
    Ok(h.0.exp2())
}

/// Entropy of a coin against its bias, at `n_points` evenly spaced biases in [0, 1].
pub fn coin_entropy_curve(n_points: usize) -> Result<Vec<(f64, Bits)>> {
    if n_points < 2 {
        return Err(Error::validation(format!(
            "coin entropy curve needs at least 2 points, got {n_points}"
        )));
    }
    let last = (n_points - 1) as f64;
    Ok((0..n_points)
        .map(|i| {
            let bias = i as f64 / last;
            let h = canonical_sum([entropy_term(bias), entropy_term(1.0 - bias)]);
            (bias, Bits(h))
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" | "X" | "rows" => Ok(Axis::X),
            "y" | "Y" | "cols" | "columns" => Ok(Axis::Y),
            other => Err(Error::validation(format!(
                "unknown axis selector {other:?}"
            ))),
        }
    }
}

/// A joint pmf `p(x_i, y_j)` stored row-major, rows indexed by x.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JointPmf<X = String, Y = String> {
    x_symbols: Vec<X>,
    y_symbols: Vec<Y>,
    probs: Vec<f64>,
}

impl<X: Clone + PartialEq, Y: Clone + PartialEq> JointPmf<X, Y> {
    pub fn new(x_symbols: Vec<X>, y_symbols: Vec<Y>, grid: Vec<Vec<f64>>) -> Result<Self> {
        if x_symbols.is_empty() || y_symbols.is_empty() {
            return Err(Error::validation(
                "joint pmf needs at least one x and one y symbol",
            ));
        }
        if grid.len() != x_symbols.len() {
            return Err(Error::validation(format!(
                "grid has {} rows but there are {} x symbols",
                grid.len(),
                x_symbols.len()
            )));
        }
        if let Some((i, row)) = grid
            .iter()
            .enumerate()
            .find(|(_, r)| r.len() != y_symbols.len())
        {
            return Err(Error::validation(format!(
                "grid row {i} has {} entries but there are {} y symbols",
                row.len(),
                y_symbols.len()
            )));
        }
        check_unique(&x_symbols, "x_symbols")?;
        check_unique(&y_symbols, "y_symbols")?;
        let flat: Vec<f64> = grid.into_iter().flatten().collect();
        let total = check_probs(&flat)?;
        Ok(JointPmf {
            x_symbols,
            y_symbols,
            probs: flat.into_iter().map(|p| p / total).collect(),
        })
    }

    /// The joint of two independent marginals, `p(x, y) = p(x) p(y)`.
    pub fn product(px: &DiscretePmf<X>, py: &DiscretePmf<Y>) -> Self {
        let probs = px
            .probs()
            .iter()
            .flat_map(|&a| py.probs().iter().map(move |&b| a * b))
            .collect::<Vec<_>>();
        let total = canonical_sum(probs.iter().copied());
        JointPmf {
            x_symbols: px.symbols().to_vec(),
            y_symbols: py.symbols().to_vec(),
            probs: probs.into_iter().map(|p| p / total).collect(),
        }
    }

    pub fn x_symbols(&self) -> &[X] {
        &self.x_symbols
    }

    pub fn y_symbols(&self) -> &[Y] {
        &self.y_symbols
    }

    pub fn rows(&self) -> usize {
        self.x_symbols.len()
    }

    pub fn cols(&self) -> usize {
        self.y_symbols.len()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.probs[i * self.cols() + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let c = self.cols();
        &self.probs[i * c..(i + 1) * c]
    }

    /// All cells, row-major.
    pub fn cells(&self) -> &[f64] {
        &self.probs
    }

    pub fn to_grid(&self) -> Vec<Vec<f64>> {
        (0..self.rows()).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> JointPmf<Y, X> {
        let (r, c) = (self.rows(), self.cols());
        let mut probs = Vec::with_capacity(r * c);
        for j in 0..c {
            for i in 0..r {
                probs.push(self.get(i, j));
            }
        }
        JointPmf {
            x_symbols: self.y_symbols.clone(),
            y_symbols: self.x_symbols.clone(),
            probs,
        }
    }

    fn marginal_x_probs(&self) -> Vec<f64> {
        (0..self.rows())
            .map(|i| self.row(i).iter().sum::<f64>())
            .collect()
    }

    fn marginal_y_probs(&self) -> Vec<f64> {
        (0..self.cols())
            .map(|j| (0..self.rows()).map(|i| self.get(i, j)).sum::<f64>())
            .collect()
    }

    pub fn marginal_x(&self) -> DiscretePmf<X> {
        DiscretePmf {
            symbols: self.x_symbols.clone(),
            probs: self.marginal_x_probs(),
        }
    }

    pub fn marginal_y(&self) -> DiscretePmf<Y> {
        DiscretePmf {
            symbols: self.y_symbols.clone(),
            probs: self.marginal_y_probs(),
        }
    }
}

/// Row or column sums of a joint pmf, returned as symbol-indexed pmfs.
pub enum Marginal<X, Y> {
    X(DiscretePmf<X>),
    Y(DiscretePmf<Y>),
}

pub fn marginalize<X, Y>(j: &JointPmf<X, Y>, axis: Axis) -> Marginal<X, Y>
where
    X: Clone + PartialEq,
    Y: Clone + PartialEq,
{
    match axis {
        Axis::X => Marginal::X(j.marginal_x()),
        Axis::Y => Marginal::Y(j.marginal_y()),
    }
}

pub fn joint_entropy<X, Y>(j: &JointPmf<X, Y>) -> Bits {
    Bits(clamp_nonnegative(canonical_sum(
        j.probs.iter().map(|&p| entropy_term(p)),
    )))
}

/// `H(y|x) = H(x,y) − H(x)`.
pub fn conditional_entropy_y_given_x<X, Y>(j: &JointPmf<X, Y>) -> Bits
where
    X: Clone + PartialEq,
    Y: Clone + PartialEq,
{
    let hx = entropy(&j.marginal_x());
    Bits(clamp_nonnegative(joint_entropy(j).0 - hx.0))
}

/// `H(x|y) = H(x,y) − H(y)`, the equivocation.
pub fn conditional_entropy_x_given_y<X, Y>(j: &JointPmf<X, Y>) -> Bits
where
    X: Clone + PartialEq,
    Y: Clone + PartialEq,
{
    let hy = entropy(&j.marginal_y());
    Bits(clamp_nonnegative(joint_entropy(j).0 - hy.0))
}

/// Mutual information by the double sum
/// `Σ p(x,y) log2(p(x,y) / (p(x) p(y)))`.
///
/// The terms are reduced in a canonical order, so `I(x,y)` and `I(y,x)`
/// computed on a transposed grid agree bit for bit.
pub fn mutual_information<X, Y>(j: &JointPmf<X, Y>) -> Bits
where
    X: Clone + PartialEq,
    Y: Clone + PartialEq,
{
    let px = j.marginal_x_probs();
    let py = j.marginal_y_probs();
    let terms = (0..j.rows()).flat_map(|i| {
        let (px, py) = (&px, &py);
        (0..j.cols()).map(move |c| {
            let p = j.get(i, c);
            if p > 0.0 {
                p * log2(p / (px[i] * py[c]))
            } else {
                0.0
            }
        })
    });
    Bits(clamp_nonnegative(canonical_sum(terms)))
}

/// The entropies of a joint pmf, with mutual information evaluated by each
/// of its four standard identities.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InformationBudget {
    pub h_x: Bits,
    pub h_y: Bits,
    pub h_xy: Bits,
    pub h_x_given_y: Bits,
    pub h_y_given_x: Bits,
    /// Double-sum form.
    pub mi: Bits,
    /// `H(x) + H(y) − H(x,y)`.
    pub mi_from_joint: Bits,
    /// `H(x) − H(x|y)`.
    pub mi_from_x: Bits,
    /// `H(y) − H(y|x)`.
    pub mi_from_y: Bits,
}

impl InformationBudget {
    /// Largest pairwise disagreement between the four MI identities.
    pub fn identity_spread(&self) -> f64 {
        let v = [
            self.mi.0,
            self.mi_from_joint.0,
            self.mi_from_x.0,
            self.mi_from_y.0,
        ];
        let max = v.iter().cloned().fold(f64::MIN, f64::max);
        let min = v.iter().cloned().fold(f64::MAX, f64::min);
        max - min
    }

    /// `H(x,y) − (I + H(x|y) + H(y|x))`.
    pub fn identity_web_residual(&self) -> f64 {
        self.h_xy.0 - (self.mi.0 + self.h_x_given_y.0 + self.h_y_given_x.0)
    }
}

pub fn information_budget<X, Y>(j: &JointPmf<X, Y>) -> InformationBudget
where
    X: Clone + PartialEq,
    Y: Clone + PartialEq,
{
    let h_x = entropy(&j.marginal_x());
    let h_y = entropy(&j.marginal_y());
    let h_xy = joint_entropy(j);
    let h_x_given_y = conditional_entropy_x_given_y(j);
    let h_y_given_x = conditional_entropy_y_given_x(j);
    InformationBudget {
        h_x,
        h_y,
        h_xy,
        h_x_given_y,
        h_y_given_x,
        mi: mutual_information(j),
        mi_from_joint: Bits(h_x.0 + h_y.0 - h_xy.0),
        mi_from_x: Bits(h_x.0 - h_x_given_y.0),
        mi_from_y: Bits(h_y.0 - h_y_given_x.0),
    }
}
