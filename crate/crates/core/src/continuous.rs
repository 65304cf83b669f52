//! Maximum-entropy continuous distributions and differential entropy.
//!
//! Three families are covered, one for each classical constraint:
//! a Gaussian for fixed variance on the real line, an exponential for fixed
//! mean on `x >= 0`, and a uniform for a fixed range. Differential entropy is
//! reported in bits and may be negative.

use std::f64::consts::{E, PI};

use serde::Serialize;

use crate::discrete::{log2, Bits};
use crate::error::{Error, Result};
use crate::numeric::adaptive_simpson;

/// Gaussian supports are truncated at this many standard deviations for quadrature.
pub const GAUSSIAN_TRUNCATION_SIGMAS: f64 = 10.0;
/// Exponential supports are truncated at `[0, μ · EXPONENTIAL_TRUNCATION_MEANS]`.
pub const EXPONENTIAL_TRUNCATION_MEANS: f64 = 50.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MaxEntDistribution {
    Gaussian { mean: f64, variance: f64 },
    Exponential { mean: f64 },
    Uniform { lower: f64, upper: f64 },
}

impl MaxEntDistribution {
    pub fn gaussian(mean: f64, variance: f64) -> Result<Self> {
        if !mean.is_finite() {
            return Err(Error::domain("mean", mean, "must be finite"));
        }
        if !(variance > 0.0 && variance.is_finite()) {
            return Err(Error::domain("variance", variance, "must be > 0"));
        }
        Ok(Self::Gaussian { mean, variance })
    }

    /// Zero-mean Gaussian with the given variance.
    pub fn centered_gaussian(variance: f64) -> Result<Self> {
        Self::gaussian(0.0, variance)
    }

    pub fn exponential(mean: f64) -> Result<Self> {
        if !(mean > 0.0 && mean.is_finite()) {
            return Err(Error::domain("mean", mean, "exponential mean must be > 0"));
        }
        Ok(Self::Exponential { mean })
    }

    pub fn uniform(lower: f64, upper: f64) -> Result<Self> {
        if !(lower.is_finite() && upper.is_finite()) {
            return Err(Error::domain("lower", lower, "bounds must be finite"));
        }
        if !(upper > lower) {
            return Err(Error::domain("upper", upper, "must exceed the lower bound"));
        }
        Ok(Self::Uniform { lower, upper })
    }

    pub fn density(&self, x: f64) -> f64 {
        match *self {
            Self::Gaussian { mean, variance } => {
                let d = mean - x;
                (-d * d / (2.0 * variance)).exp() / (2.0 * PI * variance).sqrt()
            }
            Self::Exponential { mean } => {
                if x < 0.0 {
                    0.0
                } else {
                    (-x / mean).exp() / mean
                }
            }
            Self::Uniform { lower, upper } => {
                if (lower..=upper).contains(&x) {
                    1.0 / (upper - lower)
                } else {
                    0.0
                }
            }
        }
    }

    pub fn mean(&self) -> f64 {
        match *self {
            Self::Gaussian { mean, .. } => mean,
            Self::Exponential { mean } => mean,
            Self::Uniform { lower, upper } => 0.5 * (lower + upper),
        }
    }

    pub fn variance(&self) -> f64 {
        match *self {
            Self::Gaussian { variance, .. } => variance,
            Self::Exponential { mean } => mean * mean,
            Self::Uniform { lower, upper } => (upper - lower).powi(2) / 12.0,
        }
    }

    /// Closed-form differential entropy.
    pub fn differential_entropy(&self) -> Bits {
        match *self {
            Self::Gaussian { variance, .. } => Bits(0.5 * log2(2.0 * PI * E * variance)),
            Self::Exponential { mean } => Bits(log2(mean * E)),
            Self::Uniform { lower, upper } => Bits(log2(upper - lower)),
        }
    }

    /// The interval used when integrating over this distribution.
    pub fn quadrature_support(&self) -> (f64, f64) {
        match *self {
            Self::Gaussian { mean, variance } => {
                let w = GAUSSIAN_TRUNCATION_SIGMAS * variance.sqrt();
                (mean - w, mean + w)
            }
            Self::Exponential { mean } => (0.0, mean * EXPONENTIAL_TRUNCATION_MEANS),
            Self::Uniform { lower, upper } => (lower, upper),
        }
    }
}

/// `∫ p log2(1/p)` by adaptive quadrature over `support`, absolute error `tol`.
///
/// The density must carry unit mass on the support (within 1e-6); otherwise a
/// validation error reports the measured mass.
pub fn numeric_differential_entropy<F>(density: F, support: (f64, f64), tol: f64) -> Result<Bits>
where
    F: Fn(f64) -> f64,
{
    let (a, b) = support;
    if !(a.is_finite() && b.is_finite() && b > a) {
        return Err(Error::validation(format!(
            "support [{a}, {b}] must be a finite, nonempty interval"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("tol", tol, "tolerance must be > 0"));
    }
    let panels = 64;
    let mass = adaptive_simpson(&density, a, b, tol.min(1e-9), panels);
    if (mass - 1.0).abs() > 1e-6 {
        return Err(Error::validation(format!(
            "density integrates to {mass} over [{a}, {b}], not 1"
        )));
    }
    let integrand = |x: f64| {
        let p = density(x);
        if p > 0.0 {
            -p * log2(p)
        } else {
            0.0
        }
    };
    Ok(Bits(adaptive_simpson(integrand, a, b, tol, panels)))
}

/// Which moment or range is held fixed when maximizing entropy.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct MaxEntConstraints {
    /// Fixed variance, support the whole real line.
    pub variance: Option<f64>,
    /// Fixed mean, support `x >= 0`.
    pub mean: Option<f64>,
    /// Fixed range `[a, b]`.
    pub range: Option<(f64, f64)>,
}

impl MaxEntConstraints {
    pub fn fixed_variance(v: f64) -> Self {
        Self {
            variance: Some(v),
            ..Self::default()
        }
    }

    pub fn fixed_mean(mu: f64) -> Self {
        Self {
            mean: Some(mu),
            ..Self::default()
        }
    }

    pub fn fixed_range(a: f64, b: f64) -> Self {
        Self {
            range: Some((a, b)),
            ..Self::default()
        }
    }
}

pub fn maxent_for_constraints(c: MaxEntConstraints) -> Result<MaxEntDistribution> {
    match (c.variance, c.mean, c.range) {
        (Some(v), None, None) => MaxEntDistribution::centered_gaussian(v),
        (None, Some(mu), None) => MaxEntDistribution::exponential(mu),
        (None, None, Some((a, b))) => MaxEntDistribution::uniform(a, b),
        _ => Err(Error::Unsupported(format!(
            "constraint set {c:?} is not one of fixed variance, fixed mean on x >= 0, or fixed range"
        ))),
    }
}
