// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Information-theory toolkit: discrete and differential entropy, mutual
//! information, channel capacity, prefix coding, and spectral (band-limited)
//! mutual information, with seeded simulation and plug-in estimators.
//!
//! All information quantities are in bits.

pub mod channel;
pub mod continuous;
pub mod discrete;
pub mod error;
pub mod estimation;
pub mod formats;
pub mod numeric;
pub mod source_coding;
pub mod spectral;

pub use discrete::{Bits, DiscretePmf, JointPmf};
pub use error::{Error, Result};
