//! Continued-fraction constructions of numbers that keep the digit statistics
//! of a CF-normal seed while failing base-`b` normality for every base.
//!
//! The pipeline splits a seed expansion into doubling blocks and, after each
//! block, inserts four partial quotients: the first three force the next
//! convergent denominator to be an exact power of a scheduled base, the
//! fourth pins the base-`b` expansion to a long run of `b − 1` digits.
//! Every block is recorded in a [`construction::BlockCertificate`] that can be
//! re-checked from the digit stream alone.
//!
//! The runnable programs in `examples/` walk through each capability.

pub mod cf;
pub mod cli;
pub mod construction;
pub mod decimal;
pub mod decimal_signed;
mod error;
pub mod limits;
pub mod nt;
pub mod radix;
pub mod seed;

pub use error::{Error, Result};
pub use limits::Limits;
