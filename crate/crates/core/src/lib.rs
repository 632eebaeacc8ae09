//! Digital-human joint fatigue evaluation.
//!
//! A 28-DOF skeleton scaled from height and weight, quasi-static joint loads,
//! a capacity-decay fatigue model with exponential recovery, and endurance
//! sweeps over a three-level factorial population.
//!
//! The crate is `no_std` and needs only `alloc`.

#![cfg_attr(not(test), no_std)]
// `!(x > 0.0)` style checks also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod anthro;
pub mod cohort;
pub mod error;
pub mod fatigue;
pub mod presets;
pub mod skeleton;
pub mod statics;

pub use error::{Error, Result};
