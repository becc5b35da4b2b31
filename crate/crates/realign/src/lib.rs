//! Real interference alignment over single-antenna Gaussian networks.
//!
//! The crate has five layers:
//!
//! * [`alignment`] — exact symbolic direction sets (monomials in channel
//!   gains), their per-scheme generators, and containment / separability
//!   verification.
//! * [`channel`] — real channel realizations, gain distributions, the
//!   three-user standard form, and algebraic folding helpers.
//! * [`signaling`] — the integer-constellation transmission chain: parameter
//!   derivation, receiver layouts, received constellations, minimum distance
//!   and hard decoding.
//! * [`scheme`] — named, runtime-selectable alignment schemes behind a
//!   common trait.
//! * [`analysis`] — rate and error bounds, degrees-of-freedom formulas, the
//!   Monte Carlo sweep, and the Khintchine–Groshev scan.

pub mod alignment;
pub mod analysis;
pub mod channel;
pub mod error;
pub mod scheme;
pub mod signaling;

pub use error::{Error, Result};
