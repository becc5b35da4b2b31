//! Achievable-rate lower bound, hard-decision error-probability bound, and
//! Wilson score intervals for Monte Carlo error counts.

use crate::error::{Error, Result};

/// Fano-style achievable rate for one stream, in bits:
/// `max(0, (1 - SER) * log2(2Q - 1) - 1)`.
pub fn rate_lower_bound(ser: f64, q: u64) -> Result<f64> {
    if !(0.0..=1.0).contains(&ser) {
        return Err(Error::InvalidSpec(format!(
            "symbol error rate must be in [0,1], got {ser}"
        )));
    }
    if q < 1 {
        return Err(Error::InvalidSpec("Q must be at least 1".into()));
    }
    let bits = (1.0 - ser) * ((2 * q - 1) as f64).log2() - 1.0;
    Ok(bits.max(0.0))
}

/// Union bound on the hard-decision symbol error probability of a
/// unit-variance AWGN hop: `exp(-d_min^2 / 8)`.
pub fn pe_union_bound(d_min: f64) -> Result<f64> {
    if !(d_min >= 0.0) {
        return Err(Error::InvalidSpec(format!(
            "minimum distance must be nonnegative, got {d_min}"
        )));
    }
    Ok((-d_min * d_min / 8.0).exp())
}

/// Wilson score interval for a binomial proportion at `z` standard normal
/// quantiles (z = 1.96 for 95%). Returns `(lo, hi)`.
pub fn wilson_interval(errors: u64, trials: u64, z: f64) -> Result<(f64, f64)> {
    if trials == 0 || errors > trials || !(z > 0.0) {
        return Err(Error::InvalidSpec(format!(
            "wilson interval needs 0 <= errors <= trials (nonzero) and z > 0, got {errors}/{trials}, z={z}"
        )));
    }
    let n = trials as f64;
    let p = errors as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = p + z2 / (2.0 * n);
    let spread = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    Ok((
        ((center - spread) / denom).max(0.0),
        ((center + spread) / denom).min(1.0),
    ))
}
