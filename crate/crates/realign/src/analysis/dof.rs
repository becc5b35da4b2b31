//! Exact degrees-of-freedom formulas: asymptotic values and the finite-n
//! ratios implied by the direction counts.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::ToPrimitive;

use crate::alignment::{
    gic_interference_count, gic_transmit_count, uplink_interference_count, uplink_transmit_count,
    x_interference_block_count, x_transmit_count,
};
use crate::channel::SchemeKind;
use crate::error::{Error, Result};

/// Asymptotic total DOF: `K/2` (interference channel), `KM/(M+1)` (uplink),
/// `KM/(K+M-1)` (X channel).
pub fn theoretical_dof(kind: SchemeKind, k: usize, m: usize) -> Result<Ratio<u64>> {
    let (k64, m64) = (k as u64, m as u64);
    match kind {
        SchemeKind::Gic => {
            if k < 2 {
                return Err(Error::InvalidDims(format!("K >= 2 required, got K={k}")));
            }
            Ok(Ratio::new(k64, 2))
        }
        SchemeKind::Uplink => {
            if k < 2 || m < 1 {
                return Err(Error::InvalidDims(format!(
                    "K >= 2 and M >= 1 required, got K={k}, M={m}"
                )));
            }
            Ok(Ratio::new(k64 * m64, m64 + 1))
        }
        SchemeKind::X => {
            if k < 2 || m < 2 {
                return Err(Error::InvalidDims(format!(
                    "K >= 2 and M >= 2 required, got K={k}, M={m}"
                )));
            }
            Ok(Ratio::new(k64 * m64, k64 + m64 - 1))
        }
    }
}

fn big(x: u128) -> BigInt {
    BigInt::from(x)
}

/// Total DOF achieved by the order-`n` construction, as an exact rational
/// built from the direction counts: each receiver resolves its intended
/// directions plus the aligned interference plus noise, and every stream
/// carries an equal share.
pub fn finite_n_dof(kind: SchemeKind, k: usize, m: usize, n: usize) -> Result<BigRational> {
    let (num, den) = match kind {
        SchemeKind::Gic => {
            let l = gic_transmit_count(k, n)?;
            let lp = gic_interference_count(k, n)?;
            (big(k as u128) * big(l), big(l) + big(lp) + 1)
        }
        SchemeKind::Uplink => {
            let l = uplink_transmit_count(k, m, n)?;
            let lp = uplink_interference_count(k, m, n)?;
            (
                big((k * m) as u128) * big(l),
                big(m as u128) * big(l) + big(lp) + 1,
            )
        }
        SchemeKind::X => {
            let l = x_transmit_count(k, m, n)?;
            let b = x_interference_block_count(k, m, n)?;
            (
                big((k * m) as u128) * big(l),
                big(k as u128) * big(l) + big((m - 1) as u128) * big(b) + 1,
            )
        }
    };
    Ok(BigRational::new(num, den))
}

/// [`finite_n_dof`] rounded to f64 for tolerance checks.
pub fn finite_n_dof_f64(kind: SchemeKind, k: usize, m: usize, n: usize) -> Result<f64> {
    finite_n_dof(kind, k, m, n)?
        .to_f64()
        .ok_or(Error::Overflow("finite-n DOF to f64"))
}

/// Total DOF of the order-`n` three-user scheme over the standard form:
/// `(3n+1)/(2n+1)`.
pub fn threeuser_finite_dof(n: usize) -> Result<Ratio<u64>> {
    if n < 1 {
        return Err(Error::InvalidDims("n >= 1 required".into()));
    }
    let n64 = n as u64;
    Ok(Ratio::new(3 * n64 + 1, 2 * n64 + 1))
}
