//! Empirical probe of the Khintchine–Groshev minimum: exhaustively scans
//! integer combinations of a real vector and reports the smallest normalized
//! residual `|p + q·g| * (max|q_i|)^(m+eps)`.

use crate::error::{Error, Result};

/// Residuals below this normalized tolerance flag rational dependence.
pub const KG_ZERO_TOL: f64 = 1e-12;

/// Outcome of an exhaustive Khintchine–Groshev scan.
#[derive(Clone, Debug, PartialEq)]
pub struct KgScanResult {
    /// The evaluated monomial values `g_1(v)..g_m(v)`.
    pub v: Vec<f64>,
    pub m: usize,
    pub epsilon: f64,
    pub q_range: i64,
    /// `min |p + Σ q_i g_i| * (max|q_i|)^(m+eps)` over nonzero integer `q`.
    pub min_normalized: f64,
    /// The minimizing `(p, q)`.
    pub argmin: (i64, Vec<i64>),
    /// True iff the minimum lies below [`KG_ZERO_TOL`].
    pub zero_hit: bool,
}

/// Exhaustive scan over `q` in the integer box `[-N, N]^m` minus the origin,
/// with the single best integer `p = -round(Σ q_i g_i)` for each `q`.
pub fn kg_scan(g: &[f64], epsilon: f64, q_range: i64, cap: u64) -> Result<KgScanResult> {
    let m = g.len();
    if m == 0 || q_range < 1 {
        return Err(Error::InvalidDims(format!(
            "KG scan needs m >= 1 values and N >= 1, got m={m}, N={q_range}"
        )));
    }
    if g.iter().any(|x| !x.is_finite()) || !(epsilon >= 0.0) {
        return Err(Error::InvalidSpec(
            "KG scan needs finite values and eps >= 0".into(),
        ));
    }
    let side = 2 * q_range as u128 + 1;
    let mut total: u128 = 1;
    for _ in 0..m {
        total = total
            .checked_mul(side)
            .ok_or(Error::Overflow("KG scan box size"))?;
    }
    if total > cap as u128 {
        return Err(Error::CapExceeded {
            needed: total,
            cap,
        });
    }

    let exponent = m as f64 + epsilon;
    let mut best = f64::INFINITY;
    let mut arg = (0i64, vec![0i64; m]);
    let mut q = vec![-q_range; m];
    loop {
        if q.iter().any(|&x| x != 0) {
            let s: f64 = q.iter().zip(g).map(|(&qi, &gi)| qi as f64 * gi).sum();
            let p = -s.round();
            let residual = (p + s).abs();
            let q_abs = q.iter().map(|&x| x.abs()).max().unwrap();
            let val = residual * (q_abs as f64).powf(exponent);
            // Ties (e.g. exact zeros at every multiple of a rational point)
            // go to the smallest box, so the reported witness is minimal.
            let better = val < best
                || (val == best && q_abs < arg.1.iter().map(|&x| x.abs()).max().unwrap_or(i64::MAX));
            if better {
                best = val;
                arg = (p as i64, q.clone());
            }
        }
        // Odometer over the box, last coordinate fastest.
        let mut i = m;
        loop {
            if i == 0 {
                return Ok(KgScanResult {
                    v: g.to_vec(),
                    m,
                    epsilon,
                    q_range,
                    min_normalized: best,
                    argmin: arg,
                    zero_hit: best < KG_ZERO_TOL,
                });
            }
            i -= 1;
            if q[i] < q_range {
                q[i] += 1;
                break;
            }
            q[i] = -q_range;
        }
    }
}
