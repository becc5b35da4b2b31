//! Per-scheme transmit and interference direction-set generators, plus their
//! closed-form cardinalities.
//!
//! All generators produce monomials over *base* channel gains. The X-channel
//! construction is stated over composite pair variables `h[j][l]·h[r][l]`;
//! those pairs are expanded into base gains here so that directions seen by
//! different receivers can be compared symbolically.

use crate::alignment::exponent::{ExponentVector, GainId};
use crate::alignment::sets::{DirectionSet, DEFAULT_ENUM_CAP};
use crate::error::{Error, Result};

fn checked_pow(base: u128, exp: u32, what: &'static str) -> Result<u128> {
    base.checked_pow(exp).ok_or(Error::Overflow(what))
}

fn check_gic_dims(k: usize, n: usize) -> Result<()> {
    if k < 2 || k > 250 {
        return Err(Error::InvalidDims(format!(
            "K-user channel needs 2 <= K <= 250, got K={k}"
        )));
    }
    if n < 1 || n > 255 {
        return Err(Error::InvalidDims(format!(
            "direction order needs 1 <= n <= 255, got n={n}"
        )));
    }
    Ok(())
}

fn check_uplink_dims(k: usize, m: usize, n: usize) -> Result<()> {
    check_gic_dims(k, n)?;
    if m < 1 || k * m > 250 {
        return Err(Error::InvalidDims(format!(
            "uplink needs M >= 1 and K*M <= 250, got K={k}, M={m}"
        )));
    }
    Ok(())
}

fn check_x_dims(k: usize, m: usize, n: usize) -> Result<()> {
    if k < 2 || m < 2 || k > 250 || m > 250 {
        return Err(Error::InvalidDims(format!(
            "X channel needs K >= 2 and M >= 2 (at most 250), got K={k}, M={m}"
        )));
    }
    if n < 1 || n > 100 {
        return Err(Error::InvalidDims(format!(
            "direction order needs 1 <= n <= 100, got n={n}"
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// K-user interference channel
// ---------------------------------------------------------------------------

/// Transmit directions for user `i` of the K-user channel: monomials over the
/// off-diagonal gains with exponent at most `n-1` on gains pointing at
/// transmitter `i` and at most `n` elsewhere. Direct gains never appear.
pub fn gic_transmit_directions(k: usize, n: usize, i: usize) -> Result<DirectionSet> {
    gic_transmit_directions_with_cap(k, n, i, DEFAULT_ENUM_CAP)
}

/// [`gic_transmit_directions`] with an explicit enumeration cap.
pub fn gic_transmit_directions_with_cap(
    k: usize,
    n: usize,
    i: usize,
    cap: u64,
) -> Result<DirectionSet> {
    check_gic_dims(k, n)?;
    if i >= k {
        return Err(Error::InvalidDims(format!("user index {i} >= K={k}")));
    }
    let mut bounds = Vec::new();
    for rx in 0..k {
        for tx in 0..k {
            if rx == tx {
                continue;
            }
            let hi = if tx == i { n - 1 } else { n } as u8;
            bounds.push((GainId::new(rx, tx), (0, hi)));
        }
    }
    DirectionSet::enumerate_box_with_cap(&bounds, cap)
}

/// Closed-form size of [`gic_transmit_directions`]: `n^(K-1) (n+1)^((K-1)^2)`.
pub fn gic_transmit_count(k: usize, n: usize) -> Result<u128> {
    check_gic_dims(k, n)?;
    let a = checked_pow(n as u128, (k - 1) as u32, "gic transmit count")?;
    let b = checked_pow(
        (n + 1) as u128,
        ((k - 1) * (k - 1)) as u32,
        "gic transmit count",
    )?;
    a.checked_mul(b).ok_or(Error::Overflow("gic transmit count"))
}

/// The common interference target set of the K-user channel: all monomials
/// over the off-diagonal gains with exponents at most `n`.
pub fn gic_interference_directions(k: usize, n: usize) -> Result<DirectionSet> {
    gic_interference_directions_with_cap(k, n, DEFAULT_ENUM_CAP)
}

/// [`gic_interference_directions`] with an explicit enumeration cap.
pub fn gic_interference_directions_with_cap(k: usize, n: usize, cap: u64) -> Result<DirectionSet> {
    check_gic_dims(k, n)?;
    let mut bounds = Vec::new();
    for rx in 0..k {
        for tx in 0..k {
            if rx != tx {
                bounds.push((GainId::new(rx, tx), (0, n as u8)));
            }
        }
    }
    DirectionSet::enumerate_box_with_cap(&bounds, cap)
}

/// Closed-form size of [`gic_interference_directions`]: `(n+1)^(K(K-1))`.
pub fn gic_interference_count(k: usize, n: usize) -> Result<u128> {
    check_gic_dims(k, n)?;
    checked_pow(
        (n + 1) as u128,
        (k * (k - 1)) as u32,
        "gic interference count",
    )
}

// ---------------------------------------------------------------------------
// Cellular uplink (K cells, M users per cell)
// ---------------------------------------------------------------------------

/// Flattened transmitter index of user `m` in cell `c`.
pub fn uplink_tx_index(c: usize, m_users: usize, m: usize) -> usize {
    c * m_users + m
}

fn uplink_bounds(k: usize, m_users: usize, own: Option<(usize, usize)>, n: usize) -> Vec<(GainId, (u8, u8))> {
    let mut bounds = Vec::new();
    for rx in 0..k {
        for cell in 0..k {
            if cell == rx {
                // Same-cell gains of a base station never appear.
                continue;
            }
            for user in 0..m_users {
                let hi = match own {
                    Some((kc, km)) if (cell, user) == (kc, km) && rx != kc => (n - 1) as u8,
                    _ => n as u8,
                };
                bounds.push((GainId::new(rx, uplink_tx_index(cell, m_users, user)), (0, hi)));
            }
        }
    }
    bounds
}

/// Transmit directions of user `(k_cell, m_user)` in the cellular uplink.
pub fn uplink_transmit_directions(
    k: usize,
    m_users: usize,
    n: usize,
    k_cell: usize,
    m_user: usize,
) -> Result<DirectionSet> {
    uplink_transmit_directions_with_cap(k, m_users, n, k_cell, m_user, DEFAULT_ENUM_CAP)
}

/// [`uplink_transmit_directions`] with an explicit enumeration cap.
pub fn uplink_transmit_directions_with_cap(
    k: usize,
    m_users: usize,
    n: usize,
    k_cell: usize,
    m_user: usize,
    cap: u64,
) -> Result<DirectionSet> {
    check_uplink_dims(k, m_users, n)?;
    if k_cell >= k || m_user >= m_users {
        return Err(Error::InvalidDims(format!(
            "user ({k_cell},{m_user}) outside {k}x{m_users} uplink"
        )));
    }
    let bounds = uplink_bounds(k, m_users, Some((k_cell, m_user)), n);
    DirectionSet::enumerate_box_with_cap(&bounds, cap)
}

/// Closed-form size of [`uplink_transmit_directions`]:
/// `n^(K-1) (n+1)^((KM-1)(K-1))`.
pub fn uplink_transmit_count(k: usize, m_users: usize, n: usize) -> Result<u128> {
    check_uplink_dims(k, m_users, n)?;
    let a = checked_pow(n as u128, (k - 1) as u32, "uplink transmit count")?;
    let b = checked_pow(
        (n + 1) as u128,
        ((k * m_users - 1) * (k - 1)) as u32,
        "uplink transmit count",
    )?;
    a.checked_mul(b)
        .ok_or(Error::Overflow("uplink transmit count"))
}

/// The common interference target set of the uplink: all monomials over the
/// cross-cell gains with exponents at most `n`.
pub fn uplink_interference_directions(k: usize, m_users: usize, n: usize) -> Result<DirectionSet> {
    uplink_interference_directions_with_cap(k, m_users, n, DEFAULT_ENUM_CAP)
}

/// [`uplink_interference_directions`] with an explicit enumeration cap.
pub fn uplink_interference_directions_with_cap(
    k: usize,
    m_users: usize,
    n: usize,
    cap: u64,
) -> Result<DirectionSet> {
    check_uplink_dims(k, m_users, n)?;
    let bounds = uplink_bounds(k, m_users, None, n);
    DirectionSet::enumerate_box_with_cap(&bounds, cap)
}

/// Closed-form size of [`uplink_interference_directions`]: `(n+1)^(MK(K-1))`.
pub fn uplink_interference_count(k: usize, m_users: usize, n: usize) -> Result<u128> {
    check_uplink_dims(k, m_users, n)?;
    checked_pow(
        (n + 1) as u128,
        (m_users * k * (k - 1)) as u32,
        "uplink interference count",
    )
}

// ---------------------------------------------------------------------------
// K x M X channel (K transmitters, M receivers, a message per pair)
// ---------------------------------------------------------------------------

/// Expands pair exponents `s[j][l]` on `(h[j][l] h[r][l])` into base gains.
fn expand_pairs(r: usize, s: &ExponentVector) -> Result<ExponentVector> {
    let mut out = ExponentVector::one();
    for (g, e) in s.iter() {
        out.add_assign(g, e)?;
        out.add_assign(GainId::new(r, g.tx as usize), e)?;
    }
    Ok(out)
}

/// Transmit directions of the message from transmitter `i` to receiver `r`
/// of the X channel, expanded to base gains.
///
/// The monomials include the embedding gain `h[r][i]` that multiplies the
/// message inside transmitter `i`'s signal, so a set shifted by the traversed
/// gain is exactly the set of received directions.
pub fn x_transmit_directions(
    k: usize,
    m_rx: usize,
    n: usize,
    r: usize,
    i: usize,
) -> Result<DirectionSet> {
    x_transmit_directions_with_cap(k, m_rx, n, r, i, DEFAULT_ENUM_CAP)
}

/// [`x_transmit_directions`] with an explicit enumeration cap.
pub fn x_transmit_directions_with_cap(
    k: usize,
    m_rx: usize,
    n: usize,
    r: usize,
    i: usize,
    cap: u64,
) -> Result<DirectionSet> {
    check_x_dims(k, m_rx, n)?;
    if r >= m_rx || i >= k {
        return Err(Error::InvalidDims(format!(
            "message ({r},{i}) outside {m_rx}x{k} X channel"
        )));
    }
    let mut bounds = Vec::new();
    for rx in 0..m_rx {
        if rx == r {
            continue;
        }
        for tx in 0..k {
            let hi = if tx == i { n - 1 } else { n } as u8;
            bounds.push((GainId::new(rx, tx), (0, hi)));
        }
    }
    let pair_box = DirectionSet::enumerate_box_with_cap(&bounds, cap)?;
    let prefactor = GainId::new(r, i);
    let dirs = pair_box
        .iter()
        .map(|s| expand_pairs(r, s)?.shifted(prefactor))
        .collect::<Result<Vec<_>>>()?;
    let out = DirectionSet::from_vec(dirs);
    debug_assert_eq!(out.len(), pair_box.len(), "pair expansion is injective");
    Ok(out)
}

/// Closed-form size of [`x_transmit_directions`]: `n^(M-1) (n+1)^((M-1)(K-1))`.
pub fn x_transmit_count(k: usize, m_rx: usize, n: usize) -> Result<u128> {
    check_x_dims(k, m_rx, n)?;
    let a = checked_pow(n as u128, (m_rx - 1) as u32, "x transmit count")?;
    let b = checked_pow(
        (n + 1) as u128,
        ((m_rx - 1) * (k - 1)) as u32,
        "x transmit count",
    )?;
    a.checked_mul(b).ok_or(Error::Overflow("x transmit count"))
}

/// The alignment block of receiver `r_intended`: every direction on which
/// messages intended for that receiver may land at *any other* receiver.
pub fn x_interference_block(k: usize, m_rx: usize, n: usize, r_intended: usize) -> Result<DirectionSet> {
    x_interference_block_with_cap(k, m_rx, n, r_intended, DEFAULT_ENUM_CAP)
}

/// [`x_interference_block`] with an explicit enumeration cap.
pub fn x_interference_block_with_cap(
    k: usize,
    m_rx: usize,
    n: usize,
    r_intended: usize,
    cap: u64,
) -> Result<DirectionSet> {
    check_x_dims(k, m_rx, n)?;
    if r_intended >= m_rx {
        return Err(Error::InvalidDims(format!(
            "receiver {r_intended} outside {m_rx}-receiver X channel"
        )));
    }
    let mut bounds = Vec::new();
    for rx in 0..m_rx {
        if rx == r_intended {
            continue;
        }
        for tx in 0..k {
            bounds.push((GainId::new(rx, tx), (0, n as u8)));
        }
    }
    let pair_box = DirectionSet::enumerate_box_with_cap(&bounds, cap)?;
    let dirs = pair_box
        .iter()
        .map(|s| expand_pairs(r_intended, s))
        .collect::<Result<Vec<_>>>()?;
    let out = DirectionSet::from_vec(dirs);
    debug_assert_eq!(out.len(), pair_box.len(), "pair expansion is injective");
    Ok(out)
}

/// Closed-form size of one [`x_interference_block`]: `(n+1)^((M-1)K)`.
pub fn x_interference_block_count(k: usize, m_rx: usize, n: usize) -> Result<u128> {
    check_x_dims(k, m_rx, n)?;
    checked_pow(
        (n + 1) as u128,
        ((m_rx - 1) * k) as u32,
        "x interference count",
    )
}

/// Union of the alignment blocks of every receiver other than `r`: the full
/// interference direction set seen at receiver `r`.
pub fn x_interference_directions(k: usize, m_rx: usize, n: usize, r: usize) -> Result<DirectionSet> {
    x_interference_directions_with_cap(k, m_rx, n, r, DEFAULT_ENUM_CAP)
}

/// [`x_interference_directions`] with an explicit enumeration cap.
pub fn x_interference_directions_with_cap(
    k: usize,
    m_rx: usize,
    n: usize,
    r: usize,
    cap: u64,
) -> Result<DirectionSet> {
    check_x_dims(k, m_rx, n)?;
    if r >= m_rx {
        return Err(Error::InvalidDims(format!(
            "receiver {r} outside {m_rx}-receiver X channel"
        )));
    }
    let mut out = DirectionSet::empty();
    for r_other in 0..m_rx {
        if r_other == r {
            continue;
        }
        out = out.union(&x_interference_block_with_cap(k, m_rx, n, r_other, cap)?);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Three-user standard form, transcendental case
// ---------------------------------------------------------------------------

/// The gain slot holding the standard-form generator `G0` (the cross gain
/// from transmitter 2 to receiver 3, zero-based `h[2][1]`).
pub const G0_GAIN: GainId = GainId { rx: 2, tx: 1 };

/// Direction sets `{1, G0, ..., G0^n}` for user 1 and `{1, ..., G0^(n-1)}`
/// for users 2 and 3 of the standard-form three-user channel.
pub fn threeuser_case2_directions(n: usize) -> Result<(DirectionSet, DirectionSet, DirectionSet)> {
    if n < 1 || n > 200 {
        return Err(Error::InvalidDims(format!(
            "three-user scheme needs 1 <= n <= 200, got n={n}"
        )));
    }
    let t1 = DirectionSet::enumerate_box(&[(G0_GAIN, (0, n as u8))])?;
    let t23 = DirectionSet::enumerate_box(&[(G0_GAIN, (0, (n - 1) as u8))])?;
    Ok((t1, t23.clone(), t23))
}
