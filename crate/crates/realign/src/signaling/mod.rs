//! The integer-constellation coding chain: constellation parameterization,
//! receiver layouts with fold counts, encoding, the AWGN hop, and hard
//! decoding against the received constellation.

mod constellation;

pub use constellation::{
    build_received_constellation, hard_decode, min_distance_direct, ReceivedConstellation,
    DEFAULT_POINT_CAP,
};

use std::collections::BTreeMap;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::alignment::{ExponentVector, GainId};
use crate::channel::{evaluate_direction, ChannelRealization};
use crate::error::{Error, Result};

/// Relative tolerance of the evaluated-direction collision guard.
const COLLISION_REL_TOL: f64 = 1e-9;

/// Constellation parameters for one operating point.
///
/// `Q = max(1, floor(gamma * P^((1-eps)/(2(m+eps)))))` is the symbol
/// half-width and `A = zeta * sqrt(P) / Q` the scale, with
/// `zeta = 1 / max_i lambda_i` and `lambda_i` the squared norm of
/// transmitter i's evaluated direction vector, so every transmitter meets
/// its power constraint.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstellationSpec {
    pub p: f64,
    pub gamma: f64,
    pub epsilon: f64,
    /// Maximum number of received directions over all receivers.
    pub m: u32,
    /// Symbol half-width: data symbols live in `{-Q, ..., Q}`.
    pub q: u64,
    /// Constellation scale.
    pub a: f64,
    /// Power-normalization constant `1 / max_i lambda_i`.
    pub zeta: f64,
    /// Scale prefactor `zeta / gamma` of the closed form `A = xi * P^...`.
    pub xi: f64,
    /// Per-transmitter squared direction norms.
    pub lambda: Vec<f64>,
}

/// Derives `(Q, A)` from the power, the shape parameters and the evaluated
/// transmit directions of every transmitter.
pub fn derive_params(
    p: f64,
    gamma: f64,
    epsilon: f64,
    m: u32,
    tx_directions: &[Vec<f64>],
) -> Result<ConstellationSpec> {
    if !(p.is_finite() && p > 0.0) || !(gamma.is_finite() && gamma > 0.0) {
        return Err(Error::InvalidSpec(format!(
            "need P > 0 and gamma > 0, got P={p}, gamma={gamma}"
        )));
    }
    if !(epsilon.is_finite() && epsilon >= 0.0) {
        return Err(Error::InvalidSpec(format!("need epsilon >= 0, got {epsilon}")));
    }
    if m < 1 {
        return Err(Error::InvalidSpec("need m >= 1".into()));
    }
    if tx_directions.is_empty() || tx_directions.iter().any(|d| d.is_empty()) {
        return Err(Error::InvalidSpec(
            "every transmitter needs at least one direction".into(),
        ));
    }
    let lambda: Vec<f64> = tx_directions
        .iter()
        .map(|dirs| dirs.iter().map(|t| t * t).sum())
        .collect();
    let lambda_max = lambda.iter().cloned().fold(f64::MIN, f64::max);
    if !lambda_max.is_finite() || lambda_max <= 0.0 {
        return Err(Error::InvalidSpec("non-finite direction norms".into()));
    }
    let zeta = 1.0 / lambda_max;
    let exponent = (1.0 - epsilon) / (2.0 * (m as f64 + epsilon));
    let q_real = gamma * p.powf(exponent);
    if !q_real.is_finite() || q_real >= 9.0e15 {
        return Err(Error::InvalidSpec(format!(
            "constellation half-width overflow: Q ~ {q_real}"
        )));
    }
    // Nudge before flooring: powf can land a hair under an exact integer
    // (e.g. (10^6)^(1/6) = 9.999...98) and the closed form intends 10.
    let q = ((q_real * (1.0 + 1e-12)).floor() as u64).max(1);
    let a = zeta * p.sqrt() / q as f64;
    Ok(ConstellationSpec {
        p,
        gamma,
        epsilon,
        m,
        q,
        a,
        zeta,
        xi: zeta / gamma,
        lambda,
    })
}

/// One integer data stream: emitted by `tx` along a transmit direction,
/// decoded at `rx`.
#[derive(Clone, Debug, PartialEq)]
pub struct Stream {
    pub id: usize,
    pub tx: usize,
    pub rx: usize,
    /// Symbolic transmit direction (includes any embedding gains).
    pub direction: ExponentVector,
}

/// An intended received direction and the stream that owns it.
#[derive(Clone, Debug, PartialEq)]
pub struct IntendedDirection {
    pub monomial: ExponentVector,
    pub value: f64,
    pub stream: usize,
}

/// An interference received direction with its fold count.
#[derive(Clone, Debug, PartialEq)]
pub struct InterferenceDirection {
    pub monomial: ExponentVector,
    pub value: f64,
    /// Number of streams arriving on this direction; their symbols add.
    pub fold: u32,
    pub streams: Vec<usize>,
}

/// Everything one receiver sees: intended directions (one per own stream)
/// and folded interference directions.
#[derive(Clone, Debug, PartialEq)]
pub struct ReceiverLayout {
    pub rx: usize,
    pub intended: Vec<IntendedDirection>,
    pub interference: Vec<InterferenceDirection>,
    /// Whether the unit monomial occurs among the interference directions.
    pub contains_unit: bool,
}

impl ReceiverLayout {
    /// Number of intended directions (`L_j`).
    pub fn l_count(&self) -> usize {
        self.intended.len()
    }

    /// Number of interference directions (`L'_j`).
    pub fn l_prime(&self) -> usize {
        self.interference.len()
    }

    /// Maximum fold count (at least 1 even with no interference).
    pub fn max_fold(&self) -> u32 {
        self.interference.iter().map(|d| d.fold).max().unwrap_or(1)
    }

    /// Total received directions `L_j + L'_j`.
    pub fn total_directions(&self) -> usize {
        self.intended.len() + self.interference.len()
    }
}

/// Builds the receiver-`rx` layout for a set of streams over a realization.
///
/// Each stream's transmit direction arrives multiplied by the traversed gain
/// `h[rx][tx]`. Gains exactly equal to 1 (constructed standard-form
/// channels) are the multiplicative identity and do not change the monomial,
/// which is what lets co-aligned streams of the standard three-user scheme
/// fold symbolically. Interference streams landing on the same monomial are
/// folded with exact stream bookkeeping.
pub fn build_receiver_layout(
    h: &ChannelRealization,
    streams: &[Stream],
    rx: usize,
) -> Result<ReceiverLayout> {
    if rx >= h.n_rx() {
        return Err(Error::InvalidDims(format!(
            "receiver {rx} outside {}-receiver channel",
            h.n_rx()
        )));
    }
    let mut intended = Vec::new();
    let mut groups: BTreeMap<ExponentVector, Vec<usize>> = BTreeMap::new();
    for s in streams {
        let gain = h.gain(rx, s.tx)?;
        let monomial = if gain == 1.0 {
            s.direction.clone()
        } else {
            s.direction.shifted(GainId::new(rx, s.tx))?
        };
        if s.rx == rx {
            let value = evaluate_direction(h, &monomial)?;
            intended.push(IntendedDirection {
                monomial,
                value,
                stream: s.id,
            });
        } else {
            groups.entry(monomial).or_default().push(s.id);
        }
    }

    // Intended directions must be pairwise distinct: each carries one stream.
    for i in 1..intended.len() {
        for j in 0..i {
            if intended[i].monomial == intended[j].monomial {
                return Err(Error::Degenerate(format!(
                    "streams {} and {} share intended direction {:?} at rx {rx}",
                    intended[j].stream, intended[i].stream, intended[i].monomial
                )));
            }
        }
    }
    // ... and distinct from every interference direction.
    for d in &intended {
        if groups.contains_key(&d.monomial) {
            return Err(Error::Degenerate(format!(
                "intended direction {:?} collides with interference at rx {rx}",
                d.monomial
            )));
        }
    }

    let mut contains_unit = false;
    let mut interference = Vec::with_capacity(groups.len());
    for (monomial, stream_ids) in groups {
        contains_unit |= monomial.is_one();
        let value = evaluate_direction(h, &monomial)?;
        interference.push(InterferenceDirection {
            fold: stream_ids.len() as u32,
            streams: stream_ids,
            value,
            monomial,
        });
    }

    // Numeric guard: distinct monomials evaluating to nearly identical
    // magnitudes collapse rational dimensions of the received constellation.
    let mut magnitudes: Vec<f64> = intended
        .iter()
        .map(|d| d.value.abs())
        .chain(interference.iter().map(|d| d.value.abs()))
        .collect();
    magnitudes.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite values"));
    for w in magnitudes.windows(2) {
        if (w[1] - w[0]).abs() <= COLLISION_REL_TOL * w[1].abs() {
            return Err(Error::Degenerate(format!(
                "received directions {} and {} nearly collide at rx {rx}",
                w[0], w[1]
            )));
        }
    }

    Ok(ReceiverLayout {
        rx,
        intended,
        interference,
        contains_unit,
    })
}

/// Encodes one transmitter's symbols: `x = A * sum_l T_l u_l` with every
/// symbol in `{-Q, ..., Q}`.
pub fn encode(symbols: &[i64], dir_values: &[f64], spec: &ConstellationSpec) -> Result<f64> {
    if symbols.len() != dir_values.len() {
        return Err(Error::InvalidSpec(format!(
            "{} symbols for {} directions",
            symbols.len(),
            dir_values.len()
        )));
    }
    let q = spec.q as i64;
    let mut x = 0.0;
    for (&u, &t) in symbols.iter().zip(dir_values) {
        if u.abs() > q {
            return Err(Error::SymbolOutOfRange {
                symbol: u,
                q: spec.q,
            });
        }
        x += t * u as f64;
    }
    Ok(spec.a * x)
}

/// One use of the Gaussian channel: `y_j = sum_i h[j][i] x_i + sigma z_j`.
pub fn transmit_and_receive(
    h: &ChannelRealization,
    x: &[f64],
    sigma: f64,
    rng: &mut impl Rng,
) -> Result<Vec<f64>> {
    if x.len() != h.n_tx() {
        return Err(Error::InvalidDims(format!(
            "{} transmit values for {} transmitters",
            x.len(),
            h.n_tx()
        )));
    }
    if !(sigma.is_finite() && sigma >= 0.0) {
        return Err(Error::InvalidSpec(format!("need sigma >= 0, got {sigma}")));
    }
    let mut y = Vec::with_capacity(h.n_rx());
    for rx in 0..h.n_rx() {
        let mut acc = 0.0;
        for (tx, &xi) in x.iter().enumerate() {
            acc += h.gain(rx, tx)? * xi;
        }
        let z: f64 = rng.sample(StandardNormal);
        y.push(acc + sigma * z);
    }
    Ok(y)
}
