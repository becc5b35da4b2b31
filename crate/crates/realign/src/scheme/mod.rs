//! Alignment schemes as runtime-selectable strategies.
//!
//! Every scheme bundles a topology, a transmit plan (streams with symbolic
//! directions) and a symbolic self-check (direction counts, containment and
//! separability verdicts). Schemes register by name and are selected from
//! configuration at runtime.

mod gic;
mod mac;
mod three_user;
mod two_user_x;
mod uplink;
mod xchannel;

pub use gic::GicScheme;
pub use mac::MacScheme;
pub use three_user::ThreeUserScheme;
pub use two_user_x::TwoUserXScheme;
pub use uplink::UplinkScheme;
pub use xchannel::XScheme;

use crate::alignment::DEFAULT_ENUM_CAP;
use crate::channel::{evaluate_direction, ChannelRealization, SchemeKind};
use crate::error::{Error, Result};
use crate::signaling::{build_receiver_layout, ReceiverLayout, Stream};

/// Dimension parameters handed to a scheme factory.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SchemeConfig {
    /// Users / cells / transmitters, per scheme.
    pub k: usize,
    /// Users per cell (uplink), receivers (X), users (MAC); 1 elsewhere.
    pub m: usize,
    /// Direction order `n` of the monomial constructions.
    pub n: usize,
    /// Enumeration cap for direction-set generation.
    pub cap: u64,
}

impl Default for SchemeConfig {
    fn default() -> Self {
        SchemeConfig {
            k: 2,
            m: 1,
            n: 1,
            cap: DEFAULT_ENUM_CAP,
        }
    }
}

/// One named cardinality with its closed form, when the scheme has one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoleCount {
    pub label: String,
    pub count: u128,
    pub closed_form: Option<u128>,
}

/// Symbolic self-check of a scheme's direction construction.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DirectionsReport {
    pub roles: Vec<RoleCount>,
    /// Labeled containment verdicts (received interference inside targets).
    pub containment: Vec<(String, bool)>,
    /// Labeled separability verdicts (intended disjoint from interference).
    pub separability: Vec<(String, bool)>,
}

impl DirectionsReport {
    /// True iff every count matches its closed form and every verdict holds.
    pub fn all_pass(&self) -> bool {
        self.roles
            .iter()
            .all(|r| r.closed_form.map_or(true, |c| c == r.count))
            && self.containment.iter().all(|&(_, ok)| ok)
            && self.separability.iter().all(|&(_, ok)| ok)
    }
}

/// A transmit-direction strategy for one network topology.
pub trait AlignmentScheme {
    /// Registry name.
    fn name(&self) -> &'static str;

    /// Channel topology to sample.
    fn kind(&self) -> SchemeKind;

    /// `(K, M)` dimensions for channel sampling.
    fn dims(&self) -> (usize, usize);

    /// The full transmit plan: every data stream with its direction.
    fn streams(&self) -> Result<Vec<Stream>>;

    /// Post-processes a sampled realization (identity for most schemes; the
    /// three-user scheme reduces to standard form).
    fn prepare_channel(&self, h: ChannelRealization) -> Result<ChannelRealization> {
        Ok(h)
    }

    /// Symbolic direction counts and alignment/separability verdicts.
    fn directions_report(&self) -> Result<DirectionsReport>;
}

/// Names of all registered schemes.
pub fn scheme_names() -> &'static [&'static str] {
    &["gic", "uplink", "x", "three-user", "mac", "two-user-x"]
}

/// Builds a scheme by registry name.
pub fn build_scheme(name: &str, cfg: &SchemeConfig) -> Result<Box<dyn AlignmentScheme>> {
    match name {
        "gic" => Ok(Box::new(GicScheme::new(cfg.k, cfg.n, cfg.cap)?)),
        "uplink" => Ok(Box::new(UplinkScheme::new(cfg.k, cfg.m, cfg.n, cfg.cap)?)),
        "x" => Ok(Box::new(XScheme::new(cfg.k, cfg.m, cfg.n, cfg.cap)?)),
        "three-user" => Ok(Box::new(ThreeUserScheme::new(cfg.n)?)),
        "mac" => Ok(Box::new(MacScheme::new(cfg.m)?)),
        "two-user-x" => Ok(Box::new(TwoUserXScheme::new())),
        other => Err(Error::InvalidSpec(format!(
            "unknown scheme `{other}` (expected one of {})",
            scheme_names().join(", ")
        ))),
    }
}

/// Builds the layouts of every receiver for a prepared realization.
pub fn build_all_layouts(
    streams: &[Stream],
    h: &ChannelRealization,
) -> Result<Vec<ReceiverLayout>> {
    (0..h.n_rx())
        .map(|rx| build_receiver_layout(h, streams, rx))
        .collect()
}

/// Maximum number of received directions over all receivers (the `m` of the
/// constellation parameterization).
pub fn max_received_directions(layouts: &[ReceiverLayout]) -> u32 {
    layouts
        .iter()
        .map(|l| l.total_directions() as u32)
        .max()
        .unwrap_or(1)
}

/// Evaluated transmit-direction values grouped by transmitter, in stream
/// order within each transmitter.
pub fn tx_direction_values(
    streams: &[Stream],
    h: &ChannelRealization,
) -> Result<Vec<Vec<f64>>> {
    let mut per_tx: Vec<Vec<f64>> = vec![Vec::new(); h.n_tx()];
    for s in streams {
        if s.tx >= h.n_tx() {
            return Err(Error::InvalidDims(format!(
                "stream {} transmits from {} in a {}-transmitter channel",
                s.id,
                s.tx,
                h.n_tx()
            )));
        }
        per_tx[s.tx].push(evaluate_direction(h, &s.direction)?);
    }
    if per_tx.iter().any(|d| d.is_empty()) {
        return Err(Error::InvalidDims(
            "every transmitter needs at least one stream".into(),
        ));
    }
    Ok(per_tx)
}
