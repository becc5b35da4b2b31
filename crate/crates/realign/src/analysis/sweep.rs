//! Seeded Monte Carlo sweep over a geometric power grid: per-point symbol
//! error rates, rate lower bounds, multiplexing estimates, and a least-squares
//! slope fit over the top half of the grid.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::bounds::rate_lower_bound;
use crate::channel::{sample_realization, ChannelRealization, GainDistribution, DEFAULT_GAIN_DIST};
use crate::error::{Error, Result};
use crate::scheme::{
    build_all_layouts, build_scheme, max_received_directions, tx_direction_values, SchemeConfig,
};
use crate::signaling::{
    build_received_constellation, derive_params, encode, hard_decode, transmit_and_receive,
    ReceivedConstellation, ReceiverLayout, Stream, DEFAULT_POINT_CAP,
};

/// Seed salts separating the symbol and noise generators; both are reseeded
/// identically at every power point so the sweep uses common random numbers.
const SYMBOL_SALT: u64 = 0x53594d42_4f4c5331;
const NOISE_SALT: u64 = 0x4e4f4953_45535431;

/// How many consecutive seeds to try before giving up on sampling a
/// non-degenerate channel realization.
const MAX_CHANNEL_ATTEMPTS: u64 = 16;

/// Full configuration of one sweep run.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    /// Registry name of the scheme.
    pub scheme: String,
    /// Scheme dimensions and enumeration cap.
    pub dims: SchemeConfig,
    pub gamma: f64,
    pub epsilon: f64,
    /// Noise standard deviation.
    pub sigma: f64,
    /// Geometric power grid from `p_start` to `p_stop` with `p_points` points.
    pub p_start: f64,
    pub p_stop: f64,
    pub p_points: usize,
    /// Monte Carlo trials per power point.
    pub trials: u64,
    /// Master seed; drives channel sampling, symbols and noise.
    pub seed: u64,
    pub gain_dist: GainDistribution,
    /// Fixed realization; skips sampling when present.
    pub channel: Option<ChannelRealization>,
    /// Cap on received-constellation size per receiver.
    pub point_cap: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            scheme: "mac".into(),
            dims: SchemeConfig::default(),
            gamma: 1.0,
            epsilon: 0.05,
            sigma: 1.0,
            p_start: 1e4,
            p_stop: 1e12,
            p_points: 9,
            trials: 1000,
            seed: 1,
            gain_dist: DEFAULT_GAIN_DIST,
            channel: None,
            point_cap: DEFAULT_POINT_CAP,
        }
    }
}

impl SweepConfig {
    /// The geometric power grid.
    pub fn p_grid(&self) -> Result<Vec<f64>> {
        if !(self.p_start > 0.0 && self.p_stop >= self.p_start) || self.p_points < 1 {
            return Err(Error::InvalidSpec(format!(
                "power grid needs 0 < start <= stop and points >= 1, got {}..{} x{}",
                self.p_start, self.p_stop, self.p_points
            )));
        }
        if self.p_points == 1 {
            return Ok(vec![self.p_start]);
        }
        let ratio = (self.p_stop / self.p_start).powf(1.0 / (self.p_points - 1) as f64);
        Ok((0..self.p_points)
            .map(|i| self.p_start * ratio.powi(i as i32))
            .collect())
    }
}

/// CSV header of sweep outputs; one row per power point.
pub const CSV_HEADER: &str = "P,Q,A,d_min,ser,rate_bits,mux,sum_mux,err";

/// Measured outcome of one power point.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentRecord {
    pub p: f64,
    pub q: u64,
    pub a: f64,
    /// Minimum constellation distance over all receivers.
    pub d_min: f64,
    /// Per-stream symbol error rates (empty on an error row).
    pub ser_per_stream: Vec<f64>,
    /// Per-stream rate lower bounds in bits.
    pub rate_per_stream: Vec<f64>,
    /// Per-stream multiplexing estimates `R / (0.5 log2 P)`.
    pub mux_per_stream: Vec<f64>,
    /// Aggregate symbol error rate (errors over streams x trials).
    pub ser: f64,
    /// Sum of the per-stream rate bounds, in bits.
    pub sum_rate: f64,
    /// Mean per-stream multiplexing estimate.
    pub mux: f64,
    /// Sum multiplexing estimate.
    pub sum_mux: f64,
    /// Failure description when the point could not be simulated.
    pub error: Option<String>,
}

impl ExperimentRecord {
    fn failed(p: f64, why: &Error) -> Self {
        ExperimentRecord {
            p,
            q: 0,
            a: 0.0,
            d_min: 0.0,
            ser_per_stream: Vec::new(),
            rate_per_stream: Vec::new(),
            mux_per_stream: Vec::new(),
            ser: 1.0,
            sum_rate: 0.0,
            mux: 0.0,
            sum_mux: 0.0,
            error: Some(why.to_string()),
        }
    }

    /// One CSV row matching [`CSV_HEADER`]. Floats use the shortest
    /// round-trip decimal form, so identical runs emit identical bytes.
    pub fn csv_row(&self) -> String {
        let err = self
            .error
            .as_deref()
            .unwrap_or("")
            .replace([',', '\n'], ";");
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.p, self.q, self.a, self.d_min, self.ser, self.sum_rate, self.mux, self.sum_mux,
            err
        )
    }

    /// Parses a row produced by [`ExperimentRecord::csv_row`]. Per-stream
    /// vectors are not serialized and come back empty.
    pub fn parse_csv_row(row: &str) -> Result<Self> {
        let fields: Vec<&str> = row.split(',').collect();
        if fields.len() != 9 {
            return Err(Error::Parse(format!(
                "expected 9 CSV fields, got {}",
                fields.len()
            )));
        }
        let f = |i: usize| -> Result<f64> {
            fields[i]
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("field {i}: {e}")))
        };
        Ok(ExperimentRecord {
            p: f(0)?,
            q: fields[1]
                .parse::<u64>()
                .map_err(|e| Error::Parse(format!("field 1: {e}")))?,
            a: f(2)?,
            d_min: f(3)?,
            ser_per_stream: Vec::new(),
            rate_per_stream: Vec::new(),
            mux_per_stream: Vec::new(),
            ser: f(4)?,
            sum_rate: f(5)?,
            mux: f(6)?,
            sum_mux: f(7)?,
            error: if fields[8].is_empty() {
                None
            } else {
                Some(fields[8].to_string())
            },
        })
    }
}

/// Outcome of a full sweep.
#[derive(Clone, Debug)]
pub struct SweepResult {
    /// The realization actually used (after standard-form preparation).
    pub channel: ChannelRealization,
    pub n_streams: usize,
    /// Maximum received directions over all receivers.
    pub m: u32,
    pub records: Vec<ExperimentRecord>,
    /// Least-squares slope of sum rate (bits) against `0.5 log2 P` over the
    /// top half of the grid; `None` with fewer than two usable points.
    pub slope: Option<f64>,
}

/// Least-squares slope of `ys` against `xs`.
pub fn estimate_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    Some(sxy / sxx)
}

fn acquire_channel(
    cfg: &SweepConfig,
    scheme: &dyn crate::scheme::AlignmentScheme,
    streams: &[Stream],
) -> Result<(ChannelRealization, Vec<ReceiverLayout>)> {
    let (k, m) = scheme.dims();
    if let Some(fixed) = &cfg.channel {
        let h = scheme.prepare_channel(fixed.clone())?;
        let layouts = build_all_layouts(streams, &h)?;
        return Ok((h, layouts));
    }
    let mut last = Error::Degenerate("no channel sampled".into());
    for attempt in 0..MAX_CHANNEL_ATTEMPTS {
        let raw = sample_realization(scheme.kind(), k, m, cfg.gain_dist, cfg.seed + attempt)?;
        match scheme
            .prepare_channel(raw)
            .and_then(|h| build_all_layouts(streams, &h).map(|l| (h, l)))
        {
            Ok(ok) => return Ok(ok),
            Err(e @ (Error::Degenerate(_) | Error::DivisionDegenerate(_))) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

fn run_point(
    cfg: &SweepConfig,
    p: f64,
    h: &ChannelRealization,
    layouts: &[ReceiverLayout],
    tx_dirs: &[Vec<f64>],
    tx_streams: &[Vec<usize>],
    m: u32,
    n_streams: usize,
) -> Result<ExperimentRecord> {
    let spec = derive_params(p, cfg.gamma, cfg.epsilon, m, tx_dirs)?;
    let constellations: Vec<ReceivedConstellation> = layouts
        .iter()
        .map(|l| build_received_constellation(l, &spec, cfg.point_cap))
        .collect::<Result<_>>()?;
    let d_min = constellations
        .iter()
        .map(|c| c.d_min())
        .fold(f64::INFINITY, f64::min);

    // Fresh generators per point, seeded independently of P: the same
    // symbols and noise are replayed at every power (common random numbers).
    let mut sym_rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ SYMBOL_SALT);
    let mut noise_rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ NOISE_SALT);
    let q = spec.q as i64;
    let mut errors = vec![0u64; n_streams];
    let mut symbols = vec![0i64; n_streams];
    let mut x = vec![0.0f64; h.n_tx()];
    for _ in 0..cfg.trials {
        for u in symbols.iter_mut() {
            *u = sym_rng.gen_range(-q..=q);
        }
        for (tx, stream_idx) in tx_streams.iter().enumerate() {
            let syms: Vec<i64> = stream_idx.iter().map(|&s| symbols[s]).collect();
            x[tx] = encode(&syms, &tx_dirs[tx], &spec)?;
        }
        let y = transmit_and_receive(h, &x, cfg.sigma, &mut noise_rng)?;
        for (layout, rc) in layouts.iter().zip(&constellations) {
            let decoded = hard_decode(rc, y[layout.rx]);
            for (pos, dir) in layout.intended.iter().enumerate() {
                if decoded[pos] != symbols[dir.stream] {
                    errors[dir.stream] += 1;
                }
            }
        }
    }

    let trials = cfg.trials as f64;
    let half_log_p = 0.5 * p.log2();
    let mut ser_per_stream = Vec::with_capacity(n_streams);
    let mut rate_per_stream = Vec::with_capacity(n_streams);
    let mut mux_per_stream = Vec::with_capacity(n_streams);
    for &e in &errors {
        let ser = e as f64 / trials;
        let rate = rate_lower_bound(ser, spec.q)?;
        ser_per_stream.push(ser);
        rate_per_stream.push(rate);
        mux_per_stream.push(rate / half_log_p);
    }
    let total_errors: u64 = errors.iter().sum();
    let sum_rate: f64 = rate_per_stream.iter().sum();
    let sum_mux: f64 = mux_per_stream.iter().sum();
    Ok(ExperimentRecord {
        p,
        q: spec.q,
        a: spec.a,
        d_min,
        ser: total_errors as f64 / (trials * n_streams as f64),
        sum_rate,
        mux: sum_mux / n_streams as f64,
        sum_mux,
        ser_per_stream,
        rate_per_stream,
        mux_per_stream,
        error: None,
    })
}

/// Runs the full sweep: acquires a channel, simulates every power point, and
/// fits the rate slope. Per-point failures become error rows; the run
/// continues.
pub fn dof_sweep(cfg: &SweepConfig) -> Result<SweepResult> {
    if cfg.trials < 1 {
        return Err(Error::InvalidSpec("trials must be >= 1".into()));
    }
    let grid = cfg.p_grid()?;
    let scheme = build_scheme(&cfg.scheme, &cfg.dims)?;
    let streams = scheme.streams()?;
    let n_streams = streams.len();
    let (h, layouts) = acquire_channel(cfg, scheme.as_ref(), &streams)?;
    let m = max_received_directions(&layouts);
    let tx_dirs = tx_direction_values(&streams, &h)?;
    let mut tx_streams: Vec<Vec<usize>> = vec![Vec::new(); h.n_tx()];
    for (idx, s) in streams.iter().enumerate() {
        tx_streams[s.tx].push(idx);
    }

    let mut records = Vec::with_capacity(grid.len());
    for &p in &grid {
        match run_point(cfg, p, &h, &layouts, &tx_dirs, &tx_streams, m, n_streams) {
            Ok(rec) => records.push(rec),
            Err(
                e @ (Error::CapExceeded { .. }
                | Error::Degenerate(_)
                | Error::InvalidSpec(_)
                | Error::Overflow(_)),
            ) => records.push(ExperimentRecord::failed(p, &e)),
            Err(e) => return Err(e),
        }
    }

    // Slope of sum rate vs 0.5*log2(P) over the top half of the grid.
    let start = records.len() / 2;
    let (xs, ys): (Vec<f64>, Vec<f64>) = records[start..]
        .iter()
        .filter(|r| r.error.is_none())
        .map(|r| (0.5 * r.p.log2(), r.sum_rate))
        .unzip();
    let slope = estimate_slope(&xs, &ys);

    Ok(SweepResult {
        channel: h,
        n_streams,
        m,
        records,
        slope,
    })
}
