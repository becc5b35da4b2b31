//! Channel realizations: gain sampling, direction evaluation, the
//! three-user standard-form reduction, and exact algebraic folding for
//! channels whose generator satisfies an integer polynomial.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alignment::ExponentVector;
use crate::error::{Error, Result};

/// Network topology of a realization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SchemeKind {
    /// K-user interference channel: K receivers x K transmitters.
    Gic,
    /// Cellular uplink: K base stations x (K*M) users.
    Uplink,
    /// X channel: M receivers x K transmitters.
    X,
}

impl SchemeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SchemeKind::Gic => "gic",
            SchemeKind::Uplink => "uplink",
            SchemeKind::X => "x",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "gic" => Ok(SchemeKind::Gic),
            "uplink" => Ok(SchemeKind::Uplink),
            "x" => Ok(SchemeKind::X),
            other => Err(Error::Parse(format!("unknown scheme kind `{other}`"))),
        }
    }

    /// (receiver count, transmitter count) for dims (K, M).
    pub fn shape(self, k: usize, m: usize) -> (usize, usize) {
        match self {
            SchemeKind::Gic => (k, k),
            SchemeKind::Uplink => (k, k * m),
            SchemeKind::X => (m, k),
        }
    }
}

/// Continuous gain distribution with support bounded away from zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GainDistribution {
    /// Uniform on `[lo, hi]`, `0 < lo <= hi`.
    Uniform { lo: f64, hi: f64 },
    /// Uniform magnitude on `[lo, hi]` with a random sign.
    SignedUniform { lo: f64, hi: f64 },
    /// Log-magnitude uniform on `[ln lo, ln hi]`.
    LogUniform { lo: f64, hi: f64 },
}

/// Default gain distribution: bounded away from 0 and infinity.
pub const DEFAULT_GAIN_DIST: GainDistribution = GainDistribution::Uniform { lo: 0.5, hi: 2.0 };

impl GainDistribution {
    fn bounds(self) -> (f64, f64) {
        match self {
            GainDistribution::Uniform { lo, hi }
            | GainDistribution::SignedUniform { lo, hi }
            | GainDistribution::LogUniform { lo, hi } => (lo, hi),
        }
    }

    pub fn validate(self) -> Result<()> {
        let (lo, hi) = self.bounds();
        if !(lo.is_finite() && hi.is_finite()) || lo <= 0.0 || lo > hi {
            return Err(Error::InvalidDistribution(format!(
                "need 0 < lo <= hi (support excluding 0), got lo={lo}, hi={hi}"
            )));
        }
        Ok(())
    }

    /// Draws one gain.
    pub fn sample(self, rng: &mut impl Rng) -> f64 {
        let (lo, hi) = self.bounds();
        match self {
            GainDistribution::Uniform { .. } => lo + (hi - lo) * rng.gen::<f64>(),
            GainDistribution::SignedUniform { .. } => {
                let mag = lo + (hi - lo) * rng.gen::<f64>();
                if rng.gen::<bool>() {
                    mag
                } else {
                    -mag
                }
            }
            GainDistribution::LogUniform { .. } => {
                let (llo, lhi) = (lo.ln(), hi.ln());
                (llo + (lhi - llo) * rng.gen::<f64>()).exp()
            }
        }
    }

    /// Parses `lo,hi`, `signed:lo,hi` or `log:lo,hi`.
    pub fn parse(s: &str) -> Result<Self> {
        let (tag, rest) = match s.split_once(':') {
            Some((t, r)) => (t, r),
            None => ("uniform", s),
        };
        let (lo, hi) = rest
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("gain distribution `{s}` is not `lo,hi`")))?;
        let lo: f64 = lo
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad bound `{lo}`")))?;
        let hi: f64 = hi
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad bound `{hi}`")))?;
        let dist = match tag {
            "uniform" => GainDistribution::Uniform { lo, hi },
            "signed" => GainDistribution::SignedUniform { lo, hi },
            "log" => GainDistribution::LogUniform { lo, hi },
            other => {
                return Err(Error::Parse(format!(
                    "unknown gain distribution kind `{other}`"
                )))
            }
        };
        dist.validate()?;
        Ok(dist)
    }
}

/// A fixed real gain matrix for one scheme topology.
#[derive(Clone, Debug, PartialEq)]
pub struct ChannelRealization {
    pub kind: SchemeKind,
    /// Dimension K (users / cells / transmitters, per scheme).
    pub k: usize,
    /// Dimension M (users per cell / receivers); 1 for the K-user channel.
    pub m: usize,
    /// Seed that produced the matrix; 0 for hand-constructed channels.
    pub seed: u64,
    n_rx: usize,
    n_tx: usize,
    /// Row-major gains, `gains[rx * n_tx + tx]`.
    gains: Vec<f64>,
}

impl ChannelRealization {
    /// Wraps an explicit gain matrix (row-major, receiver-major).
    pub fn from_gains(
        kind: SchemeKind,
        k: usize,
        m: usize,
        seed: u64,
        gains: Vec<f64>,
    ) -> Result<Self> {
        let (n_rx, n_tx) = kind.shape(k, m);
        if n_rx == 0 || n_tx == 0 || n_rx > 250 || n_tx > 250 {
            return Err(Error::InvalidDims(format!(
                "channel shape {n_rx}x{n_tx} unsupported"
            )));
        }
        if gains.len() != n_rx * n_tx {
            return Err(Error::InvalidDims(format!(
                "expected {} gains for a {n_rx}x{n_tx} channel, got {}",
                n_rx * n_tx,
                gains.len()
            )));
        }
        if gains.iter().any(|g| !g.is_finite() || *g == 0.0) {
            return Err(Error::Degenerate(
                "channel gains must be finite and nonzero".into(),
            ));
        }
        Ok(ChannelRealization {
            kind,
            k,
            m,
            seed,
            n_rx,
            n_tx,
            gains,
        })
    }

    pub fn n_rx(&self) -> usize {
        self.n_rx
    }

    pub fn n_tx(&self) -> usize {
        self.n_tx
    }

    /// Gain `h[rx][tx]`.
    pub fn gain(&self, rx: usize, tx: usize) -> Result<f64> {
        if rx >= self.n_rx || tx >= self.n_tx {
            return Err(Error::UnknownGain { rx, tx });
        }
        Ok(self.gains[rx * self.n_tx + tx])
    }

    /// Self-describing text record; gains carry 17 significant digits so the
    /// round trip is value-exact.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "scheme {}", self.kind.as_str());
        let _ = writeln!(s, "dims {} {}", self.k, self.m);
        let _ = writeln!(s, "seed {}", self.seed);
        let _ = writeln!(s, "gains {} {}", self.n_rx, self.n_tx);
        for rx in 0..self.n_rx {
            let row: Vec<String> = (0..self.n_tx)
                .map(|tx| format!("{:.16e}", self.gains[rx * self.n_tx + tx]))
                .collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
        s
    }

    /// Parses the output of [`to_text`](Self::to_text).
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let mut expect = |what: &str| -> Result<Vec<String>> {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing `{what}` line")))?;
            let mut it = line.split_whitespace();
            if it.next() != Some(what) {
                return Err(Error::Parse(format!("expected `{what}` line, got `{line}`")));
            }
            Ok(it.map(String::from).collect())
        };
        let kind = SchemeKind::parse(
            expect("scheme")?
                .first()
                .ok_or_else(|| Error::Parse("empty scheme line".into()))?,
        )?;
        let dims = expect("dims")?;
        let parse_usize = |s: &str| -> Result<usize> {
            s.parse()
                .map_err(|_| Error::Parse(format!("bad integer `{s}`")))
        };
        if dims.len() != 2 {
            return Err(Error::Parse("dims line needs two integers".into()));
        }
        let (k, m) = (parse_usize(&dims[0])?, parse_usize(&dims[1])?);
        let seed_line = expect("seed")?;
        let seed: u64 = seed_line
            .first()
            .ok_or_else(|| Error::Parse("empty seed line".into()))?
            .parse()
            .map_err(|_| Error::Parse("bad seed".into()))?;
        let shape = expect("gains")?;
        if shape.len() != 2 {
            return Err(Error::Parse("gains line needs two integers".into()));
        }
        let (n_rx, n_tx) = (parse_usize(&shape[0])?, parse_usize(&shape[1])?);
        if (n_rx, n_tx) != kind.shape(k, m) {
            return Err(Error::Parse(format!(
                "gain shape {n_rx}x{n_tx} does not match scheme dims"
            )));
        }
        let mut gains = Vec::with_capacity(n_rx * n_tx);
        for _ in 0..n_rx {
            let row = lines
                .next()
                .ok_or_else(|| Error::Parse("missing gain row".into()))?;
            for tok in row.split_whitespace() {
                let g: f64 = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad gain `{tok}`")))?;
                gains.push(g);
            }
        }
        ChannelRealization::from_gains(kind, k, m, seed, gains)
    }
}

/// Draws an i.i.d. gain matrix; deterministic for a fixed seed.
pub fn sample_realization(
    kind: SchemeKind,
    k: usize,
    m: usize,
    dist: GainDistribution,
    seed: u64,
) -> Result<ChannelRealization> {
    dist.validate()?;
    let (n_rx, n_tx) = kind.shape(k, m);
    if n_rx == 0 || n_tx == 0 || n_rx > 250 || n_tx > 250 {
        return Err(Error::InvalidDims(format!(
            "channel shape {n_rx}x{n_tx} unsupported"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gains: Vec<f64> = (0..n_rx * n_tx).map(|_| dist.sample(&mut rng)).collect();
    ChannelRealization::from_gains(kind, k, m, seed, gains)
}

/// Evaluates a direction monomial on a realization.
pub fn evaluate_direction(h: &ChannelRealization, t: &ExponentVector) -> Result<f64> {
    let mut v = 1.0;
    for (g, e) in t.iter() {
        v *= h.gain(g.rx as usize, g.tx as usize)?.powi(e as i32);
    }
    Ok(v)
}

// ---------------------------------------------------------------------------
// Three-user standard form
// ---------------------------------------------------------------------------

/// The four invariants `(G0, G1, G2, G3)` of the equivalent standard
/// three-user channel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StandardForm3 {
    pub g0: f64,
    pub g1: f64,
    pub g2: f64,
    pub g3: f64,
}

const DENOM_TOL: f64 = 1e-300;

/// Reduces a three-user realization to its standard form.
///
/// Zero-based gain quotients (`h[rx][tx]`):
/// `G0 = h02 h10 h21 / (h01 h12 h20)`, `G1 = h00 h01 h12 / (h01 h10 h02)`,
/// `G2 = h11 h02 / (h01 h12)`, `G3 = h22 h01 h10 / (h01 h12 h20)`.
pub fn standard_form_3user(h: &ChannelRealization) -> Result<StandardForm3> {
    if h.kind != SchemeKind::Gic || h.k != 3 {
        return Err(Error::InvalidDims(
            "standard form needs a three-user interference channel".into(),
        ));
    }
    let g = |rx: usize, tx: usize| h.gain(rx, tx).expect("3x3 checked");
    let quotient = |num: f64, den: f64, what: &str| -> Result<f64> {
        if den.abs() < DENOM_TOL {
            return Err(Error::DivisionDegenerate(format!(
                "denominator of {what} below tolerance"
            )));
        }
        Ok(num / den)
    };
    let g0 = quotient(g(0, 2) * g(1, 0) * g(2, 1), g(0, 1) * g(1, 2) * g(2, 0), "G0")?;
    let g1 = quotient(g(0, 0) * g(0, 1) * g(1, 2), g(0, 1) * g(1, 0) * g(0, 2), "G1")?;
    let g2 = quotient(g(1, 1) * g(0, 2), g(0, 1) * g(1, 2), "G2")?;
    let g3 = quotient(g(2, 2) * g(0, 1) * g(1, 0), g(0, 1) * g(1, 2) * g(2, 0), "G3")?;
    for (name, v) in [("G0", g0), ("G1", g1), ("G2", g2), ("G3", g3)] {
        if !v.is_finite() || v == 0.0 {
            return Err(Error::DivisionDegenerate(format!("{name} is not usable")));
        }
    }
    Ok(StandardForm3 { g0, g1, g2, g3 })
}

/// The standard-form channel matrix: direct gains `(G1, G2, G3)`, cross gain
/// `h[2][1] = G0`, every other cross gain exactly 1.
pub fn standard_channel_matrix(sf: &StandardForm3, seed: u64) -> Result<ChannelRealization> {
    ChannelRealization::from_gains(
        SchemeKind::Gic,
        3,
        1,
        seed,
        vec![sf.g1, 1.0, 1.0, 1.0, sf.g2, 1.0, 1.0, sf.g0, sf.g3],
    )
}

// ---------------------------------------------------------------------------
// Algebraic (Case I) folding
// ---------------------------------------------------------------------------

/// An integer polynomial `a_d x^d + ... + a_0` with `a_d != 0`, `d >= 1`,
/// satisfied by the channel generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalPolynomial {
    coeffs: Vec<i64>,
}

impl MinimalPolynomial {
    /// Builds from coefficients `a_0..a_d` in ascending degree order.
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidDims(
                "minimal polynomial needs degree >= 1".into(),
            ));
        }
        if *coeffs.last().unwrap() == 0 {
            return Err(Error::InvalidDims(
                "leading coefficient must be nonzero".into(),
            ));
        }
        Ok(MinimalPolynomial { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients `a_0..a_d`.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Evaluates the polynomial at a real point.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * x + c as f64)
    }
}

/// An integer combination over the basis `{1, G0, ..., G0^(d-1)}` together
/// with the integer scale applied to the observation it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldedCombination {
    /// Basis coefficients `c_0..c_(d-1)`.
    pub coeffs: Vec<i128>,
    /// The observation was multiplied by this (the leading coefficient).
    pub scale: i64,
}

impl FoldedCombination {
    /// Evaluates the folded combination at a real generator value.
    pub fn eval(&self, g0: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * g0 + c as f64)
    }
}

/// Folds the top basis power of a degree-`d` integer combination using the
/// generator's minimal polynomial: scaling by `a_d` and substituting
/// `a_d G0^d = -(a_(d-1) G0^(d-1) + ... + a_0)` yields coefficients
/// `c_j = a_d u_j - a_j u_d` over the basis `{1, ..., G0^(d-1)}`.
pub fn fold_top_power(combo: &[i64], p: &MinimalPolynomial) -> Result<FoldedCombination> {
    let d = p.degree();
    if combo.len() != d + 1 {
        return Err(Error::DegreeMismatch {
            combo: combo.len().saturating_sub(1),
            poly: d,
        });
    }
    let a = p.coeffs();
    let a_d = a[d];
    let u_d = combo[d];
    let coeffs = (0..d)
        .map(|j| {
            let t1 = (a_d as i128)
                .checked_mul(combo[j] as i128)
                .ok_or(Error::Overflow("fold"))?;
            let t2 = (a[j] as i128)
                .checked_mul(u_d as i128)
                .ok_or(Error::Overflow("fold"))?;
            t1.checked_sub(t2).ok_or(Error::Overflow("fold"))
        })
        .collect::<Result<Vec<i128>>>()?;
    Ok(FoldedCombination { coeffs, scale: a_d })
}

/// Exact bound (divided by Q) on a folded symbol's magnitude when every
/// input symbol is bounded by `f_in * Q`:
/// `f_out = |a_d| f_in + max_(j<d) |a_j| f_in`.
pub fn case1_symbol_bound(q: u64, p: &MinimalPolynomial, f_in: u64) -> Result<u64> {
    if q < 1 {
        return Err(Error::InvalidSpec("Q must be at least 1".into()));
    }
    let a = p.coeffs();
    let d = p.degree();
    let lead = a[d].unsigned_abs();
    let max_low = a[..d].iter().map(|c| c.unsigned_abs()).max().unwrap_or(0);
    lead.checked_mul(f_in)
        .and_then(|x| max_low.checked_mul(f_in).and_then(|y| x.checked_add(y)))
        .ok_or(Error::Overflow("case I symbol bound"))
}
