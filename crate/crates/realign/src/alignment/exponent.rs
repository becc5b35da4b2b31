//! Monomials over channel gains: the atoms of transmit/receive directions.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Identifier of a single channel gain `h[rx][tx]`.
///
/// For the cellular uplink the transmitter axis flattens the (cell, user)
/// pair as `cell * M + user`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GainId {
    pub rx: u8,
    pub tx: u8,
}

impl GainId {
    pub fn new(rx: usize, tx: usize) -> Self {
        debug_assert!(rx <= u8::MAX as usize && tx <= u8::MAX as usize);
        GainId {
            rx: rx as u8,
            tx: tx as u8,
        }
    }
}

impl fmt::Debug for GainId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h[{}][{}]", self.rx, self.tx)
    }
}

/// Inline capacity covering every supported scheme dimension without heap
/// spill: the largest acceptance-scale support is 12 off-diagonal gains
/// (K-user channel with K = 4, or uplink with K = 3, M = 2).
const INLINE_GAINS: usize = 12;

type Entries = SmallVec<[(GainId, u8); INLINE_GAINS]>;

/// A monomial `prod h[rx][tx]^e` with nonnegative integer exponents.
///
/// Entries are kept sorted by [`GainId`] and never store a zero exponent, so
/// structural equality coincides with monomial equality. The empty product
/// is the unit monomial `1`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExponentVector {
    entries: Entries,
}

impl ExponentVector {
    /// The unit monomial (empty product).
    pub fn one() -> Self {
        ExponentVector::default()
    }

    /// Single-gain monomial `h[rx][tx]^e`.
    pub fn single(g: GainId, e: u8) -> Self {
        let mut v = ExponentVector::one();
        if e > 0 {
            v.entries.push((g, e));
        }
        v
    }

    /// Builds from arbitrary (gain, exponent) pairs; duplicate gains are
    /// summed, zero exponents dropped.
    pub fn from_pairs<I: IntoIterator<Item = (GainId, u8)>>(pairs: I) -> Result<Self> {
        let mut v = ExponentVector::one();
        for (g, e) in pairs {
            v.add_assign(g, e)?;
        }
        Ok(v)
    }

    /// True for the unit monomial.
    pub fn is_one(&self) -> bool {
        self.entries.is_empty()
    }

    /// Exponent of a gain (0 when absent).
    pub fn exponent(&self, g: GainId) -> u8 {
        match self.entries.binary_search_by_key(&g, |&(k, _)| k) {
            Ok(i) => self.entries[i].1,
            Err(_) => 0,
        }
    }

    /// Iterates `(gain, exponent)` pairs in canonical gain order.
    pub fn iter(&self) -> impl Iterator<Item = (GainId, u8)> + '_ {
        self.entries.iter().copied()
    }

    /// Number of gains with nonzero exponent.
    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    /// Total degree (sum of exponents).
    pub fn degree(&self) -> u32 {
        self.entries.iter().map(|&(_, e)| e as u32).sum()
    }

    /// Adds `e` to the exponent of `g` in place.
    pub fn add_assign(&mut self, g: GainId, e: u8) -> Result<()> {
        if e == 0 {
            return Ok(());
        }
        match self.entries.binary_search_by_key(&g, |&(k, _)| k) {
            Ok(i) => {
                self.entries[i].1 = self.entries[i]
                    .1
                    .checked_add(e)
                    .ok_or(Error::Overflow("exponent addition"))?;
            }
            Err(i) => self.entries.insert(i, (g, e)),
        }
        Ok(())
    }

    /// The monomial multiplied by `h[g]` (exponent of `g` incremented).
    pub fn shifted(&self, g: GainId) -> Result<Self> {
        let mut out = self.clone();
        out.add_assign(g, 1)?;
        Ok(out)
    }

    /// Monomial product: exponents added componentwise.
    pub fn product(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (g, e) in other.iter() {
            out.add_assign(g, e)?;
        }
        Ok(out)
    }

    /// Canonical text form: space-separated `rx,tx^e` tokens, or `1` for the
    /// unit monomial.
    pub fn to_token_string(&self) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        self.entries
            .iter()
            .map(|&(g, e)| format!("{},{}^{}", g.rx, g.tx, e))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses the canonical text form produced by [`to_token_string`].
    ///
    /// [`to_token_string`]: ExponentVector::to_token_string
    pub fn parse_tokens(line: &str) -> Result<Self> {
        let line = line.trim();
        if line == "1" {
            return Ok(ExponentVector::one());
        }
        let mut v = ExponentVector::one();
        for tok in line.split_whitespace() {
            let (pair, exp) = tok
                .split_once('^')
                .ok_or_else(|| Error::Parse(format!("bad monomial token `{tok}`")))?;
            let (rx, tx) = pair
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad gain token `{pair}`")))?;
            let rx: u8 = rx
                .parse()
                .map_err(|_| Error::Parse(format!("bad rx index `{rx}`")))?;
            let tx: u8 = tx
                .parse()
                .map_err(|_| Error::Parse(format!("bad tx index `{tx}`")))?;
            let exp: u8 = exp
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent `{exp}`")))?;
            v.add_assign(GainId { rx, tx }, exp)?;
        }
        Ok(v)
    }
}

impl Ord for ExponentVector {
    /// Lexicographic order over the full exponent vector in gain order,
    /// treating absent gains as exponent 0. This matches the order in which
    /// box enumerators emit monomials, so generator output is born sorted.
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut a, mut b) = (self.entries.iter(), other.entries.iter());
        let (mut x, mut y) = (a.next(), b.next());
        loop {
            match (x, y) {
                (None, None) => return Ordering::Equal,
                // The side that still has entries has a nonzero exponent at a
                // position where the other side is all zeros.
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(ga, ea)), Some(&(gb, eb))) => match ga.cmp(&gb) {
                    // `self` has a nonzero exponent on an earlier gain.
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(&eb) {
                        Ordering::Equal => {
                            x = a.next();
                            y = b.next();
                        }
                        ord => return ord,
                    },
                },
            }
        }
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_token_string())
    }
}
