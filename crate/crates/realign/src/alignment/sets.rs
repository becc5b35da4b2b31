//! Ordered sets of direction monomials and the box enumerator behind all
//! scheme generators.

use crate::alignment::exponent::{ExponentVector, GainId};
use crate::error::{Error, Result};

/// Default cap on enumerated vectors; direction counts grow like
/// `(n+1)^(K(K-1))`, so fail loudly instead of exhausting memory.
pub const DEFAULT_ENUM_CAP: u64 = 10_000_000;

/// Per-gain exponent range of a box-shaped set.
pub type BoxBounds = Vec<(GainId, (u8, u8))>;

/// Number of monomials in a box, before enumerating it.
pub fn box_cardinality(bounds: &[(GainId, (u8, u8))]) -> u128 {
    bounds
        .iter()
        .map(|&(_, (lo, hi))| (hi - lo) as u128 + 1)
        .product()
}

/// A duplicate-free, ascending-sorted set of direction monomials.
///
/// Sets produced by box enumeration additionally carry their per-gain
/// exponent ranges, which turns membership and subset tests into O(support)
/// range comparisons; the range metadata is an exact description of the set,
/// not an approximation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectionSet {
    dirs: Vec<ExponentVector>,
    bounds: Option<BoxBounds>,
}

impl DirectionSet {
    /// Empty set.
    pub fn empty() -> Self {
        DirectionSet {
            dirs: Vec::new(),
            bounds: None,
        }
    }

    /// Builds a set from arbitrary monomials: sorts and deduplicates.
    pub fn from_vec(mut dirs: Vec<ExponentVector>) -> Self {
        dirs.sort_unstable();
        dirs.dedup();
        DirectionSet { dirs, bounds: None }
    }

    /// Enumerates every monomial whose exponent on each listed gain lies in
    /// the given inclusive range (and is zero on all other gains), using the
    /// default cap.
    pub fn enumerate_box(bounds: &[(GainId, (u8, u8))]) -> Result<Self> {
        Self::enumerate_box_with_cap(bounds, DEFAULT_ENUM_CAP)
    }

    /// [`enumerate_box`](Self::enumerate_box) with an explicit cap.
    pub fn enumerate_box_with_cap(bounds: &[(GainId, (u8, u8))], cap: u64) -> Result<Self> {
        let mut bounds: BoxBounds = bounds.to_vec();
        bounds.sort_unstable_by_key(|&(g, _)| g);
        for w in bounds.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidDims(format!(
                    "duplicate gain {:?} in box bounds",
                    w[0].0
                )));
            }
        }
        for &(g, (lo, hi)) in &bounds {
            if lo > hi {
                return Err(Error::InvalidDims(format!(
                    "empty range {lo}..={hi} for gain {g:?}"
                )));
            }
        }
        let needed = box_cardinality(&bounds);
        if needed > cap as u128 {
            return Err(Error::CapExceeded { needed, cap });
        }

        let mut dirs = Vec::with_capacity(needed as usize);
        let mut exps: Vec<u8> = bounds.iter().map(|&(_, (lo, _))| lo).collect();
        loop {
            dirs.push(
                ExponentVector::from_pairs(
                    bounds
                        .iter()
                        .zip(&exps)
                        .map(|(&(g, _), &e)| (g, e))
                        .filter(|&(_, e)| e > 0),
                )
                .expect("box exponents cannot overflow"),
            );
            // Odometer: last gain is the fastest digit, so emission order is
            // exactly the ascending `ExponentVector` order.
            let mut i = bounds.len();
            loop {
                if i == 0 {
                    return Ok(DirectionSet {
                        dirs,
                        bounds: Some(bounds),
                    });
                }
                i -= 1;
                if exps[i] < bounds[i].1 .1 {
                    exps[i] += 1;
                    break;
                }
                exps[i] = bounds[i].1 .0;
            }
        }
    }

    /// Exact per-gain ranges when this set is a box.
    pub fn box_bounds(&self) -> Option<&BoxBounds> {
        self.bounds.as_ref()
    }

    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &ExponentVector> {
        self.dirs.iter()
    }

    pub fn as_slice(&self) -> &[ExponentVector] {
        &self.dirs
    }

    /// Exact membership test.
    pub fn contains(&self, t: &ExponentVector) -> bool {
        if let Some(bounds) = &self.bounds {
            return box_contains(bounds, t);
        }
        self.dirs.binary_search(t).is_ok()
    }

    /// Exact subset test (`self` within `other`).
    pub fn is_subset_of(&self, other: &DirectionSet) -> bool {
        if let (Some(a), Some(b)) = (&self.bounds, &other.bounds) {
            return box_subset(a, b);
        }
        if other.bounds.is_some() {
            return self.dirs.iter().all(|t| other.contains(t));
        }
        // Both materialized and sorted: single merge pass.
        let mut j = 0;
        for t in &self.dirs {
            while j < other.dirs.len() && other.dirs[j] < *t {
                j += 1;
            }
            if j >= other.dirs.len() || other.dirs[j] != *t {
                return false;
            }
        }
        true
    }

    /// Every monomial multiplied by `h[g]`; cardinality is preserved.
    pub fn shifted(&self, g: GainId) -> Result<Self> {
        let dirs = self
            .dirs
            .iter()
            .map(|t| t.shifted(g))
            .collect::<Result<Vec<_>>>()?;
        // A common shift adds 1 to the same coordinate of every vector, so
        // the ascending order is preserved.
        let bounds = match &self.bounds {
            Some(b) => {
                let mut b = b.clone();
                match b.binary_search_by_key(&g, |&(k, _)| k) {
                    Ok(i) => {
                        let (lo, hi) = b[i].1;
                        let hi = hi.checked_add(1).ok_or(Error::Overflow("box shift"))?;
                        b[i].1 = (lo + 1, hi);
                    }
                    Err(i) => b.insert(i, (g, (1, 1))),
                }
                Some(b)
            }
            None => None,
        };
        Ok(DirectionSet { dirs, bounds })
    }

    /// Set union; the result is materialized (no box metadata).
    pub fn union(&self, other: &DirectionSet) -> Self {
        let mut dirs = Vec::with_capacity(self.len() + other.len());
        let (a, b) = (&self.dirs, &other.dirs);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    dirs.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    dirs.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    dirs.push(a[i].clone());
                    i += 1;
                    j += 1;
                }
            }
        }
        dirs.extend_from_slice(&a[i..]);
        dirs.extend_from_slice(&b[j..]);
        DirectionSet { dirs, bounds: None }
    }

    /// Line-oriented text form: one monomial per line, canonical order.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for t in &self.dirs {
            s.push_str(&t.to_token_string());
            s.push('\n');
        }
        s
    }

    /// Parses the output of [`to_text`](Self::to_text); blank lines and
    /// `#` comments are ignored.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut dirs = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            dirs.push(ExponentVector::parse_tokens(line)?);
        }
        Ok(DirectionSet::from_vec(dirs))
    }
}

/// Exact box membership: every exponent of `t` within its range and every
/// box gain with a positive lower bound present in `t`.
fn box_contains(bounds: &[(GainId, (u8, u8))], t: &ExponentVector) -> bool {
    let mut entries = t.iter().peekable();
    for &(g, (lo, hi)) in bounds {
        // Any gain of `t` preceding the next box gain is outside the box.
        while let Some(&(gt, _)) = entries.peek() {
            if gt < g {
                return false;
            }
            break;
        }
        let e = match entries.peek() {
            Some(&(gt, e)) if gt == g => {
                entries.next();
                e
            }
            _ => 0,
        };
        if e < lo || e > hi {
            return false;
        }
    }
    entries.next().is_none()
}

/// Exact box-in-box test: per-gain range inclusion over the union support,
/// with absent gains meaning the degenerate range `0..=0`.
fn box_subset(a: &[(GainId, (u8, u8))], b: &[(GainId, (u8, u8))]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ga = a.get(i).map(|&(g, _)| g);
        let gb = b.get(j).map(|&(g, _)| g);
        match (ga, gb) {
            (Some(g1), Some(g2)) if g1 == g2 => {
                let (lo_a, hi_a) = a[i].1;
                let (lo_b, hi_b) = b[j].1;
                if lo_a < lo_b || hi_a > hi_b {
                    return false;
                }
                i += 1;
                j += 1;
            }
            // Gain only in `a`: target range is {0}.
            (Some(g1), _) if gb.map_or(true, |g2| g1 < g2) => {
                if a[i].1 .1 > 0 {
                    return false;
                }
                i += 1;
            }
            // Gain only in `b`: source exponent is 0, must be allowed.
            _ => {
                if b[j].1 .0 > 0 {
                    return false;
                }
                j += 1;
            }
        }
    }
    true
}
