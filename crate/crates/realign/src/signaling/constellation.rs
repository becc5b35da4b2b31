//! Received-constellation enumeration, brute-force minimum distance, and
//! the nearest-point hard decoder.

use crate::error::{Error, Result};
use crate::signaling::{ConstellationSpec, ReceiverLayout};

/// Default cap on enumerated constellation points.
pub const DEFAULT_POINT_CAP: u64 = 10_000_000;

/// The finite set of noiseless outputs one receiver can observe, sorted,
/// with the intended-symbol tuple behind every point.
#[derive(Clone, Debug)]
pub struct ReceivedConstellation {
    /// Strictly increasing point values.
    points: Vec<f64>,
    /// Flattened intended tuples, `stride` symbols per point, ordered like
    /// the layout's intended list.
    tuples: Vec<i64>,
    stride: usize,
    /// Minimum gap between adjacent points.
    d_min: f64,
}

impl ReceivedConstellation {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn d_min(&self) -> f64 {
        self.d_min
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// Intended tuple of point `i`.
    pub fn tuple(&self, i: usize) -> &[i64] {
        &self.tuples[i * self.stride..(i + 1) * self.stride]
    }

    /// Number of intended symbols per tuple.
    pub fn stride(&self) -> usize {
        self.stride
    }
}

/// Enumerates the noiseless received constellation of a layout.
///
/// Intended symbols range over `{-Q..Q}`; the symbol on a fold-`f`
/// interference direction is a sum of `f` stream symbols and ranges over
/// `{-fQ..fQ}`. Points closer than `1e-9 * A` are merged when they carry the
/// same intended tuple and flag the layout degenerate otherwise.
pub fn build_received_constellation(
    layout: &ReceiverLayout,
    spec: &ConstellationSpec,
    cap: u64,
) -> Result<ReceivedConstellation> {
    let l = layout.intended.len();
    if l == 0 {
        return Err(Error::InvalidSpec(format!(
            "receiver {} has no intended stream",
            layout.rx
        )));
    }
    if layout.total_directions() > spec.m as usize {
        return Err(Error::InvalidSpec(format!(
            "receiver {} sees {} directions but m = {}",
            layout.rx,
            layout.total_directions(),
            spec.m
        )));
    }
    let q = spec.q;
    // Per-coordinate symbol ranges: (direction value, half-width).
    let mut coords: Vec<(f64, i64)> = layout
        .intended
        .iter()
        .map(|d| (d.value, q as i64))
        .collect();
    coords.extend(
        layout
            .interference
            .iter()
            .map(|d| (d.value, (d.fold as u64 * q) as i64)),
    );
    let count: u128 = coords
        .iter()
        .try_fold(1u128, |acc, &(_, hw)| {
            acc.checked_mul(2 * hw as u128 + 1)
        })
        .ok_or(Error::Overflow("received constellation size"))?;
    if count > cap as u128 {
        return Err(Error::CapExceeded { needed: count, cap });
    }
    let count = count as usize;

    // Odometer over all symbol combinations with an incrementally
    // maintained inner product.
    let mut symbols: Vec<i64> = coords.iter().map(|&(_, hw)| -hw).collect();
    let mut partial: f64 = coords.iter().map(|&(t, hw)| t * (-hw) as f64).sum();
    let mut values = Vec::with_capacity(count);
    let mut tuples: Vec<i64> = Vec::with_capacity(count * l);
    loop {
        values.push(spec.a * partial);
        tuples.extend_from_slice(&symbols[..l]);
        let mut i = coords.len();
        loop {
            if i == 0 {
                return finish_constellation(values, tuples, l, spec);
            }
            i -= 1;
            if symbols[i] < coords[i].1 {
                symbols[i] += 1;
                partial += coords[i].0;
                break;
            }
            // Reset this digit; recompute its contribution exactly to avoid
            // drift from repeated subtraction.
            partial -= coords[i].0 * (symbols[i] + coords[i].1) as f64;
            symbols[i] = -coords[i].1;
        }
    }
}

fn finish_constellation(
    values: Vec<f64>,
    tuples: Vec<i64>,
    stride: usize,
    spec: &ConstellationSpec,
) -> Result<ReceivedConstellation> {
    let n = values.len();
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_unstable_by(|&i, &j| {
        values[i as usize]
            .partial_cmp(&values[j as usize])
            .expect("finite constellation values")
    });

    let merge_tol = 1e-9 * spec.a;
    let mut points = Vec::with_capacity(n);
    let mut out_tuples: Vec<i64> = Vec::with_capacity(n * stride);
    let mut d_min = f64::INFINITY;
    for &idx in &order {
        let idx = idx as usize;
        let v = values[idx];
        let t = &tuples[idx * stride..(idx + 1) * stride];
        if let Some(&last) = points.last() {
            let gap = v - last;
            if gap <= merge_tol {
                let last_tuple = &out_tuples[out_tuples.len() - stride..];
                if last_tuple == t {
                    continue; // same intended tuple: one point
                }
                return Err(Error::Degenerate(format!(
                    "two intended tuples within {merge_tol:.3e} at receiver point {v}"
                )));
            }
            d_min = d_min.min(gap);
        }
        points.push(v);
        out_tuples.extend_from_slice(t);
    }
    Ok(ReceivedConstellation {
        points,
        tuples: out_tuples,
        stride,
        d_min,
    })
}

/// Exact brute-force minimum distance: the minimum of `A * |sum_l T_l d_l|`
/// over nonzero integer difference vectors with `|d_l| <= 2 f_l Q`.
pub fn min_distance_direct(
    directions: &[f64],
    folds: &[u64],
    q: u64,
    a: f64,
    cap: u64,
) -> Result<f64> {
    if directions.is_empty() || directions.len() != folds.len() {
        return Err(Error::InvalidSpec(
            "need matching non-empty directions and fold bounds".into(),
        ));
    }
    if q < 1 || folds.iter().any(|&f| f < 1) {
        return Err(Error::InvalidSpec("need Q >= 1 and fold bounds >= 1".into()));
    }
    let half: Vec<i64> = folds.iter().map(|&f| (2 * f * q) as i64).collect();
    let count: u128 = half
        .iter()
        .try_fold(1u128, |acc, &hw| acc.checked_mul(2 * hw as u128 + 1))
        .ok_or(Error::Overflow("difference search size"))?;
    if count > cap as u128 {
        return Err(Error::CapExceeded { needed: count, cap });
    }

    // Depth-first over difference vectors with partial sums; only the
    // half-space whose leading nonzero coordinate is positive is visited.
    fn descend(
        dirs: &[f64],
        half: &[i64],
        depth: usize,
        sum: f64,
        all_zero: bool,
        best: &mut f64,
    ) {
        if depth == dirs.len() {
            if !all_zero {
                *best = best.min(sum.abs());
            }
            return;
        }
        let lo = if all_zero { 0 } else { -half[depth] };
        for d in lo..=half[depth] {
            descend(
                dirs,
                half,
                depth + 1,
                sum + dirs[depth] * d as f64,
                all_zero && d == 0,
                best,
            );
        }
    }
    let mut best = f64::INFINITY;
    descend(directions, &half, 0, 0.0, true, &mut best);
    Ok(a * best)
}

/// Maps a received value to the intended tuple of the nearest constellation
/// point; ties break toward the smaller point value, values beyond the ends
/// clamp to the extreme points.
pub fn hard_decode<'a>(rc: &'a ReceivedConstellation, y: f64) -> &'a [i64] {
    debug_assert!(!rc.is_empty());
    let points = rc.points();
    let idx = points.partition_point(|&p| p < y);
    let best = if idx == 0 {
        0
    } else if idx == points.len() {
        points.len() - 1
    } else {
        // Distance to the first point >= y vs the last point < y; the
        // strict comparison sends exact ties to the smaller value.
        if (points[idx] - y) < (y - points[idx - 1]) {
            idx
        } else {
            idx - 1
        }
    };
    rc.tuple(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alignment::ExponentVector;
    use crate::signaling::{derive_params, IntendedDirection, InterferenceDirection};

    /// Hand-built layout over already-evaluated directions.
    fn layout(intended: &[f64], interference: &[(f64, u32)]) -> ReceiverLayout {
        ReceiverLayout {
            rx: 0,
            intended: intended
                .iter()
                .enumerate()
                .map(|(i, &value)| IntendedDirection {
                    monomial: ExponentVector::one(),
                    value,
                    stream: i,
                })
                .collect(),
            interference: interference
                .iter()
                .map(|&(value, fold)| InterferenceDirection {
                    monomial: ExponentVector::one(),
                    value,
                    fold,
                    streams: Vec::new(),
                })
                .collect(),
            contains_unit: false,
        }
    }

    fn spec_with(q_target: f64, m: u32) -> ConstellationSpec {
        // gamma = Q, P = 1, eps = 0 gives Q = floor(gamma), A = 1/Q * 1.
        let mut s = derive_params(1.0, q_target, 0.0, m, &[vec![1.0]]).unwrap();
        s.a = 1.0; // unit scale for hand checks
        s
    }

    #[test]
    fn single_stream_integer_grid() {
        let rc =
            build_received_constellation(&layout(&[1.0], &[]), &spec_with(2.0, 1), 1000).unwrap();
        assert_eq!(rc.points(), &[-2.0, -1.0, 0.0, 1.0, 2.0]);
        assert_eq!(rc.d_min(), 1.0);
        assert_eq!(rc.tuple(0), &[-2]);
        assert_eq!(rc.tuple(4), &[2]);
    }

    #[test]
    fn q1_single_stream() {
        let rc =
            build_received_constellation(&layout(&[1.0], &[]), &spec_with(1.0, 1), 1000).unwrap();
        assert_eq!(rc.len(), 3);
        assert_eq!(rc.d_min(), 1.0);
    }

    #[test]
    fn mac_constellation_matches_direct_oracle() {
        let dirs = [1.0, 2f64.sqrt(), 3f64.sqrt()];
        let spec = spec_with(2.0, 3);
        let rc = build_received_constellation(&layout(&dirs, &[]), &spec, 1_000_000).unwrap();
        let direct = min_distance_direct(&dirs, &[1, 1, 1], 2, 1.0, 1_000_000).unwrap();
        assert!((rc.d_min() - direct).abs() <= 1e-12 * direct);
    }

    #[test]
    fn folded_interference_range() {
        // One interference direction with fold 2 spans {-2Q..2Q}; the
        // intended direction at 20 keeps 20u + w collision-free (|w| <= 12).
        let spec = spec_with(3.0, 2);
        let rc =
            build_received_constellation(&layout(&[20.0], &[(1.0, 2)]), &spec, 10_000).unwrap();
        assert_eq!(rc.len(), 7 * 13);
    }

    #[test]
    fn direct_min_distance_examples() {
        // Single unit direction: d_min = A.
        assert_eq!(min_distance_direct(&[1.0], &[1], 5, 2.5, 1000).unwrap(), 2.5);
        // {1, sqrt(2)}, Q=3: best approximation in the 13x13 box is 3-2*sqrt(2).
        let d = min_distance_direct(&[1.0, 2f64.sqrt()], &[1, 1], 3, 1.0, 100_000).unwrap();
        assert!((d - (3.0 - 2.0 * 2f64.sqrt())).abs() < 1e-12);
        // Homogeneity in A.
        let d2 = min_distance_direct(&[1.0, 2f64.sqrt()], &[1, 1], 3, 7.0, 100_000).unwrap();
        assert!((d2 - 7.0 * d).abs() < 1e-12);
    }

    #[test]
    fn caps_are_enforced() {
        assert!(matches!(
            min_distance_direct(&[1.0, 1.5, 2.5], &[1, 1, 1], 50, 1.0, 1000),
            Err(Error::CapExceeded { .. })
        ));
        let spec = spec_with(50.0, 2);
        assert!(matches!(
            build_received_constellation(&layout(&[1.0, 1.5], &[]), &spec, 1000),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn degenerate_tuple_collision_detected() {
        // Two intended streams on rationally dependent directions: +1 on the
        // first equals +2 on the second.
        let spec = spec_with(2.0, 2);
        let err =
            build_received_constellation(&layout(&[2.0, 1.0], &[]), &spec, 10_000).unwrap_err();
        assert!(matches!(err, Error::Degenerate(_)));
    }

    #[test]
    fn same_tuple_duplicates_merge() {
        // Two interference directions that collide numerically produce
        // duplicate points with identical intended tuples: merged, no error.
        let spec = spec_with(1.0, 3);
        let rc = build_received_constellation(&layout(&[10.0], &[(1.0, 1), (1.0, 1)]), &spec, 1000);
        let rc = rc.unwrap();
        // u' in {-2..2} after merging the two unit interference axes.
        assert_eq!(rc.len(), 3 * 5);
    }

    #[test]
    fn decode_nearest_and_clamp() {
        let spec = spec_with(2.0, 1);
        let rc = build_received_constellation(&layout(&[1.0], &[]), &spec, 1000).unwrap();
        assert_eq!(hard_decode(&rc, 1.0), &[1]);
        assert_eq!(hard_decode(&rc, 1.4), &[1]);
        assert_eq!(hard_decode(&rc, 1.6), &[2]);
        // Tie at 1.5 goes to the smaller point.
        assert_eq!(hard_decode(&rc, 1.5), &[1]);
        // Clamping.
        assert_eq!(hard_decode(&rc, 99.0), &[2]);
        assert_eq!(hard_decode(&rc, -99.0), &[-2]);
    }
}
