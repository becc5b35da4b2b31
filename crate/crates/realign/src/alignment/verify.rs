//! Containment (alignment) and disjointness (separability) verdicts over
//! direction sets, plus alignment efficiency.

use num_rational::Ratio;

use crate::alignment::exponent::ExponentVector;
use crate::alignment::sets::DirectionSet;
use crate::error::{Error, Result};

/// Outcome of checking that a received set lies inside an alignment target.
#[derive(Clone, Debug, PartialEq)]
pub struct AlignmentReport {
    /// True iff every received direction is in the target set.
    pub contained: bool,
    /// Received directions outside the target (empty iff `contained`).
    pub violating_directions: Vec<ExponentVector>,
    /// Number of received directions (equals the transmit count, since a
    /// common gain shift is injective).
    pub transmit_count: usize,
    /// Size of the target set.
    pub received_count: usize,
    /// Alignment efficiency `L_t / L_r`; `None` when the target is empty.
    pub efficiency: Option<Ratio<u64>>,
}

/// Checks `received ⊆ target` by exact monomial equality.
pub fn verify_alignment(received: &DirectionSet, target: &DirectionSet) -> AlignmentReport {
    let contained = received.is_subset_of(target);
    let violating_directions = if contained {
        Vec::new()
    } else {
        received
            .iter()
            .filter(|t| !target.contains(t))
            .cloned()
            .collect()
    };
    AlignmentReport {
        contained,
        violating_directions,
        transmit_count: received.len(),
        received_count: target.len(),
        efficiency: alignment_efficiency(received.len(), target.len()).ok(),
    }
}

/// Outcome of checking that intended and interference directions never
/// coincide.
#[derive(Clone, Debug, PartialEq)]
pub struct SeparabilityReport {
    /// True iff the two sets share no monomial.
    pub disjoint: bool,
    /// The shared monomials, if any.
    pub collisions: Vec<ExponentVector>,
}

/// Checks that two direction sets are disjoint as exact monomials.
pub fn verify_separability(
    intended: &DirectionSet,
    interference: &DirectionSet,
) -> SeparabilityReport {
    // Walk the smaller set against the other's membership test, which is
    // O(support) for box-backed sets.
    let (probe, base) = if intended.len() <= interference.len() {
        (intended, interference)
    } else {
        (interference, intended)
    };
    let collisions: Vec<ExponentVector> = probe
        .iter()
        .filter(|t| base.contains(t))
        .cloned()
        .collect();
    SeparabilityReport {
        disjoint: collisions.is_empty(),
        collisions,
    }
}

/// Alignment efficiency `η = L_t / L_r` as an exact rational.
pub fn alignment_efficiency(l_t: usize, l_r: usize) -> Result<Ratio<u64>> {
    if l_t == 0 || l_r == 0 {
        return Err(Error::InvalidDims(format!(
            "alignment efficiency needs positive counts, got {l_t}/{l_r}"
        )));
    }
    Ok(Ratio::new(l_t as u64, l_r as u64))
}
