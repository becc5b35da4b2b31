//! Three-user scheme over the standard-form channel: the realization is
//! reduced so that all randomness sits in a single generator gain G0, and
//! every user signals on powers of G0.

use crate::alignment::{
    threeuser_case2_directions, verify_alignment, verify_separability, DirectionSet, G0_GAIN,
    GainId,
};
use crate::channel::{standard_channel_matrix, standard_form_3user, ChannelRealization, SchemeKind};
use crate::error::Result;
use crate::scheme::{AlignmentScheme, DirectionsReport, RoleCount};
use crate::signaling::Stream;

/// The power-of-G0 scheme for the three-user interference channel in
/// standard form.
#[derive(Clone, Copy, Debug)]
pub struct ThreeUserScheme {
    n: usize,
}

impl ThreeUserScheme {
    pub fn new(n: usize) -> Result<Self> {
        threeuser_case2_directions(n)?;
        Ok(ThreeUserScheme { n })
    }
}

impl AlignmentScheme for ThreeUserScheme {
    fn name(&self) -> &'static str {
        "three-user"
    }

    fn kind(&self) -> SchemeKind {
        SchemeKind::Gic
    }

    fn dims(&self) -> (usize, usize) {
        (3, 1)
    }

    fn streams(&self) -> Result<Vec<Stream>> {
        let (t1, t2, t3) = threeuser_case2_directions(self.n)?;
        let mut out = Vec::new();
        for (user, dirs) in [t1, t2, t3].iter().enumerate() {
            for d in dirs.iter() {
                out.push(Stream {
                    id: out.len(),
                    tx: user,
                    rx: user,
                    direction: d.clone(),
                });
            }
        }
        Ok(out)
    }

    fn prepare_channel(&self, h: ChannelRealization) -> Result<ChannelRealization> {
        let sf = standard_form_3user(&h)?;
        standard_channel_matrix(&sf, h.seed)
    }

    fn directions_report(&self) -> Result<DirectionsReport> {
        let n = self.n as u8;
        let (t1, t2, t3) = threeuser_case2_directions(self.n)?;
        let mut report = DirectionsReport::default();
        for (label, set, want) in [
            ("transmit user 0", &t1, self.n as u128 + 1),
            ("transmit user 1", &t2, self.n as u128),
            ("transmit user 2", &t3, self.n as u128),
        ] {
            report.roles.push(RoleCount {
                label: label.into(),
                count: set.len() as u128,
                closed_form: Some(want),
            });
        }
        // In the standard matrix [[G1,1,1],[1,G2,1],[1,G0,G3]] cross gains
        // are 1 except h[2][1] = G0, so interference arrives unshifted except
        // for user 1's signal at receiver 2.
        let budget = DirectionSet::enumerate_box(&[(G0_GAIN, (0, n))])?;
        let short_budget = DirectionSet::enumerate_box(&[(G0_GAIN, (0, n - 1))])?;
        let interference = [
            t2.union(&t3),              // at rx 0
            t1.union(&t3),              // at rx 1
            t1.union(&t2.shifted(G0_GAIN)?), // at rx 2
        ];
        for (rx, seen) in interference.iter().enumerate() {
            let target = if rx == 0 { &short_budget } else { &budget };
            let rep = verify_alignment(seen, target);
            report
                .containment
                .push((format!("interference at rx {rx}"), rep.contained));
        }
        for (rx, (own, seen)) in [t1, t2, t3].iter().zip(interference.iter()).enumerate() {
            let intended = own.shifted(GainId::new(rx, rx))?;
            let sep = verify_separability(&intended, seen);
            report
                .separability
                .push((format!("rx {rx} intended vs interference"), sep.disjoint));
        }
        Ok(report)
    }
}
