//! Two-user X channel with hand-picked single directions: each of the four
//! messages rides one cross gain so that, at either receiver, the two
//! unwanted messages land on the same monomial and collapse to one direction.

use crate::alignment::{verify_alignment, verify_separability, DirectionSet, ExponentVector, GainId};
use crate::channel::SchemeKind;
use crate::error::Result;
use crate::scheme::{AlignmentScheme, DirectionsReport, RoleCount};
use crate::signaling::Stream;

/// The one-direction-per-message scheme for the 2x2 X channel.
#[derive(Clone, Copy, Debug, Default)]
pub struct TwoUserXScheme;

impl TwoUserXScheme {
    pub fn new() -> Self {
        TwoUserXScheme
    }
}

fn message_direction(r: usize, i: usize) -> ExponentVector {
    // The message from transmitter i to receiver r rides the cross gain
    // h[1-r][1-i], i.e. the link it does NOT traverse toward either receiver.
    ExponentVector::single(GainId::new(1 - r, 1 - i), 1)
}

impl AlignmentScheme for TwoUserXScheme {
    fn name(&self) -> &'static str {
        "two-user-x"
    }

    fn kind(&self) -> SchemeKind {
        SchemeKind::X
    }

    fn dims(&self) -> (usize, usize) {
        (2, 2)
    }

    fn streams(&self) -> Result<Vec<Stream>> {
        let mut out = Vec::new();
        for r in 0..2 {
            for i in 0..2 {
                out.push(Stream {
                    id: out.len(),
                    tx: i,
                    rx: r,
                    direction: message_direction(r, i),
                });
            }
        }
        Ok(out)
    }

    fn directions_report(&self) -> Result<DirectionsReport> {
        let mut report = DirectionsReport::default();
        for r in 0..2 {
            for i in 0..2 {
                report.roles.push(RoleCount {
                    label: format!("transmit message ({r},{i})"),
                    count: 1,
                    closed_form: Some(1),
                });
            }
        }
        for rx in 0..2 {
            let other = 1 - rx;
            // Messages for the other receiver, as they arrive at this one.
            let arrived: Vec<DirectionSet> = (0..2)
                .map(|i| {
                    let d = message_direction(other, i).shifted(GainId::new(rx, i))?;
                    Ok(DirectionSet::from_vec(vec![d]))
                })
                .collect::<Result<_>>()?;
            // Alignment here means both unwanted messages land on the same
            // monomial, so each is contained in the other.
            let rep = verify_alignment(&arrived[0], &arrived[1]);
            report
                .containment
                .push((format!("unwanted messages align at rx {rx}"), rep.contained));
            let intended: Vec<ExponentVector> = (0..2)
                .map(|i| message_direction(rx, i).shifted(GainId::new(rx, i)))
                .collect::<Result<_>>()?;
            let sep = verify_separability(&DirectionSet::from_vec(intended), &arrived[0]);
            report
                .separability
                .push((format!("rx {rx} intended vs interference"), sep.disjoint));
        }
        Ok(report)
    }
}
