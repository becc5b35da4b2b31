//! Multiple-access channel scheme: M users share one receiver, each sending
//! a single stream on the unit direction. There is no interference to align;
//! separation comes entirely from the distinct channel gains.

use crate::alignment::ExponentVector;
use crate::channel::SchemeKind;
use crate::error::{Error, Result};
use crate::scheme::{AlignmentScheme, DirectionsReport, RoleCount};
use crate::signaling::Stream;

/// The single-stream-per-user scheme for the M-user multiple-access channel.
#[derive(Clone, Copy, Debug)]
pub struct MacScheme {
    m: usize,
}

impl MacScheme {
    pub fn new(m: usize) -> Result<Self> {
        if m < 1 || m > 250 {
            return Err(Error::InvalidDims(format!(
                "MAC needs 1 <= M <= 250 users, got M={m}"
            )));
        }
        Ok(MacScheme { m })
    }
}

impl AlignmentScheme for MacScheme {
    fn name(&self) -> &'static str {
        "mac"
    }

    fn kind(&self) -> SchemeKind {
        SchemeKind::Uplink
    }

    fn dims(&self) -> (usize, usize) {
        (1, self.m)
    }

    fn streams(&self) -> Result<Vec<Stream>> {
        Ok((0..self.m)
            .map(|user| Stream {
                id: user,
                tx: user,
                rx: 0,
                direction: ExponentVector::one(),
            })
            .collect())
    }

    fn directions_report(&self) -> Result<DirectionsReport> {
        let mut report = DirectionsReport::default();
        for user in 0..self.m {
            report.roles.push(RoleCount {
                label: format!("transmit user {user}"),
                count: 1,
                closed_form: Some(1),
            });
        }
        // A single receiver wants every stream, so there is nothing to align
        // and nothing to separate symbolically.
        Ok(report)
    }
}
