//! Cellular uplink scheme: K cells with M users each; all cross-cell
//! interference aligns into one shared target set at every base station.

use crate::alignment::{
    uplink_interference_count, uplink_interference_directions_with_cap, uplink_transmit_count,
    uplink_transmit_directions_with_cap, uplink_tx_index, verify_alignment, verify_separability,
    GainId,
};
use crate::channel::SchemeKind;
use crate::error::Result;
use crate::scheme::{AlignmentScheme, DirectionsReport, RoleCount};
use crate::signaling::Stream;

/// The monomial scheme for the K-cell, M-users-per-cell uplink.
#[derive(Clone, Copy, Debug)]
pub struct UplinkScheme {
    k: usize,
    m: usize,
    n: usize,
    cap: u64,
}

impl UplinkScheme {
    pub fn new(k: usize, m: usize, n: usize, cap: u64) -> Result<Self> {
        uplink_transmit_directions_with_cap(k, m, n, 0, 0, cap)?;
        Ok(UplinkScheme { k, m, n, cap })
    }
}

impl AlignmentScheme for UplinkScheme {
    fn name(&self) -> &'static str {
        "uplink"
    }

    fn kind(&self) -> SchemeKind {
        SchemeKind::Uplink
    }

    fn dims(&self) -> (usize, usize) {
        (self.k, self.m)
    }

    fn streams(&self) -> Result<Vec<Stream>> {
        let mut out = Vec::new();
        for cell in 0..self.k {
            for user in 0..self.m {
                let dirs = uplink_transmit_directions_with_cap(
                    self.k, self.m, self.n, cell, user, self.cap,
                )?;
                let tx = uplink_tx_index(cell, self.m, user);
                for d in dirs.iter() {
                    out.push(Stream {
                        id: out.len(),
                        tx,
                        rx: cell,
                        direction: d.clone(),
                    });
                }
            }
        }
        Ok(out)
    }

    fn directions_report(&self) -> Result<DirectionsReport> {
        let mut report = DirectionsReport::default();
        let target = uplink_interference_directions_with_cap(self.k, self.m, self.n, self.cap)?;
        report.roles.push(RoleCount {
            label: "interference target".into(),
            count: target.len() as u128,
            closed_form: Some(uplink_interference_count(self.k, self.m, self.n)?),
        });
        let tx_closed = uplink_transmit_count(self.k, self.m, self.n)?;
        for cell in 0..self.k {
            for user in 0..self.m {
                let t = uplink_transmit_directions_with_cap(
                    self.k, self.m, self.n, cell, user, self.cap,
                )?;
                report.roles.push(RoleCount {
                    label: format!("transmit cell {cell} user {user}"),
                    count: t.len() as u128,
                    closed_form: Some(tx_closed),
                });
                let tx = uplink_tx_index(cell, self.m, user);
                for rx in (0..self.k).filter(|&rx| rx != cell) {
                    let arrived = t.shifted(GainId::new(rx, tx))?;
                    let rep = verify_alignment(&arrived, &target);
                    report.containment.push((
                        format!("cell {cell} user {user} at rx {rx}"),
                        rep.contained,
                    ));
                }
                let intended = t.shifted(GainId::new(cell, tx))?;
                let sep = verify_separability(&intended, &target);
                report.separability.push((
                    format!("rx {cell} user {user} intended vs interference"),
                    sep.disjoint,
                ));
            }
        }
        Ok(report)
    }
}
