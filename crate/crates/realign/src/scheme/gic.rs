//! K-user interference channel scheme: every user sends one stream per
//! monomial direction; all cross links align into one shared target set.

use crate::alignment::{
    gic_interference_count, gic_interference_directions_with_cap, gic_transmit_count,
    gic_transmit_directions_with_cap, verify_alignment, verify_separability, GainId,
};
use crate::channel::SchemeKind;
use crate::error::Result;
use crate::scheme::{AlignmentScheme, DirectionsReport, RoleCount};
use crate::signaling::Stream;

/// The monomial scheme for the K-user single-antenna interference channel.
#[derive(Clone, Copy, Debug)]
pub struct GicScheme {
    k: usize,
    n: usize,
    cap: u64,
}

impl GicScheme {
    pub fn new(k: usize, n: usize, cap: u64) -> Result<Self> {
        // Validate dimensions eagerly by generating the smallest set.
        gic_transmit_directions_with_cap(k, n, 0, cap)?;
        Ok(GicScheme { k, n, cap })
    }
}

impl AlignmentScheme for GicScheme {
    fn name(&self) -> &'static str {
        "gic"
    }

    fn kind(&self) -> SchemeKind {
        SchemeKind::Gic
    }

    fn dims(&self) -> (usize, usize) {
        (self.k, 1)
    }

    fn streams(&self) -> Result<Vec<Stream>> {
        let mut out = Vec::new();
        for user in 0..self.k {
            let dirs = gic_transmit_directions_with_cap(self.k, self.n, user, self.cap)?;
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

    fn directions_report(&self) -> Result<DirectionsReport> {
        let mut report = DirectionsReport::default();
        let target = gic_interference_directions_with_cap(self.k, self.n, self.cap)?;
        report.roles.push(RoleCount {
            label: "interference target".into(),
            count: target.len() as u128,
            closed_form: Some(gic_interference_count(self.k, self.n)?),
        });
        let tx_closed = gic_transmit_count(self.k, self.n)?;
        for user in 0..self.k {
            let t = gic_transmit_directions_with_cap(self.k, self.n, user, self.cap)?;
            report.roles.push(RoleCount {
                label: format!("transmit user {user}"),
                count: t.len() as u128,
                closed_form: Some(tx_closed),
            });
            for rx in (0..self.k).filter(|&rx| rx != user) {
                let arrived = t.shifted(GainId::new(rx, user))?;
                let rep = verify_alignment(&arrived, &target);
                report
                    .containment
                    .push((format!("user {user} at rx {rx}"), rep.contained));
            }
            let intended = t.shifted(GainId::new(user, user))?;
            let sep = verify_separability(&intended, &target);
            report
                .separability
                .push((format!("rx {user} intended vs interference"), sep.disjoint));
        }
        Ok(report)
    }
}
