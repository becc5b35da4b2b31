//! K x M X channel scheme: one message per (receiver, transmitter) pair;
//! messages for receiver r align into a single block at every other receiver.

use crate::alignment::{
    verify_alignment, verify_separability, x_interference_block_count,
    x_interference_block_with_cap, x_interference_directions_with_cap, x_transmit_count,
    x_transmit_directions_with_cap, GainId,
};
use crate::channel::SchemeKind;
use crate::error::Result;
use crate::scheme::{AlignmentScheme, DirectionsReport, RoleCount};
use crate::signaling::Stream;

/// The monomial scheme for the K-transmitter, M-receiver X channel.
#[derive(Clone, Copy, Debug)]
pub struct XScheme {
    k: usize,
    m: usize,
    n: usize,
    cap: u64,
}

impl XScheme {
    pub fn new(k: usize, m: usize, n: usize, cap: u64) -> Result<Self> {
        x_transmit_directions_with_cap(k, m, n, 0, 0, cap)?;
        Ok(XScheme { k, m, n, cap })
    }
}

impl AlignmentScheme for XScheme {
    fn name(&self) -> &'static str {
        "x"
    }

    fn kind(&self) -> SchemeKind {
        SchemeKind::X
    }

    fn dims(&self) -> (usize, usize) {
        (self.k, self.m)
    }

    fn streams(&self) -> Result<Vec<Stream>> {
        let mut out = Vec::new();
        for r in 0..self.m {
            for i in 0..self.k {
                let dirs = x_transmit_directions_with_cap(self.k, self.m, self.n, r, i, self.cap)?;
                for d in dirs.iter() {
                    out.push(Stream {
                        id: out.len(),
                        tx: i,
                        rx: r,
                        direction: d.clone(),
                    });
                }
            }
        }
        Ok(out)
    }

    fn directions_report(&self) -> Result<DirectionsReport> {
        let mut report = DirectionsReport::default();
        let tx_closed = x_transmit_count(self.k, self.m, self.n)?;
        let block_closed = x_interference_block_count(self.k, self.m, self.n)?;
        for r in 0..self.m {
            let block = x_interference_block_with_cap(self.k, self.m, self.n, r, self.cap)?;
            report.roles.push(RoleCount {
                label: format!("alignment block for rx {r}"),
                count: block.len() as u128,
                closed_form: Some(block_closed),
            });
            for i in 0..self.k {
                let t = x_transmit_directions_with_cap(self.k, self.m, self.n, r, i, self.cap)?;
                report.roles.push(RoleCount {
                    label: format!("transmit message ({r},{i})"),
                    count: t.len() as u128,
                    closed_form: Some(tx_closed),
                });
                // The transmit monomials already carry h[r][i]; at receiver
                // r' != r the message arrives multiplied by h[r'][i].
                for r_other in (0..self.m).filter(|&x| x != r) {
                    let arrived = t.shifted(GainId::new(r_other, i))?;
                    let rep = verify_alignment(&arrived, &block);
                    report.containment.push((
                        format!("message ({r},{i}) at rx {r_other}"),
                        rep.contained,
                    ));
                }
            }
        }
        for r in 0..self.m {
            let interference =
                x_interference_directions_with_cap(self.k, self.m, self.n, r, self.cap)?;
            for i in 0..self.k {
                let intended = x_transmit_directions_with_cap(self.k, self.m, self.n, r, i, self.cap)?
                    .shifted(GainId::new(r, i))?;
                let sep = verify_separability(&intended, &interference);
                report.separability.push((
                    format!("rx {r} message from tx {i} vs interference"),
                    sep.disjoint,
                ));
            }
        }
        Ok(report)
    }
}
