//! Rate and error bounds, degrees-of-freedom formulas, the Monte Carlo
//! sweep, and the Khintchine–Groshev constant scan.

mod bounds;
mod dof;
mod kg;
mod sweep;

pub use bounds::{pe_union_bound, rate_lower_bound, wilson_interval};
pub use dof::{finite_n_dof, finite_n_dof_f64, theoretical_dof, threeuser_finite_dof};
pub use kg::{kg_scan, KgScanResult};
pub use sweep::{
    dof_sweep, estimate_slope, ExperimentRecord, SweepConfig, SweepResult, CSV_HEADER,
};
