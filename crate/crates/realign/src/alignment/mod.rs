//! Exact symbolic machinery for transmit/receive directions: exponent
//! vectors, per-scheme direction-set generators, containment and
//! separability verification, and alignment efficiency.

mod exponent;
mod generate;
mod sets;
mod verify;

pub use exponent::{ExponentVector, GainId};
pub use generate::{
    gic_interference_count, gic_interference_directions, gic_interference_directions_with_cap,
    gic_transmit_count, gic_transmit_directions, gic_transmit_directions_with_cap,
    threeuser_case2_directions, uplink_interference_count, uplink_interference_directions,
    uplink_interference_directions_with_cap, uplink_transmit_count, uplink_transmit_directions,
    uplink_transmit_directions_with_cap, uplink_tx_index, x_interference_block,
    x_interference_block_count, x_interference_block_with_cap, x_interference_directions,
    x_interference_directions_with_cap, x_transmit_count, x_transmit_directions,
    x_transmit_directions_with_cap, G0_GAIN,
};
pub use sets::{box_cardinality, BoxBounds, DirectionSet, DEFAULT_ENUM_CAP};
pub use verify::{
    alignment_efficiency, verify_alignment, verify_separability, AlignmentReport,
    SeparabilityReport,
};
