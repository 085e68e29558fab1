//! Theta operators on expansions in multiplicative coordinates, their
//! congruences, and moments of the associated measures.

mod assignment;
mod congruence;
mod measure;
mod operator;

pub use assignment::{free_block, parameter_embeddings, CoordinateAssignment, Slot, SlotRecord};
pub use congruence::verify_theta_congruence;
pub use measure::{
    kummer_check, kummer_check_weights, moment, KummerOutcome, MeasureHandle, TaggedVector,
    MAX_KUMMER_POINTS,
};
pub use operator::{theta_coordinate, theta_index, ThetaOperator};
