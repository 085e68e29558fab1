//! Dominant weights, branching to the mu-ordinary Levi and congruences
//! between characters.

mod branching;
mod congruence;
mod dominant;
mod levi;
mod lr;
pub mod partition;

pub use branching::{decomposition_dimension, dim_irrep, restrict_to_blocks, BlockDecomposition};
pub use congruence::{char_congruent, theta_hypotheses, HypothesisFailure, HypothesisReport};
pub use dominant::{classify, DominantWeight, LabelledTuples, WeightClassReport};
pub use levi::{
    is_multiplicity_free, is_simple, restrict_to_levi, simple_violations, weights_coprime,
    LRComponent, LRDecomposition, LabelledBlocks, LeviWeight, SimpleReading,
};
pub use lr::{lr_coefficient, lr_fillings};
