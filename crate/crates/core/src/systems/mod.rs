//! Rank-one irrational systems `theta_hat_j = p_j theta + xi_j`, their
//! `eta`-actions and difference numbers, the reduction to unit weights and
//! the rank-one shadow of a higher-rank decomposition.

mod reduction;
mod shadow;
mod system;

pub use reduction::{cutoff, difference_witness, expand, reduce, superfluous_pairs, ReductionStep, ReductionTranscript};
pub use shadow::{rank_one_shadow, IntegerDecomposition, RankOneShadow};
pub use system::{EffectiveDifference, IrrationalSystem, Partition, SystemSpec};
