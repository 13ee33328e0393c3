//! Discrete Picard model of a twisted curve.
//!
//! A line bundle is recorded up to the connected part of the Picard group of
//! the coarse curve (Jacobians of the components and the gluing torus): an
//! integer part per vertex and the head-branch multiplicity at every node.
//! The continuous part contributes only through the r-torsion count
//! `r^(2 sum g_v + b_1)` of that connected group.

mod bundle;
mod comb;
mod coprime;
mod roots;
pub mod sweep;

pub use bundle::{BundleData, LineBundle};
pub use comb::{comb_lift, comb_membership, construct_root, construct_root_from_criterion};
pub use coprime::{combine_coprime, split_coprime};
pub use roots::{
    continuous_torsion, count_roots, delta_embed, discrete_roots, rootsnum_criterion,
    torsion_count, CriterionReport, EdgeCondition, EdgeFailure, DEFAULT_MAX_DOMAIN,
};
