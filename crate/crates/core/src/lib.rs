//! Hidden Potts model primitives.
//!
//! Label fields on rectangular grids with first- or second-order
//! neighborhoods, Swendsen-Wang and Gibbs samplers for the Potts prior,
//! a Gaussian emission model with maximum-likelihood classification,
//! Iterated Conditional Modes, and the prior/posterior pseudolikelihood
//! estimators of the smoothness parameter β.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the
//! experiment harness and the command-line front end live in the `potts`
//! crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod emission;
mod error;
pub mod estimator;
pub mod grouped;
pub mod lattice;
pub mod rng;
pub mod sampler;
pub mod segmentation;
pub mod union_find;

pub use emission::{
    build_separated_model, class_log_likelihood, ml_classify, sample_emission, EmissionModel, RadiometricImage,
};
pub use error::Error;
pub use estimator::{
    estimate_beta, root_condition, sample_curve, score_derivative, score_post, score_prior, EstimationResult, Method,
    ScoreContext, SolverOptions,
};
pub use grouped::score_prior_grouped;
pub use lattice::{
    degree, global_agreement, histogram_signature, neighbor_label_counts, GridDims, LabelField, NeighborCounts,
    Neighborhood, Signature, Site,
};
pub use rng::{derive_seed, PottsRng};
pub use sampler::{gibbs_sweep, simulate_potts, swendsen_wang_sweep, uniform_field, SamplerConfig, SwendsenWang};
pub use segmentation::{icm, IcmOptions, IcmOutcome};

pub type Result<T, E = Error> = core::result::Result<T, E>;
