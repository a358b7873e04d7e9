//! Identification of the time-independent source of a linear parabolic
//! (advection-diffusion-reaction) equation on `R^n` from one noisy snapshot
//! of the solution, by spectral regularization with a-priori parameter
//! choice.
//!
//! The pipeline: sample a source on a [`grid`], push it through the exact
//! [`model`] to get data, perturb it with [`noise`], then recover it with
//! [`regularize`] and score the result with [`metrics`].

pub mod error;
pub mod experiment;
pub mod grid;
pub mod metrics;
pub mod model;
pub mod noise;
pub mod regularize;
pub mod sources;
pub mod spectral;

pub use error::{Error, Result};
pub use experiment::{
    emit_slices, list_presets, preset_config, run_experiment, write_artifacts, ExperimentConfig,
    Overrides, RunArtifacts,
};
pub use grid::{frequency_lattice, make_grid, FrequencyLattice, Grid, GridSpec};
pub use metrics::{error_report, hp_norm, l2_norm, ErrorReport, ReportContext};
pub use model::{
    lambda_multiplier, symbol_z, synthesize_observation, timestep_oracle, ModelParams,
};
pub use noise::{add_noise, estimate_noise_level, NoiseSpec};
pub use regularize::{
    bound_k, bound_m, choose_mu, regularized_invert, theoretical_bound, unregularized_invert,
    ChoiceRule, RegConfig,
};
pub use sources::{evaluate_source, sample_source, SourceId, SourceSpec};
pub use spectral::{forward_transform, inverse_transform, naive_dft, RealField, SpectralField};
