//! Resolution of near-field beamforming for uniform planar and linear arrays.
//!
//! The resolution of two users is `Delta = |b1^H b2|^2`, the squared overlap
//! of their unit-norm array responses: `Delta ~ 0` means beamforming can
//! separate them, `Delta ~ 1` means they share a beam.
//!
//! * [`geometry`]: array layout, user coordinates, exact and Fresnel distances,
//!   steering vectors.
//! * [`kernel`]: the Dirichlet-type kernel and compensated summation.
//! * [`resolution`]: `Delta` by steering vectors, by direct phase sums and in
//!   closed form.
//! * [`regime`]: angle-domain bound, distance and beta thresholds, regime
//!   classification.
//! * [`harness`]: figure presets, sweeps, CSV and plot-script output, timing.

pub mod error;
pub mod geometry;
pub mod harness;
pub mod kernel;
pub mod regime;
pub mod resolution;

pub use error::{Error, Result};
pub use geometry::{
    channel_gain, exact_distance, fresnel_distance, steering_vector, user_cartesian, ArrayConfig,
    PhaseModel, Point3, SteeringVector, UserLocation,
};
pub use kernel::{phi_kernel, NeumaierSum};
pub use regime::{
    beta_threshold_ula, beta_threshold_upa, beta_threshold_upa_asymptotic, classify,
    distance_threshold, remark1_bound, AngleBound, Cutoffs, Regime, RegimeReport,
};
pub use resolution::{
    closed_form_from_params, delta_by, delta_closed_form, delta_oracle, delta_sum_oracle,
    delta_ula, pair_params, Method, PairParams, ResolutionResult, Warning,
};

/// `8 d^2 (M^2 + N^2) / lambda`.
pub fn rayleigh_distance(cfg: &ArrayConfig) -> f64 {
    cfg.rayleigh_distance()
}
