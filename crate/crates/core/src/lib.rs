//! Classification and exact evolution of cubic solutions of the
//! Polubarinova–Galin equation `Re[f_t·conj(ζf')] = 1` on `|ζ| = 1`.
//!
//! A cubic `f(ζ) = a1ζ + a2ζ² + a3ζ³` evolves with conserved moments `M₁`,
//! `M₂`, so each solution is a curve in coefficient space parametrized by
//! `τ = a1`. The crate decides whether that curve leaves the locally
//! univalent region ([`criterion`]), evolves it in closed form, and locates
//! and characterizes the blow-up ([`evolution`], [`cusp`]).

pub mod criterion;
pub mod cusp;
pub mod error;
pub mod evolution;
pub mod geometry;
pub mod numeric;
pub mod poly;
pub mod region;

pub use criterion::{
    boundary_curve, classify, classify_with, g1, g2, h_value, in_set_a, sup_h, tau_double_star, tau_star,
    BoundaryCurvePoint, ClassificationResult, ClassifyOptions, SupResult, Tag,
};
pub use cusp::{cusp_report, CuspOrder, CuspReport};
pub use error::{Error, Result};
pub use evolution::{blow_up, continue_after_blowup, evolve, trajectory_scan, BlowUpReport, Evolver, Snapshot, Trajectory};
pub use poly::{coefficients_from_moments, lambda_from_moments, lambda_map, moments, CubicMap, LambdaPoint, MomentData};
pub use region::{
    critical_points, in_local_region, local_univalence_oracle, univalence_oracle, RegionVerdict, UnivalenceOptions,
};
