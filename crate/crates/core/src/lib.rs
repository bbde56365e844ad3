//! Computational toolkit for geodesic metric spaces: four concrete model
//! spaces, metric projections onto convex sets, extent computations on pairs
//! of sets, relatively nonexpansive mappings, best-proximity solvers, and a
//! sampling-based verifier for the metric inequalities characterizing
//! Busemann convex and CAT(0) spaces.

pub mod error;
pub mod laws;
pub mod modulus;
pub mod pairs;
pub mod sets;
pub mod space;

pub use error::{Error, Result};
pub use laws::{four_point_holds, parallel_to, verify_law, LawId, LawReport, ALL_LAWS};
pub use modulus::{cat0_modulus, modulus, ModulusSpec};
pub use pairs::{
    farthest, is_proximal, min_sets, pair_extents, pns_witness, ExtentReport, MinSetsReport,
    PairDescriptor, PnsWitness, ProximalityReport, SamplerConfig,
};
pub use sets::ConvexSetDescriptor;
pub use space::{MetricTree, SpaceDescriptor, SpacePoint, TreeEdge};
