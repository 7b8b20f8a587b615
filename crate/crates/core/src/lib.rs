//! Linear and sublinear correspondences on finitely generated cones.
//!
//! Compact set values are stored as finite point lists (optionally meaning
//! "the convex hull of these points"), which keeps every operation used here
//! closed: Minkowski sums, scaling, hulls and Hausdorff distances all stay
//! inside the representation.
//!
//! Module map:
//! - [`geometry`]: points, compact sets, norms, Minkowski arithmetic, Hausdorff metric.
//! - [`cone`]: cones with a linearly independent basis and their coordinate map.
//! - [`radstrom`]: pairs of convex sets modulo `(A,B) ~ (C,D) <=> A+D = B+C`.
//! - [`correspondence`]: linear/sublinear set-valued maps, multimatrices, probes.
//! - [`semigroup`]: iteration semigroups, growth fits and continuity moduli.
//! - [`cli`]: experiment configs, report emission and the check catalog.

pub mod cli;
pub mod cone;
pub mod correspondence;
mod error;
pub mod geometry;
pub mod radstrom;
pub mod semigroup;
pub(crate) mod simplex;

pub use cone::{Cone, ConeCoords};
pub use correspondence::{
    LinearCorrespondence, Multimatrix, SelectionMatrix, SetMap, SublinearCorrespondence,
};
pub use error::{Error, Result};
pub use geometry::{CompactSet, NormSpec, Point};
pub use radstrom::RadstromClass;
pub use semigroup::{GrowthFit, SemigroupFamily};
pub use simplex::SupEstimate;

/// Absolute tolerance for exact geometry (hull reduction, membership, set equality).
pub const TOL_GEOM: f64 = 1e-9;

/// Default tolerance for quantities computed as suprema over sampled grids.
pub const TOL_SUP: f64 = 1e-6;

/// Library version string.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
