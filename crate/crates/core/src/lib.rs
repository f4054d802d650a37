//! Differential geometry of curves on parametric surfaces in 3-space.
//!
//! The crate is organised bottom-up:
//!
//! - [`numerics`]: vectors, Taylor jets, finite-difference stencils, tolerances.
//! - [`surfaces`]: parametric patches, the first fundamental form and a catalog
//!   of classical surfaces.
//! - [`frames`]: curves in a patch's chart, arc-length reparametrization, the
//!   Frenet and Darboux frames.
//! - [`rectifying`]: position-vector decomposition, classification and the
//!   chart-component identities for rectifying curves.
//! - [`isometry`]: shared-chart surface pairs and metric invariance checks.
//! - [`theorems`]: executable checkers for the invariance identities of
//!   rectifying curves under isometry.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod frames;
pub mod isometry;
pub mod numerics;
pub mod rectifying;
pub mod surfaces;
pub mod theorems;

pub use numerics::{Interval, TolerancePolicy, Vec3};
