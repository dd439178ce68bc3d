//! Conformal invariants of the unit disk: harmonic measure of arcs, the
//! Grötzsch modulus, grid extremal distance and the Beurling product.

pub mod beurling;
pub mod elliptic;
pub mod extremal;
pub mod harmonic;

pub use beurling::{beurling_gap, beurling_suite, BeurlingSample};
pub use elliptic::{extremal_distance_grotzsch, grotzsch_mu};
pub use extremal::{extremal_distance_fd, FdSolution, GridDomain, NodeKind};
pub use harmonic::{arc_measure_closed_form, harmonic_measure_arc, nt_criterion, Arc, NtCriterion, NtVerdict};
