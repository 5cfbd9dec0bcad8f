//! Weighted Hammersley last-passage percolation: exact passage times and
//! geodesics on Poisson clouds, Busemann functions, the interacting fluid
//! and its last-passage dual, the exponential corner-growth model, and a
//! Monte Carlo experiment harness.

// `!(x > 0.0)` style checks are meant to reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod busemann;
pub mod error;
pub mod experiments;
pub mod fenwick;
pub mod fluid;
pub mod last_passage;
pub mod lattice;
pub mod measure;
pub mod point_process;
pub mod rng;
pub mod stats;

pub use busemann::{
    approx_ray, busemann_triple, busemann_value, coalescence, markov_check, nu_alpha, Angle, BusemannEstimate,
    BusemannFrame, LineSegment, MarkovResidual, NuAlpha, RayApproximation, RaySchedule, TripleEstimate,
};
pub use error::{Error, Result};
pub use fluid::{
    coupling_violations, evolve, events_from_cloud, measure_via_lastpassage, multiclass_evolve,
    second_class_position, CouplingReport, DualMeasure, FluidEvent, FluidState, FluidTrajectory, Flux, Scenario,
    SecondClass,
};
pub use last_passage::{
    boundary_last_passage, exit_point, geodesic, last_passage_time, BoundaryPassage, GeodesicPath, GeodesicTree,
    PassageProfile, PassageToTarget, StepFunction,
};
pub use lattice::{
    lattice_boundary_evolution, lattice_busemann, lattice_geodesic, lattice_last_passage, rho, BoundaryProfile,
    LatticeEvolution, LatticeField, Site,
};
pub use measure::{Atom, AtomicMeasure};
pub use point_process::{
    load_cloud, sample_cloud, save_cloud, Point, WeightDistribution, WeightedPoint, WeightedPointCloud, Window,
};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/last_passage.md")]
    mod last_passage {}
    #[doc = include_str!("../../../book/src/busemann.md")]
    mod busemann {}
    #[doc = include_str!("../../../book/src/fluid.md")]
    mod fluid {}
    #[doc = include_str!("../../../book/src/lattice.md")]
    mod lattice {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
}
