//! Closed-loop household task planning and execution simulation.
//!
//! The crate couples a STRIPS planner, a geometric scene graph, a
//! stochastic discrete world simulator with situation injection, a
//! majority-vote predicate-verification layer with active viewpoint
//! selection, a verify-execute-verify executor, and a seeded experiment
//! harness.

pub mod geometry;
pub mod pddl;
pub mod scene;

pub use geometry::{Aabb, Vec3};
