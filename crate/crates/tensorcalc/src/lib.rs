//! Symbolic tensor calculus for curvilinear coordinate systems.
//!
//! The crate builds coordinate systems from a metric or a Cartesian map,
//! derives Christoffel symbols, covariant and absolute derivatives, the
//! Riemann–Ricci–Einstein curvature chain, and the classical differential
//! operators, certifying every symbolic identity with a numeric sampling
//! oracle instead of a full computer-algebra simplifier.
//!
//! See the `examples/` directory for one runnable walkthrough per major
//! capability, and the `tensorcalc` binary for the command-line interface.

pub mod cli;
pub mod connection;
pub mod continuum;
pub mod curvature;
pub mod expr;
pub mod field_ops;
pub mod geometry;
pub mod quadrature;
pub mod report;
pub mod special;
pub mod systems;
pub mod output;
pub mod sysdef;
pub mod tensor;
pub mod verify;

pub use expr::{Expr, SampleDomain, SamplePoint};
pub use geometry::{CartesianMap, CoordinateSystem, DerivedMetric};
