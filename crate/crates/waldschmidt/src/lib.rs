//! Certified lower bounds on Waldschmidt constants of very general points.
//!
//! The Waldschmidt constant of r very general points in N-dimensional
//! projective space measures the asymptotic minimal degree of hypersurfaces
//! vanishing to high order at the points. This crate computes exact-rational
//! lower bounds for it, each carried by a replayable certificate, and checks
//! that the bounds are strong enough to settle Demailly-type inequalities for
//! small multiplicities.
//!
//! Modules:
//! - [`numerics`]: exact big-integer and big-rational primitives.
//! - [`base_bounds`]: closed-form starting bounds and the lookup table.
//! - [`recursion`]: the induction step that lifts bounds across dimensions,
//!   partition searches, certificates, and replay.
//! - [`demailly`]: conditions-count upper bounds and the Demailly check.
//! - [`lambda_system`]: the linear systems behind the induction's Bezout
//!   argument, solved exactly.
//! - [`cli`]: the command implementations shared by the `wcbound` binary.

pub mod base_bounds;
pub mod cli;
pub mod demailly;
pub mod lambda_system;
pub mod numerics;
pub mod recursion;

pub use base_bounds::{best_base_bound, BaseTable, Bound, Provenance, TableEntry, TableError};
pub use demailly::{
    conditions_count_alpha_upper, demailly_sufficient, scan_demailly, DemaillyReport,
};
pub use lambda_system::{
    bezout_feasible, bezout_min_lambda_sum, solve_lambda_system, BezoutSystem, LambdaSolution,
    LambdaSystem,
};
pub use numerics::{Nat, Rat};
pub use recursion::{
    best_bound, combine, evaluate_partition, replay, search_exhaustive, search_heuristic,
    search_purepower, stepback_combine, BoundCertificate, CombineInput, Partition, SearchContext,
    Strategy,
};
