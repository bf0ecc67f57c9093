//! Degree-regularizing reductions for maximum independent set.
//!
//! The crate turns an arbitrary bounded-degree graph into a `d`-regular graph
//! (odd `d >= 3`), or a planar graph of maximum degree 5 into a 5-regular
//! planar graph, by attaching small gadgets to every vertex whose degree falls
//! short of the target. Each reduction produces a [`ReductionCertificate`]
//! recording exactly what was added, so that
//!
//! ```text
//! α(G') = α(G) + total_offset
//! ```
//!
//! can be checked independently, and solutions can be moved between `G` and
//! `G'` in linear time.
//!
//! The modules:
//!
//! * [`graph`]: immutable simple graphs, independent sets, triangle counts.
//! * [`gadget`]: gadget blueprints with labelled vertex roles.
//! * [`regularize`]: the pipelines and the solution maps.
//! * [`solve`]: exact maximum independent set solvers used as oracles.
//! * [`verify`]: re-verification of reduction outputs against certificates.
//!
//! The crate is `no_std` (it needs `alloc`). The default `std` feature only
//! enables wall-clock budgets for the branch-and-bound solver.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod error;
pub mod gadget;
pub mod graph;
pub mod regularize;
pub mod solve;
pub mod verify;

pub use error::{Error, LimitKind, Result};
pub use gadget::{GadgetKind, GadgetLayout, IcosaLabel, VertexRole};
pub use graph::{Graph, GraphBuilder, IndependentSet};
pub use regularize::{
    GadgetInstance, IdRange, ReductionCertificate, ReductionStep, StepKind,
};
pub use solve::{Method, SolveResult, SolverLimits};
pub use verify::{Check, CheckStatus, VerificationReport};
