//! Exact finite partial metric spaces.
//!
//! Distances are [`Rational`]s, so every check in this crate is exact.
//! Infinite example spaces live in [`catalog`] as formula-backed evaluators
//! with a finite canonical sample; everything desk-checkable runs on
//! [`FinitePMSpace`] restrictions of them.

pub mod analysis;
pub mod axioms;
pub mod catalog;
pub mod error;
pub mod facts;
pub mod fixedpoint;
pub mod metrics;
pub mod point;
pub mod properties;
pub mod rational;
pub mod separation;
pub mod space;

pub use axioms::{check_axioms, Axiom, AxiomReport, Verdict};
pub use error::{PmError, Result};
pub use facts::{fact_suite, Fact, FactSuiteResult};
pub use point::Point;
pub use rational::{q, Rational};
pub use space::{FinitePMSpace, PartialMetric, SpaceJson};
