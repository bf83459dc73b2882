//! Learns clinical-concept embeddings from coded hospital-admission records
//! and evaluates them against one-hot baselines for disease-onset risk
//! prediction in a matched case-control design.
//!
//! The pipeline goes: admission records ([`ehr`]) → case-control cohort
//! ([`ehr::cohort`]) → per-patient token corpus ([`corpus`]) → term-term
//! co-occurrence counts ([`cooc`]) → embedding training ([`glove`]) →
//! pooled or one-hot patient features ([`vectors`]) → linear-SVM risk
//! evaluation with cross-validated hyper-parameters ([`eval`]).
//!
//! Every stage is deterministic for a fixed seed; stage seeds are derived
//! from a single top-level seed via [`seed::derive`].

pub mod cooc;
pub mod corpus;
pub mod ehr;
pub mod error;
pub mod eval;
pub mod glove;
pub mod seed;
pub mod vectors;

pub use error::{Error, Result};
