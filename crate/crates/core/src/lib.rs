//! Offline evaluation harness for conversational recommenders on
//! ReDial-format dialogue corpora.
//!
//! The pipeline runs corpus parsing ([`corpus`]), instance construction and
//! deduplication ([`instances`]), optional catalog masking ([`catalog`]),
//! reference baselines ([`baselines`]) and scoring ([`metrics`]).
//! [`stats`] reproduces descriptive corpus tables and [`cli`] drives all of
//! it from the command line.

pub mod artifact;
pub mod baselines;
pub mod catalog;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod fingerprint;
pub mod instances;
pub mod item;
pub mod metrics;
pub mod pipeline;
pub mod stats;

pub use error::{BenchError, Result};
pub use item::ItemId;
