//! Phishing website detection toolkit.
//!
//! The crate is organized around four stages:
//!
//! * [`features`] — turn a raw URL/page observation into 30 ternary
//!   indicator values (−1 phishing-leaning, 0 suspicious, +1 legitimate).
//! * [`dataset`] — load, validate, summarize and partition labeled
//!   feature datasets.
//! * [`classify`] — twelve from-scratch classifiers behind one
//!   fit/predict interface.
//! * [`eval`] — confusion-count metrics, stratified cross-validation
//!   with timing, and sweep experiment drivers.

pub mod classify;
pub mod dataset;
pub mod error;
pub mod eval;
pub mod features;

pub use dataset::{Dataset, FeatureSchema, FeatureVector, Label, LabeledSample};
pub use error::{Error, Result};
