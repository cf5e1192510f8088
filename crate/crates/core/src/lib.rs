//! Split-and-rephrase simplification for span-based QA corpora.
//!
//! The pipeline segments contexts into sentences, sends each sentence to a
//! pluggable simplification backend, filters candidates through a quality
//! funnel, scores them with automatic metrics, and rebuilds simplified
//! contexts with recovered answer offsets.

pub mod analysis;
pub mod backend;
pub mod corpus;
pub mod lm;
pub mod metrics;
pub mod pipeline;
pub mod reconstruct;
pub mod segment;
pub mod simplify;
pub mod text;
pub mod threshold;
pub mod transfer;
