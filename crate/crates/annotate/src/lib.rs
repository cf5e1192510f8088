//! Annotation service for the human evaluation studies: Likert quality
//! ratings on three metrics and edit classification of sampled pairs.
//!
//! [`Store`] holds tasks durably; [`server`] exposes it over HTTP.

pub mod model;
pub mod report;
pub mod server;
pub mod store;

pub use model::{AnnotationTask, EditLabelRecord, Metric, RatingRecord, TaskKind};
pub use report::{Alpha, Report};
pub use server::{serve, spawn, ServerHandle};
pub use store::{NextItem, Store, StoreError};
