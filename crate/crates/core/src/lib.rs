//! Data-side tooling for three-way comment classification (homophobic,
//! transphobic, neither) across English, Tamil and code-mixed Tamil-English
//! corpora.
//!
//! The crate covers the whole desk-scale pipeline: TSV corpora and synthetic
//! fixtures ([`corpus`]), track-aware normalization ([`preprocess`]), EDA
//! oversampling ([`augment`]), TF-IDF and external feature vectors
//! ([`features`]), majority and logistic baselines ([`models`]),
//! macro-averaged evaluation ([`eval`]), the preprocessing/augmentation
//! ablation ([`ablation`]) and the command layer used by the CLI
//! ([`pipeline`]).

pub mod ablation;
pub mod augment;
pub mod baselines;
pub mod corpus;
mod error;
pub mod eval;
pub mod features;
pub mod models;
pub mod pipeline;
pub mod preprocess;
pub mod published;
pub mod resources;
pub mod rng;
pub(crate) mod tsv;

pub use error::{Error, Result};
