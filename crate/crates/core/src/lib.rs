//! Journalism-guided detection of AI-generated news.
//!
//! The crate turns news articles into a 13-dimensional vector of
//! AP-Stylebook-derived style features, fuses that vector with an encoder
//! embedding through a small guidance network, and measures how well the
//! resulting detectors hold up under homoglyph and paraphrase attacks.
//!
//! Pipeline, bottom-up:
//!
//! - [`corpus`]: JSON-lines corpora, seeded train/test/validation splits.
//! - [`segment`]: homoglyph folding, paragraph/sentence/word segmentation,
//!   a lexicon tagger and the tense/voice tests.
//! - [`features`]: the 13 journalism features and their L2 normalization.
//! - [`fusion`]: the guidance + classification network, the logistic
//!   regression baseline, model files and embedding files.
//! - [`attack`]: Cyrillic injection, paraphrase substitution and the
//!   robustness protocol.
//! - [`eval`]: rank-based AUROC, permutation importance and reports.
//! - [`cli`]: the `jguard` command line.

pub mod attack;
pub mod cli;
pub mod corpus;
pub mod eval;
pub mod features;
pub mod fusion;
pub mod segment;
pub mod synth;

mod hash;
pub mod vector;

pub use corpus::{Article, Corpus, SplitSpec};
pub use features::{extract_journalism_vector, FeatureVector, FEATURE_COUNT, FEATURE_NAMES};
pub use fusion::{FusionModel, LrModel, Model};
