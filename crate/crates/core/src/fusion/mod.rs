//! Detection models: the guidance/classification network over
//! `[embedding, journalism features]` and the logistic-regression baseline
//! over the features alone.

mod embeddings;
mod lr;
mod model_file;
mod network;
mod train;

use std::io;
use std::path::Path;

pub use embeddings::{
    decode_embeddings, encode_embeddings, load_embeddings, pseudo_embed, save_embeddings,
    EmbeddingError, EmbeddingFile, EmbeddingRecord, EmbeddingSource, EMBEDDING_MAGIC,
};
pub use lr::{sigmoid, train_lr, LrConfig, LrModel};
pub use model_file::{load_model, model_from_json, model_to_json, save_model, MODEL_FORMAT};
pub use network::{init_model, softmax, Dense, FusionModel, Gradients, HeadShape, Prediction};
pub use train::{train_fusion, train_fusion_with_history, FusionExample, TrainConfig, TrainHistory};

#[derive(Debug, thiserror::Error)]
pub enum FusionError {
    #[error("{what} dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("invalid model shape: {0}")]
    InvalidShape(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("non-finite input values")]
    NonFiniteInput,
    #[error("loss became non-finite at epoch {epoch}, batch {batch}")]
    NonFiniteLoss { epoch: usize, batch: usize },
    #[error("training set is empty or too small")]
    EmptyTrainingSet,
    #[error("{0} contains a single class")]
    SingleClass(&'static str),
    #[error("unsupported model format `{0}`")]
    VersionMismatch(String),
    #[error("corrupt model file: {0}")]
    CorruptModel(String),
    #[error("embedding required for fusion model but none was supplied")]
    MissingEmbedding,
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
}

impl FusionError {
    pub(crate) fn io(path: &Path, source: io::Error) -> Self {
        FusionError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

/// Either detector, behind one scoring interface.
#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    Fusion(FusionModel),
    Lr(LrModel),
}

/// Inputs for scoring one article. `embedding` is only read by fusion models.
#[derive(Debug, Clone, Copy)]
pub struct Example<'a> {
    pub embedding: Option<&'a [f64]>,
    pub features: &'a [f64],
}

impl Model {
    pub fn kind(&self) -> &'static str {
        match self {
            Model::Fusion(_) => "fusion",
            Model::Lr(_) => "lr",
        }
    }

    /// Conventional detector label used in reports.
    pub fn detector_name(&self) -> &'static str {
        match self {
            Model::Fusion(_) => "Fusion+JF",
            Model::Lr(_) => "LR+JF",
        }
    }

    pub fn needs_embeddings(&self) -> bool {
        matches!(self, Model::Fusion(_))
    }

    pub fn embedding_dim(&self) -> Option<usize> {
        match self {
            Model::Fusion(m) => Some(m.embedding_dim),
            Model::Lr(_) => None,
        }
    }

    /// Probability that the article is AI-generated.
    pub fn predict_score(&self, example: &Example<'_>) -> Result<f64, FusionError> {
        match self {
            Model::Fusion(m) => {
                let emb = example.embedding.ok_or(FusionError::MissingEmbedding)?;
                m.forward(emb, example.features).map(|p| p.prob_ai)
            }
            Model::Lr(m) => m.predict(example.features),
        }
    }
}

pub fn predict_score(model: &Model, example: &Example<'_>) -> Result<f64, FusionError> {
    model.predict_score(example)
}
