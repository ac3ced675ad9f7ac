//! Metrics, feature importance and report files.

mod importance;
mod metrics;
mod report;

pub use importance::{permutation_importance, FeatureImportance, LabeledDataset};
pub use metrics::{auroc, auroc_of, ScoredSet};
pub use report::{
    config_digest, emit_report, read_report, render_table, report_from_json, report_to_json,
    table_path, EvalReport, ReportDocument, ReportEntry, RobustnessReport, REPORT_FORMAT,
};

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error("AUROC needs both classes present")]
    SingleClass,
    #[error("score is NaN")]
    NonFiniteScore,
    #[error("{scores} scores but {labels} labels")]
    LengthMismatch { scores: usize, labels: usize },
    #[error("nothing to report")]
    EmptyReport,
    #[error("corrupt report: {0}")]
    CorruptReport(String),
    #[error("model error: {0}")]
    Model(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{0}")]
    Io(String),
}

use crate::corpus::Corpus;
use crate::features::extract_batch;
use crate::fusion::{EmbeddingSource, Example, Model};

/// Scores every article of `corpus` with `model`, in corpus order.
/// Fusion models read embeddings from `embeddings`; LR models ignore it.
pub fn score_corpus(
    model: &Model,
    corpus: &Corpus,
    embeddings: Option<&EmbeddingSource>,
) -> Result<Vec<f64>, EvalError> {
    let texts: Vec<&str> = corpus.articles.iter().map(|a| a.text.as_str()).collect();
    let features = extract_batch(&texts, true);
    let source = match (model.needs_embeddings(), embeddings) {
        (true, None) => return Err(EvalError::Model("fusion model needs embeddings".into())),
        (true, Some(s)) => Some(s),
        (false, _) => None,
    };
    corpus
        .articles
        .iter()
        .zip(&features)
        .map(|(a, f)| {
            let emb = match source {
                Some(s) => Some(s.get(&a.id).map_err(|e| EvalError::Model(e.to_string()))?),
                None => None,
            };
            model
                .predict_score(&Example { embedding: emb.as_deref(), features: f.as_slice() })
                .map_err(|e| EvalError::Model(e.to_string()))
        })
        .collect()
}
