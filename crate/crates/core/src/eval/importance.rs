//! Permutation feature importance.
//!
//! Model-agnostic: each feature column is shuffled in turn and the drop in
//! AUROC is averaged over repeats. This is a stand-in for a Shapley-value
//! explanation, not an approximation of one.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{auroc_of, EvalError};
use crate::corpus::Label;
use crate::features::{FEATURE_COUNT, FEATURE_NAMES};
use crate::fusion::{Example, Model};
use crate::hash::derive_seed;

/// Feature vectors (and embeddings, for fusion models) with labels.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    pub features: Vec<[f64; FEATURE_COUNT]>,
    pub embeddings: Option<Vec<Vec<f64>>>,
    pub labels: Vec<Label>,
}

impl LabeledDataset {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn score(&self, model: &Model, features: &[[f64; FEATURE_COUNT]]) -> Result<Vec<f64>, EvalError> {
        features
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let embedding = self.embeddings.as_ref().map(|e| e[i].as_slice());
                model
                    .predict_score(&Example { embedding, features: f })
                    .map_err(|e| EvalError::Model(e.to_string()))
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureImportance {
    pub name: String,
    pub index: usize,
    pub mean_drop: f64,
}

/// Mean AUROC drop per feature over `repeats` seeded shuffles, sorted by
/// descending drop (ties keep canonical feature order). Repeat `r` of
/// feature `f` shuffles with a ChaCha8 stream seeded from `(seed, f, r)`.
pub fn permutation_importance(
    model: &Model,
    data: &LabeledDataset,
    seed: u64,
    repeats: usize,
) -> Result<Vec<FeatureImportance>, EvalError> {
    if repeats == 0 {
        return Err(EvalError::InvalidArgument("repeats must be >= 1".into()));
    }
    let baseline = auroc_of(&data.score(model, &data.features)?, &data.labels)?;
    let mut out = Vec::with_capacity(FEATURE_COUNT);
    for f in 0..FEATURE_COUNT {
        let mut total = 0.0;
        for r in 0..repeats {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, &[f as u64, r as u64]));
            let mut column: Vec<f64> = data.features.iter().map(|x| x[f]).collect();
            for i in (1..column.len()).rev() {
                let j = rng.gen_range(0..=i);
                column.swap(i, j);
            }
            let permuted: Vec<[f64; FEATURE_COUNT]> = data
                .features
                .iter()
                .zip(&column)
                .map(|(x, &v)| {
                    let mut x = *x;
                    x[f] = v;
                    x
                })
                .collect();
            total += baseline - auroc_of(&data.score(model, &permuted)?, &data.labels)?;
        }
        out.push(FeatureImportance {
            name: FEATURE_NAMES[f].to_string(),
            index: f,
            mean_drop: total / repeats as f64,
        });
    }
    out.sort_by(|a, b| b.mean_drop.total_cmp(&a.mean_drop).then(a.index.cmp(&b.index)));
    Ok(out)
}
