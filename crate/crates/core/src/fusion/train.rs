use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::network::{DropoutMasks, FusionModel, Gradients};
use super::FusionError;
use crate::corpus::Label;
use crate::eval::auroc_of;

/// Hyperparameters for training the two heads.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub learning_rate: f64,
    pub dropout_rate: f64,
    pub max_epochs: usize,
    pub patience: usize,
    pub batch_size: usize,
    pub seed: u64,
}

impl Default for TrainConfig {
    /// Heads-only training over frozen embeddings.
    fn default() -> Self {
        TrainConfig {
            learning_rate: 1e-3,
            dropout_rate: 0.2,
            max_epochs: 50,
            patience: 5,
            batch_size: 16,
            seed: 42,
        }
    }
}

impl TrainConfig {
    /// Learning rate and dropout used when the encoder is fine-tuned jointly.
    pub fn end_to_end_preset() -> Self {
        TrainConfig {
            learning_rate: 2e-5,
            dropout_rate: 0.2,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<(), FusionError> {
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return Err(FusionError::InvalidConfig("learning_rate must be > 0".into()));
        }
        if !(0.0..1.0).contains(&self.dropout_rate) {
            return Err(FusionError::InvalidConfig("dropout_rate must be in [0, 1)".into()));
        }
        if self.patience == 0 {
            return Err(FusionError::InvalidConfig("patience must be >= 1".into()));
        }
        if self.batch_size == 0 {
            return Err(FusionError::InvalidConfig("batch_size must be >= 1".into()));
        }
        Ok(())
    }
}

/// One training example: embedding, feature vector, label.
#[derive(Debug, Clone, PartialEq)]
pub struct FusionExample {
    pub embedding: Vec<f64>,
    pub features: Vec<f64>,
    pub label: Label,
}

/// Per-epoch record of a training run. Index 0 is the untrained model.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrainHistory {
    pub val_auroc: Vec<f64>,
    pub train_loss: Vec<f64>,
    pub best_epoch: usize,
}

pub fn train_fusion(
    model: &FusionModel,
    train: &[FusionExample],
    val: &[FusionExample],
    cfg: &TrainConfig,
) -> Result<FusionModel, FusionError> {
    train_fusion_with_history(model, train, val, cfg).map(|(m, _)| m)
}

/// Mini-batch gradient descent on cross-entropy with early stopping on
/// validation AUROC. Returns the weights of the best validation epoch
/// (the starting weights count as epoch 0); ties keep the earlier epoch.
pub fn train_fusion_with_history(
    model: &FusionModel,
    train: &[FusionExample],
    val: &[FusionExample],
    cfg: &TrainConfig,
) -> Result<(FusionModel, TrainHistory), FusionError> {
    if cfg.max_epochs == 0 {
        return Ok((model.clone(), TrainHistory::default()));
    }
    cfg.validate()?;
    if train.is_empty() || val.is_empty() {
        return Err(FusionError::EmptyTrainingSet);
    }
    let train_inputs = prepare(model, train)?;
    let val_inputs = prepare(model, val)?;
    let val_labels: Vec<Label> = val.iter().map(|e| e.label).collect();

    let score_val = |m: &FusionModel| -> Result<f64, FusionError> {
        let scores: Vec<f64> = val_inputs.iter().map(|x| m.predict_normalized(x).prob_ai).collect();
        auroc_of(&scores, &val_labels).map_err(|_| FusionError::SingleClass("validation set"))
    };

    let mut current = model.clone();
    current.dropout_rate = cfg.dropout_rate;
    current.seed = cfg.seed;
    let mut best = current.clone();
    let mut history = TrainHistory {
        val_auroc: vec![score_val(&current)?],
        train_loss: vec![f64::NAN],
        best_epoch: 0,
    };
    let mut best_score = history.val_auroc[0];
    let mut stale = 0usize;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut order: Vec<usize> = (0..train.len()).collect();

    for epoch in 1..=cfg.max_epochs {
        for i in (1..order.len()).rev() {
            let j = rng.gen_range(0..=i);
            order.swap(i, j);
        }
        let mut epoch_loss = 0.0;
        for (b, batch) in order.chunks(cfg.batch_size).enumerate() {
            let mut grads = Gradients::zeros_like(&current);
            let mut batch_loss = 0.0;
            for &idx in batch {
                let masks = (cfg.dropout_rate > 0.0)
                    .then(|| DropoutMasks::sample(&current, cfg.dropout_rate, &mut rng));
                batch_loss += current.backprop(&train_inputs[idx], train[idx].label, masks.as_ref(), &mut grads);
            }
            if !batch_loss.is_finite() {
                return Err(FusionError::NonFiniteLoss { epoch, batch: b });
            }
            grads.scale(1.0 / batch.len() as f64);
            current.apply_gradient(&grads, cfg.learning_rate);
            epoch_loss += batch_loss;
        }
        if !current.is_finite() {
            return Err(FusionError::NonFiniteLoss { epoch, batch: usize::MAX });
        }
        let score = score_val(&current)?;
        history.val_auroc.push(score);
        history.train_loss.push(epoch_loss / train.len() as f64);
        if score > best_score {
            best_score = score;
            best = current.clone();
            history.best_epoch = epoch;
            stale = 0;
        } else {
            stale += 1;
            if stale >= cfg.patience {
                break;
            }
        }
    }
    Ok((best, history))
}

fn prepare(model: &FusionModel, set: &[FusionExample]) -> Result<Vec<Vec<f64>>, FusionError> {
    set.iter()
        .map(|e| model.joint_input(&e.embedding, &e.features))
        .collect()
}
