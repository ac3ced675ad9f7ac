use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::FusionError;
use crate::corpus::Label;

/// Logistic regression over the normalized journalism features.
#[derive(Debug, Clone, PartialEq)]
pub struct LrModel {
    pub weights: Vec<f64>,
    pub bias: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LrConfig {
    pub learning_rate: f64,
    pub epochs: usize,
    /// L2 penalty on the weights (not the bias)
    pub l2: f64,
    pub batch_size: usize,
    pub seed: u64,
}

impl Default for LrConfig {
    fn default() -> Self {
        LrConfig {
            learning_rate: 4.0,
            epochs: 2000,
            l2: 1e-4,
            batch_size: 32,
            seed: 42,
        }
    }
}

pub fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

impl LrModel {
    pub fn zeros(n: usize) -> Self {
        LrModel {
            weights: vec![0.0; n],
            bias: 0.0,
        }
    }

    pub fn logit(&self, x: &[f64]) -> Result<f64, FusionError> {
        if x.len() != self.weights.len() {
            return Err(FusionError::DimensionMismatch {
                what: "features",
                expected: self.weights.len(),
                got: x.len(),
            });
        }
        Ok(self.weights.iter().zip(x).map(|(w, v)| w * v).sum::<f64>() + self.bias)
    }

    pub fn predict(&self, x: &[f64]) -> Result<f64, FusionError> {
        self.logit(x).map(sigmoid)
    }

    /// Mean logistic loss plus `l2/2 * |w|^2` over a batch, with its
    /// gradient `(dL/dw, dL/db)`.
    pub fn loss_and_gradient(
        &self,
        xs: &[&[f64]],
        ys: &[Label],
        l2: f64,
    ) -> Result<(f64, Vec<f64>, f64), FusionError> {
        let mut gw = vec![0.0; self.weights.len()];
        let (mut gb, mut loss) = (0.0, 0.0);
        for (x, y) in xs.iter().zip(ys) {
            let z = self.logit(x)?;
            let y = f64::from(y.as_u8());
            // log(1 + e^z) - y z, computed without overflow
            loss += z.max(0.0) + (-z.abs()).exp().ln_1p() - y * z;
            let err = sigmoid(z) - y;
            for (g, v) in gw.iter_mut().zip(x.iter()) {
                *g += err * v;
            }
            gb += err;
        }
        let scale = 1.0 / xs.len().max(1) as f64;
        for (g, w) in gw.iter_mut().zip(&self.weights) {
            *g = *g * scale + l2 * w;
        }
        let penalty = 0.5 * l2 * self.weights.iter().map(|w| w * w).sum::<f64>();
        Ok((loss * scale + penalty, gw, gb * scale))
    }
}

/// Mini-batch gradient descent on the mean logistic loss plus
/// `l2/2 * |w|^2`, starting from zero weights. Batches follow a seeded
/// shuffle per epoch.
pub fn train_lr<X: AsRef<[f64]>>(
    xs: &[X],
    ys: &[Label],
    cfg: &LrConfig,
) -> Result<LrModel, FusionError> {
    if xs.len() != ys.len() {
        return Err(FusionError::InvalidConfig(format!(
            "{} examples but {} labels",
            xs.len(),
            ys.len()
        )));
    }
    if xs.len() < 2 {
        return Err(FusionError::EmptyTrainingSet);
    }
    if !ys.contains(&Label::Ai) || !ys.contains(&Label::Human) {
        return Err(FusionError::SingleClass("training set"));
    }
    if !(cfg.learning_rate > 0.0) || cfg.batch_size == 0 || cfg.l2 < 0.0 {
        return Err(FusionError::InvalidConfig("learning_rate > 0, batch_size >= 1, l2 >= 0".into()));
    }
    let n = xs[0].as_ref().len();
    if let Some(bad) = xs.iter().find(|x| x.as_ref().len() != n) {
        return Err(FusionError::DimensionMismatch {
            what: "features",
            expected: n,
            got: bad.as_ref().len(),
        });
    }
    if xs.iter().flat_map(|x| x.as_ref()).any(|v| !v.is_finite()) {
        return Err(FusionError::NonFiniteInput);
    }

    let mut model = LrModel::zeros(n);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut order: Vec<usize> = (0..xs.len()).collect();
    for _ in 0..cfg.epochs {
        for i in (1..order.len()).rev() {
            let j = rng.gen_range(0..=i);
            order.swap(i, j);
        }
        for batch in order.chunks(cfg.batch_size) {
            let rows: Vec<&[f64]> = batch.iter().map(|&i| xs[i].as_ref()).collect();
            let labels: Vec<Label> = batch.iter().map(|&i| ys[i]).collect();
            let (_, gw, gb) = model.loss_and_gradient(&rows, &labels, cfg.l2)?;
            for (w, g) in model.weights.iter_mut().zip(&gw) {
                *w -= cfg.learning_rate * g;
            }
            model.bias -= cfg.learning_rate * gb;
        }
    }
    if !model.bias.is_finite() || model.weights.iter().any(|w| !w.is_finite()) {
        return Err(FusionError::NonFiniteLoss { epoch: cfg.epochs, batch: 0 });
    }
    Ok(model)
}
