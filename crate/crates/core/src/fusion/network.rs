use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::FusionError;
use crate::corpus::Label;
use crate::vector::l2_normalize;

/// Fully connected layer, `out x in` weights stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Dense {
    pub inputs: usize,
    pub outputs: usize,
    pub weights: Vec<f64>,
    pub biases: Vec<f64>,
}

impl Dense {
    pub fn zeros(inputs: usize, outputs: usize) -> Self {
        Dense {
            inputs,
            outputs,
            weights: vec![0.0; inputs * outputs],
            biases: vec![0.0; outputs],
        }
    }

    /// Weights uniform in `±1/sqrt(inputs)`, biases zero.
    fn uniform(inputs: usize, outputs: usize, rng: &mut ChaCha8Rng) -> Self {
        let bound = 1.0 / (inputs as f64).sqrt();
        let weights = (0..inputs * outputs)
            .map(|_| rng.gen_range(-bound..bound))
            .collect();
        Dense {
            inputs,
            outputs,
            weights,
            biases: vec![0.0; outputs],
        }
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.inputs);
        self.weights
            .chunks_exact(self.inputs)
            .zip(&self.biases)
            .map(|(row, b)| row.iter().zip(x).map(|(w, v)| w * v).sum::<f64>() + b)
            .collect()
    }

    /// `W^T g`
    fn back(&self, grad_out: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.inputs];
        for (row, g) in self.weights.chunks_exact(self.inputs).zip(grad_out) {
            if *g == 0.0 {
                continue;
            }
            for (o, w) in out.iter_mut().zip(row) {
                *o += w * g;
            }
        }
        out
    }

    fn accumulate(&self, grad: &mut Dense, grad_out: &[f64], input: &[f64]) {
        for ((row, g), gb) in grad
            .weights
            .chunks_exact_mut(self.inputs)
            .zip(grad_out)
            .zip(grad.biases.iter_mut())
        {
            *gb += g;
            if *g == 0.0 {
                continue;
            }
            for (w, x) in row.iter_mut().zip(input) {
                *w += g * x;
            }
        }
    }

    fn is_finite(&self) -> bool {
        self.weights.iter().chain(&self.biases).all(|v| v.is_finite())
    }
}

/// Hidden sizes of the two heads.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeadShape {
    /// guidance hidden width; must be at least the input width
    pub guidance_hidden: usize,
    /// guidance output width
    pub guidance_out: usize,
    /// classification hidden width
    pub class_hidden: usize,
}

impl Default for HeadShape {
    fn default() -> Self {
        HeadShape {
            guidance_hidden: 1024,
            guidance_out: 256,
            class_hidden: 32,
        }
    }
}

/// Guidance head `(d+n) -> h1 -> l` followed by classification head
/// `l -> h2 -> 2`. ReLU on the two hidden layers, identity elsewhere,
/// softmax over the two logits (index 1 = AI).
#[derive(Debug, Clone, PartialEq)]
pub struct FusionModel {
    pub embedding_dim: usize,
    pub feature_dim: usize,
    /// guidance hidden, guidance out, classification hidden, logits
    pub layers: [Dense; 4],
    pub dropout_rate: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    pub logits: [f64; 2],
    pub prob_ai: f64,
}

/// Per-example activations kept for backpropagation.
struct Trace {
    input: Vec<f64>,
    hidden1_pre: Vec<f64>,
    hidden1: Vec<f64>,
    guidance: Vec<f64>,
    hidden2_pre: Vec<f64>,
    hidden2: Vec<f64>,
    logits: [f64; 2],
}

/// Inverted-dropout multipliers (0 or 1/(1-p)) for the two hidden layers.
pub(crate) struct DropoutMasks {
    pub hidden1: Vec<f64>,
    pub hidden2: Vec<f64>,
}

impl DropoutMasks {
    pub(crate) fn sample(model: &FusionModel, rate: f64, rng: &mut ChaCha8Rng) -> Self {
        let keep = 1.0 - rate;
        let mut draw = |n: usize| {
            (0..n)
                .map(|_| if rng.gen::<f64>() < keep { 1.0 / keep } else { 0.0 })
                .collect()
        };
        DropoutMasks {
            hidden1: draw(model.layers[0].outputs),
            hidden2: draw(model.layers[2].outputs),
        }
    }
}

pub fn init_model(d: usize, n: usize, seed: u64) -> Result<FusionModel, FusionError> {
    FusionModel::new(d, n, HeadShape::default(), seed)
}

impl FusionModel {
    /// Seeded initialization: ChaCha8 stream from `seed`, layers drawn in
    /// order, weights uniform in `±1/sqrt(fan_in)`, biases zero.
    pub fn new(d: usize, n: usize, shape: HeadShape, seed: u64) -> Result<Self, FusionError> {
        let mut model = FusionModel::zeros(d, n, shape)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dims = model.dims();
        for (i, layer) in model.layers.iter_mut().enumerate() {
            *layer = Dense::uniform(dims[i], dims[i + 1], &mut rng);
        }
        model.seed = seed;
        Ok(model)
    }

    /// All weights and biases zero.
    pub fn zeros(d: usize, n: usize, shape: HeadShape) -> Result<Self, FusionError> {
        if d == 0 || n == 0 {
            return Err(FusionError::InvalidShape(format!(
                "embedding and feature dims must be >= 1 (got {d}, {n})"
            )));
        }
        if shape.guidance_hidden < d + n {
            return Err(FusionError::InvalidShape(format!(
                "guidance hidden width {} is smaller than input width {}",
                shape.guidance_hidden,
                d + n
            )));
        }
        if shape.guidance_out == 0 || shape.class_hidden == 0 {
            return Err(FusionError::InvalidShape("zero-width layer".into()));
        }
        Ok(FusionModel {
            embedding_dim: d,
            feature_dim: n,
            layers: [
                Dense::zeros(d + n, shape.guidance_hidden),
                Dense::zeros(shape.guidance_hidden, shape.guidance_out),
                Dense::zeros(shape.guidance_out, shape.class_hidden),
                Dense::zeros(shape.class_hidden, 2),
            ],
            dropout_rate: 0.2,
            seed: 0,
        })
    }

    pub fn input_dim(&self) -> usize {
        self.embedding_dim + self.feature_dim
    }

    /// Layer widths from input to logits.
    pub fn dims(&self) -> [usize; 5] {
        [
            self.layers[0].inputs,
            self.layers[0].outputs,
            self.layers[1].outputs,
            self.layers[2].outputs,
            self.layers[3].outputs,
        ]
    }

    pub fn shape(&self) -> HeadShape {
        let d = self.dims();
        HeadShape {
            guidance_hidden: d[1],
            guidance_out: d[2],
            class_hidden: d[3],
        }
    }

    pub fn is_finite(&self) -> bool {
        self.layers.iter().all(Dense::is_finite)
    }

    /// Concatenates embedding and features and scales the joint vector to
    /// unit norm (zero stays zero).
    pub fn joint_input(&self, emb: &[f64], features: &[f64]) -> Result<Vec<f64>, FusionError> {
        if emb.len() != self.embedding_dim {
            return Err(FusionError::DimensionMismatch {
                what: "embedding",
                expected: self.embedding_dim,
                got: emb.len(),
            });
        }
        if features.len() != self.feature_dim {
            return Err(FusionError::DimensionMismatch {
                what: "features",
                expected: self.feature_dim,
                got: features.len(),
            });
        }
        if emb.iter().chain(features).any(|v| !v.is_finite()) {
            return Err(FusionError::NonFiniteInput);
        }
        let mut joint = Vec::with_capacity(self.input_dim());
        joint.extend_from_slice(emb);
        joint.extend_from_slice(features);
        l2_normalize(&mut joint);
        Ok(joint)
    }

    /// Inference pass; dropout is never applied here.
    pub fn forward(&self, emb: &[f64], features: &[f64]) -> Result<Prediction, FusionError> {
        let input = self.joint_input(emb, features)?;
        Ok(self.predict_normalized(&input))
    }

    pub(crate) fn predict_normalized(&self, input: &[f64]) -> Prediction {
        let logits = self.trace(input.to_vec(), None).logits;
        Prediction {
            logits,
            prob_ai: softmax(logits)[1],
        }
    }

    fn trace(&self, input: Vec<f64>, masks: Option<&DropoutMasks>) -> Trace {
        let hidden1_pre = self.layers[0].apply(&input);
        let mut hidden1: Vec<f64> = hidden1_pre.iter().map(|&z| z.max(0.0)).collect();
        if let Some(m) = masks {
            hidden1.iter_mut().zip(&m.hidden1).for_each(|(h, k)| *h *= k);
        }
        let guidance = self.layers[1].apply(&hidden1);
        let hidden2_pre = self.layers[2].apply(&guidance);
        let mut hidden2: Vec<f64> = hidden2_pre.iter().map(|&z| z.max(0.0)).collect();
        if let Some(m) = masks {
            hidden2.iter_mut().zip(&m.hidden2).for_each(|(h, k)| *h *= k);
        }
        let out = self.layers[3].apply(&hidden2);
        Trace {
            input,
            hidden1_pre,
            hidden1,
            guidance,
            hidden2_pre,
            hidden2,
            logits: [out[0], out[1]],
        }
    }

    /// Cross-entropy of one pre-normalized example; gradients are added
    /// into `grads`.
    pub(crate) fn backprop(
        &self,
        input: &[f64],
        label: Label,
        masks: Option<&DropoutMasks>,
        grads: &mut Gradients,
    ) -> f64 {
        let t = self.trace(input.to_vec(), masks);
        let y = usize::from(label.as_u8());
        let loss = cross_entropy(t.logits, y);
        let p = softmax(t.logits);
        let g_logits = [p[0] - f64::from(u8::from(y == 0)), p[1] - f64::from(u8::from(y == 1))];

        self.layers[3].accumulate(&mut grads.layers[3], &g_logits, &t.hidden2);
        let mut g_h2 = self.layers[3].back(&g_logits);
        relu_mask_back(&mut g_h2, &t.hidden2_pre, masks.map(|m| m.hidden2.as_slice()));

        self.layers[2].accumulate(&mut grads.layers[2], &g_h2, &t.guidance);
        let g_guidance = self.layers[2].back(&g_h2);

        self.layers[1].accumulate(&mut grads.layers[1], &g_guidance, &t.hidden1);
        let mut g_h1 = self.layers[1].back(&g_guidance);
        relu_mask_back(&mut g_h1, &t.hidden1_pre, masks.map(|m| m.hidden1.as_slice()));

        self.layers[0].accumulate(&mut grads.layers[0], &g_h1, &t.input);
        loss
    }

    /// Mean cross-entropy and its gradient over a batch, dropout off.
    pub fn loss_and_gradient(
        &self,
        batch: &[(Vec<f64>, Vec<f64>, Label)],
    ) -> Result<(f64, Gradients), FusionError> {
        let mut grads = Gradients::zeros_like(self);
        let mut loss = 0.0;
        for (emb, feat, label) in batch {
            let input = self.joint_input(emb, feat)?;
            loss += self.backprop(&input, *label, None, &mut grads);
        }
        let scale = 1.0 / batch.len().max(1) as f64;
        grads.scale(scale);
        Ok((loss * scale, grads))
    }

    /// All parameters flattened: per layer, weights then biases.
    pub fn parameters(&self) -> Vec<f64> {
        self.layers
            .iter()
            .flat_map(|l| l.weights.iter().chain(&l.biases).copied())
            .collect()
    }

    pub fn set_parameters(&mut self, params: &[f64]) {
        let mut it = params.iter().copied();
        for l in self.layers.iter_mut() {
            for w in l.weights.iter_mut().chain(l.biases.iter_mut()) {
                *w = it.next().expect("parameter vector too short");
            }
        }
    }

    pub(crate) fn apply_gradient(&mut self, grads: &Gradients, learning_rate: f64) {
        for (l, g) in self.layers.iter_mut().zip(&grads.layers) {
            for (w, gw) in l.weights.iter_mut().zip(&g.weights) {
                *w -= learning_rate * gw;
            }
            for (b, gb) in l.biases.iter_mut().zip(&g.biases) {
                *b -= learning_rate * gb;
            }
        }
    }
}

/// Gradient buffers shaped like a model's layers.
#[derive(Debug, Clone, PartialEq)]
pub struct Gradients {
    pub layers: [Dense; 4],
}

impl Gradients {
    pub fn zeros_like(m: &FusionModel) -> Self {
        Gradients {
            layers: m.layers.clone().map(|l| Dense::zeros(l.inputs, l.outputs)),
        }
    }

    pub fn scale(&mut self, s: f64) {
        for l in self.layers.iter_mut() {
            l.weights.iter_mut().chain(l.biases.iter_mut()).for_each(|v| *v *= s);
        }
    }

    /// Same ordering as [`FusionModel::parameters`].
    pub fn flatten(&self) -> Vec<f64> {
        self.layers
            .iter()
            .flat_map(|l| l.weights.iter().chain(&l.biases).copied())
            .collect()
    }
}

fn relu_mask_back(grad: &mut [f64], pre: &[f64], mask: Option<&[f64]>) {
    for (i, g) in grad.iter_mut().enumerate() {
        if pre[i] <= 0.0 {
            *g = 0.0;
        } else if let Some(m) = mask {
            *g *= m[i];
        }
    }
}

pub fn softmax(logits: [f64; 2]) -> [f64; 2] {
    let m = logits[0].max(logits[1]);
    let e = [(logits[0] - m).exp(), (logits[1] - m).exp()];
    let s = e[0] + e[1];
    [e[0] / s, e[1] / s]
}

fn cross_entropy(logits: [f64; 2], y: usize) -> f64 {
    let m = logits[0].max(logits[1]);
    let lse = m + ((logits[0] - m).exp() + (logits[1] - m).exp()).ln();
    lse - logits[y]
}
