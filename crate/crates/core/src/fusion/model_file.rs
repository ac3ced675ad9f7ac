//! Versioned JSON model files.
//!
//! ```text
//! {"format":"jguard-model-v1","kind":"fusion","dims":[d+n,h1,l,h2,2],
//!  "activation":"relu","embedding_dim":d,"feature_dim":n,
//!  "dropout_rate":0.2,"seed":7,
//!  "weights":[[...],[...],[...],[...]],"biases":[[...],[...],[...],[...]]}
//! ```
//!
//! Each `weights` entry is one layer, row-major `out x in`. Logistic
//! regression models use `"kind":"lr"`, `"dims":[n,1]`,
//! `"activation":"sigmoid"`, one weight row and one bias.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::network::{Dense, FusionModel};
use super::{FusionError, LrModel, Model};

pub const MODEL_FORMAT: &str = "jguard-model-v1";

#[derive(Serialize, Deserialize)]
struct ModelDoc {
    format: String,
    kind: String,
    dims: Vec<usize>,
    activation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    embedding_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    feature_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dropout_rate: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    weights: Vec<Vec<f64>>,
    biases: Vec<Vec<f64>>,
}

pub fn model_to_json(model: &Model) -> String {
    let doc = match model {
        Model::Fusion(m) => ModelDoc {
            format: MODEL_FORMAT.into(),
            kind: "fusion".into(),
            dims: m.dims().to_vec(),
            activation: "relu".into(),
            embedding_dim: Some(m.embedding_dim),
            feature_dim: Some(m.feature_dim),
            dropout_rate: Some(m.dropout_rate),
            seed: Some(m.seed),
            weights: m.layers.iter().map(|l| l.weights.clone()).collect(),
            biases: m.layers.iter().map(|l| l.biases.clone()).collect(),
        },
        Model::Lr(m) => ModelDoc {
            format: MODEL_FORMAT.into(),
            kind: "lr".into(),
            dims: vec![m.weights.len(), 1],
            activation: "sigmoid".into(),
            embedding_dim: None,
            feature_dim: Some(m.weights.len()),
            dropout_rate: None,
            seed: None,
            weights: vec![m.weights.clone()],
            biases: vec![vec![m.bias]],
        },
    };
    serde_json::to_string(&doc).expect("model document serializes")
}

fn corrupt(msg: impl Into<String>) -> FusionError {
    FusionError::CorruptModel(msg.into())
}

pub fn model_from_json(input: &str) -> Result<Model, FusionError> {
    let value: Value = serde_json::from_str(input).map_err(|e| corrupt(e.to_string()))?;
    match value.get("format").and_then(Value::as_str) {
        Some(MODEL_FORMAT) => {}
        Some(other) => return Err(FusionError::VersionMismatch(other.to_string())),
        None => return Err(FusionError::VersionMismatch("<missing>".into())),
    }
    let doc: ModelDoc = serde_json::from_value(value).map_err(|e| corrupt(e.to_string()))?;
    if doc
        .weights
        .iter()
        .chain(&doc.biases)
        .flatten()
        .any(|v| !v.is_finite())
    {
        return Err(corrupt("non-finite parameter"));
    }
    match doc.kind.as_str() {
        "fusion" => fusion_from_doc(doc).map(Model::Fusion),
        "lr" => {
            if doc.dims.len() != 2 || doc.dims[1] != 1 || doc.weights.len() != 1 || doc.biases.len() != 1 {
                return Err(corrupt("lr model needs dims [n,1], one weight row and one bias"));
            }
            let weights = doc.weights.into_iter().next().unwrap();
            if weights.len() != doc.dims[0] || doc.biases[0].len() != 1 {
                return Err(corrupt("lr weight count does not match dims"));
            }
            Ok(Model::Lr(LrModel {
                weights,
                bias: doc.biases[0][0],
            }))
        }
        other => Err(corrupt(format!("unknown model kind `{other}`"))),
    }
}

fn fusion_from_doc(doc: ModelDoc) -> Result<FusionModel, FusionError> {
    if doc.dims.len() != 5 || doc.dims[4] != 2 {
        return Err(corrupt("fusion model needs dims [d+n,h1,l,h2,2]"));
    }
    if doc.activation != "relu" {
        return Err(corrupt(format!("unsupported activation `{}`", doc.activation)));
    }
    let (d, n) = match (doc.embedding_dim, doc.feature_dim) {
        (Some(d), Some(n)) if d.checked_add(n) == Some(doc.dims[0]) => (d, n),
        _ => return Err(corrupt("embedding_dim + feature_dim must equal dims[0]")),
    };
    if doc.weights.len() != 4 || doc.biases.len() != 4 {
        return Err(corrupt("fusion model needs four layers"));
    }
    let mut layers = Vec::with_capacity(4);
    for (i, (w, b)) in doc.weights.into_iter().zip(doc.biases).enumerate() {
        let (inputs, outputs) = (doc.dims[i], doc.dims[i + 1]);
        if inputs.checked_mul(outputs) != Some(w.len()) || b.len() != outputs {
            return Err(corrupt(format!("layer {i} size does not match dims")));
        }
        layers.push(Dense {
            inputs,
            outputs,
            weights: w,
            biases: b,
        });
    }
    let layers: [Dense; 4] = layers.try_into().expect("four layers");
    if layers[0].outputs < layers[0].inputs {
        return Err(corrupt("guidance hidden width smaller than input width"));
    }
    Ok(FusionModel {
        embedding_dim: d,
        feature_dim: n,
        layers,
        dropout_rate: doc.dropout_rate.unwrap_or(0.0),
        seed: doc.seed.unwrap_or(0),
    })
}

pub fn save_model(model: &Model, path: impl AsRef<Path>) -> Result<(), FusionError> {
    let path = path.as_ref();
    fs::write(path, model_to_json(model)).map_err(|e| FusionError::io(path, e))
}

pub fn load_model(path: impl AsRef<Path>) -> Result<Model, FusionError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| FusionError::io(path, e))?;
    model_from_json(&text)
}
