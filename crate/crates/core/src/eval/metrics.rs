use super::EvalError;
use crate::corpus::Label;

/// Scores paired with ground-truth labels.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ScoredSet {
    pub pairs: Vec<(f64, Label)>,
}

impl ScoredSet {
    pub fn new(scores: &[f64], labels: &[Label]) -> Result<Self, EvalError> {
        if scores.len() != labels.len() {
            return Err(EvalError::LengthMismatch {
                scores: scores.len(),
                labels: labels.len(),
            });
        }
        Ok(ScoredSet {
            pairs: scores.iter().copied().zip(labels.iter().copied()).collect(),
        })
    }

    pub fn from_groups(positives: &[f64], negatives: &[f64]) -> Self {
        let pairs = positives
            .iter()
            .map(|&s| (s, Label::Ai))
            .chain(negatives.iter().map(|&s| (s, Label::Human)))
            .collect();
        ScoredSet { pairs }
    }
}

/// Rank-based AUROC (Mann–Whitney U over midranks).
///
/// Equals the probability that a random AI-labeled item outscores a random
/// human-labeled one, with ties counted as one half.
pub fn auroc(set: &ScoredSet) -> Result<f64, EvalError> {
    let n_pos = set.pairs.iter().filter(|(_, l)| l.is_ai()).count();
    let n_neg = set.pairs.len() - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return Err(EvalError::SingleClass);
    }
    if set.pairs.iter().any(|(s, _)| s.is_nan()) {
        return Err(EvalError::NonFiniteScore);
    }
    let mut sorted: Vec<(f64, Label)> = set.pairs.clone();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));

    // sum of positive ranks, with ranks doubled so midranks stay integral
    let mut rank_sum_x2: u128 = 0;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j < sorted.len() && sorted[j].0 == sorted[i].0 {
            j += 1;
        }
        // 1-based ranks i+1..=j; midrank*2 = i+1+j
        let midrank_x2 = (i + 1 + j) as u128;
        let pos_in_group = sorted[i..j].iter().filter(|(_, l)| l.is_ai()).count() as u128;
        rank_sum_x2 += midrank_x2 * pos_in_group;
        i = j;
    }
    let np = n_pos as u128;
    let u_x2 = rank_sum_x2 - np * (np + 1);
    Ok(u_x2 as f64 / (2.0 * n_pos as f64 * n_neg as f64))
}

pub fn auroc_of(scores: &[f64], labels: &[Label]) -> Result<f64, EvalError> {
    auroc(&ScoredSet::new(scores, labels)?)
}
