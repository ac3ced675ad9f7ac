//! The 13 journalism style features and their normalized vector.
//!
//! | # | name | meaning |
//! |---|------|---------|
//! | 1 | `mean_word_count_sent` | mean words per sentence |
//! | 2 | `mean_sent_count_para` | mean sentences per paragraph |
//! | 3 | `wc_lead_sent` | words in the first sentence |
//! | 4 | `wc_lead_para` | tokens in the first paragraph |
//! | 5 | `passive_voice_count` | mean passive sentences per paragraph |
//! | 6 | `past_tense_count` | mean past-tense sentences per paragraph |
//! | 7 | `excl_per_para` | mean `!` per paragraph |
//! | 8 | `hash_per_para` | mean `#` per paragraph |
//! | 9 | `apos_per_para` | mean `'` per paragraph |
//! | 10 | `oxford_comma_per_para` | mean Oxford commas per paragraph |
//! | 11 | `date_violations` | AP date-format violations (count) |
//! | 12 | `time_violations` | AP time-format violations (count) |
//! | 13 | `number_violations` | AP number-format violations (count) |
//!
//! A "word" is a token with at least one alphabetic character. Features
//! 11–13 are absolute counts; the rest are per-sentence or per-paragraph
//! means. The normalized vector divides by the Euclidean norm.

mod ap_rules;

use std::sync::OnceLock;

use regex::Regex;

use crate::segment::{segment, SegmentedArticle};
use crate::vector::{l2_norm, l2_normalize};

pub use ap_rules::{
    count_date_violations, count_number_violations, count_time_violations, scan_tokens, ApCounts,
};

pub const FEATURE_COUNT: usize = 13;

pub const FEATURE_NAMES: [&str; FEATURE_COUNT] = [
    "mean_word_count_sent",
    "mean_sent_count_para",
    "wc_lead_sent",
    "wc_lead_para",
    "passive_voice_count",
    "past_tense_count",
    "excl_per_para",
    "hash_per_para",
    "apos_per_para",
    "oxford_comma_per_para",
    "date_violations",
    "time_violations",
    "number_violations",
];

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum FeatureError {
    #[error("feature {index} ({name}) is not finite: {value}")]
    NonFinite {
        index: usize,
        name: &'static str,
        value: f64,
    },
}

/// Raw feature values by name.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct JournalismFeatures {
    pub mean_word_count_sent: f64,
    pub mean_sent_count_para: f64,
    pub wc_lead_sent: f64,
    pub wc_lead_para: f64,
    pub passive_voice_count: f64,
    pub past_tense_count: f64,
    pub excl_per_para: f64,
    pub hash_per_para: f64,
    pub apos_per_para: f64,
    pub oxford_comma_per_para: f64,
    pub date_violations: f64,
    pub time_violations: f64,
    pub number_violations: f64,
}

impl JournalismFeatures {
    pub fn to_array(&self) -> [f64; FEATURE_COUNT] {
        [
            self.mean_word_count_sent,
            self.mean_sent_count_para,
            self.wc_lead_sent,
            self.wc_lead_para,
            self.passive_voice_count,
            self.past_tense_count,
            self.excl_per_para,
            self.hash_per_para,
            self.apos_per_para,
            self.oxford_comma_per_para,
            self.date_violations,
            self.time_violations,
            self.number_violations,
        ]
    }

    pub fn to_vector(&self) -> FeatureVector {
        FeatureVector::raw(self.to_array())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeatureVector {
    pub values: [f64; FEATURE_COUNT],
    pub normalized: bool,
}

impl FeatureVector {
    pub fn raw(values: [f64; FEATURE_COUNT]) -> Self {
        FeatureVector {
            values,
            normalized: false,
        }
    }

    pub fn zeros() -> Self {
        FeatureVector::raw([0.0; FEATURE_COUNT])
    }

    pub fn norm(&self) -> f64 {
        l2_norm(&self.values)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }
}

/// Organization and grammar features (1–6).
pub fn extract_organization_features(seg: &SegmentedArticle) -> [f64; 6] {
    let n_sent = seg.sentence_count();
    let n_para = seg.paragraphs.len();
    if n_sent == 0 || n_para == 0 {
        return [0.0; 6];
    }
    let para_mean = |count: &dyn Fn(&crate::segment::Paragraph) -> usize| -> f64 {
        seg.paragraphs.iter().map(|p| count(p) as f64).sum::<f64>() / n_para as f64
    };
    let mean_wc = seg.sentences().map(|s| s.word_count() as f64).sum::<f64>() / n_sent as f64;
    let mean_sc = para_mean(&|p| p.sentences.iter().filter(|s| s.has_alphabetic()).count());
    let lead_sent = seg.sentences().next().map_or(0, |s| s.word_count()) as f64;
    let lead_para = seg.paragraphs[0].token_count() as f64;
    let passive = para_mean(&|p| p.sentences.iter().filter(|s| s.is_passive()).count());
    let past = para_mean(&|p| p.sentences.iter().filter(|s| s.is_past_tense()).count());
    [mean_wc, mean_sc, lead_sent, lead_para, passive, past]
}

fn oxford_comma_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r",\s+(?:and|or)\b").unwrap())
}

/// Oxford-comma occurrences: a comma, whitespace, then `and`/`or` as a word.
pub fn count_oxford_commas(text: &str) -> usize {
    oxford_comma_re().find_iter(text).count()
}

/// Punctuation features (7–10), each a mean per paragraph.
pub fn extract_punctuation_features(seg: &SegmentedArticle) -> [f64; 4] {
    let n_para = seg.paragraphs.len();
    if n_para == 0 {
        return [0.0; 4];
    }
    let mut sums = [0usize; 4];
    for p in &seg.paragraphs {
        sums[0] += p.text.matches('!').count();
        sums[1] += p.text.matches('#').count();
        sums[2] += p.text.matches('\'').count();
        sums[3] += count_oxford_commas(&p.text);
    }
    sums.map(|s| s as f64 / n_para as f64)
}

/// Format-violation counts (11–13), summed over paragraphs.
pub fn extract_violation_features(seg: &SegmentedArticle) -> [f64; 3] {
    let mut total = ApCounts::default();
    for p in &seg.paragraphs {
        let tokens: Vec<&str> = p
            .sentences
            .iter()
            .flat_map(|s| s.tokens.iter().map(String::as_str))
            .collect();
        total += scan_tokens(&tokens);
    }
    [total.date as f64, total.time as f64, total.number as f64]
}

pub fn extract_features(seg: &SegmentedArticle) -> JournalismFeatures {
    let [mean_word_count_sent, mean_sent_count_para, wc_lead_sent, wc_lead_para, passive_voice_count, past_tense_count] =
        extract_organization_features(seg);
    let [excl_per_para, hash_per_para, apos_per_para, oxford_comma_per_para] =
        extract_punctuation_features(seg);
    let [date_violations, time_violations, number_violations] = extract_violation_features(seg);
    JournalismFeatures {
        mean_word_count_sent,
        mean_sent_count_para,
        wc_lead_sent,
        wc_lead_para,
        passive_voice_count,
        past_tense_count,
        excl_per_para,
        hash_per_para,
        apos_per_para,
        oxford_comma_per_para,
        date_violations,
        time_violations,
        number_violations,
    }
}

/// Scales a raw feature vector to unit Euclidean norm. Zero stays zero; an
/// already-normalized vector is returned unchanged.
pub fn normalize_features(raw: &FeatureVector) -> Result<FeatureVector, FeatureError> {
    if let Some((index, &value)) = raw.values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
        return Err(FeatureError::NonFinite {
            index,
            name: FEATURE_NAMES[index],
            value,
        });
    }
    if raw.normalized {
        return Ok(*raw);
    }
    let mut values = raw.values;
    l2_normalize(&mut values);
    Ok(FeatureVector {
        values,
        normalized: true,
    })
}

/// Raw (unnormalized) features of an article.
pub fn extract_raw_vector(article_text: &str) -> FeatureVector {
    extract_features(&segment(article_text)).to_vector()
}

/// Fold, segment, extract and normalize.
pub fn extract_journalism_vector(article_text: &str) -> FeatureVector {
    normalize_features(&extract_raw_vector(article_text))
        .expect("extracted features are finite by construction")
}

/// Extracts many articles in parallel; output order follows input order.
pub fn extract_batch<S: AsRef<str> + Sync>(texts: &[S], normalized: bool) -> Vec<FeatureVector> {
    let f = |t: &S| {
        if normalized {
            extract_journalism_vector(t.as_ref())
        } else {
            extract_raw_vector(t.as_ref())
        }
    };
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    if workers <= 1 || texts.len() < 2 * workers {
        return texts.iter().map(f).collect();
    }
    let chunk = texts.len().div_ceil(workers);
    std::thread::scope(|scope| {
        let handles: Vec<_> = texts
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(f).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("extraction worker panicked"))
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn organization_example() {
        let f = extract_features(&segment("The cat sat.\nDogs bark loudly today."));
        assert_eq!(f.mean_word_count_sent, 3.5);
        assert_eq!(f.mean_sent_count_para, 1.0);
        assert_eq!(f.wc_lead_sent, 3.0);
        assert_eq!(f.wc_lead_para, 4.0);
    }

    #[test]
    fn empty_article_is_all_zero() {
        assert_eq!(extract_organization_features(&segment("")), [0.0; 6]);
        assert_eq!(extract_raw_vector("").values, [0.0; FEATURE_COUNT]);
        assert_eq!(extract_journalism_vector("").values, [0.0; FEATURE_COUNT]);
    }

    #[test]
    fn passive_and_past() {
        let f = extract_features(&segment("The ball was thrown by John."));
        assert_eq!(f.passive_voice_count, 1.0);
        assert_eq!(f.past_tense_count, 1.0);
    }

    #[test]
    fn punctuation_examples() {
        let f = extract_features(&segment("We bought bread, butter, and jam."));
        assert_eq!(f.oxford_comma_per_para, 1.0);
        let f = extract_features(&segment("Stop! Look! #news"));
        assert_eq!(f.excl_per_para, 2.0);
        assert_eq!(f.hash_per_para, 1.0);
        let f = extract_features(&segment("red and blue"));
        assert_eq!(f.oxford_comma_per_para, 0.0);
        let f = extract_features(&segment("It's John's.\nNo quotes here."));
        assert_eq!(f.apos_per_para, 1.0);
    }

    #[test]
    fn normalization() {
        let mut v = [0.0; FEATURE_COUNT];
        v[0] = 3.0;
        v[1] = 4.0;
        let n = normalize_features(&FeatureVector::raw(v)).unwrap();
        assert!(n.normalized);
        assert_eq!(&n.values[..3], &[0.6, 0.8, 0.0]);
        assert_eq!(normalize_features(&n).unwrap(), n);
        let z = normalize_features(&FeatureVector::zeros()).unwrap();
        assert_eq!(z.values, [0.0; FEATURE_COUNT]);
        v[5] = f64::NAN;
        assert!(matches!(
            normalize_features(&FeatureVector::raw(v)),
            Err(FeatureError::NonFinite { index: 5, .. })
        ));
    }

    #[test]
    fn batch_preserves_order() {
        let texts: Vec<String> = (0..40).map(|i| format!("Item {i} was sold.\n{}", "Yes! ".repeat(i % 5))).collect();
        let batch = extract_batch(&texts, true);
        let serial: Vec<_> = texts.iter().map(|t| extract_journalism_vector(t)).collect();
        assert_eq!(batch, serial);
    }
}
