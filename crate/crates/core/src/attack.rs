//! Adversarial perturbations and the before/after robustness protocol.

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::corpus::{load_paraphrases, Corpus, CorpusError, Paraphrase};
use crate::eval::{auroc_of, score_corpus, EvalError};
use crate::fusion::{EmbeddingSource, Model};

pub use crate::eval::RobustnessReport;

#[derive(Debug, thiserror::Error)]
pub enum AttackError {
    #[error("paraphrase attack needs a paraphrase file")]
    MissingParaphrasePath,
    #[error("paraphrase for unknown article id `{0}`")]
    UnknownId(String),
    #[error("test corpus is empty")]
    EmptyCorpus,
    #[error("fusion detector needs {0}-attack embeddings")]
    MissingEmbeddings(&'static str),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AttackKind {
    Cyrillic,
    ParaphraseFile,
}

impl AttackKind {
    pub fn name(self) -> &'static str {
        match self {
            AttackKind::Cyrillic => "cyrillic",
            AttackKind::ParaphraseFile => "paraphrase",
        }
    }
}

/// Latin vowel to Cyrillic look-alike.
pub fn default_vowel_map() -> BTreeMap<char, char> {
    BTreeMap::from([('a', '\u{0430}'), ('e', '\u{0435}'), ('o', '\u{043E}')])
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttackSpec {
    pub kind: AttackKind,
    pub paraphrase_path: Option<PathBuf>,
    pub vowel_map: BTreeMap<char, char>,
}

impl AttackSpec {
    pub fn cyrillic() -> Self {
        AttackSpec {
            kind: AttackKind::Cyrillic,
            paraphrase_path: None,
            vowel_map: default_vowel_map(),
        }
    }

    /// A character attack that changes nothing.
    pub fn identity() -> Self {
        AttackSpec {
            vowel_map: BTreeMap::new(),
            ..Self::cyrillic()
        }
    }

    pub fn paraphrase(path: impl Into<PathBuf>) -> Self {
        AttackSpec {
            kind: AttackKind::ParaphraseFile,
            paraphrase_path: Some(path.into()),
            vowel_map: default_vowel_map(),
        }
    }

    pub fn validate(&self) -> Result<(), AttackError> {
        if self.kind == AttackKind::ParaphraseFile && self.paraphrase_path.is_none() {
            return Err(AttackError::MissingParaphrasePath);
        }
        Ok(())
    }

    /// Applies the attack to every article.
    pub fn apply(&self, corpus: &Corpus) -> Result<Corpus, AttackError> {
        self.validate()?;
        match self.kind {
            AttackKind::Cyrillic => {
                let mut out = corpus.clone();
                for a in &mut out.articles {
                    a.text = inject_with(&a.text, &self.vowel_map);
                }
                Ok(out)
            }
            AttackKind::ParaphraseFile => {
                let path = self.paraphrase_path.as_deref().ok_or(AttackError::MissingParaphrasePath)?;
                apply_paraphrase(corpus, path)
            }
        }
    }
}

/// Replaces each lowercase `a`, `e`, `o` with its Cyrillic look-alike.
pub fn cyrillic_inject(text: &str) -> String {
    inject_with(text, &default_vowel_map())
}

pub fn inject_with(text: &str, map: &BTreeMap<char, char>) -> String {
    text.chars().map(|c| *map.get(&c).unwrap_or(&c)).collect()
}

/// Substitutes paraphrased texts by id. Articles without a paraphrase keep
/// their text; ids, labels and generators never change.
pub fn substitute_paraphrases(corpus: &Corpus, paraphrases: &[Paraphrase]) -> Result<Corpus, AttackError> {
    let index: HashMap<&str, usize> = corpus
        .articles
        .iter()
        .enumerate()
        .map(|(i, a)| (a.id.as_str(), i))
        .collect();
    let mut out = corpus.clone();
    for p in paraphrases {
        let &i = index.get(p.id.as_str()).ok_or_else(|| AttackError::UnknownId(p.id.clone()))?;
        out.articles[i].text = p.text.clone();
    }
    Ok(out)
}

pub fn apply_paraphrase(corpus: &Corpus, path: impl AsRef<Path>) -> Result<Corpus, AttackError> {
    substitute_paraphrases(corpus, &load_paraphrases(path)?)
}

/// Scores the clean and the attacked test set and reports the AUROC change.
///
/// Every article is attacked, whatever its label. Fusion detectors read
/// `emb_pre` for clean texts and `emb_post` for attacked ones; LR detectors
/// ignore both.
pub fn robustness_eval(
    model: &Model,
    test: &Corpus,
    emb_pre: Option<&EmbeddingSource>,
    emb_post: Option<&EmbeddingSource>,
    spec: &AttackSpec,
) -> Result<RobustnessReport, AttackError> {
    if test.is_empty() {
        return Err(AttackError::EmptyCorpus);
    }
    if model.needs_embeddings() {
        emb_pre.ok_or(AttackError::MissingEmbeddings("pre"))?;
        emb_post.ok_or(AttackError::MissingEmbeddings("post"))?;
    }
    let labels = test.labels();
    let attacked = spec.apply(test)?;
    let pre = auroc_of(&score_corpus(model, test, emb_pre)?, &labels)?;
    let post = auroc_of(&score_corpus(model, &attacked, emb_post)?, &labels)?;
    Ok(RobustnessReport::new(
        model.detector_name(),
        &test.generator_tag(),
        spec.kind.name(),
        pre,
        post,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Article, Label};
    use crate::fusion::LrModel;
    use crate::segment::fold_homoglyphs;
    use proptest::prelude::*;

    fn corpus() -> Corpus {
        Corpus::new(
            "t",
            vec![
                Article::new("a", "One two.", Label::Human),
                Article::new("b", "Three four.", Label::Ai),
                Article::new("c", "Five six.", Label::Ai),
            ],
        )
        .unwrap()
    }

    #[test]
    fn injects_vowels() {
        assert_eq!(cyrillic_inject("apple"), "\u{0430}ppl\u{0435}");
        assert_eq!(cyrillic_inject("xyz"), "xyz");
        assert_eq!(cyrillic_inject("AEO"), "AEO");
    }

    #[test]
    fn paraphrase_substitution() {
        let ps = vec![
            Paraphrase { id: "a".into(), text: "Uno.".into() },
            Paraphrase { id: "c".into(), text: "Cinco.".into() },
        ];
        let out = substitute_paraphrases(&corpus(), &ps).unwrap();
        let texts: Vec<&str> = out.articles.iter().map(|a| a.text.as_str()).collect();
        assert_eq!(texts, ["Uno.", "Three four.", "Cinco."]);
        assert_eq!(out.labels(), corpus().labels());
        assert_eq!(substitute_paraphrases(&corpus(), &[]).unwrap(), corpus());
        let alien = [Paraphrase { id: "zz".into(), text: "x".into() }];
        assert!(matches!(substitute_paraphrases(&corpus(), &alien), Err(AttackError::UnknownId(id)) if id == "zz"));
    }

    #[test]
    fn paraphrase_needs_a_path() {
        let spec = AttackSpec { paraphrase_path: None, ..AttackSpec::paraphrase("x") };
        assert!(matches!(spec.apply(&corpus()), Err(AttackError::MissingParaphrasePath)));
        assert!(matches!(
            AttackSpec::paraphrase("/nonexistent/p.jsonl").apply(&corpus()),
            Err(AttackError::Corpus(_))
        ));
    }

    #[test]
    fn identity_attack_has_zero_delta() {
        let mut lr = LrModel::zeros(crate::FEATURE_COUNT);
        lr.weights[3] = 2.0;
        let m = Model::Lr(lr);
        let r = robustness_eval(&m, &corpus(), None, None, &AttackSpec::identity()).unwrap();
        assert_eq!(r.delta.to_bits(), 0.0f64.to_bits());
        let r = robustness_eval(&m, &corpus(), None, None, &AttackSpec::cyrillic()).unwrap();
        assert_eq!(r.delta, 0.0);
        assert_eq!(r.attack, "cyrillic");
        assert_eq!(r.detector, "LR+JF");
    }

    #[test]
    fn empty_and_single_class() {
        let m = Model::Lr(LrModel::zeros(crate::FEATURE_COUNT));
        let empty = Corpus { name: "e".into(), articles: vec![] };
        assert!(matches!(
            robustness_eval(&m, &empty, None, None, &AttackSpec::cyrillic()),
            Err(AttackError::EmptyCorpus)
        ));
        let one = Corpus::new("o", vec![Article::new("a", "x", Label::Ai)]).unwrap();
        assert!(matches!(
            robustness_eval(&m, &one, None, None, &AttackSpec::cyrillic()),
            Err(AttackError::Eval(EvalError::SingleClass))
        ));
    }

    proptest! {
        #[test]
        fn preserves_length_and_unmapped_chars(t in "\\PC{0,80}") {
            let out = cyrillic_inject(&t);
            prop_assert_eq!(out.chars().count(), t.chars().count());
            for (a, b) in t.chars().zip(out.chars()) {
                if !matches!(a, 'a' | 'e' | 'o') {
                    prop_assert_eq!(a, b);
                }
            }
            prop_assert_eq!(fold_homoglyphs(&out), fold_homoglyphs(&t));
        }
    }
}
