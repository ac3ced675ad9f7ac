//! Article segmentation: homoglyph folding, paragraphs, sentences, words and
//! part-of-speech tags.
//!
//! [`segment`] folds confusable characters to Latin first, so every
//! downstream feature sees the same text whether or not it was
//! Cyrillic-injected.

mod homoglyph;
mod lexicon;
mod pos;
mod sentences;
mod tokenize;

pub use homoglyph::{fold_char, fold_homoglyphs};
pub use lexicon::{abbreviations, is_abbreviation, verb_lexicon};
pub use pos::{is_passive, is_past_tense, pos_tag, PosTag, BE_FORMS};
pub use sentences::{split_paragraphs, split_sentences};
pub use tokenize::tokenize_words;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub text: String,
    pub tokens: Vec<String>,
    pub tags: Vec<PosTag>,
}

impl Sentence {
    pub fn from_text(text: &str) -> Self {
        let tokens = tokenize_words(text);
        let tags = pos_tag(&tokens);
        Sentence {
            text: text.to_string(),
            tokens,
            tags,
        }
    }

    /// Tokens containing at least one alphabetic character.
    pub fn word_count(&self) -> usize {
        self.tokens
            .iter()
            .filter(|t| t.chars().any(char::is_alphabetic))
            .count()
    }

    pub fn has_alphabetic(&self) -> bool {
        self.text.chars().any(char::is_alphabetic)
    }

    pub fn is_past_tense(&self) -> bool {
        is_past_tense(&self.tags)
    }

    pub fn is_passive(&self) -> bool {
        is_passive(&self.tokens, &self.tags)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Paragraph {
    pub text: String,
    pub sentences: Vec<Sentence>,
}

impl Paragraph {
    pub fn token_count(&self) -> usize {
        self.sentences.iter().map(|s| s.tokens.len()).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SegmentedArticle {
    pub paragraphs: Vec<Paragraph>,
}

impl SegmentedArticle {
    pub fn sentences(&self) -> impl Iterator<Item = &Sentence> {
        self.paragraphs.iter().flat_map(|p| p.sentences.iter())
    }

    pub fn sentence_count(&self) -> usize {
        self.paragraphs.iter().map(|p| p.sentences.len()).sum()
    }
}

/// Folds homoglyphs, then builds the paragraph/sentence/token hierarchy.
pub fn segment(article_text: &str) -> SegmentedArticle {
    let folded = fold_homoglyphs(article_text);
    let paragraphs = split_paragraphs(&folded)
        .into_iter()
        .map(|p| Paragraph {
            text: p.to_string(),
            sentences: split_sentences(p).into_iter().map(Sentence::from_text).collect(),
        })
        .collect();
    SegmentedArticle { paragraphs }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_shape() {
        let seg = segment("The mayor spoke. Crowds cheered.\nRain fell later.");
        let shape: Vec<usize> = seg.paragraphs.iter().map(|p| p.sentences.len()).collect();
        assert_eq!(shape, [2, 1]);
        assert_eq!(seg.paragraphs[1].sentences[0].tokens, ["Rain", "fell", "later", "."]);
    }

    #[test]
    fn empty_text() {
        assert!(segment("").paragraphs.is_empty());
    }

    #[test]
    fn cyrillic_injected_matches_clean() {
        let clean = "Officials announced the plan on Oct. 3.\nThe mayor was asked about it.";
        let attacked = clean.replace('a', "\u{0430}").replace('e', "\u{0435}").replace('o', "\u{043E}");
        assert_ne!(clean, attacked);
        assert_eq!(segment(&attacked), segment(clean));
    }

    #[test]
    fn parallel_lists() {
        let seg = segment("Don't panic! It's fine, they said.\n\"Really?\" she asked.");
        for s in seg.sentences() {
            assert_eq!(s.tokens.len(), s.tags.len());
            assert!(!s.tokens.is_empty());
        }
    }
}
