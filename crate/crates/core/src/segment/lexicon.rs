use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use super::pos::PosTag;

const ABBREVIATIONS: &str = include_str!("../../data/abbreviations.txt");
const VERBS: &str = include_str!("../../data/verbs.txt");

fn data_lines(src: &str) -> impl Iterator<Item = &str> {
    src.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// Lowercased abbreviations, each including its trailing period.
pub fn abbreviations() -> &'static HashSet<String> {
    static SET: OnceLock<HashSet<String>> = OnceLock::new();
    SET.get_or_init(|| data_lines(ABBREVIATIONS).map(str::to_lowercase).collect())
}

/// Lowercase verb form -> candidate tags.
pub fn verb_lexicon() -> &'static HashMap<String, Vec<PosTag>> {
    static MAP: OnceLock<HashMap<String, Vec<PosTag>>> = OnceLock::new();
    MAP.get_or_init(|| {
        data_lines(VERBS)
            .filter_map(|line| {
                let (form, tags) = line.split_once(char::is_whitespace)?;
                let tags: Vec<PosTag> = tags.trim().split('|').filter_map(PosTag::parse).collect();
                (!tags.is_empty()).then(|| (form.to_lowercase(), tags))
            })
            .collect()
    })
}

/// True when `word` (including its final period) is a known abbreviation,
/// a letter-dot sequence like `N.Y.`, or a single-letter initial like `J.`.
pub fn is_abbreviation(word: &str) -> bool {
    if !word.ends_with('.') || word.len() < 2 {
        return false;
    }
    let lower = word.to_lowercase();
    if abbreviations().contains(&lower) {
        return true;
    }
    let stem = &word[..word.len() - 1];
    let mut chars = stem.chars();
    if let (Some(c), None) = (chars.next(), chars.next()) {
        return c.is_ascii_uppercase();
    }
    // letter-dot runs: "N.Y." -> ["N", "Y", ""]
    let parts: Vec<&str> = word.split('.').collect();
    parts.len() > 2
        && parts[parts.len() - 1].is_empty()
        && parts[..parts.len() - 1]
            .iter()
            .all(|p| p.chars().count() == 1 && p.chars().all(char::is_alphabetic))
}
