#![allow(dead_code)]

use std::path::PathBuf;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

/// Non-comment, non-blank lines of a fixture file.
pub fn fixture_lines(name: &str) -> Vec<String> {
    let path = fixture_path(name);
    std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("{}: {e}", path.display()))
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(str::to_string)
        .collect()
}

/// Tab-separated fixture rows.
pub fn fixture_rows(name: &str) -> Vec<Vec<String>> {
    fixture_lines(name)
        .iter()
        .map(|l| l.split('\t').map(str::to_string).collect())
        .collect()
}

pub struct ApCase {
    pub phrase: String,
    pub expected: [usize; 3],
    pub branch: String,
}

pub fn ap_cases() -> Vec<ApCase> {
    fixture_rows("ap_rules.tsv")
        .into_iter()
        .map(|r| {
            assert_eq!(r.len(), 5, "malformed row {r:?}");
            let n = |s: &str| s.parse::<usize>().unwrap();
            ApCase {
                phrase: r[0].clone(),
                expected: [n(&r[1]), n(&r[2]), n(&r[3])],
                branch: r[4].clone(),
            }
        })
        .collect()
}

/// `(label, sentence)` rows of a two-column fixture.
pub fn labeled_sentences(name: &str) -> Vec<(String, String)> {
    fixture_rows(name)
        .into_iter()
        .map(|r| {
            assert_eq!(r.len(), 2, "malformed row {r:?}");
            (r[0].clone(), r[1].clone())
        })
        .collect()
}

/// O(n^2) pairwise AUROC: wins plus half-ties over all (AI, human) pairs.
pub fn brute_force_auroc(scores: &[f64], ai: &[bool]) -> f64 {
    let mut total = 0.0;
    let mut pairs = 0usize;
    for (i, &si) in scores.iter().enumerate() {
        if !ai[i] {
            continue;
        }
        for (j, &sj) in scores.iter().enumerate() {
            if ai[j] {
                continue;
            }
            pairs += 1;
            if si > sj {
                total += 1.0;
            } else if si == sj {
                total += 0.5;
            }
        }
    }
    total / pairs as f64
}

use proptest::prelude::*;

const WORDS: &[&str] = &[
    "the", "council", "approved", "a", "plan", "on", "Jan.", "5", "January", "2021", ",", "and",
    "or", "was", "signed", "by", "officials", "said", "says", "eight", "p.m.", "PM", "8", "twelve",
    "Dr.", "Smith", "U.S.", "don't", "it's", "!", "#", "'", "people", "Oct.", "Mar.", "are",
    "being", "held", "at", "10:30", "a.m.", "Sept.", "May", "1999", "oppose", "gone", "eaten",
    "\u{0430}pple", "Ο", "résumé", "—", "\"", "(", ")", "?", "...", "Tues.", "schools", "parks",
];

fn sentence() -> impl Strategy<Value = String> {
    (proptest::collection::vec(proptest::sample::select(WORDS), 1..14), proptest::sample::select(&[".", "!", "?", ""][..]))
        .prop_map(|(ws, end)| format!("{}{end}", ws.join(" ")))
}

fn paragraph() -> impl Strategy<Value = String> {
    proptest::collection::vec(sentence(), 1..4).prop_map(|s| s.join(" "))
}

/// Random news-like articles: 1 to 5 paragraphs drawn from a vocabulary
/// heavy in dates, times, numbers, abbreviations and the attacked vowels.
pub fn arb_article() -> impl Strategy<Value = String> {
    prop_oneof![
        4 => proptest::collection::vec(paragraph(), 1..6).prop_map(|p| p.join("\n")),
        1 => "\\PC{0,200}",
    ]
}

/// Word-salad article from a seeded stream, using the same vocabulary as
/// [`arb_article`].
pub fn random_article(rng: &mut impl rand::Rng) -> String {
    let ends = [".", "!", "?", ""];
    let paragraphs = rng.gen_range(1..6);
    (0..paragraphs)
        .map(|_| {
            let sentences = rng.gen_range(1..4);
            (0..sentences)
                .map(|_| {
                    let n = rng.gen_range(1..14);
                    let words: Vec<&str> = (0..n).map(|_| WORDS[rng.gen_range(0..WORDS.len())]).collect();
                    format!("{}{}", words.join(" "), ends[rng.gen_range(0..ends.len())])
                })
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}
