//! Seeded synthetic news corpora.
//!
//! Human articles follow AP conventions: short single-sentence leads,
//! present-tense attribution, abbreviated dates (`Jan. 5`), `3 p.m.`,
//! spelled-out small numbers and no Oxford commas. AI articles turn each of
//! those into a violation with probability `ai_trait_prob`; human articles
//! pick up the same traits with probability `human_trait_prob`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{Article, Corpus, Label};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthConfig {
    pub n_per_class: usize,
    pub seed: u64,
    pub ai_trait_prob: f64,
    pub human_trait_prob: f64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            n_per_class: 100,
            seed: 42,
            ai_trait_prob: 0.85,
            human_trait_prob: 0.1,
        }
    }
}

pub const SYNTH_GENERATOR: &str = "synth";

#[derive(Debug, Clone, Copy)]
struct Style {
    long_lead: bool,
    oxford: bool,
    numerals: bool,
    dates: bool,
    times: bool,
    past: bool,
}

impl Style {
    fn sample(rng: &mut ChaCha8Rng, p: f64) -> Self {
        Style {
            long_lead: rng.gen_bool(p),
            oxford: rng.gen_bool(p),
            numerals: rng.gen_bool(p),
            dates: rng.gen_bool(p),
            times: rng.gen_bool(p),
            past: rng.gen_bool(p),
        }
    }
}

const SUBJECTS: &[&str] = &[
    "The city council",
    "The mayor",
    "Local officials",
    "The school board",
    "State lawmakers",
    "The company",
    "Police",
    "The governor",
    "Researchers",
    "The county commission",
];

const OBJECTS: &[&str] = &[
    "the budget",
    "the proposal",
    "the new park",
    "the bridge project",
    "the tax plan",
    "the contract",
    "the housing policy",
    "the water rate increase",
];

const PRESENT: &[&str] = &["plans", "expects", "supports", "opposes", "wants", "considers"];
const PAST: &[&str] = &["approved", "reviewed", "rejected", "discussed", "proposed", "completed"];

const LIST_ITEMS: &[&str] = &[
    "schools",
    "parks",
    "libraries",
    "roads",
    "clinics",
    "bus routes",
    "fire stations",
];

const PLACES: &[&str] = &["city hall", "the courthouse", "the library", "the community center"];

const MONTHS_FULL: [&str; 12] = [
    "January", "February", "March", "April", "May", "June", "July", "August", "September",
    "October", "November", "December",
];

const MONTHS_AP: [&str; 12] = [
    "Jan.", "Feb.", "March", "April", "May", "June", "July", "Aug.", "Sept.", "Oct.", "Nov.", "Dec.",
];

/// Months AP abbreviates before a day.
const ABBREVIATED: [usize; 7] = [0, 1, 7, 8, 9, 10, 11];

const SMALL: [&str; 9] = ["one", "two", "three", "four", "five", "six", "seven", "eight", "nine"];
const TEENS: [&str; 6] = ["eleven", "twelve", "fifteen", "sixteen", "eighteen", "twenty"];

const COUNT_NOUNS: &[&str] = &["residents", "workers", "members", "officers", "families", "people"];

fn pick<'a>(rng: &mut ChaCha8Rng, xs: &[&'a str]) -> &'a str {
    xs.choose(rng).copied().expect("non-empty word list")
}

fn date_phrase(rng: &mut ChaCha8Rng, violate: bool) -> String {
    let day = rng.gen_range(1..=28);
    if violate {
        let m = ABBREVIATED[rng.gen_range(0..ABBREVIATED.len())];
        let year = rng.gen_range(2015..=2023);
        format!("on {} {day}, {year}", MONTHS_FULL[m])
    } else {
        let m = rng.gen_range(0..12);
        format!("on {} {day}", MONTHS_AP[m])
    }
}

fn time_phrase(rng: &mut ChaCha8Rng, violate: bool) -> String {
    let hour = rng.gen_range(1..=12);
    let pm = rng.gen_bool(0.5);
    if violate {
        format!("at {hour} {}", if pm { "PM" } else { "AM" })
    } else {
        format!("at {hour} {}", if pm { "p.m." } else { "a.m." })
    }
}

fn number_phrase(rng: &mut ChaCha8Rng, violate: bool) -> String {
    let noun = pick(rng, COUNT_NOUNS);
    if violate {
        if rng.gen_bool(0.5) {
            format!("{} {noun}", rng.gen_range(2..=9))
        } else {
            format!("{} {noun}", pick(rng, &TEENS))
        }
    } else if rng.gen_bool(0.5) {
        format!("{} {noun}", SMALL[rng.gen_range(1..9)])
    } else {
        format!("{} {noun}", rng.gen_range(12..=95))
    }
}

fn list_phrase(rng: &mut ChaCha8Rng, oxford: bool) -> String {
    let mut items: Vec<&str> = LIST_ITEMS.to_vec();
    items.shuffle(rng);
    let (a, b, c) = (items[0], items[1], items[2]);
    if oxford {
        format!("{a}, {b}, and {c}")
    } else {
        format!("{a}, {b} and {c}")
    }
}

fn capitalize(s: &str) -> String {
    let mut cs = s.chars();
    match cs.next() {
        Some(c) => c.to_uppercase().chain(cs).collect(),
        None => String::new(),
    }
}

/// One sentence. `long` appends extra clauses.
fn sentence(rng: &mut ChaCha8Rng, style: &Style, long: bool) -> String {
    let subject = pick(rng, SUBJECTS);
    let object = pick(rng, OBJECTS);
    let mut s = if style.past {
        if rng.gen_bool(0.5) {
            format!("{} was {} by {}", capitalize(object), pick(rng, PAST), subject.to_lowercase())
        } else {
            format!("{subject} {} {object}", pick(rng, PAST))
        }
    } else {
        format!("{subject} {} {object}", pick(rng, PRESENT))
    };
    let extras = if long { rng.gen_range(2..=3) } else { rng.gen_range(0..=1) };
    for _ in 0..extras {
        let detail = match rng.gen_range(0..4) {
            0 => date_phrase(rng, style.dates),
            1 => format!("{} at {}", time_phrase(rng, style.times), pick(rng, PLACES)),
            2 => format!("for {}", number_phrase(rng, style.numerals)),
            _ => format!("for {}", list_phrase(rng, style.oxford)),
        };
        s.push(' ');
        s.push_str(&detail);
    }
    if long {
        let verb = if style.past { "said" } else { "says" };
        s.push_str(&format!(", and {} {verb} the plan will help {}", pick(rng, SUBJECTS).to_lowercase(), list_phrase(rng, style.oxford)));
    }
    s.push('.');
    s
}

fn article_text(rng: &mut ChaCha8Rng, style: &Style) -> String {
    let mut paragraphs = Vec::new();
    let lead: Vec<String> = if style.long_lead {
        (0..rng.gen_range(2..=3)).map(|_| sentence(rng, style, true)).collect()
    } else {
        vec![sentence(rng, style, false)]
    };
    paragraphs.push(lead.join(" "));
    for _ in 0..rng.gen_range(3..=5) {
        let n = if style.long_lead { rng.gen_range(2..=3) } else { rng.gen_range(1..=2) };
        let body: Vec<String> = (0..n).map(|_| sentence(rng, style, false)).collect();
        paragraphs.push(body.join(" "));
    }
    paragraphs.join("\n")
}

/// `n_per_class` human then `n_per_class` AI articles, shuffled, with ids
/// `synth-0000`...
pub fn generate_corpus(cfg: &SynthConfig) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut articles = Vec::with_capacity(2 * cfg.n_per_class);
    for label in [Label::Human, Label::Ai] {
        let p = if label.is_ai() { cfg.ai_trait_prob } else { cfg.human_trait_prob };
        for _ in 0..cfg.n_per_class {
            let style = Style::sample(&mut rng, p);
            let text = article_text(&mut rng, &style);
            articles.push((text, label));
        }
    }
    articles.shuffle(&mut rng);
    let articles = articles
        .into_iter()
        .enumerate()
        .map(|(i, (text, label))| {
            let a = Article::new(format!("synth-{i:04}"), text, label);
            if label.is_ai() {
                a.with_generator(SYNTH_GENERATOR)
            } else {
                a
            }
        })
        .collect();
    Corpus::new("synthetic", articles).expect("generated ids are unique")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::extract_raw_vector;

    #[test]
    fn deterministic_and_balanced() {
        let cfg = SynthConfig { n_per_class: 10, ..Default::default() };
        let a = generate_corpus(&cfg);
        assert_eq!(a, generate_corpus(&cfg));
        assert_eq!(a.len(), 20);
        assert_eq!(a.articles.iter().filter(|x| x.label.is_ai()).count(), 10);
        assert_eq!(a.generator_tag(), SYNTH_GENERATOR);
    }

    #[test]
    fn fully_styled_articles_separate() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let ai = Style { long_lead: true, oxford: true, numerals: true, dates: true, times: true, past: true };
        let human = Style { long_lead: false, oxford: false, numerals: false, dates: false, times: false, past: false };
        let a = extract_raw_vector(&article_text(&mut rng, &ai)).values;
        let h = extract_raw_vector(&article_text(&mut rng, &human)).values;
        assert!(a[3] > h[3], "lead paragraph {} vs {}", a[3], h[3]);
        assert!(a[9] > 0.0 && h[9] == 0.0);
        assert!(a[5] > 0.0 && h[5] == 0.0);
        assert!(h[10] == 0.0 && h[11] == 0.0 && h[12] == 0.0, "{h:?}");
    }
}
