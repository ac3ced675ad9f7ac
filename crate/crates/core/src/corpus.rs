//! Labeled news corpora stored as JSON lines.
//!
//! One object per line:
//!
//! ```text
//! {"id":"a1","text":"First paragraph.\nSecond paragraph.","label":1,"generator":"gpt3"}
//! ```
//!
//! `label` is 0 for human-written and 1 for AI-generated text; `generator`
//! is optional. Paragraphs inside `text` are separated by `\n`. Blank lines
//! in the file are skipped.
//!
//! Paraphrase files share the format but carry only `id` and `text`.

use std::collections::HashSet;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("line {line}: malformed record: {reason}")]
    MalformedRecord { line: usize, reason: String },
    #[error("line {line}: missing required field `{field}`")]
    MissingField { line: usize, field: &'static str },
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("corpus is empty")]
    Empty,
    #[error("invalid split ratios: {0}")]
    InvalidSplit(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
}

impl CorpusError {
    pub(crate) fn io(path: &Path, source: io::Error) -> Self {
        CorpusError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

/// Class label. Serialized as the integer 0 or 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Human,
    Ai,
}

impl Label {
    pub fn as_u8(self) -> u8 {
        match self {
            Label::Human => 0,
            Label::Ai => 1,
        }
    }

    pub fn from_u8(v: u8) -> Option<Self> {
        match v {
            0 => Some(Label::Human),
            1 => Some(Label::Ai),
            _ => None,
        }
    }

    pub fn is_ai(self) -> bool {
        self == Label::Ai
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Article {
    pub id: String,
    pub text: String,
    pub label: Label,
    pub generator: Option<String>,
}

impl Article {
    pub fn new(id: impl Into<String>, text: impl Into<String>, label: Label) -> Self {
        Article {
            id: id.into(),
            text: text.into(),
            label,
            generator: None,
        }
    }

    pub fn with_generator(mut self, generator: impl Into<String>) -> Self {
        self.generator = Some(generator.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Corpus {
    pub name: String,
    pub articles: Vec<Article>,
}

impl Corpus {
    /// Builds a corpus, rejecting duplicate or empty ids.
    pub fn new(name: impl Into<String>, articles: Vec<Article>) -> Result<Self, CorpusError> {
        let mut seen = HashSet::with_capacity(articles.len());
        for a in &articles {
            if a.id.is_empty() {
                return Err(CorpusError::MalformedRecord {
                    line: 0,
                    reason: "empty id".into(),
                });
            }
            if !seen.insert(a.id.as_str()) {
                return Err(CorpusError::DuplicateId(a.id.clone()));
            }
        }
        Ok(Corpus {
            name: name.into(),
            articles,
        })
    }

    pub fn len(&self) -> usize {
        self.articles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.articles.is_empty()
    }

    pub fn labels(&self) -> Vec<Label> {
        self.articles.iter().map(|a| a.label).collect()
    }

    /// The single generator tag shared by every AI article, `"mixed"` when
    /// they disagree, `"unknown"` when none is tagged.
    pub fn generator_tag(&self) -> String {
        let mut tags = self
            .articles
            .iter()
            .filter(|a| a.label.is_ai())
            .filter_map(|a| a.generator.as_deref());
        match tags.next() {
            None => "unknown".to_string(),
            Some(first) => {
                if tags.all(|t| t == first) {
                    first.to_string()
                } else {
                    "mixed".to_string()
                }
            }
        }
    }
}

/// Train/test/validation proportions, as integer parts (default 7:2:1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitSpec {
    pub train: u32,
    pub test: u32,
    pub val: u32,
    pub seed: u64,
}

impl Default for SplitSpec {
    fn default() -> Self {
        SplitSpec {
            train: 7,
            test: 2,
            val: 1,
            seed: 42,
        }
    }
}

impl SplitSpec {
    pub fn with_seed(seed: u64) -> Self {
        SplitSpec {
            seed,
            ..Default::default()
        }
    }

    /// Parses `"7:2:1"`.
    pub fn parse_ratios(s: &str, seed: u64) -> Result<Self, CorpusError> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(CorpusError::InvalidSplit(format!(
                "expected train:test:val, got `{s}`"
            )));
        }
        let mut v = [0u32; 3];
        for (slot, p) in v.iter_mut().zip(&parts) {
            *slot = p
                .trim()
                .parse()
                .map_err(|_| CorpusError::InvalidSplit(format!("bad ratio `{p}`")))?;
        }
        let spec = SplitSpec {
            train: v[0],
            test: v[1],
            val: v[2],
            seed,
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<(), CorpusError> {
        if self.train == 0 || self.test == 0 || self.val == 0 {
            return Err(CorpusError::InvalidSplit("ratios must be positive".into()));
        }
        Ok(())
    }

    /// Split sizes for `n` items: test and validation take the floor of their
    /// share, train absorbs the remainder.
    pub fn sizes(&self, n: usize) -> (usize, usize, usize) {
        let total = u128::from(self.train) + u128::from(self.test) + u128::from(self.val);
        let share = |part: u32| ((n as u128 * u128::from(part)) / total) as usize;
        let test = share(self.test);
        let val = share(self.val);
        (n - test - val, test, val)
    }
}

/// Parses corpus JSON lines from memory.
pub fn parse_corpus(input: &str, name: &str) -> Result<Corpus, CorpusError> {
    let mut articles = Vec::new();
    let mut seen = HashSet::new();
    for (idx, line) in input.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let obj = parse_object(line, lineno)?;
        let id = string_field(&obj, "id", lineno)?;
        if id.is_empty() {
            return Err(CorpusError::MalformedRecord {
                line: lineno,
                reason: "empty id".into(),
            });
        }
        let text = string_field(&obj, "text", lineno)?;
        let label = match obj.get("label") {
            None => {
                return Err(CorpusError::MissingField {
                    line: lineno,
                    field: "label",
                })
            }
            Some(v) => v
                .as_u64()
                .and_then(|n| u8::try_from(n).ok())
                .and_then(Label::from_u8)
                .ok_or_else(|| CorpusError::MalformedRecord {
                    line: lineno,
                    reason: format!("label must be 0 or 1, got {v}"),
                })?,
        };
        let generator = match obj.get("generator") {
            None | Some(Value::Null) => None,
            Some(Value::String(s)) => Some(s.clone()),
            Some(other) => {
                return Err(CorpusError::MalformedRecord {
                    line: lineno,
                    reason: format!("generator must be a string, got {other}"),
                })
            }
        };
        if !seen.insert(id.clone()) {
            return Err(CorpusError::DuplicateId(id));
        }
        articles.push(Article {
            id,
            text,
            label,
            generator,
        });
    }
    Ok(Corpus {
        name: name.to_string(),
        articles,
    })
}

pub fn load_corpus(path: impl AsRef<Path>) -> Result<Corpus, CorpusError> {
    let path = path.as_ref();
    let input = fs::read_to_string(path).map_err(|e| CorpusError::io(path, e))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    parse_corpus(&input, &name)
}

#[derive(Serialize)]
struct RecordOut<'a> {
    id: &'a str,
    text: &'a str,
    label: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    generator: Option<&'a str>,
}

/// Serializes a corpus to JSON lines (one `\n`-terminated object per article).
pub fn corpus_to_jsonl(c: &Corpus) -> String {
    let mut out = String::new();
    for a in &c.articles {
        let rec = RecordOut {
            id: &a.id,
            text: &a.text,
            label: a.label.as_u8(),
            generator: a.generator.as_deref(),
        };
        out.push_str(&serde_json::to_string(&rec).expect("plain record serializes"));
        out.push('\n');
    }
    out
}

pub fn write_corpus(c: &Corpus, path: impl AsRef<Path>) -> Result<(), CorpusError> {
    let path = path.as_ref();
    let mut f = fs::File::create(path).map_err(|e| CorpusError::io(path, e))?;
    f.write_all(corpus_to_jsonl(c).as_bytes())
        .map_err(|e| CorpusError::io(path, e))
}

/// Shuffles with a seeded Fisher–Yates pass (ChaCha8 stream, index drawn
/// uniformly from `0..=i` for `i` from the back) and cuts the result into
/// train, test and validation, in that order.
pub fn split_corpus(c: &Corpus, spec: &SplitSpec) -> Result<(Corpus, Corpus, Corpus), CorpusError> {
    if c.is_empty() {
        return Err(CorpusError::Empty);
    }
    spec.validate()?;
    let mut order: Vec<usize> = (0..c.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for i in (1..order.len()).rev() {
        let j = rng.gen_range(0..=i);
        order.swap(i, j);
    }
    let (n_train, n_test, _) = spec.sizes(c.len());
    let take = |range: std::ops::Range<usize>, suffix: &str| Corpus {
        name: format!("{}-{}", c.name, suffix),
        articles: order[range].iter().map(|&i| c.articles[i].clone()).collect(),
    };
    Ok((
        take(0..n_train, "train"),
        take(n_train..n_train + n_test, "test"),
        take(n_train + n_test..c.len(), "val"),
    ))
}

/// A replacement text keyed by article id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Paraphrase {
    pub id: String,
    pub text: String,
}

pub fn parse_paraphrases(input: &str) -> Result<Vec<Paraphrase>, CorpusError> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for (idx, line) in input.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let obj = parse_object(line, lineno)?;
        let id = string_field(&obj, "id", lineno)?;
        let text = string_field(&obj, "text", lineno)?;
        if !seen.insert(id.clone()) {
            return Err(CorpusError::DuplicateId(id));
        }
        out.push(Paraphrase { id, text });
    }
    Ok(out)
}

pub fn load_paraphrases(path: impl AsRef<Path>) -> Result<Vec<Paraphrase>, CorpusError> {
    let path = path.as_ref();
    let input = fs::read_to_string(path).map_err(|e| CorpusError::io(path, e))?;
    parse_paraphrases(&input)
}

fn parse_object(line: &str, lineno: usize) -> Result<serde_json::Map<String, Value>, CorpusError> {
    match serde_json::from_str::<Value>(line) {
        Ok(Value::Object(m)) => Ok(m),
        Ok(_) => Err(CorpusError::MalformedRecord {
            line: lineno,
            reason: "record is not a JSON object".into(),
        }),
        Err(e) => Err(CorpusError::MalformedRecord {
            line: lineno,
            reason: e.to_string(),
        }),
    }
}

fn string_field(
    obj: &serde_json::Map<String, Value>,
    field: &'static str,
    lineno: usize,
) -> Result<String, CorpusError> {
    match obj.get(field) {
        None => Err(CorpusError::MissingField {
            line: lineno,
            field,
        }),
        Some(Value::String(s)) => Ok(s.clone()),
        Some(other) => Err(CorpusError::MalformedRecord {
            line: lineno,
            reason: format!("`{field}` must be a string, got {other}"),
        }),
    }
}
