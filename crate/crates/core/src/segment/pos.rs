use std::fmt;

use super::lexicon::verb_lexicon;

/// The closed Penn-Treebank subset the feature extractors consume.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PosTag {
    /// base form
    Vb,
    /// past tense
    Vbd,
    /// past participle
    Vbn,
    /// 3rd person singular present
    Vbz,
    /// non-3rd person singular present
    Vbp,
    /// gerund / present participle
    Vbg,
    /// modal
    Md,
    /// everything else
    Other,
}

impl PosTag {
    pub fn symbol(self) -> &'static str {
        match self {
            PosTag::Vb => "VB",
            PosTag::Vbd => "VBD",
            PosTag::Vbn => "VBN",
            PosTag::Vbz => "VBZ",
            PosTag::Vbp => "VBP",
            PosTag::Vbg => "VBG",
            PosTag::Md => "MD",
            PosTag::Other => "OTHER",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "VB" => PosTag::Vb,
            "VBD" => PosTag::Vbd,
            "VBN" => PosTag::Vbn,
            "VBZ" => PosTag::Vbz,
            "VBP" => PosTag::Vbp,
            "VBG" => PosTag::Vbg,
            "MD" => PosTag::Md,
            "OTHER" => PosTag::Other,
            _ => return None,
        })
    }

    pub fn is_verb(self) -> bool {
        self != PosTag::Other
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

pub const BE_FORMS: [&str; 8] = ["am", "is", "are", "was", "were", "be", "been", "being"];
const HAVE_FORMS: [&str; 6] = ["have", "has", "had", "having", "'ve", "'d"];
const GET_FORMS: [&str; 5] = ["get", "gets", "got", "gotten", "getting"];
const DO_FORMS: [&str; 3] = ["do", "does", "did"];

// "-ed" / "-ing" words that are not verb forms.
const ED_NOUNS: &[&str] = &[
    "bed", "bred", "breed", "creed", "embed", "feed", "fled", "greed", "hundred", "indeed",
    "kindred", "naked", "need", "proceed", "red", "sacred", "seed", "shed", "shred", "sled",
    "speed", "steed", "succeed", "exceed", "ted", "tweed", "wed", "weed", "wicked", "wretched",
    "rugged", "ragged", "beloved", "learned", "aged", "bleed",
];
const ING_NOUNS: &[&str] = &[
    "anything", "bring", "building", "ceiling", "cling", "darling", "during", "evening",
    "everything", "fling", "king", "lightning", "morning", "nothing", "ping", "ring",
    "sibling", "sing", "something", "spring", "sting", "string", "swing", "thing", "wing",
    "wring", "bring", "ding", "offspring", "pudding", "wedding", "meaning", "heritage",
];

fn normalize(token: &str) -> String {
    token
        .chars()
        .map(|c| if c == '\u{2019}' { '\'' } else { c })
        .collect::<String>()
        .to_lowercase()
}

fn is_stem(form: &str) -> bool {
    verb_lexicon()
        .get(form)
        .is_some_and(|tags| tags.contains(&PosTag::Vb))
}

/// Context-free candidate tags for one token.
fn candidates(lower: &str) -> Vec<PosTag> {
    if !lower.chars().any(char::is_alphabetic) {
        return vec![PosTag::Other];
    }
    match lower {
        "'re" | "'m" => return vec![PosTag::Vbp],
        "'ve" => return vec![PosTag::Vbp],
        "'ll" | "'d" => return vec![PosTag::Md],
        "n't" | "'s" => return vec![PosTag::Other],
        _ => {}
    }
    if let Some(tags) = verb_lexicon().get(lower) {
        return tags.clone();
    }
    let len = lower.chars().count();
    if lower.ends_with("ed") && len > 3 && !ED_NOUNS.contains(&lower) {
        return vec![PosTag::Vbd, PosTag::Vbn];
    }
    if lower.ends_with("ing") && len > 4 && !ING_NOUNS.contains(&lower) {
        return vec![PosTag::Vbg];
    }
    if let Some(stem) = lower.strip_suffix('s') {
        let known = is_stem(stem)
            || lower.strip_suffix("es").is_some_and(is_stem)
            || lower
                .strip_suffix("ies")
                .is_some_and(|s| is_stem(&format!("{s}y")));
        if known && !stem.ends_with('s') {
            return vec![PosTag::Vbz];
        }
    }
    vec![PosTag::Other]
}

/// Tags a token sequence with a lexicon and suffix rules.
///
/// Ambiguous forms (`made` = VBD|VBN, `put` = VB|VBD|VBN) are resolved from
/// the left context: a participle reading wins when a be/have/get form
/// occurs within the three preceding tokens before any other verb, a base
/// reading wins after `to`, a modal or a do-form, otherwise past tense.
pub fn pos_tag<S: AsRef<str>>(tokens: &[S]) -> Vec<PosTag> {
    let lowered: Vec<String> = tokens.iter().map(|t| normalize(t.as_ref())).collect();
    let mut tags: Vec<PosTag> = Vec::with_capacity(tokens.len());
    for (i, lower) in lowered.iter().enumerate() {
        let cands = candidates(lower);
        let tag = if cands.len() == 1 {
            cands[0]
        } else {
            resolve(&cands, &lowered[..i], &tags)
        };
        tags.push(tag);
    }
    tags
}

fn resolve(cands: &[PosTag], left: &[String], left_tags: &[PosTag]) -> PosTag {
    if cands.contains(&PosTag::Vbn) {
        for (word, tag) in left.iter().zip(left_tags).rev().take(3) {
            let w = word.as_str();
            if BE_FORMS.contains(&w) || HAVE_FORMS.contains(&w) || GET_FORMS.contains(&w) {
                return PosTag::Vbn;
            }
            if tag.is_verb() {
                break;
            }
        }
    }
    if cands.contains(&PosTag::Vb) {
        if let (Some(prev), Some(prev_tag)) = (left.last(), left_tags.last()) {
            if prev == "to" || *prev_tag == PosTag::Md || DO_FORMS.contains(&prev.as_str()) || prev == "n't" {
                return PosTag::Vb;
            }
        }
    }
    if cands.contains(&PosTag::Vbd) {
        return PosTag::Vbd;
    }
    if cands.contains(&PosTag::Vb) {
        return PosTag::Vb;
    }
    cands[0]
}

/// Past tense iff any tag is VBD or VBN.
pub fn is_past_tense(tags: &[PosTag]) -> bool {
    tags.iter().any(|t| matches!(t, PosTag::Vbd | PosTag::Vbn))
}

/// Passive voice heuristic: a be-form followed within three tokens by a
/// VBN, or a VBN immediately followed by `by`.
pub fn is_passive<S: AsRef<str>>(tokens: &[S], tags: &[PosTag]) -> bool {
    let n = tokens.len().min(tags.len());
    (0..n).any(|i| {
        let word = tokens[i].as_ref().to_lowercase();
        let be_then_vbn = BE_FORMS.contains(&word.as_str())
            && tags[i + 1..n.min(i + 4)].contains(&PosTag::Vbn);
        let vbn_by = tags[i] == PosTag::Vbn
            && tokens
                .get(i + 1)
                .is_some_and(|t| t.as_ref().eq_ignore_ascii_case("by"));
        be_then_vbn || vbn_by
    })
}
