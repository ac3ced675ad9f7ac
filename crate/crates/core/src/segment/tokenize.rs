use super::lexicon::is_abbreviation;

/// Characters that always stand alone as tokens.
fn is_isolated(c: char) -> bool {
    matches!(
        c,
        ';' | '@' | '#' | '$' | '%' | '&' | '?' | '!' | '(' | ')' | '[' | ']' | '{' | '}' | '<'
            | '>' | '"' | '\u{201C}' | '\u{201D}'
    )
}

fn is_quote(c: char) -> bool {
    matches!(c, '\'' | '`' | '\u{2018}' | '\u{2019}')
}

const CLITICS: [&str; 7] = ["'s", "'re", "'ve", "'ll", "'d", "'m", "'em"];

/// Treebank-style word tokenization.
///
/// Punctuation is split off (`,` and `:` stay inside numbers like `1,000`
/// and `10:30`), contractions are separated (`don't` -> `do`, `n't`;
/// `John's` -> `John`, `'s`), and a final period stays attached to known
/// abbreviations. No character is dropped or altered: the tokens
/// concatenate back to the input minus whitespace.
pub fn tokenize_words(sentence: &str) -> Vec<String> {
    let mut out = Vec::new();
    for chunk in sentence.split_whitespace() {
        split_chunk(chunk, &mut out);
    }
    out
}

fn split_chunk(chunk: &str, out: &mut Vec<String>) {
    let chars: Vec<char> = chunk.chars().collect();
    let mut piece = String::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let next = chars.get(i + 1).copied();
        let isolate = if is_isolated(c) {
            Some(1)
        } else if c == '-' && next == Some('-') {
            Some(chars[i..].iter().take_while(|&&d| d == '-').count())
        } else if (c == ',' || c == ':') && !next.is_some_and(|d| d.is_ascii_digit()) {
            Some(1)
        } else if c == '.' && next == Some('.') {
            Some(chars[i..].iter().take_while(|&&d| d == '.').count())
        } else {
            None
        };
        match isolate {
            Some(n) => {
                flush_word(&mut piece, out);
                out.push(chars[i..i + n].iter().collect());
                i += n;
            }
            None => {
                piece.push(c);
                i += 1;
            }
        }
    }
    flush_word(&mut piece, out);
}

fn flush_word(piece: &mut String, out: &mut Vec<String>) {
    if piece.is_empty() {
        return;
    }
    let word = std::mem::take(piece);
    let mut w = word.as_str();

    // leading quote, unless it starts a clitic like 's
    let mut lead = None;
    if let Some(first) = w.chars().next() {
        if is_quote(first) && w.len() > first.len_utf8() && !is_clitic(w) {
            lead = Some(&w[..first.len_utf8()]);
            w = &w[first.len_utf8()..];
        }
    }

    // trailing quotes and a final period
    let mut tail: Vec<&str> = Vec::new();
    loop {
        let Some(last) = w.chars().last() else { break };
        if w.len() == last.len_utf8() {
            break;
        }
        let cut = w.len() - last.len_utf8();
        if is_quote(last) {
            tail.push(&w[cut..]);
            w = &w[..cut];
        } else if last == '.' && !is_abbreviation(w) {
            tail.push(&w[cut..]);
            w = &w[..cut];
        } else {
            break;
        }
    }

    if let Some(l) = lead {
        out.push(l.to_string());
    }
    split_contraction(w, out);
    out.extend(tail.into_iter().rev().map(str::to_string));
}

fn is_clitic(w: &str) -> bool {
    let norm = w.replace('\u{2019}', "'").to_lowercase();
    CLITICS.contains(&norm.as_str()) || norm == "n't"
}

fn split_contraction(w: &str, out: &mut Vec<String>) {
    // ASCII lowercase with curly apostrophes folded keeps a 1:1 char mapping
    let norm: String = w
        .chars()
        .map(|c| if c == '\u{2019}' { '\'' } else { c.to_ascii_lowercase() })
        .collect();
    let n_chars = norm.chars().count();
    let cut_at = |suffix_chars: usize| -> usize {
        w.char_indices()
            .nth(n_chars - suffix_chars)
            .map_or(w.len(), |(i, _)| i)
    };
    let suffix = if norm == "cannot" {
        Some(3)
    } else if norm.ends_with("n't") && n_chars > 3 {
        Some(3)
    } else {
        CLITICS
            .iter()
            .find(|c| norm.ends_with(*c) && n_chars > c.len())
            .map(|c| c.len())
    };
    match suffix {
        Some(k) => {
            let cut = cut_at(k);
            out.push(w[..cut].to_string());
            out.push(w[cut..].to_string());
        }
        None => out.push(w.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn toks(s: &str) -> Vec<String> {
        tokenize_words(s)
    }

    #[test]
    fn single_word() {
        assert_eq!(toks("hello"), ["hello"]);
    }

    #[test]
    fn contractions() {
        assert_eq!(toks("Don't panic."), ["Do", "n't", "panic", "."]);
        assert_eq!(toks("I can't go"), ["I", "ca", "n't", "go"]);
        assert_eq!(toks("John's car"), ["John", "'s", "car"]);
        assert_eq!(toks("they\u{2019}re here"), ["they", "\u{2019}re", "here"]);
        assert_eq!(toks("won\u{2019}t"), ["wo", "n\u{2019}t"]);
        assert_eq!(toks("cannot"), ["can", "not"]);
    }

    #[test]
    fn abbreviations_and_punctuation() {
        assert_eq!(toks("U.S. news, fast"), ["U.S.", "news", ",", "fast"]);
        assert_eq!(toks("at 8 p.m."), ["at", "8", "p.m."]);
        assert_eq!(toks("Jan. 5, 2021."), ["Jan.", "5", ",", "2021", "."]);
        assert_eq!(toks("#news"), ["#", "news"]);
        assert_eq!(toks("1,000 people at 10:30"), ["1,000", "people", "at", "10:30"]);
        assert_eq!(toks("\"Yes,\" she said."), ["\"", "Yes", ",", "\"", "she", "said", "."]);
        assert_eq!(toks("wait... what?!"), ["wait", "...", "what", "?", "!"]);
        assert_eq!(toks("a--b"), ["a", "--", "b"]);
        assert_eq!(toks("'quoted'"), ["'", "quoted", "'"]);
        assert_eq!(toks("(the end.)"), ["(", "the", "end", ".", ")"]);
    }

    proptest! {
        #[test]
        fn concatenation_preserves_text(s in "\\PC{0,80}") {
            let joined: String = tokenize_words(&s).concat();
            let stripped: String = s.chars().filter(|c| !c.is_whitespace()).collect();
            prop_assert_eq!(joined, stripped);
        }

        #[test]
        fn no_empty_tokens(s in "[a-zA-Z'.,!? \u{2019}-]{0,60}") {
            prop_assert!(tokenize_words(&s).iter().all(|t| !t.is_empty()));
        }
    }
}
