use super::lexicon::is_abbreviation;

/// Splits text on newlines, dropping segments without any alphabetic
/// character. Segments are trimmed.
pub fn split_paragraphs(text: &str) -> Vec<&str> {
    text.split('\n')
        .map(str::trim)
        .filter(|p| p.chars().any(char::is_alphabetic))
        .collect()
}

fn is_terminator(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

fn is_closer(c: char) -> bool {
    matches!(c, '"' | '\'' | ')' | ']' | '}' | '\u{201D}' | '\u{2019}')
}

fn is_opener(c: char) -> bool {
    matches!(c, '"' | '\'' | '(' | '[' | '{' | '\u{201C}' | '\u{2018}')
}

/// Rule-based sentence boundary detection.
///
/// A boundary is a run of `.`/`!`/`?`, optionally followed by closing quotes
/// or brackets, followed by whitespace or the end of the text. A lone period
/// does not end a sentence when the word it closes is an abbreviation, and
/// no boundary is placed before a lowercase continuation.
pub fn split_sentences(paragraph: &str) -> Vec<&str> {
    let chars: Vec<(usize, char)> = paragraph.char_indices().collect();
    let mut out = Vec::new();
    let mut start = 0usize;
    let mut i = 0usize;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if !is_terminator(c) {
            i += 1;
            continue;
        }
        let mut j = i;
        while j < chars.len() && is_terminator(chars[j].1) {
            j += 1;
        }
        let run_len = j - i;
        while j < chars.len() && is_closer(chars[j].1) {
            j += 1;
        }
        let end = chars.get(j).map_or(paragraph.len(), |&(p, _)| p);
        let at_space = j == chars.len() || chars[j].1.is_whitespace();
        if !at_space {
            i = j.max(i + 1);
            continue;
        }
        if run_len == 1 && c == '.' && closes_abbreviation(paragraph, pos) {
            i = j;
            continue;
        }
        let next = chars[j..].iter().map(|&(_, ch)| ch).find(|ch| !ch.is_whitespace());
        if next.is_some_and(|ch| ch.is_lowercase()) {
            i = j;
            continue;
        }
        let sentence = paragraph[start..end].trim();
        if !sentence.is_empty() {
            out.push(sentence);
        }
        start = end;
        i = j;
    }
    let tail = paragraph[start..].trim();
    if !tail.is_empty() {
        out.push(tail);
    }
    out
}

/// Does the period at byte `dot` end an abbreviation?
fn closes_abbreviation(text: &str, dot: usize) -> bool {
    let word_start = text[..dot]
        .rfind(char::is_whitespace)
        .map_or(0, |p| p + text[p..].chars().next().map_or(1, char::len_utf8));
    let word = text[word_start..=dot].trim_start_matches(is_opener);
    is_abbreviation(word)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paragraphs() {
        assert_eq!(split_paragraphs("A cat.\nA dog."), ["A cat.", "A dog."]);
        assert_eq!(split_paragraphs("A cat.\n\nA dog."), ["A cat.", "A dog."]);
        assert_eq!(split_paragraphs("A cat.\r\n  \n123 --\nA dog."), ["A cat.", "A dog."]);
        assert!(split_paragraphs("").is_empty());
    }

    #[test]
    fn basic_split() {
        assert_eq!(split_sentences("It rained. We left."), ["It rained.", "We left."]);
        assert_eq!(split_sentences("Stop! Look! #news"), ["Stop!", "Look!", "#news"]);
        assert_eq!(split_sentences("Really?! Yes."), ["Really?!", "Yes."]);
    }

    #[test]
    fn abbreviations_hold() {
        assert_eq!(
            split_sentences("Dr. Smith left. He returned."),
            ["Dr. Smith left.", "He returned."]
        );
        assert_eq!(split_sentences("The vote is at 8 p.m. today."), ["The vote is at 8 p.m. today."]);
        assert_eq!(split_sentences("It opened Jan. 5 in the U.S. Capitol."), ["It opened Jan. 5 in the U.S. Capitol."]);
        assert_eq!(split_sentences("Author J. K. Rowling spoke."), ["Author J. K. Rowling spoke."]);
    }

    #[test]
    fn quotes_and_decimals() {
        assert_eq!(
            split_sentences("\"We won.\" She smiled. Rates rose 3.5 percent."),
            ["\"We won.\"", "She smiled.", "Rates rose 3.5 percent."]
        );
        assert_eq!(split_sentences("No terminator here"), ["No terminator here"]);
        assert!(split_sentences("   ").is_empty());
    }

    #[test]
    fn lowercase_continuation() {
        assert_eq!(split_sentences("He said wait... then left."), ["He said wait... then left."]);
    }
}
