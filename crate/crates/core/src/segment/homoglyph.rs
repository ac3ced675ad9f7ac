/// Maps a confusable codepoint to its Latin look-alike, if it has one.
///
/// Covers the Cyrillic letters used for Latin spoofing (both cases) and the
/// handful of Greek capitals that render identically to Latin ones. All
/// targets are ASCII, so folding is idempotent.
pub fn fold_char(c: char) -> Option<char> {
    let latin = match c {
        // Cyrillic lowercase
        '\u{0430}' => 'a',
        '\u{0435}' => 'e',
        '\u{043E}' => 'o',
        '\u{0440}' => 'p',
        '\u{0441}' => 'c',
        '\u{0443}' => 'y',
        '\u{0445}' => 'x',
        '\u{0456}' => 'i',
        '\u{0458}' => 'j',
        '\u{0455}' => 's',
        '\u{04BB}' => 'h',
        '\u{0501}' => 'd',
        '\u{051B}' => 'q',
        '\u{051D}' => 'w',
        // Cyrillic uppercase
        '\u{0410}' => 'A',
        '\u{0412}' => 'B',
        '\u{0415}' => 'E',
        '\u{041A}' => 'K',
        '\u{041C}' => 'M',
        '\u{041D}' => 'H',
        '\u{041E}' => 'O',
        '\u{0420}' => 'P',
        '\u{0421}' => 'C',
        '\u{0422}' => 'T',
        '\u{0425}' => 'X',
        '\u{0406}' => 'I',
        '\u{0408}' => 'J',
        '\u{0405}' => 'S',
        // Greek capitals
        '\u{0391}' => 'A',
        '\u{0392}' => 'B',
        '\u{0395}' => 'E',
        '\u{0397}' => 'H',
        '\u{0399}' => 'I',
        '\u{039A}' => 'K',
        '\u{039C}' => 'M',
        '\u{039D}' => 'N',
        '\u{039F}' => 'O',
        '\u{03A1}' => 'P',
        '\u{03A4}' => 'T',
        '\u{03A7}' => 'X',
        '\u{03A5}' => 'Y',
        '\u{0396}' => 'Z',
        // Greek lowercase omicron
        '\u{03BF}' => 'o',
        _ => return None,
    };
    Some(latin)
}

/// Replaces every confusable character with its Latin counterpart.
pub fn fold_homoglyphs(text: &str) -> String {
    text.chars().map(|c| fold_char(c).unwrap_or(c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cyrillic_vowels_fold() {
        assert_eq!(fold_homoglyphs("h\u{0435}ll\u{043E}"), "hello");
        assert_eq!(fold_homoglyphs("\u{0410}\u{0415}\u{041E}\u{0430}"), "AEOa");
    }

    #[test]
    fn ascii_unchanged() {
        let s = "Plain ASCII, with 123 numbers & symbols!";
        assert_eq!(fold_homoglyphs(s), s);
    }

    #[test]
    fn non_confusables_untouched() {
        assert_eq!(fold_homoglyphs("жд café 東京 ß"), "жд café 東京 ß");
    }

    proptest! {
        #[test]
        fn idempotent(s in "\\PC{0,64}") {
            let once = fold_homoglyphs(&s);
            prop_assert_eq!(fold_homoglyphs(&once), once.clone());
            prop_assert_eq!(once.chars().count(), s.chars().count());
        }
    }
}
