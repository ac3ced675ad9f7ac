#![no_main]

use jguard::corpus::{corpus_to_jsonl, parse_corpus};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(input) = std::str::from_utf8(data) else { return };
    if let Ok(c) = parse_corpus(input, "fuzz") {
        let again = parse_corpus(&corpus_to_jsonl(&c), "fuzz").expect("re-parse");
        assert_eq!(again, c);
    }
});
