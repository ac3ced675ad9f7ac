#![no_main]

use jguard::corpus::parse_paraphrases;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(input) = std::str::from_utf8(data) {
        let _ = parse_paraphrases(input);
    }
});
