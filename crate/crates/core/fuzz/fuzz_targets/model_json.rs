#![no_main]

use jguard::fusion::{model_from_json, model_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(input) = std::str::from_utf8(data) else { return };
    if let Ok(m) = model_from_json(input) {
        let json = model_to_json(&m);
        assert_eq!(model_to_json(&model_from_json(&json).expect("re-parse")), json);
    }
});
