#![no_main]

use jguard::eval::{render_table, report_from_json, report_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(input) = std::str::from_utf8(data) else { return };
    if let Ok(entries) = report_from_json(input) {
        let _ = render_table(&entries);
        let json = report_to_json(&entries);
        assert_eq!(report_to_json(&report_from_json(&json).expect("re-parse")), json);
    }
});
