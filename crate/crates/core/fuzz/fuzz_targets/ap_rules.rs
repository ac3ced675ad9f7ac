#![no_main]

use jguard::features::{count_date_violations, count_number_violations, count_time_violations};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = count_date_violations(text);
        let _ = count_time_violations(text);
        let _ = count_number_violations(text);
    }
});
