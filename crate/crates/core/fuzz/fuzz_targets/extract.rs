#![no_main]

use jguard::attack::cyrillic_inject;
use jguard::extract_journalism_vector;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let v = extract_journalism_vector(text);
    assert!(v.values.iter().all(|x| x.is_finite() && *x >= 0.0));
    let n = v.norm();
    assert!(n == 0.0 || (n - 1.0).abs() <= 1e-9);
    assert_eq!(extract_journalism_vector(&cyrillic_inject(text)), v);
});
