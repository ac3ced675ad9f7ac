#![no_main]

use jguard::fusion::{decode_embeddings, encode_embeddings};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(f) = decode_embeddings(data) {
        assert_eq!(encode_embeddings(&f).expect("encode"), data);
    }
});
