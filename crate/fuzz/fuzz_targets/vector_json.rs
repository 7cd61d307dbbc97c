#![no_main]
use grachs::json::{operad_from_json, parse_text, vector_from_json, vector_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(v) = parse_text(text) else { return };
    if let Ok(x) = vector_from_json(&v) {
        assert_eq!(vector_from_json(&vector_to_json(&x)).expect("round trip"), x);
    }
    let _ = operad_from_json(&v);
});
