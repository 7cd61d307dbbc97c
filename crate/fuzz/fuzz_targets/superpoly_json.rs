#![no_main]
use grachs::json::{parse_text, superpoly_from_json, superpoly_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(v) = parse_text(text) else { return };
    if let Ok(f) = superpoly_from_json(&v) {
        assert_eq!(superpoly_from_json(&superpoly_to_json(&f)).expect("round trip"), f);
    }
});
