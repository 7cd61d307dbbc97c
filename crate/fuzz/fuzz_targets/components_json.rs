#![no_main]
use grachs::json::{components_from_json, components_to_json, parse_text};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(v) = parse_text(text) else { return };
    if let Ok(c) = components_from_json(&v) {
        assert_eq!(components_from_json(&components_to_json(&c)).expect("round trip"), c);
    }
});
