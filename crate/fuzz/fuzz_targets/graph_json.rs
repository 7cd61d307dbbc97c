#![no_main]
use grachs::json::{graph_from_json, graph_to_json, parse_text};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(v) = parse_text(text) else { return };
    if let Ok(g) = graph_from_json(&v, None) {
        let back = graph_from_json(&graph_to_json(&g), Some(g.colors())).expect("round trip");
        assert_eq!(back, g);
    }
});
