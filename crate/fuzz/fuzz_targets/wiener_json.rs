#![no_main]
use gelfand::io::{parse_wiener_json, wiener_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|s: &str| {
    if let Ok(f) = parse_wiener_json(s) {
        assert_eq!(parse_wiener_json(&wiener_to_json(&f)).unwrap(), f);
    }
});
