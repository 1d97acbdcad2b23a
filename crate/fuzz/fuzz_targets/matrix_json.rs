#![no_main]
use gelfand::io::{matrix_to_json, parse_matrix_auto, parse_matrix_json};
use gelfand::NormKind;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|s: &str| {
    let _ = parse_matrix_auto(s, NormKind::One);
    if let Ok(m) = parse_matrix_json(s, NormKind::Inf) {
        assert_eq!(parse_matrix_json(&matrix_to_json(&m), NormKind::Inf).unwrap(), m);
    }
});
