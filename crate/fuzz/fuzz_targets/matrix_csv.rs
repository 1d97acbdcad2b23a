#![no_main]
use gelfand::io::{matrix_to_csv, parse_matrix_csv};
use gelfand::NormKind;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|s: &str| {
    if let Ok(m) = parse_matrix_csv(s, NormKind::Inf) {
        assert_eq!(parse_matrix_csv(&matrix_to_csv(&m), NormKind::Inf).unwrap(), m);
    }
});
