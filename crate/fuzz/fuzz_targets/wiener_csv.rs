#![no_main]
use gelfand::io::{parse_wiener_csv, wiener_to_csv};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|s: &str| {
    if let Ok(f) = parse_wiener_csv(s) {
        assert_eq!(parse_wiener_csv(&wiener_to_csv(&f)).unwrap(), f);
    }
});
