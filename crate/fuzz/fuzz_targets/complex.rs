#![no_main]
use gelfand::io::{fmt_complex, parse_complex};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|s: &str| {
    if let Ok(z) = parse_complex(s) {
        assert_eq!(parse_complex(&fmt_complex(z)).unwrap(), z);
    }
});
