#![no_main]
use gelfand::io::{parse_weights_csv, weights_to_csv};
use gelfand::WeightedShift;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|s: &str| {
    if let Ok(w) = parse_weights_csv(s) {
        assert_eq!(parse_weights_csv(&weights_to_csv(&w)).unwrap(), w);
        let _ = WeightedShift::new(w);
    }
});
