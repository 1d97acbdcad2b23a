#![no_main]
use gelfand::io::{parse_sequence_csv, sequence_to_csv};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|s: &str| {
    if let Ok(seq) = parse_sequence_csv(s) {
        let again = parse_sequence_csv(&sequence_to_csv(&seq)).expect("written sequence parses");
        assert_eq!(again.values(), seq.values());
    }
});
