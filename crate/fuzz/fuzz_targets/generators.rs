#![no_main]
use gelfand::generators::{SequenceGen, WeightGen};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|s: &str| {
    if let Ok(g) = s.parse::<SequenceGen>() {
        let _ = g.to_string().parse::<SequenceGen>().unwrap();
        let _ = g.materialize(8);
    }
    if let Ok(w) = s.parse::<WeightGen>() {
        let _ = w.materialize(8);
    }
});
