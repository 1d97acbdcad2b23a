#![no_main]
use gelfand::io::parse_wiener_inline;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|s: &str| {
    if let Ok(f) = parse_wiener_inline(s) {
        let _ = f.l1_norm();
        let _ = f.evaluate(1.0);
    }
});
