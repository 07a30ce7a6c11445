#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(h) = loh::io::parse_hypothesis(text) {
        let _ = h.to_spec(2);
    }
});
