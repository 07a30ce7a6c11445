#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(t) = loh::io::read_travel(data) {
        let _ = t.check_symmetric();
    }
});
