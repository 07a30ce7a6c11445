#![no_main]

use libfuzzer_sys::fuzz_target;
use loh::scenarios::{scales_report, ScalesConfig};

fuzz_target!(|data: &[u8]| {
    if let Ok(r) = loh::io::read_scales(data) {
        let _ = scales_report(&r, &ScalesConfig::default());
    }
});
