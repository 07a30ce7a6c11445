#![no_main]

use libfuzzer_sys::fuzz_target;
use loh::formula::Metric;

fuzz_target!(|data: &[u8]| {
    if let Ok(d) = loh::io::read_dataset(data) {
        let _ = d.observations(Metric::Euclidean, Metric::Absolute);
        let _ = d.hypothetical();
    }
});
