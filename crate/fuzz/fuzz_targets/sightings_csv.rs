#![no_main]

use libfuzzer_sys::fuzz_target;
use loh::io::parse_travel;

fuzz_target!(|data: &[u8]| {
    let travel = parse_travel("A,B,C\n0,15,60\n15,0,50\n60,50,0\n").unwrap();
    let _ = loh::io::read_sightings(data, &travel);
});
