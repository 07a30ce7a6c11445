#![no_main]

use libfuzzer_sys::fuzz_target;
use loh::theory::TheoryDocument;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(doc) = TheoryDocument::from_json(text) {
        let back = TheoryDocument::from_json(&doc.to_json().unwrap()).unwrap();
        assert_eq!(back.aspects.len(), doc.aspects.len());
    }
});
