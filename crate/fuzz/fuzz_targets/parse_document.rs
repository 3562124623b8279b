#![no_main]

use libfuzzer_sys::fuzz_target;
use sspgraph::document::Document;

fuzz_target!(|data: &str| {
    if let Ok(doc) = Document::from_json(data) {
        let _ = doc.replay();
    }
});
