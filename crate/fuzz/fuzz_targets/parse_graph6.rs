#![no_main]

use libfuzzer_sys::fuzz_target;
use sspgraph::formats::{parse_graph6, to_graph6};

fuzz_target!(|data: &str| {
    if let Ok(g) = parse_graph6(data) {
        let s = to_graph6(&g).expect("parsed graphs re-encode");
        assert_eq!(s, data);
    }
});
