#![no_main]

use libfuzzer_sys::fuzz_target;
use sspgraph::formats::{parse_edge_list, to_edge_list};

fuzz_target!(|data: &str| {
    if let Ok(g) = parse_edge_list(data) {
        assert_eq!(parse_edge_list(&to_edge_list(&g)).as_ref(), Ok(&g));
    }
});
