#![no_main]

use libfuzzer_sys::fuzz_target;
use sspgraph::strong::{has_property, PropertyKind};
use sspgraph::RatMatrix;

fuzz_target!(|data: &str| {
    let Ok(m) = RatMatrix::parse_text(data) else {
        return;
    };
    assert_eq!(RatMatrix::parse_text(&m.to_text()).as_ref(), Ok(&m));
    if m.rows() <= 6 && m.is_square() && m.is_symmetric() {
        let _ = has_property(&m, PropertyKind::Ssp);
    }
});
