#![no_main]

use libfuzzer_sys::fuzz_target;
use modcheck::modality::{ArrowExpr, ObjExpr};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(e) = ArrowExpr::parse(text) {
        assert_eq!(ArrowExpr::parse(&e.to_string()).unwrap(), e);
    }
    if let Ok(o) = ObjExpr::parse(text) {
        assert_eq!(ObjExpr::parse(&o.to_string()).unwrap(), o);
    }
});
