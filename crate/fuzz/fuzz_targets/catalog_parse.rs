#![no_main]

use libfuzzer_sys::fuzz_target;
use modcheck::lawcheck::parse_catalog;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let _ = parse_catalog(text);
});
