#![no_main]

use libfuzzer_sys::fuzz_target;
use modcheck::scalars::Rig;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(r) = Rig::parse_descriptor(text) {
        assert_eq!(Rig::parse_descriptor(&r.to_string()).unwrap(), r);
    }
});
