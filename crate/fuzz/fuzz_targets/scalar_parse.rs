#![no_main]

use libfuzzer_sys::fuzz_target;
use modcheck::scalars::{Rig, RigElement};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    for rig in [Rig::Rationals, Rig::Integers, Rig::IntegersMod(6), Rig::Booleans, Rig::Naturals] {
        if let Ok(x) = RigElement::parse(text, rig) {
            assert_eq!(RigElement::parse(&x.to_string(), rig).unwrap(), x);
        }
    }
});
