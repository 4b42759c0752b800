#![no_main]

use libfuzzer_sys::fuzz_target;
use linegroup::vankampen::Presentation;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(p) = Presentation::from_json(text) else { return };
    assert_eq!(Presentation::from_json(&p.to_json()).unwrap(), p);
});
