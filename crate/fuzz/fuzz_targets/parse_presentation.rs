#![no_main]

use libfuzzer_sys::fuzz_target;
use linegroup::vankampen::parse_presentation;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(p) = parse_presentation(text) else { return };
    assert_eq!(parse_presentation(&p.to_string()).unwrap(), p);
});
