#![no_main]

use libfuzzer_sys::fuzz_target;
use linegroup::presentations::parse_certificate;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(c) = parse_certificate(text) else { return };
    assert_eq!(parse_certificate(&c.to_string()).unwrap(), c);
});
