#![no_main]

use libfuzzer_sys::fuzz_target;
use linegroup::vankampen::presentation;
use linegroup::wiring::parse_pairs;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(pl) = parse_pairs(text) else { return };
    assert_eq!(parse_pairs(&pl.to_string()).unwrap(), pl);
    if pl.ell <= 8 && pl.pairs.len() <= 12 {
        let _ = presentation(&pl);
    }
});
