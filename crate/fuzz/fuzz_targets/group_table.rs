#![no_main]

use libfuzzer_sys::fuzz_target;
use linegroup::presentations::FiniteGroupTable;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(g) = FiniteGroupTable::parse("fuzz", text) else { return };
    assert_eq!(FiniteGroupTable::parse("fuzz", &g.to_string()).unwrap(), g);
});
