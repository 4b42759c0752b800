#![no_main]

use libfuzzer_sys::fuzz_target;
use linegroup::geom::{compute_lattice, parse_arrangement};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(arr) = parse_arrangement(text) else { return };
    // Rendering must parse back to the same arrangement.
    assert_eq!(parse_arrangement(&arr.to_text()).unwrap(), arr);
    if arr.len() <= 12 {
        let _ = compute_lattice(&arr);
    }
});
