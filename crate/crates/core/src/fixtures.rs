//! Arrangements shipped with the crate.

use crate::geom::{parse_arrangement, Arrangement};

pub const TRIANGLE: &str = include_str!("../fixtures/triangle.arr");
pub const CYCLE5: &str = include_str!("../fixtures/cycle5.arr");
pub const CEVA: &str = include_str!("../fixtures/ceva.arr");
pub const PENCIL: &str = include_str!("../fixtures/pencil.arr");
pub const NEAR_PENCIL: &str = include_str!("../fixtures/near_pencil.arr");
pub const TRIANGLE_GENERIC: &str = include_str!("../fixtures/triangle_generic.arr");
pub const WIRING5: &str = include_str!("../fixtures/wiring5.arr");

/// `(name, file text)` for every shipped arrangement.
pub const ALL: &[(&str, &str)] = &[
    ("triangle", TRIANGLE),
    ("cycle5", CYCLE5),
    ("ceva", CEVA),
    ("pencil", PENCIL),
    ("near_pencil", NEAR_PENCIL),
    ("triangle_generic", TRIANGLE_GENERIC),
    ("wiring5", WIRING5),
];

/// Looks up a shipped arrangement by name.
pub fn arrangement(name: &str) -> Option<Arrangement> {
    ALL.iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| parse_arrangement(text).expect("shipped fixture parses"))
}
