//! Fixtures shared by the criterion benchmarks.

use hilbertforge::{parse_ideal, MonomialIdeal};

/// Ideals used across the benchmark groups, by short name.
pub fn corpus() -> Vec<(&'static str, MonomialIdeal)> {
    [
        ("m2", "ring: x,y; ideal: x, y"),
        ("x2_xy_y3", "ring: x,y; ideal: x^2, x*y, y^3"),
        ("xy_yz_zx", "ring: x,y,z; ideal: x*y, y*z, z*x"),
        ("x2_y2", "ring: x,y; ideal: x^2, y^2"),
        ("x3_xy_y4", "ring: x,y; ideal: x^3, x*y, y^4"),
    ]
    .into_iter()
    .map(|(name, text)| (name, parse_ideal(text).expect("corpus ideal parses").ideal))
    .collect()
}
