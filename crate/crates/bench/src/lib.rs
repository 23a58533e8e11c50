//! Fixture curves for the benchmarks.

use clarr_core::arrangement::{Component, Curve};
use clarr_core::bundled;
use clarr_core::scalars::rat;

pub fn bundled_curve(name: &str) -> Curve {
    bundled::scene(name)
        .and_then(|s| s.curve())
        .expect("bundled scenes are valid")
}

/// `n` lines through `(0 : 0 : 1)` plus the line at infinity.
pub fn near_pencil(n: i64) -> Curve {
    let mut comps: Vec<Component> = (0..n)
        .map(|i| Component::line(format!("l{i}"), [rat(1), rat(i), rat(0)]).expect("line"))
        .collect();
    comps.push(Component::line("z", [rat(0), rat(0), rat(1)]).expect("line"));
    Curve::new(comps).expect("distinct lines")
}
