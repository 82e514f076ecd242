//! Rough timing harness for the solver on representative chains.
//!
//! Run with: cargo run --release -p scl-core --example bench

use std::time::Instant;

use scl_core::{scl_default, GroupSpec};

fn time(group: &str, words: &[&str]) {
    let g = GroupSpec::parse(group).unwrap();
    let t0 = Instant::now();
    let r = scl_default(&g, words).unwrap();
    let dt = t0.elapsed();
    println!(
        "{:>8} {:<28} scl={:<8} dims={:?} pivots={} time={:.2?}",
        group,
        words.join("+"),
        r.value.to_string(),
        r.lp_dims,
        r.pivots,
        dt
    );
}

fn main() {
    time("a0b0", &["abAB"]);
    time("a3b2", &["ab"]);
    time("a3b2", &["aabab"]);
    time("a5b0", &["abAB"]);
    time("a8b0", &["abAB"]);
    time("a6b6", &["abAB"]);
    time("a5b5", &["abAABB", "ab"]);
    time("a4b4", &["abAABB", "ab"]);
    time("a3b3", &["aabABAAbaB"]);
    time("a4b3", &["aabABAAbaB"]);
    time("a3b4", &["aabABAAbaB"]);
    time("a4b4", &["aabABAAbaB"]);
}
