//! Entry-size probe for one medium instance.

use std::time::Instant;

use scl_core::{scl_default, GroupSpec};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let group = args.get(1).map(String::as_str).unwrap_or("a8b0");
    let word = args.get(2).map(String::as_str).unwrap_or("abAB");
    let g = GroupSpec::parse(group).unwrap();
    let t0 = Instant::now();
    let r = scl_default(&g, &[word]).unwrap();
    println!(
        "{group} {word}: scl={} pivots={} time={:.2?}",
        r.value,
        r.pivots,
        t0.elapsed()
    );
}
