//! Helpers shared by the integration suites.

use scl_core::experiments::{random_chains, RandomChainSpec};
use scl_core::{Chain, GroupSpec};

pub fn group(spec: &str) -> GroupSpec {
    GroupSpec::parse(spec).unwrap()
}

pub fn chain(g: &str, words: &[&str]) -> Chain {
    Chain::parse(&group(g), words).unwrap()
}

/// Seeded random chains with a cap on the normalized length.
pub fn random_chains_capped(
    g: &str,
    word_len: usize,
    count: usize,
    seed: u64,
    max_len: usize,
) -> Vec<Chain> {
    let spec = RandomChainSpec {
        group: group(g),
        word_len,
        count: count * 4,
        seed,
    };
    random_chains(&spec)
        .into_iter()
        .filter(|c| c.len() <= max_len)
        .take(count)
        .collect()
}
