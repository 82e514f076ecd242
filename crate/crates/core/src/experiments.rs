//! Experiment harness: order sweeps against closed-form formulas, the
//! finite-approximation inequality, and scl histograms of random words.
//!
//! All outputs are exact rationals; CSV rows carry a decimal column purely
//! for plotting.

use std::io::{self, Write};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chain::{Chain, Factor, GroupSpec};
use crate::simplex::SolverOptions;
use crate::{scl_of_chain, Rational, SclError};

/// A grid of factor orders to sweep a fixed chain template over.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    /// Generator symbols, in factor order.
    pub symbols: Vec<char>,
    /// Candidate orders per factor (0 = infinite); the grid is the cartesian
    /// product.
    pub orders: Vec<Vec<u32>>,
    /// The chain's words over those symbols.
    pub words: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub orders: Vec<u32>,
    pub value: Option<Rational>,
    pub error: Option<String>,
}

/// Runs every grid point; per-point failures are recorded and the sweep
/// continues. Rows come back in grid order (last factor varies fastest).
pub fn sweep(spec: &SweepSpec, options: &SolverOptions) -> Vec<SweepRow> {
    let mut rows = Vec::new();
    let mut point = vec![0usize; spec.orders.len()];
    loop {
        let orders: Vec<u32> = point
            .iter()
            .zip(&spec.orders)
            .map(|(&i, range)| range[i])
            .collect();
        rows.push(run_point(spec, &orders, options));
        // Advance odometer.
        let mut k = spec.orders.len();
        loop {
            if k == 0 {
                return rows;
            }
            k -= 1;
            point[k] += 1;
            if point[k] < spec.orders[k].len() {
                break;
            }
            point[k] = 0;
        }
    }
}

fn run_point(spec: &SweepSpec, orders: &[u32], options: &SolverOptions) -> SweepRow {
    let built = GroupSpec::new(
        spec.symbols
            .iter()
            .zip(orders)
            .map(|(&symbol, &order)| Factor { symbol, order })
            .collect(),
    )
    .map_err(SclError::Input)
    .and_then(|group| {
        let chain = Chain::parse(&group, &spec.words)?;
        Ok(scl_of_chain(chain, options)?)
    });
    match built {
        Ok(result) => SweepRow {
            orders: orders.to_vec(),
            value: Some(result.value),
            error: None,
        },
        Err(e) => SweepRow {
            orders: orders.to_vec(),
            value: None,
            error: Some(e.to_string()),
        },
    }
}

/// CSV with one row per grid point: orders, exact rational, decimal, error.
pub fn write_sweep_csv<W: Write>(
    spec: &SweepSpec,
    rows: &[SweepRow],
    out: &mut W,
) -> io::Result<()> {
    let headers: Vec<String> = spec.symbols.iter().map(|s| format!("o_{s}")).collect();
    writeln!(out, "{},scl,scl_decimal,error", headers.join(","))?;
    for row in rows {
        let orders: Vec<String> = row.orders.iter().map(u32::to_string).collect();
        let (value, decimal) = match &row.value {
            Some(v) => (v.to_string(), format_decimal(v)),
            None => (String::new(), String::new()),
        };
        let error = row
            .error
            .as_deref()
            .unwrap_or("")
            .replace(',', ";");
        writeln!(out, "{},{},{},{}", orders.join(","), value, decimal, error)?;
    }
    Ok(())
}

fn format_decimal(v: &Rational) -> String {
    match v.to_f64() {
        Some(x) => format!("{x:.10}"),
        None => String::new(),
    }
}

/// Both sides of the finite-approximation bound
/// `scl_G <= scl_H <= scl_G + sum_j |Gamma|_j / (2 o_j)`.
#[derive(Debug, Clone)]
pub struct FiniteApproxReport {
    /// scl in the given group G (finite orders as specified).
    pub scl_quotient: Rational,
    /// scl in the free cover H (all orders 0).
    pub scl_free: Rational,
    /// Right-hand side: scl_G + sum over finite factors of |Gamma|_j / (2 o_j).
    pub bound: Rational,
    pub lower_ok: bool,
    pub upper_ok: bool,
    /// The upper bound holds with equality.
    pub tight: bool,
}

impl FiniteApproxReport {
    pub fn pass(&self) -> bool {
        self.lower_ok && self.upper_ok
    }
}

/// Computes scl in the group and in its free cover and checks the inequality
/// exactly. The chain must be homologically valid in the free cover, i.e.
/// every factor's signed exponent sum must vanish.
pub fn check_finite_approx<S: AsRef<str>>(
    group: &GroupSpec,
    words: &[S],
    options: &SolverOptions,
) -> Result<FiniteApproxReport, SclError> {
    let free_group = group.free_cover();
    let free_chain = Chain::parse(&free_group, words)?;
    let quotient_chain = Chain::parse(group, words)?;

    // Letter counts per factor are taken in the free form.
    let mut correction = Rational::zero();
    for (j, factor) in group.factors().iter().enumerate() {
        if factor.is_finite() {
            let count = free_chain.factor_count(j);
            correction += Rational::new(
                BigInt::from(count),
                BigInt::from(2 * factor.order as i64),
            );
        }
    }

    let scl_free = scl_of_chain(free_chain, options)?.value;
    let scl_quotient = scl_of_chain(quotient_chain, options)?.value;
    let bound = &scl_quotient + &correction;
    Ok(FiniteApproxReport {
        lower_ok: scl_quotient <= scl_free,
        upper_ok: scl_free <= bound,
        tight: scl_free == bound,
        scl_quotient,
        scl_free,
        bound,
    })
}

/// Seeded random-word sampling: uniform i.i.d. letters over both cases of
/// every generator, rejection-resampled until the chain is homologically
/// valid and nonempty after normalization.
#[derive(Debug, Clone)]
pub struct RandomChainSpec {
    pub group: GroupSpec,
    pub word_len: usize,
    pub count: usize,
    pub seed: u64,
}

pub fn random_chains(spec: &RandomChainSpec) -> Vec<Chain> {
    let mut alphabet = Vec::new();
    for f in spec.group.factors() {
        alphabet.push(f.symbol);
        alphabet.push(f.symbol.to_ascii_uppercase());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut chains = Vec::with_capacity(spec.count);
    while chains.len() < spec.count {
        let word: String = (0..spec.word_len)
            .map(|_| alphabet[rng.gen_range(0..alphabet.len())])
            .collect();
        if let Ok(chain) = Chain::parse(&spec.group, &[word]) {
            if !chain.is_empty() {
                chains.push(chain);
            }
        }
    }
    chains
}

/// Bins exact values at the given width: rows of (bin lower edge, count),
/// sorted by edge.
pub fn histogram(values: &[Rational], bin_width: &Rational) -> Vec<(Rational, usize)> {
    assert!(bin_width.is_positive(), "bin width must be positive");
    let mut counts: std::collections::BTreeMap<BigInt, usize> = Default::default();
    for v in values {
        let idx = (v / bin_width).floor().to_integer();
        *counts.entry(idx).or_default() += 1;
    }
    counts
        .into_iter()
        .map(|(idx, n)| (Rational::from_integer(idx) * bin_width, n))
        .collect()
}

pub fn write_histogram_csv<W: Write>(
    rows: &[(Rational, usize)],
    out: &mut W,
) -> io::Result<()> {
    writeln!(out, "bin_lower,bin_lower_decimal,count")?;
    for (edge, count) in rows {
        writeln!(out, "{},{},{}", edge, format_decimal(edge), count)?;
    }
    Ok(())
}
