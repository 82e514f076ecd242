//! Exact computation of stable commutator length (scl) in free products of
//! cyclic groups.
//!
//! The pipeline: parse and normalize a chain of cyclic words, enumerate the
//! combinatorial surface pieces it admits (rectangles, triangles, group
//! teeth), assemble the admissible polyhedron as an equality-form LP over
//! exact rationals, solve it with an exact simplex, and optionally rebuild an
//! explicit extremal surface from the minimizing vertex.

pub mod chain;
pub mod experiments;
pub mod lp;
pub mod surface;
pub mod pieces;
pub mod simplex;

use std::collections::BTreeMap;

use thiserror::Error;

/// Exact rational scalar used throughout.
pub type Rational = num_rational::BigRational;
pub type Integer = num_bigint::BigInt;

pub use chain::{Chain, ChainError, GroupSpec};
pub use simplex::{PivotRule, SolverOptions};

/// A contract breach inside the pipeline: the solver or assembly produced
/// something the theory forbids for a validated chain.
#[derive(Debug, Error)]
pub enum InternalError {
    #[error("solver reported the admissible polyhedron infeasible")]
    Infeasible,
    #[error("solver reported the objective unbounded below")]
    Unbounded,
    #[error("optimal value is negative: {0}")]
    NegativeValue(Rational),
    #[error("surface assembly failed: {0}")]
    Assembly(String),
}

#[derive(Debug, Error)]
pub enum SclError {
    #[error(transparent)]
    Input(#[from] ChainError),
    #[error(transparent)]
    Internal(#[from] InternalError),
}

/// Result of an scl computation, with enough context to rebuild surfaces.
#[derive(Debug, Clone)]
pub struct SclResult {
    pub chain: Chain,
    /// The exact stable commutator length.
    pub value: Rational,
    /// (rows, cols, nonzeros); zeros for an empty chain.
    pub lp_dims: (usize, usize, usize),
    pub pivots: u64,
    /// Optimal vertex, empty for an empty chain.
    pub vertex: BTreeMap<usize, Rational>,
    pub solution: Option<simplex::Solution>,
    pub lp: Option<lp::LinearProgram>,
}

/// Computes scl of an already-normalized chain.
pub fn scl_of_chain(chain: Chain, options: &SolverOptions) -> Result<SclResult, InternalError> {
    use num_traits::Zero;
    if chain.is_empty() {
        return Ok(SclResult {
            chain,
            value: Rational::zero(),
            lp_dims: (0, 0, 0),
            pivots: 0,
            vertex: BTreeMap::new(),
            solution: None,
            lp: None,
        });
    }
    let lp = lp::LinearProgram::build(&chain);
    let dims = lp.dims();
    let sol = simplex::solve(&lp, options).map_err(|e| match e {
        simplex::SimplexError::Unbounded => InternalError::Unbounded,
    })?;
    if sol.status != simplex::Status::Optimal {
        return Err(InternalError::Infeasible);
    }
    if sol.value < Rational::zero() {
        return Err(InternalError::NegativeValue(sol.value.clone()));
    }
    Ok(SclResult {
        chain,
        value: sol.value.clone(),
        lp_dims: dims,
        pivots: sol.pivots,
        vertex: sol.vertex.clone(),
        solution: Some(sol),
        lp: Some(lp),
    })
}

/// Parses, normalizes and solves in one call.
pub fn scl<S: AsRef<str>>(
    group: &GroupSpec,
    words: &[S],
    options: &SolverOptions,
) -> Result<SclResult, SclError> {
    let chain = Chain::parse(group, words)?;
    Ok(scl_of_chain(chain, options)?)
}

/// Convenience entry point with default solver options.
pub fn scl_default<S: AsRef<str>>(group: &GroupSpec, words: &[S]) -> Result<SclResult, SclError> {
    scl(group, words, &SolverOptions::default())
}
