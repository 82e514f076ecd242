//! Exact two-phase simplex over the rationals.
//!
//! The solver never lets a floating-point number decide optimality. The
//! working state is kept fraction-free: with basis matrix `B` it stores the
//! integer matrix `M = d * B^-1` and the scalar `d = det(B)` (Edmonds
//! integer pivoting), so every pivot is integer multiply / exact divide with
//! no per-entry gcd reduction. Arithmetic runs in `i128` with checked
//! operations and transparently restarts in arbitrary precision if anything
//! would overflow, so the result is exact either way.
//!
//! Degenerate vertices are the norm for these programs, so the anti-cycling
//! rule matters. The default combines Dantzig pricing with a lexicographic
//! ratio test against the basis the phase started from: every pivot strictly
//! decreases the lexicographic objective, so no basis repeats and termination
//! is guaranteed without crawling through Bland-rule pivots. Bland's rule
//! remains available as an alternative.
//!
//! An optional floating-point warm start proposes a basis; that basis is
//! refactorized and checked in exact arithmetic, and exact pivoting resumes
//! from it (or from scratch when the proposal is unusable).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::lp::LinearProgram;
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotRule {
    /// Dantzig pricing with a lexicographic ratio test. Default.
    Lexicographic,
    /// Bland's rule from the first pivot.
    Bland,
}

#[derive(Debug, Clone)]
pub struct SolverOptions {
    pub pivot_rule: PivotRule,
    /// Propose a starting basis with a floating-point run first.
    pub warm_start: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            pivot_rule: PivotRule::Lexicographic,
            warm_start: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Optimal,
    Infeasible,
}

/// What occupies a basis row: a structural column, or an artificial left over
/// from a redundant constraint (always at value zero).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisSlot {
    Structural(usize),
    Artificial(usize),
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub status: Status,
    /// Exact optimal objective value (zero when infeasible).
    pub value: Rational,
    /// Sparse optimal vertex: column -> positive rational value.
    pub vertex: BTreeMap<usize, Rational>,
    pub basis: Vec<BasisSlot>,
    pub pivots: u64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimplexError {
    #[error("linear program is unbounded")]
    Unbounded,
}

/// Integer scalar the pivoting runs in. The `i128` implementation reports
/// overflow through `None`; `BigInt` never does.
trait PivotInt: Sized + Clone + Ord + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn is_positive(&self) -> bool;
    fn checked_neg(&self) -> Option<Self>;
    fn checked_add(&self, o: &Self) -> Option<Self>;
    fn checked_sub(&self, o: &Self) -> Option<Self>;
    fn checked_mul(&self, o: &Self) -> Option<Self>;
    /// Division known to be exact by construction.
    fn exact_div(&self, o: &Self) -> Option<Self>;
    fn from_bigint(v: &BigInt) -> Option<Self>;
    fn to_bigint(&self) -> BigInt;
}

impl PivotInt for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn is_positive(&self) -> bool {
        *self > 0
    }
    fn checked_neg(&self) -> Option<Self> {
        i128::checked_neg(*self)
    }
    fn checked_add(&self, o: &Self) -> Option<Self> {
        i128::checked_add(*self, *o)
    }
    fn checked_sub(&self, o: &Self) -> Option<Self> {
        i128::checked_sub(*self, *o)
    }
    fn checked_mul(&self, o: &Self) -> Option<Self> {
        i128::checked_mul(*self, *o)
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        debug_assert!(*o != 0 && self % o == 0);
        i128::checked_div(*self, *o)
    }
    fn from_bigint(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl PivotInt for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn checked_neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn checked_add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn checked_sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn checked_mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        debug_assert!(!Zero::is_zero(o) && Zero::is_zero(&(self % o)));
        Some(self / o)
    }
    fn from_bigint(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// The LP with all rows scaled to integers and rhs made nonnegative.
struct IntLp {
    m: usize,
    n: usize,
    cols: Vec<Vec<(usize, BigInt)>>,
    b: Vec<BigInt>,
    /// Structural costs scaled by `cost_scale`.
    cost: Vec<BigInt>,
    cost_scale: BigInt,
}

fn integerize(lp: &LinearProgram) -> IntLp {
    let m = lp.num_rows;
    let n = lp.num_cols();
    let mut row_scale: Vec<BigInt> = vec![<BigInt as One>::one(); m];
    for col in &lp.cols {
        for (r, a) in col {
            row_scale[*r] = row_scale[*r].lcm(a.denom());
        }
    }
    for (r, b) in lp.rhs.iter().enumerate() {
        row_scale[r] = row_scale[r].lcm(b.denom());
    }
    // Flip rows with negative scaled rhs.
    let mut sigma: Vec<i8> = vec![1; m];
    let mut b: Vec<BigInt> = Vec::with_capacity(m);
    for (r, v) in lp.rhs.iter().enumerate() {
        let mut scaled = v.numer() * (&row_scale[r] / v.denom());
        if Signed::is_negative(&scaled) {
            sigma[r] = -1;
            scaled = -scaled;
        }
        b.push(scaled);
    }
    let cols: Vec<Vec<(usize, BigInt)>> = lp
        .cols
        .iter()
        .map(|col| {
            col.iter()
                .map(|(r, a)| {
                    let mut scaled = a.numer() * (&row_scale[*r] / a.denom());
                    if sigma[*r] < 0 {
                        scaled = -scaled;
                    }
                    (*r, scaled)
                })
                .collect()
        })
        .collect();
    let mut cost_scale = <BigInt as One>::one();
    for c in &lp.costs {
        cost_scale = cost_scale.lcm(c.denom());
    }
    let cost: Vec<BigInt> = lp
        .costs
        .iter()
        .map(|c| c.numer() * (&cost_scale / c.denom()))
        .collect();
    IntLp {
        m,
        n,
        cols,
        b,
        cost,
        cost_scale,
    }
}

/// Problem data converted to the working scalar.
struct Data<T> {
    m: usize,
    n: usize,
    cols: Vec<Vec<(usize, T)>>,
    b: Vec<T>,
    cost: Vec<T>,
}

fn convert<T: PivotInt>(lp: &IntLp) -> Option<Data<T>> {
    let mut cols = Vec::with_capacity(lp.cols.len());
    for col in &lp.cols {
        let mut c = Vec::with_capacity(col.len());
        for (r, a) in col {
            c.push((*r, T::from_bigint(a)?));
        }
        cols.push(c);
    }
    let b = lp.b.iter().map(|v| T::from_bigint(v)).collect::<Option<_>>()?;
    let cost = lp
        .cost
        .iter()
        .map(|v| T::from_bigint(v))
        .collect::<Option<_>>()?;
    Some(Data {
        m: lp.m,
        n: lp.n,
        cols,
        b,
        cost,
    })
}

/// Why a typed run stopped early.
enum Abort {
    Overflow,
    Unbounded,
}

impl From<OverflowErr> for Abort {
    fn from(_: OverflowErr) -> Self {
        Abort::Overflow
    }
}

/// Marker for arithmetic overflow in the working scalar.
struct OverflowErr;

type Arith<T> = Result<T, OverflowErr>;

fn ck<T>(v: Option<T>) -> Arith<T> {
    v.ok_or(OverflowErr)
}

/// Fraction-free revised-simplex state: `mat = d * B^-1`, `xbn = d * B^-1 b`.
struct Tableau<'a, T: PivotInt> {
    data: &'a Data<T>,
    m: usize,
    mat: Vec<T>,
    d: T,
    xbn: Vec<T>,
    /// Basic variable per row; values >= n are artificials (n + original row).
    basis: Vec<usize>,
    in_basis: Vec<bool>,
    pivots: u64,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Phase {
    One,
    Two,
}

impl<'a, T: PivotInt> Tableau<'a, T> {
    fn new(data: &'a Data<T>) -> Self {
        let m = data.m;
        let mut mat = vec![T::zero(); m * m];
        for i in 0..m {
            mat[i * m + i] = T::one();
        }
        Tableau {
            data,
            m,
            mat,
            d: T::one(),
            xbn: data.b.clone(),
            basis: (data.n..data.n + m).collect(),
            in_basis: vec![false; data.n],
            pivots: 0,
        }
    }

    fn is_artificial(&self, var: usize) -> bool {
        var >= self.data.n
    }

    /// `w = M . A_q` for a structural or artificial column.
    fn transformed_column(&self, var: usize) -> Arith<Vec<T>> {
        let m = self.m;
        let mut w = vec![T::zero(); m];
        if self.is_artificial(var) {
            let r = var - self.data.n;
            for i in 0..m {
                w[i] = self.mat[i * m + r].clone();
            }
            return Ok(w);
        }
        for (r, a) in &self.data.cols[var] {
            for (i, wi) in w.iter_mut().enumerate() {
                let mik = &self.mat[i * m + r];
                if !mik.is_zero() {
                    *wi = ck(wi.checked_add(&ck(mik.checked_mul(a))?))?;
                }
            }
        }
        Ok(w)
    }

    /// Single entry `(M . A_var)[row]`, used to probe drive-out pivots and
    /// lexicographic tie-breaks.
    fn transformed_entry(&self, row: usize, var: usize) -> Arith<T> {
        let m = self.m;
        if self.is_artificial(var) {
            return Ok(self.mat[row * m + (var - self.data.n)].clone());
        }
        let mut t = T::zero();
        for (r, a) in &self.data.cols[var] {
            let v = &self.mat[row * m + r];
            if !v.is_zero() {
                t = ck(t.checked_add(&ck(v.checked_mul(a))?))?;
            }
        }
        Ok(t)
    }

    /// Integer Gauss-Jordan pivot on row `r`, entering variable `q` with
    /// transformed column `w`. Keeps `mat = d' * B'^-1` with `d' = w[r]`.
    fn pivot(&mut self, r: usize, q: usize, w: &[T]) -> Arith<()> {
        let m = self.m;
        debug_assert!(!w[r].is_zero());
        let identity_scale = w[r] == self.d;
        for i in 0..m {
            if i == r {
                continue;
            }
            let wi = &w[i];
            if wi.is_zero() {
                if identity_scale {
                    continue;
                }
                // Row still rescales by w[r]/d.
                for k in 0..m {
                    let v = &self.mat[i * m + k];
                    if !v.is_zero() {
                        self.mat[i * m + k] =
                            ck(ck(v.checked_mul(&w[r]))?.exact_div(&self.d))?;
                    }
                }
                if !self.xbn[i].is_zero() {
                    self.xbn[i] =
                        ck(ck(self.xbn[i].checked_mul(&w[r]))?.exact_div(&self.d))?;
                }
            } else {
                for k in 0..m {
                    let v = &self.mat[i * m + k];
                    let p = &self.mat[r * m + k];
                    if v.is_zero() && p.is_zero() {
                        continue;
                    }
                    let t = ck(ck(v.checked_mul(&w[r]))?
                        .checked_sub(&ck(wi.checked_mul(p))?))?;
                    self.mat[i * m + k] = ck(t.exact_div(&self.d))?;
                }
                let t = ck(ck(self.xbn[i].checked_mul(&w[r]))?
                    .checked_sub(&ck(wi.checked_mul(&self.xbn[r]))?))?;
                self.xbn[i] = ck(t.exact_div(&self.d))?;
            }
        }
        let old = self.basis[r];
        if !self.is_artificial(old) {
            self.in_basis[old] = false;
        }
        if !self.is_artificial(q) {
            self.in_basis[q] = true;
        }
        self.basis[r] = q;
        self.d = w[r].clone();
        self.pivots += 1;
        Ok(())
    }

    fn cost_of(&self, var: usize, phase: Phase) -> T {
        match phase {
            Phase::One => {
                if self.is_artificial(var) {
                    T::one()
                } else {
                    T::zero()
                }
            }
            Phase::Two => {
                if self.is_artificial(var) {
                    T::zero()
                } else {
                    self.data.cost[var].clone()
                }
            }
        }
    }

    /// `yn = c_B . M`, so the true dual vector is `yn / d`.
    fn dual_numerators(&self, phase: Phase) -> Arith<Vec<T>> {
        let m = self.m;
        let mut yn = vec![T::zero(); m];
        for i in 0..m {
            let ci = self.cost_of(self.basis[i], phase);
            if ci.is_zero() {
                continue;
            }
            for k in 0..m {
                let v = &self.mat[i * m + k];
                if !v.is_zero() {
                    yn[k] = ck(yn[k].checked_add(&ck(ci.checked_mul(v))?))?;
                }
            }
        }
        Ok(yn)
    }

    /// Reduced-cost numerator `d*c_j - yn . A_j`; reduced cost is this over d.
    fn reduced_cost_numerator(&self, j: usize, yn: &[T], phase: Phase) -> Arith<T> {
        let mut nu = ck(self.d.checked_mul(&self.cost_of(j, phase)))?;
        for (r, a) in &self.data.cols[j] {
            let y = &yn[*r];
            if !y.is_zero() {
                nu = ck(nu.checked_sub(&ck(y.checked_mul(a))?))?;
            }
        }
        Ok(nu)
    }

    fn sign_negative(&self) -> bool {
        self.d.is_negative()
    }

    /// The entry with the working sign applied, so feasibility reads `>= 0`.
    fn signed(&self, x: &T) -> Arith<T> {
        if self.sign_negative() {
            ck(x.checked_neg())
        } else {
            Ok(x.clone())
        }
    }

    /// Current basic value of row i as a rational.
    fn basic_value(&self, i: usize) -> Rational {
        Rational::new(self.xbn[i].to_bigint(), self.d.to_bigint())
    }

    /// Runs one phase to optimality.
    fn run(&mut self, phase: Phase, rule: PivotRule) -> Result<(), Abort> {
        // Reference basis for the lexicographic tie-break: relative to it the
        // current rows read (xb | I) at phase start, which is lex-positive,
        // and the lex rule keeps it that way, so no basis can repeat.
        let reference = self.basis.clone();
        loop {
            let yn = self.dual_numerators(phase)?;
            let mut entering: Option<usize> = None;
            let mut best_nu: Option<T> = None;
            for j in 0..self.data.n {
                if self.in_basis[j] {
                    continue;
                }
                let nu = self.signed(&self.reduced_cost_numerator(j, &yn, phase)?)?;
                if nu.is_negative() {
                    match rule {
                        PivotRule::Bland => {
                            entering = Some(j);
                            break;
                        }
                        PivotRule::Lexicographic => {
                            if best_nu.as_ref().map_or(true, |b| &nu < b) {
                                best_nu = Some(nu);
                                entering = Some(j);
                            }
                        }
                    }
                }
            }
            let Some(q) = entering else {
                return Ok(());
            };
            let w = self.transformed_column(q)?;

            // Kick a leftover artificial first: it sits at value zero and
            // must not move off it.
            let mut leaving: Option<usize> = None;
            if phase == Phase::Two {
                for i in 0..self.m {
                    if self.is_artificial(self.basis[i]) && !w[i].is_zero() {
                        leaving = Some(i);
                        break;
                    }
                }
            }
            if let Some(r) = leaving {
                debug_assert!(self.xbn[r].is_zero());
                self.pivot(r, q, &w)?;
                continue;
            }
            let r = match rule {
                PivotRule::Bland => self.ratio_test_bland(&w)?,
                PivotRule::Lexicographic => self.ratio_test_lex(&w, &reference)?,
            };
            let Some(r) = r else {
                return Err(Abort::Unbounded);
            };
            self.pivot(r, q, &w)?;
        }
    }

    /// Minimum-ratio row, ties broken by smallest basic variable index.
    fn ratio_test_bland(&self, w: &[T]) -> Arith<Option<usize>> {
        let mut best: Option<(T, T, usize)> = None; // (num, den, row)
        for i in 0..self.m {
            let den = self.signed(&w[i])?;
            if !den.is_positive() {
                continue;
            }
            let num = self.signed(&self.xbn[i])?;
            debug_assert!(!num.is_negative());
            let better = match &best {
                None => true,
                Some((bn, bd, br)) => {
                    let lhs = ck(num.checked_mul(bd))?;
                    let rhs = ck(bn.checked_mul(&den))?;
                    lhs < rhs || (lhs == rhs && self.basis[i] < self.basis[*br])
                }
            };
            if better {
                best = Some((num, den, i));
            }
        }
        Ok(best.map(|(_, _, r)| r))
    }

    /// Minimum-ratio row with lexicographic tie-breaking against the given
    /// reference basis. The tie-break columns are computed lazily; two
    /// distinct rows can never tie on all of them because the reference
    /// matrix is nonsingular.
    fn ratio_test_lex(&self, w: &[T], reference: &[usize]) -> Arith<Option<usize>> {
        let mut tied: Vec<usize> = Vec::new();
        let mut best_num = T::zero();
        let mut best_den = T::one();
        for i in 0..self.m {
            let den = self.signed(&w[i])?;
            if !den.is_positive() {
                continue;
            }
            let num = self.signed(&self.xbn[i])?;
            debug_assert!(!num.is_negative());
            if tied.is_empty() {
                tied.push(i);
                best_num = num;
                best_den = den;
                continue;
            }
            let lhs = ck(num.checked_mul(&best_den))?;
            let rhs = ck(best_num.checked_mul(&den))?;
            if lhs < rhs {
                tied.clear();
                tied.push(i);
                best_num = num;
                best_den = den;
            } else if lhs == rhs {
                tied.push(i);
            }
        }
        if tied.is_empty() {
            return Ok(None);
        }
        let mut k = 0;
        while tied.len() > 1 && k < self.m {
            // Compare signed T[i][k] / signed w[i] across the tied rows,
            // where T[i][k] = (M . A_reference[k])[i].
            let mut best_rows: Vec<usize> = Vec::new();
            let mut bn = T::zero();
            let mut bd = T::one();
            for &i in &tied {
                let num = self.signed(&self.transformed_entry(i, reference[k])?)?;
                let den = self.signed(&w[i])?;
                if best_rows.is_empty() {
                    best_rows.push(i);
                    bn = num;
                    bd = den;
                    continue;
                }
                let lhs = ck(num.checked_mul(&bd))?;
                let rhs = ck(bn.checked_mul(&den))?;
                if lhs < rhs {
                    best_rows.clear();
                    best_rows.push(i);
                    bn = num;
                    bd = den;
                } else if lhs == rhs {
                    best_rows.push(i);
                }
            }
            tied = best_rows;
            k += 1;
        }
        debug_assert_eq!(tied.len(), 1, "reference matrix rows cannot fully tie");
        Ok(Some(tied[0]))
    }

    /// Phase-1 objective is zero iff no artificial carries a nonzero value.
    fn artificials_cleared(&self) -> bool {
        (0..self.m).all(|i| {
            !self.is_artificial(self.basis[i]) || self.xbn[i].is_zero()
        })
    }

    /// Pivots basic artificials out wherever a structural column can replace
    /// them; rows that admit none are redundant and keep their artificial.
    fn drive_out_artificials(&mut self) -> Arith<()> {
        for r in 0..self.m {
            if !self.is_artificial(self.basis[r]) {
                continue;
            }
            debug_assert!(self.xbn[r].is_zero());
            let mut candidate = None;
            for j in 0..self.data.n {
                if !self.in_basis[j] && !self.transformed_entry(r, j)?.is_zero() {
                    candidate = Some(j);
                    break;
                }
            }
            if let Some(q) = candidate {
                let w = self.transformed_column(q)?;
                self.pivot(r, q, &w)?;
            }
        }
        Ok(())
    }

    fn extract(&self, status: Status, cost_scale: &BigInt) -> Solution {
        let mut vertex = BTreeMap::new();
        let mut basis = Vec::with_capacity(self.m);
        let mut value = Rational::zero();
        for i in 0..self.m {
            let var = self.basis[i];
            if self.is_artificial(var) {
                basis.push(BasisSlot::Artificial(var - self.data.n));
            } else {
                basis.push(BasisSlot::Structural(var));
                let x = self.basic_value(i);
                if !x.is_zero() {
                    vertex.insert(var, x);
                }
            }
        }
        if status == Status::Optimal {
            for i in 0..self.m {
                let var = self.basis[i];
                if !self.is_artificial(var) && !self.data.cost[var].is_zero() {
                    value += Rational::from_integer(self.data.cost[var].to_bigint())
                        * self.basic_value(i);
                }
            }
            value /= Rational::from_integer(cost_scale.clone());
        }
        Solution {
            status,
            value,
            vertex,
            basis,
            pivots: self.pivots,
        }
    }
}

enum TypedOutcome {
    Done(Result<Solution, SimplexError>),
    Overflowed,
}

fn solve_typed<T: PivotInt>(
    int_lp: &IntLp,
    options: &SolverOptions,
    warm_basis: Option<&[usize]>,
) -> TypedOutcome {
    let Some(data) = convert::<T>(int_lp) else {
        return TypedOutcome::Overflowed;
    };
    match run_typed(&data, int_lp, options, warm_basis) {
        Ok(solution) => TypedOutcome::Done(Ok(solution)),
        Err(Abort::Unbounded) => TypedOutcome::Done(Err(SimplexError::Unbounded)),
        Err(Abort::Overflow) => TypedOutcome::Overflowed,
    }
}

fn run_typed<T: PivotInt>(
    data: &Data<T>,
    int_lp: &IntLp,
    options: &SolverOptions,
    warm_basis: Option<&[usize]>,
) -> Result<Solution, Abort> {
    if let Some(basis) = warm_basis {
        if let Some(mut tab) = refactorize(data, basis)? {
            let feasible = (0..tab.m).all(|i| {
                !tab.signed(&tab.xbn[i]).map(|v| v.is_negative()).unwrap_or(true)
            });
            if feasible && tab.artificials_cleared() {
                tab.run(Phase::Two, options.pivot_rule)?;
                return Ok(tab.extract(Status::Optimal, &int_lp.cost_scale));
            }
        }
    }
    let mut tab = Tableau::new(data);
    tab.run(Phase::One, options.pivot_rule)?;
    if !tab.artificials_cleared() {
        return Ok(tab.extract(Status::Infeasible, &int_lp.cost_scale));
    }
    tab.drive_out_artificials()?;
    tab.run(Phase::Two, options.pivot_rule)?;
    Ok(tab.extract(Status::Optimal, &int_lp.cost_scale))
}

/// Rebuilds a tableau for a proposed basis by entering its columns one by
/// one; `Ok(None)` when the columns are dependent.
fn refactorize<'a, T: PivotInt>(
    data: &'a Data<T>,
    basis_vars: &[usize],
) -> Result<Option<Tableau<'a, T>>, Abort> {
    if basis_vars.len() != data.m {
        return Ok(None);
    }
    let mut tab = Tableau::new(data);
    let mut assigned = vec![false; data.m];
    for &q in basis_vars {
        if q >= data.n {
            // Keep the artificial slot for its own row if still free.
            let r = q - data.n;
            if assigned[r] {
                return Ok(None);
            }
            assigned[r] = true;
            continue;
        }
        let w = tab.transformed_column(q)?;
        let Some(r) = (0..data.m).find(|&i| !assigned[i] && !w[i].is_zero()) else {
            return Ok(None);
        };
        tab.pivot(r, q, &w)?;
        assigned[r] = true;
    }
    tab.pivots = 0;
    Ok(Some(tab))
}

/// Solves `min c.v : A v = b, v >= 0` exactly.
pub fn solve(lp: &LinearProgram, options: &SolverOptions) -> Result<Solution, SimplexError> {
    let int_lp = integerize(lp);
    if int_lp.m == 0 {
        if int_lp.cost.iter().any(|c| Signed::is_negative(c)) {
            return Err(SimplexError::Unbounded);
        }
        return Ok(Solution {
            status: Status::Optimal,
            value: Rational::zero(),
            vertex: BTreeMap::new(),
            basis: Vec::new(),
            pivots: 0,
        });
    }
    let warm = if options.warm_start {
        float_basis(&int_lp)
    } else {
        None
    };
    match solve_typed::<i128>(&int_lp, options, warm.as_deref()) {
        TypedOutcome::Done(result) => result,
        TypedOutcome::Overflowed => {
            match solve_typed::<BigInt>(&int_lp, options, warm.as_deref()) {
                TypedOutcome::Done(result) => result,
                TypedOutcome::Overflowed => unreachable!("BigInt arithmetic cannot overflow"),
            }
        }
    }
}

/// Solves with default options.
pub fn solve_default(lp: &LinearProgram) -> Result<Solution, SimplexError> {
    solve(lp, &SolverOptions::default())
}

/// Floating-point two-phase simplex; returns a candidate optimal basis.
fn float_basis(lp: &IntLp) -> Option<Vec<usize>> {
    const EPS: f64 = 1e-9;
    let m = lp.m;
    let n = lp.n;
    let width = n + m + 1;
    let big = |x: &BigInt| -> f64 { x.to_f64().unwrap_or(f64::NAN) };
    let mut t = vec![0.0f64; m * width];
    for (j, col) in lp.cols.iter().enumerate() {
        for (r, a) in col {
            t[r * width + j] = big(a);
        }
    }
    for r in 0..m {
        t[r * width + n + r] = 1.0;
        t[r * width + n + m] = big(&lp.b[r]);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    let scale = big(&lp.cost_scale);
    let cost = |j: usize, phase: Phase| -> f64 {
        match phase {
            Phase::One => {
                if j >= n {
                    1.0
                } else {
                    0.0
                }
            }
            Phase::Two => {
                if j >= n {
                    0.0
                } else {
                    big(&lp.cost[j]) / scale
                }
            }
        }
    };
    let max_iters = 64 * (m + n) as u64;
    let mut iters = 0u64;
    for phase in [Phase::One, Phase::Two] {
        loop {
            iters += 1;
            if iters > max_iters {
                return None;
            }
            let mut entering = None;
            let mut best = -EPS;
            for j in 0..n {
                if basis.contains(&j) {
                    continue;
                }
                let mut rc = cost(j, phase);
                for r in 0..m {
                    let a = t[r * width + j];
                    if a != 0.0 {
                        rc -= cost(basis[r], phase) * a;
                    }
                }
                if rc < best {
                    best = rc;
                    entering = Some(j);
                }
            }
            let Some(q) = entering else { break };
            let mut leave: Option<(f64, usize)> = None;
            for r in 0..m {
                let a = t[r * width + q];
                if a > EPS {
                    let ratio = t[r * width + n + m] / a;
                    if leave.map_or(true, |(best, _)| ratio < best - EPS) {
                        leave = Some((ratio, r));
                    }
                }
            }
            let Some((_, r)) = leave else { return None };
            // Gauss-Jordan elimination.
            let p = t[r * width + q];
            for k in 0..width {
                t[r * width + k] /= p;
            }
            for i in 0..m {
                if i == r {
                    continue;
                }
                let f = t[i * width + q];
                if f != 0.0 {
                    for k in 0..width {
                        t[i * width + k] -= f * t[r * width + k];
                    }
                }
            }
            basis[r] = q;
        }
        if phase == Phase::One {
            let infeas: f64 = (0..m)
                .filter(|&r| basis[r] >= n)
                .map(|r| t[r * width + n + m])
                .sum();
            if infeas > 1e-6 {
                return None;
            }
        }
    }
    Some(basis)
}

/// Independently re-verifies an optimal solution: primal feasibility,
/// objective value, and exact dual feasibility (all reduced costs >= 0) for
/// the returned basis. Uses plain rational Gaussian elimination, not the
/// solver's pivoting state.
pub fn certify(lp: &LinearProgram, sol: &Solution) -> bool {
    if sol.status != Status::Optimal {
        return false;
    }
    let m = lp.num_rows;
    if sol.basis.len() != m {
        return false;
    }
    // v >= 0 and supported on basic structurals only.
    for (j, v) in &sol.vertex {
        if v.is_negative() || *j >= lp.num_cols() {
            return false;
        }
        if !sol
            .basis
            .iter()
            .any(|slot| matches!(slot, BasisSlot::Structural(k) if k == j))
        {
            return false;
        }
    }
    // A v = b.
    let mut ax = vec![Rational::zero(); m];
    for (j, v) in &sol.vertex {
        for (r, a) in &lp.cols[*j] {
            ax[*r] += a * v;
        }
    }
    if ax != lp.rhs {
        return false;
    }
    // value = c . v
    if lp.objective_of(&sol.vertex) != sol.value {
        return false;
    }
    // Dual solve: y^T B = c_B^T, i.e. B^T y = c_B.
    let mut bt = vec![vec![Rational::zero(); m]; m];
    let mut cb = vec![Rational::zero(); m];
    for (i, slot) in sol.basis.iter().enumerate() {
        match slot {
            BasisSlot::Structural(j) => {
                for (r, a) in &lp.cols[*j] {
                    bt[i][*r] = a.clone();
                }
                cb[i] = lp.costs[*j].clone();
            }
            BasisSlot::Artificial(r) => {
                if *r >= m {
                    return false;
                }
                bt[i][*r] = Rational::one();
                // artificial cost zero
            }
        }
    }
    let Some(y) = gaussian_solve(bt, cb) else {
        return false;
    };
    // All structural reduced costs nonnegative.
    for (j, col) in lp.cols.iter().enumerate() {
        let mut rc = lp.costs[j].clone();
        for (r, a) in col {
            rc -= &y[*r] * a;
        }
        if rc.is_negative() {
            return false;
        }
    }
    true
}

/// Solves a dense rational system by Gaussian elimination with partial
/// pivoting; `None` when singular.
fn gaussian_solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].clone();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &inv;
            for k in col..n {
                let t = &a[col][k] * &f;
                a[r][k] -= t;
            }
            let t = &b[col] * &f;
            b[r] -= t;
        }
    }
    let mut x = vec![Rational::zero(); n];
    for r in 0..n {
        x[r] = &b[r] / &a[r][r];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{Chain, GroupSpec};
    use crate::lp::LinearProgram;

    fn chain(group: &str, words: &[&str]) -> Chain {
        Chain::parse(&GroupSpec::parse(group).unwrap(), words).unwrap()
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn solve_chain(group: &str, words: &[&str]) -> (LinearProgram, Solution) {
        let c = chain(group, words);
        let lp = LinearProgram::build(&c);
        let sol = solve_default(&lp).unwrap();
        (lp, sol)
    }

    #[test]
    fn tiny_hand_lp() {
        // min x0 + x1 subject to x0 + x1 = 1: optimum 1.
        let lp = LinearProgram {
            num_rows: 1,
            cols: vec![
                vec![(0, rat(1, 1))],
                vec![(0, rat(1, 1))],
            ],
            costs: vec![rat(1, 1), rat(1, 1)],
            rhs: vec![rat(1, 1)],
            row_kinds: vec![crate::lp::RowKind::Degree(0)],
            pieces: vec![],
        };
        let sol = solve_default(&lp).unwrap();
        assert_eq!(sol.status, Status::Optimal);
        assert_eq!(sol.value, rat(1, 1));
        assert!(certify(&lp, &sol));
    }

    #[test]
    fn infeasible_lp_detected() {
        // x0 = 1 and x0 = 2 simultaneously.
        let lp = LinearProgram {
            num_rows: 2,
            cols: vec![vec![(0, rat(1, 1)), (1, rat(1, 1))]],
            costs: vec![rat(0, 1)],
            rhs: vec![rat(1, 1), rat(2, 1)],
            row_kinds: vec![crate::lp::RowKind::Degree(0), crate::lp::RowKind::Degree(1)],
            pieces: vec![],
        };
        let sol = solve_default(&lp).unwrap();
        assert_eq!(sol.status, Status::Infeasible);
        assert!(!certify(&lp, &sol));
    }

    #[test]
    fn unbounded_lp_detected() {
        // min -x0 with x0 - x1 = 0: drive both to infinity.
        let lp = LinearProgram {
            num_rows: 1,
            cols: vec![vec![(0, rat(1, 1))], vec![(0, rat(-1, 1))]],
            costs: vec![rat(-1, 1), rat(0, 1)],
            rhs: vec![rat(0, 1)],
            row_kinds: vec![crate::lp::RowKind::Degree(0)],
            pieces: vec![],
        };
        assert_eq!(solve_default(&lp).unwrap_err(), SimplexError::Unbounded);
    }

    #[test]
    fn redundant_row_handled() {
        // Duplicate constraint rows leave an artificial in the basis.
        let lp = LinearProgram {
            num_rows: 2,
            cols: vec![vec![(0, rat(1, 1)), (1, rat(1, 1))]],
            costs: vec![rat(3, 1)],
            rhs: vec![rat(1, 1), rat(1, 1)],
            row_kinds: vec![crate::lp::RowKind::Degree(0), crate::lp::RowKind::Degree(1)],
            pieces: vec![],
        };
        let sol = solve_default(&lp).unwrap();
        assert_eq!(sol.status, Status::Optimal);
        assert_eq!(sol.value, rat(3, 1));
        assert!(sol
            .basis
            .iter()
            .any(|s| matches!(s, BasisSlot::Artificial(_))));
        assert!(certify(&lp, &sol));
    }

    #[test]
    fn fractional_coefficients_scaled() {
        // min x0 with (1/2) x0 = 3: x0 = 6.
        let lp = LinearProgram {
            num_rows: 1,
            cols: vec![vec![(0, rat(1, 2))]],
            costs: vec![rat(1, 1)],
            rhs: vec![rat(3, 1)],
            row_kinds: vec![crate::lp::RowKind::Degree(0)],
            pieces: vec![],
        };
        let sol = solve_default(&lp).unwrap();
        assert_eq!(sol.value, rat(6, 1));
        assert!(certify(&lp, &sol));
    }

    #[test]
    fn bigint_path_agrees() {
        // Force the arbitrary-precision path and compare.
        let c = chain("a3b2", &["ab"]);
        let lp = LinearProgram::build(&c);
        let int_lp = integerize(&lp);
        let opts = SolverOptions::default();
        let TypedOutcome::Done(Ok(big)) = solve_typed::<BigInt>(&int_lp, &opts, None) else {
            panic!("bigint path failed");
        };
        let TypedOutcome::Done(Ok(fast)) = solve_typed::<i128>(&int_lp, &opts, None) else {
            panic!("i128 path failed");
        };
        assert_eq!(big.value, fast.value);
        assert_eq!(big.vertex, fast.vertex);
    }

    #[test]
    fn free_commutator_value() {
        let (lp, sol) = solve_chain("a0b0", &["abAB"]);
        assert_eq!(sol.status, Status::Optimal);
        assert_eq!(sol.value, rat(1, 2));
        assert!(certify(&lp, &sol));
    }

    #[test]
    fn psl2z_values() {
        let (lp, sol) = solve_chain("a3b2", &["ab"]);
        assert_eq!(sol.value, rat(1, 12));
        assert!(certify(&lp, &sol));

        let (lp2, sol2) = solve_chain("a3b2", &["aabab"]);
        assert_eq!(sol2.value, rat(0, 1));
        assert!(certify(&lp2, &sol2));
    }

    #[test]
    fn annulus_unique_vertex() {
        let (lp, sol) = solve_chain("a0b0", &["a", "A"]);
        assert_eq!(sol.value, rat(0, 1));
        assert_eq!(sol.vertex.len(), 1);
        assert_eq!(sol.vertex.get(&0), Some(&rat(1, 1)));
        assert!(certify(&lp, &sol));
    }

    #[test]
    fn certify_rejects_perturbed_vertex() {
        let (lp, sol) = solve_chain("a0b0", &["a", "A"]);
        let mut bad = sol.clone();
        if let Some(v) = bad.vertex.get_mut(&0) {
            *v += Rational::one();
        }
        assert!(!certify(&lp, &bad));
    }

    #[test]
    fn bland_only_agrees() {
        let opts = SolverOptions {
            pivot_rule: PivotRule::Bland,
            warm_start: false,
        };
        let c = chain("a3b2", &["ab"]);
        let lp = LinearProgram::build(&c);
        let sol = solve(&lp, &opts).unwrap();
        assert_eq!(sol.value, rat(1, 12));
    }

    #[test]
    fn warm_start_agrees_and_certifies() {
        let opts = SolverOptions {
            pivot_rule: PivotRule::Lexicographic,
            warm_start: true,
        };
        for (g, words, expect) in [
            ("a0b0", vec!["abAB"], rat(1, 2)),
            ("a3b2", vec!["ab"], rat(1, 12)),
            ("a3b2", vec!["aabab"], rat(0, 1)),
        ] {
            let c = chain(g, &words);
            let lp = LinearProgram::build(&c);
            let sol = solve(&lp, &opts).unwrap();
            assert_eq!(sol.value, expect, "chain {c}");
            assert!(certify(&lp, &sol));
        }
    }

    #[test]
    fn scale_invariance_of_certificate() {
        // Doubling a row leaves the optimum unchanged.
        let c = chain("a3b2", &["ab"]);
        let mut lp = LinearProgram::build(&c);
        let sol = solve_default(&lp).unwrap();
        let row = lp.num_rows - 1;
        for col in &mut lp.cols {
            for (r, a) in col.iter_mut() {
                if *r == row {
                    *a *= Rational::from_integer(2.into());
                }
            }
        }
        lp.rhs[row] *= Rational::from_integer(2.into());
        let sol2 = solve_default(&lp).unwrap();
        assert_eq!(sol.value, sol2.value);
        assert!(certify(&lp, &sol2));
    }
}
