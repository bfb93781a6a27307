//! Exact solver for linear systems over the integers.
//!
//! Feasibility of `A x = b` in integers is decided through a column-style
//! Hermite normal form: a unimodular `U` with `A U = H` where `H` is a
//! lower-triangular staircase with positive pivots and entries to the left
//! of each pivot reduced modulo it. Back-substitution against `H` yields a
//! witness, and the columns of `U` aligned with the zero columns of `H`
//! form a basis of the integer kernel of `A`.
//!
//! Elimination is plain integer-preserving column reduction; intermediate
//! values can grow beyond machine width, so the arithmetic is generic over
//! an exact element type. Solving first runs on `i128` with checked
//! operations and falls back to arbitrary precision if anything overflows;
//! the public Hermite normal form always uses arbitrary precision.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl BigMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "a {rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(BigMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        BigMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BigMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::from(1));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("matrix rows have unequal lengths".into()));
        }
        let entries = rows.into_iter().flatten().map(BigInt::from).collect();
        BigMatrix::new(r, c, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: BigInt) {
        self.entries[row * self.cols + col] = value;
    }

    pub fn transpose(&self) -> BigMatrix {
        let mut out = BigMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &BigMatrix) -> Result<BigMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = BigMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let add = a * other.get(k, c);
                    let cell = out.get(r, c) + add;
                    out.set(r, c, cell);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c) * &v[c]).sum())
            .collect())
    }
}

/// Outcome of [`solve_diophantine`]: a witness when the system is feasible,
/// and a basis for the integer kernel of the matrix either way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiophantineResult {
    pub witness: Option<Vec<BigInt>>,
    pub kernel_basis: Vec<Vec<BigInt>>,
}

impl DiophantineResult {
    pub fn is_feasible(&self) -> bool {
        self.witness.is_some()
    }
}

/// Exact integer element for the elimination, with overflow reporting.
trait Elem: Clone + Sized {
    fn nil() -> Self;
    fn unit() -> Self;
    fn is_nil(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn add_checked(&self, other: &Self) -> Option<Self>;
    fn sub_checked(&self, other: &Self) -> Option<Self>;
    fn mul_checked(&self, other: &Self) -> Option<Self>;
    fn neg_checked(&self) -> Option<Self>;
    /// Quotient and remainder with `0 <= remainder < |divisor|`.
    fn div_rem_euclid_checked(&self, divisor: &Self) -> Option<(Self, Self)>;
    fn abs_cmp(&self, other: &Self) -> Ordering;
}

impl Elem for i128 {
    fn nil() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn is_neg(&self) -> bool {
        *self < 0
    }
    fn add_checked(&self, other: &Self) -> Option<Self> {
        i128::checked_add(*self, *other)
    }
    fn sub_checked(&self, other: &Self) -> Option<Self> {
        i128::checked_sub(*self, *other)
    }
    fn mul_checked(&self, other: &Self) -> Option<Self> {
        i128::checked_mul(*self, *other)
    }
    fn neg_checked(&self) -> Option<Self> {
        i128::checked_neg(*self)
    }
    fn div_rem_euclid_checked(&self, divisor: &Self) -> Option<(Self, Self)> {
        let q = i128::checked_div_euclid(*self, *divisor)?;
        let r = i128::checked_rem_euclid(*self, *divisor)?;
        Some((q, r))
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
}

impl Elem for BigInt {
    fn nil() -> Self {
        BigInt::zero()
    }
    fn unit() -> Self {
        BigInt::from(1)
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn add_checked(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn sub_checked(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn mul_checked(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn neg_checked(&self) -> Option<Self> {
        Some(-self)
    }
    fn div_rem_euclid_checked(&self, divisor: &Self) -> Option<(Self, Self)> {
        let (mut q, mut r) = self.div_mod_floor(divisor);
        if Signed::is_negative(&r) {
            r -= divisor;
            q += 1;
        }
        Some((q, r))
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
}

type RowsPair<T> = (Vec<Vec<T>>, Vec<Vec<T>>);

/// Row-style Hermite normal form: returns `(h, u)` with `h = u * a`, `u`
/// unimodular, `h` an upper staircase with positive pivots and the entries
/// above each pivot reduced modulo it. `None` signals element overflow.
fn row_hnf<T: Elem>(a: &[Vec<T>]) -> Option<RowsPair<T>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut h: Vec<Vec<T>> = a.to_vec();
    let mut u: Vec<Vec<T>> = (0..rows)
        .map(|i| (0..rows).map(|j| if i == j { T::unit() } else { T::nil() }).collect())
        .collect();

    // h[target] -= q * h[source], same for u
    fn row_reduce<T: Elem>(
        h: &mut [Vec<T>],
        u: &mut [Vec<T>],
        target: usize,
        source: usize,
        q: &T,
    ) -> Option<()> {
        if q.is_nil() {
            return Some(());
        }
        for m in [h, u] {
            let (src_row, dst_row) = if source < target {
                let (a, b) = m.split_at_mut(target);
                (&a[source], &mut b[0])
            } else {
                let (a, b) = m.split_at_mut(source);
                (&b[0], &mut a[target])
            };
            for (dst, src) in dst_row.iter_mut().zip(src_row) {
                *dst = dst.sub_checked(&q.mul_checked(src)?)?;
            }
        }
        Some(())
    }

    fn negate_row<T: Elem>(h: &mut [Vec<T>], u: &mut [Vec<T>], row: usize) -> Option<()> {
        for m in [h, u] {
            for v in m[row].iter_mut() {
                *v = v.neg_checked()?;
            }
        }
        Some(())
    }

    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        loop {
            let best = (pivot_row..rows)
                .filter(|&i| !h[i][col].is_nil())
                .min_by(|&i, &j| h[i][col].abs_cmp(&h[j][col]));
            let Some(best) = best else { break };
            h.swap(pivot_row, best);
            u.swap(pivot_row, best);
            let mut clean = true;
            for i in pivot_row + 1..rows {
                if h[i][col].is_nil() {
                    continue;
                }
                let (q, r) = h[i][col].div_rem_euclid_checked(&h[pivot_row][col])?;
                row_reduce(&mut h, &mut u, i, pivot_row, &q)?;
                if !r.is_nil() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[pivot_row][col].is_nil() {
            continue;
        }
        if h[pivot_row][col].is_neg() {
            negate_row(&mut h, &mut u, pivot_row)?;
        }
        for i in 0..pivot_row {
            let (q, _) = h[i][col].div_rem_euclid_checked(&h[pivot_row][col])?;
            row_reduce(&mut h, &mut u, i, pivot_row, &q)?;
        }
        pivot_row += 1;
    }
    Some((h, u))
}

/// Column-style Hermite normal form of `a`: a pair `(h, u)` with `a * u = h`,
/// `|det u| = 1`, `h` a lower-triangular staircase with positive pivots and
/// entries left of each pivot reduced modulo it. Always exact; never fails.
pub fn hermite_normal_form(a: &BigMatrix) -> (BigMatrix, BigMatrix) {
    let at = a.transpose();
    let rows: Vec<Vec<BigInt>> = (0..at.rows)
        .map(|r| (0..at.cols).map(|c| at.get(r, c).clone()).collect())
        .collect();
    let (hb, ub) = row_hnf(&rows).expect("arbitrary-precision elimination cannot overflow");
    let h = BigMatrix::new(a.rows, a.cols, transpose_rows(&hb, a.rows)).expect("square data");
    let u = BigMatrix::new(a.cols, a.cols, transpose_rows(&ub, a.cols)).expect("square data");
    (h, u)
}

fn transpose_rows(rows: &[Vec<BigInt>], out_rows: usize) -> Vec<BigInt> {
    let in_rows = rows.len();
    let mut out = vec![BigInt::zero(); out_rows * in_rows];
    for (r, row) in rows.iter().enumerate() {
        debug_assert_eq!(row.len(), out_rows);
        for (c, v) in row.iter().enumerate() {
            out[c * in_rows + r] = v.clone();
        }
    }
    out
}

enum SolveOutcome<T> {
    Feasible(Vec<T>, Vec<Vec<T>>),
    Infeasible(Vec<Vec<T>>),
}

/// Solves `A x = b` over a concrete element type. Works on the transposed
/// matrix so the column operations of the Hermite form become contiguous
/// row operations. `None` signals element overflow.
fn solve_generic<T: Elem>(a_transposed: &[Vec<T>], b: &[T]) -> Option<SolveOutcome<T>> {
    let cols = a_transposed.len(); // variables
    let rows = b.len();
    let (hb, ub) = row_hnf(a_transposed)?;

    // pivot positions: hb row t has its first nonzero at column c_t, strictly increasing
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (t, c_t)
    for (t, row) in hb.iter().enumerate() {
        if let Some(c) = row.iter().position(|v| !v.is_nil()) {
            pivots.push((t, c));
        }
    }
    let rank = pivots.len();

    // back-substitute H y = b where H's column t is hb row t
    let mut y: Vec<T> = vec![T::nil(); cols];
    let mut next = 0;
    let mut feasible = true;
    for i in 0..rows {
        let mut residual = b[i].clone();
        for &(t, _) in &pivots[..next] {
            residual = residual.sub_checked(&hb[t][i].mul_checked(&y[t])?)?;
        }
        if next < rank && pivots[next].1 == i {
            let (t, _) = pivots[next];
            let (q, r) = residual.div_rem_euclid_checked(&hb[t][i])?;
            if !r.is_nil() {
                feasible = false;
                break;
            }
            y[t] = q;
            next += 1;
        } else if !residual.is_nil() {
            feasible = false;
            break;
        }
    }

    let kernel: Vec<Vec<T>> = (rank..cols).map(|t| ub[t].clone()).collect();
    if !feasible {
        return Some(SolveOutcome::Infeasible(kernel));
    }

    // x = U y, i.e. the combination of the rows of ub by the pivot values
    let mut x = vec![T::nil(); cols];
    for &(t, _) in &pivots {
        if y[t].is_nil() {
            continue;
        }
        for (xv, uv) in x.iter_mut().zip(&ub[t]) {
            *xv = xv.add_checked(&y[t].mul_checked(uv)?)?;
        }
    }
    Some(SolveOutcome::Feasible(x, kernel))
}

/// Decides integer feasibility of `A x = b`, returning a witness when
/// feasible and a basis of the integer kernel of `A` in either case.
pub fn solve_diophantine(a: &BigMatrix, b: &[BigInt]) -> Result<DiophantineResult> {
    if b.len() != a.rows {
        return Err(Error::Shape(format!(
            "system has {} rows but {} right-hand sides",
            a.rows,
            b.len()
        )));
    }

    // fast path on machine integers when everything fits
    if let Some((at_small, b_small)) = narrow(a, b) {
        if let Some(outcome) = solve_generic(&at_small, &b_small) {
            return Ok(widen(outcome));
        }
    }

    let at = a.transpose();
    let at_rows: Vec<Vec<BigInt>> = (0..at.rows)
        .map(|r| (0..at.cols).map(|c| at.get(r, c).clone()).collect())
        .collect();
    let outcome = solve_generic(&at_rows, b)
        .expect("arbitrary-precision elimination cannot overflow");
    Ok(match outcome {
        SolveOutcome::Feasible(x, kernel) => DiophantineResult { witness: Some(x), kernel_basis: kernel },
        SolveOutcome::Infeasible(kernel) => DiophantineResult { witness: None, kernel_basis: kernel },
    })
}

fn narrow(a: &BigMatrix, b: &[BigInt]) -> Option<(Vec<Vec<i128>>, Vec<i128>)> {
    let mut at = vec![vec![0i128; a.rows]; a.cols];
    #[allow(clippy::needless_range_loop)] // writing the transpose
    for r in 0..a.rows {
        for c in 0..a.cols {
            at[c][r] = a.get(r, c).to_i128()?;
        }
    }
    let b = b.iter().map(ToPrimitive::to_i128).collect::<Option<Vec<_>>>()?;
    Some((at, b))
}

fn widen(outcome: SolveOutcome<i128>) -> DiophantineResult {
    let lift = |v: Vec<i128>| v.into_iter().map(BigInt::from).collect::<Vec<_>>();
    match outcome {
        SolveOutcome::Feasible(x, kernel) => DiophantineResult {
            witness: Some(lift(x)),
            kernel_basis: kernel.into_iter().map(lift).collect(),
        },
        SolveOutcome::Infeasible(kernel) => DiophantineResult {
            witness: None,
            kernel_basis: kernel.into_iter().map(lift).collect(),
        },
    }
}
