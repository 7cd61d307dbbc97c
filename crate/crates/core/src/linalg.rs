//! Exact sparse linear algebra: fraction-free integer echelon forms with an
//! `i128` fast path, a modular cross-check, and rational reconstruction.

use crate::rational::Q;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// Sorted `(index, value)` pairs without zeros.
pub type SparseVec<T> = Vec<(usize, T)>;

/// Column-major sparse matrix with exact rational entries.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    pub nrows: usize,
    pub ncols: usize,
    cols: Vec<SparseVec<Q>>,
}

impl SparseMatrix {
    pub fn new(nrows: usize, ncols: usize) -> SparseMatrix {
        SparseMatrix { nrows, ncols, cols: vec![Vec::new(); ncols] }
    }

    /// Builds from columns; entries are sorted and zeros dropped.
    pub fn from_columns(nrows: usize, cols: Vec<SparseVec<Q>>) -> SparseMatrix {
        let ncols = cols.len();
        let cols = cols.into_iter().map(normalize_q).collect::<Vec<_>>();
        debug_assert!(cols.iter().all(|c| c.iter().all(|(i, _)| *i < nrows)));
        SparseMatrix { nrows, ncols, cols }
    }

    pub fn from_integer_columns(nrows: usize, cols: Vec<SparseVec<i64>>) -> SparseMatrix {
        SparseMatrix::from_columns(
            nrows,
            cols.into_iter()
                .map(|c| c.into_iter().map(|(i, x)| (i, Q::from_integer(BigInt::from(x)))).collect())
                .collect(),
        )
    }

    pub fn column(&self, j: usize) -> &[(usize, Q)] {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec<Q>] {
        &self.cols
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        match self.cols[j].binary_search_by_key(&i, |e| e.0) {
            Ok(p) => self.cols[j][p].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut rows: Vec<SparseVec<Q>> = vec![Vec::new(); self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c {
                rows[*i].push((j, x.clone()));
            }
        }
        SparseMatrix { nrows: self.ncols, ncols: self.nrows, cols: rows }
    }

    /// `A x` for a dense vector `x`.
    pub fn mul_vec(&self, x: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            if x[j].is_zero() {
                continue;
            }
            for (i, a) in c {
                out[*i] += a * &x[j];
            }
        }
        out
    }

    /// `yᵀ A` for a dense vector `y`.
    pub fn left_mul_vec(&self, y: &[Q]) -> Vec<Q> {
        self.cols
            .iter()
            .map(|c| c.iter().fold(Q::zero(), |acc, (i, a)| acc + a * &y[*i]))
            .collect()
    }

    /// `A B`, used for checking `δ ∘ δ = 0` at the matrix level.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols, other.nrows);
        let cols = other
            .cols
            .iter()
            .map(|c| {
                let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
                for (k, b) in c {
                    for (i, a) in &self.cols[*k] {
                        *acc.entry(*i).or_insert_with(Q::zero) += a * b;
                    }
                }
                acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
            })
            .collect();
        SparseMatrix { nrows: self.nrows, ncols: other.ncols, cols }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    /// Columns with denominators cleared (column scaling keeps rank and kernels up to scale).
    fn integer_columns(&self) -> Vec<SparseVec<BigInt>> {
        self.cols.iter().map(|c| clear_denominators(c).0).collect()
    }
}

fn normalize_q(mut v: SparseVec<Q>) -> SparseVec<Q> {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec<Q> = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y += x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

/// Returns the integer vector `m v` and the multiplier `m` (lcm of denominators).
fn clear_denominators(v: &[(usize, Q)]) -> (SparseVec<BigInt>, BigInt) {
    let m = v.iter().fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
    let out = v.iter().map(|(i, x)| (*i, x.numer() * (&m / x.denom()))).collect();
    (out, m)
}

/// Integer-like coefficient rings for the fraction-free elimination.
pub trait Ring: Clone + PartialEq + std::fmt::Debug {
    fn from_big(x: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn gcd(&self, o: &Self) -> Self;
    fn div_exact(&self, o: &Self) -> Self;
    fn is_unit(&self) -> bool;
}

impl Ring for i128 {
    fn from_big(x: &BigInt) -> Option<i128> {
        x.to_i128().filter(|v| v.unsigned_abs() < (1u128 << 100))
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> i128 {
        -*self
    }
    fn mul(&self, o: &i128) -> Option<i128> {
        self.checked_mul(*o).filter(|v| v.unsigned_abs() < (1u128 << 120))
    }
    fn sub(&self, o: &i128) -> Option<i128> {
        self.checked_sub(*o).filter(|v| v.unsigned_abs() < (1u128 << 120))
    }
    fn gcd(&self, o: &i128) -> i128 {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, o: &i128) -> i128 {
        *self / *o
    }
    fn is_unit(&self) -> bool {
        self.abs() == 1
    }
}

impl Ring for BigInt {
    fn from_big(x: &BigInt) -> Option<BigInt> {
        Some(x.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> BigInt {
        -self
    }
    fn mul(&self, o: &BigInt) -> Option<BigInt> {
        Some(self * o)
    }
    fn sub(&self, o: &BigInt) -> Option<BigInt> {
        Some(self - o)
    }
    fn gcd(&self, o: &BigInt) -> BigInt {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, o: &BigInt) -> BigInt {
        self / o
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

/// Marker for arithmetic overflow in the fast path.
#[derive(Debug)]
struct Overflow;

/// Row echelon basis keyed by leading index; rows are primitive with positive lead.
#[derive(Clone, Debug)]
pub struct Echelon<T: Ring> {
    rows: BTreeMap<usize, SparseVec<T>>,
}

impl<T: Ring> Default for Echelon<T> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new() }
    }
}

/// `(a / g) v − (c / g) p` where `a`, `c` are the coefficients at `pos`.
fn eliminate<T: Ring>(v: &[(usize, T)], p: &[(usize, T)], pos: usize) -> Result<SparseVec<T>, Overflow> {
    let c = &v[v.binary_search_by_key(&pos, |e| e.0).expect("entry present")].1;
    let a = &p[0].1;
    let g = a.gcd(c);
    let (fa, fc) = (a.div_exact(&g), c.div_exact(&g));
    let mut out: SparseVec<T> = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < p.len() {
        let take_v = j == p.len() || (i < v.len() && v[i].0 < p[j].0);
        let take_p = i == v.len() || (j < p.len() && p[j].0 < v[i].0);
        if take_v {
            let x = if fa.is_unit() && !fa.is_negative() { v[i].1.clone() } else { v[i].1.mul(&fa).ok_or(Overflow)? };
            out.push((v[i].0, x));
            i += 1;
        } else if take_p {
            let x = p[j].1.mul(&fc).ok_or(Overflow)?.neg();
            out.push((p[j].0, x));
            j += 1;
        } else {
            let x = v[i].1.mul(&fa).ok_or(Overflow)?.sub(&p[j].1.mul(&fc).ok_or(Overflow)?).ok_or(Overflow)?;
            if !x.is_zero() {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    Ok(make_primitive(out))
}

fn make_primitive<T: Ring>(mut v: SparseVec<T>) -> SparseVec<T> {
    if v.is_empty() {
        return v;
    }
    let mut g = v[0].1.clone();
    for (_, x) in &v[1..] {
        if g.is_unit() {
            break;
        }
        g = g.gcd(x);
    }
    if v[0].1.is_negative() {
        g = g.neg();
    }
    if !(g.is_unit() && !g.is_negative()) {
        for e in v.iter_mut() {
            e.1 = e.1.div_exact(&g);
        }
    }
    v
}

impl<T: Ring> Echelon<T> {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn row(&self, pivot: usize) -> Option<&SparseVec<T>> {
        self.rows.get(&pivot)
    }

    /// Reduces the leading entry until it is not a pivot.
    fn reduce_leading(&self, mut v: SparseVec<T>) -> Result<SparseVec<T>, Overflow> {
        while let Some(&(lead, _)) = v.first() {
            match self.rows.get(&lead) {
                Some(p) => v = eliminate(&v, p, lead)?,
                None => break,
            }
        }
        Ok(v)
    }

    /// Reduces every entry sitting at a pivot position.
    fn reduce_full(&self, mut v: SparseVec<T>) -> Result<SparseVec<T>, Overflow> {
        let mut k = 0;
        while k < v.len() {
            let pos = v[k].0;
            if let Some(p) = self.rows.get(&pos) {
                v = eliminate(&v, p, pos)?;
                k = v.partition_point(|e| e.0 < pos);
            } else {
                k += 1;
            }
        }
        Ok(v)
    }

    /// Inserts `v`; returns its new pivot or `None` when `v` is dependent.
    fn insert(&mut self, v: SparseVec<T>) -> Result<Option<usize>, Overflow> {
        let r = self.reduce_leading(v)?;
        match r.first() {
            None => Ok(None),
            Some(&(lead, _)) => {
                self.rows.insert(lead, make_primitive(r));
                Ok(Some(lead))
            }
        }
    }
}

fn convert<T: Ring>(cols: &[SparseVec<BigInt>]) -> Option<Vec<SparseVec<T>>> {
    cols.iter()
        .map(|c| c.iter().map(|(i, x)| T::from_big(x).map(|y| (*i, y))).collect::<Option<Vec<_>>>())
        .collect()
}

fn echelon_of<T: Ring>(vectors: &[SparseVec<T>]) -> Result<Echelon<T>, Overflow> {
    let mut e = Echelon::default();
    // sparse vectors first keeps fill-in low
    let mut order: Vec<usize> = (0..vectors.len()).collect();
    order.sort_by_key(|&j| (vectors[j].len(), j));
    for j in order {
        e.insert(make_primitive(vectors[j].clone()))?;
    }
    Ok(e)
}

/// Echelon basis of the span of integer vectors, `i128` first and `BigInt` on overflow.
pub fn integer_echelon(vectors: &[SparseVec<BigInt>]) -> Echelon<BigInt> {
    if let Some(small) = convert::<i128>(vectors) {
        if let Ok(e) = echelon_of(&small) {
            return Echelon {
                rows: e
                    .rows
                    .into_iter()
                    .map(|(k, r)| (k, r.into_iter().map(|(i, x)| (i, BigInt::from(x))).collect()))
                    .collect(),
            };
        }
    }
    echelon_of(vectors).expect("BigInt never overflows")
}

/// Exact rank.
pub fn rank(a: &SparseMatrix) -> usize {
    integer_echelon(&a.integer_columns()).rank()
}

/// The Mersenne prime `2^61 − 1` used by the modular cross-check.
pub const PRIME: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Residue of a rational modulo `p`; `None` when the denominator vanishes.
pub fn q_mod(x: &Q, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let n = x.numer().mod_floor(&pb).to_u64().expect("reduced");
    let d = x.denom().mod_floor(&pb).to_u64().expect("reduced");
    if d == 0 {
        None
    } else {
        Some(mulmod(n, invmod(d, p), p))
    }
}

fn mod_columns(a: &SparseMatrix, p: u64) -> Vec<SparseVec<u64>> {
    a.cols
        .iter()
        .map(|c| {
            c.iter()
                .filter_map(|(i, x)| q_mod(x, p).filter(|v| *v != 0).map(|v| (*i, v)))
                .collect()
        })
        .collect()
}

/// Echelon basis over `F_p` with monic rows, keyed by leading index.
fn mod_echelon(vectors: &[SparseVec<u64>], p: u64) -> BTreeMap<usize, SparseVec<u64>> {
    let mut rows: BTreeMap<usize, SparseVec<u64>> = BTreeMap::new();
    let mut order: Vec<usize> = (0..vectors.len()).collect();
    order.sort_by_key(|&j| (vectors[j].len(), j));
    for j in order {
        let mut v = vectors[j].clone();
        while let Some(&(lead, c)) = v.first() {
            let Some(r) = rows.get(&lead) else { break };
            v = axpy_mod(&v, r, p - c, p);
        }
        if let Some(&(lead, c)) = v.first() {
            let inv = invmod(c, p);
            rows.insert(lead, v.into_iter().map(|(i, x)| (i, mulmod(x, inv, p))).collect());
        }
    }
    rows
}

/// `v + s r` over `F_p`.
fn axpy_mod(v: &[(usize, u64)], r: &[(usize, u64)], s: u64, p: u64) -> SparseVec<u64> {
    let mut out = Vec::with_capacity(v.len() + r.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < r.len() {
        if j == r.len() || (i < v.len() && v[i].0 < r[j].0) {
            out.push(v[i]);
            i += 1;
        } else if i == v.len() || r[j].0 < v[i].0 {
            out.push((r[j].0, mulmod(r[j].1, s, p)));
            j += 1;
        } else {
            let x = (v[i].1 + mulmod(r[j].1, s, p)) % p;
            if x != 0 {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank over `F_p`; equals the rational rank unless `p` divides some minor.
pub fn rank_mod_p(a: &SparseMatrix, p: u64) -> usize {
    mod_echelon(&mod_columns(a, p), p).len()
}

/// Recovers `n/d ≡ a (mod p)` with `|n|, d ≤ sqrt(p/2)`.
pub fn rational_reconstruction(a: u64, p: u64) -> Option<Q> {
    let bound = ((p / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let qt = r0 / r1;
        (r0, r1) = (r1, r0 - qt * r1);
        (t0, t1) = (t1, t0 - qt * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    let x = Q::new(BigInt::from(r1), BigInt::from(t1));
    (q_mod(&x, p) == Some(a)).then_some(x)
}

/// Back-substitution: the vector `y` with `row · y = 0` for every echelon row,
/// `y_j = 1` at the free index `j`, and zero at the other non-pivot indices.
fn back_substitute(e: &Echelon<BigInt>, free: usize) -> BTreeMap<usize, Q> {
    let mut y: BTreeMap<usize, Q> = BTreeMap::new();
    y.insert(free, Q::one());
    for (&piv, row) in e.rows.iter().rev() {
        if piv > free {
            continue;
        }
        let mut s = Q::zero();
        for (k, a) in &row[1..] {
            if let Some(v) = y.get(k) {
                s += v * Q::from_integer(a.clone());
            }
        }
        if !s.is_zero() {
            y.insert(piv, -s / Q::from_integer(row[0].1.clone()));
        }
    }
    y
}

/// Basis of the right kernel `{x : A x = 0}`, one vector per free column, in
/// increasing order of the free column.
pub fn kernel(a: &SparseMatrix) -> Vec<BTreeMap<usize, Q>> {
    let rows = a.transpose().integer_columns();
    let e = integer_echelon(&rows);
    (0..a.ncols)
        .filter(|j| e.row(*j).is_none())
        .map(|j| back_substitute(&e, j))
        .collect()
}

/// Kernel computed over `F_p` and lifted by rational reconstruction; used as a cross-check.
pub fn kernel_mod_p(a: &SparseMatrix, p: u64) -> Option<Vec<BTreeMap<usize, Q>>> {
    let rows = mod_echelon(&mod_columns(&a.transpose(), p), p);
    let mut out = Vec::new();
    for free in (0..a.ncols).filter(|j| !rows.contains_key(j)) {
        let mut y: BTreeMap<usize, u64> = BTreeMap::new();
        y.insert(free, 1);
        for (&piv, row) in rows.iter().rev() {
            if piv > free {
                continue;
            }
            let s = row[1..]
                .iter()
                .filter_map(|(k, x)| y.get(k).map(|v| mulmod(*x, *v, p)))
                .fold(0u64, |acc, t| (acc + t) % p);
            if s != 0 {
                y.insert(piv, p - s);
            }
        }
        let mut lifted = BTreeMap::new();
        for (k, v) in y {
            lifted.insert(k, rational_reconstruction(v, p)?);
        }
        out.push(lifted);
    }
    Some(out)
}

/// Outcome of `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    /// A solution `x` (free variables set to zero).
    Feasible(BTreeMap<usize, Q>),
    /// A left certificate `y` with `yᵀ A = 0` and `yᵀ b = 1`.
    Infeasible(BTreeMap<usize, Q>),
}

/// Solves `A x = b` exactly, returning either a solution or an infeasibility certificate.
pub fn solve(a: &SparseMatrix, b: &[(usize, Q)]) -> Solution {
    let b = normalize_q(b.to_vec());
    let cols = a.integer_columns();
    let e = integer_echelon(&cols);
    let (bi, _) = clear_denominators(&b);
    let r = e.reduce_full(make_primitive(bi)).expect("BigInt never overflows");
    if let Some(&(j, _)) = r.first() {
        // r has no entries at pivots, so back-substitution from its lead gives y
        let y = back_substitute(&e, j);
        let by: Q = b.iter().filter_map(|(i, x)| y.get(i).map(|v| v * x)).sum();
        return Solution::Infeasible(y.into_iter().map(|(k, v)| (k, v / &by)).collect());
    }
    // feasible: eliminate on the equations with the right-hand side appended as the last column
    let rhs_col = a.ncols;
    let mut rows: Vec<SparseVec<Q>> = vec![Vec::new(); a.nrows];
    for (j, c) in a.cols.iter().enumerate() {
        for (i, x) in c {
            rows[*i].push((j, x.clone()));
        }
    }
    for (i, x) in &b {
        rows[*i].push((rhs_col, x.clone()));
    }
    let irows: Vec<SparseVec<BigInt>> = rows.iter().filter(|r| !r.is_empty()).map(|r| clear_denominators(r).0).collect();
    let er = integer_echelon(&irows);
    debug_assert!(er.row(rhs_col).is_none(), "consistent system");
    let y = back_substitute(&er, rhs_col);
    // y solves A x + b·1 = 0 on the reduced rows, so x = −y restricted to unknowns
    let x = y.into_iter().filter(|(k, _)| *k != rhs_col).map(|(k, v)| (k, -v)).filter(|(_, v)| !v.is_zero()).collect();
    Solution::Feasible(x)
}

/// Rank of the column span together with a reducer for membership tests.
pub struct ColumnSpace {
    e: Echelon<BigInt>,
}

impl ColumnSpace {
    pub fn of(a: &SparseMatrix) -> ColumnSpace {
        ColumnSpace { e: integer_echelon(&a.integer_columns()) }
    }

    pub fn rank(&self) -> usize {
        self.e.rank()
    }

    pub fn contains(&self, v: &[(usize, Q)]) -> bool {
        let (vi, _) = clear_denominators(&normalize_q(v.to_vec()));
        self.e.reduce_leading(vi).expect("BigInt never overflows").is_empty()
    }
}

/// Dense view of a sparse rational vector.
pub fn to_dense(v: &BTreeMap<usize, Q>, n: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); n];
    for (k, x) in v {
        out[*k] = x.clone();
    }
    out
}
