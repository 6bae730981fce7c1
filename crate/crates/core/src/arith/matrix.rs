//! Sparse matrices over the exact coefficient rings, the h-adic valuation,
//! and truncated inversion.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::{HSeries, LaurentQT, Quad, Quad2, Rat};
use crate::error::{Error, Result};

/// The minimal ring interface the sparse matrix code needs. Implementations
/// must treat `is_zero` as structural: zero entries are never stored, so
/// derived equality on matrices is mathematical equality.
pub trait Scalar: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Scalar for Rat {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
}

impl<const D: i64> Scalar for Quad<D> {
    fn is_zero(&self) -> bool {
        Quad::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Scalar for LaurentQT {
    fn is_zero(&self) -> bool {
        LaurentQT::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Scalar for HSeries {
    fn is_zero(&self) -> bool {
        HSeries::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// A sparse matrix stored row-wise; absent entries are zero and zero is
/// never stored explicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat<T> {
    nrows: usize,
    ncols: usize,
    rows: Vec<BTreeMap<usize, T>>,
}

impl<T: Scalar> SparseMat<T> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMat {
            nrows,
            ncols,
            rows: vec![BTreeMap::new(); nrows],
        }
    }

    pub fn identity(n: usize, one: T) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i].insert(i, one.clone());
        }
        m
    }

    pub fn from_entries(
        nrows: usize,
        ncols: usize,
        entries: impl IntoIterator<Item = (usize, usize, T)>,
    ) -> Self {
        let mut m = Self::zeros(nrows, ncols);
        for (r, c, v) in entries {
            m.add_to(r, c, v);
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&T> {
        self.rows[r].get(&c)
    }

    /// Set an entry, deleting it if the value is zero.
    pub fn set(&mut self, r: usize, c: usize, v: T) {
        assert!(r < self.nrows && c < self.ncols, "index out of bounds");
        if v.is_zero() {
            self.rows[r].remove(&c);
        } else {
            self.rows[r].insert(c, v);
        }
    }

    /// Add into an entry, deleting it if the sum cancels.
    pub fn add_to(&mut self, r: usize, c: usize, v: T) {
        assert!(r < self.nrows && c < self.ncols, "index out of bounds");
        if v.is_zero() {
            return;
        }
        match self.rows[r].entry(c) {
            Entry::Vacant(slot) => {
                slot.insert(v);
            }
            Entry::Occupied(mut slot) => {
                let s = slot.get().add(&v);
                if s.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = s;
                }
            }
        }
    }

    pub fn num_entries(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, &T)> {
        self.rows[r].iter().map(|(c, v)| (*c, v))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ncols, self.nrows);
        for (r, c, v) in self.entries() {
            t.rows[c].insert(r, v.clone());
        }
        t
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> SparseMat<U> {
        let mut out = SparseMat::zeros(self.nrows, self.ncols);
        for (r, c, v) in self.entries() {
            let w = f(v);
            if !w.is_zero() {
                out.rows[r].insert(c, w);
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(
            (self.nrows, self.ncols),
            (rhs.nrows, rhs.ncols),
            "shape mismatch in matrix sum"
        );
        let mut out = self.clone();
        for (r, c, v) in rhs.entries() {
            out.add_to(r, c, v.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(
            (self.nrows, self.ncols),
            (rhs.nrows, rhs.ncols),
            "shape mismatch in matrix difference"
        );
        let mut out = self.clone();
        for (r, c, v) in rhs.entries() {
            out.add_to(r, c, v.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map(|v| v.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.ncols, rhs.nrows,
            "shape mismatch in matrix product: {}x{} by {}x{}",
            self.nrows, self.ncols, rhs.nrows, rhs.ncols
        );
        let mut out = Self::zeros(self.nrows, rhs.ncols);
        for i in 0..self.nrows {
            for (k, a) in &self.rows[i] {
                for (j, b) in &rhs.rows[*k] {
                    out.add_to(i, *j, a.mul(b));
                }
            }
        }
        out
    }

    pub fn is_identity(&self, one: &T) -> bool {
        if self.nrows != self.ncols {
            return false;
        }
        if self.num_entries() != self.nrows {
            return false;
        }
        self.rows
            .iter()
            .enumerate()
            .all(|(i, row)| row.len() == 1 && row.get(&i) == Some(one))
    }

    /// `self - I`, with the unit passed explicitly.
    pub fn minus_identity(&self, one: &T) -> Self {
        assert!(self.is_square(), "identity offset needs a square matrix");
        let mut out = self.clone();
        for i in 0..self.nrows {
            out.add_to(i, i, one.neg());
        }
        out
    }
}

/// The h-adic valuation of a matrix of truncated series: the least degree
/// at which any entry has a nonzero coefficient, or `Above(K)` when every
/// entry vanishes up to the truncation order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    At(usize),
    Above(usize),
}

impl Valuation {
    /// The best certified lower bound: `At(v)` is exactly v, `Above(K)`
    /// certifies at least K + 1.
    pub fn lower_bound(&self) -> usize {
        match self {
            Valuation::At(v) => *v,
            Valuation::Above(k) => k + 1,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Valuation::At(_))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::At(v) => write!(f, "{}", v),
            Valuation::Above(k) => write!(f, ">{}", k),
        }
    }
}

/// Truncation order shared by all entries of a series matrix. Fails on a
/// matrix with no stored entries, where the order is unknowable.
pub fn series_order(m: &SparseMat<HSeries>) -> Option<usize> {
    let mut it = m.entries();
    let k = it.next().map(|(_, _, s)| s.order())?;
    for (_, _, s) in it {
        assert_eq!(
            s.order(),
            k,
            "matrix mixes series of different truncation orders"
        );
    }
    Some(k)
}

/// Valuation of the matrix itself (not of its offset from the identity).
///
/// Panics on a matrix with no stored entries: such a matrix is zero to
/// every order and carries no truncation order to report against.
pub fn h_valuation(m: &SparseMat<HSeries>) -> Valuation {
    let k = series_order(m)
        .expect("h_valuation of an entryless matrix: truncation order unknown");
    let mut best: Option<usize> = None;
    for (_, _, s) in m.entries() {
        if let Some(d) = s.min_degree() {
            if d == 0 {
                return Valuation::At(0);
            }
            best = Some(best.map_or(d, |b| b.min(d)));
        }
    }
    match best {
        Some(v) => Valuation::At(v),
        None => Valuation::Above(k),
    }
}

/// Valuation of `m - I`: the depth to which m agrees with the identity.
/// Unlike forming the difference first, this never loses the truncation
/// order when m equals the identity to order K.
pub fn valuation_from_identity(m: &SparseMat<HSeries>) -> Valuation {
    assert!(m.is_square(), "valuation_from_identity needs a square matrix");
    let k = series_order(m)
        .expect("valuation_from_identity of an entryless matrix: truncation order unknown");
    let one = HSeries::one(k);
    let mut best: Option<usize> = None;
    let consider = |best: &mut Option<usize>, d: Option<usize>| {
        if let Some(d) = d {
            *best = Some(best.map_or(d, |b| b.min(d)));
        }
    };
    for i in 0..m.nrows() {
        match m.get(i, i) {
            Some(s) => consider(&mut best, (s - &one).min_degree()),
            // missing diagonal entry: the offset is -1, degree 0
            None => return Valuation::At(0),
        }
        if best == Some(0) {
            return Valuation::At(0);
        }
    }
    for (r, c, s) in m.entries() {
        if r != c {
            consider(&mut best, s.min_degree());
        }
    }
    match best {
        Some(v) => Valuation::At(v),
        None => Valuation::Above(k),
    }
}

/// Constant term of a series matrix: the reduction mod h, landing in
/// matrices over Q(sqrt(2)).
pub fn reduce_mod_h(m: &SparseMat<HSeries>) -> SparseMat<Quad2> {
    m.map(|s| s.coeff(0).clone())
}

fn invert_quad2_dense(n: usize, m: &SparseMat<Quad2>) -> Result<Vec<Vec<Quad2>>> {
    // Gauss-Jordan over the field Q(sqrt(2)).
    let mut a: Vec<Vec<Quad2>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| m.get(r, c).cloned().unwrap_or_else(Quad2::zero))
                .collect()
        })
        .collect();
    let mut inv: Vec<Vec<Quad2>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| if r == c { Quad2::one() } else { Quad2::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::NotInvertible(format!("constant term is singular at column {}", col)))?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].inverse();
        for x in a[col].iter_mut().chain(inv[col].iter_mut()) {
            *x = &*x * &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..n {
                let t = &f * &a[col][c];
                a[r][c] = &a[r][c] - &t;
                let t = &f * &inv[col][c];
                inv[r][c] = &inv[r][c] - &t;
            }
        }
    }
    Ok(inv)
}

/// Inverse of a matrix over truncated series.
///
/// Requires the constant term to be invertible over Q(sqrt(2)); the higher
/// orders are then resolved by a terminating Neumann series. The product
/// with the input equals the identity to the shared truncation order.
pub fn invert_truncated(m: &SparseMat<HSeries>) -> Result<SparseMat<HSeries>> {
    if !m.is_square() {
        return Err(Error::NotInvertible(format!(
            "matrix is {}x{}, not square",
            m.nrows(),
            m.ncols()
        )));
    }
    let k = series_order(m)
        .ok_or_else(|| Error::NotInvertible("zero matrix".into()))?;
    let n = m.nrows();
    let m0 = reduce_mod_h(m);
    let m0_inv = invert_quad2_dense(n, &m0)?;
    let mut a = SparseMat::zeros(n, n);
    for (r, row) in m0_inv.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            if !v.is_zero() {
                a.set(r, c, HSeries::constant(v.clone(), k));
            }
        }
    }
    // m = m0 (I + c) with c of valuation >= 1, so
    // m^{-1} = (sum_i (-c)^i) m0^{-1}, the sum cut off at order K.
    let one = HSeries::one(k);
    let c = a.mul(m).minus_identity(&one);
    let mut sum = SparseMat::identity(n, one);
    let mut term = SparseMat::identity(n, HSeries::one(k));
    for _ in 1..=k {
        term = term.mul(&c).neg();
        if term.num_entries() == 0 {
            break;
        }
        sum = sum.add(&term);
    }
    Ok(sum.mul(&a))
}
