//! Dense matrices over a commutative ring, with exact rational linear algebra.
//!
//! Rank, kernels and determinants of rational matrices go through
//! fraction-free (Bareiss) elimination on an integer-scaled copy. Signatures of
//! symmetric matrices are read off the characteristic polynomial, which is
//! computed with the division-free Berkowitz recurrence.

use super::rational::{bigint_sign, int, Rational};
use super::ring::RingElem;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T = Rational> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut l = f.debug_list();
        for r in 0..self.rows {
            l.entry(&&self.data[r * self.cols..(r + 1) * self.cols]);
        }
        l.finish()
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.data[r * self.cols + c])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |r, c| {
            self.get(rows[r], cols[c]).clone()
        })
    }

    /// Stack matrices vertically; all must share a column count.
    pub fn vstack(blocks: &[Matrix<T>]) -> Self {
        let cols = blocks.first().map_or(0, |b| b.cols);
        assert!(blocks.iter().all(|b| b.cols == cols));
        Matrix {
            rows: blocks.iter().map(|b| b.rows).sum(),
            cols,
            data: blocks.iter().flat_map(|b| b.data.iter().cloned()).collect(),
        }
    }

    /// Stack matrices horizontally; all must share a row count.
    pub fn hstack(blocks: &[Matrix<T>]) -> Self {
        let rows = blocks.first().map_or(0, |b| b.rows);
        assert!(blocks.iter().all(|b| b.rows == rows));
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for b in blocks {
                data.extend_from_slice(b.row(r));
            }
        }
        Matrix { rows, cols, data }
    }
}

impl<T: RingElem> Matrix<T> {
    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero_elem())
    }

    pub fn scalar_identity(n: usize, one: &T) -> Self {
        let zero = one.zero_like();
        Matrix::from_fn(n, n, |r, c| if r == c { one.clone() } else { zero.clone() })
    }

    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let zero = self
            .data
            .first()
            .or(other.data.first())
            .map(|x| x.zero_like());
        Matrix::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = zero.clone().expect("empty matrix product");
            for k in 0..self.cols {
                let a = self.get(r, k);
                let b = other.get(k, c);
                if !a.is_zero_elem() && !b.is_zero_elem() {
                    acc = acc + a.clone() * b.clone();
                }
            }
            acc
        })
    }

    pub fn add(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |r, c| {
            self.get(r, c).clone() + other.get(r, c).clone()
        })
    }

    pub fn sub(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |r, c| {
            self.get(r, c).clone() - other.get(r, c).clone()
        })
    }

    pub fn neg(&self) -> Matrix<T> {
        self.map(|x| -x.clone())
    }

    pub fn scale(&self, s: &T) -> Matrix<T> {
        self.map(|x| s.clone() * x.clone())
    }

    /// Characteristic polynomial det(x·I − A), highest coefficient first, by
    /// the Berkowitz recurrence (ring operations only).
    pub fn charpoly(&self) -> Vec<T> {
        assert!(self.is_square(), "charpoly of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            panic!("charpoly of an empty matrix");
        }
        let one = self.get(0, 0).one_like();
        let mut v = vec![one.clone(), -self.get(0, 0).clone()];
        for r in 1..n {
            let mut t = vec![one.clone(), -self.get(r, r).clone()];
            let mut col: Vec<T> = (0..r).map(|i| self.get(i, r).clone()).collect();
            for _ in 0..r {
                let mut dot = one.zero_like();
                for (j, x) in col.iter().enumerate() {
                    dot = dot + self.get(r, j).clone() * x.clone();
                }
                t.push(-dot);
                let next: Vec<T> = (0..r)
                    .map(|i| {
                        let mut acc = one.zero_like();
                        for (j, x) in col.iter().enumerate() {
                            acc = acc + self.get(i, j).clone() * x.clone();
                        }
                        acc
                    })
                    .collect();
                col = next;
            }
            let mut nv = Vec::with_capacity(r + 2);
            for i in 0..r + 2 {
                let mut acc = one.zero_like();
                for j in 0..=r.min(i) {
                    if i - j < t.len() {
                        acc = acc + t[i - j].clone() * v[j].clone();
                    }
                }
                nv.push(acc);
            }
            v = nv;
        }
        v
    }

    /// Division-free determinant, valid over any commutative ring.
    pub fn det_ring(&self) -> T {
        let cp = self.charpoly();
        let n = self.rows;
        let c = cp[n].clone();
        if n % 2 == 0 {
            c
        } else {
            -c
        }
    }

    /// Does `self` commute with `other`? On failure, the first differing entry.
    pub fn commutator_witness(&self, other: &Matrix<T>) -> Option<(usize, usize)> {
        let ab = self.mul(other);
        let ba = other.mul(self);
        for r in 0..ab.rows {
            for c in 0..ab.cols {
                if ab.get(r, c) != ba.get(r, c) {
                    return Some((r, c));
                }
            }
        }
        None
    }
}

/// Integer row echelon form produced by Bareiss elimination.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    swaps: usize,
}

fn bareiss(mut a: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            swaps += 1;
        }
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in bottom.iter_mut() {
            for j in (c + 1)..cols {
                let num = &pivot_row[c] * &row[j] - &row[c] * &pivot_row[j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "inexact Bareiss division");
                row[j] = q;
            }
            row[c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(nrows);
    Echelon {
        rows: a,
        pivots,
        swaps,
    }
}

/// Kernel dimension and basis of a rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelRank {
    pub rank: usize,
    pub kernel: Vec<Vec<Rational>>,
}

impl Matrix<Rational> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::filled(rows, cols, Rational::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::scalar_identity(n, &Rational::one())
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    pub fn diagonal(d: &[Rational]) -> Self {
        let n = d.len();
        Matrix::from_fn(n, n, |r, c| {
            if r == c {
                d[r].clone()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Row-scaled integer copy and the product of the scale factors.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut scale = BigInt::one();
        let rows = (0..self.rows)
            .map(|r| {
                let den = self
                    .row(r)
                    .iter()
                    .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                scale *= &den;
                self.row(r)
                    .iter()
                    .map(|x| (x * Rational::from_integer(den.clone())).to_integer())
                    .collect()
            })
            .collect();
        (rows, scale)
    }

    pub fn rank(&self) -> usize {
        let (rows, _) = self.integer_rows();
        bareiss(rows, self.cols).pivots.len()
    }

    /// Exact rank and a basis of the right kernel {v : M v = 0}. Basis vectors
    /// are primitive integer vectors with positive leading entry.
    pub fn kernel_rank(&self) -> KernelRank {
        let (rows, _) = self.integer_rows();
        let ech = bareiss(rows, self.cols);
        let rank = ech.pivots.len();
        let free: Vec<usize> = (0..self.cols)
            .filter(|c| !ech.pivots.contains(c))
            .collect();
        let kernel = free
            .iter()
            .map(|&f| {
                let mut x = vec![Rational::zero(); self.cols];
                x[f] = Rational::one();
                for (i, &p) in ech.pivots.iter().enumerate().rev() {
                    let mut acc = Rational::zero();
                    for j in (p + 1)..self.cols {
                        if !ech.rows[i][j].is_zero() && !x[j].is_zero() {
                            acc += Rational::from_integer(ech.rows[i][j].clone()) * &x[j];
                        }
                    }
                    x[p] = -acc / Rational::from_integer(ech.rows[i][p].clone());
                }
                normalize_direction(&x)
            })
            .collect();
        KernelRank { rank, kernel }
    }

    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        self.kernel_rank().kernel
    }

    pub fn left_kernel(&self) -> Vec<Vec<Rational>> {
        self.transpose().kernel()
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> Rational {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Rational::one();
        }
        let (rows, scale) = self.integer_rows();
        let ech = bareiss(rows, n);
        if ech.pivots.len() < n {
            return Rational::zero();
        }
        let mut d = ech.rows[n - 1][n - 1].clone();
        if ech.swaps % 2 == 1 {
            d = -d;
        }
        Rational::new(d, scale)
    }

    pub fn inverse(&self) -> Result<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| !a.get(r, c).is_zero()).ok_or(Error::Singular)?;
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                    inv.data.swap(p * n + j, c * n + j);
                }
            }
            let piv = a.get(c, c).clone();
            for j in 0..n {
                let v = a.get(c, j) / &piv;
                a.set(c, j, v);
                let w = inv.get(c, j) / &piv;
                inv.set(c, j, w);
            }
            for r in 0..n {
                if r == c || a.get(r, c).is_zero() {
                    continue;
                }
                let f = a.get(r, c).clone();
                for j in 0..n {
                    let v = a.get(r, j) - &f * a.get(c, j);
                    a.set(r, j, v);
                    let w = inv.get(r, j) - &f * inv.get(c, j);
                    inv.set(r, j, w);
                }
            }
        }
        Ok(inv)
    }

    /// Reduced row echelon basis of the row space (nonzero rows only).
    pub fn row_space_basis(&self) -> Vec<Vec<Rational>> {
        let (rows, _) = self.integer_rows();
        let ech = bareiss(rows, self.cols);
        ech.rows
            .into_iter()
            .take(ech.pivots.len())
            .map(|r| r.into_iter().map(Rational::from_integer).collect())
            .collect()
    }
}

/// Scale to a primitive integer vector whose first nonzero entry is positive.
pub fn normalize_direction(v: &[Rational]) -> Vec<Rational> {
    let ints = super::rational::to_primitive_integers(v);
    let flip = ints
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative());
    ints.into_iter()
        .map(|x| Rational::from_integer(if flip { -x } else { x }))
        .collect()
}

/// Inertia of a real symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignatureResult {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

impl SignatureResult {
    pub fn size(&self) -> usize {
        self.n_plus + self.n_minus + self.n_zero
    }

    /// n_plus − n_minus.
    pub fn index(&self) -> i64 {
        self.n_plus as i64 - self.n_minus as i64
    }

    pub fn rank(&self) -> usize {
        self.n_plus + self.n_minus
    }

    pub fn is_positive_definite(&self) -> bool {
        self.n_minus == 0 && self.n_zero == 0
    }

    pub fn is_negative_definite(&self) -> bool {
        self.n_plus == 0 && self.n_zero == 0
    }

    pub fn is_definite(&self) -> bool {
        self.size() > 0 && (self.is_positive_definite() || self.is_negative_definite())
    }

    pub fn is_psd(&self) -> bool {
        self.n_minus == 0
    }
}

/// Symmetric rational matrix; symmetry is checked on construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymMatrix(Matrix<Rational>);

impl SymMatrix {
    pub fn new(m: Matrix<Rational>) -> Result<Self> {
        if m.is_symmetric() {
            Ok(SymMatrix(m))
        } else {
            Err(Error::NotSymmetric)
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        SymMatrix::new(Matrix::from_i64(rows))
    }

    pub fn size(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix<Rational> {
        self.0
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        self.0.get(r, c)
    }

    /// Exact inertia from sign variations of the characteristic polynomial.
    /// All eigenvalues are real, so Descartes' rule is exact here.
    pub fn signature(&self) -> SignatureResult {
        signature(self)
    }
}

impl fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn sign_variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Inertia by fraction-free symmetric elimination over the integers: after
/// each pivot the active block is D·S with S the Schur complement and D the
/// last pivot minor, so pivot signs are sign(D_k)·sign(D_(k−1)). A zero
/// remaining diagonal falls back to rational congruence on S.
pub fn signature(m: &SymMatrix) -> SignatureResult {
    let n = m.size();
    let den = m.0.entries().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut a: Vec<Vec<BigInt>> = m
        .0
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect())
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut prev = BigInt::one();
    let (mut n_plus, mut n_minus) = (0, 0);
    while let Some(pi) = active.iter().position(|&i| !a[i][i].is_zero()) {
        let p = active.swap_remove(pi);
        let d = a[p][p].clone();
        if bigint_sign(&d) * bigint_sign(&prev) > 0 {
            n_plus += 1;
        } else {
            n_minus += 1;
        }
        for (x, &i) in active.iter().enumerate() {
            for &k in &active[x..] {
                let v = (&d * &a[i][k] - &a[i][p] * &a[p][k]) / &prev;
                a[k][i] = v.clone();
                a[i][k] = v;
            }
        }
        prev = d;
    }
    if !active.is_empty() {
        let rest = Matrix::from_fn(active.len(), active.len(), |i, k| {
            Rational::new(a[active[i]][active[k]].clone(), prev.clone())
        });
        let s = congruence_signature(rest);
        n_plus += s.n_plus;
        n_minus += s.n_minus;
    }
    SignatureResult {
        n_plus,
        n_minus,
        n_zero: n - n_plus - n_minus,
    }
}

/// Inertia by symmetric congruence over ℚ: pivot on a nonzero diagonal
/// entry, or on a_ii + 2 a_ij + a_jj after adding row and column j to i when
/// the remaining diagonal is zero.
fn congruence_signature(m: Matrix) -> SignatureResult {
    let n = m.rows();
    let mut a: Vec<Vec<Rational>> = m.to_rows();
    let mut active: Vec<usize> = (0..n).collect();
    let (mut n_plus, mut n_minus) = (0, 0);
    while !active.is_empty() {
        let pivot = match active.iter().position(|&i| !a[i][i].is_zero()) {
            Some(p) => p,
            None => {
                let pair = active.iter().enumerate().find_map(|(pi, &i)| {
                    active.iter().find(|&&j| j != i && !a[i][j].is_zero()).map(|&j| (pi, i, j))
                });
                let Some((pi, i, j)) = pair else { break };
                // x_i ← x_i + x_j
                for k in 0..n {
                    let v = a[j][k].clone();
                    a[i][k] += v;
                }
                for k in 0..n {
                    let v = a[k][j].clone();
                    a[k][i] += v;
                }
                pi
            }
        };
        let p = active.swap_remove(pivot);
        let d = a[p][p].clone();
        if d.is_positive() {
            n_plus += 1;
        } else {
            n_minus += 1;
        }
        for &i in &active {
            if a[i][p].is_zero() {
                continue;
            }
            let f = &a[i][p] / &d;
            for &k in &active {
                let v = &f * &a[p][k];
                a[i][k] -= v;
            }
            a[i][p] = Rational::zero();
        }
        for &k in &active {
            a[p][k] = Rational::zero();
        }
    }
    SignatureResult {
        n_plus,
        n_minus,
        n_zero: n - n_plus - n_minus,
    }
}

/// Inertia from the signs of the characteristic polynomial (Descartes is
/// exact for real-rooted polynomials).
pub fn signature_charpoly(m: &SymMatrix) -> SignatureResult {
    let n = m.size();
    if n == 0 {
        return SignatureResult {
            n_plus: 0,
            n_minus: 0,
            n_zero: 0,
        };
    }
    // positive rescaling keeps the inertia and makes Berkowitz run on integers
    let den = m.0.entries().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled = m.0.map(|x| x * Rational::from_integer(den.clone()));
    let cp = scaled.charpoly();
    let signs: Vec<i32> = cp.iter().map(|c| bigint_sign(&c.to_integer())).collect();
    let n_zero = cp.iter().rev().take_while(|c| c.is_zero()).count();
    let n_plus = sign_variations(signs.iter().copied());
    // p(−x): coefficient of x^(n−i) picks up (−1)^(n−i)
    let n_minus = sign_variations(
        signs
            .iter()
            .enumerate()
            .map(|(i, &s)| if (n - i) % 2 == 1 { -s } else { s }),
    );
    SignatureResult {
        n_plus,
        n_minus,
        n_zero,
    }
}
