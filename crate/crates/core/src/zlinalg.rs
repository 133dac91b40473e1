//! Exact integer linear algebra: Hermite and Smith normal forms.
//!
//! Everything runs over [`BigInt`]; nothing is ever rounded. Pivots are
//! chosen by smallest nonzero absolute value, which keeps coefficient growth
//! in check for the small relation matrices this crate deals with.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!("{rows}x{cols} matrix")));
        }
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Build from machine-integer rows. Panics on ragged or empty input.
    pub fn from_rows<T: Copy + Into<BigInt>>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows.iter().flatten().map(|&x| x.into()).collect();
        Self::new(r, c, data).expect("nonempty matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::Dimension(
                "determinant of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                a.swap_rows(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * &a[(n - 1, n - 1)])
    }

    pub(crate) fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row[dst] -= f * row[src]
    fn row_submul(&mut self, dst: usize, src: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = &self[(src, c)] * f;
            self[(dst, c)] -= v;
        }
    }

    /// col[dst] -= f * col[src]
    fn col_submul(&mut self, dst: usize, src: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = &self[(r, src)] * f;
            self[(r, dst)] -= v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -&self[(i, c)];
            self[(i, c)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(ToString::to_string).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

/// Result of [`hnf`]: `h = u * m` with `u` unimodular.
#[derive(Clone, Debug)]
pub struct Hnf {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Column index of each nonzero row's pivot.
    pub pivots: Vec<usize>,
}

impl Hnf {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Row-style Hermite normal form.
///
/// The output is upper triangular in echelon form with positive pivots; every
/// entry above a pivot lies in `[0, pivot)`. Zero rows collect at the bottom.
pub fn hnf(m: &IntMatrix) -> Hnf {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..h.cols {
        if r == h.rows {
            break;
        }
        loop {
            let best = (r..h.rows)
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by(|&i, &j| h[(i, c)].abs().cmp(&h[(j, c)].abs()));
            let Some(best) = best else { break };
            h.swap_rows(r, best);
            u.swap_rows(r, best);
            let mut done = true;
            for i in r + 1..h.rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = h[(i, c)].div_floor(&h[(r, c)]);
                h.row_submul(i, r, &q);
                u.row_submul(i, r, &q);
                if !h[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = h[(i, c)].div_floor(&h[(r, c)]);
            h.row_submul(i, r, &q);
            u.row_submul(i, r, &q);
        }
        pivots.push(c);
        r += 1;
    }
    Hnf { h, u, pivots }
}

/// Result of [`snf`]: `u * m * v = diag(divisors)`.
#[derive(Clone, Debug)]
pub struct Snf {
    /// `min(rows, cols)` nonnegative divisors; nonzero ones first, each
    /// dividing the next, zeros last.
    pub divisors: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

/// Smith normal form with both transforms.
pub fn snf(m: &IntMatrix) -> Snf {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let n = rows.min(cols);
    for k in 0..n {
        'pivot: loop {
            let mut best: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if a[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break 'pivot };
            a.swap_rows(k, bi);
            u.swap_rows(k, bi);
            a.swap_cols(k, bj);
            v.swap_cols(k, bj);

            let mut clean = true;
            for i in k + 1..rows {
                let q = a[(i, k)].div_floor(&a[(k, k)]);
                a.row_submul(i, k, &q);
                u.row_submul(i, k, &q);
                clean &= a[(i, k)].is_zero();
            }
            for j in k + 1..cols {
                let q = a[(k, j)].div_floor(&a[(k, k)]);
                a.col_submul(j, k, &q);
                v.col_submul(j, k, &q);
                clean &= a[(k, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            let offender = (k + 1..rows)
                .find(|&i| (k + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&a[(k, k)])));
            match offender {
                Some(i) => {
                    // row k += row i, then continue reducing.
                    let minus_one = -BigInt::one();
                    a.row_submul(k, i, &minus_one);
                    u.row_submul(k, i, &minus_one);
                }
                None => break 'pivot,
            }
        }
        if a[(k, k)].is_negative() {
            a.negate_row(k);
            u.negate_row(k);
        }
    }
    let mut divisors: Vec<BigInt> = (0..n).map(|i| a[(i, i)].clone()).collect();
    // Zero pivots only occur once the remaining block is zero, so they are
    // already at the tail; keep that explicit for callers.
    debug_assert!(divisors
        .windows(2)
        .all(|w| w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0]))));
    divisors.iter_mut().for_each(|d| *d = d.abs());
    Snf { divisors, u, v }
}

/// The lattice `{x ∈ Zⁿ : m·x ≡ 0 (mod modulus)}` as a row-HNF basis (rows).
pub fn kernel_mod(m: &IntMatrix, modulus: &BigInt) -> IntMatrix {
    let s = snf(m);
    let n = m.cols;
    // m = u⁻¹ d v⁻¹, so m·x ≡ 0 iff d·(v⁻¹x) ≡ 0; substitute x = v·y.
    let mut gens = IntMatrix::zeros(n, n);
    for j in 0..n {
        let d = s.divisors.get(j).cloned().unwrap_or_else(BigInt::zero);
        let scale = modulus / d.gcd(modulus);
        for i in 0..n {
            gens[(j, i)] = &s.v[(i, j)] * &scale;
        }
    }
    let h = hnf(&gens);
    let rank = h.rank();
    let mut out = IntMatrix::zeros(rank.max(1), n);
    for i in 0..rank {
        for j in 0..n {
            out[(i, j)] = h.h[(i, j)].clone();
        }
    }
    out
}

/// Incrementally maintained row lattice in upper-triangular echelon form.
///
/// Used to grow relation lattices one row at a time without recomputing a
/// full normal form; [`RowLattice::insert`] reports whether the lattice
/// actually changed.
#[derive(Clone, Debug)]
pub struct RowLattice {
    dim: usize,
    /// `basis[c]` is the row whose pivot sits in column `c`, if any.
    basis: Vec<Option<Vec<BigInt>>>,
}

impl RowLattice {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            basis: vec![None; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.iter().filter(|r| r.is_some()).count()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.dim
    }

    /// Index of the lattice in `Zⁿ` (product of pivots) when full rank.
    pub fn determinant(&self) -> Option<BigInt> {
        self.basis
            .iter()
            .enumerate()
            .map(|(c, r)| r.as_ref().map(|r| r[c].clone()))
            .product()
    }

    /// Insert a row; returns `true` when the lattice grew.
    pub fn insert(&mut self, row: &[BigInt]) -> bool {
        assert_eq!(row.len(), self.dim);
        let mut v = row.to_vec();
        let mut changed = false;
        for c in 0..self.dim {
            if v[c].is_zero() {
                continue;
            }
            match &mut self.basis[c] {
                None => {
                    if v[c].is_negative() {
                        v.iter_mut().for_each(|x| *x = -&*x);
                    }
                    self.basis[c] = Some(v);
                    return true;
                }
                Some(b) => {
                    if v[c].is_multiple_of(&b[c]) {
                        let q = &v[c] / &b[c];
                        for k in c..self.dim {
                            let t = &b[k] * &q;
                            v[k] -= t;
                        }
                        continue;
                    }
                    // Replace the pivot row by the gcd combination.
                    let e = b[c].extended_gcd(&v[c]);
                    let (bp, vp) = (&b[c] / &e.gcd, &v[c] / &e.gcd);
                    let mut new_b = vec![BigInt::zero(); self.dim];
                    let mut new_v = vec![BigInt::zero(); self.dim];
                    for k in c..self.dim {
                        new_b[k] = &e.x * &b[k] + &e.y * &v[k];
                        new_v[k] = &bp * &v[k] - &vp * &b[k];
                    }
                    if new_b[c].is_negative() {
                        new_b.iter_mut().for_each(|x| *x = -&*x);
                    }
                    *b = new_b;
                    v = new_v;
                    changed = true;
                }
            }
        }
        if changed && self.is_full_rank() {
            self.reduce();
        }
        changed
    }

    /// Reduce every entry right of a pivot into `[0, pivot)` of that
    /// column, keeping the stored basis entries small.
    fn reduce(&mut self) {
        for c in 0..self.dim {
            for k in c + 1..self.dim {
                let (head, tail) = self.basis.split_at_mut(k);
                let (Some(row), Some(lower)) = (&mut head[c], &tail[0]) else {
                    continue;
                };
                let q = row[k].div_floor(&lower[k]);
                if q.is_zero() {
                    continue;
                }
                for j in k..self.dim {
                    let t = &lower[j] * &q;
                    row[j] -= t;
                }
            }
        }
    }

    /// Basis rows as a square matrix (zero rows where a pivot is missing),
    /// brought into canonical Hermite form.
    pub fn to_hnf(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.dim, self.dim);
        for (i, r) in self.basis.iter().enumerate() {
            if let Some(r) = r {
                for j in 0..self.dim {
                    m[(i, j)] = r[j].clone();
                }
            }
        }
        hnf(&m).h
    }
}
