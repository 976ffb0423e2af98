//! Dense matrices and subspaces over GF(q).
//!
//! A [`Subspace`] always stores its basis in reduced row echelon form, so two
//! subspaces are equal exactly when their stored bases are entry-identical.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem};

pub type Vector = Vec<FieldElem>;

/// Dense row-major matrix over a finite field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl Ord for Matrix {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.rows, self.cols, &self.data).cmp(&(other.rows, other.cols, &other.data))
    }
}

impl PartialOrd for Matrix {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![FieldElem::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FieldElem::ONE);
        }
        m
    }

    pub fn from_rows(rows: &[Vector], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {} columns",
                    r.len(),
                    cols
                )));
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds a matrix from raw encodings, checking them against `field`.
    pub fn from_values(field: &Field, rows: usize, cols: usize, values: &[u64]) -> Result<Self> {
        if values.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} values for a {rows}x{cols} matrix",
                values.len()
            )));
        }
        let data = values
            .iter()
            .map(|&v| field.elem(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix { rows, cols, data })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElem) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[FieldElem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            let row = self.row(r);
            data.extend(cols.iter().map(|&c| row[c]));
        }
        Matrix {
            rows: self.rows,
            cols: cols.len(),
            data,
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// `self * v^T`.
    pub fn mul_vec(&self, field: &Field, v: &[FieldElem]) -> Vector {
        (0..self.rows).map(|r| dot(field, self.row(r), v)).collect()
    }

    pub fn mul(&self, field: &Field, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = field.add(out.get(r, c), field.mul(a, other.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// Reduces in place to RREF and returns the pivot columns.
    pub fn rref_in_place(&mut self, field: &Field) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(sel) = (r..rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if sel != r {
                for j in 0..cols {
                    self.data.swap(sel * cols + j, r * cols + j);
                }
            }
            let inv = field.inv_nonzero(self.get(r, c));
            for j in c..cols {
                let v = field.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                let neg = field.neg(factor);
                for j in c..cols {
                    let v = field.add(self.get(i, j), field.mul(neg, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn truncate_rows(&mut self, rows: usize) {
        self.rows = rows;
        self.data.truncate(rows * self.cols);
    }
}

#[inline]
pub fn dot(field: &Field, a: &[FieldElem], b: &[FieldElem]) -> FieldElem {
    a.iter().zip(b).fold(FieldElem::ZERO, |acc, (&x, &y)| {
        field.add(acc, field.mul(x, y))
    })
}

/// `y += a * x`.
#[inline]
pub fn axpy(field: &Field, y: &mut [FieldElem], a: FieldElem, x: &[FieldElem]) {
    if a.is_zero() {
        return;
    }
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi = field.add(*yi, field.mul(a, xi));
    }
}

pub fn scale(field: &Field, a: FieldElem, x: &[FieldElem]) -> Vector {
    x.iter().map(|&v| field.mul(a, v)).collect()
}

/// Linear combination `sum coeffs[i] * vectors[i]`.
pub fn combine(field: &Field, coeffs: &[FieldElem], vectors: &[Vector], len: usize) -> Vector {
    let mut out = vec![FieldElem::ZERO; len];
    for (&c, v) in coeffs.iter().zip(vectors) {
        axpy(field, &mut out, c, v);
    }
    out
}

/// Reduced row echelon form together with the rank.
pub fn rref(field: &Field, m: &Matrix) -> (Matrix, usize) {
    let mut out = m.clone();
    let rank = out.rref_in_place(field).len();
    (out, rank)
}

/// Rank by forward elimination on a row-major scratch buffer (destroyed).
pub fn rank_in_place(field: &Field, data: &mut [FieldElem], rows: usize, cols: usize) -> usize {
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(sel) = (r..rows).find(|&i| !data[i * cols + c].is_zero()) else {
            continue;
        };
        if sel != r {
            for j in c..cols {
                data.swap(sel * cols + j, r * cols + j);
            }
        }
        let inv = field.inv_nonzero(data[r * cols + c]);
        for i in r + 1..rows {
            let factor = data[i * cols + c];
            if factor.is_zero() {
                continue;
            }
            let m = field.neg(field.mul(factor, inv));
            for j in c..cols {
                data[i * cols + j] =
                    field.add(data[i * cols + j], field.mul(m, data[r * cols + j]));
            }
        }
        r += 1;
    }
    r
}

pub fn rank(field: &Field, m: &Matrix) -> usize {
    let mut scratch = m.data.clone();
    rank_in_place(field, &mut scratch, m.rows, m.cols)
}

/// Rank of the submatrix formed by the given columns.
pub fn column_rank(
    field: &Field,
    m: &Matrix,
    cols: &[usize],
    scratch: &mut Vec<FieldElem>,
) -> usize {
    scratch.clear();
    for r in 0..m.rows {
        let row = m.row(r);
        scratch.extend(cols.iter().map(|&c| row[c]));
    }
    rank_in_place(field, scratch, m.rows, cols.len())
}

/// A subspace of `F_q^n`, stored as an RREF basis with no zero rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace {
            ambient: n,
            basis: Matrix::zeros(0, n),
        }
    }

    pub fn full(n: usize) -> Self {
        Subspace {
            ambient: n,
            basis: Matrix::identity(n),
        }
    }

    /// Row space of `m`.
    pub fn row_space(field: &Field, m: &Matrix) -> Self {
        let mut basis = m.clone();
        let r = basis.rref_in_place(field).len();
        basis.truncate_rows(r);
        Subspace {
            ambient: m.cols,
            basis,
        }
    }

    pub fn span(field: &Field, n: usize, vectors: &[Vector]) -> Result<Self> {
        Ok(Self::row_space(field, &Matrix::from_rows(vectors, n)?))
    }

    /// Wraps a matrix already known to be in RREF without zero rows.
    pub(crate) fn from_rref_unchecked(basis: Matrix) -> Self {
        debug_assert!(is_rref(&basis));
        Subspace {
            ambient: basis.cols,
            basis,
        }
    }

    pub fn from_rref(basis: Matrix) -> Result<Self> {
        if !is_rref(&basis) {
            return Err(Error::NotSubspace(
                "matrix is not in reduced row echelon form".into(),
            ));
        }
        Ok(Self::from_rref_unchecked(basis))
    }

    #[inline]
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    #[inline]
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|r| {
                self.basis
                    .row(r)
                    .iter()
                    .position(|x| !x.is_zero())
                    .expect("basis rows are nonzero")
            })
            .collect()
    }

    pub fn contains_vector(&self, field: &Field, v: &[FieldElem]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        // reduce against the RREF basis: coefficient of row i is v[pivot_i]
        let mut w = v.to_vec();
        for (r, p) in self.pivots().into_iter().enumerate() {
            let c = w[p];
            if !c.is_zero() {
                axpy(field, &mut w, field.neg(c), self.basis.row(r));
            }
        }
        w.iter().all(|x| x.is_zero())
    }

    pub fn contains(&self, field: &Field, other: &Subspace) -> bool {
        other.ambient == self.ambient
            && (0..other.dim()).all(|r| self.contains_vector(field, other.basis.row(r)))
    }

    /// Every vector of the subspace, in a fixed order. Only for small spaces.
    pub fn vectors(&self, field: &Field) -> Vec<Vector> {
        let basis = self.basis_vectors();
        let mut out = vec![vec![FieldElem::ZERO; self.ambient]];
        for b in &basis {
            let mut next = Vec::with_capacity(out.len() * field.q() as usize);
            for a in field.elements() {
                for v in &out {
                    let mut w = v.clone();
                    axpy(field, &mut w, a, b);
                    next.push(w);
                }
            }
            out = next;
        }
        out
    }
}

fn is_rref(m: &Matrix) -> bool {
    let mut last: Option<usize> = None;
    for r in 0..m.rows {
        let Some(p) = m.row(r).iter().position(|x| !x.is_zero()) else {
            return false;
        };
        if last.is_some_and(|l| p <= l) || m.get(r, p) != FieldElem::ONE {
            return false;
        }
        if (0..m.rows).any(|i| i != r && !m.get(i, p).is_zero()) {
            return false;
        }
        last = Some(p);
    }
    true
}

fn check_ambient(a: &Subspace, b: &Subspace) -> Result<()> {
    if a.ambient != b.ambient {
        Err(Error::AmbientMismatch(a.ambient, b.ambient))
    } else {
        Ok(())
    }
}

/// `a + b`.
pub fn sum(field: &Field, a: &Subspace, b: &Subspace) -> Result<Subspace> {
    check_ambient(a, b)?;
    Ok(Subspace::row_space(field, &a.basis.vstack(&b.basis)?))
}

/// `a ∩ b` by the Zassenhaus construction: reduce `[[A, A], [B, 0]]`; rows
/// whose left half vanishes carry the intersection in their right half.
pub fn intersect(field: &Field, a: &Subspace, b: &Subspace) -> Result<Subspace> {
    check_ambient(a, b)?;
    let n = a.ambient;
    let mut z = Matrix::zeros(a.dim() + b.dim(), 2 * n);
    for r in 0..a.dim() {
        for c in 0..n {
            z.set(r, c, a.basis.get(r, c));
            z.set(r, n + c, a.basis.get(r, c));
        }
    }
    for r in 0..b.dim() {
        for c in 0..n {
            z.set(a.dim() + r, c, b.basis.get(r, c));
        }
    }
    let pivots = z.rref_in_place(field);
    let sum_dim = pivots.iter().filter(|&&p| p < n).count();
    let meet: Vec<Vector> = pivots
        .iter()
        .enumerate()
        .filter(|(_, &p)| p >= n)
        .map(|(r, _)| z.row(r)[n..].to_vec())
        .collect();
    let out = Subspace::span(field, n, &meet)?;
    assert_eq!(
        out.dim() + sum_dim,
        a.dim() + b.dim(),
        "dim(a∩b) + dim(a+b) must equal dim a + dim b"
    );
    Ok(out)
}

/// `dim(a ∩ b)` through a single rank computation.
pub fn intersection_dim(field: &Field, a: &Subspace, b: &Subspace) -> usize {
    debug_assert_eq!(a.ambient, b.ambient);
    let mut scratch = Vec::with_capacity((a.dim() + b.dim()) * a.ambient);
    scratch.extend_from_slice(&a.basis.data);
    scratch.extend_from_slice(&b.basis.data);
    a.dim() + b.dim() - rank_in_place(field, &mut scratch, a.dim() + b.dim(), a.ambient)
}

/// Right kernel `{v : m v^T = 0}`.
pub fn kernel(field: &Field, m: &Matrix) -> Subspace {
    let n = m.cols;
    let (r, _) = rref(field, m);
    let pivots: Vec<usize> = (0..r.rows)
        .filter_map(|i| r.row(i).iter().position(|x| !x.is_zero()))
        .collect();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let vectors: Vec<Vector> = free
        .iter()
        .map(|&f| {
            let mut v = vec![FieldElem::ZERO; n];
            v[f] = FieldElem::ONE;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = field.neg(r.get(i, f));
            }
            v
        })
        .collect();
    Subspace::span(field, n, &vectors).expect("kernel vectors have ambient length")
}

/// Orthogonal complement under the standard bilinear form.
pub fn orthogonal(field: &Field, s: &Subspace) -> Subspace {
    if s.dim() == 0 {
        return Subspace::full(s.ambient);
    }
    kernel(field, &s.basis)
}

/// Incrementally built echelon set, used for independence tests and basis
/// completion.
#[derive(Clone, Debug)]
pub struct Echelon {
    len: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(len: usize) -> Self {
        Echelon {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_subspace(s: &Subspace) -> Self {
        Echelon {
            len: s.ambient,
            rows: s.basis_vectors(),
            pivots: s.pivots(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, field: &Field, v: &mut [FieldElem]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if !c.is_zero() {
                axpy(field, v, field.neg(c), row);
            }
        }
    }

    pub fn is_independent(&self, field: &Field, v: &[FieldElem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(field, &mut w);
        w.iter().any(|x| !x.is_zero())
    }

    /// Adds `v` if it is independent of the current rows; reports whether it was.
    pub fn insert(&mut self, field: &Field, v: &[FieldElem]) -> bool {
        debug_assert_eq!(v.len(), self.len);
        let mut w = v.to_vec();
        self.reduce(field, &mut w);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = field.inv_nonzero(w[p]);
        let w = scale(field, inv, &w);
        self.rows.push(w);
        self.pivots.push(p);
        true
    }
}

/// Extends a basis of `inner` to one of `outer` using rows of `outer`'s RREF
/// basis; returns only the added vectors (a transversal for `outer / inner`).
pub fn complement_basis(field: &Field, outer: &Subspace, inner: &Subspace) -> Result<Vec<Vector>> {
    check_ambient(outer, inner)?;
    if !outer.contains(field, inner) {
        return Err(Error::NotSubspace(
            "inner space is not contained in outer".into(),
        ));
    }
    let mut ech = Echelon::from_subspace(inner);
    let mut out = Vec::new();
    for r in 0..outer.dim() {
        let v = outer.basis.row(r);
        if ech.insert(field, v) {
            out.push(v.to_vec());
        }
    }
    debug_assert_eq!(out.len(), outer.dim() - inner.dim());
    Ok(out)
}

/// Nonzero vectors of `F_q^m` whose first nonzero entry is 1: one
/// representative per 1-dimensional subspace, `[m]_q` in total. Ordered by
/// position of the leading 1, then lexicographically on the tail.
#[derive(Clone, Debug)]
pub struct ProjectivePoints {
    q: u32,
    m: usize,
    lead: usize,
    tail: Vec<u32>,
    exhausted: bool,
}

impl ProjectivePoints {
    pub fn new(field: &Field, m: usize) -> Self {
        ProjectivePoints {
            q: field.q(),
            m,
            lead: 0,
            tail: vec![0; m.saturating_sub(1)],
            exhausted: m == 0,
        }
    }
}

impl Iterator for ProjectivePoints {
    type Item = Vector;

    fn next(&mut self) -> Option<Vector> {
        if self.exhausted {
            return None;
        }
        let mut v = vec![FieldElem::ZERO; self.m];
        v[self.lead] = FieldElem::ONE;
        let tail_len = self.m - self.lead - 1;
        for i in 0..tail_len {
            v[self.lead + 1 + i] = FieldElem::from_raw(self.tail[i]);
        }
        // odometer over the tail, last entry fastest
        let mut i = tail_len;
        loop {
            if i == 0 {
                self.lead += 1;
                if self.lead == self.m {
                    self.exhausted = true;
                }
                self.tail.iter_mut().for_each(|x| *x = 0);
                break;
            }
            i -= 1;
            self.tail[i] += 1;
            if self.tail[i] < self.q {
                break;
            }
            self.tail[i] = 0;
        }
        Some(v)
    }
}

/// Iterator over the hyperplanes of `x` that contain `u`.
#[derive(Clone, Debug)]
pub struct Hyperplanes {
    field: Field,
    n: usize,
    u: Vec<Vector>,
    complement: Vec<Vector>,
    functionals: ProjectivePoints,
}

impl Iterator for Hyperplanes {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        let c = self.functionals.next()?;
        let f = &self.field;
        // kernel of a -> sum c_i a_i with c_lead = 1: w_i - c_i w_lead for i != lead
        let lead = c
            .iter()
            .position(|x| !x.is_zero())
            .expect("normalized functional");
        let mut gens = self.u.clone();
        for (i, w) in self.complement.iter().enumerate() {
            if i == lead {
                continue;
            }
            let mut v = w.clone();
            axpy(f, &mut v, f.neg(c[i]), &self.complement[lead]);
            gens.push(v);
        }
        Some(Subspace::span(f, self.n, &gens).expect("generators have ambient length"))
    }
}

/// All hyperplanes `H` of `x` with `u ⊆ H`; yields `[dim x - dim u]_q` distinct
/// subspaces in a fixed order.
pub fn hyperplanes_containing(field: &Field, x: &Subspace, u: &Subspace) -> Result<Hyperplanes> {
    check_ambient(x, u)?;
    if !x.contains(field, u) {
        return Err(Error::NotSubspace("u is not contained in x".into()));
    }
    if u.dim() >= x.dim() {
        return Err(Error::NotSubspace(
            "u must have codimension at least 1 in x".into(),
        ));
    }
    let complement = complement_basis(field, x, u)?;
    Ok(Hyperplanes {
        field: field.clone(),
        n: x.ambient,
        u: u.basis_vectors(),
        functionals: ProjectivePoints::new(field, complement.len()),
        complement,
    })
}

/// Given two distinct hyperplanes of `s` with bases `b1`, `b2`, returns a
/// basis of `s` drawn from `b1 ∪ b2`: all of `b1` plus the first vector of
/// `b2` outside `span(b1)`.
pub fn merge_bases(
    field: &Field,
    s: &Subspace,
    b1: &[Vector],
    b2: &[Vector],
) -> Result<Vec<Vector>> {
    let n = s.ambient;
    let h1 = Subspace::span(field, n, b1)?;
    let h2 = Subspace::span(field, n, b2)?;
    for (h, b) in [(&h1, b1), (&h2, b2)] {
        if h.dim() + 1 != s.dim() || b.len() != h.dim() || !s.contains(field, h) {
            return Err(Error::NotSubspace(
                "bases must span hyperplanes of s".into(),
            ));
        }
    }
    if h1 == h2 {
        return Err(Error::EqualHyperplanes);
    }
    let extra = b2
        .iter()
        .find(|v| !h1.contains_vector(field, v))
        .expect("distinct hyperplanes");
    let mut out = b1.to_vec();
    out.push(extra.clone());
    Ok(out)
}

/// `[m]_q = (q^m - 1) / (q - 1)`, the number of points of `PG(m-1, q)`.
pub fn q_number(m: usize, q: u32) -> BigUint {
    let q = BigUint::from(q);
    (0..m).fold(BigUint::zero(), |acc, _| acc * &q + 1u32)
}

/// Gaussian binomial coefficient: number of `k`-subspaces of `F_q^n`.
pub fn gaussian_binomial(n: usize, k: usize, q: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let qb = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= qb.pow((n - i) as u32) - 1u32;
        den *= qb.pow((i + 1) as u32) - 1u32;
    }
    num / den
}
