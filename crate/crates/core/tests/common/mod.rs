#![allow(dead_code)]

use grassmann_codes::codes::weight;
use grassmann_codes::combinatorics::Combinations;
use grassmann_codes::{Field, FieldElem, LinearCode, Matrix, Vector};
use rand::Rng;

pub fn gf(q: u64) -> Field {
    Field::with_order(q).unwrap()
}

pub fn v(xs: &[u32]) -> Vector {
    xs.iter().map(|&x| FieldElem::from_raw(x)).collect()
}

pub fn random_vector<R: Rng>(f: &Field, n: usize, rng: &mut R) -> Vector {
    (0..n)
        .map(|_| FieldElem::from_raw(rng.gen_range(0..f.q())))
        .collect()
}

pub fn random_matrix<R: Rng>(f: &Field, rows: usize, cols: usize, rng: &mut R) -> Matrix {
    let r: Vec<Vector> = (0..rows).map(|_| random_vector(f, cols, rng)).collect();
    Matrix::from_rows(&r, cols).unwrap()
}

/// A uniformly random `[n,k]` code, by rejection of rank-deficient generators.
pub fn random_code<R: Rng>(f: &Field, n: usize, k: usize, rng: &mut R) -> LinearCode {
    loop {
        let c = LinearCode::from_generator(f, &random_matrix(f, k, n, rng));
        if c.k() == k {
            return c;
        }
    }
}

/// Every vector of F_q^len, in odometer order.
pub fn all_vectors(f: &Field, len: usize) -> Vec<Vector> {
    let q = f.q();
    let total = (q as usize).pow(len as u32);
    (0..total)
        .map(|mut i| {
            (0..len)
                .map(|_| {
                    let d = (i % q as usize) as u32;
                    i /= q as usize;
                    FieldElem::from_raw(d)
                })
                .collect()
        })
        .collect()
}

fn dot(f: &Field, a: &[FieldElem], b: &[FieldElem]) -> FieldElem {
    a.iter()
        .zip(b)
        .fold(FieldElem::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// Minimum weight of a nonzero vector orthogonal to every generator row,
/// found by trying all of F_q^n. `None` when only zero is orthogonal.
pub fn brute_dual_distance(c: &LinearCode) -> Option<usize> {
    let f = c.field();
    let rows = c.generator().row_vectors();
    all_vectors(f, c.n())
        .into_iter()
        .filter(|w| weight(w) > 0 && rows.iter().all(|r| dot(f, r, w).is_zero()))
        .map(|w| weight(&w))
        .min()
}

/// Minimum weight of a nonzero codeword, by summing every coefficient combination.
pub fn brute_min_distance(c: &LinearCode) -> Option<usize> {
    let f = c.field();
    let rows = c.generator().row_vectors();
    all_vectors(f, c.k())
        .into_iter()
        .filter(|a| weight(a) > 0)
        .map(|a| {
            let mut w = vec![FieldElem::ZERO; c.n()];
            for (coef, row) in a.iter().zip(&rows) {
                for (x, &r) in w.iter_mut().zip(row) {
                    *x = f.add(*x, f.mul(*coef, r));
                }
            }
            weight(&w)
        })
        .min()
}

/// Every `t` columns independent, tested by looking for a vanishing nonzero
/// combination of each `t`-set of columns.
pub fn brute_columns_independent(c: &LinearCode, t: usize) -> bool {
    let f = c.field();
    let g = c.generator();
    if t > c.k() {
        return false;
    }
    let coeffs: Vec<Vector> = all_vectors(f, t)
        .into_iter()
        .filter(|a| weight(a) > 0)
        .collect();
    Combinations::new(c.n(), t).all(|cols| {
        coeffs.iter().all(|a| {
            (0..c.k()).any(|r| {
                let s = cols.iter().zip(a).fold(FieldElem::ZERO, |acc, (&j, &x)| {
                    f.add(acc, f.mul(x, g.get(r, j)))
                });
                !s.is_zero()
            })
        })
    })
}

/// Number of k-subspaces of F_q^n from the product formula, in u128.
pub fn gaussian_count(n: u32, k: u32, q: u128) -> u128 {
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

/// `[m]_q = (q^m - 1)/(q - 1)`.
pub fn q_int(m: u32, q: u64) -> u64 {
    (0..m).map(|i| q.pow(i)).sum()
}
