//! Linear codes, their duals and distances, membership in the classes
//! `C_t(n,k)` (codes of dual minimum distance at least `t + 1`), and the
//! monomial group action.

use std::fmt;
use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::Combinations;
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem};
use crate::linalg::{self, Matrix, Subspace, Vector};

/// Upper limit on the number of codewords enumerated for an exact distance.
pub const EXACT_WORD_CAP: u64 = 1 << 24;

/// A minimum distance; the zero code has distance [`Distance::Infinite`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    pub fn at_least(self, bound: usize) -> bool {
        match self {
            Distance::Finite(d) => d >= bound,
            Distance::Infinite => true,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => write!(f, "inf"),
        }
    }
}

/// Which of the three equivalent membership tests to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Criterion {
    /// `d⊥(C) >= t + 1`.
    DualDistance,
    /// Every `t` columns of a generator matrix are independent.
    ColumnsIndependent,
    /// `dim(C ∩ C_{i_1..i_t}) = k - t` for every coordinate subspace.
    CoordMeet,
}

impl Criterion {
    pub const ALL: [Criterion; 3] = [
        Criterion::DualDistance,
        Criterion::ColumnsIndependent,
        Criterion::CoordMeet,
    ];
}

/// Result of a sampled distance search. The value is the lightest word found,
/// so it bounds the true minimum distance from above.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DistanceEstimate {
    pub value: Distance,
    pub exact: bool,
}

/// Number of nonzero coordinates.
pub fn weight(v: &[FieldElem]) -> usize {
    v.iter().filter(|x| !x.is_zero()).count()
}

/// Hamming distance `d(x, y) = wt(x - y)`.
pub fn hamming_distance(x: &[FieldElem], y: &[FieldElem]) -> usize {
    x.iter().zip(y).filter(|(a, b)| a != b).count()
}

/// An `[n,k]` linear code: a `k`-dimensional subspace of `F_q^n`.
#[derive(Clone)]
pub struct LinearCode {
    field: Field,
    space: Subspace,
    dual_distance: OnceLock<Result<Distance>>,
    t_max: OnceLock<usize>,
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LinearCode")
            .field("q", &self.field.q())
            .field("n", &self.n())
            .field("k", &self.k())
            .field("generator", &self.space.basis().row_vectors())
            .finish()
    }
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.space == other.space
    }
}

impl Eq for LinearCode {}

impl std::hash::Hash for LinearCode {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.q().hash(state);
        self.space.hash(state);
    }
}

impl LinearCode {
    pub fn new(field: Field, space: Subspace) -> Self {
        LinearCode {
            field,
            space,
            dual_distance: OnceLock::new(),
            t_max: OnceLock::new(),
        }
    }

    /// The code spanned by the rows of `generator`.
    pub fn from_generator(field: &Field, generator: &Matrix) -> Self {
        LinearCode::new(field.clone(), Subspace::row_space(field, generator))
    }

    pub fn from_rows(field: &Field, n: usize, rows: &[Vector]) -> Result<Self> {
        Ok(LinearCode::new(
            field.clone(),
            Subspace::span(field, n, rows)?,
        ))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn into_space(self) -> Subspace {
        self.space
    }

    pub fn n(&self) -> usize {
        self.space.ambient()
    }

    pub fn k(&self) -> usize {
        self.space.dim()
    }

    /// Canonical (RREF) generator matrix.
    pub fn generator(&self) -> &Matrix {
        self.space.basis()
    }

    /// `C⊥`, the kernel of the generator matrix.
    pub fn dual(&self) -> LinearCode {
        LinearCode::new(
            self.field.clone(),
            linalg::orthogonal(&self.field, &self.space),
        )
    }

    /// Exact minimum distance by enumerating one word per projective point.
    pub fn min_distance(&self) -> Result<Distance> {
        let (q, k) = (self.field.q(), self.k());
        if k == 0 {
            return Ok(Distance::Infinite);
        }
        let words = (q as u64)
            .checked_pow(k as u32)
            .filter(|&w| w <= EXACT_WORD_CAP);
        if words.is_none() {
            return Err(Error::TooLargeExact { q, k });
        }
        Ok(Distance::Finite(min_weight_exhaustive(
            &self.field,
            &self.space,
        )))
    }

    /// Lightest word found by information-set sampling. Exact (and flagged so)
    /// when the code is small enough to enumerate.
    pub fn min_distance_estimate<R: Rng + ?Sized>(
        &self,
        trials: usize,
        rng: &mut R,
    ) -> DistanceEstimate {
        if let Ok(d) = self.min_distance() {
            return DistanceEstimate {
                value: d,
                exact: true,
            };
        }
        let n = self.n();
        let mut best = n + 1;
        let mut order: Vec<usize> = (0..n).collect();
        for _ in 0..trials {
            order.shuffle(rng);
            let permuted = self.generator().select_columns(&order);
            let (r, _) = linalg::rref(&self.field, &permuted);
            for i in 0..r.rows() {
                best = best.min(weight(r.row(i)));
            }
        }
        DistanceEstimate {
            value: Distance::Finite(best),
            exact: false,
        }
    }

    /// `d⊥(C) = d_min(C⊥)`, cached after the first call.
    pub fn dual_min_distance(&self) -> Result<Distance> {
        self.dual_distance
            .get_or_init(|| self.dual().min_distance())
            .clone()
    }

    /// Membership in `C_t(n,k)` under the chosen criterion.
    pub fn is_in_ct(&self, t: usize, criterion: Criterion) -> Result<bool> {
        let (n, k) = (self.n(), self.k());
        if t < 1 || t > n {
            return Err(Error::BadT { t, n });
        }
        match criterion {
            Criterion::DualDistance => Ok(self.dual_min_distance()?.at_least(t + 1)),
            Criterion::ColumnsIndependent => Ok(t <= k && self.columns_independent(t)),
            Criterion::CoordMeet => {
                if t > k {
                    return Ok(false);
                }
                for idx in Combinations::new(n, t) {
                    let c = CoordSubspace::from_zero_based(n, idx).to_subspace();
                    if linalg::intersect(&self.field, &self.space, &c)?.dim() != k - t {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// True iff every `t` columns of the generator are independent.
    pub fn columns_independent(&self, t: usize) -> bool {
        columns_independent(&self.field, self.generator(), t)
    }

    /// Largest `t` with `C ∈ C_t(n,k)`; 0 for degenerate codes.
    pub fn t_max(&self) -> usize {
        *self.t_max.get_or_init(|| match self.dual_min_distance() {
            Ok(Distance::Infinite) => self.k(),
            Ok(Distance::Finite(d)) => (d - 1).min(self.k()),
            Err(_) => self.t_max_by_columns(),
        })
    }

    /// Same quantity as [`t_max`](Self::t_max), from column subsets only.
    pub fn t_max_by_columns(&self) -> usize {
        (1..=self.k())
            .take_while(|&t| self.columns_independent(t))
            .last()
            .unwrap_or(0)
    }

    pub fn is_non_degenerate(&self) -> bool {
        self.t_max() >= 1
    }

    pub fn is_projective(&self) -> bool {
        self.t_max() >= 2
    }

    /// `C_k(n,k)`: every `k` columns independent.
    pub fn is_mds(&self) -> bool {
        self.k() >= 1 && self.t_max() == self.k()
    }

    pub fn apply_monomial(&self, m: &MonomialMap) -> Result<LinearCode> {
        Ok(LinearCode::new(
            self.field.clone(),
            m.apply_subspace(&self.field, &self.space)?,
        ))
    }
}

/// True iff every `t` columns of `generator` are linearly independent.
pub fn columns_independent(field: &Field, generator: &Matrix, t: usize) -> bool {
    if t > generator.rows() {
        return false;
    }
    let mut scratch = Vec::new();
    let mut combos = Combinations::new(generator.cols(), t);
    while let Some(cols) = combos.advance() {
        if linalg::column_rank(field, generator, cols, &mut scratch) < t {
            return false;
        }
    }
    true
}

fn min_weight_exhaustive(field: &Field, space: &Subspace) -> usize {
    let gens = space.basis_vectors();
    let (k, n, q) = (gens.len(), space.ambient(), field.q());
    let mut best = n;
    let mut digits = vec![0u32; k];
    for lead in 0..k {
        let mut cur = gens[lead].clone();
        digits.iter_mut().for_each(|d| *d = 0);
        loop {
            best = best.min(weight(&cur));
            if best == 1 {
                return 1;
            }
            // odometer over positions lead+1..k, updating the word incrementally
            let mut pos = k;
            loop {
                if pos == lead + 1 {
                    pos = usize::MAX;
                    break;
                }
                pos -= 1;
                let old = FieldElem::from_raw(digits[pos]);
                if digits[pos] + 1 < q {
                    digits[pos] += 1;
                    let delta = field.sub(FieldElem::from_raw(digits[pos]), old);
                    linalg::axpy(field, &mut cur, delta, &gens[pos]);
                    break;
                }
                digits[pos] = 0;
                linalg::axpy(field, &mut cur, field.neg(old), &gens[pos]);
            }
            if pos == usize::MAX {
                break;
            }
        }
    }
    best
}

/// The coordinate subspace `C_{i_1..i_t} = {x : x_{i_1} = ... = x_{i_t} = 0}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoordSubspace {
    n: usize,
    /// 1-based, strictly increasing.
    indices: Vec<usize>,
}

impl CoordSubspace {
    /// `indices` are 1-based and strictly increasing within `1..=n`.
    pub fn new(n: usize, indices: &[usize]) -> Result<Self> {
        if indices.iter().any(|&i| i < 1 || i > n) {
            return Err(Error::BadIndices(format!("{indices:?} not within 1..={n}")));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::BadIndices(format!(
                "{indices:?} not strictly increasing"
            )));
        }
        Ok(CoordSubspace {
            n,
            indices: indices.to_vec(),
        })
    }

    pub(crate) fn from_zero_based(n: usize, idx: Vec<usize>) -> Self {
        CoordSubspace {
            n,
            indices: idx.into_iter().map(|i| i + 1).collect(),
        }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn to_subspace(&self) -> Subspace {
        let keep: Vec<usize> = (1..=self.n).filter(|i| !self.indices.contains(i)).collect();
        let mut m = Matrix::zeros(keep.len(), self.n);
        for (r, &i) in keep.iter().enumerate() {
            m.set(r, i - 1, FieldElem::ONE);
        }
        Subspace::from_rref_unchecked(m)
    }
}

/// `coordinate_subspace(n, (i_1..i_t))`.
pub fn coordinate_subspace(n: usize, indices: &[usize]) -> Result<CoordSubspace> {
    CoordSubspace::new(n, indices)
}

/// The coordinate functional `x^j` as a vector (row `j` of the identity).
pub fn coordinate_functional(n: usize, j: usize) -> Vector {
    let mut v = vec![FieldElem::ZERO; n];
    v[j] = FieldElem::ONE;
    v
}

/// A monomial transformation: column `j` moves to position `perm[j]` and is
/// multiplied by `scalars[j]`. Composition [`then`](Self::then) applies `self`
/// first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialMap {
    perm: Vec<usize>,
    scalars: Vec<FieldElem>,
}

impl MonomialMap {
    /// `perm` is 0-based.
    pub fn new(perm: Vec<usize>, scalars: Vec<FieldElem>) -> Result<Self> {
        let n = perm.len();
        if scalars.len() != n {
            return Err(Error::InvalidMonomial(format!(
                "{} scalars for {} coordinates",
                scalars.len(),
                n
            )));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidMonomial(format!(
                    "{perm:?} is not a permutation"
                )));
            }
        }
        if scalars.iter().any(|s| s.is_zero()) {
            return Err(Error::InvalidMonomial("zero scalar".into()));
        }
        Ok(MonomialMap { perm, scalars })
    }

    pub fn identity(n: usize) -> Self {
        MonomialMap {
            perm: (0..n).collect(),
            scalars: vec![FieldElem::ONE; n],
        }
    }

    pub fn permutation(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        Self::new(perm, vec![FieldElem::ONE; n])
    }

    pub fn scaling(scalars: Vec<FieldElem>) -> Result<Self> {
        Self::new((0..scalars.len()).collect(), scalars)
    }

    pub fn random<R: Rng + ?Sized>(field: &Field, n: usize, rng: &mut R) -> Self {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        let scalars = (0..n)
            .map(|_| FieldElem::from_raw(rng.gen_range(1..field.q())))
            .collect();
        MonomialMap { perm, scalars }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn scalars(&self) -> &[FieldElem] {
        &self.scalars
    }

    pub fn apply_vector(&self, field: &Field, v: &[FieldElem]) -> Vector {
        let mut out = vec![FieldElem::ZERO; v.len()];
        for (j, &x) in v.iter().enumerate() {
            out[self.perm[j]] = field.mul(self.scalars[j], x);
        }
        out
    }

    pub fn apply_matrix(&self, field: &Field, m: &Matrix) -> Result<Matrix> {
        if m.cols() != self.n() {
            return Err(Error::DimensionMismatch(format!(
                "monomial map on {} coordinates applied to {} columns",
                self.n(),
                m.cols()
            )));
        }
        let rows: Vec<Vector> = (0..m.rows())
            .map(|r| self.apply_vector(field, m.row(r)))
            .collect();
        Matrix::from_rows(&rows, m.cols())
    }

    pub fn apply_subspace(&self, field: &Field, s: &Subspace) -> Result<Subspace> {
        Ok(Subspace::row_space(
            field,
            &self.apply_matrix(field, s.basis())?,
        ))
    }

    /// `self` followed by `next`.
    pub fn then(&self, field: &Field, next: &MonomialMap) -> Result<MonomialMap> {
        if next.n() != self.n() {
            return Err(Error::DimensionMismatch(format!(
                "composing maps on {} and {} coordinates",
                self.n(),
                next.n()
            )));
        }
        let perm = self.perm.iter().map(|&p| next.perm[p]).collect();
        let scalars = self
            .perm
            .iter()
            .zip(&self.scalars)
            .map(|(&p, &s)| field.mul(s, next.scalars[p]))
            .collect();
        Ok(MonomialMap { perm, scalars })
    }

    pub fn inverse(&self, field: &Field) -> MonomialMap {
        let n = self.n();
        let mut perm = vec![0; n];
        let mut scalars = vec![FieldElem::ONE; n];
        for j in 0..n {
            perm[self.perm[j]] = j;
            scalars[self.perm[j]] = field.inv_nonzero(self.scalars[j]);
        }
        MonomialMap { perm, scalars }
    }
}
