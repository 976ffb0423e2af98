//! Constructions inside `C_t(n,k)`: Vandermonde MDS codes, one-step moves
//! toward a target code, hyperplane shrinking, geodesic paths, and opposite
//! codes. Also the colouring diagnostics used to reason about step searches.
//!
//! Every search runs in a fixed order and returns the first success, so all
//! outputs are reproducible. Below the field-size bound `q >= C(n,t)` the
//! searches may fail; they then return an error instead of a fallback.

use std::collections::{BTreeMap, HashSet};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::codes::{Criterion, LinearCode, MonomialMap};
use crate::combinatorics::Combinations;
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem};
use crate::linalg::{self, Echelon, Matrix, ProjectivePoints, Subspace, Vector};

/// A colour: a 1-based increasing `t`-tuple, or infinity. Tuples compare
/// lexicographically and all lie below infinity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Color {
    Tuple(Vec<usize>),
    Infinity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SubspaceColor {
    Colored(Color),
    NotColorable,
}

/// Counters accumulated while scanning candidate codes `<H, z>`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ScanStats {
    pub hyperplanes_tried: u64,
    pub candidates_tried: u64,
    /// Candidates with `dim(<H,z> ∩ C) > k - t + 1` for some coordinate
    /// subspace `C` of codimension `t`. Must stay zero.
    pub prelim_violations: u64,
}

impl ScanStats {
    pub fn merge(&mut self, other: &ScanStats) {
        self.hyperplanes_tried += other.hyperplanes_tried;
        self.candidates_tried += other.candidates_tried;
        self.prelim_violations += other.prelim_violations;
    }
}

/// How a candidate `k`-space meets the coordinate subspaces of codimension `t`.
struct MeetProfile {
    in_ct: bool,
    prelim_violation: bool,
    first_deficient: Option<Vec<usize>>,
}

/// `dim(S ∩ C_I) = dim S - rank(G[:, I])`, so `S ∈ C_t` iff every rank is `t`,
/// and a meet of dimension `k - t + 1` is a rank of `t - 1`.
fn meet_profile(field: &Field, basis: &Matrix, t: usize) -> MeetProfile {
    let mut scratch = Vec::new();
    let mut profile = MeetProfile {
        in_ct: t <= basis.rows(),
        prelim_violation: false,
        first_deficient: None,
    };
    let mut combos = Combinations::new(basis.cols(), t);
    while let Some(cols) = combos.advance() {
        let r = linalg::column_rank(field, basis, cols, &mut scratch);
        if r < t {
            profile.in_ct = false;
        }
        if r + 1 < t {
            profile.prelim_violation = true;
        }
        if r + 1 == t && profile.first_deficient.is_none() {
            profile.first_deficient = Some(cols.iter().map(|c| c + 1).collect());
        }
    }
    profile
}

fn same_shape(x: &LinearCode, y: &LinearCode) -> Result<()> {
    if x.field() != y.field() {
        return Err(Error::FieldMismatch(x.field().q(), y.field().q()));
    }
    if x.n() != y.n() || x.k() != y.k() {
        return Err(Error::DimensionMismatch(format!(
            "[{},{}] vs [{},{}] codes",
            x.n(),
            x.k(),
            y.n(),
            y.k()
        )));
    }
    Ok(())
}

fn require_ct(c: &LinearCode, t: usize) -> Result<()> {
    if c.is_in_ct(t, Criterion::ColumnsIndependent)? {
        Ok(())
    } else {
        Err(Error::NotInCt { t })
    }
}

/// The `[n,k]` code generated by the rows `(a_1^i, ..., a_n^i)`, `i < k`.
/// Default points are the first `n` field elements by encoding.
pub fn vandermonde_mds(
    field: &Field,
    n: usize,
    k: usize,
    points: Option<&[FieldElem]>,
) -> Result<LinearCode> {
    if k == 0 || k > n {
        return Err(Error::DimensionMismatch(format!(
            "need 1 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    let pts: Vec<FieldElem> = match points {
        Some(p) => {
            if p.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "{} points for length {n}",
                    p.len()
                )));
            }
            if p.iter().any(|x| x.value() >= field.q()) {
                return Err(Error::ElementOutOfRange {
                    value: p.iter().map(|x| x.value()).max().unwrap_or(0) as u64,
                    q: field.q(),
                });
            }
            if p.iter().collect::<HashSet<_>>().len() != n {
                return Err(Error::DuplicatePoints);
            }
            p.to_vec()
        }
        None => {
            if n > field.q() as usize {
                return Err(Error::NotEnoughPoints { n, q: field.q() });
            }
            field.elements().take(n).collect()
        }
    };
    let rows: Vec<Vector> = (0..k)
        .map(|i| pts.iter().map(|&a| field.pow(a, i as u64)).collect())
        .collect();
    LinearCode::from_rows(field, n, &rows)
}

fn check_hyperplane(
    field: &Field,
    h: &Subspace,
    x: &LinearCode,
    y: &LinearCode,
) -> Result<Subspace> {
    let meet = linalg::intersect(field, x.space(), y.space())?;
    if h.ambient() != x.n()
        || h.dim() + 1 != x.k()
        || !x.space().contains(field, h)
        || !h.contains(field, &meet)
    {
        return Err(Error::BadHyperplane);
    }
    Ok(meet)
}

/// The colour of `[p] ∈ Y/(H∩Y)` induced by `H`: the lexicographically least
/// `t`-tuple `I` with `dim(<H,p> ∩ C_I) = k - t + 1`, or infinity.
pub fn psi_color(
    field: &Field,
    h: &Subspace,
    x: &LinearCode,
    y: &LinearCode,
    p: &[FieldElem],
    t: usize,
) -> Result<Color> {
    same_shape(x, y)?;
    check_hyperplane(field, h, x, y)?;
    if !y.space().contains_vector(field, p) {
        return Err(Error::NotSubspace("representative is not in y".into()));
    }
    if h.contains_vector(field, p) {
        return Err(Error::RepInH);
    }
    Ok(color_of(field, h, p, t))
}

fn color_of(field: &Field, h: &Subspace, p: &[FieldElem], t: usize) -> Color {
    let mut gens = h.basis_vectors();
    gens.push(p.to_vec());
    let z = Subspace::span(field, h.ambient(), &gens).expect("ambient length");
    match meet_profile(field, z.basis(), t).first_deficient {
        Some(tuple) => Color::Tuple(tuple),
        None => Color::Infinity,
    }
}

fn check_independent_mod(field: &Field, base: &Subspace, vectors: &[Vector]) -> Result<()> {
    let mut ech = Echelon::from_subspace(base);
    for v in vectors {
        if v.len() != base.ambient() || !ech.insert(field, v) {
            return Err(Error::DependentVectors);
        }
    }
    Ok(())
}

/// Whether the given vectors (independent modulo `H ∩ Y`) share one finite colour.
pub fn is_monochromatic_basis(
    field: &Field,
    h: &Subspace,
    x: &LinearCode,
    y: &LinearCode,
    vectors: &[Vector],
    t: usize,
) -> Result<bool> {
    same_shape(x, y)?;
    check_hyperplane(field, h, x, y)?;
    let hy = linalg::intersect(field, h, y.space())?;
    check_independent_mod(field, &hy, vectors)?;
    let mut colors = Vec::with_capacity(vectors.len());
    for v in vectors {
        colors.push(psi_color(field, h, x, y, v, t)?);
    }
    Ok(colors
        .first()
        .is_some_and(|c0| *c0 != Color::Infinity && colors.iter().all(|c| c == c0)))
}

/// Point counts up to this size are coloured exhaustively in [`subspace_color`].
pub const EXHAUSTIVE_POINT_LIMIT: u64 = 1 << 14;

/// The colour of the subspace `S` of `Y/(H∩Y)` spanned by the classes of
/// `span`: the least colour `c` such that `S` has a basis of colour-`c`
/// points. A monochromatic basis of colour `c` exists exactly when the points
/// of colour `c` span `S`, which is what is tested. Large `S` are sampled with
/// `budget` random points (fixed seed).
pub fn subspace_color(
    field: &Field,
    h: &Subspace,
    x: &LinearCode,
    y: &LinearCode,
    span: &[Vector],
    t: usize,
    budget: usize,
) -> Result<SubspaceColor> {
    same_shape(x, y)?;
    check_hyperplane(field, h, x, y)?;
    let hy = linalg::intersect(field, h, y.space())?;
    check_independent_mod(field, &hy, span)?;
    for v in span {
        if !y.space().contains_vector(field, v) {
            return Err(Error::NotSubspace("spanning vector is not in y".into()));
        }
    }
    let s = span.len();
    let n = x.n();
    let points = linalg::q_number(s, field.q());
    let coeffs: Box<dyn Iterator<Item = Vector>> = if points <= EXHAUSTIVE_POINT_LIMIT.into() {
        Box::new(ProjectivePoints::new(field, s))
    } else {
        let mut rng = StdRng::seed_from_u64(0);
        let q = field.q();
        Box::new((0..budget).filter_map(move |_| {
            let c: Vector = (0..s)
                .map(|_| FieldElem::from_raw(rng.gen_range(0..q)))
                .collect();
            c.iter().any(|x| !x.is_zero()).then_some(c)
        }))
    };
    // coefficient vectors (in S's own coordinates) grouped by colour
    let mut by_color: BTreeMap<Color, Echelon> = BTreeMap::new();
    for c in coeffs {
        let p = linalg::combine(field, &c, span, n);
        let color = color_of(field, h, &p, t);
        if color == Color::Infinity {
            continue;
        }
        by_color
            .entry(color)
            .or_insert_with(|| Echelon::new(s))
            .insert(field, &c);
    }
    Ok(by_color
        .into_iter()
        .find(|(_, ech)| ech.rank() == s)
        .map(|(c, _)| SubspaceColor::Colored(c))
        .unwrap_or(SubspaceColor::NotColorable))
}

/// Evidence for one step `X -> Z` toward `Y`.
#[derive(Clone, Debug)]
pub struct StepCertificate {
    pub z: LinearCode,
    pub hyperplane: Subspace,
    /// Position of `hyperplane` in the scan order (0 = first).
    pub hyperplane_index: usize,
    pub coset_rep: Vector,
    pub dim_x_meet_z: usize,
    pub dim_z_meet_y: usize,
    pub in_ct: bool,
    pub stats: ScanStats,
}

impl StepCertificate {
    /// Recomputes every recorded check from scratch, using subspace
    /// intersections and the coordinate-meet criterion.
    pub fn verify(&self, x: &LinearCode, y: &LinearCode, t: usize) -> bool {
        let f = x.field();
        let k = x.k();
        let Ok(meet_xy) = linalg::intersect(f, x.space(), y.space()) else {
            return false;
        };
        let d = k - meet_xy.dim();
        let mut gens = self.hyperplane.basis_vectors();
        gens.push(self.coset_rep.clone());
        let rebuilt = Subspace::span(f, x.n(), &gens).ok();
        let xz = linalg::intersect(f, x.space(), self.z.space()).map(|s| s.dim());
        let zy = linalg::intersect(f, self.z.space(), y.space()).map(|s| s.dim());
        rebuilt.as_ref() == Some(self.z.space())
            && self.hyperplane.dim() + 1 == k
            && x.space().contains(f, &self.hyperplane)
            && self.hyperplane.contains(f, &meet_xy)
            && y.space().contains_vector(f, &self.coset_rep)
            && !x.space().contains_vector(f, &self.coset_rep)
            && xz == Ok(k - 1)
            && zy == Ok(k - d + 1)
            && self.dim_x_meet_z == k - 1
            && self.dim_z_meet_y == k - d + 1
            && self.in_ct
            && self.z.is_in_ct(t, Criterion::CoordMeet) == Ok(true)
    }
}

struct StepSearch {
    meet: Subspace,
    d: usize,
    transversal: Vec<Vector>,
}

fn prepare_step(x: &LinearCode, y: &LinearCode, t: usize) -> Result<StepSearch> {
    same_shape(x, y)?;
    require_ct(x, t)?;
    require_ct(y, t)?;
    let f = x.field();
    let meet = linalg::intersect(f, x.space(), y.space())?;
    let d = x.k() - meet.dim();
    if d == 0 {
        return Err(Error::IdenticalCodes);
    }
    if d > t {
        return Err(Error::PreconditionDepth { d, t });
    }
    let transversal = linalg::complement_basis(f, y.space(), &meet)?;
    Ok(StepSearch {
        meet,
        d,
        transversal,
    })
}

/// Candidates `<H, z>` for one hyperplane `H`, with `z` running over one
/// representative per point of `Y/(X∩Y)`.
fn candidates<'a>(
    field: &'a Field,
    h: &'a Subspace,
    search: &'a StepSearch,
) -> impl Iterator<Item = (Vector, Subspace)> + 'a {
    let n = h.ambient();
    let hb = h.basis_vectors();
    ProjectivePoints::new(field, search.d).map(move |c| {
        let z = linalg::combine(field, &c, &search.transversal, n);
        let mut gens = hb.clone();
        gens.push(z.clone());
        let s = Subspace::span(field, n, &gens).expect("ambient length");
        (z, s)
    })
}

/// Finds `Z ∈ C_t(n,k)` with `dim(X∩Z) = k-1` and `dim(Z∩Y) = k-d+1`, where
/// `d = k - dim(X∩Y) <= t`. Hyperplanes of `X` through `X∩Y` are scanned in
/// order, and for each the points of `Y/(X∩Y)`.
pub fn step_toward(x: &LinearCode, y: &LinearCode, t: usize) -> Result<StepCertificate> {
    let search = prepare_step(x, y, t)?;
    search_step(x, y, t, &search)
}

fn search_step(
    x: &LinearCode,
    y: &LinearCode,
    t: usize,
    search: &StepSearch,
) -> Result<StepCertificate> {
    let f = x.field();
    let k = x.k();
    let mut stats = ScanStats::default();
    for (hi, h) in linalg::hyperplanes_containing(f, x.space(), &search.meet)?.enumerate() {
        stats.hyperplanes_tried += 1;
        for (z, zs) in candidates(f, &h, search) {
            stats.candidates_tried += 1;
            let profile = meet_profile(f, zs.basis(), t);
            stats.prelim_violations += profile.prelim_violation as u64;
            if profile.in_ct {
                let dim_x_meet_z = linalg::intersection_dim(f, x.space(), &zs);
                let dim_z_meet_y = linalg::intersection_dim(f, &zs, y.space());
                debug_assert_eq!((dim_x_meet_z, dim_z_meet_y), (k - 1, k - search.d + 1));
                return Ok(StepCertificate {
                    z: LinearCode::new(f.clone(), zs),
                    hyperplane: h.clone(),
                    hyperplane_index: hi,
                    coset_rep: z,
                    dim_x_meet_z,
                    dim_z_meet_y,
                    in_ct: true,
                    stats,
                });
            }
        }
    }
    Err(Error::NoStepFound)
}

/// Number of admissible next codes, overall and per hyperplane.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepCount {
    pub total: u64,
    pub per_hyperplane: Vec<u64>,
    pub stats: ScanStats,
}

/// Counts every `Z ∈ C_t(n,k)` with `dim(X∩Z) = k-1` and `dim(Z∩Y) = k-d+1`.
pub fn count_step_codes(x: &LinearCode, y: &LinearCode, t: usize) -> Result<StepCount> {
    let search = prepare_step(x, y, t)?;
    let f = x.field();
    let mut stats = ScanStats::default();
    let mut seen = HashSet::new();
    let mut per_hyperplane = Vec::new();
    for h in linalg::hyperplanes_containing(f, x.space(), &search.meet)? {
        stats.hyperplanes_tried += 1;
        let mut here = 0;
        for (_, zs) in candidates(f, &h, &search) {
            stats.candidates_tried += 1;
            let profile = meet_profile(f, zs.basis(), t);
            stats.prelim_violations += profile.prelim_violation as u64;
            if profile.in_ct {
                here += 1;
                seen.insert(zs);
            }
        }
        per_hyperplane.push(here);
    }
    Ok(StepCount {
        total: seen.len() as u64,
        per_hyperplane,
        stats,
    })
}

/// A hyperplane `X'` of `X` with `U ⊂ X'` and `X' ∈ C_t(n,k-1)`: the first
/// one, in scan order, that contains none of the spaces `X ∩ C_{i_1..i_t}`.
pub fn shrink(x: &LinearCode, u: &Subspace, t: usize) -> Result<LinearCode> {
    let f = x.field();
    let (n, k) = (x.n(), x.k());
    require_ct(x, t)?;
    if u.ambient() != n || !x.space().contains(f, u) {
        return Err(Error::BadU("u is not a subspace of x".into()));
    }
    if u.dim() + t >= k {
        return Err(Error::BadU(format!(
            "dim u = {} must be below k - t = {}",
            u.dim(),
            k - t
        )));
    }
    shrink_checked(x, u, t)
}

fn shrink_checked(x: &LinearCode, u: &Subspace, t: usize) -> Result<LinearCode> {
    let f = x.field();
    let n = x.n();
    let meets = Combinations::new(n, t)
        .map(|idx| {
            let c = crate::codes::CoordSubspace::from_zero_based(n, idx).to_subspace();
            linalg::intersect(f, x.space(), &c)
        })
        .collect::<Result<Vec<_>>>()?;
    for h in linalg::hyperplanes_containing(f, x.space(), u)? {
        if meets.iter().all(|m| !h.contains(f, m)) {
            let out = LinearCode::new(f.clone(), h);
            debug_assert!(out.columns_independent(t));
            return Ok(out);
        }
    }
    Err(Error::NoShrinkFound)
}

/// A path `X = Z_0, ..., Z_m = Y` inside `C_t(n,k)` with `m = k - dim(X∩Y)`.
#[derive(Clone, Debug)]
pub struct GeodesicPath {
    pub vertices: Vec<LinearCode>,
    pub stats: ScanStats,
}

impl GeodesicPath {
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.len() <= 1
    }
}

/// Builds a geodesic one adjacency at a time: a step search when the current
/// distance is at most `t`, otherwise `T = X' + Y'` with `X'` from [`shrink`]
/// and `Y'` the meet extended by the first transversal vector of `Y`.
pub fn geodesic_path(x: &LinearCode, y: &LinearCode, t: usize) -> Result<GeodesicPath> {
    same_shape(x, y)?;
    require_ct(x, t)?;
    require_ct(y, t)?;
    let f = x.field();
    let (n, k) = (x.n(), x.k());
    let mut path = vec![x.clone()];
    let mut stats = ScanStats::default();
    let fail = |path: &[LinearCode], reason: String| Error::PathFailed {
        reason,
        partial: path.iter().map(|c| c.space().clone()).collect(),
    };
    loop {
        let cur = path.last().expect("path starts at x");
        let meet = linalg::intersect(f, cur.space(), y.space())?;
        let d = k - meet.dim();
        if d == 0 {
            break;
        }
        let next = if d <= t {
            let transversal = linalg::complement_basis(f, y.space(), &meet)?;
            let search = StepSearch {
                meet,
                d,
                transversal,
            };
            match search_step(cur, y, t, &search) {
                Ok(cert) => {
                    stats.merge(&cert.stats);
                    cert.z
                }
                Err(e) => return Err(fail(&path, e.to_string())),
            }
        } else {
            let shrunk = shrink_checked(cur, &meet, t).map_err(|e| fail(&path, e.to_string()))?;
            let transversal = linalg::complement_basis(f, y.space(), &meet)?;
            let mut gens = meet.basis_vectors();
            gens.push(transversal[0].clone());
            let y_ext = Subspace::span(f, n, &gens)?;
            let tspace = linalg::sum(f, shrunk.space(), &y_ext)?;
            let next = LinearCode::new(f.clone(), tspace);
            let ok = next.k() == k
                && next.columns_independent(t)
                && linalg::intersection_dim(f, cur.space(), next.space()) == k - 1
                && linalg::intersection_dim(f, next.space(), y.space()) == k - d + 1;
            if !ok {
                return Err(fail(&path, "joined space left C_t(n,k)".into()));
            }
            next
        };
        path.push(next);
        if d == 1 {
            break;
        }
    }
    Ok(GeodesicPath {
        vertices: path,
        stats,
    })
}

/// An equivalent code opposite to the input, with its witnesses.
#[derive(Clone, Debug)]
pub struct Opposite {
    pub code: LinearCode,
    /// Maps the input code onto `code`.
    pub witness: MonomialMap,
    pub lambda: FieldElem,
    /// Brings the input to systematic form `(I_k | M)`.
    pub rho: MonomialMap,
    /// Block swap with scaling by `lambda`, applied to the systematic form.
    pub sigma: MonomialMap,
    pub systematic: LinearCode,
    pub swapped: LinearCode,
}

/// The block swap: columns `0..s` move to `k..k+s`, and columns `k..k+s` move
/// to the front scaled by `lambda`, where `s = min(k, n-k)`.
fn block_swap(n: usize, k: usize, lambda: FieldElem) -> MonomialMap {
    let s = k.min(n - k);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut scalars = vec![FieldElem::ONE; n];
    for j in 0..s {
        perm[j] = k + j;
        perm[k + j] = j;
        scalars[k + j] = lambda;
    }
    MonomialMap::new(perm, scalars).expect("block swap is a monomial map")
}

/// Finds `D ∈ C_t(n,k)` equivalent to `C` with `dim(C ∩ D) = max(2k-n, 0)`.
/// The pivot columns of the RREF generator (the lexicographically first
/// information set) are moved to the front, then the first nonzero `lambda`
/// in encoding order for which the swapped code is opposite is taken; the
/// rank condition is tested directly.
pub fn opposite_code(c: &LinearCode, t: usize) -> Result<Opposite> {
    require_ct(c, t)?;
    let f = c.field();
    let (n, k) = (c.n(), c.k());
    let pivots = c.space().pivots();
    let mut perm = vec![0; n];
    let mut next_free = k;
    for (j, slot) in perm.iter_mut().enumerate() {
        *slot = match pivots.iter().position(|&p| p == j) {
            Some(i) => i,
            None => {
                next_free += 1;
                next_free - 1
            }
        };
    }
    let rho = MonomialMap::permutation(perm)?;
    let systematic = c.apply_monomial(&rho)?;
    debug_assert!((0..k).all(|i| systematic.generator().get(i, i) == FieldElem::ONE));
    let target = (2 * k).saturating_sub(n);
    for lambda in f.all_nonzero() {
        let sigma = block_swap(n, k, lambda);
        let swapped = systematic.apply_monomial(&sigma)?;
        if linalg::intersection_dim(f, systematic.space(), swapped.space()) != target {
            continue;
        }
        let rho_inv = rho.inverse(f);
        let witness = rho.then(f, &sigma)?.then(f, &rho_inv)?;
        let code = c.apply_monomial(&witness)?;
        debug_assert_eq!(code, swapped.apply_monomial(&rho_inv)?);
        let meet = linalg::intersect(f, c.space(), code.space())?;
        assert_eq!(meet.dim(), target, "pull-back preserves the meet dimension");
        return Ok(Opposite {
            code,
            witness,
            lambda,
            rho,
            sigma,
            systematic,
            swapped,
        });
    }
    Err(Error::NoLambda(f.q()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::Criterion;

    fn gf(q: u64) -> Field {
        Field::with_order(q).unwrap()
    }

    fn v(xs: &[u32]) -> Vector {
        xs.iter().map(|&x| FieldElem::from_raw(x)).collect()
    }

    fn code(f: &Field, rows: &[&[u32]]) -> LinearCode {
        let rows: Vec<Vector> = rows.iter().map(|r| v(r)).collect();
        LinearCode::from_rows(f, rows[0].len(), &rows).unwrap()
    }

    #[test]
    fn vandermonde_examples() {
        let f = gf(5);
        let c = vandermonde_mds(&f, 4, 2, Some(&v(&[0, 1, 2, 3]))).unwrap();
        assert_eq!(c, code(&f, &[&[1, 1, 1, 1], &[0, 1, 2, 3]]));
        assert_eq!(c.t_max(), 2);
        let full = vandermonde_mds(&f, 4, 4, None).unwrap();
        assert_eq!(full.space(), &Subspace::full(4));
        assert!(full.is_mds());
        assert_eq!(
            vandermonde_mds(&gf(2), 3, 2, None).unwrap_err(),
            Error::NotEnoughPoints { n: 3, q: 2 }
        );
        assert_eq!(
            vandermonde_mds(&f, 3, 2, Some(&v(&[1, 2, 1]))).unwrap_err(),
            Error::DuplicatePoints
        );
    }

    #[test]
    fn step_at_distance_one_lands_on_target() {
        let f = gf(5);
        let x = code(&f, &[&[1, 0, 1, 1], &[0, 1, 1, 2]]);
        let y = code(&f, &[&[1, 0, 1, 1], &[0, 1, 2, 3]]);
        assert_eq!(linalg::intersection_dim(&f, x.space(), y.space()), 1);
        let cert = step_toward(&x, &y, 1).unwrap();
        assert_eq!(cert.z, y);
        assert!(cert.verify(&x, &y, 1));
    }

    #[test]
    fn step_preconditions() {
        let f = gf(5);
        let x = vandermonde_mds(&f, 4, 2, None).unwrap();
        assert_eq!(step_toward(&x, &x, 1).unwrap_err(), Error::IdenticalCodes);
        let far = code(&f, &[&[1, 1, 0, 4], &[0, 1, 1, 2]]);
        assert!(far.is_in_ct(1, Criterion::ColumnsIndependent).unwrap());
        if linalg::intersection_dim(&f, x.space(), far.space()) == 0 {
            assert_eq!(
                step_toward(&x, &far, 1).unwrap_err(),
                Error::PreconditionDepth { d: 2, t: 1 }
            );
        }
        let degenerate = code(&f, &[&[1, 0, 0, 1], &[0, 1, 0, 1]]);
        assert_eq!(
            step_toward(&x, &degenerate, 1).unwrap_err(),
            Error::NotInCt { t: 1 }
        );
    }

    #[test]
    fn shrink_preconditions_and_result() {
        let f = gf(5);
        let x = vandermonde_mds(&f, 4, 3, None).unwrap();
        let xp = shrink(&x, &Subspace::zero(4), 1).unwrap();
        assert_eq!(xp.k(), 2);
        for crit in Criterion::ALL {
            assert!(xp.is_in_ct(1, crit).unwrap());
        }
        assert!(x.space().contains(&f, xp.space()));
        assert!(matches!(
            shrink(&x, &Subspace::zero(4), 3),
            Err(Error::BadU(_))
        ));
        let outside = Subspace::span(&f, 4, &[v(&[0, 0, 0, 1])]).unwrap();
        if !x.space().contains(&f, &outside) {
            assert!(matches!(shrink(&x, &outside, 1), Err(Error::BadU(_))));
        }
    }

    #[test]
    fn opposite_small_cases() {
        let f = gf(5);
        let c = vandermonde_mds(&f, 4, 2, None).unwrap();
        let op = opposite_code(&c, 2).unwrap();
        assert_eq!(linalg::intersection_dim(&f, c.space(), op.code.space()), 0);
        assert_eq!(op.code.t_max(), c.t_max());
        assert_eq!(c.apply_monomial(&op.witness).unwrap(), op.code);

        let f7 = gf(7);
        let c = vandermonde_mds(&f7, 3, 2, None).unwrap();
        let op = opposite_code(&c, 1).unwrap();
        let s = linalg::sum(&f7, c.space(), op.code.space()).unwrap();
        assert_eq!(s.dim(), 3);
        assert_eq!(linalg::intersection_dim(&f7, c.space(), op.code.space()), 1);

        let degenerate = code(&f, &[&[1, 0, 0, 1], &[0, 1, 0, 1]]);
        assert_eq!(
            opposite_code(&degenerate, 1).unwrap_err(),
            Error::NotInCt { t: 1 }
        );
    }

    #[test]
    fn psi_color_basics() {
        let f = gf(3);
        // X, Y in C_1(4,2) with X ∩ Y = 0
        let x = code(&f, &[&[1, 0, 1, 1], &[0, 1, 1, 2]]);
        let y = code(&f, &[&[1, 1, 0, 1], &[0, 1, 1, 1]]);
        assert!(x.is_in_ct(1, Criterion::DualDistance).unwrap());
        assert!(y.is_in_ct(1, Criterion::DualDistance).unwrap());
        assert_eq!(linalg::intersection_dim(&f, x.space(), y.space()), 0);
        let h = Subspace::span(&f, 4, &[v(&[1, 0, 1, 1])]).unwrap();
        // <H, p> with p = (1,1,0,1): span{(1,0,1,1),(1,1,0,1)} has a zero column?
        let p = v(&[1, 1, 0, 1]);
        let color = psi_color(&f, &h, &x, &y, &p, 1).unwrap();
        // direct computation: coordinate j with (<H,p>)_j == 0 identically
        let z = Subspace::span(&f, 4, &[v(&[1, 0, 1, 1]), p.clone()]).unwrap();
        let zero_cols: Vec<usize> = (0..4)
            .filter(|&j| z.basis().column(j).iter().all(|e| e.is_zero()))
            .collect();
        match zero_cols.first() {
            Some(&j) => assert_eq!(color, Color::Tuple(vec![j + 1])),
            None => assert_eq!(color, Color::Infinity),
        }
        assert_eq!(
            psi_color(&f, &h, &x, &y, &v(&[0, 0, 0, 0]), 1).unwrap_err(),
            Error::RepInH
        );
        let not_h = Subspace::span(&f, 4, &[v(&[0, 0, 0, 1])]).unwrap();
        assert_eq!(
            psi_color(&f, &not_h, &x, &y, &p, 1).unwrap_err(),
            Error::BadHyperplane
        );
    }

    #[test]
    fn colors_order() {
        assert!(Color::Tuple(vec![1, 4]) < Color::Tuple(vec![2, 3]));
        assert!(Color::Tuple(vec![9, 10]) < Color::Infinity);
    }
}
