mod common;

use std::collections::HashSet;
use std::sync::Arc;

use common::*;
use grassmann_codes::codes::{Criterion, MonomialMap};
use grassmann_codes::construct::{self, Color, SubspaceColor};
use grassmann_codes::grassmann::{self, GrassmannGraph};
use grassmann_codes::linalg::{self, Subspace};
use grassmann_codes::{Error, LinearCode};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn codes(q: u64, n: usize, k: usize) -> (grassmann_codes::Field, Arc<grassmann::SubspaceIndex>) {
    let f = gf(q);
    let ix = grassmann::enumerate_subspaces(&f, n, k, 1 << 20).unwrap();
    (f, Arc::new(ix))
}

fn code(f: &grassmann_codes::Field, s: &Subspace) -> LinearCode {
    LinearCode::new(f.clone(), s.clone())
}

#[test]
fn subspace_counts_match_product_formula() {
    for q in [2u64, 3] {
        for n in 1..=5 {
            for k in 0..=n {
                let (_, ix) = codes(q, n, k);
                assert_eq!(
                    ix.len() as u128,
                    gaussian_count(n as u32, k as u32, q as u128),
                    "q={q} n={n} k={k}"
                );
                let distinct: HashSet<_> = ix.subspaces().iter().collect();
                assert_eq!(distinct.len(), ix.len());
            }
        }
    }
}

#[test]
fn classification_matches_brute_force() {
    for q in [2u64, 3] {
        for n in 1..=4 {
            for k in 1..=n {
                let (_, ix) = codes(q, n, k);
                let f = ix.field().clone();
                for s in ix.subspaces() {
                    let c = code(&f, s);
                    let dd = brute_dual_distance(&c);
                    assert_eq!(c.dual_min_distance().unwrap().finite(), dd);
                    for t in 1..=n {
                        let want = dd.is_none_or(|d| d > t) && t <= k;
                        assert_eq!(brute_columns_independent(&c, t), want, "{s:?} t={t}");
                        for cr in Criterion::ALL {
                            assert_eq!(c.is_in_ct(t, cr).unwrap(), want, "{s:?} t={t} {cr:?}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn grassmann_metric_identity() {
    for (q, n, k) in [(2, 4, 2), (2, 5, 2), (3, 4, 2), (2, 5, 3)] {
        let (f, ix) = codes(q, n, k);
        let g = GrassmannGraph::gamma(ix.clone(), 1 << 13);
        for s in (0..g.vertex_count() as u32).step_by(7) {
            let dist = grassmann::bfs_distances(&g, s).unwrap();
            for (y, d) in dist.iter().enumerate() {
                let want = k - linalg::intersection_dim(&f, g.subspace(s), g.subspace(y as u32));
                assert_eq!(d.unwrap() as usize, want);
            }
        }
        let conn = grassmann::diameter_and_connectivity(&g);
        assert_eq!(conn.diameter, Some(k.min(n - k) as u32));
    }
}

#[test]
fn neighbor_constructions_agree() {
    for (q, n, k, t) in [(3, 4, 2, 1), (4, 4, 2, 2), (2, 5, 3, 1)] {
        let (_, ix) = codes(q, n, k);
        let g = grassmann::build_delta(ix, t, 0).unwrap();
        for v in 0..g.vertex_count() as u32 {
            let mut a = g.scan_neighbors(v);
            let mut b = g.pairwise_neighbors(v);
            a.sort_unstable();
            b.sort_unstable();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn delta_distances_dominate_grassmann_distances_and_are_monomial_invariant() {
    let (f, ix) = codes(3, 4, 2);
    let g = grassmann::build_delta(ix.clone(), 1, 1 << 13).unwrap();
    let all: Vec<Vec<Option<u32>>> = (0..g.vertex_count() as u32)
        .map(|s| grassmann::bfs_distances(&g, s).unwrap())
        .collect();
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..20 {
        let m = MonomialMap::random(&f, 4, &mut rng);
        let image: Vec<u32> = (0..g.vertex_count() as u32)
            .map(|v| {
                g.vertex_of(&m.apply_subspace(&f, g.subspace(v)).unwrap())
                    .expect("class is monomial invariant")
            })
            .collect();
        for x in 0..g.vertex_count() {
            for y in 0..g.vertex_count() {
                assert_eq!(all[x][y], all[image[x] as usize][image[y] as usize]);
                if let Some(d) = all[x][y] {
                    let dg = 2 - linalg::intersection_dim(
                        &f,
                        g.subspace(x as u32),
                        g.subspace(y as u32),
                    );
                    assert!(d as usize >= dg);
                }
            }
        }
    }
}

/// Counts admissible next codes by scanning every code of the class.
fn oracle_step_count(g: &GrassmannGraph, x: &Subspace, y: &Subspace, k: usize, d: usize) -> u64 {
    let f = g.index().field();
    (0..g.vertex_count() as u32)
        .map(|v| g.subspace(v))
        .filter(|z| {
            linalg::intersection_dim(f, x, z) == k - 1
                && linalg::intersection_dim(f, z, y) == k - d + 1
        })
        .count() as u64
}

#[test]
fn step_counts_match_full_scan_and_bound() {
    for (q, n, k, t) in [(5u64, 4, 2, 1), (7, 4, 2, 2), (4, 3, 2, 1), (5, 4, 3, 1)] {
        let (f, ix) = codes(q, n, k);
        let g = grassmann::build_delta(ix, t, 1 << 13).unwrap();
        let mut checked = 0;
        for xv in (0..g.vertex_count() as u32).step_by(11) {
            for yv in (0..g.vertex_count() as u32).step_by(5) {
                let (x, y) = (g.subspace(xv), g.subspace(yv));
                let d = k - linalg::intersection_dim(&f, x, y);
                if d == 0 || d > t {
                    continue;
                }
                let (cx, cy) = (code(&f, x), code(&f, y));
                let count = construct::count_step_codes(&cx, &cy, t).unwrap();
                assert_eq!(count.total, oracle_step_count(&g, x, y, k, d));
                assert!(count.total >= q_int(d as u32, q));
                assert_eq!(count.stats.prelim_violations, 0);
                assert!(count.per_hyperplane.iter().all(|&c| c > 0));
                let cert = construct::step_toward(&cx, &cy, t).unwrap();
                assert_eq!(cert.hyperplane_index, 0);
                assert!(cert.verify(&cx, &cy, t));
                if d == 1 {
                    assert_eq!(cert.z, cy);
                }
                checked += 1;
            }
        }
        assert!(checked > 0, "q={q} n={n} k={k} t={t}");
    }
}

#[test]
fn step_with_t2_over_gf5_from_vandermonde_pair() {
    let f = gf(5);
    let x = construct::vandermonde_mds(&f, 4, 2, None).unwrap();
    let y = construct::vandermonde_mds(&f, 4, 2, Some(&v(&[1, 2, 3, 4]))).unwrap();
    let op = construct::opposite_code(&x, 2).unwrap();
    for target in [y, op.code] {
        if linalg::intersection_dim(&f, x.space(), target.space()) != 0 {
            continue;
        }
        let cert = construct::step_toward(&x, &target, 2).unwrap();
        assert_eq!((cert.dim_x_meet_z, cert.dim_z_meet_y), (1, 1));
        assert!(cert.verify(&x, &target, 2));
        assert_eq!(
            grassmann::grassmann_distance(&f, cert.z.space(), target.space()).unwrap(),
            1
        );
        let count = construct::count_step_codes(&x, &target, 2).unwrap();
        assert!(count.total >= 6, "{count:?}");
    }
}

#[test]
fn paths_match_bfs_distances() {
    for (q, n, k, t) in [(5u64, 4, 2, 1), (4, 4, 3, 1), (5, 4, 3, 3), (7, 4, 2, 2)] {
        let (f, ix) = codes(q, n, k);
        let g = grassmann::build_delta(ix, t, 1 << 13).unwrap();
        for s in (0..g.vertex_count() as u32).step_by(37) {
            let dist = grassmann::bfs_distances(&g, s).unwrap();
            let x = code(&f, g.subspace(s));
            for yv in (0..g.vertex_count() as u32).step_by(13) {
                let y = code(&f, g.subspace(yv));
                let p = construct::geodesic_path(&x, &y, t).unwrap();
                assert_eq!(Some(p.len() as u32), dist[yv as usize]);
                assert_eq!(p.vertices.first(), Some(&x));
                assert_eq!(p.vertices.last(), Some(&y));
                for w in p.vertices.windows(2) {
                    assert_eq!(
                        linalg::intersection_dim(&f, w[0].space(), w[1].space()),
                        k - 1
                    );
                }
                assert!(p
                    .vertices
                    .iter()
                    .all(|z| z.is_in_ct(t, Criterion::CoordMeet).unwrap()));
                assert_eq!(p.stats.prelim_violations, 0);
            }
        }
    }
}

#[test]
fn deep_path_over_gf5() {
    let f = gf(5);
    let x = construct::vandermonde_mds(&f, 4, 2, None).unwrap();
    let op = construct::opposite_code(&x, 1).unwrap();
    let p = construct::geodesic_path(&x, &op.code, 1).unwrap();
    assert_eq!(p.len(), 2);
    assert!(p.vertices[1].is_in_ct(1, Criterion::DualDistance).unwrap());
    assert_eq!(
        construct::geodesic_path(&x, &x, 1).unwrap().vertices,
        vec![x.clone()]
    );
}

#[test]
fn shrink_results_satisfy_every_criterion() {
    for (q, n, k, t) in [(5u64, 4, 3, 1), (7, 5, 4, 2), (8, 5, 3, 1), (5, 5, 4, 2)] {
        let f = gf(q);
        let x = construct::vandermonde_mds(&f, n, k, None).unwrap();
        let basis = x.generator().row_vectors();
        for ud in 0..k - t {
            let u = Subspace::span(&f, n, &basis[..ud]).unwrap();
            let xp = construct::shrink(&x, &u, t).unwrap();
            assert_eq!(xp.k(), k - 1);
            assert!(xp.space().contains(&f, &u) && x.space().contains(&f, xp.space()));
            for cr in Criterion::ALL {
                assert!(xp.is_in_ct(t, cr).unwrap());
            }
        }
    }
}

#[test]
fn opposite_codes_chain() {
    let mut rng = StdRng::seed_from_u64(3);
    for (q, n, k, t) in [
        (5u64, 4, 2, 2),
        (7, 3, 2, 1),
        (7, 5, 2, 1),
        (8, 5, 3, 2),
        (9, 6, 3, 3),
    ] {
        let f = gf(q);
        for _ in 0..10 {
            let m = MonomialMap::random(&f, n, &mut rng);
            let c = construct::vandermonde_mds(&f, n, k, None)
                .unwrap()
                .apply_monomial(&m)
                .unwrap();
            let op = construct::opposite_code(&c, t).unwrap();
            assert_eq!(op.systematic, c.apply_monomial(&op.rho).unwrap());
            assert_eq!(op.swapped, op.systematic.apply_monomial(&op.sigma).unwrap());
            assert_eq!(
                op.code,
                op.swapped.apply_monomial(&op.rho.inverse(&f)).unwrap()
            );
            assert_eq!(op.code, c.apply_monomial(&op.witness).unwrap());
            assert_eq!(
                linalg::intersection_dim(&f, c.space(), op.code.space()),
                (2 * k).saturating_sub(n)
            );
            assert!(op.code.is_in_ct(t, Criterion::DualDistance).unwrap());
        }
    }
}

#[test]
fn coloring_is_constant_on_cosets() {
    let f = gf(3);
    let (_, ix) = codes(3, 4, 2);
    let g = grassmann::build_delta(ix, 1, 1 << 13).unwrap();
    let mut seen_finite = false;
    let mut seen_infinite = false;
    for xv in 0..g.vertex_count() as u32 {
        for yv in 0..g.vertex_count() as u32 {
            let (x, y) = (code(&f, g.subspace(xv)), code(&f, g.subspace(yv)));
            let meet = linalg::intersect(&f, x.space(), y.space()).unwrap();
            if meet.dim() != 0 {
                continue;
            }
            let h = linalg::hyperplanes_containing(&f, x.space(), &meet)
                .unwrap()
                .nth(xv as usize % 4)
                .unwrap();
            let hy = linalg::intersect(&f, &h, y.space()).unwrap();
            for p in y.space().vectors(&f) {
                if h.contains_vector(&f, &p) {
                    continue;
                }
                let color = construct::psi_color(&f, &h, &x, &y, &p, 1).unwrap();
                for hp in hy.vectors(&f) {
                    let shifted: Vec<_> = p.iter().zip(&hp).map(|(&a, &b)| f.add(a, b)).collect();
                    assert_eq!(
                        construct::psi_color(&f, &h, &x, &y, &shifted, 1).unwrap(),
                        color
                    );
                }
                // oracle: the first coordinate where <H,p> vanishes identically
                let z = Subspace::span(&f, 4, &[h.basis_vectors()[0].clone(), p.clone()]).unwrap();
                let zero_col = (0..4).find(|&j| z.basis().column(j).iter().all(|e| e.is_zero()));
                match zero_col {
                    Some(j) => {
                        assert_eq!(color, Color::Tuple(vec![j + 1]));
                        seen_finite = true;
                        assert!(construct::is_monochromatic_basis(
                            &f,
                            &h,
                            &x,
                            &y,
                            std::slice::from_ref(&p),
                            1
                        )
                        .unwrap());
                    }
                    None => {
                        assert_eq!(color, Color::Infinity);
                        seen_infinite = true;
                    }
                }
            }
        }
    }
    assert!(seen_finite && seen_infinite);
}

/// For a 2-dimensional quotient: the least finite colour shared by two
/// distinct projective points, found by comparing every pair.
fn oracle_plane_color(
    f: &grassmann_codes::Field,
    h: &Subspace,
    x: &LinearCode,
    y: &LinearCode,
    t: usize,
) -> SubspaceColor {
    let hy = linalg::intersect(f, h, y.space()).unwrap();
    let span = linalg::complement_basis(f, y.space(), &hy).unwrap();
    assert_eq!(span.len(), 2);
    let reps: Vec<_> = linalg::ProjectivePoints::new(f, 2)
        .map(|c| linalg::combine(f, &c, &span, y.n()))
        .collect();
    let colors: Vec<Color> = reps
        .iter()
        .map(|p| construct::psi_color(f, h, x, y, p, t).unwrap())
        .collect();
    let mut best: Option<Color> = None;
    for i in 0..colors.len() {
        for j in i + 1..colors.len() {
            if colors[i] == colors[j]
                && colors[i] != Color::Infinity
                && best.as_ref().is_none_or(|b| colors[i] < *b)
            {
                best = Some(colors[i].clone());
            }
        }
    }
    best.map_or(SubspaceColor::NotColorable, SubspaceColor::Colored)
}

#[test]
fn plane_colors_match_pairwise_oracle() {
    let mut compared = 0;
    for (q, n, k, t) in [
        (3u64, 4, 2, 1),
        (4, 4, 2, 2),
        (3, 5, 3, 2),
        (4, 5, 3, 2),
        (5, 5, 3, 2),
    ] {
        let (f, ix) = codes(q, n, k);
        let g = grassmann::build_delta(ix, t, 1 << 13).unwrap();
        let step = (g.vertex_count() / 12).max(1);
        for xv in (0..g.vertex_count() as u32).step_by(step) {
            for yv in (0..g.vertex_count() as u32).step_by(step / 2 + 1) {
                let (x, y) = (code(&f, g.subspace(xv)), code(&f, g.subspace(yv)));
                let meet = linalg::intersect(&f, x.space(), y.space()).unwrap();
                if meet.dim() + 2 != k {
                    continue;
                }
                for h in linalg::hyperplanes_containing(&f, x.space(), &meet).unwrap() {
                    let hy = linalg::intersect(&f, &h, y.space()).unwrap();
                    let span = linalg::complement_basis(&f, y.space(), &hy).unwrap();
                    let got = construct::subspace_color(&f, &h, &x, &y, &span, t, 0).unwrap();
                    let want = oracle_plane_color(&f, &h, &x, &y, t);
                    compared += 1;
                    assert_eq!(got, want);
                }
            }
        }
    }
    assert!(compared > 100);
}

#[test]
fn single_vector_with_finite_color_is_its_own_color() {
    let f = gf(3);
    let x = code_rows(&f, &[&[1, 0, 1, 1], &[0, 1, 1, 2]]);
    let y = code_rows(&f, &[&[1, 1, 0, 1], &[0, 1, 1, 1]]);
    let meet = linalg::intersect(&f, x.space(), y.space()).unwrap();
    let mut hits = 0;
    for h in linalg::hyperplanes_containing(&f, x.space(), &meet).unwrap() {
        for p in y.space().vectors(&f) {
            if h.contains_vector(&f, &p) {
                continue;
            }
            let c = construct::psi_color(&f, &h, &x, &y, &p, 1).unwrap();
            let got =
                construct::subspace_color(&f, &h, &x, &y, std::slice::from_ref(&p), 1, 0).unwrap();
            if c == Color::Infinity {
                assert_eq!(got, SubspaceColor::NotColorable);
            } else {
                assert_eq!(got, SubspaceColor::Colored(c));
                hits += 1;
            }
        }
    }
    assert!(hits > 0);
}

#[test]
fn dependent_spanning_vectors_are_rejected() {
    let f = gf(7);
    let x = construct::vandermonde_mds(&f, 4, 2, None).unwrap();
    let y = construct::opposite_code(&x, 2).unwrap().code;
    let meet = linalg::intersect(&f, x.space(), y.space()).unwrap();
    let dependent = vec![y.generator().row_vectors()[0].clone(); 2];
    let h = linalg::hyperplanes_containing(&f, x.space(), &meet)
        .unwrap()
        .next()
        .unwrap();
    assert_eq!(
        construct::subspace_color(&f, &h, &x, &y, &dependent, 2, 10).unwrap_err(),
        Error::DependentVectors
    );
}

#[test]
fn distinct_colors_are_not_monochromatic() {
    let f = gf(3);
    let x = code_rows(&f, &[&[1, 0, 1, 1], &[0, 1, 1, 2]]);
    let y = code_rows(&f, &[&[1, 1, 0, 1], &[0, 1, 1, 1]]);
    let meet = linalg::intersect(&f, x.space(), y.space()).unwrap();
    for h in linalg::hyperplanes_containing(&f, x.space(), &meet).unwrap() {
        let pts: Vec<_> = y
            .space()
            .vectors(&f)
            .into_iter()
            .filter(|p| !h.contains_vector(&f, p))
            .collect();
        for a in &pts {
            for b in &pts {
                let (ca, cb) = (
                    construct::psi_color(&f, &h, &x, &y, a, 1).unwrap(),
                    construct::psi_color(&f, &h, &x, &y, b, 1).unwrap(),
                );
                let pair = [a.clone(), b.clone()];
                match construct::is_monochromatic_basis(&f, &h, &x, &y, &pair, 1) {
                    Ok(mono) => assert_eq!(mono, ca == cb && ca != Color::Infinity),
                    Err(e) => assert_eq!(e, Error::DependentVectors),
                }
            }
        }
    }
}

fn code_rows(f: &grassmann_codes::Field, rows: &[&[u32]]) -> LinearCode {
    let rows: Vec<_> = rows.iter().map(|r| v(r)).collect();
    LinearCode::from_rows(f, rows[0].len(), &rows).unwrap()
}

fn step_pairs(q: u64, n: usize, k: usize, t: usize) -> Vec<(LinearCode, LinearCode)> {
    let (f, ix) = codes(q, n, k);
    let g = grassmann::build_delta(ix, t, 1 << 13).unwrap();
    let mut out = Vec::new();
    for xv in 0..g.vertex_count() as u32 {
        for yv in 0..g.vertex_count() as u32 {
            let (x, y) = (code(&f, g.subspace(xv)), code(&f, g.subspace(yv)));
            let d = k - linalg::intersection_dim(&f, x.space(), y.space());
            if d >= 1 && d <= t {
                out.push((x, y));
            }
        }
    }
    out
}

#[test]
fn below_the_bound_some_hyperplanes_admit_no_step() {
    // q = 4 < C(4,2): some hyperplanes are dead ends, yet a step always exists
    let mut dead = 0;
    for (x, y) in step_pairs(4, 4, 2, 2) {
        let count = construct::count_step_codes(&x, &y, 2).unwrap();
        let cert = construct::step_toward(&x, &y, 2).unwrap();
        assert!(cert.verify(&x, &y, 2));
        let first_good = count.per_hyperplane.iter().position(|&c| c > 0).unwrap();
        assert_eq!(cert.hyperplane_index, first_good);
        dead += count.per_hyperplane.contains(&0) as usize;
    }
    assert!(dead > 0);
}

#[test]
fn below_the_bound_steps_can_fail() {
    // q = 4 < C(5,2): some pairs at distance 2 have no admissible next code
    let pairs = step_pairs(4, 5, 2, 2);
    let failing: Vec<_> = pairs
        .iter()
        .filter(|(x, y)| construct::count_step_codes(x, y, 2).unwrap().total == 0)
        .take(5)
        .collect();
    assert!(!failing.is_empty());
    for (x, y) in failing {
        assert_eq!(
            construct::step_toward(x, y, 2).unwrap_err(),
            Error::NoStepFound
        );
        assert!(matches!(
            construct::geodesic_path(x, y, 2),
            Err(Error::PathFailed { .. })
        ));
    }
}
