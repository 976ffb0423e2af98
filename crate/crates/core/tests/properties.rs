mod common;

use common::*;
use grassmann_codes::codes::{Criterion, Distance, MonomialMap};
use grassmann_codes::linalg::{self, Subspace};
use grassmann_codes::{Field, FieldElem};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

const SMALL_Q: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];

fn field_and_rng() -> impl Strategy<Value = (Field, StdRng)> {
    (prop::sample::select(SMALL_Q.to_vec()), any::<u64>())
        .prop_map(|(q, s)| (gf(q), StdRng::seed_from_u64(s)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms_on_random_elements(q in prop::sample::select(vec![2u64, 3, 4, 8, 9, 16, 25, 27, 49, 64, 81, 121, 256, 343, 625, 1024, 4096, 8192, 6561, 65536]), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let f = gf(q);
        let (a, b, c) = (f.elem(a % q).unwrap(), f.elem(b % q).unwrap(), f.elem(c % q).unwrap());
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), FieldElem::ZERO);
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElem::ONE);
            prop_assert_eq!(f.pow(a, q - 1), FieldElem::ONE);
        }
    }

    #[test]
    fn rref_is_idempotent_and_rank_is_transpose_invariant((f, mut rng) in field_and_rng(), r in 1usize..6, c in 1usize..7) {
        let m = random_matrix(&f, r, c, &mut rng);
        let (e, rk) = linalg::rref(&f, &m);
        let (e2, rk2) = linalg::rref(&f, &e);
        prop_assert_eq!(&e, &e2);
        prop_assert_eq!(rk, rk2);
        prop_assert_eq!(rk, linalg::rank(&f, &m.transpose()));
    }

    #[test]
    fn kernel_is_annihilated((f, mut rng) in field_and_rng(), r in 1usize..5, c in 1usize..7) {
        let m = random_matrix(&f, r, c, &mut rng);
        let ker = linalg::kernel(&f, &m);
        prop_assert_eq!(ker.dim() + linalg::rank(&f, &m), c);
        for w in ker.basis_vectors() {
            prop_assert!(m.mul_vec(&f, &w).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn grassmann_dimension_identity((f, mut rng) in field_and_rng(), n in 1usize..7, a in 0usize..7, b in 0usize..7) {
        let s1 = Subspace::row_space(&f, &random_matrix(&f, a.min(n), n, &mut rng));
        let s2 = Subspace::row_space(&f, &random_matrix(&f, b.min(n), n, &mut rng));
        let sum = linalg::sum(&f, &s1, &s2).unwrap();
        let meet = linalg::intersect(&f, &s1, &s2).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), s1.dim() + s2.dim());
        prop_assert!(s1.contains(&f, &meet) && s2.contains(&f, &meet));
        prop_assert!(sum.contains(&f, &s1) && sum.contains(&f, &s2));
        prop_assert_eq!(meet.dim(), linalg::intersection_dim(&f, &s1, &s2));
    }

    #[test]
    fn dual_of_dual_is_the_code((f, mut rng) in field_and_rng(), n in 1usize..8, k in 1usize..8) {
        let k = k.min(n);
        let c = random_code(&f, n, k, &mut rng);
        let d = c.dual();
        prop_assert_eq!(d.k(), n - k);
        prop_assert_eq!(&d.dual(), &c);
        for (x, y) in c.generator().row_vectors().iter().zip(d.generator().row_vectors().iter()) {
            prop_assert!(linalg::dot(&f, x, y).is_zero());
        }
    }

    #[test]
    fn singleton_bound_and_mds((f, mut rng) in field_and_rng(), n in 1usize..7, k in 1usize..5) {
        let k = k.min(n);
        let c = random_code(&f, n, k, &mut rng);
        if (f.q() as u64).pow(k as u32) > 1 << 14 {
            return Ok(());
        }
        let d = c.min_distance().unwrap().finite().unwrap();
        prop_assert_eq!(Some(d), brute_min_distance(&c));
        prop_assert!(d <= n - k + 1);
        prop_assert_eq!(c.is_mds(), d == n - k + 1);
    }

    #[test]
    fn membership_criteria_agree((f, mut rng) in field_and_rng(), n in 1usize..8, k in 1usize..8) {
        let k = k.min(n);
        let c = random_code(&f, n, k, &mut rng);
        for t in 1..=n {
            let by: Vec<bool> = Criterion::ALL.iter().map(|&cr| c.is_in_ct(t, cr).unwrap()).collect();
            prop_assert!(by.iter().all(|&x| x == by[0]), "t = {}: {:?}", t, by);
        }
        let tm = c.t_max();
        prop_assert!(tm <= k);
        prop_assert!(c.dual_min_distance().unwrap().at_least(tm + 1));
        if tm < k {
            prop_assert_eq!(c.dual_min_distance().unwrap(), Distance::Finite(tm + 1));
        }
    }

    #[test]
    fn monomial_maps_preserve_class((f, mut rng) in field_and_rng(), n in 1usize..8, k in 1usize..8) {
        let k = k.min(n);
        let c = random_code(&f, n, k, &mut rng);
        let m = MonomialMap::random(&f, n, &mut rng);
        let image = c.apply_monomial(&m).unwrap();
        prop_assert_eq!(image.t_max(), c.t_max());
        prop_assert_eq!(image.dual_min_distance().unwrap(), c.dual_min_distance().unwrap());
        prop_assert_eq!(&image.apply_monomial(&m.inverse(&f)).unwrap(), &c);
        let m2 = MonomialMap::random(&f, n, &mut rng);
        let composed = m.then(&f, &m2).unwrap();
        prop_assert_eq!(c.apply_monomial(&composed).unwrap(), image.apply_monomial(&m2).unwrap());
    }

    #[test]
    fn hyperplanes_through_a_subspace((f, mut rng) in prop::sample::select(vec![2u64, 3, 4, 5]).prop_flat_map(|q| (Just(gf(q)), any::<u64>().prop_map(StdRng::seed_from_u64))), n in 2usize..6, k in 1usize..5, u in 0usize..4) {
        let k = k.min(n);
        let x = random_code(&f, n, k, &mut rng);
        let basis = x.generator().row_vectors();
        let ud = u.min(k - 1);
        let us = Subspace::span(&f, n, &basis[..ud]).unwrap();
        let hs: Vec<Subspace> = linalg::hyperplanes_containing(&f, x.space(), &us).unwrap().collect();
        prop_assert_eq!(hs.len() as u64, q_int((k - ud) as u32, f.q() as u64));
        for h in &hs {
            prop_assert_eq!(h.dim() + 1, k);
            prop_assert!(x.space().contains(&f, h) && h.contains(&f, &us));
        }
        let distinct: std::collections::HashSet<_> = hs.iter().collect();
        prop_assert_eq!(distinct.len(), hs.len());
    }
}
