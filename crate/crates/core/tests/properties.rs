mod common;

use common::*;
use gweave_core::induced::{induced_vectors, universal_bounds_vectors};
use gweave_core::weaving::{self, universal_bounds_exhaustive, universal_bounds_search, weave};
use gweave_core::{GFrame, Matrix, Scalar, SubspaceFrameSpec, WeavingSelection, DEFAULT_TOL};
use proptest::prelude::*;

const CAP: usize = 20;

fn pair(seed: u64, d: usize, n: usize) -> (GFrame, GFrame) {
    let mut g = rng(seed);
    let f = random_gframe(&mut g, d, n, 1, 3);
    let h = random_gframe(&mut g, d, n, 1, 3);
    (f, h)
}

fn dims() -> impl Strategy<Value = (u64, usize, usize)> {
    (any::<u64>(), 1usize..5).prop_flat_map(|(s, d)| (Just(s), Just(d), d.max(2)..7))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn energy_identity((seed, d, n) in dims()) {
        let mut g = rng(seed);
        let f = random_gframe(&mut g, d, n, 0, 3);
        let h: Vec<Scalar> = (0..d).map(|_| complex(&mut g)).collect();
        let s = f.frame_operator_matrix();
        let sh = s.mul_vec(&h).unwrap();
        let quad: Scalar = h.iter().zip(&sh).map(|(a, b)| a.conj() * b).sum();
        let e = f.energy(&h).unwrap();
        prop_assert!((e - quad.re).abs() < 1e-12 * (1.0 + e));
        let b = f.optimal_bounds(DEFAULT_TOL).unwrap();
        let hn: f64 = h.iter().map(|z| z.norm_sqr()).sum();
        prop_assert!(e >= b.lower * hn - 1e-10 && e <= b.upper * hn + 1e-10);
    }

    #[test]
    fn canonical_dual_is_dual_and_symmetric((seed, d, n) in dims()) {
        let f = random_gframe(&mut rng(seed), d, n, 1, 3);
        let dual = f.canonical_dual().unwrap();
        prop_assert!(f.is_dual_pair(&dual, 1e-8).unwrap().is_dual);
        prop_assert!(dual.is_dual_pair(&f, 1e-8).unwrap().is_dual);
        let back = dual.canonical_dual().unwrap();
        for (a, b) in back.blocks().iter().zip(f.blocks()) {
            prop_assert!((a - b).frobenius_norm() < 1e-8);
        }
        // dual bounds invert
        let bf = f.optimal_bounds(DEFAULT_TOL).unwrap();
        let bd = dual.optimal_bounds(DEFAULT_TOL).unwrap();
        prop_assert!((bd.lower - 1.0 / bf.upper).abs() < 1e-8 * bd.upper.max(1.0));
        prop_assert!((bd.upper - 1.0 / bf.lower).abs() < 1e-8 * bd.upper.max(1.0));
    }

    #[test]
    fn unitary_invariance((seed, d, n) in dims()) {
        let f = random_gframe(&mut rng(seed), d, n, 1, 3);
        let u = gweave_core::papersuite::random_unitary(d, seed ^ 0xa5a5);
        let fu = f.compose_right(&u).unwrap();
        let (b0, b1) = (f.optimal_bounds(DEFAULT_TOL).unwrap(), fu.optimal_bounds(DEFAULT_TOL).unwrap());
        prop_assert!((b0.lower - b1.lower).abs() < 1e-9 * b0.upper && (b0.upper - b1.upper).abs() < 1e-9 * b0.upper);
        let c0 = f.classify(DEFAULT_TOL).unwrap();
        let c1 = fu.classify(DEFAULT_TOL).unwrap();
        prop_assert_eq!((c0.is_g_exact, c0.is_g_riesz, c0.is_g_onb), (c1.is_g_exact, c1.is_g_riesz, c1.is_g_onb));
    }

    #[test]
    fn complementary_weavings_sum((seed, d, n) in dims(), mask in any::<u64>()) {
        let (f, g) = pair(seed, d, n);
        let sigma = WeavingSelection::new(n, mask & ((1 << n) - 1)).unwrap();
        let a = weave(&f, &g, &sigma).unwrap().frame_operator_matrix();
        let b = weave(&g, &f, &sigma).unwrap().frame_operator_matrix();
        let total = &f.frame_operator_matrix() + &g.frame_operator_matrix();
        prop_assert!((&(&a + &b) - &total).frobenius_norm() < 1e-12 * total.frobenius_norm());
        let c = weave(&g, &f, &sigma.complement()).unwrap().frame_operator_matrix();
        prop_assert!((&a - &c).frobenius_norm() == 0.0);
    }

    #[test]
    fn universal_bounds_swap_symmetric((seed, d, n) in dims()) {
        let (f, g) = pair(seed, d, n);
        let a = universal_bounds_exhaustive(&f, &g, DEFAULT_TOL, CAP).unwrap();
        let b = universal_bounds_exhaustive(&g, &f, DEFAULT_TOL, CAP).unwrap();
        prop_assert_eq!(a.lower, b.lower);
        prop_assert_eq!(a.upper, b.upper);
        prop_assert!(b.ties_truncated || b.argmin_ties.contains(&a.argmin_sigma.complement()));
        prop_assert!(b.ties_truncated || b.argmax_ties.contains(&a.argmax_sigma.complement()));
    }

    #[test]
    fn universal_matches_bisection((seed, d, n) in dims()) {
        let (f, g) = pair(seed, d, n);
        let u = universal_bounds_exhaustive(&f, &g, DEFAULT_TOL, CAP).unwrap();
        let (lo, hi) = universal_by_bisection(&f, &g);
        prop_assert!((u.lower - lo).abs() < 1e-9 && (u.upper - hi).abs() < 1e-9 * hi.max(1.0));
    }

    #[test]
    fn search_is_sound((seed, d, n) in dims(), budget in 1usize..40) {
        let (f, g) = pair(seed, d, n);
        let ex = universal_bounds_exhaustive(&f, &g, DEFAULT_TOL, CAP).unwrap();
        let s = universal_bounds_search(&f, &g, DEFAULT_TOL, budget, seed).unwrap();
        // a search only sees real weavings, so it can never beat enumeration
        prop_assert!(s.lower >= ex.lower && s.upper <= ex.upper);
        let at_min = weaving::weaving_bounds(&f, &g, &s.argmin_sigma, DEFAULT_TOL).unwrap();
        prop_assert_eq!(at_min.lower, s.lower);
        let again = universal_bounds_search(&f, &g, DEFAULT_TOL, budget, seed).unwrap();
        prop_assert_eq!(again, s);
    }

    #[test]
    fn group_weaving_matches_g_weaving((seed, d, n) in dims()) {
        let (f, g) = pair(seed, d, n);
        let sf = SubspaceFrameSpec::onb_families(&f.row_dims());
        let sg = SubspaceFrameSpec::onb_families(&g.row_dims());
        let vf = induced_vectors(&f, &sf).unwrap();
        let vg = induced_vectors(&g, &sg).unwrap();
        let a = universal_bounds_exhaustive(&f, &g, DEFAULT_TOL, CAP).unwrap();
        let b = universal_bounds_vectors(&vf, &vg, DEFAULT_TOL, CAP).unwrap();
        prop_assert!((a.lower - b.lower).abs() < 1e-12 * a.upper.max(1.0));
        prop_assert!((a.upper - b.upper).abs() < 1e-12 * a.upper.max(1.0));
    }

    #[test]
    fn parseval_transform((seed, d, n) in dims()) {
        let f = random_gframe(&mut rng(seed), d, n, 1, 3);
        let t = f.transform_sqrt_inv().unwrap();
        let r = (&t.frame_operator_matrix() - &Matrix::identity(d)).frobenius_norm();
        prop_assert!(r < 1e-9);
    }
}
