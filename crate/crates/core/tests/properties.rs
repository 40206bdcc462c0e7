mod common;

use common::{gf, harvest, random_invertible, random_matrix, rank_by_kernel_count};
use constrank::analysis::{kernel_slice, projective_points, q_adic_valuation, rearranged_lhs};
use constrank::construct::truncated_construction;
use constrank::{gf2, Elem, Field, MatGF, SubspaceBasis};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const ORDERS: [u32; 8] = [2, 3, 4, 5, 7, 8, 9, 16];

fn field_and_elems() -> impl Strategy<Value = (Field, Elem, Elem, Elem)> {
    prop::sample::select(ORDERS.to_vec()).prop_flat_map(|q| {
        let e = 0..q as Elem;
        (Just(gf(q)), e.clone(), e.clone(), e)
    })
}

proptest! {
    #[test]
    fn field_axioms((f, a, b, c) in field_and_elems()) {
        prop_assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
        prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            prop_assert_eq!(f.pow(a, u64::from(f.q()) - 1), 1);
        }
    }

    #[test]
    fn frobenius_is_additive((f, a, b, _) in field_and_elems()) {
        let p = u64::from(f.p());
        prop_assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
        prop_assert_eq!(f.pow(a, u64::from(f.q())), a);
    }

    #[test]
    fn rank_nullity_and_transpose(q in prop::sample::select(vec![2u32, 3, 4, 5]), rows in 1usize..6, cols in 1usize..6, seed: u64) {
        let f = gf(q);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(&mut rng, &f, rows, cols);
        let kernel = a.kernel_basis();
        prop_assert_eq!(a.rank() + kernel.len(), cols);
        prop_assert_eq!(a.rank(), a.transpose().rank());
        prop_assert_eq!(a.image_basis().len(), a.rank());
        for v in &kernel {
            prop_assert!(a.mul(v).unwrap().is_zero());
        }
        if cols <= 4 {
            prop_assert_eq!(a.rank(), rank_by_kernel_count(&a));
        }
    }

    #[test]
    fn matrix_text_round_trip(q in prop::sample::select(ORDERS.to_vec()), rows in 1usize..5, cols in 1usize..5, seed: u64) {
        let f = gf(q);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(&mut rng, &f, rows, cols);
        let text = a.to_string();
        let back = MatGF::parse(&text).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn reduction_is_idempotent(q in prop::sample::select(vec![2u32, 3, 4]), k in 1usize..5, seed: u64) {
        let f = gf(q);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mats: Vec<MatGF> = (0..k).map(|_| random_matrix(&mut rng, &f, 2, 3)).collect();
        if let Ok(s) = SubspaceBasis::new(&mats) {
            let again = SubspaceBasis::new(s.basis()).unwrap();
            prop_assert_eq!(&again, &s);
            let parsed = SubspaceBasis::parse(&s.to_string()).unwrap();
            prop_assert_eq!(&parsed, &s);
            for m in &mats {
                let joined = [s.basis(), std::slice::from_ref(m)].concat();
                prop_assert_eq!(SubspaceBasis::new(&joined).unwrap().dim(), s.dim());
            }
        }
    }

    #[test]
    fn profile_is_basis_and_equivalence_invariant(q in prop::sample::select(vec![2u32, 3]), seed: u64) {
        let f = gf(q);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mats: Vec<MatGF> = (0..3).map(|_| random_matrix(&mut rng, &f, 3, 3)).collect();
        let s = SubspaceBasis::from_independent(mats.clone());
        if let Ok(s) = s {
            let profile = s.rank_profile().unwrap();
            let moved = harvest(&mut rng, &s, s.dim());
            prop_assert_eq!(moved.rank_profile().unwrap(), profile.clone());
            prop_assert_eq!(SubspaceBasis::new(&mats).unwrap().rank_profile().unwrap(), profile);
        }
    }

    #[test]
    fn slice_dimension_is_scalar_invariant(q in prop::sample::select(vec![3u32, 4, 5]), seed: u64) {
        let f = gf(q);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = truncated_construction(&f, 3, 3, 2).unwrap();
        let s = harvest(&mut rng, &s, 2);
        for u in projective_points(&f, 3) {
            let base = kernel_slice(&s, &MatGF::column(&f, &u).unwrap()).unwrap();
            prop_assert_eq!(base.r_u + base.image_dim, s.dim());
            for lambda in 2..q as Elem {
                let scaled: Vec<Elem> = u.iter().map(|&x| f.mul(lambda, x)).collect();
                let other = kernel_slice(&s, &MatGF::column(&f, &scaled).unwrap()).unwrap();
                prop_assert_eq!(other.r_u, base.r_u);
            }
        }
    }

    #[test]
    fn valuation_of_rearranged_count(q in prop::sample::select(vec![2u32, 3, 4, 5, 7, 8, 9]), n in 2u32..=10, r_seed: u32) {
        let r = 1 + r_seed % (n - 1);
        let lhs = rearranged_lhs(q, n, r);
        prop_assert_eq!(q_adic_valuation(&lhs, q), Some(n - r));
    }
}

#[test]
fn field_axioms_exhaustive_on_small_fields() {
    for q in [2, 3, 4, 5, 7, 8, 9] {
        let f = gf(q);
        for a in f.elements() {
            for b in f.elements() {
                for c in f.elements() {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
                    assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                }
            }
        }
    }
}

#[test]
fn rank_matches_transpose_exhaustively() {
    for q in [2u32, 3] {
        let f = gf(q);
        for (rows, cols) in [(2, 2), (2, 3)] {
            let len = rows * cols;
            for index in 0..(q as u64).pow(len as u32) {
                let mut rest = index;
                let entries = (0..len)
                    .map(|_| {
                        let x = (rest % u64::from(q)) as Elem;
                        rest /= u64::from(q);
                        x
                    })
                    .collect();
                let a = MatGF::from_entries(&f, rows, cols, entries).unwrap();
                assert_eq!(a.rank(), a.transpose().rank());
                assert_eq!(a.rank(), rank_by_kernel_count(&a));
            }
        }
    }
}

#[test]
fn packed_rank_matches_generic_rank() {
    let f = gf(2);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..100_000 {
        let rows = 1 + i % 8;
        let cols = 1 + (i / 8) % 8;
        let a = random_matrix(&mut rng, &f, rows, cols);
        assert_eq!(gf2::rank(a.entries(), rows, cols), a.rank_generic(), "{a}");
    }
}

#[test]
fn equivalence_keeps_constant_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for q in [2, 3, 4] {
        let f = gf(q);
        let s = truncated_construction(&f, 2, 4, 2).unwrap();
        let p = random_invertible(&mut rng, &f, 2);
        let t = random_invertible(&mut rng, &f, 4);
        assert!(s.transform(&p, &t).unwrap().is_constant_rank(2).unwrap().holds);
    }
}
