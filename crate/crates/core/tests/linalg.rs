use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twistgroup_core::{Mat, Ring, SubsetIndex};

fn random_mat(ring: Ring, rows: usize, cols: usize, seed: u64) -> Mat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Mat::from_fn(ring, rows, cols, |_, _| ring.sample(&mut rng, 2))
}

fn ring(which: usize) -> Ring {
    match which {
        0 => Ring::gf_order(8),
        1 => Ring::gf_order(27),
        2 => Ring::ratfunc(2),
        _ => Ring::poly(3),
    }
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn det_is_multiplicative(seed in any::<u64>(), which in 0usize..4, n in 1usize..5) {
        let r = ring(which);
        let a = random_mat(r, n, n, seed);
        let b = random_mat(r, n, n, seed ^ 0x9e37);
        let lhs = a.try_mul(&b).unwrap().det().unwrap();
        prop_assert_eq!(lhs, a.det().unwrap().try_mul(&b.det().unwrap()).unwrap());
        prop_assert_eq!(a.transpose().det().unwrap(), a.det().unwrap());
    }

    #[test]
    fn inverse_is_two_sided(seed in any::<u64>(), which in 0usize..3, n in 1usize..6) {
        let r = ring(which);
        let a = random_mat(r, n, n, seed);
        match a.inverse() {
            Ok(inv) => {
                prop_assert!(a.try_mul(&inv).unwrap().is_identity());
                prop_assert!(inv.try_mul(&a).unwrap().is_identity());
            }
            Err(_) => prop_assert!(a.det().unwrap().is_zero()),
        }
    }

    #[test]
    fn exterior_power_is_multiplicative(seed in any::<u64>(), which in 0usize..3, k in 1usize..4) {
        let r = ring(which);
        let a = random_mat(r, 4, 4, seed);
        let b = random_mat(r, 4, 4, seed.wrapping_add(1));
        let ab = a.try_mul(&b).unwrap().exterior_power(k).unwrap();
        let prod = a.exterior_power(k).unwrap().try_mul(&b.exterior_power(k).unwrap()).unwrap();
        prop_assert_eq!(ab, prod);
    }

    #[test]
    fn ldu_reassembles(seed in any::<u64>(), which in 0usize..3, n in 1usize..6) {
        let r = ring(which);
        let a = random_mat(r, n, n, seed);
        if let Ok((l, d, u)) = a.ldu() {
            prop_assert!(d.is_diagonal());
            prop_assert!(u.is_upper_triangular());
            prop_assert!(l.transpose().is_upper_triangular());
            prop_assert_eq!(l.try_mul(&d).unwrap().try_mul(&u).unwrap(), a.clone());
        }
        if let Ok((u, d, l)) = a.udl() {
            prop_assert_eq!(u.try_mul(&d).unwrap().try_mul(&l).unwrap(), a);
        }
    }

    #[test]
    fn kernel_vectors_are_annihilated(seed in any::<u64>(), which in 0usize..2, rows in 1usize..5, cols in 1usize..7) {
        let r = ring(which);
        let a = random_mat(r, rows, cols, seed);
        let kernel = a.kernel_basis().unwrap();
        prop_assert_eq!(kernel.len() + a.rank().unwrap(), cols);
        for v in kernel {
            prop_assert!(a.apply(&v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn encoding_round_trips(seed in any::<u64>(), which in 0usize..4) {
        let r = ring(which);
        let a = random_mat(r, 3, 5, seed);
        let buf = a.encode();
        let (back, used) = Mat::decode(r, 3, 5, &buf).unwrap();
        prop_assert_eq!(used, buf.len());
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(Mat::from_json(&a.to_json()).unwrap(), a);
    }
}

#[test]
fn minors_match_subset_labels() {
    let r = Ring::gf_order(8).unwrap();
    let a = random_mat(r, 4, 4, 3);
    let rows = SubsetIndex::new(2, &[1, -2]).unwrap();
    let cols = SubsetIndex::new(2, &[2, -1]).unwrap();
    let direct = a.minor(&rows.positions(), &cols.positions()).unwrap();
    assert_eq!(a.minor_subsets(&rows, &cols).unwrap(), direct);
    assert_eq!(SubsetIndex::all(3, 2).len(), 15);
}
