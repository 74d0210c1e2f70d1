use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twistgroup_core::{Ring, RingElem, TitsEndo};

fn rings() -> Vec<Ring> {
    vec![
        Ring::gf_order(2).unwrap(),
        Ring::gf_order(8).unwrap(),
        Ring::gf_order(27).unwrap(),
        Ring::gf_order(243).unwrap(),
        Ring::poly(2).unwrap(),
        Ring::ratfunc(2).unwrap(),
        Ring::ratfunc(3).unwrap(),
    ]
}

fn add(a: &RingElem, b: &RingElem) -> RingElem {
    a.try_add(b).unwrap()
}

fn mul(a: &RingElem, b: &RingElem) -> RingElem {
    a.try_mul(b).unwrap()
}

fn triple(ring: Ring, seed: u64) -> (RingElem, RingElem, RingElem) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (ring.sample(&mut rng, 3), ring.sample(&mut rng, 3), ring.sample(&mut rng, 3))
}

proptest! {
    #[test]
    fn ring_axioms(seed in any::<u64>(), which in 0usize..7) {
        let ring = rings()[which];
        let (a, b, c) = triple(ring, seed);
        prop_assert_eq!(add(&add(&a, &b), &c), add(&a, &add(&b, &c)));
        prop_assert_eq!(mul(&mul(&a, &b), &c), mul(&a, &mul(&b, &c)));
        prop_assert_eq!(mul(&a, &add(&b, &c)), add(&mul(&a, &b), &mul(&a, &c)));
        prop_assert_eq!(mul(&a, &b), mul(&b, &a));
        prop_assert_eq!(add(&a, &(-&a)), ring.zero());
        prop_assert_eq!(mul(&a, &ring.one()), a.clone());
        if ring.is_field() && !a.is_zero() {
            prop_assert!(mul(&a, &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn frobenius_is_additive_and_root_inverts_it(seed in any::<u64>(), which in 0usize..7) {
        let ring = rings()[which];
        let (a, b, _) = triple(ring, seed);
        prop_assert_eq!(add(&a, &b).frobenius(), add(&a.frobenius(), &b.frobenius()));
        prop_assert_eq!(a.frobenius().p_th_root().unwrap(), a.clone());
        prop_assert_eq!(a.frobenius(), a.pow(ring.characteristic() as i64).unwrap());
    }

    #[test]
    fn encoding_and_display_round_trip(seed in any::<u64>(), which in 0usize..7) {
        let ring = rings()[which];
        let (a, _, _) = triple(ring, seed);
        let mut buf = Vec::new();
        a.encode_into(&mut buf);
        let (back, used) = RingElem::decode(ring, &buf).unwrap();
        prop_assert_eq!(used, buf.len());
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(ring.parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn tits_endomorphism_squares_to_frobenius(seed in any::<u64>(), q in prop::sample::select(vec![2u32, 8, 32, 3, 27, 243])) {
        let ring = Ring::gf_order(q).unwrap();
        let tau = TitsEndo::new(ring).unwrap();
        let (a, b, _) = triple(ring, seed);
        prop_assert_eq!(tau.apply(&tau.apply(&a)), a.frobenius());
        prop_assert_eq!(tau.apply(&mul(&a, &b)), mul(&tau.apply(&a), &tau.apply(&b)));
        prop_assert_eq!(tau.apply(&add(&a, &b)), add(&tau.apply(&a), &tau.apply(&b)));
    }
}

#[test]
fn field_sizes_and_primitive_elements() {
    for q in [2u32, 4, 8, 9, 27, 32, 243] {
        let ring = Ring::gf_order(q).unwrap();
        assert_eq!(ring.elements().unwrap().len(), q as usize);
        assert_eq!(ring.units().unwrap().len(), q as usize - 1);
        let g = ring.primitive_element().unwrap();
        let powers: std::collections::HashSet<RingElem> = (0..q as i64 - 1).map(|k| g.pow(k).unwrap()).collect();
        assert_eq!(powers.len(), q as usize - 1);
    }
}

#[test]
fn tits_endomorphism_needs_odd_degree() {
    assert!(TitsEndo::new(Ring::gf_order(4).unwrap()).is_err());
    assert!(TitsEndo::new(Ring::gf_order(9).unwrap()).is_err());
}
