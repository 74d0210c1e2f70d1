use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twistgroup_core::ree_g2::Ree;
use twistgroup_core::suzuki_c2::Suzuki;
use twistgroup_core::twisted::TwistedGroup;
use twistgroup_core::{Error, Mat, Ring};

fn random_word(group: &dyn TwistedGroup, seed: u64, len: usize) -> Mat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gens = group.full_generators().unwrap();
    let mut g = Mat::identity(group.ring(), group.dim());
    for _ in 0..len {
        g = g.try_mul(&gens[rng.gen_range(0..gens.len())]).unwrap();
    }
    g
}

fn groups() -> Vec<Box<dyn TwistedGroup>> {
    vec![
        Box::new(Suzuki::over_order(8).unwrap()),
        Box::new(Suzuki::over_order(32).unwrap()),
        Box::new(Ree::over_order(3).unwrap()),
        Box::new(Ree::over_order(27).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn products_and_inverses_stay_members(seed in any::<u64>(), which in 0usize..4) {
        let group = &groups()[which];
        let a = group.member(&random_word(group.as_ref(), seed, 8)).unwrap();
        let b = group.member(&random_word(group.as_ref(), seed ^ 1, 8)).unwrap();
        prop_assert!(group.member(a.mul(&b).unwrap().matrix()).is_ok());
        prop_assert!(group.member(a.inverse().unwrap().matrix()).is_ok());
    }

    #[test]
    fn bruhat_parts_reassemble(seed in any::<u64>(), which in 0usize..4) {
        let group = &groups()[which];
        let g = group.member(&random_word(group.as_ref(), seed, 10)).unwrap();
        let parts = group.bruhat(&g).unwrap();
        prop_assert_eq!(&parts.reassemble(&group.w0_matrix()).unwrap(), g.matrix());
        prop_assert_eq!(parts.u.matrix(), &group.xplus_matrix(&parts.u_params).unwrap());
        prop_assert_eq!(parts.v.matrix(), &group.xplus_matrix(&parts.v_params).unwrap());
        prop_assert_eq!(parts.h.matrix(), &group.h_matrix(&parts.epsilon).unwrap());
    }

    #[test]
    fn mu_twice_is_frobenius(seed in any::<u64>(), which in 0usize..4) {
        let group = &groups()[which];
        let g = random_word(group.as_ref(), seed, 6);
        let twice = group.mu_image(&group.mu_image(&g).unwrap()).unwrap();
        prop_assert_eq!(twice, g.frobenius());
    }

    #[test]
    fn perturbed_elements_are_rejected(seed in any::<u64>(), which in 0usize..4) {
        let group = &groups()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_word(group.as_ref(), seed, 6);
        let (i, j) = (rng.gen_range(0..group.dim()), rng.gen_range(0..group.dim()));
        let mut bad = g.clone();
        bad.set(i, j, bad.get(i, j).try_add(&group.ring().one()).unwrap());
        prop_assert!(group.member(&bad).is_err());
    }
}

#[test]
fn torus_candidates_member_only_on_the_twisted_diagonal() {
    for q in [8u32, 32] {
        let sz = Suzuki::over_order(q).unwrap();
        let units = sz.ring().units().unwrap();
        let mut members = 0;
        for e1 in &units {
            for e2 in &units {
                let ok = sz.member(&sz.torus_candidate(e1, e2).unwrap()).is_ok();
                assert_eq!(ok, *e2 == sz.tits().apply(e1), "Sz({q}) at ({e1}, {e2})");
                members += ok as usize;
            }
        }
        assert_eq!(members, q as usize - 1);
    }
    let ree = Ree::over_order(27).unwrap();
    let mut members = 0;
    let units = ree.ring().units().unwrap();
    for e1 in &units {
        for e2 in &units {
            members += ree.member(&ree.torus_candidate(e1, e2).unwrap()).is_ok() as usize;
        }
    }
    assert_eq!(members, 26);
}

#[test]
fn wrong_characteristic_is_refused() {
    assert!(Suzuki::over_order(27).is_err());
    assert!(Ree::over_order(8).is_err());
    assert!(Suzuki::new(Ring::gf_order(4).unwrap()).is_err());
}

#[test]
fn membership_failure_names_an_entry() {
    let sz = Suzuki::over_order(8).unwrap();
    let r = sz.ring();
    let g = Mat::diag(r, &[r.one(), r.one(), r.generator(), r.one()]);
    assert!(matches!(sz.member(&g), Err(Error::NotMember { .. }) | Err(Error::NotSymplectic(_))));
}
