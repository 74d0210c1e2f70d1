use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twistgroup_core::bc_isogeny::{bn_xroot, BnRoot};
use twistgroup_core::mixed::{mixed_elementary_gens, mixed_member, MixedType, RingPair};
use twistgroup_core::{Error, Mat};

fn word(gens: &[Mat], rng: &mut ChaCha8Rng, len: usize) -> Mat {
    let mut g = Mat::identity(gens[0].ring(), gens[0].rows());
    for _ in 0..len {
        g = g.try_mul(&gens[rng.gen_range(0..gens.len())]).unwrap();
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn b2_words_are_members(seed in any::<u64>()) {
        let pair = RingPair::f2t2_f2t();
        let f = pair.ambient();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let long = f.sample(&mut rng, 2).frobenius();
        let short = f.sample(&mut rng, 2);
        let gens = mixed_elementary_gens(MixedType::B(2), &pair, &[long], &[short]).unwrap();
        let g = word(&gens, &mut rng, 5);
        let verdict = mixed_member(MixedType::B(2), &g, &pair).unwrap();
        prop_assert!(verdict.member, "{:?}", verdict.witness);
    }

    #[test]
    fn g2_words_are_members(seed in any::<u64>()) {
        let pair = RingPair::gf3_gf27();
        let e = pair.ambient();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let long = e.from_int(rng.gen_range(0..3));
        let short = e.sample(&mut rng, 0);
        let gens = mixed_elementary_gens(MixedType::G2, &pair, &[long], &[short]).unwrap();
        let g = word(&gens, &mut rng, 4);
        prop_assert!(mixed_member(MixedType::G2, &g, &pair).unwrap().member);
    }
}

#[test]
fn long_parameter_outside_the_subring_is_refused() {
    let pair = RingPair::f2t2_f2t();
    let t = pair.ambient().generator();
    let err = mixed_elementary_gens(MixedType::B(2), &pair, std::slice::from_ref(&t), &[]).unwrap_err();
    assert!(matches!(err, Error::ParamNotInSubring { .. }));
    let verdict = mixed_member(MixedType::B(2), &bn_xroot(2, BnRoot::Long(1, 2), &t).unwrap(), &pair).unwrap();
    assert!(!verdict.member);
    assert!(verdict.witness.is_some());
}

#[test]
fn pairs_parse_by_name() {
    assert_eq!(RingPair::parse("f2t2-f2t").unwrap(), RingPair::f2t2_f2t());
    assert_eq!(RingPair::parse("gf3-gf27").unwrap(), RingPair::gf3_gf27());
    assert!(RingPair::parse("gf2-gf4").is_err());
}
