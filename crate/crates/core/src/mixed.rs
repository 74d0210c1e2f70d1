//! Mixed groups: long-root parameters in a subring E, short-root parameters
//! in the ambient ring F. Ambient membership is decided by factoring
//! Frobenius through θ (types B and C) or through the μ-image (type G₂).

use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::bc_isogeny::{bn_xroot, cn_xroot, random_sp_element, rho, spin_to_vector, theta, BnRoot, CnRoot};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::ree_g2::{g2_mu_image, g2_xroot, G2Root};
use crate::report::{run_samples, CheckResult};
use crate::rings::{Ring, RingElem};

/// How the subring E sits inside F.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subring {
    /// E = F.
    Whole,
    /// E = F^p, the image of Frobenius.
    PthPowers,
    /// E = the prime field.
    PrimeField,
}

/// A ring F together with a subring E ⊆ F given by a membership predicate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RingPair {
    ambient: Ring,
    sub: Subring,
}

impl RingPair {
    pub fn new(ambient: Ring, sub: Subring) -> RingPair {
        RingPair { ambient, sub }
    }

    /// E = 𝔽₂(t²) inside F = 𝔽₂(t).
    pub fn f2t2_f2t() -> RingPair {
        RingPair::new(Ring::ratfunc(2).expect("F2(t)"), Subring::PthPowers)
    }

    /// E = GF(3) inside F = GF(27).
    pub fn gf3_gf27() -> RingPair {
        RingPair::new(Ring::gf(3, 3).expect("GF(27)"), Subring::PrimeField)
    }

    pub fn parse(name: &str) -> Result<RingPair> {
        match name {
            "f2t2-f2t" => Ok(RingPair::f2t2_f2t()),
            "gf3-gf27" => Ok(RingPair::gf3_gf27()),
            other => Err(Error::Parse(format!("unknown ring pair {other:?}"))),
        }
    }

    pub fn ambient(&self) -> Ring {
        self.ambient
    }

    pub fn subring(&self) -> Subring {
        self.sub
    }

    pub fn p(&self) -> u32 {
        self.ambient.characteristic()
    }

    pub fn in_subring(&self, x: &RingElem) -> bool {
        x.ring() == self.ambient
            && match self.sub {
                Subring::Whole => true,
                Subring::PthPowers => x.p_th_root().is_ok(),
                Subring::PrimeField => x.in_prime_field(),
            }
    }

    /// Whether x^p ∈ E for the given samples.
    pub fn frobenius_lands_in_subring(&self, samples: &[RingElem]) -> bool {
        samples.iter().all(|x| self.in_subring(&x.frobenius()))
    }

    /// Maps a matrix over the prime field of F into F; matrices over F pass through.
    pub fn embed(&self, g: &Mat) -> Result<Mat> {
        if g.ring() == self.ambient {
            return Ok(g.clone());
        }
        let prime = g.ring().characteristic() == self.p() && g.ring().order() == Some(self.p());
        if !prime {
            return Err(Error::RingMismatch(self.ambient.to_string(), g.ring().to_string()));
        }
        let ambient = self.ambient;
        Ok(Mat::from_fn(ambient, g.rows(), g.cols(), |i, j| {
            ambient.from_int(g.get(i, j).prime_field_value().expect("prime field element") as i64)
        }))
    }
}

impl fmt::Display for RingPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sub {
            Subring::Whole => write!(f, "({0},{0})", self.ambient),
            Subring::PthPowers => write!(f, "({0}^{1},{0})", self.ambient, self.p()),
            Subring::PrimeField => write!(f, "(gf{},{})", self.p(), self.ambient),
        }
    }
}

/// Root systems supported by the mixed constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MixedType {
    B(usize),
    C(usize),
    G2,
}

fn check_long(pair: &RingPair, x: &RingElem, slot: &str) -> Result<()> {
    if pair.in_subring(x) {
        Ok(())
    } else {
        Err(Error::ParamNotInSubring { param: x.to_string(), slot: slot.to_string() })
    }
}

fn check_ambient(pair: &RingPair, x: &RingElem) -> Result<()> {
    if x.ring() == pair.ambient {
        Ok(())
    } else {
        Err(Error::RingMismatch(pair.ambient.to_string(), x.ring().to_string()))
    }
}

/// x_γ(ξ) for every root γ, with ξ from `long_params` on long roots and from
/// `short_params` on short roots.
pub fn mixed_elementary_gens(
    ty: MixedType,
    pair: &RingPair,
    long_params: &[RingElem],
    short_params: &[RingElem],
) -> Result<Vec<Mat>> {
    for x in long_params.iter().chain(short_params) {
        check_ambient(pair, x)?;
    }
    let mut gens = Vec::new();
    match ty {
        MixedType::B(n) => {
            for root in BnRoot::all(n) {
                let (params, long) = if root.is_long() { (long_params, true) } else { (short_params, false) };
                for x in params {
                    if long {
                        check_long(pair, x, &format!("{root:?}"))?;
                    }
                    gens.push(bn_xroot(n, root, x)?);
                }
            }
        }
        MixedType::C(n) => {
            for root in CnRoot::all(n) {
                let long = matches!(root, CnRoot::Long(_));
                for x in if long { long_params } else { short_params } {
                    if long {
                        check_long(pair, x, &format!("{root:?}"))?;
                    }
                    gens.push(cn_xroot(n, root, x)?);
                }
            }
        }
        MixedType::G2 => {
            for root in G2Root::ALL {
                for x in if root.is_long() { long_params } else { short_params } {
                    if root.is_long() {
                        check_long(pair, x, root.name())?;
                    }
                    gens.push(g2_xroot(root, x));
                }
            }
        }
    }
    Ok(gens)
}

/// Verdict of an ambient mixed-group membership test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MixedMembership {
    pub member: bool,
    /// The preimage h with image g, for members.
    #[serde(skip)]
    pub preimage: Option<Mat>,
    /// Why g was rejected, for non-members.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl MixedMembership {
    fn member(h: Mat) -> MixedMembership {
        MixedMembership { member: true, preimage: Some(h), witness: None }
    }

    fn rejected(witness: impl Into<String>) -> MixedMembership {
        MixedMembership { member: false, preimage: None, witness: Some(witness.into()) }
    }
}

fn p_th_root_matrix(m: &Mat) -> std::result::Result<Mat, String> {
    let mut out = m.clone();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let r =
                m.get(i, j).p_th_root().map_err(|_| format!("entry ({i},{j}) = {} has no p-th root", m.get(i, j)))?;
            out.set(i, j, r);
        }
    }
    Ok(out)
}

fn entries_in_subring(pair: &RingPair, g: &Mat) -> Option<String> {
    (0..g.rows())
        .flat_map(|i| (0..g.cols()).map(move |j| (i, j)))
        .find(|&(i, j)| !pair.in_subring(g.get(i, j)))
        .map(|(i, j)| format!("entry ({i},{j}) = {} is outside the subring", g.get(i, j)))
}

fn verdict(result: Result<MixedMembership>) -> Result<MixedMembership> {
    match result {
        Err(
            e @ (Error::NotOrthogonal(_)
            | Error::NotSymplectic(_)
            | Error::NotInSCliff(_)
            | Error::NotInLieAlgebra
            | Error::NotAPthPower { .. }
            | Error::Singular),
        ) => Ok(MixedMembership::rejected(e.to_string())),
        other => other,
    }
}

/// g ∈ θ(Sp(2n, F)), the B-type mixed group with long parameters in F²:
/// h is the entrywise square root of ρ(g), and θ(h) must give g back.
pub fn mixed_member_bc(g: &Mat, pair: &RingPair) -> Result<MixedMembership> {
    if pair.p() != 2 {
        return Err(Error::WrongCharacteristic { expected: 2, found: pair.p() });
    }
    let g = pair.embed(g)?;
    verdict((|| {
        let image = rho(&g)?;
        let h = match p_th_root_matrix(&image) {
            Ok(h) => h,
            Err(w) => return Ok(MixedMembership::rejected(format!("ρ(g): {w}"))),
        };
        let back = spin_to_vector(&theta(&h)?)?;
        Ok(if back == g {
            MixedMembership::member(h)
        } else {
            MixedMembership::rejected("θ of the square root of ρ(g) differs from g")
        })
    })())
}

/// g ∈ ρ(G(Bₙ, F)), the C-type mixed group with long parameters in F².
pub fn mixed_member_c(g: &Mat, pair: &RingPair) -> Result<MixedMembership> {
    if pair.p() != 2 {
        return Err(Error::WrongCharacteristic { expected: 2, found: pair.p() });
    }
    let g = pair.embed(g)?;
    verdict((|| {
        let image = spin_to_vector(&theta(&g)?)?;
        let h = match p_th_root_matrix(&image) {
            Ok(h) => h,
            Err(w) => return Ok(MixedMembership::rejected(format!("θ(g): {w}"))),
        };
        Ok(if rho(&h)? == g {
            MixedMembership::member(h)
        } else {
            MixedMembership::rejected("ρ of the square root of θ(g) differs from g")
        })
    })())
}

/// g ∈ ϑ(G(G₂, F)): h is the entrywise cube root of g_μ, and h_μ must be g.
pub fn mixed_member_g2(g: &Mat, pair: &RingPair) -> Result<MixedMembership> {
    if pair.p() != 3 {
        return Err(Error::WrongCharacteristic { expected: 3, found: pair.p() });
    }
    let g = pair.embed(g)?;
    verdict((|| {
        let h = match p_th_root_matrix(&g2_mu_image(&g)?) {
            Ok(h) => h,
            Err(w) => return Ok(MixedMembership::rejected(format!("g_μ: {w}"))),
        };
        Ok(if g2_mu_image(&h)? == g {
            MixedMembership::member(h)
        } else {
            MixedMembership::rejected("μ-image of the cube root of g_μ differs from g")
        })
    })())
}

/// Membership in the ambient mixed group matching `ty`.
pub fn mixed_member(ty: MixedType, g: &Mat, pair: &RingPair) -> Result<MixedMembership> {
    match ty {
        MixedType::B(_) => mixed_member_bc(g, pair),
        MixedType::C(_) => mixed_member_c(g, pair),
        MixedType::G2 => mixed_member_g2(g, pair),
    }
}

/// Entries of g lying outside E, if any.
pub fn subring_violation(pair: &RingPair, g: &Mat) -> Option<String> {
    entries_in_subring(pair, g)
}

fn long_sample(pair: &RingPair, rng: &mut ChaCha8Rng) -> RingElem {
    let x = pair.ambient.sample(rng, 2);
    match pair.sub {
        Subring::Whole => x,
        Subring::PthPowers => x.frobenius(),
        Subring::PrimeField => pair.ambient.from_int(rng.gen_range(0..pair.p() as i64)),
    }
}

fn all_members(ty: MixedType, pair: &RingPair, gens: &[Mat]) -> Result<Option<String>> {
    for (i, g) in gens.iter().enumerate() {
        if let Some(w) = mixed_member(ty, g, pair)?.witness {
            return Ok(Some(format!("generator {i}: {w}")));
        }
    }
    Ok(None)
}

fn random_word(gens: &[Mat], rng: &mut ChaCha8Rng, len: usize) -> Result<Mat> {
    let mut g = Mat::identity(gens[0].ring(), gens[0].rows());
    for _ in 0..len {
        g = g.try_mul(&gens[rng.gen_range(0..gens.len())])?;
    }
    Ok(g)
}

/// Elementary mixed generators lie in the ambient mixed groups, products of
/// members stay members, a constructed non-member is rejected, and images
/// recover their preimages.
pub fn mixed_suite(samples: usize, seed: u64) -> Result<Vec<CheckResult>> {
    let bc = RingPair::f2t2_f2t();
    let g2 = RingPair::gf3_gf27();
    let f = bc.ambient();
    let mut out = Vec::new();
    let params = |pair: &RingPair, n: usize| json!({"pair": pair.to_string(), "samples": n, "seed": seed});

    for (ty, name) in [(MixedType::B(2), "b2"), (MixedType::C(2), "c2")] {
        let label = format!("mixed.{name}_elementary_gens_member");
        out.push(run_samples(&label, params(&bc, samples), seed, samples, |rng| {
            let gens = mixed_elementary_gens(ty, &bc, &[long_sample(&bc, rng)], &[f.sample(rng, 2)])?;
            all_members(ty, &bc, &gens)
        }));
    }
    out.push(run_samples("mixed.b2_closure", params(&bc, samples), seed, samples, |rng| {
        let gens = mixed_elementary_gens(MixedType::B(2), &bc, &[long_sample(&bc, rng)], &[f.sample(rng, 1)])?;
        let x = random_word(&gens, rng, 3)?;
        let y = random_word(&gens, rng, 3)?;
        Ok(mixed_member_bc(&x.try_mul(&y)?, &bc)?.witness.map(|w| format!("product: {w}")))
    }));
    let t = f.generator();
    let outsider = bn_xroot(2, BnRoot::Long(1, 2), &t)?;
    let verdict = mixed_member_bc(&outsider, &bc)?;
    out.push(CheckResult::from_witness(
        "mixed.b2_non_member_rejected",
        json!({"pair": bc.to_string(), "element": "long root (1,2) at t"}),
        match (verdict.member, verdict.witness) {
            (false, Some(_)) => None,
            (true, _) => Some("accepted".to_string()),
            (false, None) => Some("rejected without a witness".to_string()),
        },
    ));
    out.push(run_samples("mixed.b2_round_trip", params(&bc, samples), seed, samples, |rng| {
        let h = random_sp_element(2, f, rng, 3)?;
        let v = mixed_member_bc(&spin_to_vector(&theta(&h)?)?, &bc)?;
        Ok(match v.preimage {
            Some(p) if p == h => None,
            Some(_) => Some("recovered a different preimage".into()),
            None => Some(v.witness.unwrap_or_default()),
        })
    }));

    let e = g2.ambient();
    out.push(run_samples("mixed.g2_elementary_gens_member", params(&g2, samples), seed, samples, |rng| {
        let gens = mixed_elementary_gens(MixedType::G2, &g2, &[long_sample(&g2, rng)], &[e.sample(rng, 0)])?;
        all_members(MixedType::G2, &g2, &gens)
    }));
    out.push(run_samples("mixed.g2_round_trip", params(&g2, samples), seed, samples, |rng| {
        let mut h = Mat::identity(e, 7);
        for _ in 0..4 {
            h = h.try_mul(&g2_xroot(G2Root::ALL[rng.gen_range(0..12)], &e.sample(rng, 0)))?;
        }
        let v = mixed_member_g2(&g2_mu_image(&h)?, &g2)?;
        Ok(match v.preimage {
            Some(p) if p == h => None,
            Some(_) => Some("recovered a different preimage".into()),
            None => Some(v.witness.unwrap_or_default()),
        })
    }));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_member() {
        let bc = RingPair::f2t2_f2t();
        let v = mixed_member_bc(&Mat::identity(bc.ambient(), 5), &bc).unwrap();
        assert!(v.member);
        assert!(v.preimage.unwrap().is_identity());
        let g2 = RingPair::gf3_gf27();
        assert!(mixed_member_g2(&Mat::identity(g2.ambient(), 7), &g2).unwrap().member);
    }

    #[test]
    fn long_parameter_outside_subring() {
        let pair = RingPair::f2t2_f2t();
        let t = pair.ambient().generator();
        let err = mixed_elementary_gens(MixedType::B(2), &pair, std::slice::from_ref(&t), &[]).unwrap_err();
        assert!(matches!(err, Error::ParamNotInSubring { .. }));
        assert!(mixed_elementary_gens(MixedType::B(2), &pair, &[&t * &t], &[t]).is_ok());
    }

    #[test]
    fn bc_round_trip_and_non_member() {
        let pair = RingPair::f2t2_f2t();
        let t = pair.ambient().generator();
        let g = spin_to_vector(&theta(&cn_xroot(2, CnRoot::Long(1), &t).unwrap()).unwrap()).unwrap();
        let v = mixed_member_bc(&g, &pair).unwrap();
        assert!(v.member);
        assert_eq!(v.preimage.unwrap(), cn_xroot(2, CnRoot::Long(1), &t).unwrap());
        let bad = bn_xroot(2, BnRoot::Long(1, 2), &t).unwrap();
        let v = mixed_member_bc(&bad, &pair).unwrap();
        assert!(!v.member);
        assert!(v.witness.unwrap().contains("p-th root"));
    }

    #[test]
    fn g2_prime_field_generator() {
        let pair = RingPair::gf3_gf27();
        let gf3 = Ring::gf(3, 1).unwrap();
        let g = g2_xroot(G2Root::B, &gf3.from_int(2));
        let v = mixed_member_g2(&g, &pair).unwrap();
        assert!(v.member);
        let h = v.preimage.unwrap();
        let c = pair.ambient().from_int(2);
        assert!(h == g2_xroot(G2Root::A, &c) || h == g2_xroot(G2Root::A, &-c));
    }

    #[test]
    fn tits_pair_condition() {
        let bc = RingPair::f2t2_f2t();
        let f = bc.ambient();
        let samples: Vec<RingElem> = (0..5).map(|k| f.generator().pow(k).unwrap() + f.one()).collect();
        assert!(bc.frobenius_lands_in_subring(&samples));
        let g2 = RingPair::gf3_gf27();
        assert!(!g2.frobenius_lands_in_subring(&[g2.ambient().generator()]));
    }
}
