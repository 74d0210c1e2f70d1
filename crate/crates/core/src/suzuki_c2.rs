//! Sp₄ in the basis e₁, e₂, e₋₂, e₋₁ and the Suzuki group ^σG(C₂, R, τ).
//!
//! The μ-image is the action on ∧²V restricted to the wedges e_A with
//! A ∩ −A = ∅; modulo ⟨e₁∧e₋₁ + e₂∧e₋₂⟩ this is the 4-dim quotient of the
//! 5-dim short-root module in characteristic 2.

use std::sync::OnceLock;

use rand::Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg::{Mat, SubsetIndex};
use crate::report::{run_samples, CheckResult};
use crate::rings::{Ring, RingElem, TitsEndo};
use crate::twisted::{calibrate_diagonal, join, rescale, TwistedElement, TwistedGroup};

pub use crate::twisted::BruhatParts;

pub type SuzukiElement = TwistedElement;

/// Roots of C₂ with α short and β long.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum C2Root {
    A,
    B,
    AB,
    A2B,
    NegA,
    NegB,
    NegAB,
    NegA2B,
}

impl C2Root {
    pub const ALL: [C2Root; 8] =
        [C2Root::A, C2Root::B, C2Root::AB, C2Root::A2B, C2Root::NegA, C2Root::NegB, C2Root::NegAB, C2Root::NegA2B];

    pub fn is_positive(self) -> bool {
        matches!(self, C2Root::A | C2Root::B | C2Root::AB | C2Root::A2B)
    }

    pub fn negate(self) -> C2Root {
        use C2Root::*;
        match self {
            A => NegA,
            B => NegB,
            AB => NegAB,
            A2B => NegA2B,
            NegA => A,
            NegB => B,
            NegAB => AB,
            NegA2B => A2B,
        }
    }

    pub fn is_long(self) -> bool {
        use C2Root::*;
        matches!(self, B | A2B | NegB | NegA2B)
    }

    pub fn height(self) -> i32 {
        use C2Root::*;
        match self {
            A | B => 1,
            AB => 2,
            A2B => 3,
            _ => -self.negate().height(),
        }
    }

    /// Diagram symmetry: α ↔ β, α+β ↔ 2α+β.
    pub fn sigma(self) -> C2Root {
        use C2Root::*;
        match self {
            A => B,
            B => A,
            AB => A2B,
            A2B => AB,
            _ => self.negate().sigma().negate(),
        }
    }

    pub fn name(self) -> &'static str {
        use C2Root::*;
        match self {
            A => "a",
            B => "b",
            AB => "a+b",
            A2B => "2a+b",
            NegA => "-a",
            NegB => "-b",
            NegAB => "-a-b",
            NegA2B => "-2a-b",
        }
    }

    /// Nonzero entries (row, col, coefficient) of the ℤ-form root vector.
    fn pattern(self) -> Vec<(usize, usize, i64)> {
        use C2Root::*;
        match self {
            A => vec![(0, 1, 1), (2, 3, -1)],
            B => vec![(1, 2, 1)],
            AB => vec![(0, 2, 1), (1, 3, 1)],
            A2B => vec![(0, 3, 1)],
            _ => self.negate().pattern().into_iter().map(|(i, j, c)| (j, i, c)).collect(),
        }
    }
}

/// x_γ(ξ) = I + ξ·e_γ in the 4-dim representation (e_γ² = 0).
pub fn c2_xroot(root: C2Root, xi: &RingElem) -> Mat {
    let ring = xi.ring();
    let mut m = Mat::identity(ring, 4);
    for (i, j, c) in root.pattern() {
        m.set(i, j, xi * &ring.from_int(c));
    }
    m
}

/// Gram matrix of ω = e₁∧e₋₁ + e₂∧e₋₂.
pub fn symplectic_gram(ring: Ring) -> Mat {
    Mat::from_ints(ring, 4, 4, &[0, 0, 0, 1, 0, 0, 1, 0, 0, -1, 0, 0, -1, 0, 0, 0])
}

pub fn is_symplectic(g: &Mat) -> bool {
    if g.rows() != 4 || g.cols() != 4 {
        return false;
    }
    let omega = symplectic_gram(g.ring());
    g.transpose().try_mul(&omega).and_then(|x| x.try_mul(g)).is_ok_and(|x| x == omega)
}

fn check_char2(ring: Ring) -> Result<()> {
    match ring.characteristic() {
        2 => Ok(()),
        found => Err(Error::WrongCharacteristic { expected: 2, found }),
    }
}

/// Action on ∧²V in the basis e_A, A ∈ {{1,2},{1,−2},{2,−1},{−2,−1}}.
fn wedge_action(g: &Mat) -> Result<Mat> {
    let subsets = SubsetIndex::spin_subsets(2);
    let mut m = Mat::zeros(g.ring(), 4, 4);
    for (r, b) in subsets.iter().enumerate() {
        for (c, a) in subsets.iter().enumerate() {
            m.set(r, c, g.minor_subsets(b, a)?);
        }
    }
    Ok(m)
}

/// Basis scaling, as integers, fixed by x_α(1) ↦ x_β(1) and x_β(1) ↦ x_α(1).
fn calibration() -> &'static [i64] {
    static CAL: OnceLock<Vec<i64>> = OnceLock::new();
    CAL.get_or_init(|| {
        let r = Ring::gf(2, 1).expect("GF(2)");
        let one = r.one();
        let pairs: Vec<(Mat, Mat)> = [C2Root::A, C2Root::B]
            .iter()
            .map(|&g| (wedge_action(&c2_xroot(g, &one)).expect("4x4 minors"), c2_xroot(g.sigma(), &one)))
            .collect();
        let d = calibrate_diagonal(&pairs).expect("C2 basis calibration");
        d.iter().map(|x| x.prime_field_value().expect("prime field") as i64).collect()
    })
}

/// μ-image of g ∈ Sp₄(R), char R = 2.
pub fn mu_image(g: &Mat) -> Result<Mat> {
    check_char2(g.ring())?;
    if g.rows() != 4 || g.cols() != 4 {
        return Err(Error::DimMismatch("mu_image needs a 4x4 matrix".into()));
    }
    let ring = g.ring();
    let d: Vec<RingElem> = calibration().iter().map(|&c| ring.from_int(c)).collect();
    let d_inv = d.iter().map(RingElem::inv).collect::<Result<Vec<_>>>()?;
    Ok(rescale(&wedge_action(g)?, &d, &d_inv))
}

/// The expected μ-image of x_γ(ξ): x_{σγ}(ξ) for γ long, x_{σγ}(ξ²) for γ short.
pub fn c2_mu_law(root: C2Root, xi: &RingElem) -> Mat {
    if root.is_long() {
        c2_xroot(root.sigma(), xi)
    } else {
        c2_xroot(root.sigma(), &(xi * xi))
    }
}

/// The μ-law on every root at `samples` random ξ, and μ∘μ = Frobenius on
/// `products` random products of root elements.
pub fn c2_mu_suite(ring: Ring, samples: usize, products: usize, seed: u64) -> Result<Vec<CheckResult>> {
    check_char2(ring)?;
    let params = json!({"ring": ring.to_string(), "samples": samples, "seed": seed});
    let law = run_samples("c2.mu_law", params, seed, samples, |rng| {
        let xi = ring.sample(rng, 2);
        for root in C2Root::ALL {
            let got = mu_image(&c2_xroot(root, &xi))?;
            if got != c2_mu_law(root, &xi) {
                return Ok(Some(format!("root {} at {xi}: {}", root.name(), compact(&got))));
            }
        }
        Ok(None)
    });
    let params = json!({"ring": ring.to_string(), "samples": products, "seed": seed});
    let square = run_samples("c2.mu_squared_is_frobenius", params, seed, products, |rng| {
        let mut g = Mat::identity(ring, 4);
        for _ in 0..6 {
            let root = C2Root::ALL[rng.gen_range(0..C2Root::ALL.len())];
            g = g.try_mul(&c2_xroot(root, &ring.sample(rng, 2)))?;
        }
        let twice = mu_image(&mu_image(&g)?)?;
        Ok((twice != g.frobenius()).then(|| format!("g = {}", compact(&g))))
    });
    Ok(vec![law, square])
}

/// The Suzuki group over a char-2 field or ring with a Tits endomorphism.
#[derive(Clone, Debug)]
pub struct Suzuki {
    tau: TitsEndo,
}

impl Suzuki {
    pub fn new(ring: Ring) -> Result<Suzuki> {
        check_char2(ring)?;
        Ok(Suzuki { tau: TitsEndo::new(ring)? })
    }

    pub fn over_order(q: u32) -> Result<Suzuki> {
        Suzuki::new(Ring::gf_order(q)?)
    }

    /// x₊(a, b) = x_α(a)·x_β(a^τ)·x_{α+β}(b)·x_{2α+β}(a^(τ+2) + b^τ).
    pub fn xplus_parts(&self, a: &RingElem, b: &RingElem) -> Result<Mat> {
        let t = &self.tau;
        let last = t.power(a, 2, 1)? + t.apply(b);
        let m = c2_xroot(C2Root::A, a)
            .try_mul(&c2_xroot(C2Root::B, &t.apply(a)))?
            .try_mul(&c2_xroot(C2Root::AB, b))?
            .try_mul(&c2_xroot(C2Root::A2B, &last))?;
        Ok(m)
    }

    pub fn suzuki_xplus(&self, a: &RingElem, b: &RingElem) -> Result<SuzukiElement> {
        self.xplus(&[a.clone(), b.clone()])
    }

    pub fn suzuki_xminus(&self, a: &RingElem, b: &RingElem) -> Result<SuzukiElement> {
        self.xminus(&[a.clone(), b.clone()])
    }

    pub fn suzuki_h(&self, eps: &RingElem) -> Result<SuzukiElement> {
        self.h(eps)
    }

    pub fn suzuki_w0(&self) -> Result<SuzukiElement> {
        self.w0()
    }

    pub fn suzuki_member(&self, g: &Mat) -> Result<SuzukiElement> {
        self.member(g)
    }

    pub fn suzuki_bruhat(&self, g: &SuzukiElement) -> Result<BruhatParts> {
        self.bruhat(g)
    }

    /// Candidate torus element h_α(ε₁)h_β(ε₂) = diag(ε₁, ε₂/ε₁, ε₁/ε₂, 1/ε₁).
    pub fn torus_candidate(&self, e1: &RingElem, e2: &RingElem) -> Result<Mat> {
        let ring = self.ring();
        Ok(Mat::diag(ring, &[e1.clone(), e2.try_div(e1)?, e1.try_div(e2)?, e1.inv()?]))
    }
}

impl TwistedGroup for Suzuki {
    fn tits(&self) -> &TitsEndo {
        &self.tau
    }

    fn dim(&self) -> usize {
        4
    }

    fn unipotent_params(&self) -> usize {
        2
    }

    fn mu_image(&self, g: &Mat) -> Result<Mat> {
        mu_image(g)
    }

    fn check_ambient(&self, g: &Mat) -> Result<()> {
        if g.rows() != 4 || g.cols() != 4 {
            return Err(Error::DimMismatch("Suzuki elements are 4x4".into()));
        }
        if !is_symplectic(g) {
            return Err(Error::NotSymplectic("gᵗΩg ≠ Ω".into()));
        }
        Ok(())
    }

    /// Closed form of x₊(a, b), equal to [`Suzuki::xplus_parts`].
    fn xplus_matrix(&self, params: &[RingElem]) -> Result<Mat> {
        let [a, b] = params else {
            return Err(Error::DimMismatch("x+ takes two parameters".into()));
        };
        let ring = self.ring();
        let t = &self.tau;
        let at = t.apply(a);
        let z = ring.zero();
        let o = ring.one();
        let rows = vec![
            vec![o.clone(), a.clone(), b + &(&at * a), &(&(a * b) + &t.apply(b)) + &(&(&at * a) * a)],
            vec![z.clone(), o.clone(), at.clone(), b.clone()],
            vec![z.clone(), z.clone(), o.clone(), a.clone()],
            vec![z.clone(), z.clone(), z, o],
        ];
        Mat::from_rows(ring, rows)
    }

    /// h(ε) = diag(ε, ε^(τ−1), ε^(1−τ), ε⁻¹).
    fn h_matrix(&self, eps: &RingElem) -> Result<Mat> {
        let t = &self.tau;
        Ok(Mat::diag(self.ring(), &[eps.clone(), t.power(eps, -1, 1)?, t.power(eps, 1, -1)?, eps.inv()?]))
    }

    fn w0_matrix(&self) -> Mat {
        let ring = self.ring();
        Mat::antidiag(ring, &vec![ring.one(); 4])
    }

    fn read_params(&self, u: &Mat) -> Result<Vec<RingElem>> {
        let a = u.get(0, 1).clone();
        let rest = self.xplus_matrix(&[a.clone(), self.ring().zero()])?.inverse()?.try_mul(u)?;
        Ok(vec![a, rest.get(0, 2).clone()])
    }
}

/// Names of the identities checked by [`suzuki_relation_suite`].
pub const SUZUKI_IDENTITIES: [&str; 7] = [
    "suzuki.product",
    "suzuki.torus_conjugation",
    "suzuki.commutator_h_x(0,b)",
    "suzuki.commutator_h_x(a,0)",
    "suzuki.w0h_as_conjugate",
    "suzuki.perfect_x(0,b)",
    "suzuki.perfect_x(a,*)",
];

fn compare(lhs: &Mat, rhs: &Mat, params: &[&RingElem]) -> Option<String> {
    (lhs != rhs).then(|| {
        let ps: Vec<RingElem> = params.iter().map(|&x| x.clone()).collect();
        format!("parameters ({}) give {} vs {}", join(&ps), compact(lhs), compact(rhs))
    })
}

pub(crate) fn compact(m: &Mat) -> String {
    let rows: Vec<String> =
        (0..m.rows()).map(|i| m.row(i).iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")).collect();
    format!("[{}]", rows.join("; "))
}

/// A unit different from 1, if the field has one.
fn sample_nontrivial_unit<R: Rng + ?Sized>(ring: Ring, rng: &mut R) -> Option<RingElem> {
    if ring.order() == Some(2) {
        return None;
    }
    loop {
        let e = ring.sample_unit(rng, 2);
        if !e.is_one() {
            return Some(e);
        }
    }
}

/// Evaluates each displayed relation of the Suzuki group at `samples` random
/// parameter tuples.
pub fn suzuki_relation_suite(ring: Ring, samples: usize, seed: u64) -> Result<Vec<CheckResult>> {
    let sz = Suzuki::new(ring)?;
    let t = sz.tau;
    let params = json!({"ring": ring.to_string(), "samples": samples, "seed": seed});
    let x = |a: &RingElem, b: &RingElem| sz.xplus_matrix(&[a.clone(), b.clone()]);
    let xm = |a: &RingElem, b: &RingElem| sz.xminus_matrix(&[a.clone(), b.clone()]);
    let comm = |g: &Mat, h: &Mat| Mat::commutator(g, h);
    let mut out = Vec::new();

    out.push(run_samples(SUZUKI_IDENTITIES[0], params.clone(), seed, samples, |rng| {
        let (a, b, c, d) = (ring.sample(rng, 2), ring.sample(rng, 2), ring.sample(rng, 2), ring.sample(rng, 2));
        let lhs = x(&a, &b)?.try_mul(&x(&c, &d)?)?;
        let rhs = x(&(&a + &c), &(&(&b + &d) + &(&t.apply(&a) * &c)))?;
        Ok(compare(&lhs, &rhs, &[&a, &b, &c, &d]))
    }));

    out.push(run_samples(SUZUKI_IDENTITIES[1], params.clone(), seed, samples, |rng| {
        let (a, b, e) = (ring.sample(rng, 2), ring.sample(rng, 2), ring.sample_unit(rng, 2));
        let lhs = x(&a, &b)?.conjugate_by(&sz.h_matrix(&e)?)?;
        let rhs = x(&(&t.power(&e, 2, -1)? * &a), &(&t.apply(&e) * &b))?;
        Ok(compare(&lhs, &rhs, &[&a, &b, &e]))
    }));

    out.push(run_samples(SUZUKI_IDENTITIES[2], params.clone(), seed, samples, |rng| {
        let (b, e) = (ring.sample(rng, 2), ring.sample_unit(rng, 2));
        let zero = ring.zero();
        let lhs = comm(&sz.h_matrix(&e)?, &x(&zero, &b)?)?;
        let rhs = x(&zero, &(&b + &(&t.apply(&e) * &b)))?;
        Ok(compare(&lhs, &rhs, &[&b, &e]))
    }));

    out.push(run_samples(SUZUKI_IDENTITIES[3], params.clone(), seed, samples, |rng| {
        let (a, e) = (ring.sample(rng, 2), ring.sample_unit(rng, 2));
        let zero = ring.zero();
        let one = ring.one();
        let lhs = comm(&sz.h_matrix(&e)?, &x(&a, &zero)?)?;
        let first = &a * &(&one + &t.power(&e, 2, -1)?);
        let second = &t.power(&a, 1, 1)? * &(&t.power(&e, -2, 2)? + &one);
        let rhs = x(&first, &second)?;
        Ok(compare(&lhs, &rhs, &[&a, &e]))
    }));

    out.push(run_samples(SUZUKI_IDENTITIES[4], params.clone(), seed, samples, |rng| {
        let e = ring.sample_unit(rng, 2);
        let zero = ring.zero();
        // ŵ₀·h(ε^τ) = x₋(0,ε)^{x₊(ε^(1−τ),0)} with y^x = x⁻¹·y·x
        let lhs = sz.w0_matrix().try_mul(&sz.h_matrix(&t.apply(&e))?)?;
        let conj = x(&t.power(&e, 1, -1)?, &zero)?;
        let rhs = conj.inverse()?.try_mul(&xm(&zero, &e)?)?.try_mul(&conj)?;
        Ok(compare(&lhs, &rhs, &[&e]))
    }));

    if ring.order() == Some(2) {
        for name in &SUZUKI_IDENTITIES[5..] {
            out.push(CheckResult::skipped(*name, params.clone(), "needs ε ∉ {0,1}"));
        }
        return Ok(out);
    }

    out.push(run_samples(SUZUKI_IDENTITIES[5], params.clone(), seed, samples, |rng| {
        let b = ring.sample(rng, 2);
        let e = sample_nontrivial_unit(ring, rng).expect("field larger than GF(2)");
        let zero = ring.zero();
        let denom = &t.apply(&e) + &ring.one();
        let lhs = comm(&sz.h_matrix(&e)?, &x(&zero, &b.try_div(&denom)?)?)?;
        Ok(compare(&lhs, &x(&zero, &b)?, &[&b, &e]))
    }));

    out.push(run_samples(SUZUKI_IDENTITIES[6], params, seed, samples, |rng| {
        let a = ring.sample(rng, 2);
        let e = sample_nontrivial_unit(ring, rng).expect("field larger than GF(2)");
        let zero = ring.zero();
        let denom = &t.power(&e, 2, -1)? + &ring.one();
        let lhs = comm(&sz.h_matrix(&e)?, &x(&a.try_div(&denom)?, &zero)?)?;
        let rhs = x(&a, &t.power(&a, 1, 1)?.try_div(&denom)?)?;
        Ok(compare(&lhs, &rhs, &[&a, &e]))
    }));

    Ok(out)
}
