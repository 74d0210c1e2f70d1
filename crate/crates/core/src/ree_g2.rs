//! G₂ in its 7-dim representation (basis e₁, e₂, e₃, e₀, e₋₃, e₋₂, e₋₁) as
//! the stabiliser of the forms B and T, and the small Ree group ^σG(G₂, R, τ).
//!
//! The μ-image is the adjoint action modulo the ideal 𝔰 spanned by the short
//! root vectors and 𝗁_α, which in characteristic 3 is a 7-dim quotient.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rand::Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg::{Mat, SpanSolver};
use crate::report::{run_samples, CheckResult};
use crate::rings::{Ring, RingElem, TitsEndo};
use crate::suzuki_c2::compact;
use crate::twisted::{calibrate_diagonal, join, rescale, TwistedElement, TwistedGroup};

pub use crate::twisted::BruhatParts;

pub type ReeElement = TwistedElement;

/// Roots of G₂ with α short and β long.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum G2Root {
    A,
    B,
    AB,
    A2B,
    A3B,
    A3B2,
    NegA,
    NegB,
    NegAB,
    NegA2B,
    NegA3B,
    NegA3B2,
}

impl G2Root {
    pub const POSITIVE: [G2Root; 6] = [G2Root::A, G2Root::B, G2Root::AB, G2Root::A2B, G2Root::A3B, G2Root::A3B2];

    pub const ALL: [G2Root; 12] = [
        G2Root::A,
        G2Root::B,
        G2Root::AB,
        G2Root::A2B,
        G2Root::A3B,
        G2Root::A3B2,
        G2Root::NegA,
        G2Root::NegB,
        G2Root::NegAB,
        G2Root::NegA2B,
        G2Root::NegA3B,
        G2Root::NegA3B2,
    ];

    pub fn is_positive(self) -> bool {
        G2Root::POSITIVE.contains(&self)
    }

    pub fn negate(self) -> G2Root {
        let i = G2Root::ALL.iter().position(|&r| r == self).expect("listed");
        G2Root::ALL[(i + 6) % 12]
    }

    pub fn is_long(self) -> bool {
        use G2Root::*;
        matches!(self, B | A3B | A3B2 | NegB | NegA3B | NegA3B2)
    }

    pub fn height(self) -> i32 {
        use G2Root::*;
        match self {
            A | B => 1,
            AB => 2,
            A2B => 3,
            A3B => 4,
            A3B2 => 5,
            _ => -self.negate().height(),
        }
    }

    /// Diagram symmetry: α ↔ β, α+β ↔ 3α+β, 2α+β ↔ 3α+2β.
    pub fn sigma(self) -> G2Root {
        use G2Root::*;
        match self {
            A => B,
            B => A,
            AB => A3B,
            A3B => AB,
            A2B => A3B2,
            A3B2 => A2B,
            _ => self.negate().sigma().negate(),
        }
    }

    pub fn name(self) -> &'static str {
        use G2Root::*;
        match self {
            A => "a",
            B => "b",
            AB => "a+b",
            A2B => "2a+b",
            A3B => "3a+b",
            A3B2 => "3a+2b",
            NegA => "-a",
            NegB => "-b",
            NegAB => "-a-b",
            NegA2B => "-2a-b",
            NegA3B => "-3a-b",
            NegA3B2 => "-3a-2b",
        }
    }
}

/// Position of a basis label in the order 1, 2, 3, 0, −3, −2, −1.
pub fn g2_position(label: i32) -> usize {
    match label {
        1 => 0,
        2 => 1,
        3 => 2,
        0 => 3,
        -3 => 4,
        -2 => 5,
        -1 => 6,
        _ => panic!("G2 basis label {label} out of range"),
    }
}

/// A 7×7 integer matrix.
pub type IntMat = [[i64; 7]; 7];

fn int_from_units(units: &[(i32, i32, i64)]) -> IntMat {
    let mut m = [[0; 7]; 7];
    for &(i, j, c) in units {
        m[g2_position(i)][g2_position(j)] += c;
    }
    m
}

fn int_mul(a: &IntMat, b: &IntMat) -> IntMat {
    let mut m = [[0; 7]; 7];
    for i in 0..7 {
        for j in 0..7 {
            m[i][j] = (0..7).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    m
}

fn int_bracket(a: &IntMat, b: &IntMat) -> IntMat {
    let ab = int_mul(a, b);
    let ba = int_mul(b, a);
    let mut m = [[0; 7]; 7];
    for i in 0..7 {
        for j in 0..7 {
            m[i][j] = ab[i][j] - ba[i][j];
        }
    }
    m
}

/// The Chevalley basis root vector 𝖾_γ over ℤ.
pub fn chevalley_root_vector(root: G2Root) -> IntMat {
    use G2Root::*;
    match root {
        A => int_from_units(&[(1, 2, 1), (3, 0, -2), (0, -3, 1), (-2, -1, -1)]),
        B => int_from_units(&[(2, 3, 1), (-3, -2, -1)]),
        AB => int_from_units(&[(1, 3, 1), (2, 0, 2), (0, -2, -1), (-3, -1, -1)]),
        A2B => int_from_units(&[(1, 0, 2), (2, -3, -1), (3, -2, 1), (0, -1, -1)]),
        A3B => int_from_units(&[(1, -3, -1), (3, -1, 1)]),
        A3B2 => int_from_units(&[(1, -2, -1), (2, -1, 1)]),
        _ => {
            // 𝖾_γ = −P·𝖾_{−γ}·P
            let pos = chevalley_root_vector(root.negate());
            let mut m = [[0; 7]; 7];
            for i in 0..7 {
                for j in 0..7 {
                    m[i][j] = -pos[6 - i][6 - j];
                }
            }
            m
        }
    }
}

/// 𝗁_α = [𝖾_α, 𝖾_{−α}].
pub fn h_alpha() -> IntMat {
    int_bracket(&chevalley_root_vector(G2Root::A), &chevalley_root_vector(G2Root::NegA))
}

/// 𝗁_β = [𝖾_β, 𝖾_{−β}].
pub fn h_beta() -> IntMat {
    int_bracket(&chevalley_root_vector(G2Root::B), &chevalley_root_vector(G2Root::NegB))
}

/// The 14 basis matrices: positive roots, negative roots, 𝗁_α, 𝗁_β.
pub fn chevalley_basis() -> Vec<IntMat> {
    let mut v: Vec<IntMat> = G2Root::ALL.iter().map(|&r| chevalley_root_vector(r)).collect();
    v.push(h_alpha());
    v.push(h_beta());
    v
}

/// Index of 𝖾_γ in [`chevalley_basis`].
pub fn basis_index(root: G2Root) -> usize {
    G2Root::ALL.iter().position(|&r| r == root).expect("listed")
}

pub const H_ALPHA_INDEX: usize = 12;
pub const H_BETA_INDEX: usize = 13;

/// Basis vectors surviving in 𝔤/𝔰, listed in the order matching e₁, e₂, e₃, e₀, e₋₃, e₋₂, e₋₁.
pub const SURVIVORS: [usize; 7] = [5, 4, 1, H_BETA_INDEX, 7, 10, 11];

/// Basis vectors spanning the ideal 𝔰.
pub const IDEAL: [usize; 7] = [0, 2, 3, 6, 8, 9, H_ALPHA_INDEX];

/// Structure constant: [𝖾_γ, 𝖾_δ] = N·𝖾_{γ+δ}, with the target root, when γ+δ is a root.
pub fn structure_constant(g: G2Root, d: G2Root) -> Option<(i64, G2Root)> {
    let br = int_bracket(&chevalley_root_vector(g), &chevalley_root_vector(d));
    if br.iter().flatten().all(|&x| x == 0) {
        return None;
    }
    for r in G2Root::ALL {
        let e = chevalley_root_vector(r);
        // find the scalar n with br = n·e
        let mut n = None;
        let mut ok = true;
        for i in 0..7 {
            for j in 0..7 {
                match (e[i][j], br[i][j]) {
                    (0, 0) => {}
                    (0, _) => ok = false,
                    (x, y) => {
                        if y % x != 0 || n.is_some_and(|n| n != y / x) {
                            ok = false;
                        }
                        n = Some(y / x);
                    }
                }
            }
        }
        if ok {
            if let Some(n) = n {
                return Some((n, r));
            }
        }
    }
    None
}

pub fn int_to_mat(ring: Ring, m: &IntMat) -> Mat {
    Mat::from_fn(ring, 7, 7, |i, j| ring.from_int(m[i][j]))
}

/// x_γ(ξ) = I + ξ𝖾_γ + ξ²·(𝖾_γ²/2), the divided power taken over ℤ.
pub fn g2_xroot(root: G2Root, xi: &RingElem) -> Mat {
    let ring = xi.ring();
    let e = chevalley_root_vector(root);
    let e2 = int_mul(&e, &e);
    let xi2 = xi * xi;
    Mat::from_fn(ring, 7, 7, |i, j| {
        debug_assert_eq!(e2[i][j] % 2, 0);
        let mut v = ring.from_int(i64::from(i == j));
        if e[i][j] != 0 {
            v = v + xi * &ring.from_int(e[i][j]);
        }
        if e2[i][j] != 0 {
            v = v + &xi2 * &ring.from_int(e2[i][j] / 2);
        }
        v
    })
}

/// Gram matrix antidiag(1,1,1,2,1,1,1) of B.
pub fn bilinear_gram(ring: Ring) -> Mat {
    Mat::antidiag(ring, &[1, 1, 1, 2, 1, 1, 1].map(|c| ring.from_int(c)))
}

/// Nonzero values T(e_a, e_b, e_c) at positions (a, b, c), all permutations included.
pub fn trilinear_support() -> &'static [(usize, usize, usize, i64)] {
    static SUPPORT: OnceLock<Vec<(usize, usize, usize, i64)>> = OnceLock::new();
    SUPPORT.get_or_init(|| {
        let base = [(0, 1, -1), (0, -2, 2), (0, -3, 3), (1, -2, -3), (-1, 3, 2)];
        let mut out = Vec::new();
        for (a, b, c) in base {
            let (a, b, c) = (g2_position(a), g2_position(b), g2_position(c));
            for (x, y, z, s) in [(a, b, c, 1), (b, c, a, 1), (c, a, b, 1), (b, a, c, -1), (a, c, b, -1), (c, b, a, -1)]
            {
                out.push((x, y, z, s));
            }
        }
        out
    })
}

/// T(u, v, w) for column vectors u, v, w.
pub fn trilinear(u: &[RingElem], v: &[RingElem], w: &[RingElem]) -> RingElem {
    let ring = u[0].ring();
    trilinear_support()
        .iter()
        .fold(ring.zero(), |acc, &(a, b, c, s)| acc + &(&(&u[a] * &v[b]) * &w[c]) * &ring.from_int(s))
}

fn column(g: &Mat, j: usize) -> Vec<RingElem> {
    (0..g.rows()).map(|i| g.get(i, j).clone()).collect()
}

/// Whether g preserves B and T; the failure names the first broken condition.
pub fn g2_forms_violation(g: &Mat) -> Option<String> {
    if g.rows() != 7 || g.cols() != 7 {
        return Some("not 7x7".into());
    }
    let ring = g.ring();
    let b = bilinear_gram(ring);
    if g.transpose().try_mul(&b).and_then(|x| x.try_mul(g)).ok()? != b {
        return Some("gᵗBg ≠ B".into());
    }
    let cols: Vec<Vec<RingElem>> = (0..7).map(|j| column(g, j)).collect();
    let id = Mat::identity(ring, 7);
    let basis: Vec<Vec<RingElem>> = (0..7).map(|j| column(&id, j)).collect();
    for i in 0..7 {
        for j in i + 1..7 {
            for k in j + 1..7 {
                let lhs = trilinear(&cols[i], &cols[j], &cols[k]);
                let rhs = trilinear(&basis[i], &basis[j], &basis[k]);
                if lhs != rhs {
                    return Some(format!("T differs on positions ({i},{j},{k}): {lhs} vs {rhs}"));
                }
            }
        }
    }
    None
}

pub fn g2_check_forms(g: &Mat) -> bool {
    g2_forms_violation(g).is_none()
}

/// Solver for coordinates against the 14 basis matrices reduced into `ring`.
fn lie_solver(ring: Ring) -> Result<Arc<SpanSolver>> {
    static CACHE: OnceLock<Mutex<HashMap<Ring, Arc<SpanSolver>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(s) = cache.lock().expect("solver cache").get(&ring) {
        return Ok(Arc::clone(s));
    }
    let basis: Vec<Mat> = chevalley_basis().iter().map(|m| int_to_mat(ring, m)).collect();
    let solver = Arc::new(SpanSolver::new(&basis)?);
    if solver.dimension() != 14 {
        return Err(Error::DimMismatch(format!("Chevalley basis has rank {} over {ring}", solver.dimension())));
    }
    cache.lock().expect("solver cache").insert(ring, Arc::clone(&solver));
    Ok(solver)
}

/// Coordinates of g·X·g⁻¹ for the basis vectors at `indices`, as columns.
fn adjoint_columns(g: &Mat, indices: &[usize]) -> Result<Vec<Vec<RingElem>>> {
    let ring = g.ring();
    let solver = lie_solver(ring)?;
    let g_inv = g.inverse()?;
    indices
        .iter()
        .map(|&k| {
            let x = &solver.basis()[k];
            let y = g.try_mul(x)?.try_mul(&g_inv)?;
            solver.solve(&y).map_err(|e| match e {
                Error::NotInSpan => Error::NotInLieAlgebra,
                e => e,
            })
        })
        .collect()
}

/// Matrix of X ↦ gXg⁻¹ in the Chevalley basis coordinates.
pub fn adjoint_action(g: &Mat) -> Result<Mat> {
    if g.rows() != 7 || g.cols() != 7 {
        return Err(Error::DimMismatch("adjoint action needs a 7x7 matrix".into()));
    }
    let all: Vec<usize> = (0..14).collect();
    let cols = adjoint_columns(g, &all)?;
    Ok(Mat::from_fn(g.ring(), 14, 14, |i, j| cols[j][i].clone()))
}

fn check_char3(ring: Ring) -> Result<()> {
    match ring.characteristic() {
        3 => Ok(()),
        found => Err(Error::WrongCharacteristic { expected: 3, found }),
    }
}

fn quotient_action(g: &Mat) -> Result<Mat> {
    let cols = adjoint_columns(g, &SURVIVORS)?;
    Ok(Mat::from_fn(g.ring(), 7, 7, |i, j| cols[j][SURVIVORS[i]].clone()))
}

/// Basis scaling, as integers, fixed by x_α(1) ↦ x_β(1) and x_β(1) ↦ x_α(1).
fn calibration() -> &'static [i64] {
    static CAL: OnceLock<Vec<i64>> = OnceLock::new();
    CAL.get_or_init(|| {
        let r = Ring::gf(3, 1).expect("GF(3)");
        let one = r.one();
        let pairs: Vec<(Mat, Mat)> = [G2Root::A, G2Root::B]
            .iter()
            .map(|&g| (quotient_action(&g2_xroot(g, &one)).expect("adjoint"), g2_xroot(g.sigma(), &one)))
            .collect();
        let d = calibrate_diagonal(&pairs).expect("G2 basis calibration");
        d.iter().map(|x| x.prime_field_value().expect("prime field") as i64).collect()
    })
}

/// μ-image of g ∈ G(G₂, R), char R = 3: the action on 𝔤/𝔰 in the basis
/// identified with e₁, …, e₋₁.
pub fn g2_mu_image(g: &Mat) -> Result<Mat> {
    check_char3(g.ring())?;
    if g.rows() != 7 || g.cols() != 7 {
        return Err(Error::DimMismatch("g2_mu_image needs a 7x7 matrix".into()));
    }
    let ring = g.ring();
    let d: Vec<RingElem> = calibration().iter().map(|&c| ring.from_int(c)).collect();
    let d_inv = d.iter().map(RingElem::inv).collect::<Result<Vec<_>>>()?;
    Ok(rescale(&quotient_action(g)?, &d, &d_inv))
}

/// The expected μ-image of x_γ(ξ): x_{σγ}((−1)^(1+ht γ)·ξ^e(γ)).
pub fn g2_mu_law(root: G2Root, xi: &RingElem) -> Result<Mat> {
    let e = if root.is_long() { 1 } else { 3 };
    let mut v = xi.pow(e)?;
    if (1 + root.height()).rem_euclid(2) == 1 {
        v = -v;
    }
    Ok(g2_xroot(root.sigma(), &v))
}

/// The μ-law on every root at `samples` random ξ, and μ∘μ = Frobenius on
/// `products` random products of root elements.
pub fn g2_mu_suite(ring: Ring, samples: usize, products: usize, seed: u64) -> Result<Vec<CheckResult>> {
    check_char3(ring)?;
    let params = json!({"ring": ring.to_string(), "samples": samples, "seed": seed});
    let law = run_samples("g2.mu_law", params, seed, samples, |rng| {
        let xi = ring.sample(rng, 2);
        for root in G2Root::ALL {
            let got = g2_mu_image(&g2_xroot(root, &xi))?;
            if got != g2_mu_law(root, &xi)? {
                return Ok(Some(format!("root {} at {xi}: {}", root.name(), compact(&got))));
            }
        }
        Ok(None)
    });
    let params = json!({"ring": ring.to_string(), "samples": products, "seed": seed});
    let square = run_samples("g2.mu_squared_is_frobenius", params, seed, products, |rng| {
        let mut g = Mat::identity(ring, 7);
        for _ in 0..6 {
            let root = G2Root::ALL[rng.gen_range(0..G2Root::ALL.len())];
            g = g.try_mul(&g2_xroot(root, &ring.sample(rng, 2)))?;
        }
        let twice = g2_mu_image(&g2_mu_image(&g)?)?;
        Ok((twice != g.frobenius()).then(|| format!("g = {}", compact(&g))))
    });
    Ok(vec![law, square])
}

/// Listed diagonals of 𝗁_α and 𝗁_β.
pub const H_ALPHA_DIAG: [i64; 7] = [1, -1, 2, 0, -2, 1, -1];
pub const H_BETA_DIAG: [i64; 7] = [0, 1, -1, 0, 1, -1, 0];

/// The Chevalley basis against its listed shape, the bracket identities over
/// ℤ, preservation of B and T by root elements, and rank 14 modulo 3.
pub fn g2_foundations_suite(rings: &[Ring], samples: usize, seed: u64) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let basis = chevalley_basis();
    let shape = {
        let mut bad = None;
        for root in G2Root::ALL {
            let e = chevalley_root_vector(root);
            let mirrored = chevalley_root_vector(root.negate());
            let entries = e.iter().flatten().filter(|&&c| c != 0).count();
            let expected = if root.is_long() { 2 } else { 4 };
            if entries != expected {
                bad = Some(format!("𝖾_{} has {entries} nonzero entries", root.name()));
            }
            if (0..7).any(|i| (0..7).any(|j| e[i][j] != -mirrored[6 - i][6 - j])) {
                bad = Some(format!("𝖾_{} is not −P·𝖾_{}·P", root.name(), root.negate().name()));
            }
        }
        bad
    };
    out.push(CheckResult::from_witness("g2.basis_listed", json!({"matrices": basis.len()}), shape));
    let diag = |m: &IntMat| -> Vec<i64> { (0..7).map(|i| m[i][i]).collect() };
    let is_diag = |m: &IntMat| (0..7).all(|i| (0..7).all(|j| i == j || m[i][j] == 0));
    let brackets = if !is_diag(&h_alpha()) || diag(&h_alpha()) != H_ALPHA_DIAG {
        Some(format!("[𝖾_a, 𝖾_-a] = {:?}", h_alpha()))
    } else if !is_diag(&h_beta()) || diag(&h_beta()) != H_BETA_DIAG {
        Some(format!("[𝖾_b, 𝖾_-b] = {:?}", h_beta()))
    } else {
        None
    };
    out.push(CheckResult::from_witness("g2.brackets", json!({"ring": "Z"}), brackets));
    for &ring in rings {
        check_char3(ring)?;
        let params = json!({"ring": ring.to_string(), "samples": samples, "seed": seed});
        out.push(run_samples("g2.forms_preserved", params, seed, samples, |rng| {
            let xi = ring.sample(rng, 2);
            Ok(G2Root::ALL
                .iter()
                .find_map(|&r| g2_forms_violation(&g2_xroot(r, &xi)).map(|w| format!("x_{}({xi}): {w}", r.name()))))
        }));
    }
    let gf3 = Ring::gf(3, 1)?;
    let rank = SpanSolver::new(&basis.iter().map(|m| int_to_mat(gf3, m)).collect::<Vec<_>>())?.dimension();
    out.push(CheckResult::from_witness(
        "g2.rank_mod_3",
        json!({"ring": "gf3"}),
        (rank != 14).then(|| format!("rank {rank}")),
    ));
    Ok(out)
}

/// The small Ree group over a char-3 field with a Tits endomorphism.
#[derive(Clone, Debug)]
pub struct Ree {
    tau: TitsEndo,
}

impl Ree {
    pub fn new(ring: Ring) -> Result<Ree> {
        check_char3(ring)?;
        Ok(Ree { tau: TitsEndo::new(ring)? })
    }

    pub fn over_order(q: u32) -> Result<Ree> {
        Ree::new(Ring::gf_order(q)?)
    }

    /// x₁(a) = x_α(a)·x_β(a^τ)·x_{α+β}(−a^(τ+1))·x_{2α+β}(a^(τ+2)).
    pub fn x1(&self, a: &RingElem) -> Result<Mat> {
        let t = &self.tau;
        g2_xroot(G2Root::A, a)
            .try_mul(&g2_xroot(G2Root::B, &t.apply(a)))?
            .try_mul(&g2_xroot(G2Root::AB, &-t.power(a, 1, 1)?))?
            .try_mul(&g2_xroot(G2Root::A2B, &t.power(a, 2, 1)?))
    }

    /// x₂(b) = x_{α+β}(b)·x_{3α+β}(−b^τ).
    pub fn x2(&self, b: &RingElem) -> Result<Mat> {
        g2_xroot(G2Root::AB, b).try_mul(&g2_xroot(G2Root::A3B, &-self.tau.apply(b)))
    }

    /// x₃(c) = x_{2α+β}(c)·x_{3α+2β}(c^τ).
    pub fn x3(&self, c: &RingElem) -> Result<Mat> {
        g2_xroot(G2Root::A2B, c).try_mul(&g2_xroot(G2Root::A3B2, &self.tau.apply(c)))
    }

    pub fn ree_xplus(&self, a: &RingElem, b: &RingElem, c: &RingElem) -> Result<ReeElement> {
        self.xplus(&[a.clone(), b.clone(), c.clone()])
    }

    pub fn ree_xminus(&self, a: &RingElem, b: &RingElem, c: &RingElem) -> Result<ReeElement> {
        self.xminus(&[a.clone(), b.clone(), c.clone()])
    }

    pub fn ree_h(&self, eps: &RingElem) -> Result<ReeElement> {
        self.h(eps)
    }

    pub fn ree_w0(&self) -> Result<ReeElement> {
        self.w0()
    }

    pub fn ree_member(&self, g: &Mat) -> Result<ReeElement> {
        self.member(g)
    }

    pub fn ree_bruhat(&self, g: &ReeElement) -> Result<BruhatParts> {
        self.bruhat(g)
    }

    /// h_α(ε₁)·h_β(ε₂) in V(λ).
    pub fn torus_candidate(&self, e1: &RingElem, e2: &RingElem) -> Result<Mat> {
        let ring = self.ring();
        let i1 = e1.inv()?;
        let i2 = e2.inv()?;
        let one = ring.one();
        let ha = Mat::diag(ring, &[e1.clone(), i1.clone(), e1 * e1, one.clone(), &i1 * &i1, e1.clone(), i1]);
        let hb = Mat::diag(ring, &[one.clone(), e2.clone(), i2.clone(), one.clone(), e2.clone(), i2, one]);
        ha.try_mul(&hb)
    }
}

impl TwistedGroup for Ree {
    fn tits(&self) -> &TitsEndo {
        &self.tau
    }

    fn dim(&self) -> usize {
        7
    }

    fn unipotent_params(&self) -> usize {
        3
    }

    fn mu_image(&self, g: &Mat) -> Result<Mat> {
        g2_mu_image(g)
    }

    fn check_ambient(&self, g: &Mat) -> Result<()> {
        match g2_forms_violation(g) {
            None => Ok(()),
            Some(w) => Err(Error::FormsNotPreserved(w)),
        }
    }

    fn xplus_matrix(&self, params: &[RingElem]) -> Result<Mat> {
        let [a, b, c] = params else {
            return Err(Error::DimMismatch("x+ takes three parameters".into()));
        };
        self.x1(a)?.try_mul(&self.x2(b)?)?.try_mul(&self.x3(c)?)
    }

    /// h(ε) = diag(ε, ε^(τ−1), ε^(2−τ), 1, ε^(τ−2), ε^(1−τ), ε⁻¹).
    fn h_matrix(&self, eps: &RingElem) -> Result<Mat> {
        let t = &self.tau;
        Ok(Mat::diag(
            self.ring(),
            &[
                eps.clone(),
                t.power(eps, -1, 1)?,
                t.power(eps, 2, -1)?,
                self.ring().one(),
                t.power(eps, -2, 1)?,
                t.power(eps, 1, -1)?,
                eps.inv()?,
            ],
        ))
    }

    fn w0_matrix(&self) -> Mat {
        let ring = self.ring();
        Mat::antidiag(ring, &vec![ring.from_int(-1); 7])
    }

    fn read_params(&self, u: &Mat) -> Result<Vec<RingElem>> {
        let a = u.get(0, 1).clone();
        let u1 = self.x1(&a)?.inverse()?.try_mul(u)?;
        let b = u1.get(0, 2).clone();
        let u2 = self.x2(&b)?.inverse()?.try_mul(&u1)?;
        let c = u2.get(0, 3).try_div(&self.ring().from_int(2))?;
        Ok(vec![a, b, c])
    }
}

/// Names of the identities checked by [`ree_relation_suite`].
pub const REE_IDENTITIES: [&str; 13] = [
    "ree.product",
    "ree.inverse",
    "ree.torus_conjugation",
    "ree.commutator_h_x(0,0,c)",
    "ree.commutator_h_x(0,b,0)",
    "ree.commutator_h_x(a,0,0)",
    "ree.commutator_h_w0h",
    "ree.commutator_w0h_w0h",
    "ree.w0h_from_x(0,b,0)",
    "ree.w0h_from_x(a,b,c)",
    "ree.perfect_x(0,0,c)",
    "ree.perfect_x(0,b,0)",
    "ree.perfect_x(a,0,0)",
];

fn compare(lhs: &Mat, rhs: &Mat, params: &[&RingElem]) -> Option<String> {
    (lhs != rhs).then(|| {
        let ps: Vec<RingElem> = params.iter().map(|&x| x.clone()).collect();
        format!("parameters ({}) give {} vs {}", join(&ps), compact(lhs), compact(rhs))
    })
}

/// A unit outside 𝔽₃, if the field has one.
fn sample_non_prime_unit<R: Rng + ?Sized>(ring: Ring, rng: &mut R) -> Option<RingElem> {
    if ring.order() == Some(3) {
        return None;
    }
    loop {
        let e = ring.sample_unit(rng, 2);
        if !e.in_prime_field() {
            return Some(e);
        }
    }
}

/// Evaluates each displayed relation of the small Ree group, including the
/// identities used in the perfectness argument, at `samples` random tuples.
pub fn ree_relation_suite(ring: Ring, samples: usize, seed: u64) -> Result<Vec<CheckResult>> {
    let ree = Ree::new(ring)?;
    let t = ree.tau;
    let params = json!({"ring": ring.to_string(), "samples": samples, "seed": seed});
    let x = |a: &RingElem, b: &RingElem, c: &RingElem| ree.xplus_matrix(&[a.clone(), b.clone(), c.clone()]);
    let xm = |a: &RingElem, b: &RingElem, c: &RingElem| ree.xminus_matrix(&[a.clone(), b.clone(), c.clone()]);
    let h = |e: &RingElem| ree.h_matrix(e);
    let w0 = ree.w0_matrix();
    let zero = ring.zero();
    let one = ring.one();
    let s = |rng: &mut rand_chacha::ChaCha8Rng| ring.sample(rng, 2);
    let su = |rng: &mut rand_chacha::ChaCha8Rng| ring.sample_unit(rng, 2);
    let mut out = Vec::new();

    out.push(run_samples(REE_IDENTITIES[0], params.clone(), seed, samples, |rng| {
        let (a1, b1, c1, a2, b2, c2) = (s(rng), s(rng), s(rng), s(rng), s(rng), s(rng));
        let lhs = x(&a1, &b1, &c1)?.try_mul(&x(&a2, &b2, &c2)?)?;
        let a2t = t.apply(&a2);
        let b = &(&b1 + &b2) + &(&a1 * &a2t);
        let c = &(&(&(&c1 + &c2) + &(&b1 * &a2)) + &(&a1 * &t.power(&a2, 1, 1)?)) - &(&(&a1 * &a1) * &a2t);
        let rhs = x(&(&a1 + &a2), &b, &c)?;
        Ok(compare(&lhs, &rhs, &[&a1, &b1, &c1, &a2, &b2, &c2]))
    }));

    out.push(run_samples(REE_IDENTITIES[1], params.clone(), seed, samples, |rng| {
        let (a, b, c) = (s(rng), s(rng), s(rng));
        let lhs = x(&a, &b, &c)?.inverse()?;
        let rhs = x(&-&a, &(&-&b + &t.power(&a, 1, 1)?), &(&(&-&c + &(&a * &b)) + &t.power(&a, 2, 1)?))?;
        Ok(compare(&lhs, &rhs, &[&a, &b, &c]))
    }));

    out.push(run_samples(REE_IDENTITIES[2], params.clone(), seed, samples, |rng| {
        let (a, b, c, e) = (s(rng), s(rng), s(rng), su(rng));
        let lhs = x(&a, &b, &c)?.conjugate_by(&h(&e)?)?;
        let rhs = x(&(&t.power(&e, 2, -1)? * &a), &(&t.power(&e, -1, 1)? * &b), &(&e * &c))?;
        Ok(compare(&lhs, &rhs, &[&a, &b, &c, &e]))
    }));

    out.push(run_samples(REE_IDENTITIES[3], params.clone(), seed, samples, |rng| {
        let (c, e) = (s(rng), su(rng));
        let lhs = Mat::commutator(&h(&e)?, &x(&zero, &zero, &c)?)?;
        let rhs = x(&zero, &zero, &(&c * &(&e - &one)))?;
        Ok(compare(&lhs, &rhs, &[&c, &e]))
    }));

    out.push(run_samples(REE_IDENTITIES[4], params.clone(), seed, samples, |rng| {
        let (b, e) = (s(rng), su(rng));
        let lhs = Mat::commutator(&h(&e)?, &x(&zero, &b, &zero)?)?;
        let rhs = x(&zero, &(&b * &(&t.power(&e, -1, 1)? - &one)), &zero)?;
        Ok(compare(&lhs, &rhs, &[&b, &e]))
    }));

    out.push(run_samples(REE_IDENTITIES[5], params.clone(), seed, samples, |rng| {
        let (a, e) = (s(rng), su(rng));
        let lhs = Mat::commutator(&h(&e)?, &x(&a, &zero, &zero)?)?;
        let k = &t.power(&e, 2, -1)? - &one;
        let rhs = x(&(&a * &k), &(&t.power(&a, 1, 1)? * &-&k), &(&t.power(&a, 2, 1)? * &(&k * &k)))?;
        Ok(compare(&lhs, &rhs, &[&a, &e]))
    }));

    out.push(run_samples(REE_IDENTITIES[6], params.clone(), seed, samples, |rng| {
        let (e, n) = (su(rng), su(rng));
        let lhs = Mat::commutator(&h(&e)?, &w0.try_mul(&h(&n)?)?)?;
        Ok(compare(&lhs, &h(&(&e * &e))?, &[&e, &n]))
    }));

    out.push(run_samples(REE_IDENTITIES[7], params.clone(), seed, samples, |rng| {
        let (e, n) = (su(rng), su(rng));
        let lhs = Mat::commutator(&w0.try_mul(&h(&e)?)?, &w0.try_mul(&h(&n)?)?)?;
        let rhs = h(&(&n * &n).try_div(&(&e * &e))?)?;
        Ok(compare(&lhs, &rhs, &[&e, &n]))
    }));

    out.push(run_samples(REE_IDENTITIES[8], params.clone(), seed, samples, |rng| {
        let n = su(rng);
        let ni = n.inv()?;
        let side = x(&zero, &ni, &zero)?;
        let lhs = side.try_mul(&xm(&zero, &n, &zero)?)?.try_mul(&side)?;
        let rhs = w0.try_mul(&h(&t.power(&n, 1, 1)?)?)?;
        Ok(compare(&lhs, &rhs, &[&n]))
    }));

    out.push(run_samples(REE_IDENTITIES[9], params.clone(), seed, samples, |rng| {
        let n = su(rng);
        let ni = n.inv()?;
        let p1 = t.power(&n, -1, -1)?;
        let p2 = t.power(&n, -2, -1)?;
        let lhs = x(&-&ni, &p1, &p2)?.try_mul(&xm(&n, &zero, &zero)?)?.try_mul(&x(&ni, &-&p1, &p2)?)?;
        let rhs = w0.try_mul(&h(&-t.power(&n, 4, 2)?)?)?;
        Ok(compare(&lhs, &rhs, &[&n]))
    }));

    out.push(run_samples(REE_IDENTITIES[10], params.clone(), seed, samples, |rng| {
        let c = s(rng);
        let target = x(&zero, &zero, &c)?;
        let lhs = Mat::commutator(&h(&-&one)?, &target)?;
        Ok(compare(&lhs, &target, &[&c]))
    }));

    if ring.order() == Some(3) {
        out.push(CheckResult::skipped(REE_IDENTITIES[11], params.clone(), "needs ε ∉ GF(3)"));
    } else {
        out.push(run_samples(REE_IDENTITIES[11], params.clone(), seed, samples, |rng| {
            let b = s(rng);
            let e = sample_non_prime_unit(ring, rng).expect("field larger than GF(3)");
            let denom = &t.power(&e, -1, 1)? - &one;
            let lhs = Mat::commutator(&h(&e)?, &x(&zero, &b.try_div(&denom)?, &zero)?)?;
            Ok(compare(&lhs, &x(&zero, &b, &zero)?, &[&b, &e]))
        }));
    }

    out.push(run_samples(REE_IDENTITIES[12], params, seed, samples, |rng| {
        let a = s(rng);
        let target = x(&a, &zero, &zero)?;
        let rest = Mat::commutator(&h(&-&one)?, &target)?.inverse()?.try_mul(&target)?;
        // rest must be x₊(0, *, *)
        let p = ree.read_params(&rest)?;
        let ok = p[0].is_zero() && ree.xplus_matrix(&p)? == rest;
        Ok((!ok).then(|| format!("a = {a}: remainder {} is not x+(0,*,*)", compact(&rest))))
    }));

    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brackets_give_listed_cartan_elements() {
        let ha = h_alpha();
        let hb = h_beta();
        let diag = |m: &IntMat| (0..7).map(|i| m[i][i]).collect::<Vec<_>>();
        assert_eq!(diag(&ha), vec![1, -1, 2, 0, -2, 1, -1]);
        assert_eq!(diag(&hb), vec![0, 1, -1, 0, 1, -1, 0]);
    }

    #[test]
    fn x_beta_and_x_alpha_examples() {
        let r = Ring::gf_order(27).unwrap();
        let xi = r.generator();
        let mut want = Mat::identity(r, 7);
        want.set(1, 2, xi.clone());
        want.set(4, 5, -&xi);
        assert_eq!(g2_xroot(G2Root::B, &xi), want);
        let xa = g2_xroot(G2Root::A, &xi);
        assert_eq!(*xa.get(2, 4), -(&xi * &xi));
    }

    #[test]
    fn generators_preserve_forms() {
        let r = Ring::gf_order(27).unwrap();
        for root in G2Root::ALL {
            assert!(g2_check_forms(&g2_xroot(root, &r.generator())), "{}", root.name());
        }
        let two = r.from_int(2);
        let mut bad = Mat::identity(r, 7);
        bad.set(0, 0, two.clone());
        bad.set(6, 6, two.inv().unwrap());
        assert!(!g2_check_forms(&bad));
    }

    #[test]
    fn mu_law_on_simple_roots() {
        let r = Ring::gf_order(27).unwrap();
        let xi = r.generator();
        for root in G2Root::ALL {
            assert_eq!(g2_mu_image(&g2_xroot(root, &xi)).unwrap(), g2_mu_law(root, &xi).unwrap(), "{}", root.name());
        }
    }

    #[test]
    fn generators_and_relations() {
        for q in [3, 27] {
            let r = Ring::gf_order(q).unwrap();
            let ree = Ree::new(r).unwrap();
            let x = r.generator();
            ree.ree_xplus(&x, &r.one(), &x.pow(2).unwrap()).unwrap();
            ree.ree_xminus(&x, &x, &r.one()).unwrap();
            ree.ree_h(&x).unwrap();
            ree.ree_w0().unwrap();
            for c in ree_relation_suite(r, 20, 3).unwrap() {
                assert!(!c.is_failure(), "{c:?}");
            }
        }
    }
}
