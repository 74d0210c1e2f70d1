//! Machinery shared by the Suzuki and small Ree groups: certified members,
//! the rank-1 Bruhat decomposition, and calibration of the μ-image basis.

use rand::Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::report::{run_samples, CheckResult};
use crate::rings::{Ring, RingElem, TitsEndo};

/// A group element g together with its μ-image, certified by τ(g) = g_μ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwistedElement {
    g: Mat,
    g_mu: Mat,
}

impl TwistedElement {
    pub fn matrix(&self) -> &Mat {
        &self.g
    }

    pub fn mu(&self) -> &Mat {
        &self.g_mu
    }

    pub fn into_matrix(self) -> Mat {
        self.g
    }

    /// Product of certified members; μ is multiplicative so no re-check is needed.
    pub fn mul(&self, other: &TwistedElement) -> Result<TwistedElement> {
        Ok(TwistedElement { g: self.g.try_mul(&other.g)?, g_mu: self.g_mu.try_mul(&other.g_mu)? })
    }

    pub fn inverse(&self) -> Result<TwistedElement> {
        Ok(TwistedElement { g: self.g.inverse()?, g_mu: self.g_mu.inverse()? })
    }
}

/// g = u·h·w·v with u, v ∈ U, h = h(ε) and w ∈ {1, ŵ₀}; v = 1 when w = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruhatParts {
    pub u: TwistedElement,
    pub u_params: Vec<RingElem>,
    pub h: TwistedElement,
    pub epsilon: RingElem,
    pub has_w0: bool,
    pub v: TwistedElement,
    pub v_params: Vec<RingElem>,
}

impl BruhatParts {
    pub fn reassemble(&self, w0: &Mat) -> Result<Mat> {
        let uh = self.u.matrix().try_mul(self.h.matrix())?;
        let uhw = if self.has_w0 { uh.try_mul(w0)? } else { uh };
        uhw.try_mul(self.v.matrix())
    }
}

/// A rank-1 twisted group ^σG(Φ, R, τ) realised in V(λ).
pub trait TwistedGroup: Sync {
    fn tits(&self) -> &TitsEndo;

    /// Dimension of V(λ).
    fn dim(&self) -> usize;

    /// Number of parameters of x₊.
    fn unipotent_params(&self) -> usize;

    /// Operator of g on V(μ) in the basis identified with V(λ).
    fn mu_image(&self, g: &Mat) -> Result<Mat>;

    /// Rejects matrices outside the ambient Chevalley group.
    fn check_ambient(&self, g: &Mat) -> Result<()>;

    fn xplus_matrix(&self, params: &[RingElem]) -> Result<Mat>;

    fn h_matrix(&self, eps: &RingElem) -> Result<Mat>;

    fn w0_matrix(&self) -> Mat;

    /// Reads off the x₊ parameters of an upper unitriangular matrix, without
    /// checking that it lies in U.
    fn read_params(&self, u: &Mat) -> Result<Vec<RingElem>>;

    fn ring(&self) -> Ring {
        self.tits().ring()
    }

    /// Entrywise τ.
    fn apply_tau(&self, g: &Mat) -> Mat {
        let tau = self.tits();
        g.map(|x| tau.apply(x))
    }

    /// Membership test τ(g) = g_μ, reporting the first differing entry.
    fn member(&self, g: &Mat) -> Result<TwistedElement> {
        if g.ring() != self.ring() {
            return Err(Error::RingMismatch(self.ring().to_string(), g.ring().to_string()));
        }
        self.check_ambient(g)?;
        let g_mu = self.mu_image(g)?;
        let tg = self.apply_tau(g);
        for i in 0..g.rows() {
            for j in 0..g.cols() {
                if tg.get(i, j) != g_mu.get(i, j) {
                    return Err(Error::NotMember {
                        row: i,
                        col: j,
                        lhs: tg.get(i, j).to_string(),
                        rhs: g_mu.get(i, j).to_string(),
                    });
                }
            }
        }
        Ok(TwistedElement { g: g.clone(), g_mu })
    }

    fn xplus(&self, params: &[RingElem]) -> Result<TwistedElement> {
        self.member(&self.xplus_matrix(params)?)
    }

    /// x₋ = ŵ₀·x₊·ŵ₀⁻¹.
    fn xminus_matrix(&self, params: &[RingElem]) -> Result<Mat> {
        let w0 = self.w0_matrix();
        self.xplus_matrix(params)?.conjugate_by(&w0)
    }

    fn xminus(&self, params: &[RingElem]) -> Result<TwistedElement> {
        self.member(&self.xminus_matrix(params)?)
    }

    fn h(&self, eps: &RingElem) -> Result<TwistedElement> {
        self.member(&self.h_matrix(eps)?)
    }

    fn w0(&self) -> Result<TwistedElement> {
        self.member(&self.w0_matrix())
    }

    /// Parameters of u ∈ U, verified by rebuilding x₊.
    fn unipotent_parameters(&self, u: &Mat) -> Result<Vec<RingElem>> {
        let params = self.read_params(u)?;
        if self.xplus_matrix(&params)? != *u {
            return Err(Error::NotInSubgroup(format!("not of the form x+({})", join(&params))));
        }
        Ok(params)
    }

    /// Bruhat decomposition over a field, verified by reassembly.
    fn bruhat(&self, g: &TwistedElement) -> Result<BruhatParts> {
        let ring = self.ring();
        if !ring.is_field() {
            return Err(Error::NotAField(ring.to_string()));
        }
        let m = g.matrix();
        let parts = if m.is_upper_triangular() {
            let eps = m.get(0, 0).clone();
            let h = self.h_matrix(&eps)?;
            let u = m.try_mul(&h.inverse()?)?;
            let u_params = self.unipotent_parameters(&u)?;
            let v_params = vec![ring.zero(); self.unipotent_params()];
            BruhatParts {
                u: self.member(&u)?,
                u_params,
                h: self.member(&h)?,
                epsilon: eps,
                has_w0: false,
                v: self.member(&Mat::identity(ring, self.dim()))?,
                v_params,
            }
        } else {
            let w0 = self.w0_matrix();
            let w0_inv = w0.inverse()?;
            let (u, d, l) = m
                .try_mul(&w0_inv)?
                .udl()
                .map_err(|_| Error::NotInSubgroup("g·ŵ₀⁻¹ has no UDL factorisation".into()))?;
            let eps = d.get(0, 0).clone();
            let h = self.h_matrix(&eps)?;
            if h != d {
                return Err(Error::NotInSubgroup(format!("diagonal part is not h({eps})")));
            }
            let v = w0_inv.try_mul(&l)?.try_mul(&w0)?;
            BruhatParts {
                u_params: self.unipotent_parameters(&u)?,
                v_params: self.unipotent_parameters(&v)?,
                u: self.member(&u)?,
                h: self.member(&h)?,
                epsilon: eps,
                has_w0: true,
                v: self.member(&v)?,
            }
        };
        if parts.reassemble(&self.w0_matrix())? != *m {
            return Err(Error::NotInSubgroup("Bruhat parts do not reassemble".into()));
        }
        Ok(parts)
    }

    /// Generators of ⟨U, U⁻⟩ for a finite field: x₊ and x₋ with one parameter
    /// running over the power basis 1, x, x², … and the others zero.
    fn elementary_generators(&self) -> Result<Vec<Mat>> {
        let ring = self.ring();
        let spec = ring.field_spec().ok_or_else(|| Error::InfiniteRing(ring.to_string()))?;
        let x = ring.generator();
        let mut gens = Vec::new();
        for minus in [false, true] {
            for slot in 0..self.unipotent_params() {
                for k in 0..spec.degree() {
                    let mut params = vec![ring.zero(); self.unipotent_params()];
                    params[slot] = x.pow(k as i64)?;
                    gens.push(if minus { self.xminus_matrix(&params)? } else { self.xplus_matrix(&params)? });
                }
            }
        }
        Ok(gens)
    }

    /// Generators of the whole group ⟨U, U⁻, H, ŵ₀⟩ for a finite field.
    fn full_generators(&self) -> Result<Vec<Mat>> {
        let ring = self.ring();
        let mut gens = self.elementary_generators()?;
        let prim = ring.primitive_element().ok_or_else(|| Error::InfiniteRing(ring.to_string()))?;
        gens.push(self.h_matrix(&prim)?);
        gens.push(self.w0_matrix());
        Ok(gens)
    }
}

fn random_params<G: TwistedGroup + ?Sized, R: Rng + ?Sized>(group: &G, rng: &mut R) -> Vec<RingElem> {
    (0..group.unipotent_params()).map(|_| group.ring().sample(rng, 2)).collect()
}

fn random_generator<G: TwistedGroup + ?Sized, R: Rng + ?Sized>(group: &G, rng: &mut R) -> Result<Mat> {
    match rng.gen_range(0..4) {
        0 => group.xplus_matrix(&random_params(group, rng)),
        1 => group.xminus_matrix(&random_params(group, rng)),
        2 => group.h_matrix(&group.ring().sample_unit(rng, 2)),
        _ => Ok(group.w0_matrix()),
    }
}

/// x₊, x₋, h(ε) and ŵ₀ pass the membership test at `samples` random
/// parameters, and `products` random words in them and their inverses stay
/// members.
pub fn membership_suite<G: TwistedGroup + ?Sized>(
    group: &G,
    prefix: &str,
    samples: usize,
    products: usize,
    seed: u64,
) -> Vec<CheckResult> {
    let ring = group.ring();
    let params = json!({"ring": ring.to_string(), "samples": samples, "seed": seed});
    let gens = run_samples(&format!("{prefix}.generators_member"), params, seed, samples, |rng| {
        let xp = random_params(group, rng);
        let xm = random_params(group, rng);
        let eps = ring.sample_unit(rng, 2);
        group.xplus(&xp)?;
        group.xminus(&xm)?;
        group.h(&eps)?;
        group.w0()?;
        Ok(None)
    });
    let params = json!({"ring": ring.to_string(), "samples": products, "seed": seed});
    let closure = run_samples(&format!("{prefix}.closure"), params, seed, products, |rng| {
        let len = rng.gen_range(1..=8);
        let mut g = Mat::identity(ring, group.dim());
        for _ in 0..len {
            let mut x = random_generator(group, rng)?;
            if rng.gen_bool(0.5) {
                x = x.inverse()?;
            }
            g = g.try_mul(&x)?;
        }
        Ok(group.member(&g).err().map(|e| format!("word of length {len}: {e}")))
    });
    vec![gens, closure]
}

/// Over a finite field, h_α(ε₁)h_β(ε₂) is a member exactly when ε₂ = ε₁^τ,
/// checked on all pairs of units.
pub fn torus_only_if_check<G, F>(group: &G, prefix: &str, candidate: F) -> Result<CheckResult>
where
    G: TwistedGroup + ?Sized,
    F: Fn(&RingElem, &RingElem) -> Result<Mat> + Sync,
{
    let ring = group.ring();
    let units = ring.units().ok_or_else(|| Error::InfiniteRing(ring.to_string()))?;
    let params = json!({"ring": ring.to_string(), "pairs": units.len() * units.len()});
    let bad = units
        .par_iter()
        .enumerate()
        .map(|(i, e1)| -> Result<Option<(usize, String)>> {
            for e2 in &units {
                let member = group.member(&candidate(e1, e2)?).is_ok();
                if member != (*e2 == group.tits().apply(e1)) {
                    return Ok(Some((i, format!("ε₁ = {e1}, ε₂ = {e2}: member = {member}"))));
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .min_by_key(|(i, _)| *i)
        .map(|(_, w)| w);
    Ok(CheckResult::from_witness(format!("{prefix}.torus_only_if"), params, bad))
}

pub(crate) fn join(xs: &[RingElem]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// Diagonal D with D·mᵢ·D⁻¹ = tᵢ for every pair, normalised by D₀₀ = 1.
///
/// Entries are propagated along the nonzero off-diagonal positions of the
/// mᵢ; every constraint is re-checked at the end.
pub(crate) fn calibrate_diagonal(pairs: &[(Mat, Mat)]) -> Result<Vec<RingElem>> {
    let (first, _) = pairs.first().ok_or_else(|| Error::DimMismatch("no calibration pairs".into()))?;
    let ring = first.ring();
    let n = first.rows();
    let mut d: Vec<Option<RingElem>> = vec![None; n];
    d[0] = Some(ring.one());
    let mut changed = true;
    while changed {
        changed = false;
        for (m, t) in pairs {
            for i in 0..n {
                for j in 0..n {
                    if i == j || m.get(i, j).is_zero() || t.get(i, j).is_zero() {
                        continue;
                    }
                    // d_i·m_ij = t_ij·d_j
                    match (&d[i], &d[j]) {
                        (None, Some(dj)) => {
                            d[i] = Some((t.get(i, j) * dj).try_div(m.get(i, j))?);
                            changed = true;
                        }
                        (Some(di), None) => {
                            d[j] = Some((m.get(i, j) * di).try_div(t.get(i, j))?);
                            changed = true;
                        }
                        _ => {}
                    }
                }
            }
        }
    }
    let d: Vec<RingElem> = d
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::NotInSubgroup("calibration leaves a basis vector unscaled".into()))?;
    let dm = Mat::diag(ring, &d);
    let dm_inv = dm.inverse()?;
    for (m, t) in pairs {
        if dm.try_mul(m)?.try_mul(&dm_inv)? != *t {
            return Err(Error::NotInSubgroup("calibration constraints are inconsistent".into()));
        }
    }
    Ok(d)
}

/// D·m·D⁻¹ for diagonal D given by its entries and their inverses.
pub(crate) fn rescale(m: &Mat, d: &[RingElem], d_inv: &[RingElem]) -> Mat {
    Mat::from_fn(m.ring(), m.rows(), m.cols(), |i, j| {
        let x = m.get(i, j);
        if x.is_zero() {
            x.clone()
        } else {
            &(&d[i] * x) * &d_inv[j]
        }
    })
}
