//! The characteristic-2 maps ρ: G(Bₙ) → G(Cₙ) and θ: Sp(2n) → Spin(2n+1),
//! built from the natural modules and the spin module ker X₊/U ⊂ ∧ⁿV.
//!
//! Sp(2n) acts on V with basis e₁..eₙ, e₋ₙ..e₋₁; the orthogonal group acts
//! on e₁..eₙ, e₀, e₋ₙ..e₋₁ preserving q = x₀² + Σ xᵢx₋ᵢ. The spin module is
//! indexed by n-subsets A with A ∩ −A = ∅.

use rand::Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg::{label_position, Mat, SpanSolver, SubsetIndex};
use crate::report::{run_samples, CheckResult};
use crate::rings::{Ring, RingElem};

/// Elementary generators of Sp(2n).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CnRoot {
    /// T_{i,−i}(ξ) = e + ξe_{i,−i} (long root).
    Long(i32),
    /// T_{ij}(ξ) = e + ξe_{ij} + ξe_{−j,−i}, i ≠ ±j (short root).
    Short(i32, i32),
}

/// Elementary generators of the split orthogonal group of rank n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BnRoot {
    /// e + t(e_{ij} + e_{−j,−i}), i ≠ ±j, fixing e₀.
    Long(i32, i32),
    /// e₋ᵢ ↦ e₋ᵢ + t·e₀ + t²·eᵢ, other basis vectors fixed.
    Short(i32),
}

impl CnRoot {
    pub fn all(n: usize) -> Vec<CnRoot> {
        let labels = labels(n);
        let mut out: Vec<CnRoot> = labels.iter().map(|&i| CnRoot::Long(i)).collect();
        for &i in &labels {
            for &j in &labels {
                if i != j && i != -j {
                    out.push(CnRoot::Short(i, j));
                }
            }
        }
        out
    }

    /// The B-root whose ρ-image this generator is.
    pub fn to_bn(self) -> BnRoot {
        match self {
            CnRoot::Long(i) => BnRoot::Short(i),
            CnRoot::Short(i, j) => BnRoot::Long(i, j),
        }
    }
}

impl BnRoot {
    pub fn all(n: usize) -> Vec<BnRoot> {
        CnRoot::all(n).into_iter().map(CnRoot::to_bn).collect()
    }

    pub fn is_long(self) -> bool {
        matches!(self, BnRoot::Long(..))
    }
}

fn labels(n: usize) -> Vec<i32> {
    (1..=n as i32).chain((1..=n as i32).rev().map(|i| -i)).collect()
}

fn check_labels(n: usize, ls: &[i32]) -> Result<()> {
    if ls.iter().any(|&l| l == 0 || l.unsigned_abs() as usize > n) {
        return Err(Error::DimMismatch(format!("root labels {ls:?} out of range for rank {n}")));
    }
    Ok(())
}

fn check_char2(ring: Ring) -> Result<()> {
    match ring.characteristic() {
        2 => Ok(()),
        found => Err(Error::WrongCharacteristic { expected: 2, found }),
    }
}

/// Position in e₁..eₙ, e₀, e₋ₙ..e₋₁.
pub fn bn_position(n: usize, label: i32) -> usize {
    match label {
        0 => n,
        l if l > 0 => l as usize - 1,
        l => 2 * n + 1 - l.unsigned_abs() as usize,
    }
}

/// Elementary generator of Sp(2n).
pub fn cn_xroot(n: usize, root: CnRoot, xi: &RingElem) -> Result<Mat> {
    let ring = xi.ring();
    let mut m = Mat::identity(ring, 2 * n);
    match root {
        CnRoot::Long(i) => {
            check_labels(n, &[i])?;
            m.set(label_position(n, i), label_position(n, -i), xi.clone());
        }
        CnRoot::Short(i, j) => {
            check_labels(n, &[i, j])?;
            if i == j || i == -j {
                return Err(Error::DimMismatch(format!("T_({i},{j}) needs i ≠ ±j")));
            }
            m.set(label_position(n, i), label_position(n, j), xi.clone());
            m.set(label_position(n, -j), label_position(n, -i), xi.clone());
        }
    }
    Ok(m)
}

/// Elementary generator of the orthogonal group in characteristic 2.
pub fn bn_xroot(n: usize, root: BnRoot, t: &RingElem) -> Result<Mat> {
    check_char2(t.ring())?;
    let ring = t.ring();
    let mut m = Mat::identity(ring, 2 * n + 1);
    match root {
        BnRoot::Long(i, j) => {
            check_labels(n, &[i, j])?;
            if i == j || i == -j {
                return Err(Error::DimMismatch(format!("long root ({i},{j}) needs i ≠ ±j")));
            }
            m.set(bn_position(n, i), bn_position(n, j), t.clone());
            m.set(bn_position(n, -j), bn_position(n, -i), t.clone());
        }
        BnRoot::Short(i) => {
            check_labels(n, &[i])?;
            let col = bn_position(n, -i);
            m.set(bn_position(n, 0), col, t.clone());
            m.set(bn_position(n, i), col, t * t);
        }
    }
    Ok(m)
}

/// Gram matrix of the symplectic form in characteristic 2 (antidiagonal ones).
pub fn symplectic_gram(ring: Ring, n: usize) -> Mat {
    Mat::antidiag(ring, &vec![ring.one(); 2 * n])
}

pub fn is_symplectic(g: &Mat) -> bool {
    if !g.is_square() || g.rows() % 2 == 1 {
        return false;
    }
    let omega = symplectic_gram(g.ring(), g.rows() / 2);
    g.transpose().try_mul(&omega).and_then(|x| x.try_mul(g)).is_ok_and(|x| x == omega)
}

fn quadratic(n: usize, v: &[RingElem]) -> RingElem {
    let x0 = &v[n];
    (1..=n as i32).fold(x0 * x0, |acc, i| acc + &v[bn_position(n, i)] * &v[bn_position(n, -i)])
}

fn polar(n: usize, u: &[RingElem], v: &[RingElem]) -> RingElem {
    let ring = u[0].ring();
    (1..=n as i32).fold(ring.zero(), |acc, i| {
        let (p, m) = (bn_position(n, i), bn_position(n, -i));
        acc + &(&u[p] * &v[m]) + &(&u[m] * &v[p])
    })
}

/// Whether g preserves q, naming the first failure.
pub fn orthogonal_violation(g: &Mat) -> Option<String> {
    if !g.is_square() || g.rows().is_multiple_of(2) {
        return Some("orthogonal matrices have odd size 2n+1".into());
    }
    let n = g.rows() / 2;
    let ring = g.ring();
    let cols: Vec<Vec<RingElem>> =
        (0..g.cols()).map(|j| (0..g.rows()).map(|i| g.get(i, j).clone()).collect()).collect();
    let id = Mat::identity(ring, 2 * n + 1);
    let basis: Vec<Vec<RingElem>> = (0..id.cols()).map(|j| id.row(j).to_vec()).collect();
    for k in 0..cols.len() {
        if quadratic(n, &cols[k]) != quadratic(n, &basis[k]) {
            return Some(format!("q(g·e) changes at position {k}"));
        }
        for l in k + 1..cols.len() {
            if polar(n, &cols[k], &cols[l]) != polar(n, &basis[k], &basis[l]) {
                return Some(format!("polar form changes at positions ({k},{l})"));
            }
        }
    }
    None
}

pub fn preserves_quadratic_form(g: &Mat) -> bool {
    orthogonal_violation(g).is_none()
}

/// ρ: the action on V/⟨e₀⟩, i.e. g with the e₀ row and column removed.
pub fn rho(g: &Mat) -> Result<Mat> {
    check_char2(g.ring())?;
    if let Some(w) = orthogonal_violation(g) {
        return Err(Error::NotOrthogonal(w));
    }
    let n = g.rows() / 2;
    for i in 0..g.rows() {
        let want = i == n;
        let x = g.get(i, n);
        if (want && !x.is_one()) || (!want && !x.is_zero()) {
            return Err(Error::NotOrthogonal("e₀ is not fixed".into()));
        }
    }
    let keep: Vec<usize> = (0..g.rows()).filter(|&i| i != n).collect();
    Ok(g.select(&keep, &keep))
}

/// X₊: ∧ⁿV → ∧ⁿ⁻²V, e_A ↦ Σ_{a ∈ S(A), a > 0} e_{A∖{±a}}.
pub fn xplus_operator(n: usize, ring: Ring) -> Result<Mat> {
    if n < 2 {
        return Err(Error::DimMismatch("X+ needs rank at least 2".into()));
    }
    let rows = SubsetIndex::all(n, n - 2);
    let cols = SubsetIndex::all(n, n);
    let mut m = Mat::zeros(ring, rows.len(), cols.len());
    for (c, a) in cols.iter().enumerate() {
        for label in a.symmetric_part().labels().into_iter().filter(|&l| l > 0) {
            let b = a.replace(&[label, -label], &[]).expect("both present");
            let r = rows.binary_search(&b).expect("listed subset");
            let cur = m.get(r, c).clone();
            m.set(r, c, cur + ring.one());
        }
    }
    Ok(m)
}

/// A basis of U = ⟨e_A : S(A) ≠ ∅⟩ ∩ ker X₊ as vectors on ∧ⁿV.
pub fn u_basis(n: usize, ring: Ring) -> Result<Vec<Vec<RingElem>>> {
    let x = xplus_operator(n, ring)?;
    let all = SubsetIndex::all(n, n);
    let cols: Vec<usize> = (0..all.len()).filter(|&i| !all[i].symmetric_part().is_empty()).collect();
    let rows: Vec<usize> = (0..x.rows()).collect();
    let restricted = x.select(&rows, &cols);
    Ok(restricted
        .kernel_basis()?
        .into_iter()
        .map(|v| {
            let mut full = vec![ring.zero(); all.len()];
            for (k, &c) in cols.iter().enumerate() {
                full[c] = v[k].clone();
            }
            full
        })
        .collect())
}

/// dim ker X₊ − dim U.
pub fn quotient_dimension(n: usize, ring: Ring) -> Result<usize> {
    let ker = xplus_operator(n, ring)?.kernel_basis()?.len();
    Ok(ker - u_basis(n, ring)?.len())
}

fn rank_of_spin_size(size: usize) -> Result<usize> {
    match size {
        s if s.is_power_of_two() && s >= 2 => Ok(s.trailing_zeros() as usize),
        s => Err(Error::DimMismatch(format!("{s} is not a spin module dimension 2^n"))),
    }
}

/// θ(g): the action of ∧ⁿg on ker X₊/U in the basis e_A + U, S(A) = ∅.
pub fn theta(g: &Mat) -> Result<Mat> {
    check_char2(g.ring())?;
    if !is_symplectic(g) {
        return Err(Error::NotSymplectic("gᵗΩg ≠ Ω".into()));
    }
    let n = g.rows() / 2;
    let subsets = SubsetIndex::spin_subsets(n);
    let mut m = Mat::zeros(g.ring(), subsets.len(), subsets.len());
    for (r, b) in subsets.iter().enumerate() {
        for (c, a) in subsets.iter().enumerate() {
            m.set(r, c, g.minor_subsets(b, a)?);
        }
    }
    Ok(m)
}

/// The displayed induced actions of T̄_{i,−i}(ξ) and T̄_{ij}(ξ) on ker X₊/U.
pub fn induced_action(n: usize, root: CnRoot, xi: &RingElem) -> Result<Mat> {
    let ring = xi.ring();
    let subsets = SubsetIndex::spin_subsets(n);
    let mut m = Mat::identity(ring, subsets.len());
    for (c, a) in subsets.iter().enumerate() {
        let (target, coeff) = match root {
            CnRoot::Long(i) => {
                check_labels(n, &[i])?;
                (a.replace(&[-i], &[i]), xi.clone())
            }
            CnRoot::Short(i, j) => {
                check_labels(n, &[i, j])?;
                (a.replace(&[-i, j], &[i, -j]), xi * xi)
            }
        };
        if let Some(b) = target {
            let r = subsets.binary_search(&b).expect("spin subset");
            m.set(r, c, coeff);
        }
    }
    Ok(m)
}

/// s_k for k ∈ {±1..±n}, or the identity for k = 0.
pub fn s_operator(n: usize, ring: Ring, k: i32) -> Result<Mat> {
    let subsets = SubsetIndex::spin_subsets(n);
    if k == 0 {
        return Ok(Mat::identity(ring, subsets.len()));
    }
    check_labels(n, &[k])?;
    let mut m = Mat::zeros(ring, subsets.len(), subsets.len());
    for (c, a) in subsets.iter().enumerate() {
        if let Some(b) = a.replace(&[-k], &[k]) {
            m.set(subsets.binary_search(&b).expect("spin subset"), c, ring.one());
        }
    }
    Ok(m)
}

/// s₁..sₙ, id, s₋ₙ..s₋₁, matching the basis order of the orthogonal module.
pub fn s_basis(n: usize, ring: Ring) -> Result<Vec<Mat>> {
    (1..=n as i32).chain([0]).chain((1..=n as i32).rev().map(|i| -i)).map(|k| s_operator(n, ring, k)).collect()
}

/// J with J_{AB} = δ_{A,−B} on the spin basis.
pub fn spin_j(n: usize, ring: Ring) -> Mat {
    let subsets = SubsetIndex::spin_subsets(n);
    Mat::from_fn(ring, subsets.len(), subsets.len(), |r, c| {
        if subsets[r] == subsets[c].negated() {
            ring.one()
        } else {
            ring.zero()
        }
    })
}

/// N(x) = x·J·xᵗ·J.
pub fn clifford_norm(x: &Mat) -> Result<Mat> {
    if !x.is_square() {
        return Err(Error::DimMismatch("clifford_norm needs a square matrix".into()));
    }
    let n = rank_of_spin_size(x.rows())?;
    let j = spin_j(n, x.ring());
    x.try_mul(&j)?.try_mul(&x.transpose())?.try_mul(&j)
}

/// ∧ⁿg·K·(∧ⁿg)ᵗ·K with K_{AB} = δ_{A, complement of B}; equals det(g)·id mod 2.
pub fn laplace_product(g: &Mat) -> Result<Mat> {
    if !g.is_square() || g.rows() % 2 == 1 {
        return Err(Error::DimMismatch("Laplace identity needs an even square matrix".into()));
    }
    let n = g.rows() / 2;
    let ring = g.ring();
    let subsets = SubsetIndex::all(n, n);
    let k = Mat::from_fn(ring, subsets.len(), subsets.len(), |r, c| {
        if subsets[r] == subsets[c].complement() {
            ring.one()
        } else {
            ring.zero()
        }
    });
    let w = g.exterior_power(n)?;
    w.try_mul(&k)?.try_mul(&w.transpose())?.try_mul(&k)
}

/// Matrix of u ↦ x·u·x⁻¹ on ⟨s₁..sₙ, id, s₋ₙ..s₋₁⟩.
pub fn spin_to_vector(x: &Mat) -> Result<Mat> {
    check_char2(x.ring())?;
    if !x.is_square() {
        return Err(Error::DimMismatch("spin_to_vector needs a square matrix".into()));
    }
    let n = rank_of_spin_size(x.rows())?;
    let ring = x.ring();
    let basis = s_basis(n, ring)?;
    let solver = SpanSolver::new(&basis)?;
    let x_inv = x.inverse()?;
    let names = (1..=n as i32).chain([0]).chain((1..=n as i32).rev().map(|i| -i));
    let mut out = Mat::zeros(ring, 2 * n + 1, 2 * n + 1);
    for (c, (s, name)) in basis.iter().zip(names).enumerate() {
        let conj = x.try_mul(s)?.try_mul(&x_inv)?;
        let coords = solver.solve(&conj).map_err(|e| match e {
            Error::NotInSpan if name == 0 => Error::NotInSCliff("id".into()),
            Error::NotInSpan => Error::NotInSCliff(format!("s_{name}")),
            e => e,
        })?;
        for (r, v) in coords.into_iter().enumerate() {
            out.set(r, c, v);
        }
    }
    Ok(out)
}

/// Random parameter: uniform over GF(q), bounded degree over 𝔽₂(t).
fn sample_param<R: Rng + ?Sized>(ring: Ring, rng: &mut R) -> RingElem {
    ring.sample(rng, 2)
}

/// Product of `len` random elementary generators of Sp(2n).
pub fn random_sp_element<R: Rng + ?Sized>(n: usize, ring: Ring, rng: &mut R, len: usize) -> Result<Mat> {
    let roots = CnRoot::all(n);
    let mut g = Mat::identity(ring, 2 * n);
    for _ in 0..len {
        let root = roots[rng.gen_range(0..roots.len())];
        g = g.try_mul(&cn_xroot(n, root, &sample_param(ring, rng))?)?;
    }
    Ok(g)
}

/// Product of `len` random elementary generators of the orthogonal group.
pub fn random_bn_element<R: Rng + ?Sized>(n: usize, ring: Ring, rng: &mut R, len: usize) -> Result<Mat> {
    let roots = BnRoot::all(n);
    let mut g = Mat::identity(ring, 2 * n + 1);
    for _ in 0..len {
        let root = roots[rng.gen_range(0..roots.len())];
        g = g.try_mul(&bn_xroot(n, root, &sample_param(ring, rng))?)?;
    }
    Ok(g)
}

fn params(n: usize, ring: Ring, trials: usize, seed: u64) -> serde_json::Value {
    json!({"n": n, "ring": ring.to_string(), "samples": trials, "seed": seed})
}

/// Random elements of U stay in U under random generators.
pub fn u_invariance_check(n: usize, ring: Ring, trials: usize, seed: u64) -> Result<CheckResult> {
    check_char2(ring)?;
    let basis = u_basis(n, ring)?;
    let x = xplus_operator(n, ring)?;
    let subsets = SubsetIndex::all(n, n);
    let label = format!("isogeny.u_invariance.n{n}.{ring}");
    Ok(run_samples(&label, params(n, ring, trials, seed), seed, trials, |rng| {
        let coeffs: Vec<RingElem> = basis.iter().map(|_| sample_param(ring, rng)).collect();
        let u: Vec<RingElem> = (0..subsets.len())
            .map(|i| basis.iter().zip(&coeffs).fold(ring.zero(), |acc, (b, c)| acc + &b[i] * c))
            .collect();
        let roots = CnRoot::all(n);
        let root = roots[rng.gen_range(0..roots.len())];
        let g = cn_xroot(n, root, &sample_param(ring, rng))?;
        let image = g.exterior_power(n)?.apply(&u)?;
        let leaks = subsets.iter().zip(&image).any(|(a, v)| a.symmetric_part().is_empty() && !v.is_zero());
        let in_kernel = x.apply(&image)?.iter().all(RingElem::is_zero);
        Ok((leaks || !in_kernel).then(|| format!("{root:?} moves a U vector out of U")))
    }))
}

/// clifford_norm(θ(g)) = I and the SCliff condition on random g.
pub fn norm_check(n: usize, ring: Ring, trials: usize, seed: u64) -> Result<Vec<CheckResult>> {
    check_char2(ring)?;
    let norm_label = format!("isogeny.clifford_norm.n{n}.{ring}");
    let scliff_label = format!("isogeny.scliff.n{n}.{ring}");
    Ok(vec![
        run_samples(&norm_label, params(n, ring, trials, seed), seed, trials, |rng| {
            let g = random_sp_element(n, ring, rng, 5)?;
            let norm = clifford_norm(&theta(&g)?)?;
            Ok((!norm.is_identity()).then(|| "N(θ(g)) ≠ I".to_string()))
        }),
        run_samples(&scliff_label, params(n, ring, trials, seed), seed, trials, |rng| {
            let g = random_sp_element(n, ring, rng, 5)?;
            let v = spin_to_vector(&theta(&g)?)?;
            Ok(orthogonal_violation(&v))
        }),
    ])
}

/// ρ∘spin_to_vector∘θ and spin_to_vector∘θ∘ρ both equal entrywise Frobenius.
pub fn frobenius_factorization_check(n: usize, ring: Ring, trials: usize, seed: u64) -> Result<Vec<CheckResult>> {
    check_char2(ring)?;
    let c_label = format!("isogeny.rho_theta_is_frobenius.n{n}.{ring}");
    let b_label = format!("isogeny.theta_rho_is_frobenius.n{n}.{ring}");
    Ok(vec![
        run_samples(&c_label, params(n, ring, trials, seed), seed, trials, |rng| {
            let g = random_sp_element(n, ring, rng, 5)?;
            let back = rho(&spin_to_vector(&theta(&g)?)?)?;
            Ok((back != g.frobenius()).then(|| "ρ(θ(g)) ≠ φ(g)".to_string()))
        }),
        run_samples(&b_label, params(n, ring, trials, seed), seed, trials, |rng| {
            let h = random_bn_element(n, ring, rng, 5)?;
            let back = spin_to_vector(&theta(&rho(&h)?)?)?;
            Ok((back != h.frobenius()).then(|| "θ(ρ(h)) ≠ φ(h)".to_string()))
        }),
    ])
}

/// Sample counts for [`isogeny_suite`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsogenySamples {
    pub laws: usize,
    pub invariance: usize,
    pub norm: usize,
    pub frobenius: usize,
}

impl Default for IsogenySamples {
    fn default() -> Self {
        IsogenySamples { laws: 50, invariance: 200, norm: 200, frobenius: 100 }
    }
}

/// Generator laws of ρ and θ, dim(ker X₊/U) = 2ⁿ, U-invariance, the norm and
/// SCliff conditions, and both Frobenius factorisations.
pub fn isogeny_suite(n: usize, ring: Ring, samples: IsogenySamples, seed: u64) -> Result<Vec<CheckResult>> {
    check_char2(ring)?;
    let mut out = Vec::new();
    let label = format!("isogeny.rho_law.n{n}.{ring}");
    out.push(run_samples(&label, params(n, ring, samples.laws, seed), seed, samples.laws, |rng| {
        let t = sample_param(ring, rng);
        for root in CnRoot::all(n) {
            let b = root.to_bn();
            let param = if b.is_long() { t.clone() } else { &t * &t };
            if rho(&bn_xroot(n, b, &t)?)? != cn_xroot(n, root, &param)? {
                return Ok(Some(format!("{b:?} at {t}")));
            }
        }
        Ok(None)
    }));
    let label = format!("isogeny.theta_induced_action.n{n}.{ring}");
    out.push(run_samples(&label, params(n, ring, samples.laws, seed), seed, samples.laws, |rng| {
        let xi = sample_param(ring, rng);
        for root in CnRoot::all(n) {
            if theta(&cn_xroot(n, root, &xi)?)? != induced_action(n, root, &xi)? {
                return Ok(Some(format!("{root:?} at {xi}")));
            }
        }
        Ok(None)
    }));
    let dim = quotient_dimension(n, ring)?;
    out.push(CheckResult::from_witness(
        format!("isogeny.quotient_dimension.n{n}.{ring}"),
        json!({"n": n, "ring": ring.to_string()}),
        (dim != 1 << n).then(|| format!("dim ker X+/U = {dim}")),
    ));
    out.push(u_invariance_check(n, ring, samples.invariance, seed)?);
    out.extend(norm_check(n, ring, samples.norm, seed)?);
    out.extend(frobenius_factorization_check(n, ring, samples.frobenius, seed)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> Ring {
        Ring::gf_order(2).unwrap()
    }

    #[test]
    fn xplus_examples() {
        let r = gf2();
        let x = xplus_operator(2, r).unwrap();
        let all = SubsetIndex::all(2, 2);
        let a = all.iter().position(|s| s.labels() == vec![1, -1]).unwrap();
        assert_eq!(x.rows(), 1);
        assert!(x.get(0, a).is_one());
        let x3 = xplus_operator(3, r).unwrap();
        let all3 = SubsetIndex::all(3, 3);
        let rows3 = SubsetIndex::all(3, 1);
        let a = all3.iter().position(|s| *s == SubsetIndex::new(3, &[1, -1, 2]).unwrap()).unwrap();
        let col: Vec<usize> = (0..x3.rows()).filter(|&i| !x3.get(i, a).is_zero()).collect();
        assert_eq!(col.len(), 1);
        assert_eq!(rows3[col[0]].labels(), vec![2]);
    }

    #[test]
    fn kernel_and_u_dimensions() {
        for (n, ker, u) in [(2, 5, 1), (3, 14, 6)] {
            let r = gf2();
            assert_eq!(xplus_operator(n, r).unwrap().kernel_basis().unwrap().len(), ker);
            assert_eq!(u_basis(n, r).unwrap().len(), u);
            assert_eq!(quotient_dimension(n, r).unwrap(), 1 << n);
        }
    }

    #[test]
    fn theta_of_long_generator_example() {
        let r = Ring::gf_order(4).unwrap();
        let xi = r.generator();
        let th = theta(&cn_xroot(2, CnRoot::Long(1), &xi).unwrap()).unwrap();
        let spin = SubsetIndex::spin_subsets(2);
        let from = spin.binary_search(&SubsetIndex::new(2, &[2, -1]).unwrap()).unwrap();
        let to = spin.binary_search(&SubsetIndex::new(2, &[1, 2]).unwrap()).unwrap();
        assert_eq!(*th.get(to, from), xi);
        assert!(th.get(from, from).is_one());
    }

    #[test]
    fn rho_generator_law() {
        let r = Ring::ratfunc(2).unwrap();
        let t = r.generator();
        for n in [2, 3] {
            for root in CnRoot::all(n) {
                let b = root.to_bn();
                let img = rho(&bn_xroot(n, b, &t).unwrap()).unwrap();
                let param = if b.is_long() { t.clone() } else { &t * &t };
                assert_eq!(img, cn_xroot(n, root, &param).unwrap());
            }
        }
    }

    #[test]
    fn spin_to_vector_generator_law() {
        let r = Ring::gf_order(4).unwrap();
        let xi = r.generator();
        for n in [2, 3] {
            for root in CnRoot::all(n) {
                let v = spin_to_vector(&theta(&cn_xroot(n, root, &xi).unwrap()).unwrap()).unwrap();
                let param = if matches!(root, CnRoot::Long(_)) { xi.clone() } else { &xi * &xi };
                assert_eq!(v, bn_xroot(n, root.to_bn(), &param).unwrap(), "{root:?}");
            }
        }
    }

    #[test]
    fn random_matrix_is_not_in_scliff_span() {
        use rand::SeedableRng;
        let r = Ring::gf_order(4).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let m = Mat::from_fn(r, 4, 4, |_, _| r.sample(&mut rng, 0));
        let solver = SpanSolver::new(&s_basis(2, r).unwrap()).unwrap();
        assert_eq!(solver.solve(&m), Err(Error::NotInSpan));
    }

    #[test]
    fn random_checks_pass() {
        for ring in [gf2(), Ring::gf_order(4).unwrap(), Ring::ratfunc(2).unwrap()] {
            for n in [2, 3] {
                let mut all = frobenius_factorization_check(n, ring, 6, 3).unwrap();
                all.extend(norm_check(n, ring, 6, 3).unwrap());
                all.push(u_invariance_check(n, ring, 6, 3).unwrap());
                for c in all {
                    assert!(!c.is_failure(), "{c:?}");
                }
            }
        }
    }

    #[test]
    fn laplace_identity() {
        use rand::SeedableRng;
        let r = Ring::gf_order(4).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let g =
            random_sp_element(2, r, &mut rng, 6).unwrap().try_mul(&Mat::identity(r, 4).scale(&r.generator())).unwrap();
        let det = g.det().unwrap();
        assert_eq!(laplace_product(&g).unwrap(), Mat::identity(r, 6).scale(&det));
    }

    #[test]
    fn scalar_norm() {
        let r = Ring::gf_order(4).unwrap();
        let l = r.generator();
        let x = Mat::identity(r, 4).scale(&l);
        assert_eq!(clifford_norm(&x).unwrap(), Mat::identity(r, 4).scale(&(&l * &l)));
    }
}
