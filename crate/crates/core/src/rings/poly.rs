//! Dense univariate polynomials over a prime field 𝔽_p.
//!
//! Coefficients are stored low-to-high with no trailing zeros, so the zero
//! polynomial is the empty vector and equality is structural.

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FpPoly(Vec<u32>);

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut base = (a % p) as u64;
    let m = p as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u32
}

impl FpPoly {
    pub fn zero() -> Self {
        FpPoly(Vec::new())
    }

    pub fn constant(c: u32, p: u32) -> Self {
        Self::from_coeffs(vec![c % p], p)
    }

    pub fn monomial(c: u32, deg: usize, p: u32) -> Self {
        let mut v = vec![0; deg + 1];
        v[deg] = c % p;
        Self::from_coeffs(v, p)
    }

    /// Builds a polynomial from low-to-high coefficients, reducing mod `p`.
    pub fn from_coeffs(mut coeffs: Vec<u32>, p: u32) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly(coeffs)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [1]
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self, p: u32) -> Self {
        let n = self.0.len().max(other.0.len());
        let v = (0..n).map(|i| (self.coeff(i) + other.coeff(i)) % p).collect();
        Self::from_coeffs(v, p)
    }

    pub fn neg(&self, p: u32) -> Self {
        Self::from_coeffs(self.0.iter().map(|&c| (p - c) % p).collect(), p)
    }

    pub fn sub(&self, other: &Self, p: u32) -> Self {
        self.add(&other.neg(p), p)
    }

    pub fn scale(&self, c: u32, p: u32) -> Self {
        let c = (c % p) as u64;
        Self::from_coeffs(self.0.iter().map(|&a| (a as u64 * c % p as u64) as u32).collect(), p)
    }

    pub fn mul(&self, other: &Self, p: u32) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let m = p as u64;
        let mut v = vec![0u64; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                v[i + j] = (v[i + j] + a as u64 * b as u64) % m;
            }
        }
        Self::from_coeffs(v.into_iter().map(|c| c as u32).collect(), p)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self, p: u32) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = inv_mod(d.leading(), p) as u64;
        let m = p as u64;
        let mut r = self.0.clone();
        let Some(sd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if sd < dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![0u32; sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = (r[k + dd] as u64 * lead_inv % m) as u32;
            q[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &b) in d.0.iter().enumerate() {
                let sub = (c as u64 * b as u64 % m) as u32;
                r[k + j] = (r[k + j] + p - sub) % p;
            }
        }
        (Self::from_coeffs(q, p), Self::from_coeffs(r, p))
    }

    pub fn rem(&self, d: &Self, p: u32) -> Self {
        self.divrem(d, p).1
    }

    pub fn make_monic(&self, p: u32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(inv_mod(self.leading(), p), p)
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self, p: u32) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, p);
            a = b;
            b = r;
        }
        a.make_monic(p)
    }

    /// Substitutes t ↦ t^p, the Frobenius on 𝔽_p[t] (coefficients are fixed by a ↦ a^p).
    pub fn frobenius(&self, p: u32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![0; (self.0.len() - 1) * p as usize + 1];
        for (i, &c) in self.0.iter().enumerate() {
            v[i * p as usize] = c;
        }
        Self::from_coeffs(v, p)
    }

    /// Inverse of [`FpPoly::frobenius`] when every exponent is a multiple of `p`.
    pub fn p_th_root(&self, p: u32) -> Option<Self> {
        let pu = p as usize;
        if self.0.iter().enumerate().any(|(i, &c)| c != 0 && i % pu != 0) {
            return None;
        }
        Some(Self::from_coeffs(self.0.iter().step_by(pu).copied().collect(), p))
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self, p: u32) -> Option<Self> {
        let (q, r) = self.divrem(d, p);
        r.is_zero().then_some(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_reassembles() {
        let p = 3;
        let a = FpPoly::from_coeffs(vec![1, 2, 0, 1, 2], p);
        let d = FpPoly::from_coeffs(vec![2, 0, 1], p);
        let (q, r) = a.divrem(&d, p);
        assert_eq!(q.mul(&d, p).add(&r, p), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        let p = 2;
        let f = FpPoly::from_coeffs(vec![1, 1], p); // t+1
        let a = f.mul(&FpPoly::from_coeffs(vec![1, 0, 1], p), p);
        let b = f.mul(&FpPoly::from_coeffs(vec![0, 1], p), p);
        // (t+1)^2 and t(t+1) share t+1
        assert_eq!(a.gcd(&b, p), f);
    }

    #[test]
    fn frobenius_root_round_trip() {
        let p = 2;
        let f = FpPoly::from_coeffs(vec![1, 1], p);
        assert_eq!(f.frobenius(p), FpPoly::from_coeffs(vec![1, 0, 1], p));
        assert_eq!(f.frobenius(p).p_th_root(p), Some(f));
        assert_eq!(FpPoly::from_coeffs(vec![0, 1], p).p_th_root(p), None);
    }
}
