//! Finite fields GF(p^k) with log/exp tables.
//!
//! Elements are packed as base-p integers: digit i is the coefficient of x^i
//! in the canonical representative modulo the defining polynomial.

use std::sync::{Mutex, OnceLock};

use super::poly::FpPoly;
use crate::error::{Error, Result};

/// Largest field order handled with table arithmetic.
pub const MAX_TABLE_ORDER: u64 = 1 << 16;

/// Conway polynomials (low-to-high coefficients) for the small fields in use.
const CONWAY: &[(u32, u32, &[u32])] = &[
    (2, 1, &[1, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (3, 1, &[1, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (3, 6, &[2, 2, 1, 0, 2, 0, 1]),
    (5, 1, &[3, 1]),
    (7, 1, &[4, 1]),
];

/// A finite field GF(p^k) given by a monic irreducible modulus.
///
/// Specs are interned: [`FieldSpec::new`] returns the same `&'static` value for
/// the same `(p, modulus)`, so rings compare by pointer.
#[derive(Debug)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    q: u32,
    modulus: FpPoly,
    conway: bool,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}
impl Eq for FieldSpec {}

fn registry() -> &'static Mutex<Vec<&'static FieldSpec>> {
    static REG: OnceLock<Mutex<Vec<&'static FieldSpec>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(Vec::new()))
}

pub(crate) fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// All monic polynomials of the given degree over 𝔽_p.
fn monic_polys(deg: usize, p: u32) -> impl Iterator<Item = FpPoly> {
    let count = (p as u64).pow(deg as u32);
    (0..count).map(move |mut idx| {
        let mut v = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            v.push((idx % p as u64) as u32);
            idx /= p as u64;
        }
        v.push(1);
        FpPoly::from_coeffs(v, p)
    })
}

/// Irreducibility by trial division against every monic polynomial of
/// degree 1..=deg/2.
pub fn is_irreducible(f: &FpPoly, p: u32) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    (1..=n / 2).all(|d| monic_polys(d, p).all(|g| !f.rem(&g, p).is_zero()))
}

impl FieldSpec {
    /// GF(p^k) with the tabulated Conway polynomial, or the first primitive
    /// irreducible polynomial in lexicographic order when none is tabulated.
    pub fn conway(p: u32, k: u32) -> Result<&'static FieldSpec> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 || (p as u64).checked_pow(k).is_none_or(|q| q > MAX_TABLE_ORDER) {
            return Err(Error::FieldTooLarge((p as u64).saturating_pow(k)));
        }
        if let Some((_, _, c)) = CONWAY.iter().find(|(pp, kk, _)| *pp == p && *kk == k) {
            return Self::intern(p, FpPoly::from_coeffs(c.to_vec(), p), true);
        }
        for f in monic_polys(k as usize, p) {
            if is_irreducible(&f, p) {
                if let Ok(spec) = Self::intern(p, f, false) {
                    if spec.primitive_modulus() {
                        return Ok(spec);
                    }
                }
            }
        }
        unreachable!("every finite field has a primitive polynomial")
    }

    /// GF(p^deg modulus) with an explicit modulus (low-to-high coefficients).
    pub fn new(p: u32, modulus: &[u32]) -> Result<&'static FieldSpec> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let f = FpPoly::from_coeffs(modulus.to_vec(), p);
        let k = f.degree().unwrap_or(0) as u32;
        if k == 0 || f.leading() != 1 {
            return Err(Error::Reducible(format!("{f:?}")));
        }
        if (p as u64).checked_pow(k).is_none_or(|q| q > MAX_TABLE_ORDER) {
            return Err(Error::FieldTooLarge((p as u64).saturating_pow(k)));
        }
        let conway = CONWAY.iter().any(|(pp, kk, c)| *pp == p && *kk == k && FpPoly::from_coeffs(c.to_vec(), p) == f);
        Self::intern(p, f, conway)
    }

    fn intern(p: u32, modulus: FpPoly, conway: bool) -> Result<&'static FieldSpec> {
        let mut reg = registry().lock().expect("field registry poisoned");
        if let Some(s) = reg.iter().find(|s| s.p == p && s.modulus == modulus) {
            return Ok(s);
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::Reducible(render_modulus(&modulus)));
        }
        let spec: &'static FieldSpec = Box::leak(Box::new(Self::build(p, modulus, conway)));
        reg.push(spec);
        Ok(spec)
    }

    fn build(p: u32, modulus: FpPoly, conway: bool) -> FieldSpec {
        let k = modulus.degree().unwrap() as u32;
        let q = p.pow(k);
        let mut spec = FieldSpec { p, k, q, modulus, conway, exp: Vec::new(), log: Vec::new() };
        let generator =
            (1..q).find(|&g| spec.slow_order(g) == q - 1).expect("multiplicative group of a finite field is cyclic");
        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut log = vec![0u32; q as usize];
        let mut cur = 1u32;
        for i in 0..q - 1 {
            exp.push(cur);
            log[cur as usize] = i;
            cur = spec.slow_mul(cur, generator);
        }
        spec.exp = exp;
        spec.log = log;
        spec
    }

    fn unpack(&self, mut v: u32) -> FpPoly {
        let mut c = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            c.push(v % self.p);
            v /= self.p;
        }
        FpPoly::from_coeffs(c, self.p)
    }

    fn pack(&self, f: &FpPoly) -> u32 {
        f.coeffs().iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let prod = self.unpack(a).mul(&self.unpack(b), self.p).rem(&self.modulus, self.p);
        self.pack(&prod)
    }

    fn slow_order(&self, g: u32) -> u32 {
        let mut cur = g;
        let mut n = 1;
        while cur != 1 {
            cur = self.slow_mul(cur, g);
            n += 1;
            if n > self.q {
                return 0;
            }
        }
        n
    }

    fn primitive_modulus(&self) -> bool {
        // x (packed as p) generates the multiplicative group
        self.k == 1 || self.slow_order(self.p) == self.q - 1
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &FpPoly {
        &self.modulus
    }

    pub fn is_conway(&self) -> bool {
        self.conway
    }

    /// Packed value of a primitive element.
    pub fn primitive_element(&self) -> u32 {
        if self.q == 2 {
            1
        } else {
            self.exp[1]
        }
    }

    pub(crate) fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0, 1);
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub(crate) fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let (mut a, mut out, mut place) = (a, 0, 1);
        while a > 0 {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub(crate) fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        self.exp[((self.log[a as usize] + self.log[b as usize]) % n) as usize]
    }

    pub(crate) fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.q - 1;
        Some(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    /// a^e for any integer exponent (negative needs a ≠ 0).
    pub(crate) fn pow(&self, a: u32, e: i64) -> Option<u32> {
        if a == 0 {
            return match e.cmp(&0) {
                std::cmp::Ordering::Greater => Some(0),
                std::cmp::Ordering::Equal => Some(1),
                std::cmp::Ordering::Less => None,
            };
        }
        let n = (self.q - 1) as i64;
        let l = self.log[a as usize] as i64;
        Some(self.exp[(l * e).rem_euclid(n) as usize])
    }

    pub(crate) fn reduce_int(&self, c: i64) -> u32 {
        c.rem_euclid(self.p as i64) as u32
    }

    /// Reduces an arbitrary polynomial into the field.
    pub(crate) fn reduce(&self, f: &FpPoly) -> u32 {
        self.pack(&f.rem(&self.modulus, self.p))
    }

    pub(crate) fn to_poly(&self, a: u32) -> FpPoly {
        self.unpack(a)
    }

    /// Whether `a` lies in the prime subfield 𝔽_p.
    pub(crate) fn in_prime_field(&self, a: u32) -> bool {
        a < self.p
    }
}

pub(crate) fn render_modulus(f: &FpPoly) -> String {
    super::parse::render_poly(f, 'x')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conway_moduli_are_irreducible() {
        for &(p, k, c) in CONWAY {
            assert!(is_irreducible(&FpPoly::from_coeffs(c.to_vec(), p), p), "p={p} k={k}");
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2+1 = (x+1)^2 over GF(2)
        assert!(matches!(FieldSpec::new(2, &[1, 0, 1]), Err(Error::Reducible(_))));
    }

    #[test]
    fn interning_returns_same_spec() {
        let a = FieldSpec::conway(2, 3).unwrap();
        let b = FieldSpec::new(2, &[1, 1, 0, 1]).unwrap();
        assert!(std::ptr::eq(a, b));
        assert!(b.is_conway());
    }

    #[test]
    fn gf8_tables() {
        let f = FieldSpec::conway(2, 3).unwrap();
        // x * (x^2+1) = x^3 + x = 1 mod x^3+x+1
        assert_eq!(f.mul(0b010, 0b101), 1);
        assert_eq!(f.inv(0b010), Some(0b101));
    }

    #[test]
    fn non_tabulated_degree_is_primitive() {
        let f = FieldSpec::conway(5, 2).unwrap();
        assert_eq!(f.order(), 25);
        assert!(f.primitive_modulus());
    }
}
