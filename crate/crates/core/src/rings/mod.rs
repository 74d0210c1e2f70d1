//! Coefficient rings of characteristic p: finite fields GF(p^k), the
//! polynomial ring 𝔽_p[t] and the rational function field 𝔽_p(t).
//!
//! Every [`RingElem`] carries its [`Ring`] and a canonical payload, so
//! equality and hashing are structural.

mod field;
mod parse;
mod poly;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

pub use field::{is_irreducible, FieldSpec, MAX_TABLE_ORDER};
pub use poly::FpPoly;

use crate::error::{Error, Result};

/// A coefficient ring. Cheap to copy.
#[derive(Clone, Copy, Debug)]
pub enum Ring {
    Gf(&'static FieldSpec),
    Poly { p: u32 },
    RatFunc { p: u32 },
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Ring::Gf(a), Ring::Gf(b)) => std::ptr::eq(*a, *b),
            (Ring::Poly { p: a }, Ring::Poly { p: b }) => a == b,
            (Ring::RatFunc { p: a }, Ring::RatFunc { p: b }) => a == b,
            _ => false,
        }
    }
}
impl Eq for Ring {}

impl Hash for Ring {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Ring::Gf(f) => {
                0u8.hash(state);
                f.characteristic().hash(state);
                f.modulus().hash(state);
            }
            Ring::Poly { p } => {
                1u8.hash(state);
                p.hash(state);
            }
            Ring::RatFunc { p } => {
                2u8.hash(state);
                p.hash(state);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Gf(u32),
    Poly(FpPoly),
    /// Reduced fraction with monic denominator.
    Rat(FpPoly, FpPoly),
}

/// An element of a [`Ring`] in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElem {
    ring: Ring,
    repr: Repr,
}

impl Ring {
    /// GF(p^k) with the Conway modulus.
    pub fn gf(p: u32, k: u32) -> Result<Ring> {
        Ok(Ring::Gf(FieldSpec::conway(p, k)?))
    }

    /// GF(q) for a prime power q.
    pub fn gf_order(q: u32) -> Result<Ring> {
        let p = (2..=q).find(|d| q.is_multiple_of(*d)).ok_or(Error::NotPrime(q))?;
        let mut k = 0;
        let mut r = q;
        while r.is_multiple_of(p) {
            r /= p;
            k += 1;
        }
        if r != 1 {
            return Err(Error::NotPrime(q));
        }
        Ring::gf(p, k)
    }

    pub fn poly(p: u32) -> Result<Ring> {
        if !field::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Ring::Poly { p })
    }

    pub fn ratfunc(p: u32) -> Result<Ring> {
        if !field::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Ring::RatFunc { p })
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Ring::Gf(f) => f.characteristic(),
            Ring::Poly { p } | Ring::RatFunc { p } => *p,
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, Ring::Poly { .. })
    }

    /// Number of elements, `None` for infinite rings.
    pub fn order(&self) -> Option<u32> {
        match self {
            Ring::Gf(f) => Some(f.order()),
            _ => None,
        }
    }

    pub fn field_spec(&self) -> Option<&'static FieldSpec> {
        match self {
            Ring::Gf(f) => Some(f),
            _ => None,
        }
    }

    pub fn zero(&self) -> RingElem {
        self.from_int(0)
    }

    pub fn one(&self) -> RingElem {
        self.from_int(1)
    }

    pub fn from_int(&self, c: i64) -> RingElem {
        let p = self.characteristic();
        let c = c.rem_euclid(p as i64) as u32;
        let repr = match self {
            Ring::Gf(f) => Repr::Gf(f.reduce_int(c as i64)),
            Ring::Poly { p } => Repr::Poly(FpPoly::constant(c, *p)),
            Ring::RatFunc { p } => Repr::Rat(FpPoly::constant(c, *p), FpPoly::constant(1, *p)),
        };
        RingElem { ring: *self, repr }
    }

    /// The distinguished generator: `x` in GF(p^k), `t` in 𝔽_p[t] and 𝔽_p(t).
    pub fn generator(&self) -> RingElem {
        match self {
            Ring::Gf(f) => self.from_poly(&FpPoly::monomial(1, 1, f.characteristic())),
            Ring::Poly { p } | Ring::RatFunc { p } => self.from_poly(&FpPoly::monomial(1, 1, *p)),
        }
    }

    /// Image of a polynomial in the generator.
    pub fn from_poly(&self, f: &FpPoly) -> RingElem {
        let repr = match self {
            Ring::Gf(spec) => Repr::Gf(spec.reduce(f)),
            Ring::Poly { .. } => Repr::Poly(f.clone()),
            Ring::RatFunc { p } => Repr::Rat(f.clone(), FpPoly::constant(1, *p)),
        };
        RingElem { ring: *self, repr }
    }

    /// `num / den` in 𝔽_p(t), reduced.
    pub fn fraction(&self, num: &FpPoly, den: &FpPoly) -> Result<RingElem> {
        match self {
            Ring::RatFunc { p } => {
                if den.is_zero() {
                    return Err(Error::NonUnit("0".into()));
                }
                Ok(RingElem { ring: *self, repr: reduce_fraction(num, den, *p) })
            }
            _ => {
                let n = self.from_poly(num);
                let d = self.from_poly(den);
                n.try_div(&d)
            }
        }
    }

    /// All elements of a finite field, in packed order.
    pub fn elements(&self) -> Option<Vec<RingElem>> {
        match self {
            Ring::Gf(f) => Some((0..f.order()).map(|v| RingElem { ring: *self, repr: Repr::Gf(v) }).collect()),
            _ => None,
        }
    }

    pub fn units(&self) -> Option<Vec<RingElem>> {
        self.elements().map(|v| v.into_iter().filter(|x| !x.is_zero()).collect())
    }

    /// A primitive element of a finite field's multiplicative group.
    pub fn primitive_element(&self) -> Option<RingElem> {
        self.field_spec().map(|f| RingElem { ring: *self, repr: Repr::Gf(f.primitive_element()) })
    }

    /// Random element: uniform in GF(q); for 𝔽_p[t] and 𝔽_p(t), numerator and
    /// denominator have degree at most `max_degree`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, max_degree: usize) -> RingElem {
        let p = self.characteristic();
        let rand_poly = |rng: &mut R, monic: bool| {
            let deg = rng.gen_range(0..=max_degree);
            let mut c: Vec<u32> = (0..=deg).map(|_| rng.gen_range(0..p)).collect();
            if monic {
                c[deg] = 1;
            }
            FpPoly::from_coeffs(c, p)
        };
        match self {
            Ring::Gf(f) => RingElem { ring: *self, repr: Repr::Gf(rng.gen_range(0..f.order())) },
            Ring::Poly { .. } => RingElem { ring: *self, repr: Repr::Poly(rand_poly(rng, false)) },
            Ring::RatFunc { p } => {
                let num = rand_poly(rng, false);
                let den = rand_poly(rng, true);
                RingElem { ring: *self, repr: reduce_fraction(&num, &den, *p) }
            }
        }
    }

    /// Random unit.
    pub fn sample_unit<R: Rng + ?Sized>(&self, rng: &mut R, max_degree: usize) -> RingElem {
        match self {
            Ring::Poly { p } => self.from_int(rng.gen_range(1..*p) as i64),
            _ => loop {
                let x = self.sample(rng, max_degree);
                if !x.is_zero() {
                    return x;
                }
            },
        }
    }
}

fn reduce_fraction(num: &FpPoly, den: &FpPoly, p: u32) -> Repr {
    if num.is_zero() {
        return Repr::Rat(FpPoly::zero(), FpPoly::constant(1, p));
    }
    let g = num.gcd(den, p);
    let (n, _) = num.divrem(&g, p);
    let (d, _) = den.divrem(&g, p);
    let lead = d.leading();
    let inv = poly::inv_mod(lead, p);
    Repr::Rat(n.scale(inv, p), d.scale(inv, p))
}

impl RingElem {
    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Gf(v) => *v == 0,
            Repr::Poly(f) => f.is_zero(),
            Repr::Rat(n, _) => n.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Gf(v) => *v == 1,
            Repr::Poly(f) => f.is_one(),
            Repr::Rat(n, d) => n.is_one() && d.is_one(),
        }
    }

    /// Packed value of a GF element.
    pub fn gf_value(&self) -> Option<u32> {
        match self.repr {
            Repr::Gf(v) => Some(v),
            _ => None,
        }
    }

    /// Numerator and denominator (denominator 1 outside 𝔽_p(t); GF elements
    /// are given by their canonical polynomial representative).
    pub fn as_fraction(&self) -> (FpPoly, FpPoly) {
        let p = self.ring.characteristic();
        match (&self.repr, self.ring) {
            (Repr::Gf(v), Ring::Gf(f)) => (f.to_poly(*v), FpPoly::constant(1, p)),
            (Repr::Poly(f), _) => (f.clone(), FpPoly::constant(1, p)),
            (Repr::Rat(n, d), _) => (n.clone(), d.clone()),
            _ => unreachable!(),
        }
    }

    fn check(&self, other: &RingElem) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()))
        }
    }

    fn with(&self, repr: Repr) -> RingElem {
        RingElem { ring: self.ring, repr }
    }

    pub fn try_add(&self, other: &RingElem) -> Result<RingElem> {
        self.check(other)?;
        let p = self.ring.characteristic();
        let repr = match (&self.repr, &other.repr, self.ring) {
            (Repr::Gf(a), Repr::Gf(b), Ring::Gf(f)) => Repr::Gf(f.add(*a, *b)),
            (Repr::Poly(a), Repr::Poly(b), _) => Repr::Poly(a.add(b, p)),
            (Repr::Rat(an, ad), Repr::Rat(bn, bd), _) => {
                if ad == bd {
                    reduce_fraction(&an.add(bn, p), ad, p)
                } else {
                    let n = an.mul(bd, p).add(&bn.mul(ad, p), p);
                    reduce_fraction(&n, &ad.mul(bd, p), p)
                }
            }
            _ => unreachable!("payload does not match ring tag"),
        };
        Ok(self.with(repr))
    }

    pub fn try_sub(&self, other: &RingElem) -> Result<RingElem> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &RingElem) -> Result<RingElem> {
        self.check(other)?;
        let p = self.ring.characteristic();
        let repr = match (&self.repr, &other.repr, self.ring) {
            (Repr::Gf(a), Repr::Gf(b), Ring::Gf(f)) => Repr::Gf(f.mul(*a, *b)),
            (Repr::Poly(a), Repr::Poly(b), _) => Repr::Poly(a.mul(b, p)),
            (Repr::Rat(an, ad), Repr::Rat(bn, bd), _) => {
                if an.is_zero() || bn.is_zero() {
                    return Ok(self.ring.zero());
                }
                reduce_fraction(&an.mul(bn, p), &ad.mul(bd, p), p)
            }
            _ => unreachable!("payload does not match ring tag"),
        };
        Ok(self.with(repr))
    }

    pub fn neg(&self) -> RingElem {
        let p = self.ring.characteristic();
        let repr = match (&self.repr, self.ring) {
            (Repr::Gf(a), Ring::Gf(f)) => Repr::Gf(f.neg(*a)),
            (Repr::Poly(a), _) => Repr::Poly(a.neg(p)),
            (Repr::Rat(n, d), _) => Repr::Rat(n.neg(p), d.clone()),
            _ => unreachable!(),
        };
        self.with(repr)
    }

    pub fn is_unit(&self) -> bool {
        match &self.repr {
            Repr::Poly(f) => f.degree() == Some(0),
            _ => !self.is_zero(),
        }
    }

    pub fn inv(&self) -> Result<RingElem> {
        if !self.is_unit() {
            return Err(Error::NonUnit(self.to_string()));
        }
        let p = self.ring.characteristic();
        let repr = match (&self.repr, self.ring) {
            (Repr::Gf(a), Ring::Gf(f)) => Repr::Gf(f.inv(*a).expect("nonzero")),
            (Repr::Poly(a), _) => Repr::Poly(FpPoly::constant(poly::inv_mod(a.leading(), p), p)),
            (Repr::Rat(n, d), _) => reduce_fraction(d, n, p),
            _ => unreachable!(),
        };
        Ok(self.with(repr))
    }

    pub fn try_div(&self, other: &RingElem) -> Result<RingElem> {
        self.check(other)?;
        self.try_mul(&other.inv()?)
    }

    /// Exact quotient; in 𝔽_p[t] this succeeds whenever `other` divides `self`.
    pub fn exact_div(&self, other: &RingElem) -> Result<RingElem> {
        self.check(other)?;
        match (&self.repr, &other.repr) {
            (Repr::Poly(a), Repr::Poly(b)) => {
                if b.is_zero() {
                    return Err(Error::NonUnit("0".into()));
                }
                a.exact_div(b, self.ring.characteristic())
                    .map(|q| self.with(Repr::Poly(q)))
                    .ok_or_else(|| Error::InexactDivision(self.to_string(), other.to_string()))
            }
            _ => self.try_div(other),
        }
    }

    /// Integer power; negative exponents need a unit.
    pub fn pow(&self, e: i64) -> Result<RingElem> {
        if let (Repr::Gf(a), Ring::Gf(f)) = (&self.repr, self.ring) {
            return f.pow(*a, e).map(|v| self.with(Repr::Gf(v))).ok_or_else(|| Error::NonUnit(self.to_string()));
        }
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.ring.one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        Ok(acc)
    }

    /// x ↦ x^p.
    pub fn frobenius(&self) -> RingElem {
        let p = self.ring.characteristic();
        match (&self.repr, self.ring) {
            (Repr::Gf(a), Ring::Gf(f)) => self.with(Repr::Gf(f.pow(*a, p as i64).expect("nonnegative power"))),
            (Repr::Poly(a), _) => self.with(Repr::Poly(a.frobenius(p))),
            // gcd(n^p, d^p) = gcd(n, d)^p = 1 and d^p stays monic
            (Repr::Rat(n, d), _) => self.with(Repr::Rat(n.frobenius(p), d.frobenius(p))),
            _ => unreachable!(),
        }
    }

    /// y with y^p = x.
    pub fn p_th_root(&self) -> Result<RingElem> {
        let p = self.ring.characteristic();
        let fail = || Error::NotAPthPower { elem: self.to_string(), p };
        match (&self.repr, self.ring) {
            (Repr::Gf(a), Ring::Gf(f)) => {
                let k = f.degree();
                // Frobenius has order k, so x^(p^(k-1)) is the root
                let mut v = *a;
                for _ in 0..k.saturating_sub(1) {
                    v = f.pow(v, p as i64).expect("nonnegative power");
                }
                Ok(self.with(Repr::Gf(v)))
            }
            (Repr::Poly(a), _) => a.p_th_root(p).map(|r| self.with(Repr::Poly(r))).ok_or_else(fail),
            (Repr::Rat(n, d), _) => {
                let rn = n.p_th_root(p).ok_or_else(fail)?;
                let rd = d.p_th_root(p).ok_or_else(fail)?;
                Ok(self.with(Repr::Rat(rn, rd)))
            }
            _ => unreachable!(),
        }
    }

    /// For GF(p^k): whether the element lies in the prime field.
    pub fn in_prime_field(&self) -> bool {
        match (&self.repr, self.ring) {
            (Repr::Gf(a), Ring::Gf(f)) => f.in_prime_field(*a),
            (Repr::Poly(a), _) => a.degree().unwrap_or(0) == 0,
            (Repr::Rat(n, d), _) => n.degree().unwrap_or(0) == 0 && d.degree() == Some(0),
            _ => unreachable!(),
        }
    }

    /// Value of an element of the prime field as an integer in 0..p.
    pub fn prime_field_value(&self) -> Option<u32> {
        if !self.in_prime_field() {
            return None;
        }
        Some(match (&self.repr, self.ring) {
            (Repr::Gf(a), Ring::Gf(_)) => *a,
            (Repr::Poly(a), _) => a.coeff(0),
            (Repr::Rat(n, _), _) => n.coeff(0),
            _ => unreachable!(),
        })
    }

    /// Appends an injective byte encoding (injective among elements of one ring).
    pub fn encode_into(&self, buf: &mut Vec<u8>) {
        match (&self.repr, self.ring) {
            (Repr::Gf(v), Ring::Gf(f)) => {
                if f.order() <= 256 {
                    buf.push(*v as u8);
                } else {
                    buf.extend_from_slice(&(*v as u16).to_le_bytes());
                }
            }
            (Repr::Poly(a), _) => encode_poly(a, buf),
            (Repr::Rat(n, d), _) => {
                encode_poly(n, buf);
                encode_poly(d, buf);
            }
            _ => unreachable!(),
        }
    }

    /// Inverse of [`RingElem::encode_into`]; returns the element and the bytes consumed.
    pub fn decode(ring: Ring, buf: &[u8]) -> Result<(RingElem, usize)> {
        let short = || Error::Cache("truncated element".into());
        match ring {
            Ring::Gf(f) => {
                if f.order() <= 256 {
                    let v = *buf.first().ok_or_else(short)? as u32;
                    Ok((RingElem { ring, repr: Repr::Gf(v) }, 1))
                } else {
                    let b: [u8; 2] = buf.get(..2).ok_or_else(short)?.try_into().unwrap();
                    Ok((RingElem { ring, repr: Repr::Gf(u16::from_le_bytes(b) as u32) }, 2))
                }
            }
            Ring::Poly { p } => {
                let (a, n) = decode_poly(buf, p)?;
                Ok((RingElem { ring, repr: Repr::Poly(a) }, n))
            }
            Ring::RatFunc { p } => {
                let (a, n) = decode_poly(buf, p)?;
                let (b, m) = decode_poly(&buf[n..], p)?;
                Ok((RingElem { ring, repr: Repr::Rat(a, b) }, n + m))
            }
        }
    }
}

fn encode_poly(f: &FpPoly, buf: &mut Vec<u8>) {
    let c = f.coeffs();
    buf.extend_from_slice(&(c.len() as u32).to_le_bytes());
    for &x in c {
        buf.extend_from_slice(&(x as u16).to_le_bytes());
    }
}

fn decode_poly(buf: &[u8], p: u32) -> Result<(FpPoly, usize)> {
    let short = || Error::Cache("truncated polynomial".into());
    let len = u32::from_le_bytes(buf.get(..4).ok_or_else(short)?.try_into().unwrap()) as usize;
    let mut c = Vec::with_capacity(len);
    for i in 0..len {
        let b = buf.get(4 + 2 * i..6 + 2 * i).ok_or_else(short)?;
        c.push(u16::from_le_bytes([b[0], b[1]]) as u32);
    }
    Ok((FpPoly::from_coeffs(c, p), 4 + 2 * len))
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $try:ident, $what:literal) => {
        impl $tr<&RingElem> for &RingElem {
            type Output = RingElem;
            fn $method(self, rhs: &RingElem) -> RingElem {
                self.$try(rhs).expect(concat!("ring mismatch in ", $what))
            }
        }
        impl $tr<RingElem> for RingElem {
            type Output = RingElem;
            fn $method(self, rhs: RingElem) -> RingElem {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&RingElem> for RingElem {
            type Output = RingElem;
            fn $method(self, rhs: &RingElem) -> RingElem {
                (&self).$method(rhs)
            }
        }
        impl $tr<RingElem> for &RingElem {
            type Output = RingElem;
            fn $method(self, rhs: RingElem) -> RingElem {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add, "addition");
forward_binop!(Sub, sub, try_sub, "subtraction");
forward_binop!(Mul, mul, try_mul, "multiplication");

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem::neg(self)
    }
}

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem::neg(&self)
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&parse::render(self))
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&parse::render_tag(self))
    }
}

impl std::str::FromStr for Ring {
    type Err = Error;
    fn from_str(s: &str) -> Result<Ring> {
        parse::parse_tag(s)
    }
}

impl Ring {
    /// Parses the element syntax: polynomials in `x` for GF, `num/den` in `t`
    /// for 𝔽_p(t).
    pub fn parse(&self, s: &str) -> Result<RingElem> {
        parse::parse_elem(self, s)
    }
}

/// A Tits endomorphism τ with τ∘τ = Frobenius.
///
/// Only GF(p^(2m+1)) carries one: τ(x) = x^(p^(m+1)).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TitsEndo {
    ring: Ring,
    frob_steps: u32,
}

impl TitsEndo {
    /// Builds τ for the ring and verifies τ² = φ on every element.
    pub fn new(ring: Ring) -> Result<TitsEndo> {
        let Ring::Gf(f) = ring else {
            return Err(Error::NoTitsEndo(ring.to_string()));
        };
        let k = f.degree();
        if k % 2 == 0 {
            return Err(Error::NoTitsEndo(ring.to_string()));
        }
        let tau = TitsEndo { ring, frob_steps: k.div_ceil(2) };
        for x in ring.elements().expect("finite field") {
            if tau.apply(&tau.apply(&x)) != x.frobenius() {
                return Err(Error::NoTitsEndo(ring.to_string()));
            }
        }
        Ok(tau)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Exponent p^(m+1) of τ.
    pub fn exponent(&self) -> u64 {
        (self.ring.characteristic() as u64).pow(self.frob_steps)
    }

    pub fn apply(&self, x: &RingElem) -> RingElem {
        (0..self.frob_steps).fold(x.clone(), |acc, _| acc.frobenius())
    }

    /// x^plain · τ(x)^twisted, the value of x^(plain + twisted·τ).
    pub fn power(&self, x: &RingElem, plain: i64, twisted: i64) -> Result<RingElem> {
        Ok(x.pow(plain)? * self.apply(x).pow(twisted)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf8() -> Ring {
        Ring::gf(2, 3).unwrap()
    }

    #[test]
    fn gf8_inverse_of_generator() {
        let r = gf8();
        let x = r.generator();
        let inv = x.inv().unwrap();
        assert_eq!(inv, r.parse("x^2+1").unwrap());
        assert!((&x * &inv).is_one());
    }

    #[test]
    fn characteristic_two_addition() {
        let r = gf8();
        assert!((r.one() + r.one()).is_zero());
        let f = Ring::ratfunc(2).unwrap();
        assert!((f.one() + f.one()).is_zero());
    }

    #[test]
    fn ratfunc_inverse_of_t() {
        let f = Ring::ratfunc(2).unwrap();
        let t = f.generator();
        assert_eq!(t.inv().unwrap().to_string(), "1/t");
    }

    #[test]
    fn mismatched_rings_error() {
        let a = gf8().one();
        let b = Ring::gf(2, 5).unwrap().one();
        assert!(matches!(a.try_add(&b), Err(Error::RingMismatch(..))));
    }

    #[test]
    fn poly_non_unit_inverse_fails() {
        let r = Ring::poly(2).unwrap();
        assert!(matches!(r.generator().inv(), Err(Error::NonUnit(_))));
        assert!(r.one().inv().unwrap().is_one());
    }

    #[test]
    fn frobenius_examples() {
        let r = gf8();
        let x = r.generator();
        assert_eq!(x.frobenius(), x.pow(2).unwrap());
        let f = Ring::ratfunc(2).unwrap();
        let t1 = f.generator() + f.one();
        assert_eq!(t1.frobenius(), f.parse("t^2+1").unwrap());
        let g27 = Ring::gf(3, 3).unwrap();
        let g = g27.primitive_element().unwrap();
        assert_eq!(g.frobenius(), g.pow(3).unwrap());
    }

    #[test]
    fn tits_on_gf8() {
        let r = gf8();
        let tau = TitsEndo::new(r).unwrap();
        assert_eq!(tau.exponent(), 4);
        let x = r.generator();
        assert_eq!(tau.apply(&x), r.parse("x^2+x").unwrap());
        let g2 = Ring::gf(2, 1).unwrap();
        let t2 = TitsEndo::new(g2).unwrap();
        assert_eq!(t2.apply(&g2.one()), g2.one());
        let g27 = Ring::gf(3, 3).unwrap();
        assert!(TitsEndo::new(g27).unwrap().apply(&g27.one()).is_one());
    }

    #[test]
    fn tits_absent_where_expected() {
        assert!(matches!(TitsEndo::new(Ring::gf(2, 2).unwrap()), Err(Error::NoTitsEndo(_))));
        assert!(matches!(TitsEndo::new(Ring::ratfunc(2).unwrap()), Err(Error::NoTitsEndo(_))));
        assert!(matches!(TitsEndo::new(Ring::poly(3).unwrap()), Err(Error::NoTitsEndo(_))));
    }

    #[test]
    fn p_th_root_examples() {
        let f = Ring::ratfunc(2).unwrap();
        assert_eq!(f.parse("t^2+1").unwrap().p_th_root().unwrap(), f.parse("t+1").unwrap());
        assert!(matches!(f.generator().p_th_root(), Err(Error::NotAPthPower { .. })));
        let r = gf8();
        for x in r.elements().unwrap() {
            assert_eq!(x.p_th_root().unwrap(), x.pow(4).unwrap());
        }
    }

    #[test]
    fn sampling_is_deterministic_and_bounded() {
        let r = gf8();
        let a = r.sample(&mut ChaCha8Rng::seed_from_u64(0), 0);
        let b = r.sample(&mut ChaCha8Rng::seed_from_u64(0), 0);
        assert_eq!(a, b);
        let g2 = Ring::gf(2, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let v = g2.sample(&mut rng, 0).gf_value().unwrap();
            assert!(v < 2);
        }
        let f = Ring::ratfunc(2).unwrap();
        for _ in 0..50 {
            let (n, d) = f.sample(&mut rng, 2).as_fraction();
            assert!(n.degree().unwrap_or(0) <= 2 && d.degree().unwrap() <= 2);
        }
    }

    #[test]
    fn encoding_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for ring in [gf8(), Ring::gf(3, 5).unwrap(), Ring::ratfunc(3).unwrap(), Ring::poly(2).unwrap()] {
            for _ in 0..20 {
                let x = ring.sample(&mut rng, 3);
                let mut buf = Vec::new();
                x.encode_into(&mut buf);
                let (y, used) = RingElem::decode(ring, &buf).unwrap();
                assert_eq!(used, buf.len());
                assert_eq!(x, y);
            }
        }
    }
}
