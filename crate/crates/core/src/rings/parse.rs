//! Text syntax for rings and elements.
//!
//! Ring tags: `gf8` (Conway modulus), `gf8[x^3+x^2+1]` (explicit modulus),
//! `f2[t]` (polynomials), `f2t` (rational functions).
//! Elements: polynomials in `x` for GF, in `t` for 𝔽_p[t], and `num/den`
//! for 𝔽_p(t), e.g. `(t^2+1)/t`. Printing is canonical and parses back to
//! the same element.

use super::poly::FpPoly;
use super::{FieldSpec, Repr, Ring, RingElem};
use crate::error::{Error, Result};

pub(crate) fn render_poly(f: &FpPoly, var: char) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut terms = Vec::new();
    for (d, &c) in f.coeffs().iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match d {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{d}"),
        };
        terms.push(match (c, d) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}{mono}"),
        });
    }
    terms.join("+")
}

fn term_count(f: &FpPoly) -> usize {
    f.coeffs().iter().filter(|&&c| c != 0).count()
}

pub(crate) fn render(x: &RingElem) -> String {
    match (&x.repr, x.ring) {
        (Repr::Gf(v), Ring::Gf(f)) => render_poly(&f.to_poly(*v), 'x'),
        (Repr::Poly(a), _) => render_poly(a, 't'),
        (Repr::Rat(n, d), _) => {
            if d.is_one() {
                return render_poly(n, 't');
            }
            let wrap = |f: &FpPoly| {
                let s = render_poly(f, 't');
                if term_count(f) > 1 {
                    format!("({s})")
                } else {
                    s
                }
            };
            format!("{}/{}", wrap(n), wrap(d))
        }
        _ => unreachable!(),
    }
}

pub(crate) fn render_tag(r: &Ring) -> String {
    match r {
        Ring::Gf(f) if f.is_conway() => format!("gf{}", f.order()),
        Ring::Gf(f) => format!("gf{}[{}]", f.order(), render_poly(f.modulus(), 'x')),
        Ring::Poly { p } => format!("f{p}[t]"),
        Ring::RatFunc { p } => format!("f{p}t"),
    }
}

pub(crate) fn parse_tag(s: &str) -> Result<Ring> {
    let bad = || Error::Parse(format!("unknown ring tag {s:?}"));
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("gf") {
        let (q_str, modulus) = match rest.split_once('[') {
            Some((q, m)) => (q, Some(m.strip_suffix(']').ok_or_else(bad)?)),
            None => (rest, None),
        };
        let q: u32 = q_str.parse().map_err(|_| bad())?;
        let ring = Ring::gf_order(q)?;
        return match modulus {
            None => Ok(ring),
            Some(m) => {
                let p = ring.characteristic();
                let f = parse_poly(m, 'x', p)?;
                let spec = FieldSpec::new(p, f.coeffs())?;
                if spec.order() != q {
                    return Err(bad());
                }
                Ok(Ring::Gf(spec))
            }
        };
    }
    if let Some(rest) = s.strip_prefix('f') {
        if let Some(p) = rest.strip_suffix("[t]") {
            return Ring::poly(p.parse().map_err(|_| bad())?);
        }
        if let Some(p) = rest.strip_suffix('t') {
            return Ring::ratfunc(p.parse().map_err(|_| bad())?);
        }
    }
    Err(bad())
}

fn strip_parens(s: &str) -> &str {
    let s = s.trim();
    s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s)
}

pub(crate) fn parse_poly(s: &str, var: char, p: u32) -> Result<FpPoly> {
    let s: String = strip_parens(s).chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut acc = FpPoly::zero();
    let mut sign_neg = false;
    let mut rest = s.as_str();
    if let Some(r) = rest.strip_prefix('-') {
        sign_neg = true;
        rest = r;
    } else if let Some(r) = rest.strip_prefix('+') {
        rest = r;
    }
    loop {
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let term = parse_term(&rest[..end], var, p)?;
        acc = if sign_neg { acc.sub(&term, p) } else { acc.add(&term, p) };
        if end == rest.len() {
            break;
        }
        sign_neg = rest.as_bytes()[end] == b'-';
        rest = &rest[end + 1..];
    }
    Ok(acc)
}

fn parse_term(t: &str, var: char, p: u32) -> Result<FpPoly> {
    let bad = || Error::Parse(format!("bad term {t:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    let digits_end = t.find(|c: char| !c.is_ascii_digit()).unwrap_or(t.len());
    let coeff: u64 = if digits_end == 0 { 1 } else { t[..digits_end].parse().map_err(|_| bad())? };
    let mut rest = &t[digits_end..];
    if rest.is_empty() {
        return Ok(FpPoly::constant((coeff % p as u64) as u32, p));
    }
    if let Some(r) = rest.strip_prefix('*') {
        rest = r;
    }
    let rest = rest.strip_prefix(var).ok_or_else(bad)?;
    let deg: usize = match rest.strip_prefix('^') {
        Some(e) => e.parse().map_err(|_| bad())?,
        None if rest.is_empty() => 1,
        None => return Err(bad()),
    };
    Ok(FpPoly::monomial((coeff % p as u64) as u32, deg, p))
}

pub(crate) fn parse_elem(ring: &Ring, s: &str) -> Result<RingElem> {
    let p = ring.characteristic();
    match ring {
        Ring::Gf(_) => Ok(ring.from_poly(&parse_poly(s, 'x', p)?)),
        Ring::Poly { .. } => Ok(ring.from_poly(&parse_poly(s, 't', p)?)),
        Ring::RatFunc { .. } => {
            let (n, d) = match s.split_once('/') {
                Some((n, d)) => (parse_poly(n, 't', p)?, parse_poly(d, 't', p)?),
                None => (parse_poly(s, 't', p)?, FpPoly::constant(1, p)),
            };
            ring.fraction(&n, &d)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn canonical_strings_round_trip() {
        let gf8 = Ring::gf(2, 3).unwrap();
        for s in ["0", "1", "x", "x^2+x+1", "x^2+1"] {
            assert_eq!(gf8.parse(s).unwrap().to_string(), s);
        }
        let gf27 = Ring::gf(3, 3).unwrap();
        for s in ["2x^2+x+2", "2", "x^2"] {
            assert_eq!(gf27.parse(s).unwrap().to_string(), s);
        }
        let f2t = Ring::ratfunc(2).unwrap();
        for s in ["1/t", "(t^2+1)/t", "t^3+t", "t/(t^2+t+1)"] {
            assert_eq!(f2t.parse(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn lenient_input_normalises() {
        let gf8 = Ring::gf(2, 3).unwrap();
        assert_eq!(gf8.parse("x^3").unwrap().to_string(), "x+1");
        assert_eq!(gf8.parse("1*x^2 + x").unwrap().to_string(), "x^2+x");
        let f3t = Ring::ratfunc(3).unwrap();
        assert_eq!(f3t.parse("-t").unwrap().to_string(), "2t");
        assert_eq!(f3t.parse("(t^2-1)/(t-1)").unwrap().to_string(), "t+1");
    }

    #[test]
    fn tags_round_trip() {
        for tag in ["gf2", "gf8", "gf27", "gf243", "f2t", "f3t", "f2[t]", "gf8[x^3+x^2+1]"] {
            let r: Ring = tag.parse().unwrap();
            assert_eq!(r.to_string(), tag);
        }
        assert!("gf6".parse::<Ring>().is_err());
        assert!("gf4[x^2+1]".parse::<Ring>().is_err());
    }

    proptest! {
        #[test]
        fn printed_elements_parse_back(seed in any::<u64>(), which in 0usize..4) {
            let ring = [Ring::gf(2, 5).unwrap(), Ring::gf(3, 5).unwrap(), Ring::ratfunc(2).unwrap(), Ring::poly(3).unwrap()][which];
            let x = ring.sample(&mut ChaCha8Rng::seed_from_u64(seed), 4);
            let s = x.to_string();
            let y = ring.parse(&s).unwrap();
            prop_assert_eq!(&y, &x);
            prop_assert_eq!(y.to_string(), s);
        }
    }
}
