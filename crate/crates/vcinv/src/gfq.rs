//! Arithmetic in small finite fields `F_q`, `q = p^e <= 256`.
//!
//! A field is described by a [`FieldSpec`]: the characteristic `p`, the
//! extension degree `e`, and a monic irreducible modulus of degree `e` over
//! `F_p`.  The modulus is not configurable: construction always picks the
//! monic irreducible polynomial whose coefficient list, read as a base-`p`
//! integer, is smallest.  This keeps every run of the library byte-for-byte
//! reproducible without external tables.
//!
//! Elements are stored as a canonical code in `0..q` (the base-`p` value of
//! the coefficient vector of the residue polynomial).  An element carries a
//! copy of its `FieldSpec`, so mixing elements of different fields is caught
//! at run time.

use crate::error::{Error, Result};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Largest supported field size.
pub const FIELD_SIZE_BOUND: u64 = 256;

/// Largest extension degree compatible with the size bound (2^8 = 256).
const MAX_E: usize = 8;

/// A small finite field `F_{p^e}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u16,
    e: u8,
    q: u16,
    /// Coefficients of the monic modulus, `modulus[i]` multiplying `g^i`;
    /// entries above index `e` are zero, `modulus[e] == 1`.
    modulus: [u8; MAX_E + 1],
}

/// An element of a [`FieldSpec`], stored as its canonical code in `0..q`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElem {
    spec: FieldSpec,
    code: u16,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// ---- polynomial helpers over F_p (little-endian coefficient slices) ----

fn poly_deg(f: &[u8]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

/// Remainder of `f` modulo monic `g`, both over `F_p`.
fn poly_rem(f: &[u8], g: &[u8], p: u16) -> Vec<u8> {
    let gd = poly_deg(g).expect("divisor must be nonzero");
    let mut r: Vec<u16> = f.iter().map(|&c| c as u16).collect();
    let mut d = poly_deg_u16(&r);
    while let Some(rd) = d {
        if rd < gd {
            break;
        }
        let lead = r[rd];
        for k in 0..=gd {
            let sub = (lead * g[k] as u16) % p;
            r[rd - gd + k] = (r[rd - gd + k] + p * p - sub) % p;
        }
        d = poly_deg_u16(&r);
    }
    r.iter().map(|&c| c as u8).collect()
}

fn poly_deg_u16(f: &[u16]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

fn is_irreducible(f: &[u8], p: u16) -> bool {
    let e = poly_deg(f).unwrap();
    if e == 0 {
        return false;
    }
    // A reducible monic polynomial of degree e has a monic factor of degree
    // at most e/2; trial-divide by every monic polynomial of those degrees.
    for d in 1..=e / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut g = vec![0u8; d + 1];
            let mut c = code;
            for gi in g.iter_mut().take(d) {
                *gi = (c % p as u64) as u8;
                c /= p as u64;
            }
            g[d] = 1;
            if poly_deg(&poly_rem(f, &g, p)).is_none() {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    /// Builds `F_{p^e}` with the canonical modulus, enforcing the default
    /// size bound of [`FIELD_SIZE_BOUND`].
    pub fn new(p: u64, e: u32) -> Result<FieldSpec> {
        FieldSpec::with_bound(p, e, FIELD_SIZE_BOUND)
    }

    /// Builds `F_{p^e}` enforcing a caller-chosen size bound (still capped at
    /// [`FIELD_SIZE_BOUND`], which the element representation requires).
    pub fn with_bound(p: u64, e: u32, bound: u64) -> Result<FieldSpec> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::InvalidArgument("extension degree must be >= 1".into()));
        }
        let bound = bound.min(FIELD_SIZE_BOUND);
        let q = (p as u128).checked_pow(e).ok_or(Error::FieldTooLarge {
            q: u64::MAX,
            bound,
        })?;
        if q > bound as u128 {
            return Err(Error::FieldTooLarge { q: q as u64, bound });
        }
        let (p, e, q) = (p as u16, e as u8, q as u16);

        // Smallest monic irreducible of degree e: scan coefficient lists in
        // base-p order.  For e = 1 this yields the polynomial x.
        let ed = e as usize;
        let mut modulus = [0u8; MAX_E + 1];
        let mut found = false;
        'scan: for code in 0..q {
            let mut f = vec![0u8; ed + 1];
            let mut c = code;
            for fi in f.iter_mut().take(ed) {
                *fi = (c % p) as u8;
                c /= p;
            }
            f[ed] = 1;
            if is_irreducible(&f, p) {
                modulus[..=ed].copy_from_slice(&f);
                found = true;
                break 'scan;
            }
        }
        debug_assert!(found, "an irreducible polynomial of every degree exists");
        Ok(FieldSpec { p, e, q, modulus })
    }

    pub fn p(&self) -> u16 {
        self.p
    }

    pub fn e(&self) -> u8 {
        self.e
    }

    pub fn q(&self) -> u16 {
        self.q
    }

    /// The modulus rendered in the element syntax, e.g. `g^2+g+1` for `F_4`.
    pub fn modulus_string(&self) -> String {
        let coeffs: Vec<u8> = self.modulus[..=self.e as usize].to_vec();
        render_poly_in_g(&coeffs)
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem { spec: *self, code: 0 }
    }

    pub fn one(&self) -> FieldElem {
        FieldElem { spec: *self, code: 1 }
    }

    /// The residue class of `g` (the adjoined generator); requires `e >= 2`.
    pub fn gen(&self) -> FieldElem {
        assert!(self.e >= 2, "prime fields have no adjoined generator");
        FieldElem { spec: *self, code: self.p }
    }

    /// Embeds an integer via the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElem {
        let p = self.p as i64;
        let code = v.rem_euclid(p) as u16;
        FieldElem { spec: *self, code }
    }

    /// Builds an element from base-`p` digits, least significant first.
    pub fn from_coeffs(&self, coeffs: &[u8]) -> Result<FieldElem> {
        if coeffs.len() > self.e as usize {
            return Err(Error::BadElement(format!(
                "{} coefficients for extension degree {}",
                coeffs.len(),
                self.e
            )));
        }
        let mut code = 0u32;
        for (i, &c) in coeffs.iter().enumerate() {
            if c as u16 >= self.p {
                return Err(Error::BadElement(format!("coefficient {c} out of range")));
            }
            code += c as u32 * (self.p as u32).pow(i as u32);
        }
        Ok(FieldElem { spec: *self, code: code as u16 })
    }

    /// Element with the given canonical code.
    pub fn from_code(&self, code: u16) -> Result<FieldElem> {
        if code >= self.q {
            return Err(Error::BadElement(format!("code {code} out of range")));
        }
        Ok(FieldElem { spec: *self, code })
    }

    /// All `q` elements, zero first, in canonical code order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.q).map(move |code| FieldElem { spec: *self, code })
    }

    /// The smallest-code generator of the multiplicative group.
    pub fn primitive_element(&self) -> FieldElem {
        let order = (self.q - 1) as u64;
        let mut prime_factors = Vec::new();
        let mut m = order;
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                prime_factors.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            prime_factors.push(m);
        }
        for code in 1..self.q {
            let a = FieldElem { spec: *self, code };
            if prime_factors.iter().all(|&r| !a.pow(order / r).is_one()) {
                return a;
            }
        }
        unreachable!("F_q^* is cyclic");
    }

    /// Parses the canonical element syntax (`0`, `2`, `g`, `2g+1`, `g^2+g`).
    pub fn parse_elem(&self, s: &str) -> Result<FieldElem> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty field element".into()));
        }
        let mut digits = vec![0u16; self.e as usize];
        for term in s.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(Error::Parse(format!("bad field element '{s}'")));
            }
            let (coeff_str, deg) = match term.find('g') {
                None => (term, 0usize),
                Some(pos) => {
                    let deg = match term[pos + 1..].strip_prefix('^') {
                        None if term[pos + 1..].is_empty() => 1,
                        None => {
                            return Err(Error::Parse(format!("bad term '{term}'")));
                        }
                        Some(d) => d
                            .parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad exponent in '{term}'")))?,
                    };
                    (&term[..pos], deg)
                }
            };
            let coeff: u16 = if coeff_str.is_empty() {
                1
            } else {
                coeff_str
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient in '{term}'")))?
            };
            if deg >= self.e as usize {
                return Err(Error::Parse(format!(
                    "exponent {deg} too large for extension degree {}",
                    self.e
                )));
            }
            digits[deg] = (digits[deg] + coeff) % self.p;
        }
        let coeffs: Vec<u8> = digits.iter().map(|&c| c as u8).collect();
        self.from_coeffs(&coeffs)
    }

    fn digits(&self, code: u16) -> [u16; MAX_E] {
        let mut out = [0u16; MAX_E];
        let mut c = code;
        for o in out.iter_mut().take(self.e as usize) {
            *o = c % self.p;
            c /= self.p;
        }
        out
    }

    fn from_digits(&self, digits: &[u16; MAX_E]) -> u16 {
        let mut code = 0u32;
        for i in (0..self.e as usize).rev() {
            code = code * self.p as u32 + digits[i] as u32;
        }
        code as u16
    }
}

fn render_poly_in_g(coeffs: &[u8]) -> String {
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let part = match (i, c) {
            (0, _) => format!("{c}"),
            (1, 1) => "g".to_string(),
            (1, _) => format!("{c}g"),
            (_, 1) => format!("g^{i}"),
            (_, _) => format!("{c}g^{i}"),
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

impl FieldElem {
    pub fn field(&self) -> FieldSpec {
        self.spec
    }

    pub fn code(&self) -> u16 {
        self.code
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    pub fn is_one(&self) -> bool {
        self.code == 1
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(self.spec.q as u64 - 2))
    }

    /// `self / rhs`; errors on a zero divisor.
    pub fn try_div(&self, rhs: FieldElem) -> Result<FieldElem> {
        Ok(*self * rhs.inv()?)
    }

    pub fn pow(&self, mut k: u64) -> FieldElem {
        let mut base = *self;
        let mut acc = self.spec.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            k >>= 1;
        }
        acc
    }

    /// The `p`-power Frobenius `a -> a^p`.
    pub fn frobenius(&self) -> FieldElem {
        self.pow(self.spec.p as u64)
    }

    fn assert_same(&self, rhs: &FieldElem) {
        assert!(
            self.spec == rhs.spec,
            "mixed fields: F_{} vs F_{}",
            self.spec.q,
            rhs.spec.q
        );
    }
}

impl Add for FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: FieldElem) -> FieldElem {
        self.assert_same(&rhs);
        let (p, a, b) = (self.spec.p, self.spec.digits(self.code), self.spec.digits(rhs.code));
        let mut out = [0u16; MAX_E];
        for i in 0..self.spec.e as usize {
            out[i] = (a[i] + b[i]) % p;
        }
        FieldElem { spec: self.spec, code: self.spec.from_digits(&out) }
    }
}

impl Sub for FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: FieldElem) -> FieldElem {
        self + (-rhs)
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        let (p, a) = (self.spec.p, self.spec.digits(self.code));
        let mut out = [0u16; MAX_E];
        for i in 0..self.spec.e as usize {
            out[i] = (p - a[i]) % p;
        }
        FieldElem { spec: self.spec, code: self.spec.from_digits(&out) }
    }
}

impl Mul for FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: FieldElem) -> FieldElem {
        self.assert_same(&rhs);
        let spec = self.spec;
        let (p, e) = (spec.p as u32, spec.e as usize);
        let a = spec.digits(self.code);
        let b = spec.digits(rhs.code);
        let mut prod = [0u32; 2 * MAX_E];
        for i in 0..e {
            if a[i] == 0 {
                continue;
            }
            for j in 0..e {
                prod[i + j] = (prod[i + j] + a[i] as u32 * b[j] as u32) % p;
            }
        }
        // Reduce modulo the monic modulus: g^e = -sum modulus[k] g^k.
        for i in (e..2 * e - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for k in 0..e {
                let m = spec.modulus[k] as u32;
                prod[i - e + k] = (prod[i - e + k] + c * (p - m)) % p;
            }
        }
        let mut out = [0u16; MAX_E];
        for i in 0..e {
            out[i] = prod[i] as u16;
        }
        FieldElem { spec, code: spec.from_digits(&out) }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.spec.e == 1 {
            return write!(f, "{}", self.code);
        }
        let digits = self.spec.digits(self.code);
        let coeffs: Vec<u8> = digits[..self.spec.e as usize].iter().map(|&c| c as u8).collect();
        write!(f, "{}", render_poly_in_g(&coeffs))
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[F{}]", self, self.spec.q)
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            write!(f, "F{}", self.q)
        } else {
            write!(f, "F{} ({})", self.q, self.modulus_string())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_moduli() {
        assert_eq!(FieldSpec::new(2, 2).unwrap().modulus_string(), "g^2+g+1");
        assert_eq!(FieldSpec::new(3, 2).unwrap().modulus_string(), "g^2+1");
        assert_eq!(FieldSpec::new(2, 3).unwrap().modulus_string(), "g^3+g+1");
        assert_eq!(FieldSpec::new(2, 4).unwrap().modulus_string(), "g^4+g+1");
        assert_eq!(FieldSpec::new(2, 1).unwrap().modulus_string(), "g");
    }

    #[test]
    fn modulus_is_smallest_irreducible() {
        // Independent scan: no monic quadratic over F_3 with smaller
        // coefficient code than g^2+1 is irreducible, and g^2+1 is.
        let f9 = FieldSpec::new(3, 2).unwrap();
        assert_eq!(f9.modulus[..3], [1, 0, 1]);
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(!is_irreducible(&[0, 0, 1], 3)); // g^2 = g * g
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FieldSpec::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(FieldSpec::new(1, 1).unwrap_err(), Error::NotPrime(1));
        assert!(matches!(
            FieldSpec::new(2, 9).unwrap_err(),
            Error::FieldTooLarge { q: 512, .. }
        ));
        assert!(matches!(
            FieldSpec::new(17, 2).unwrap_err(),
            Error::FieldTooLarge { q: 289, .. }
        ));
        assert!(FieldSpec::new(2, 8).is_ok());
    }

    #[test]
    fn f4_generator_square() {
        let f4 = FieldSpec::new(2, 2).unwrap();
        let g = f4.gen();
        assert_eq!(g * g, g + f4.one());
        assert_eq!((g * g).to_string(), "g+1");
    }

    #[test]
    fn f9_frobenius_negates_generator() {
        let f9 = FieldSpec::new(3, 2).unwrap();
        let g = f9.gen();
        assert_eq!(g.frobenius(), -g);
        assert_eq!(g.frobenius().to_string(), "2g");
    }

    fn all_desk_fields() -> Vec<FieldSpec> {
        [(2, 1), (3, 1), (5, 1), (7, 1), (11, 1), (13, 1), (2, 2), (3, 2), (2, 3), (5, 2), (2, 4), (3, 3), (7, 2), (2, 5), (2, 6)]
            .iter()
            .map(|&(p, e)| FieldSpec::new(p, e).unwrap())
            .collect()
    }

    #[test]
    fn multiplicative_order_divides_q_minus_one() {
        for f in all_desk_fields() {
            if f.q() > 64 {
                continue;
            }
            for a in f.elements().skip(1) {
                assert!(a.pow(f.q() as u64 - 1).is_one(), "{a:?} in {f:?}");
            }
        }
    }

    #[test]
    fn e_fold_frobenius_is_identity() {
        for f in all_desk_fields() {
            for a in f.elements() {
                let mut b = a;
                for _ in 0..f.e() {
                    b = b.frobenius();
                }
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        for f in [FieldSpec::new(2, 3).unwrap(), FieldSpec::new(3, 2).unwrap()] {
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!((a + b).frobenius(), a.frobenius() + b.frobenius());
                }
            }
        }
    }

    #[test]
    fn ring_axioms_exhaustive_f8() {
        let f = FieldSpec::new(2, 3).unwrap();
        let elems: Vec<_> = f.elements().collect();
        for &a in &elems {
            for &b in &elems {
                assert_eq!(a * b, b * a);
                assert_eq!(a + b, b + a);
                for &c in &elems {
                    assert_eq!((a + b) + c, a + (b + c));
                    assert_eq!((a * b) * c, a * (b * c));
                    assert_eq!(a * (b + c), a * b + a * c);
                }
            }
        }
    }

    #[test]
    fn inverses() {
        for f in all_desk_fields() {
            assert_eq!(f.zero().inv().unwrap_err(), Error::DivisionByZero);
            for a in f.elements().skip(1) {
                assert!((a * a.inv().unwrap()).is_one());
            }
        }
    }

    #[test]
    fn from_int_wraps_mod_p() {
        let f7 = FieldSpec::new(7, 1).unwrap();
        assert_eq!(f7.from_int(-1), f7.from_int(6));
        assert_eq!(f7.from_int(7), f7.zero());
        let f9 = FieldSpec::new(3, 2).unwrap();
        assert_eq!(f9.from_int(-1) + f9.one(), f9.zero());
    }

    #[test]
    fn element_order_and_count() {
        let f9 = FieldSpec::new(3, 2).unwrap();
        let elems: Vec<_> = f9.elements().collect();
        assert_eq!(elems.len(), 9);
        assert!(elems[0].is_zero());
        assert_eq!(elems[1], f9.one());
        assert_eq!(elems[3], f9.gen());
    }

    #[test]
    fn display_parse_round_trip() {
        for f in all_desk_fields() {
            for a in f.elements() {
                let s = a.to_string();
                assert_eq!(f.parse_elem(&s).unwrap(), a, "round-trip of '{s}'");
            }
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        let f9 = FieldSpec::new(3, 2).unwrap();
        assert!(f9.parse_elem("").is_err());
        assert!(f9.parse_elem("g^2").is_err()); // exponent out of range
        assert!(f9.parse_elem("h+1").is_err());
        let f5 = FieldSpec::new(5, 1).unwrap();
        assert!(f5.parse_elem("g").is_err());
    }

    #[test]
    fn primitive_element_generates() {
        for f in all_desk_fields() {
            let z = f.primitive_element();
            let mut seen = std::collections::HashSet::new();
            let mut a = f.one();
            for _ in 0..f.q() - 1 {
                seen.insert(a.code());
                a = a * z;
            }
            assert_eq!(seen.len(), f.q() as usize - 1, "{f:?}");
        }
    }

    #[test]
    #[should_panic(expected = "mixed fields")]
    fn mixed_field_addition_panics() {
        let f2 = FieldSpec::new(2, 1).unwrap();
        let f3 = FieldSpec::new(3, 1).unwrap();
        let _ = f2.one() + f3.one();
    }
}
