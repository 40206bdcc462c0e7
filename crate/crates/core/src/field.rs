//! Small finite fields GF(p^e) backed by log/exp tables.
//!
//! Elements are integer codes `0..q`. For `e > 1` the code of a residue
//! `c_0 + c_1 x + ... + c_{e-1} x^{e-1}` is `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`,
//! so code 0 is the additive identity and code 1 the multiplicative one.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly;

/// An element code.
pub type Elem = u16;

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

/// Above this order the addition table is not materialized.
const ADD_TABLE_LIMIT: u32 = 256;

/// A concrete finite field GF(p^e) with precomputed arithmetic tables.
///
/// Cheap to clone; all clones share the same tables.
#[derive(Clone)]
pub struct Field(Arc<Tables>);

struct Tables {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus, constant term first; empty for prime fields.
    modulus: Vec<Elem>,
    /// `exp[i] = g^i` for `i < 2(q-1)`, so products index without reduction.
    exp: Vec<Elem>,
    log: Vec<u32>,
    neg: Vec<Elem>,
    add: Option<Vec<Elem>>,
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Digit-wise arithmetic on codes, used only while building tables.
struct Raw<'a> {
    p: u32,
    e: u32,
    modulus: &'a [Elem],
}

impl Raw<'_> {
    fn digits(&self, mut code: u32) -> Vec<u32> {
        (0..self.e)
            .map(|_| {
                let d = code % self.p;
                code /= self.p;
                d
            })
            .collect()
    }

    fn code(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return (a + b) % self.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.code(&sum)
    }

    fn neg(&self, a: u32) -> u32 {
        if self.e == 1 {
            return (self.p - a) % self.p;
        }
        let d: Vec<u32> = self.digits(a).iter().map(|x| (self.p - x) % self.p).collect();
        self.code(&d)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return ((u64::from(a) * u64::from(b)) % u64::from(self.p)) as u32;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let e = self.e as usize;
        let mut prod = vec![0u32; 2 * e - 1];
        for i in 0..e {
            for j in 0..e {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % self.p;
            }
        }
        // reduce by the monic modulus from the top
        for deg in (e..prod.len()).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for k in 0..e {
                let m = u32::from(self.modulus[k]);
                prod[deg - e + k] = (prod[deg - e + k] + (self.p - c) * m) % self.p;
            }
        }
        self.code(&prod[..e])
    }

    fn pow(&self, base: u32, mut exp: u64) -> u32 {
        let (mut acc, mut b) = (1u32, base);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }
}

impl Field {
    /// Builds GF(p^e). With `modulus` omitted, the smallest irreducible monic
    /// polynomial of degree `e` is used (see [`poly::smallest_irreducible`]).
    /// A given modulus is listed constant term first and has `e + 1` entries;
    /// it is scaled to be monic.
    pub fn new(p: u32, e: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if e == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let q = u64::from(p)
            .checked_pow(e)
            .filter(|&q| q <= u64::from(MAX_ORDER))
            .ok_or_else(|| Error::OrderTooLarge(format!("{p}^{e}")))? as u32;

        let modulus = if e == 1 {
            if let Some(m) = modulus {
                if m.len() != 2 || m[1] % p == 0 {
                    return Err(Error::ReducibleModulus(m.to_vec()));
                }
            }
            Vec::new()
        } else {
            let base = Field::prime(p)?;
            match modulus {
                Some(m) => {
                    if m.len() != e as usize + 1 || m.iter().any(|&c| c >= p) || m[e as usize] == 0 {
                        return Err(Error::ReducibleModulus(m.to_vec()));
                    }
                    let coeffs: Vec<Elem> = m.iter().map(|&c| c as Elem).collect();
                    let lead_inv = base.inv_nonzero(coeffs[e as usize]);
                    let monic: Vec<Elem> = coeffs.iter().map(|&c| base.mul(c, lead_inv)).collect();
                    if !poly::is_irreducible(&base, &monic) {
                        return Err(Error::ReducibleModulus(m.to_vec()));
                    }
                    monic
                }
                None => poly::smallest_irreducible(&base, e as usize)
                    .ok_or_else(|| Error::InvalidField(format!("no irreducible of degree {e}")))?,
            }
        };
        Self::build(p, e, q, modulus)
    }

    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1, None)
    }

    /// GF(q) for a prime power `q`, with the default modulus.
    pub fn with_order(q: u32) -> Result<Field> {
        if !(2..=MAX_ORDER).contains(&q) {
            return Err(Error::OrderTooLarge(q.to_string()));
        }
        let factors = prime_factors(q);
        if factors.len() != 1 {
            return Err(Error::InvalidField(format!("{q} is not a prime power")));
        }
        let p = factors[0];
        let mut e = 0;
        let mut rest = q;
        while rest > 1 {
            rest /= p;
            e += 1;
        }
        Field::new(p, e, None)
    }

    fn build(p: u32, e: u32, q: u32, modulus: Vec<Elem>) -> Result<Field> {
        let reduction = modulus.clone();
        let raw = Raw { p, e, modulus: &reduction };
        let order = u64::from(q - 1);
        let factors = prime_factors(q - 1);
        let generator = (1..q)
            .find(|&g| factors.iter().all(|&l| raw.pow(g, order / u64::from(l)) != 1))
            .ok_or_else(|| Error::InternalVerificationFailed("no primitive element".into()))?;

        let n = (q - 1) as usize;
        let mut exp = vec![0 as Elem; 2 * n.max(1)];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..n {
            exp[i] = x as Elem;
            log[x as usize] = i as u32;
            x = raw.mul(x, generator);
        }
        if x != 1 {
            return Err(Error::InternalVerificationFailed("generator order mismatch".into()));
        }
        for i in n..exp.len() {
            exp[i] = exp[i - n];
        }
        let neg = (0..q).map(|a| raw.neg(a) as Elem).collect();
        let add = (q <= ADD_TABLE_LIMIT).then(|| {
            let mut t = vec![0 as Elem; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = raw.add(a, b) as Elem;
                }
            }
            t
        });
        let field = Field(Arc::new(Tables { p, e, q, modulus, exp, log, neg, add }));
        field.self_check(&raw)?;
        Ok(field)
    }

    /// Pairwise checks against the digit arithmetic for q ≤ 256, plus triple
    /// checks (associativity, distributivity) for q ≤ 32.
    fn self_check(&self, raw: &Raw<'_>) -> Result<()> {
        let q = self.q();
        if q > ADD_TABLE_LIMIT {
            return Ok(());
        }
        let fail = |what: &str| Err(Error::InternalVerificationFailed(format!("GF({q}): {what}")));
        for a in 0..q as Elem {
            if a != 0 {
                if self.0.exp[self.0.log[a as usize] as usize] != a {
                    return fail("exp/log");
                }
                if self.mul(a, self.inv_nonzero(a)) != 1 {
                    return fail("inverse");
                }
            }
            if self.add(a, self.neg(a)) != 0 {
                return fail("negation");
            }
            for b in 0..q as Elem {
                if self.mul(a, b) != raw.mul(a.into(), b.into()) as Elem || self.mul(a, b) != self.mul(b, a) {
                    return fail("multiplication");
                }
                if self.add(a, b) != self.add(b, a) {
                    return fail("addition");
                }
            }
        }
        if q <= 32 {
            for a in 0..q as Elem {
                for b in 0..q as Elem {
                    for c in 0..q as Elem {
                        if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
                            || self.add(self.add(a, b), c) != self.add(a, self.add(b, c))
                            || self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c))
                        {
                            return fail("ring axioms");
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    /// Extension degree `e`.
    pub fn degree(&self) -> u32 {
        self.0.e
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Monic modulus, constant term first; empty for prime fields.
    pub fn modulus(&self) -> &[Elem] {
        &self.0.modulus
    }

    pub fn is_element(&self, code: u32) -> bool {
        code < self.0.q
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.0.q as Elem
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let t = &*self.0;
        match &t.add {
            Some(table) => table[a as usize * t.q as usize + b as usize],
            None if t.e == 1 => ((u32::from(a) + u32::from(b)) % t.p) as Elem,
            None => {
                let (mut a, mut b) = (u32::from(a), u32::from(b));
                let (mut out, mut place) = (0u32, 1u32);
                for _ in 0..t.e {
                    out += ((a % t.p + b % t.p) % t.p) * place;
                    a /= t.p;
                    b /= t.p;
                    place *= t.p;
                }
                out as Elem
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.0.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &*self.0;
        t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
    }

    /// Multiplicative inverse; `Err(DivisionByZero)` for 0.
    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.inv_nonzero(a))
        }
    }

    #[inline]
    pub(crate) fn inv_nonzero(&self, a: Elem) -> Elem {
        debug_assert!(a != 0);
        let t = &*self.0;
        let n = t.q - 1;
        t.exp[((n - t.log[a as usize]) % n.max(1)) as usize]
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, exp: u64) -> Elem {
        if exp == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let t = &*self.0;
        let n = u64::from(t.q - 1);
        t.exp[((u64::from(t.log[a as usize]) * (exp % n)) % n) as usize]
    }

    /// Text descriptor: `GF(p)` or `GF(p^e)[c_0,...,c_e]`.
    pub fn descriptor(&self) -> String {
        self.to_string()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.e == other.0.e && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.e.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.e == 1 {
            return write!(f, "GF({})", self.0.p);
        }
        write!(f, "GF({}^{})[", self.0.p, self.0.e)?;
        for (i, c) in self.0.modulus.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn descriptor_error(column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line: 1,
        column,
        message: message.into(),
    }
}

fn parse_u32(text: &str, column: usize) -> Result<u32> {
    text.trim()
        .parse()
        .map_err(|_| descriptor_error(column, format!("expected an integer, found {text:?}")))
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `GF(p)`, `GF(q)` for a prime power `q` (default modulus),
    /// `GF(p^e)` and `GF(p^e)[c_0,...,c_e]`.
    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        let body = s
            .strip_prefix("GF(")
            .ok_or_else(|| descriptor_error(1, "field descriptor must start with GF("))?;
        let close = body
            .find(')')
            .ok_or_else(|| descriptor_error(s.len(), "missing ')' in field descriptor"))?;
        let order = &body[..close];
        let rest = body[close + 1..].trim();
        let modulus = if rest.is_empty() {
            None
        } else {
            let inner = rest
                .strip_prefix('[')
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| descriptor_error(close + 5, "modulus must be written [c0,c1,...]"))?;
            let coeffs = inner
                .split(',')
                .map(|c| parse_u32(c, close + 6))
                .collect::<Result<Vec<_>>>()?;
            Some(coeffs)
        };
        match order.split_once('^') {
            Some((p, e)) => {
                let p = parse_u32(p, 4)?;
                let e = parse_u32(e, 4 + p.to_string().len() + 1)?;
                Field::new(p, e, modulus.as_deref())
            }
            None => {
                let q = parse_u32(order, 4)?;
                if modulus.is_some() || is_prime(q) {
                    Field::new(q, 1, modulus.as_deref())
                } else {
                    Field::with_order(q)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_gf2() {
        let f = Field::new(2, 1, None).unwrap();
        assert_eq!(f.q(), 2);
        assert_eq!(f.add(1, 1), 0);
        assert_eq!(f.mul(1, 1), 1);
    }

    #[test]
    fn gf4_with_explicit_modulus() {
        // x^2 = x + 1 modulo x^2 + x + 1; code(x) = 2, code(x + 1) = 3
        let f = Field::new(2, 2, Some(&[1, 1, 1])).unwrap();
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.add(2, 1), 3);
        assert_eq!(f.to_string(), "GF(2^2)[1,1,1]");
    }

    #[test]
    fn composite_characteristic_is_rejected() {
        assert_eq!(Field::new(4, 1, None).unwrap_err(), Error::NonPrimeCharacteristic(4));
        assert_eq!(Field::new(1, 1, None).unwrap_err(), Error::NonPrimeCharacteristic(1));
    }

    #[test]
    fn reducible_modulus_is_rejected() {
        assert!(matches!(Field::new(2, 2, Some(&[1, 0, 1])), Err(Error::ReducibleModulus(_))));
        assert!(matches!(Field::new(2, 2, Some(&[1, 1])), Err(Error::ReducibleModulus(_))));
    }

    #[test]
    fn order_cap() {
        assert!(Field::new(2, 16, None).is_ok());
        assert!(matches!(Field::new(2, 17, None), Err(Error::OrderTooLarge(_))));
        assert!(matches!(Field::new(257, 2, None), Err(Error::OrderTooLarge(_))));
    }

    #[test]
    fn basic_operations() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f3.mul(2, 2), 1);
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.inv(3).unwrap(), 2);
        assert_eq!(f5.inv(0), Err(Error::DivisionByZero));
        assert_eq!(f5.neg(2), 3);
        assert_eq!(f5.sub(1, 3), 3);
        assert_eq!(f5.pow(2, 4), 1);
    }

    #[test]
    fn inverse_of_five_mod_seven_by_exhaustion() {
        let f7 = Field::prime(7).unwrap();
        for a in 1..7 {
            let brute = (1..7).find(|x| (a * x) % 7 == 1).unwrap();
            assert_eq!(u32::from(f7.inv(a as Elem).unwrap()), brute);
        }
    }

    #[test]
    fn descriptors_round_trip() {
        for text in ["GF(2)", "GF(3)", "GF(2^2)[1,1,1]", "GF(3^2)[1,0,1]", "GF(2^3)[1,1,0,1]"] {
            let f: Field = text.parse().unwrap();
            assert_eq!(f.to_string(), text);
        }
        let f4: Field = "GF(4)".parse().unwrap();
        assert_eq!(f4.to_string(), "GF(2^2)[1,1,1]");
        let f8: Field = "GF(2^3)".parse().unwrap();
        assert_eq!(f8.to_string(), "GF(2^3)[1,1,0,1]");
        assert!(matches!("GF(6)".parse::<Field>(), Err(Error::InvalidField(_))));
        assert!(matches!("F(2)".parse::<Field>(), Err(Error::Parse { .. })));
    }

    #[test]
    fn large_field_without_add_table() {
        let f = Field::new(2, 12, None).unwrap();
        let a = 0b1010_0110_0011;
        assert_eq!(f.add(a, a), 0);
        assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        let g = Field::prime(257).unwrap();
        assert_eq!(g.add(200, 100), 43);
        assert_eq!(g.mul(g.inv(5).unwrap(), 5), 1);
    }
}
