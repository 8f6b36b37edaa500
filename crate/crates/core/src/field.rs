//! Exact arithmetic in GF(q), q = p^e.
//!
//! Elements are stored as integer codes: the polynomial `a_0 + a_1 x + ... +
//! a_{e-1} x^{e-1}` is encoded as `a_0 + a_1 p + ... + a_{e-1} p^{e-1}`, so for
//! prime fields the code is the residue itself. Multiplication goes through
//! discrete log tables built from the primitive element, which caps the
//! supported order at [`MAX_ORDER`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

/// Orders up to this size get a full addition table.
const ADD_TABLE_MAX: u32 = 256;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn code(self) -> u32 {
        self.0 as u32
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Element from a code the caller already knows to be below `q`.
    #[inline]
    pub(crate) fn from_code(code: u32) -> FieldElement {
        debug_assert!(code < MAX_ORDER);
        FieldElement(code as u16)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone)]
enum Addition {
    Xor,
    Modular,
    Table(Vec<u16>),
    Digits,
}

/// A concrete finite field GF(p^e) together with its defining modulus and a
/// primitive element.
///
/// Immutable once built; share it behind an `Arc`.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    e: u32,
    q: u32,
    modulus: Option<Vec<u32>>,
    alpha: FieldElement,
    exp: Vec<u16>,
    log: Vec<u32>,
    neg: Vec<u16>,
    addition: Addition,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .field("alpha", &self.alpha.0)
            .finish()
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
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

/// Splits `q` into `(p, e)` with `q = p^e`.
pub fn prime_power(q: u32) -> Result<(u32, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).expect("q >= 2 has a divisor");
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    if rest != 1 {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p, e))
}

fn to_digits(code: u32, p: u32, e: u32) -> Vec<u32> {
    let mut c = code;
    (0..e)
        .map(|_| {
            let d = c % p;
            c /= p;
            d
        })
        .collect()
}

fn from_digits(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Remainder of `num` modulo the monic polynomial `den` over GF(p).
/// Coefficients are low-degree first.
fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    while r.len() > dd {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - dd;
            for (i, &c) in den[..dd].iter().enumerate() {
                let t = (lead * c) % p;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
        }
    }
    r
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    // Trial division by every monic polynomial of degree 1..=deg/2.
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut g = to_digits(low as u32, p, d as u32);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible polynomial of degree `e` over GF(p), comparing
/// coefficient tuples from the constant term upwards.
fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    let count = (p as u64).pow(e);
    // Enumerating with a_0 as the most significant digit gives the required order.
    for idx in 0..count {
        let mut c = idx;
        let mut f = vec![0u32; e as usize + 1];
        for j in (0..e as usize).rev() {
            f[j] = (c % p as u64) as u32;
            c /= p as u64;
        }
        f[e as usize] = 1;
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FieldSpec {
    /// Builds GF(p^e) with the smallest monic irreducible modulus and the
    /// primitive element of smallest code.
    pub fn new(p: u32, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::ZeroExponent);
        }
        let order = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
        if order > MAX_ORDER as u64 {
            return Err(Error::FieldTooLarge { order, max: MAX_ORDER });
        }
        let q = order as u32;
        let modulus = (e > 1).then(|| smallest_irreducible(p, e));

        let raw_mul = |a: u32, b: u32| -> u32 {
            match &modulus {
                None => ((a as u64 * b as u64) % p as u64) as u32,
                Some(m) => {
                    let da = to_digits(a, p, e);
                    let db = to_digits(b, p, e);
                    let mut prod = vec![0u32; 2 * e as usize - 1];
                    for (i, &x) in da.iter().enumerate() {
                        for (j, &y) in db.iter().enumerate() {
                            prod[i + j] = (prod[i + j] + x * y) % p;
                        }
                    }
                    from_digits(&poly_rem(&prod, m, p), p)
                }
            }
        };
        let raw_pow = |a: u32, mut k: u64| -> u32 {
            let mut base = a;
            let mut acc = 1u32;
            while k > 0 {
                if k & 1 == 1 {
                    acc = raw_mul(acc, base);
                }
                base = raw_mul(base, base);
                k >>= 1;
            }
            acc
        };

        let group = (q - 1) as u64;
        let divisors = prime_divisors(group);
        let alpha = (1..q)
            .find(|&a| divisors.iter().all(|&r| raw_pow(a, group / r) != 1))
            .expect("the multiplicative group of a finite field is cyclic");

        let mut exp = Vec::with_capacity(group as usize);
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..group {
            exp.push(x as u16);
            log[x as usize] = i as u32;
            x = raw_mul(x, alpha);
        }
        if x != 1 {
            return Err(Error::Internal("primitive element has wrong order".into()));
        }

        let neg: Vec<u16> = (0..q)
            .map(|c| {
                let d: Vec<u32> = to_digits(c, p, e).iter().map(|&a| (p - a) % p).collect();
                from_digits(&d, p) as u16
            })
            .collect();

        let addition = if p == 2 {
            Addition::Xor
        } else if e == 1 {
            Addition::Modular
        } else if q <= ADD_TABLE_MAX {
            let mut table = vec![0u16; (q * q) as usize];
            for a in 0..q {
                let da = to_digits(a, p, e);
                for b in 0..q {
                    let db = to_digits(b, p, e);
                    let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                    table[(a * q + b) as usize] = from_digits(&s, p) as u16;
                }
            }
            Addition::Table(table)
        } else {
            Addition::Digits
        };

        Ok(FieldSpec { p, e, q, modulus, alpha: FieldElement(alpha as u16), exp, log, neg, addition })
    }

    /// Builds the field of order `q`, which must be a prime power.
    pub fn with_order(q: u32) -> Result<Self> {
        let (p, e) = prime_power(q)?;
        Self::new(p, e)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Defining polynomial, low-degree coefficient first; `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u32]> {
        self.modulus.as_deref()
    }

    pub fn alpha(&self) -> FieldElement {
        self.alpha
    }

    pub fn element(&self, code: u32) -> Result<FieldElement> {
        if code < self.q {
            Ok(FieldElement(code as u16))
        } else {
            Err(Error::ElementOutOfRange { code, q: self.q })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(|c| FieldElement(c as u16))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.q).map(|c| FieldElement(c as u16))
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.addition {
            Addition::Xor => FieldElement(a.0 ^ b.0),
            Addition::Modular => {
                let s = a.0 as u32 + b.0 as u32;
                FieldElement(if s >= self.q { s - self.q } else { s } as u16)
            }
            Addition::Table(t) => FieldElement(t[(a.0 as u32 * self.q + b.0 as u32) as usize]),
            Addition::Digits => {
                let (p, e) = (self.p, self.e);
                let da = to_digits(a.code(), p, e);
                let db = to_digits(b.code(), p, e);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                FieldElement(from_digits(&s, p) as u16)
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let s = self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize;
        let n = self.exp.len();
        FieldElement(self.exp[if s >= n { s - n } else { s }])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let n = self.exp.len();
        let l = self.log[a.0 as usize] as usize;
        Ok(FieldElement(self.exp[(n - l) % n]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, k: u64) -> FieldElement {
        if k == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        let n = self.exp.len() as u64;
        let l = self.log[a.0 as usize] as u64;
        FieldElement(self.exp[((l * (k % n)) % n) as usize])
    }

    /// `alpha^i` for any integer exponent.
    pub fn alpha_pow(&self, i: i64) -> FieldElement {
        let n = self.exp.len() as i64;
        FieldElement(self.exp[i.rem_euclid(n) as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: FieldElement) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let group = (self.q - 1) as u64;
        let mut ord = group;
        for r in prime_divisors(group) {
            while ord.is_multiple_of(r) && self.pow(a, ord / r) == FieldElement::ONE {
                ord /= r;
            }
        }
        Ok(ord)
    }
}
