//! Finite fields GF(p^e).
//!
//! Elements are encoded as integers in `[0, q)`: the polynomial
//! `c_0 + c_1 x + ... + c_{e-1} x^{e-1}` over GF(p) has value `sum c_i p^i`.
//! For `q <= 4096` multiplication goes through exp/log tables; larger fields
//! reduce polynomials on the fly.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;
/// Fields up to this order get precomputed tables.
pub const TABLE_LIMIT: u32 = 4096;
const ADD_TABLE_LIMIT: u32 = 256;

/// An element of a finite field, stored by its integer encoding.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(transparent)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    /// Wraps a raw encoding without range checking. Use [`Field::elem`] for
    /// untrusted input.
    #[inline]
    pub const fn from_raw(v: u32) -> Self {
        FieldElem(v)
    }

    #[inline]
    pub const fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
}

struct Inner {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus, low-to-high, length `e + 1`.
    modulus: Vec<u32>,
    primitive: u32,
    tables: Option<Tables>,
}

/// Arithmetic context for GF(q). Cheap to clone and safe to share.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.0.p)
            .field("e", &self.0.e)
            .field("modulus", &self.0.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits a prime power into `(p, e)`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let (mut r, mut e) = (q, 0);
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

// Polynomials over GF(p), low-to-high coefficients, trailing zeros trimmed.

fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    pow_mod_p(a, p - 2, p)
}

fn pow_mod_p(a: u32, mut exp: u32, p: u32) -> u32 {
    let (mut base, mut acc) = (a as u64 % p as u64, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

/// Remainder of `a` modulo `m` (m nonzero) over GF(p).
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod_p(m[dm], p) as u64;
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = (*r.last().unwrap() as u64 * lead_inv % p as u64) as u32;
        for (i, &mi) in m.iter().enumerate() {
            let sub = (c as u64 * mi as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        trim(&mut r);
    }
    r
}

fn digits(mut v: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = (v % p as u64) as u32;
        v /= p as u64;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

/// Trial factorization: true iff the monic `m` has no factor of degree `1..=deg/2`.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut f = digits(low, p, d);
            f.push(1);
            if poly_rem(m, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// Builds GF(p^e). Without an explicit modulus the monic irreducible
    /// polynomial with the smallest encoding is used. An explicit modulus is
    /// given low-to-high with `e + 1` coefficients and leading coefficient 1.
    pub fn new(p: u64, e: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::InvalidModulus(
                "extension degree must be >= 1".into(),
            ));
        }
        let q = p.checked_pow(e).filter(|&q| q <= MAX_ORDER);
        let Some(q) = q else {
            return Err(Error::FieldTooLarge { p, e });
        };
        let (p, q) = (p as u32, q as u32);
        let modulus = match modulus {
            Some(m) => {
                if m.len() != e as usize + 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected {} coefficients, got {}",
                        e + 1,
                        m.len()
                    )));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidModulus("coefficient out of range".into()));
                }
                if m[e as usize] != 1 {
                    return Err(Error::InvalidModulus("modulus must be monic".into()));
                }
                if !is_irreducible(m, p) {
                    return Err(Error::ReducibleModulus(p));
                }
                m.to_vec()
            }
            None => (0..q as u64)
                .map(|low| {
                    let mut m = digits(low, p, e as usize);
                    m.push(1);
                    m
                })
                .find(|m| is_irreducible(m, p))
                .expect("an irreducible polynomial of every degree exists"),
        };
        let mut inner = Inner {
            p,
            e,
            q,
            modulus,
            primitive: 0,
            tables: None,
        };
        inner.primitive = find_primitive(&inner);
        if q <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(Field(Arc::new(inner)))
    }

    /// GF(q) for a prime power `q`, with the default modulus.
    pub fn with_order(q: u64) -> Result<Field> {
        match prime_power(q) {
            Some((p, e)) => Field::new(p, e, None),
            None => Err(Error::NotPrime(q)),
        }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn e(&self) -> u32 {
        self.0.e
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn primitive_element(&self) -> FieldElem {
        FieldElem(self.0.primitive)
    }

    pub fn elem(&self, v: u64) -> Result<FieldElem> {
        if v < self.0.q as u64 {
            Ok(FieldElem(v as u32))
        } else {
            Err(Error::ElementOutOfRange {
                value: v,
                q: self.0.q,
            })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.0.q).map(FieldElem)
    }

    /// The `q - 1` nonzero elements in ascending encoding order.
    pub fn all_nonzero(&self) -> Vec<FieldElem> {
        (1..self.0.q).map(FieldElem).collect()
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let inner = &*self.0;
        if inner.p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        if inner.e == 1 {
            let s = a.0 + b.0;
            return FieldElem(if s >= inner.p { s - inner.p } else { s });
        }
        if let Some(Tables { add: Some(t), .. }) = &inner.tables {
            return FieldElem(t[(a.0 * inner.q + b.0) as usize]);
        }
        FieldElem(add_digits(a.0, b.0, inner.p))
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        let inner = &*self.0;
        if inner.p == 2 {
            return a;
        }
        if inner.e == 1 {
            return FieldElem(if a.0 == 0 { 0 } else { inner.p - a.0 });
        }
        if let Some(t) = &inner.tables {
            return FieldElem(t.neg[a.0 as usize]);
        }
        FieldElem(neg_digits(a.0, inner.p))
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        let inner = &*self.0;
        if let Some(t) = &inner.tables {
            let l = t.log[a.0 as usize] + t.log[b.0 as usize];
            return FieldElem(t.exp[l as usize]);
        }
        FieldElem(mul_slow(inner, a.0, b.0))
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.inv_nonzero(a))
        }
    }

    #[inline]
    pub(crate) fn inv_nonzero(&self, a: FieldElem) -> FieldElem {
        debug_assert!(!a.is_zero());
        let inner = &*self.0;
        if let Some(t) = &inner.tables {
            let n = inner.q - 1;
            let l = t.log[a.0 as usize];
            return FieldElem(t.exp[((n - l) % n) as usize]);
        }
        self.pow(a, inner.q as u64 - 2)
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElem, mut exp: u64) -> FieldElem {
        let (mut base, mut acc) = (a, FieldElem::ONE);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

fn add_digits(mut a: u32, mut b: u32, p: u32) -> u32 {
    let (mut out, mut scale) = (0, 1);
    while a > 0 || b > 0 {
        out += ((a % p + b % p) % p) * scale;
        a /= p;
        b /= p;
        scale *= p;
    }
    out
}

fn neg_digits(mut a: u32, p: u32) -> u32 {
    let (mut out, mut scale) = (0, 1);
    while a > 0 {
        out += ((p - a % p) % p) * scale;
        a /= p;
        scale *= p;
    }
    out
}

fn mul_slow(inner: &Inner, a: u32, b: u32) -> u32 {
    let (p, e) = (inner.p, inner.e as usize);
    if e == 1 {
        return ((a as u64 * b as u64) % p as u64) as u32;
    }
    let da = digits(a as u64, p, e);
    let db = digits(b as u64, p, e);
    let mut prod = vec![0u32; 2 * e - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    let mut r = poly_rem(&prod, &inner.modulus, p);
    r.resize(e, 0);
    undigits(&r, p)
}

fn find_primitive(inner: &Inner) -> u32 {
    let n = inner.q as u64 - 1;
    if n == 1 {
        return 1;
    }
    let mut factors = Vec::new();
    let mut r = n;
    let mut d = 2;
    while d * d <= r {
        if r.is_multiple_of(d) {
            factors.push(d);
            while r.is_multiple_of(d) {
                r /= d;
            }
        }
        d += 1;
    }
    if r > 1 {
        factors.push(r);
    }
    let pow = |mut base: u32, mut exp: u64| {
        let mut acc = 1u32;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul_slow(inner, acc, base);
            }
            base = mul_slow(inner, base, base);
            exp >>= 1;
        }
        acc
    };
    (2..inner.q)
        .find(|&g| factors.iter().all(|&f| pow(g, n / f) != 1))
        .expect("multiplicative group of a finite field is cyclic")
}

fn build_tables(inner: &Inner) -> Tables {
    let q = inner.q;
    let n = (q - 1) as usize;
    let mut exp = vec![0u32; 2 * n.max(1)];
    let mut log = vec![0u32; q as usize];
    let mut x = 1u32;
    for (i, e) in exp.iter_mut().take(n).enumerate() {
        *e = x;
        log[x as usize] = i as u32;
        x = mul_slow(inner, x, inner.primitive);
    }
    for i in n..2 * n {
        exp[i] = exp[i - n];
    }
    let neg = (0..q).map(|a| neg_digits(a, inner.p)).collect();
    let add = (q <= ADD_TABLE_LIMIT && inner.p != 2 && inner.e > 1).then(|| {
        let mut t = vec![0u32; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                t[(a * q + b) as usize] = add_digits(a, b, inner.p);
            }
        }
        t
    });
    Tables { exp, log, neg, add }
}
