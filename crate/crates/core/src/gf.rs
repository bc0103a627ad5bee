//! Arithmetic in GF(p^m).
//!
//! Elements are integers in `[0, q)`: the polynomial `a_0 + a_1 x + ... + a_{m-1} x^{m-1}`
//! over GF(p) is stored as `a_0 + a_1 p + ... + a_{m-1} p^{m-1}`. Multiplication and
//! inversion go through discrete log / exp tables built once per field.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A field element, encoded as described in the module docs.
pub type Scalar = u32;

/// Largest field order supported.
pub const MAX_ORDER: u32 = 1 << 16;

const ADD_TABLE_LIMIT: u32 = 256;

struct Tables {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
}

/// A finite field GF(p^m), cheap to clone and safe to share between threads.
#[derive(Clone)]
pub struct FieldSpec(Arc<Tables>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; {:?})", self.0.p, self.0.m, self.0.modulus)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.m == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.m)
        }
    }
}

/// Serializable description of a field: enough to rebuild it exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
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

// Dense polynomial helpers over GF(p); coefficient vectors are low-to-high.

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    // b is monic
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        for (i, &c) in b.iter().enumerate() {
            let sub = (lead as u64 * c as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    poly_rem(&prod, modulus, p)
}

fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let m = modulus.len() - 1;
    // trial division by every monic polynomial of degree 1..=m/2
    for deg in 1..=m / 2 {
        let count = (p as u64).pow(deg as u32);
        for idx in 0..count {
            let mut div = vec![0u32; deg + 1];
            let mut x = idx;
            for c in div.iter_mut().take(deg) {
                *c = (x % p as u64) as u32;
                x /= p as u64;
            }
            div[deg] = 1;
            if poly_rem(modulus, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The lexicographically least monic irreducible polynomial of degree `m` over GF(p),
/// comparing coefficient lists `c_0, c_1, ..., c_m` from the constant term up.
pub fn default_modulus(p: u32, m: u32) -> Vec<u32> {
    let m = m as usize;
    let total = (p as u64).pow(m as u32);
    for idx in 0..total {
        // c_0 is the most significant digit of idx
        let mut coeffs = vec![0u32; m + 1];
        let mut x = idx;
        for j in (0..m).rev() {
            coeffs[j] = (x % p as u64) as u32;
            x /= p as u64;
        }
        coeffs[m] = 1;
        if m == 1 || is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FieldSpec {
    /// Builds GF(p^m). When `modulus` is `None` the default modulus is used.
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if m == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let q = (p as u64)
            .checked_pow(m)
            .filter(|&q| q <= MAX_ORDER as u64)
            .ok_or_else(|| Error::InvalidField(format!("{p}^{m} exceeds the supported order {MAX_ORDER}")))?
            as u32;
        let modulus = match modulus {
            None => default_modulus(p, m),
            Some(c) => {
                if c.len() != m as usize + 1 {
                    return Err(Error::InvalidField(format!(
                        "modulus must have {} coefficients, got {}",
                        m + 1,
                        c.len()
                    )));
                }
                if c[m as usize] != 1 {
                    return Err(Error::InvalidField("modulus must be monic".into()));
                }
                if c.iter().any(|&x| x >= p) {
                    return Err(Error::InvalidField(format!("modulus coefficients must be < {p}")));
                }
                if !is_irreducible(c, p) {
                    return Err(Error::ReducibleModulus { p, modulus: c.to_vec() });
                }
                c.to_vec()
            }
        };
        Ok(FieldSpec(Arc::new(Tables::build(p, m, q, modulus))))
    }

    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// GF(q) for a prime power q, with the default modulus.
    pub fn of_order(q: u32) -> Result<Self> {
        let factors = prime_factors(q as u64);
        if factors.len() != 1 {
            return Err(Error::InvalidField(format!("{q} is not a prime power")));
        }
        let p = factors[0] as u32;
        let mut m = 0;
        let mut x = q;
        while x > 1 {
            x /= p;
            m += 1;
        }
        Self::new(p, m, None)
    }

    pub fn from_descriptor(d: &FieldDescriptor) -> Result<Self> {
        Self::new(d.p, d.m, Some(&d.modulus))
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor { p: self.0.p, m: self.0.m, modulus: self.0.modulus.clone() }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.0.m
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// True for GF(2), where rows can be bit-packed.
    #[inline]
    pub fn is_binary(&self) -> bool {
        self.0.q == 2
    }

    pub fn elements(&self) -> std::ops::Range<Scalar> {
        0..self.0.q
    }

    pub fn nonzero_elements(&self) -> std::ops::Range<Scalar> {
        1..self.0.q
    }

    #[inline]
    pub fn contains(&self, a: Scalar) -> bool {
        a < self.0.q
    }

    /// Coefficients `a_0..a_{m-1}` of the polynomial encoded by `a`.
    pub fn decode(&self, a: Scalar) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.0.m as usize);
        let mut x = a;
        for _ in 0..self.0.m {
            out.push(x % self.0.p);
            x /= self.0.p;
        }
        out
    }

    pub fn encode(&self, coeffs: &[u32]) -> Result<Scalar> {
        if coeffs.len() > self.0.m as usize || coeffs.iter().any(|&c| c >= self.0.p) {
            return Err(Error::InvalidArgument(format!("{coeffs:?} is not an element of {self}")));
        }
        Ok(coeffs.iter().rev().fold(0, |acc, &c| acc * self.0.p + c))
    }

    #[inline]
    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        debug_assert!(a < self.0.q && b < self.0.q);
        let t = &self.0;
        if t.m == 1 {
            let s = a + b;
            if s >= t.p {
                s - t.p
            } else {
                s
            }
        } else if t.p == 2 {
            a ^ b
        } else if let Some(add) = &t.add {
            add[(a * t.q + b) as usize]
        } else {
            t.digit_add(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: Scalar) -> Scalar {
        self.0.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        debug_assert!(a < self.0.q && b < self.0.q);
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &self.0;
        t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: Scalar) -> Result<Scalar> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv_nonzero(a))
    }

    /// Inverse of a known-nonzero element.
    #[inline]
    pub fn inv_nonzero(&self, a: Scalar) -> Scalar {
        debug_assert!(a != 0);
        let t = &self.0;
        t.exp[((t.q - 1 - t.log[a as usize]) % (t.q - 1)) as usize]
    }

    pub fn div(&self, a: Scalar, b: Scalar) -> Result<Scalar> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Scalar, e: u64) -> Scalar {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let t = &self.0;
        let order = (t.q - 1) as u64;
        let idx = (t.log[a as usize] as u64 * (e % order)) % order;
        t.exp[idx as usize]
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> Scalar {
        self.0.exp[1 % self.0.exp.len().max(1)]
    }

    /// Wraps a raw value as a checked, field-tagged element.
    pub fn element(&self, value: Scalar) -> Result<FieldElement> {
        if value >= self.0.q {
            return Err(Error::InvalidArgument(format!("{value} is not an element of {self}")));
        }
        Ok(FieldElement { field: self.clone(), value })
    }

    /// Header line used by the matrix file format.
    pub fn header(&self) -> String {
        let mut s = format!("field {} {}", self.0.p, self.0.m);
        for c in &self.0.modulus {
            s.push(' ');
            s.push_str(&c.to_string());
        }
        s
    }
}

impl Tables {
    fn build(p: u32, m: u32, q: u32, modulus: Vec<u32>) -> Tables {
        let mut t = Tables {
            p,
            m,
            q,
            modulus,
            exp: Vec::new(),
            log: vec![0; q as usize],
            neg: vec![0; q as usize],
            add: None,
        };
        for a in 0..q {
            let neg = t.digits(a).into_iter().map(|c| (p - c) % p).collect::<Vec<_>>();
            t.neg[a as usize] = t.undigits(&neg);
        }
        if m > 1 && p != 2 && q <= ADD_TABLE_LIMIT {
            let mut add = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    add[(a * q + b) as usize] = t.digit_add(a, b);
                }
            }
            t.add = Some(add);
        }
        let g = t.find_generator();
        let order = (q - 1) as usize;
        t.exp = vec![0; 2 * order.max(1)];
        let mut x = 1u32;
        for i in 0..order {
            t.exp[i] = x;
            t.exp[i + order] = x;
            t.log[x as usize] = i as u32;
            x = t.slow_mul(x, g);
        }
        t
    }

    fn digits(&self, a: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.m as usize);
        let mut x = a;
        for _ in 0..self.m {
            out.push(x % self.p);
            x /= self.p;
        }
        out
    }

    fn undigits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn digit_add(&self, a: u32, b: u32) -> u32 {
        let (mut x, mut y, mut r, mut place) = (a, b, 0u32, 1u32);
        for _ in 0..self.m {
            r += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place = place.wrapping_mul(self.p);
        }
        r
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let prod = poly_mulmod(&self.digits(a), &self.digits(b), &self.modulus, self.p);
        self.undigits(&prod)
    }

    fn slow_pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn find_generator(&self) -> u32 {
        if self.q == 2 {
            return 1;
        }
        let order = (self.q - 1) as u64;
        let factors = prime_factors(order);
        (2..self.q)
            .find(|&g| factors.iter().all(|&r| self.slow_pow(g, order / r) != 1))
            .expect("the multiplicative group of a finite field is cyclic")
    }
}

/// A field element carrying its field, for callers that want mixed-field checks.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: FieldSpec,
    value: Scalar,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.value, self.field)
    }
}

impl FieldElement {
    pub fn value(&self) -> Scalar {
        self.value
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    fn same_field(&self, other: &FieldElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn wrap(&self, value: Scalar) -> FieldElement {
        FieldElement { field: self.field.clone(), value }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.mul(self.value, other.value)))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.wrap(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.wrap(self.field.pow(self.value, e))
    }
}
