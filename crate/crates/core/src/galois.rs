//! Exact arithmetic in GF(p^e) and in the quadratic tower GF(q) ⊂ GF(q²).
//!
//! Elements are encoded as the integer `Σ cᵢ·pⁱ` of their coefficient vector
//! in the polynomial basis `1, x, x², …` modulo the field's defining
//! polynomial, so elements of the prime subfield keep their integer names.
//!
//! The defining polynomial is the lexicographically smallest monic degree-e
//! polynomial over GF(p) whose root is primitive, comparing coefficient
//! vectors from the constant term upward. Fields with at most 2^20 elements
//! carry exp/log/Zech tables; larger ones fall back to polynomial arithmetic.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order that gets exp/log/Zech tables.
pub const TABLE_LIMIT: u64 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

/// A field element, identified by its integer encoding.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    /// `exp[k] = g^k` for `0 <= k < 2(q-1)`.
    exp: Vec<u32>,
    /// `log[a]` for nonzero `a`; `log[0] = NO_LOG`.
    log: Vec<u32>,
    /// `zech[k] = log(1 + g^k)`, `NO_LOG` when `1 + g^k = 0`.
    zech: Vec<u32>,
}

/// The finite field GF(p^e) with a fixed modulus and primitive generator.
pub struct FieldCtx {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: Elem,
    tables: Option<Tables>,
    /// Prime factors of q - 1, used by order and square tests.
    order_factors: Vec<u64>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .field("tables", &self.tables.is_some())
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in ascending order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
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

/// Splits a prime power into `(p, e)`.
pub fn prime_power(q: u64) -> Result<(u32, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let f = prime_factors(q);
    if f.len() != 1 {
        return Err(Error::NotPrimePower(q));
    }
    let p = f[0];
    let mut e = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        e += 1;
    }
    Ok((p as u32, e))
}

// Dense polynomials over GF(p), coefficient vectors low degree first.
mod poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let p = p as u64;
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p;
            }
        }
        let mut out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
        trim(&mut out);
        out
    }

    /// Remainder modulo a monic polynomial.
    pub fn rem_monic(mut a: Vec<u32>, m: &[u32], p: u32) -> Vec<u32> {
        let d = m.len() - 1;
        let p64 = p as u64;
        while a.len() > d {
            let lead = *a.last().unwrap() as u64;
            let shift = a.len() - 1 - d;
            if lead != 0 {
                for (i, &c) in m.iter().enumerate() {
                    let sub = lead * c as u64 % p64;
                    let v = &mut a[shift + i];
                    *v = ((*v as u64 + p64 - sub) % p64) as u32;
                }
            }
            a.pop();
        }
        trim(&mut a);
        a
    }

    pub fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        rem_monic(mul(a, b, p), m, p)
    }

    pub fn powmod(base: &[u32], mut n: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut result = rem_monic(vec![1], m, p);
        let mut b = rem_monic(base.to_vec(), m, p);
        while n > 0 {
            if n & 1 == 1 {
                result = mulmod(&result, &b, m, p);
            }
            b = mulmod(&b, &b, m, p);
            n >>= 1;
        }
        result
    }

    pub fn is_one(a: &[u32]) -> bool {
        a.len() == 1 && a[0] == 1
    }
}

impl FieldCtx {
    /// Builds GF(p^e) with the canonical primitive modulus. Tables are
    /// enabled when `p^e <= TABLE_LIMIT`.
    pub fn new(p: u64, e: u32) -> Result<Self> {
        let q = checked_order(p, e)?;
        Self::build(p as u32, e, q <= TABLE_LIMIT)
    }

    /// Same field as [`FieldCtx::new`], with the table mode forced off.
    /// Polynomial arithmetic is slower but exercises the large-field path.
    pub fn without_tables(p: u64, e: u32) -> Result<Self> {
        checked_order(p, e)?;
        Self::build(p as u32, e, false)
    }

    fn build(p: u32, e: u32, tables: bool) -> Result<Self> {
        let q64 = (p as u64).pow(e);
        let modulus = find_primitive_modulus(p, e)?;
        let order_factors = prime_factors(q64 - 1);
        let mut ctx = FieldCtx {
            p,
            e,
            q: q64 as u32,
            modulus,
            generator: Elem::ZERO,
            tables: None,
            order_factors,
        };
        // the root "x" of the modulus, reduced; for e = 1 this is -c0
        let x = poly::rem_monic(vec![0, 1], &ctx.modulus, p);
        ctx.generator = ctx.encode(&x);
        if tables {
            ctx.tables = Some(ctx.build_tables());
        }
        Ok(ctx)
    }

    fn build_tables(&self) -> Tables {
        let n = (self.q - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![NO_LOG; self.q as usize];
        let mut cur = 1u32;
        for k in 0..n {
            exp[k] = cur;
            log[cur as usize] = k as u32;
            cur = self.poly_mul(Elem(cur), self.generator).0;
        }
        for k in n..2 * n {
            exp[k] = exp[k - n];
        }
        let zech = (0..n)
            .map(|k| {
                let s = self.digit_add(1, exp[k]);
                if s == 0 {
                    NO_LOG
                } else {
                    log[s as usize]
                }
            })
            .collect();
        Tables { exp, log, zech }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    /// Number of elements.
    pub fn order(&self) -> u32 {
        self.q
    }

    /// Monic modulus coefficients, constant term first (length e + 1).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// `Σ cᵢ·pⁱ` over all e + 1 coefficients of the modulus.
    pub fn modulus_encoding(&self) -> u64 {
        self.modulus
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p as u64 + c as u64)
    }

    pub fn generator(&self) -> Elem {
        self.generator
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> {
        (1..self.q).map(Elem)
    }

    /// Element named by a small integer, reduced into the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn contains(&self, a: Elem) -> bool {
        a.0 < self.q
    }

    fn digits(&self, a: Elem) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.e as usize);
        let mut v = a.0;
        for _ in 0..self.e {
            out.push(v % self.p);
            v /= self.p;
        }
        poly::trim(&mut out);
        out
    }

    fn encode(&self, c: &[u32]) -> Elem {
        Elem(c.iter().rev().fold(0u32, |acc, &d| acc * self.p + d))
    }

    fn digit_add(&self, mut a: u32, mut b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let mut out = 0u32;
        let mut place = 1u32;
        while a > 0 || b > 0 {
            let d = (a % self.p + b % self.p) % self.p;
            out += d * place;
            a /= self.p;
            b /= self.p;
            place = place.wrapping_mul(self.p);
        }
        out
    }

    fn digit_neg(&self, mut a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let mut out = 0u32;
        let mut place = 1u32;
        while a > 0 {
            let d = (self.p - a % self.p) % self.p;
            out += d * place;
            a /= self.p;
            place = place.wrapping_mul(self.p);
        }
        out
    }

    fn poly_mul(&self, a: Elem, b: Elem) -> Elem {
        let r = poly::mulmod(&self.digits(a), &self.digits(b), &self.modulus, self.p);
        self.encode(&r)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if self.e == 1 {
            return Elem((a.0 + b.0) % self.p);
        }
        match &self.tables {
            Some(t) => {
                if a.0 == 0 {
                    return b;
                }
                if b.0 == 0 {
                    return a;
                }
                let n = self.q - 1;
                let i = t.log[a.0 as usize];
                let j = t.log[b.0 as usize];
                let d = if j >= i { j - i } else { j + n - i };
                let z = t.zech[d as usize];
                if z == NO_LOG {
                    Elem::ZERO
                } else {
                    Elem(t.exp[(i + z) as usize])
                }
            }
            None => Elem(self.digit_add(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 || a.0 == 0 {
            return a;
        }
        if self.e == 1 {
            return Elem(self.p - a.0);
        }
        Elem(self.digit_neg(a.0))
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        match &self.tables {
            Some(t) => Elem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => {
                if self.e == 1 {
                    Elem((a.0 as u64 * b.0 as u64 % self.p as u64) as u32)
                } else {
                    self.poly_mul(a, b)
                }
            }
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: Elem) -> Elem {
        self.try_inv(a).expect("inverse of zero")
    }

    pub fn try_inv(&self, a: Elem) -> Option<Elem> {
        if a.0 == 0 {
            return None;
        }
        match &self.tables {
            Some(t) => {
                let n = self.q - 1;
                let l = t.log[a.0 as usize];
                Some(Elem(t.exp[((n - l) % n) as usize]))
            }
            None => Some(self.pow(a, self.q as u64 - 2)),
        }
    }

    /// `a / b`. Panics when `b` is zero.
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, n: u64) -> Elem {
        if n == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let m = (self.q - 1) as u64;
                let l = t.log[a.0 as usize] as u64;
                Elem(t.exp[((l * (n % m)) % m) as usize])
            }
            None => {
                let mut result = Elem::ONE;
                let mut b = a;
                let mut n = n;
                while n > 0 {
                    if n & 1 == 1 {
                        result = self.mul(result, b);
                    }
                    b = self.mul(b, b);
                    n >>= 1;
                }
                result
            }
        }
    }

    /// `a^n` for a signed exponent. Panics for `a = 0` with `n < 0`.
    pub fn pow_i(&self, a: Elem, n: i64) -> Elem {
        if n >= 0 {
            self.pow(a, n as u64)
        } else {
            self.inv(self.pow(a, n.unsigned_abs()))
        }
    }

    /// `g^k` for the field's generator `g`.
    pub fn exp(&self, k: u64) -> Elem {
        match &self.tables {
            Some(t) => Elem(t.exp[(k % (self.q as u64 - 1)) as usize]),
            None => self.pow(self.generator, k),
        }
    }

    /// Discrete logarithm to base `g`, or `None` for zero.
    pub fn log(&self, a: Elem) -> Option<u64> {
        if a.0 == 0 {
            return None;
        }
        match &self.tables {
            Some(t) => Some(t.log[a.0 as usize] as u64),
            None => Some(self.bsgs_log(a)),
        }
    }

    fn bsgs_log(&self, a: Elem) -> u64 {
        let n = self.q as u64 - 1;
        let m = (n as f64).sqrt().ceil() as u64 + 1;
        let mut baby = HashMap::with_capacity(m as usize);
        let mut cur = Elem::ONE;
        for j in 0..m {
            baby.entry(cur.0).or_insert(j);
            cur = self.mul(cur, self.generator);
        }
        let giant = self.inv(self.pow(self.generator, m));
        let mut y = a;
        for i in 0..=m {
            if let Some(&j) = baby.get(&y.0) {
                return (i * m + j) % n;
            }
            y = self.mul(y, giant);
        }
        unreachable!("generator is primitive, every nonzero element has a logarithm")
    }

    /// `a^(p^k)`.
    pub fn frobenius(&self, a: Elem, k: u32) -> Elem {
        let mut r = a;
        for _ in 0..k {
            r = self.pow(r, self.p as u64);
        }
        r
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: Elem) -> u64 {
        assert!(!a.is_zero(), "order of zero");
        let mut ord = self.q as u64 - 1;
        for &r in &self.order_factors {
            while ord % r == 0 && self.pow(a, ord / r) == Elem::ONE {
                ord /= r;
            }
        }
        ord
    }

    /// Squareness in this field. In characteristic 2 every element is a square.
    pub fn is_square(&self, a: Elem) -> bool {
        if a.is_zero() || self.p == 2 {
            return true;
        }
        match &self.tables {
            Some(t) => t.log[a.0 as usize] % 2 == 0,
            None => self.pow(a, (self.q as u64 - 1) / 2) == Elem::ONE,
        }
    }

    /// The solution `b` of `b^t = a` with the smallest encoding, or `None`.
    ///
    /// `solve_power(0, t) = 0`. For nonzero `a` a solution exists iff
    /// `a^((q-1)/gcd(t, q-1)) = 1`.
    pub fn solve_power(&self, a: Elem, t: u64) -> Option<Elem> {
        assert!(t > 0, "exponent must be positive");
        if a.is_zero() {
            return Some(Elem::ZERO);
        }
        let n = self.q as u64 - 1;
        let d = t.gcd(&n);
        if self.pow(a, n / d) != Elem::ONE {
            return None;
        }
        let l = self.log(a)?;
        // t·y ≡ l (mod n)  ⇔  (t/d)·y ≡ l/d (mod n/d)
        let nd = n / d;
        let y0 = if nd == 1 {
            0
        } else {
            let inv = mod_inverse((t / d) % nd, nd).expect("t/d is a unit mod n/d");
            ((l / d) % nd) as u128 * inv as u128 % nd as u128
        } as u64;
        (0..d)
            .map(|i| self.exp(y0 + i * nd))
            .min()
    }
}

fn checked_order(p: u64, e: u32) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e == 0 {
        return Err(Error::InvalidParameter("extension degree must be positive".into()));
    }
    match p.checked_pow(e) {
        Some(q) if q <= u32::MAX as u64 => Ok(q),
        _ => Err(Error::FieldTooLarge { p, e }),
    }
}

fn modpow(mut b: u64, mut n: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while n > 0 {
        if n & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        n >>= 1;
    }
    r
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Lexicographically smallest monic degree-e polynomial whose root has
/// order p^e − 1, comparing `(c0, c1, …, c_{e-1})` with `c0` most significant.
///
/// An element of order p^e − 1 in GF(p)[x]/(f) forces every nonzero residue
/// to be a unit, so f is irreducible.
fn find_primitive_modulus(p: u32, e: u32) -> Result<Vec<u32>> {
    let q = (p as u64).pow(e);
    let n = q - 1;
    let factors = prime_factors(n);
    let x = vec![0u32, 1];
    let p_factors = prime_factors(p as u64 - 1);
    let const_primitive: Vec<bool> = (0..p as u64)
        .map(|c| {
            c != 0
                && p_factors
                    .iter()
                    .all(|&r| modpow(c, (p as u64 - 1) / r, p as u64) != 1)
        })
        .collect();
    for t in 0..q {
        // most significant base-p digit of t is c0
        let mut coeffs = vec![0u32; e as usize + 1];
        let mut v = t;
        for i in (0..e as usize).rev() {
            coeffs[i] = (v % p as u64) as u32;
            v /= p as u64;
        }
        coeffs[e as usize] = 1;
        // the norm of a primitive root, (-1)^e·c0, generates GF(p)*
        let norm = if e % 2 == 0 { coeffs[0] } else { (p - coeffs[0]) % p };
        if !const_primitive[norm as usize] {
            continue;
        }
        if !poly::is_one(&poly::powmod(&x, n, &coeffs, p)) {
            continue;
        }
        if factors
            .iter()
            .all(|&r| !poly::is_one(&poly::powmod(&x, n / r, &coeffs, p)))
        {
            return Ok(coeffs);
        }
    }
    Err(Error::NoPrimitivePolynomial { p: p as u64, e })
}

/// Conjugate, norm and trace of an element of GF(q²) over GF(q).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadraticMaps {
    pub conj: Elem,
    pub norm: Elem,
    pub trace: Elem,
}

/// Coset and square class of an element relative to a reference.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub same_coset: bool,
    pub is_square: bool,
}

/// GF(q) realized inside GF(q²) as the Frobenius-fixed subfield.
///
/// Both fields are built directly over GF(p). A nonzero base element `g_b^k`
/// embeds as `g_t^(k·s·(q+1))`, where `s` is the smallest unit modulo q − 1
/// that sends the base generator to a root of the base modulus.
#[derive(Debug)]
pub struct QuadraticTower {
    base: Arc<FieldCtx>,
    top: Arc<FieldCtx>,
    embed_scale: u64,
}

impl QuadraticTower {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        let base = Arc::new(FieldCtx::new(p, e)?);
        let top = Arc::new(FieldCtx::new(p, 2 * e)?);
        Self::from_fields(base, top)
    }

    /// The tower with base field of order `q`.
    pub fn for_order(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q)?;
        Self::new(p as u64, e)
    }

    pub fn from_fields(base: Arc<FieldCtx>, top: Arc<FieldCtx>) -> Result<Self> {
        if base.p != top.p || top.e != 2 * base.e {
            return Err(Error::InvalidParameter(format!(
                "GF({}^{}) is not the quadratic extension of GF({}^{})",
                top.p, top.e, base.p, base.e
            )));
        }
        let q = base.q as u64;
        let n = q - 1;
        let embed_scale = (1..n.max(2))
            .filter(|s| s.gcd(&n) == 1)
            .find(|&s| {
                let gamma = top.exp(s * (q + 1));
                eval_prime_poly(&top, base.modulus(), gamma).is_zero()
            })
            .ok_or_else(|| Error::Internal("no root of the base modulus in the subfield".into()))?;
        Ok(QuadraticTower {
            base,
            top,
            embed_scale,
        })
    }

    pub fn base(&self) -> &Arc<FieldCtx> {
        &self.base
    }

    pub fn top(&self) -> &Arc<FieldCtx> {
        &self.top
    }

    /// Order q of the base field.
    pub fn q(&self) -> u32 {
        self.base.q
    }

    pub fn embed_scale(&self) -> u64 {
        self.embed_scale
    }

    pub fn embed(&self, a: Elem) -> Elem {
        if a.is_zero() {
            return a;
        }
        let k = self.base.log(a).expect("nonzero");
        let q = self.q() as u64;
        self.top.exp(k * self.embed_scale % (q - 1) * (q + 1))
    }

    /// Inverse of [`embed`](Self::embed) on its image.
    pub fn restrict(&self, t: Elem) -> Option<Elem> {
        if t.is_zero() {
            return Some(t);
        }
        let q = self.q() as u64;
        let l = self.top.log(t)?;
        if l % (q + 1) != 0 {
            return None;
        }
        let u = l / (q + 1);
        let inv = mod_inverse(self.embed_scale % (q - 1), q - 1).unwrap_or(0);
        Some(self.base.exp(u * inv % (q - 1).max(1)))
    }

    /// True iff `t` lies in the embedded base field (`t^q = t`).
    pub fn in_base(&self, t: Elem) -> bool {
        self.conj(t) == t
    }

    /// The q-Frobenius `a^q`.
    pub fn conj(&self, a: Elem) -> Elem {
        self.top.pow(a, self.q() as u64)
    }

    pub fn quadratic_maps(&self, a: Elem) -> QuadraticMaps {
        let conj = self.conj(a);
        QuadraticMaps {
            conj,
            norm: self.top.mul(a, conj),
            trace: self.top.add(a, conj),
        }
    }

    /// Classifies `t` against a nonzero reference `h`: same GF(q)*-coset
    /// (`(t/h)^(q-1) = 1`) and squareness of `t` in GF(q²).
    pub fn classify(&self, t: Elem, h: Elem) -> Result<Classification> {
        if t.is_zero() {
            return Err(Error::ZeroElement("classify: t"));
        }
        if h.is_zero() {
            return Err(Error::ZeroElement("classify: h"));
        }
        let ratio = self.top.div(t, h);
        Ok(Classification {
            same_coset: self.top.pow(ratio, self.q() as u64 - 1) == Elem::ONE,
            is_square: self.top.is_square(t),
        })
    }
}

/// Evaluates a polynomial with GF(p) coefficients at an element of `ctx`.
pub(crate) fn eval_prime_poly(ctx: &FieldCtx, coeffs: &[u32], x: Elem) -> Elem {
    coeffs
        .iter()
        .rev()
        .fold(Elem::ZERO, |acc, &c| ctx.add(ctx.mul(acc, x), Elem(c)))
}
