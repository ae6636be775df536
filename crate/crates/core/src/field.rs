//! Finite-field arithmetic.
//!
//! A [`Field`] is GF(p) or a simple extension of another `Field` by a monic
//! irreducible polynomial. Elements are plain `u32` encodings: the
//! polynomial-basis coefficients packed base `|base|`, recursively, so that an
//! encoding is always the base-p digit string of the element's coordinates
//! over the prime field. In particular GF(q) sits inside GF(q^m) as the
//! encodings `0..q`.
//!
//! Multiplication goes through log/antilog tables built once at construction.
//! Moduli are the lexicographically least irreducible polynomials unless a
//! modulus is supplied explicitly, so encodings are reproducible everywhere.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg;
use crate::rng::SeededRng;

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u32 = 1 << 20;

/// Orders up to this size get a full addition table.
const ADD_TABLE_LIMIT: u32 = 256;

/// Candidate draws before the self-dual basis search falls back to
/// exhaustive search.
pub const SELF_DUAL_SEARCH_BUDGET: u64 = 100_000;

/// Largest q^m for the exhaustive self-dual basis fallback.
pub const SELF_DUAL_EXHAUSTIVE_LIMIT: u32 = 1 << 12;

#[derive(Clone)]
pub struct Field {
    p: u32,
    order: u32,
    prime_degree: u32,
    base: Option<Arc<Field>>,
    // monic, coefficients low to high over `base`; empty for a prime field
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Option<Vec<u32>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("order", &self.order)
            .field("base_order", &self.base.as_ref().map(|b| b.order))
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.order == other.order
            && self.modulus == other.modulus
            && self.base.as_deref() == other.base.as_deref()
    }
}

impl Eq for Field {}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
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

/// Splits `q` into `(p, e)` with `q = p^e`, or `None` if `q` is not a prime power.
pub fn prime_power_decomposition(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let mut e = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        e += 1;
    }
    Some((p, e))
}

fn checked_pow(base: u32, exp: u32) -> Option<u32> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc *= base as u64;
        if acc > MAX_FIELD_ORDER as u64 {
            return None;
        }
    }
    Some(acc as u32)
}

/// Polynomial helpers over a coefficient field; polynomials are low-to-high.
mod poly {
    use super::Field;

    pub fn decode(value: u32, radix: u32, len: usize) -> Vec<u32> {
        let mut v = value;
        (0..len)
            .map(|_| {
                let d = v % radix;
                v /= radix;
                d
            })
            .collect()
    }

    pub fn encode(coeffs: &[u32], radix: u32) -> u32 {
        coeffs.iter().rev().fold(0u32, |acc, &c| acc * radix + c)
    }

    /// `a * b mod modulus`, with `a`, `b` of length `deg(modulus)`.
    pub fn mulmod(f: &Field, a: &[u32], b: &[u32], modulus: &[u32]) -> Vec<u32> {
        let d = modulus.len() - 1;
        let mut prod = vec![0u32; 2 * d - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj != 0 {
                    prod[i + j] = f.add(prod[i + j], f.mul(ai, bj));
                }
            }
        }
        for deg in (d..prod.len()).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            for j in 0..d {
                prod[deg - d + j] = f.sub(prod[deg - d + j], f.mul(c, modulus[j]));
            }
            prod[deg] = 0;
        }
        prod.truncate(d);
        prod
    }

    /// Remainder of `a` modulo the monic polynomial `b`.
    pub fn rem(f: &Field, a: &[u32], b: &[u32]) -> Vec<u32> {
        let db = b.len() - 1;
        let mut r = a.to_vec();
        while r.len() > db {
            let c = *r.last().unwrap();
            let shift = r.len() - 1 - db;
            if c != 0 {
                for j in 0..=db {
                    r[shift + j] = f.sub(r[shift + j], f.mul(c, b[j]));
                }
            }
            r.pop();
        }
        r
    }

    pub fn is_zero(a: &[u32]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    /// Trial division by every monic polynomial of degree `1..=deg/2`.
    pub fn is_irreducible(f: &Field, poly: &[u32]) -> bool {
        let d = poly.len() - 1;
        let q = f.order();
        for k in 1..=d / 2 {
            let count = (q as u64).pow(k as u32);
            for t in 0..count {
                let mut divisor = decode(t as u32, q, k);
                divisor.push(1);
                if is_zero(&rem(f, poly, &divisor)) {
                    return false;
                }
            }
        }
        true
    }
}

impl Field {
    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::param(format!("{p} is not prime")));
        }
        if p > MAX_FIELD_ORDER {
            return Err(Error::too_large("field order", p, MAX_FIELD_ORDER));
        }
        let mut field = Field {
            p,
            order: p,
            prime_degree: 1,
            base: None,
            modulus: Vec::new(),
            exp: Vec::new(),
            log: Vec::new(),
            add_table: None,
        };
        field.build_tables(|a, b| ((a as u64 * b as u64) % p as u64) as u32);
        Ok(field)
    }

    /// GF(q) for a prime power `q`, as GF(p)[x]/(least irreducible of degree e).
    pub fn gf(q: u32) -> Result<Field> {
        let (p, e) = prime_power_decomposition(q)
            .ok_or_else(|| Error::param(format!("{q} is not a prime power")))?;
        Self::prime_power(p, e)
    }

    pub fn prime_power(p: u32, e: u32) -> Result<Field> {
        if e == 0 {
            return Err(Error::param("extension degree must be at least 1"));
        }
        let prime = Field::prime(p)?;
        if e == 1 {
            return Ok(prime);
        }
        Field::extension(Arc::new(prime), e)
    }

    /// Extension of `base` of degree `m` by the lexicographically least monic
    /// irreducible polynomial (ordering by the coefficient list written from
    /// the leading term down).
    pub fn extension(base: Arc<Field>, m: u32) -> Result<Field> {
        if m == 0 {
            return Err(Error::param("extension degree must be at least 1"));
        }
        let q = base.order;
        if checked_pow(q, m).is_none() {
            return Err(Error::too_large(
                "field order",
                format!("{q}^{m}"),
                MAX_FIELD_ORDER,
            ));
        }
        let count = (q as u64).pow(m);
        let modulus = (0..count)
            .map(|t| {
                let mut c = poly::decode(t as u32, q, m as usize);
                c.push(1);
                c
            })
            .find(|c| poly::is_irreducible(&base, c))
            .expect("an irreducible polynomial of every degree exists");
        Self::build_extension(base, modulus)
    }

    /// Extension of `base` by an explicit monic irreducible modulus
    /// (coefficients low to high).
    pub fn with_modulus(base: Arc<Field>, modulus: Vec<u32>) -> Result<Field> {
        if modulus.len() < 2 {
            return Err(Error::param("modulus must have degree at least 1"));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::param("modulus must be monic"));
        }
        if modulus.iter().any(|&c| c >= base.order) {
            return Err(Error::param("modulus coefficient outside the base field"));
        }
        let m = (modulus.len() - 1) as u32;
        if checked_pow(base.order, m).is_none() {
            return Err(Error::too_large(
                "field order",
                format!("{}^{m}", base.order),
                MAX_FIELD_ORDER,
            ));
        }
        if !poly::is_irreducible(&base, &modulus) {
            return Err(Error::param("modulus is reducible"));
        }
        Self::build_extension(base, modulus)
    }

    fn build_extension(base: Arc<Field>, modulus: Vec<u32>) -> Result<Field> {
        let m = (modulus.len() - 1) as u32;
        let q = base.order;
        let order = checked_pow(q, m).expect("checked by caller");
        let mut field = Field {
            p: base.p,
            order,
            prime_degree: base.prime_degree * m,
            base: Some(base.clone()),
            modulus: modulus.clone(),
            exp: Vec::new(),
            log: Vec::new(),
            add_table: None,
        };
        let d = m as usize;
        field.build_tables(|a, b| {
            let pa = poly::decode(a, q, d);
            let pb = poly::decode(b, q, d);
            poly::encode(&poly::mulmod(&base, &pa, &pb, &modulus), q)
        });
        Ok(field)
    }

    fn build_tables(&mut self, mul_slow: impl Fn(u32, u32) -> u32) {
        let order = self.order;
        let n = order - 1;
        let pow_slow = |mut g: u32, mut e: u32| {
            let mut acc = 1u32;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul_slow(acc, g);
                }
                g = mul_slow(g, g);
                e >>= 1;
            }
            acc
        };
        let factors = prime_factors(n);
        let generator = (1..order)
            .find(|&g| factors.iter().all(|&r| pow_slow(g, n / r) != 1))
            .expect("the multiplicative group of a finite field is cyclic");

        let mut exp = vec![0u32; 2 * n as usize];
        let mut log = vec![0u32; order as usize];
        let mut x = 1u32;
        for i in 0..n {
            exp[i as usize] = x;
            exp[(i + n) as usize] = x;
            log[x as usize] = i;
            x = mul_slow(x, generator);
        }
        debug_assert_eq!(x, 1);
        self.exp = exp;
        self.log = log;

        if order <= ADD_TABLE_LIMIT && self.p != 2 && self.prime_degree > 1 {
            let mut table = vec![0u32; (order * order) as usize];
            for a in 0..order {
                for b in 0..order {
                    table[(a * order + b) as usize] = self.add_digits(a, b);
                }
            }
            self.add_table = Some(table);
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Degree over the prime field.
    pub fn prime_degree(&self) -> u32 {
        self.prime_degree
    }

    /// Coefficient field of the defining polynomial (`None` for GF(p)).
    pub fn base(&self) -> Option<&Arc<Field>> {
        self.base.as_ref()
    }

    /// Defining polynomial over [`Field::base`], low to high. Empty for GF(p).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.base.is_none()
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.order
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let p = self.p;
        let mut r = 0;
        let mut w = 1;
        while a | b != 0 {
            r += ((a % p + b % p) % p) * w;
            a /= p;
            b /= p;
            w *= p;
        }
        r
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.order && b < self.order);
        if self.p == 2 {
            a ^ b
        } else if self.prime_degree == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else if let Some(t) = &self.add_table {
            t[(a * self.order + b) as usize]
        } else {
            self.add_digits(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 || a == 0 {
            return a;
        }
        if self.prime_degree == 1 {
            return self.p - a;
        }
        let p = self.p;
        let (mut a, mut r, mut w) = (a, 0, 1);
        while a != 0 {
            r += ((p - a % p) % p) * w;
            a /= p;
            w *= p;
        }
        r
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    /// Multiplicative inverse.
    ///
    /// # Panics
    ///
    /// Panics on zero.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        let n = self.order - 1;
        self.exp[((n - self.log[a as usize]) % n) as usize]
    }

    #[inline]
    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.order - 1) as u64;
        let l = (self.log[a as usize] as u64 * (e % n)) % n;
        self.exp[l as usize]
    }

    /// The element `k·1` for an integer `k` (reduced mod p).
    pub fn from_int(&self, k: u64) -> u32 {
        (k % self.p as u64) as u32
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.random_range(0..self.order)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.random_range(1..self.order)
    }

    /// Parameters of this field as GF(p^e), when its base is the prime field.
    pub fn params(&self) -> Option<FieldParams> {
        match &self.base {
            None => Some(FieldParams {
                p: self.p,
                e: 1,
                modulus: vec![0, 1],
            }),
            Some(b) if b.is_prime_field() => Some(FieldParams {
                p: self.p,
                e: self.prime_degree,
                modulus: self.modulus.clone(),
            }),
            Some(_) => None,
        }
    }

    pub fn from_params(params: &FieldParams) -> Result<Field> {
        let prime = Field::prime(params.p)?;
        if params.modulus.len() != params.e as usize + 1 {
            return Err(Error::param("modulus degree does not match the exponent"));
        }
        if params.e == 1 {
            if params.modulus[1] != 1 || params.modulus[0] >= params.p {
                return Err(Error::param("degree-1 modulus must be monic over GF(p)"));
            }
            return Ok(prime);
        }
        Field::with_modulus(Arc::new(prime), params.modulus.clone())
    }
}

/// Text form of GF(p^e): `q=<p>^<e> modulus=<c_e,...,c_0>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldParams {
    pub p: u32,
    pub e: u32,
    /// Low to high.
    pub modulus: Vec<u32>,
}

impl fmt::Display for FieldParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = self.modulus.iter().rev().map(|c| c.to_string()).collect();
        write!(f, "q={}^{} modulus={}", self.p, self.e, coeffs.join(","))
    }
}

impl FromStr for FieldParams {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut q = None;
        let mut modulus = None;
        for tok in s.split_whitespace() {
            match tok.split_once('=') {
                Some(("q", v)) => {
                    let (p, e) = v
                        .split_once('^')
                        .ok_or_else(|| Error::format(format!("expected q=<p>^<e>, got {v}")))?;
                    let p: u32 = p
                        .parse()
                        .map_err(|_| Error::format(format!("bad prime {p}")))?;
                    let e: u32 = e
                        .parse()
                        .map_err(|_| Error::format(format!("bad exponent {e}")))?;
                    q = Some((p, e));
                }
                Some(("modulus", v)) => {
                    let mut c = v
                        .split(',')
                        .map(|c| c.trim().parse::<u32>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| Error::format(format!("bad modulus {v}")))?;
                    c.reverse();
                    modulus = Some(c);
                }
                _ => return Err(Error::format(format!("unexpected token {tok}"))),
            }
        }
        let (p, e) = q.ok_or_else(|| Error::format("missing q="))?;
        let modulus = modulus.ok_or_else(|| Error::format("missing modulus="))?;
        Ok(FieldParams { p, e, modulus })
    }
}

/// An ordered GF(q)-basis of GF(q^m).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    elems: Vec<u32>,
    // inverse of the matrix whose row j holds the polynomial coordinates of elems[j]
    inverse: Vec<Vec<u32>>,
}

impl Basis {
    pub fn elems(&self) -> &[u32] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }
}

/// GF(q^m) together with its subfield GF(q).
#[derive(Debug, Clone)]
pub struct ExtField {
    base: Arc<Field>,
    field: Arc<Field>,
    m: u32,
}

impl ExtField {
    pub fn new(base: Arc<Field>, m: u32) -> Result<ExtField> {
        let field = Arc::new(Field::extension(base.clone(), m)?);
        Ok(ExtField { base, field, m })
    }

    /// GF(q^m) over GF(q), both with their default moduli.
    pub fn from_q(q: u32, m: u32) -> Result<ExtField> {
        Self::new(Arc::new(Field::gf(q)?), m)
    }

    pub fn base(&self) -> &Arc<Field> {
        &self.base
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.base.order()
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// `x^(q^i)`, with `i` taken mod m, by repeated q-th powering.
    pub fn frobenius(&self, x: u32, i: i64) -> u32 {
        let steps = i.rem_euclid(self.m as i64);
        let q = self.q() as u64;
        (0..steps).fold(x, |acc, _| self.field.pow(acc, q))
    }

    /// Trace to GF(q): sum of the m Frobenius conjugates.
    pub fn trace(&self, x: u32) -> u32 {
        let f = &self.field;
        let q = self.q() as u64;
        let mut acc = 0;
        let mut conj = x;
        for _ in 0..self.m {
            acc = f.add(acc, conj);
            conj = f.pow(conj, q);
        }
        debug_assert!(acc < self.q(), "trace left the base field");
        acc
    }

    /// Coordinates of `x` in the polynomial basis 1, y, ..., y^(m-1).
    pub fn coords(&self, x: u32) -> Vec<u32> {
        poly::decode(x, self.q(), self.m as usize)
    }

    pub fn from_coords(&self, coords: &[u32]) -> u32 {
        debug_assert_eq!(coords.len(), self.m as usize);
        poly::encode(coords, self.q())
    }

    pub fn polynomial_basis(&self) -> Basis {
        let q = self.q();
        let elems: Vec<u32> = (0..self.m).map(|i| q.pow(i)).collect();
        self.basis(elems).expect("polynomial basis is a basis")
    }

    /// Validates `elems` as a basis (m elements, GF(q)-independent).
    pub fn basis(&self, elems: Vec<u32>) -> Result<Basis> {
        if elems.len() != self.m as usize {
            return Err(Error::DimensionMismatch {
                expected: self.m as usize,
                actual: elems.len(),
            });
        }
        if elems.iter().any(|&e| e >= self.field.order()) {
            return Err(Error::param("basis element outside the field"));
        }
        let rows: Vec<Vec<u32>> = elems.iter().map(|&e| self.coords(e)).collect();
        let inverse = linalg::invert(&self.base, &rows)
            .ok_or_else(|| Error::param("elements are linearly dependent over the base field"))?;
        Ok(Basis { elems, inverse })
    }

    pub fn random_basis(&self, rng: &mut SeededRng) -> Basis {
        loop {
            let elems = (0..self.m).map(|_| self.field.random(rng)).collect();
            if let Ok(b) = self.basis(elems) {
                return b;
            }
        }
    }

    /// Coordinates of `x` with respect to `basis`.
    pub fn coords_in(&self, basis: &Basis, x: u32) -> Vec<u32> {
        linalg::vec_mat_mul(&self.base, &self.coords(x), &basis.inverse)
    }

    /// `sum_j coords[j] * basis[j]`.
    pub fn combine(&self, basis: &Basis, coords: &[u32]) -> u32 {
        let f = &self.field;
        coords
            .iter()
            .zip(&basis.elems)
            .fold(0, |acc, (&c, &b)| f.add(acc, f.mul(c, b)))
    }

    /// The matrix `[tr(b_i b_j)]`.
    pub fn gram_matrix(&self, a: &[u32], b: &[u32]) -> Vec<Vec<u32>> {
        a.iter()
            .map(|&x| {
                b.iter()
                    .map(|&y| self.trace(self.field.mul(x, y)))
                    .collect()
            })
            .collect()
    }

    /// The trace-dual basis: `tr(b_i d_j) = δ_ij`.
    pub fn dual_basis(&self, basis: &Basis) -> Basis {
        let gram = self.gram_matrix(&basis.elems, &basis.elems);
        let ginv = linalg::invert(&self.base, &gram).expect("trace form is non-degenerate");
        // d_j = sum_l ginv[l][j] b_l
        let elems = (0..self.m as usize)
            .map(|j| {
                let col: Vec<u32> = ginv.iter().map(|row| row[j]).collect();
                self.combine(basis, &col)
            })
            .collect();
        self.basis(elems).expect("dual of a basis is a basis")
    }

    pub fn is_self_dual(&self, basis: &Basis) -> bool {
        let g = self.gram_matrix(&basis.elems, &basis.elems);
        g.iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, &v)| v == u32::from(i == j)))
    }

    /// Whether GF(q^m) has a self-dual basis over GF(q): q even, or q and m both odd.
    pub fn self_dual_basis_exists(&self) -> bool {
        self.q().is_multiple_of(2) || self.m % 2 == 1
    }

    /// Searches for a self-dual basis.
    ///
    /// Returns `Ok(None)` without searching when none exists. Otherwise
    /// builds bases one element at a time, picking uniformly among the
    /// elements `b` with `tr(b^2) = 1` that are trace-orthogonal to the
    /// elements already chosen, restarting on dead ends. After
    /// [`SELF_DUAL_SEARCH_BUDGET`] draws it falls back to a depth-first
    /// search when `q^m` is at most [`SELF_DUAL_EXHAUSTIVE_LIMIT`].
    pub fn find_self_dual_basis(&self, rng: &mut SeededRng) -> Result<Option<Basis>> {
        if !self.self_dual_basis_exists() {
            return Ok(None);
        }
        let f = &self.field;
        let unit: Vec<u32> = f
            .elements()
            .filter(|&x| self.trace(f.mul(x, x)) == 1)
            .collect();
        let m = self.m as usize;
        let mut draws = 0u64;
        'restart: while draws < SELF_DUAL_SEARCH_BUDGET {
            let mut chosen: Vec<u32> = Vec::with_capacity(m);
            while chosen.len() < m {
                let candidates: Vec<u32> = unit
                    .iter()
                    .copied()
                    .filter(|&x| chosen.iter().all(|&c| self.trace(f.mul(c, x)) == 0))
                    .collect();
                if candidates.is_empty() {
                    continue 'restart;
                }
                draws += 1;
                chosen.push(candidates[rng.random_range(0..candidates.len())]);
                if draws >= SELF_DUAL_SEARCH_BUDGET && chosen.len() < m {
                    break 'restart;
                }
            }
            let basis = self
                .basis(chosen)
                .expect("orthonormal sets are independent");
            return Ok(Some(basis));
        }
        if f.order() <= SELF_DUAL_EXHAUSTIVE_LIMIT {
            let mut chosen = Vec::with_capacity(m);
            if self.extend_orthonormal(&unit, &mut chosen) {
                return Ok(Some(
                    self.basis(chosen)
                        .expect("orthonormal sets are independent"),
                ));
            }
            // existence is a theorem; reaching here means the tables are wrong
            unreachable!("self-dual basis must exist for q={} m={}", self.q(), self.m);
        }
        Err(Error::BudgetExhausted {
            stage: "self-dual basis search".into(),
            budget: SELF_DUAL_SEARCH_BUDGET,
            rng_state: Some(crate::rng::describe_state(rng)),
        })
    }

    fn extend_orthonormal(&self, unit: &[u32], chosen: &mut Vec<u32>) -> bool {
        if chosen.len() == self.m as usize {
            return true;
        }
        let f = &self.field;
        for &x in unit {
            if chosen.iter().all(|&c| self.trace(f.mul(c, x)) == 0) {
                chosen.push(x);
                if self.extend_orthonormal(unit, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;

    const OMEGA: u32 = 2; // x in GF(4) = GF(2)[x]/(x^2+x+1)

    #[test]
    fn default_moduli_are_lexicographically_least() {
        assert_eq!(Field::gf(4).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(Field::gf(8).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(Field::gf(9).unwrap().modulus(), &[1, 0, 1]);
        let gf16 = Field::gf(16).unwrap();
        assert_eq!(gf16.modulus(), &[1, 1, 0, 0, 1]);
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert!(Field::gf(6).is_err());
        assert!(Field::gf(1).is_err());
        assert!(Field::prime(9).is_err());
        assert!(matches!(Field::gf(1 << 21), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn gf4_multiplication_table() {
        let f = Field::gf(4).unwrap();
        // w^2 = w + 1
        assert_eq!(f.mul(OMEGA, OMEGA), 3);
        assert_eq!(f.mul(OMEGA, 3), 1);
        assert_eq!(f.inv(OMEGA), 3);
    }

    #[test]
    fn field_axioms_on_random_triples() {
        let mut rng = rng_from_seed(11);
        for q in [2u32, 3, 4, 5, 8, 9] {
            for m in 1..=4u32 {
                let ext = ExtField::from_q(q, m).unwrap();
                let f = ext.field();
                for _ in 0..10_000 {
                    let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.add(a, f.neg(a)), 0);
                    assert_eq!(f.sub(f.add(a, b), b), a);
                    if a != 0 {
                        assert_eq!(f.mul(a, f.inv(a)), 1);
                    }
                }
            }
        }
    }

    #[test]
    fn trace_examples() {
        let gf4 = ExtField::from_q(2, 2).unwrap();
        assert_eq!(gf4.trace(0), 0);
        assert_eq!(gf4.trace(OMEGA), 1);
        let gf9 = ExtField::from_q(3, 2).unwrap();
        assert_eq!(gf9.trace(1), 2);
    }

    #[test]
    fn trace_is_linear_and_surjective() {
        let mut rng = rng_from_seed(3);
        for q in [2u32, 3, 4, 5, 8, 9] {
            for m in 1..=4u32 {
                let ext = ExtField::from_q(q, m).unwrap();
                let (b, f) = (ext.base(), ext.field());
                for _ in 0..500 {
                    let (a, c) = (b.random(&mut rng), b.random(&mut rng));
                    let (x, y) = (f.random(&mut rng), f.random(&mut rng));
                    let lhs = ext.trace(f.add(f.mul(a, x), f.mul(c, y)));
                    let rhs = b.add(b.mul(a, ext.trace(x)), b.mul(c, ext.trace(y)));
                    assert_eq!(lhs, rhs);
                }
                for target in b.elements() {
                    assert!(f.elements().any(|x| ext.trace(x) == target), "q={q} m={m}");
                }
            }
        }
    }

    #[test]
    fn frobenius_examples() {
        let gf4 = ExtField::from_q(2, 2).unwrap();
        assert_eq!(gf4.frobenius(OMEGA, 1), 3);
        assert_eq!(gf4.frobenius(OMEGA, 0), OMEGA);
        let mut rng = rng_from_seed(5);
        for (q, m) in [(2, 3), (3, 2), (4, 2), (2, 4)] {
            let ext = ExtField::from_q(q, m).unwrap();
            for _ in 0..100 {
                let x = ext.field().random(&mut rng);
                let y = ext.frobenius(ext.frobenius(x, 1), m as i64 - 1);
                assert_eq!(y, x);
            }
        }
    }

    #[test]
    fn dual_basis_examples() {
        let gf4 = ExtField::from_q(2, 2).unwrap();
        let b = gf4.basis(vec![OMEGA, 3]).unwrap();
        assert_eq!(gf4.dual_basis(&b).elems(), &[OMEGA, 3]);

        // polynomial basis {1, w}: solving the 2x2 system gives {w^2, 1}
        let pb = gf4.polynomial_basis();
        let d = gf4.dual_basis(&pb);
        assert_eq!(d.elems(), &[3, 1]);
        assert_eq!(gf4.trace(gf4.field().mul(1, 3)), 1);
        assert_eq!(gf4.trace(gf4.field().mul(OMEGA, 3)), 0);
        assert_eq!(gf4.trace(gf4.field().mul(1, 1)), 0);
        assert_eq!(gf4.trace(gf4.field().mul(OMEGA, 1)), 1);
    }

    #[test]
    fn dual_basis_is_involutive() {
        let ext = ExtField::from_q(2, 3).unwrap();
        let mut rng = rng_from_seed(8);
        for _ in 0..100 {
            let b = ext.random_basis(&mut rng);
            let d = ext.dual_basis(&b);
            assert_eq!(ext.dual_basis(&d), b);
            let g = ext.gram_matrix(b.elems(), d.elems());
            for (i, row) in g.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    assert_eq!(v, u32::from(i == j));
                }
            }
        }
    }

    #[test]
    fn self_dual_basis_search() {
        let mut rng = rng_from_seed(0);
        let gf4 = ExtField::from_q(2, 2).unwrap();
        let b = gf4.find_self_dual_basis(&mut rng).unwrap().unwrap();
        let mut e = b.elems().to_vec();
        e.sort();
        assert_eq!(e, vec![OMEGA, 3]);

        assert!(ExtField::from_q(3, 2)
            .unwrap()
            .find_self_dual_basis(&mut rng)
            .unwrap()
            .is_none());

        let gf27 = ExtField::from_q(3, 3).unwrap();
        let b = gf27.find_self_dual_basis(&mut rng).unwrap().unwrap();
        assert!(gf27.is_self_dual(&b));
        assert_eq!(gf27.dual_basis(&b), b);
    }

    #[test]
    fn self_dual_existence_matches_parity_condition() {
        let mut rng = rng_from_seed(21);
        for q in [2u32, 3, 4, 5, 8, 9] {
            for m in 1..=4u32 {
                let ext = ExtField::from_q(q, m).unwrap();
                let found = ext.find_self_dual_basis(&mut rng).unwrap();
                assert_eq!(found.is_some(), q % 2 == 0 || m % 2 == 1, "q={q} m={m}");
                if let Some(b) = found {
                    assert!(ext.is_self_dual(&b));
                }
            }
        }
    }

    #[test]
    fn basis_coordinates_round_trip() {
        let ext = ExtField::from_q(3, 3).unwrap();
        let mut rng = rng_from_seed(4);
        let b = ext.random_basis(&mut rng);
        for x in ext.field().elements() {
            let c = ext.coords_in(&b, x);
            assert_eq!(ext.combine(&b, &c), x);
        }
    }

    #[test]
    fn field_params_text_form() {
        let f = Field::gf(8).unwrap();
        let p = f.params().unwrap();
        assert_eq!(p.to_string(), "q=2^3 modulus=1,0,1,1");
        let parsed: FieldParams = "q=2^3 modulus=1,0,1,1".parse().unwrap();
        assert_eq!(parsed, p);
        assert_eq!(Field::from_params(&parsed).unwrap(), f);
        assert_eq!(
            Field::gf(5).unwrap().params().unwrap().to_string(),
            "q=5^1 modulus=1,0"
        );
        let reducible: FieldParams = "q=2^2 modulus=1,0,1".parse().unwrap();
        assert!(Field::from_params(&reducible).is_err());
        assert!("q=2 modulus=1,1".parse::<FieldParams>().is_err());
    }
}
