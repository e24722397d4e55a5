//! Exact arithmetic in GF(p^m) over an explicit irreducible modulus.
//!
//! Elements are [`Fe`] values holding the canonical integer encoding: the
//! coefficient vector in the polynomial basis read as a base-p integer with
//! the constant term least significant. All arithmetic goes through a
//! [`Field`] handle, which is cheap to clone and immutable after creation.
//!
//! Fields of order up to `TABLE_LIMIT` use exp/log tables; larger fields
//! (only ever created as extension fields for higher-degree places) fall back
//! to direct polynomial arithmetic.

mod element;
mod ext;
pub mod poly;
mod spec;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

pub use element::FieldElement;
pub use ext::{embed, Extension};
pub use poly::Poly;
pub use spec::{format_int_poly, parse_int_poly};

/// Canonical integer encoding of a field element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fe(pub u64);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GfError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("modulus must be monic of degree {0}")]
    BadModulus(u32),
    #[error("modulus is reducible over GF({0})")]
    Reducible(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("no embedding of GF({from}) into GF({to})")]
    NoEmbedding { from: u64, to: u64 },
    #[error("field order {0}^{1} is too large")]
    TooLarge(u64, u32),
    #[error("invalid field spec `{0}`: {1}")]
    Parse(String, String),
}

/// Fields up to this order get exp/log tables.
const TABLE_LIMIT: u64 = 1 << 20;
/// Odd-characteristic fields up to this order get a full addition table.
const ADD_TABLE_LIMIT: u64 = 1024;

struct Tables {
    exp: Vec<u64>,
    log: Vec<u32>,
    add: Option<Vec<u32>>,
}

/// Validated description of GF(p^m) together with its arithmetic tables.
pub struct FieldSpec {
    p: u64,
    m: u32,
    q: u64,
    modulus: Vec<u64>,
    tables: Option<Tables>,
    primitive: OnceLock<Fe>,
}

/// Shared handle to a [`FieldSpec`].
#[derive(Clone)]
pub struct Field(Arc<FieldSpec>);

impl std::ops::Deref for Field {
    type Target = FieldSpec;
    fn deref(&self) -> &FieldSpec {
        &self.0
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.p == other.p && self.modulus == other.modulus)
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})[{}]", self.q, self.spec_string())
    }
}

fn is_prime(n: u64) -> bool {
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

fn registry() -> &'static Mutex<HashMap<(u64, Vec<u64>), Field>> {
    static REG: OnceLock<Mutex<HashMap<(u64, Vec<u64>), Field>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Field {
    /// Creates GF(p^m) from a modulus given low-degree-first with `m + 1`
    /// coefficients. Coefficients are reduced into `[0, p)`.
    ///
    /// The modulus is checked for irreducibility by trial division against
    /// every monic polynomial of degree at most `m / 2`.
    pub fn new(p: u64, m: u32, modulus: &[i64]) -> Result<Field, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if m == 0 || modulus.len() != m as usize + 1 {
            return Err(GfError::BadModulus(m));
        }
        let modulus: Vec<u64> = modulus.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect();
        if modulus[m as usize] != 1 {
            return Err(GfError::BadModulus(m));
        }
        if (m as f64) * (p as f64).log2() > 62.0 {
            return Err(GfError::TooLarge(p, m));
        }
        let existing = registry().lock().unwrap().get(&(p, modulus.clone())).cloned();
        if let Some(f) = existing {
            return Ok(f);
        }
        if m > 1 && !spec::irreducible_by_trial_division(p, &modulus) {
            return Err(GfError::Reducible(p));
        }
        Ok(Self::build_unchecked(p, modulus))
    }

    /// The prime field GF(p), presented with modulus `x - 1`.
    pub fn prime(p: u64) -> Result<Field, GfError> {
        Field::new(p, 1, &[-1, 1])
    }

    /// Parses the `p^m:poly` spec format, e.g. `2^4:x^4+x+1`.
    pub fn parse(s: &str) -> Result<Field, GfError> {
        spec::parse_field_spec(s)
    }

    /// Smallest (by canonical encoding) monic irreducible modulus of degree
    /// `m` over GF(p). Used to present extension fields.
    pub fn default_for(p: u64, m: u32) -> Result<Field, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if (m as f64) * (p as f64).log2() > 62.0 {
            return Err(GfError::TooLarge(p, m));
        }
        static DEFAULTS: OnceLock<Mutex<HashMap<(u64, u32), Field>>> = OnceLock::new();
        let cache = DEFAULTS.get_or_init(|| Mutex::new(HashMap::new()));
        let cached = cache.lock().unwrap().get(&(p, m)).cloned();
        if let Some(f) = cached {
            return Ok(f);
        }
        let modulus = spec::smallest_irreducible(p, m);
        let existing = registry().lock().unwrap().get(&(p, modulus.clone())).cloned();
        let f = existing.unwrap_or_else(|| Self::build_unchecked(p, modulus));
        cache.lock().unwrap().insert((p, m), f.clone());
        Ok(f)
    }

    fn build_unchecked(p: u64, modulus: Vec<u64>) -> Field {
        let m = (modulus.len() - 1) as u32;
        let q = p.pow(m);
        let mut spec = FieldSpec { p, m, q, modulus, tables: None, primitive: OnceLock::new() };
        if q <= TABLE_LIMIT {
            let _ = spec.primitive.set(spec.find_primitive());
            spec.tables = Some(spec.build_tables());
        }
        let f = Field(Arc::new(spec));
        registry().lock().unwrap().insert((p, f.modulus.clone()), f.clone());
        f
    }

    pub fn ptr_eq(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.m
    }
    pub fn order(&self) -> u64 {
        self.q
    }
    /// Modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// `p^m:poly` rendering of this field.
    pub fn spec_string(&self) -> String {
        format!("{}^{}:{}", self.p, self.m, spec::format_int_poly(&self.modulus, "x"))
    }

    /// The residue class of `x`, i.e. the root of the modulus used as the
    /// polynomial-basis generator.
    pub fn generator(&self) -> Fe {
        if self.m >= 2 {
            Fe(self.p)
        } else {
            Fe((self.p - self.modulus[0]) % self.p)
        }
    }

    /// A fixed generator of the multiplicative group (the smallest encoding).
    pub fn primitive(&self) -> Fe {
        *self.primitive.get_or_init(|| self.find_primitive())
    }

    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }
    pub fn one(&self) -> Fe {
        Fe::ONE
    }

    /// Image of an integer under `Z -> GF(p) -> GF(q)`.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.p as i64) as u64)
    }

    /// All elements in ascending canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.q).map(Fe)
    }

    pub fn contains(&self, a: Fe) -> bool {
        a.0 < self.q
    }

    fn digits(&self, mut a: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.m as usize);
        for _ in 0..self.m {
            out.push(a % self.p);
            a /= self.p;
        }
        out
    }

    fn from_digits(&self, d: &[u64]) -> u64 {
        d.iter().rev().fold(0u64, |acc, &c| acc * self.p + c)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        if let Some(Tables { add: Some(t), .. }) = &self.tables {
            return Fe(t[(a.0 * self.q + b.0) as usize] as u64);
        }
        self.add_digits(a, b)
    }

    fn add_digits(&self, a: Fe, b: Fe) -> Fe {
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u64;
        let mut place = 1u64;
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        Fe(out)
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if self.p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.0, 0u64, 1u64);
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        Fe(out)
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        match &self.tables {
            Some(t) => Fe(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => self.slow_mul(a, b),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a.is_zero() {
            return None;
        }
        Some(match &self.tables {
            Some(t) => {
                let l = t.log[a.0 as usize] as u64;
                Fe(t.exp[((self.q - 1 - l) % (self.q - 1)) as usize])
            }
            None => self.pow_u(a, self.q - 2),
        })
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe, GfError> {
        let inv = self.inv(b).ok_or(GfError::DivisionByZero)?;
        Ok(self.mul(a, inv))
    }

    /// `a^e` for an arbitrary integer exponent; negative exponents need a
    /// nonzero base.
    pub fn pow(&self, a: Fe, e: i64) -> Result<Fe, GfError> {
        if e >= 0 {
            return Ok(self.pow_u(a, e as u64));
        }
        let inv = self.inv(a).ok_or(GfError::DivisionByZero)?;
        Ok(self.pow_u(inv, e.unsigned_abs()))
    }

    pub fn pow_u(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        if a.is_zero() {
            return Fe::ZERO;
        }
        if let Some(t) = &self.tables {
            let l = t.log[a.0 as usize] as u128;
            let idx = (l * e as u128) % (self.q as u128 - 1);
            return Fe(t.exp[idx as usize]);
        }
        let (mut base, mut e, mut acc) = (a, e, Fe::ONE);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^p`.
    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow_u(a, self.p)
    }

    /// Absolute trace `sum_{i<m} a^{p^i}`, returned as an integer in `[0, p)`.
    pub fn trace(&self, a: Fe) -> u64 {
        let mut acc = Fe::ZERO;
        let mut cur = a;
        for _ in 0..self.m {
            acc = self.add(acc, cur);
            cur = self.frobenius(cur);
        }
        debug_assert!(acc.0 < self.p);
        acc.0
    }

    /// A square root of `a`, if one exists. In characteristic 2 this is the
    /// unique root `a^{2^{m-1}}`; otherwise the smallest root found by scan.
    pub fn sqrt(&self, a: Fe) -> Option<Fe> {
        if self.p == 2 {
            return Some(self.pow_u(a, self.q / 2));
        }
        if a.is_zero() {
            return Some(Fe::ZERO);
        }
        if self.pow_u(a, (self.q - 1) / 2) != Fe::ONE {
            return None;
        }
        self.elements().find(|&y| self.mul(y, y) == a)
    }

    pub fn is_square(&self, a: Fe) -> bool {
        self.p == 2 || a.is_zero() || self.pow_u(a, (self.q - 1) / 2) == Fe::ONE
    }

    pub fn sum<I: IntoIterator<Item = Fe>>(&self, it: I) -> Fe {
        it.into_iter().fold(Fe::ZERO, |acc, x| self.add(acc, x))
    }

    pub fn product<I: IntoIterator<Item = Fe>>(&self, it: I) -> Fe {
        it.into_iter().fold(Fe::ONE, |acc, x| self.mul(acc, x))
    }

    /// Multiplication by polynomial arithmetic, used for large fields and
    /// while building the tables.
    fn slow_mul(&self, a: Fe, b: Fe) -> Fe {
        let m = self.m as usize;
        if self.p == 2 {
            let mut prod: u128 = 0;
            let (x, mut y) = (a.0 as u128, b.0);
            let mut i = 0;
            while y > 0 {
                if y & 1 == 1 {
                    prod ^= x << i;
                }
                y >>= 1;
                i += 1;
            }
            let modbits: u128 = self.modulus.iter().enumerate().fold(0, |acc, (i, &c)| acc | ((c as u128) << i));
            for bit in (m..(2 * m).max(m + 1)).rev() {
                if (prod >> bit) & 1 == 1 {
                    prod ^= modbits << (bit - m);
                }
            }
            return Fe(prod as u64);
        }
        let p = self.p;
        let da = self.digits(a.0);
        let db = self.digits(b.0);
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        for deg in (m..prod.len()).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            for (k, &mc) in self.modulus.iter().enumerate() {
                let idx = deg - m + k;
                prod[idx] = (prod[idx] + (p - c) * mc % p) % p;
            }
        }
        Fe(self.from_digits(&prod[..m]))
    }

    fn find_primitive(&self) -> Fe {
        if self.q == 2 {
            return Fe::ONE;
        }
        let n = self.q - 1;
        let factors = prime_factors(n);
        (1..self.q)
            .map(Fe)
            .find(|&g| factors.iter().all(|&l| self.pow_slow(g, n / l) != Fe::ONE))
            .expect("multiplicative group is cyclic")
    }

    fn pow_slow(&self, a: Fe, mut e: u64) -> Fe {
        let (mut base, mut acc) = (a, Fe::ONE);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn build_tables(&self) -> Tables {
        let n = (self.q - 1) as usize;
        let mut exp = vec![0u64; 2 * n.max(1)];
        let mut log = vec![0u32; self.q as usize];
        let mut cur = Fe::ONE;
        for i in 0..n {
            exp[i] = cur.0;
            log[cur.0 as usize] = i as u32;
            cur = self.slow_mul(cur, self.primitive());
        }
        for i in n..2 * n {
            exp[i] = exp[i - n];
        }
        let add = if self.p != 2 && self.q <= ADD_TABLE_LIMIT {
            let q = self.q;
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = self.add_digits(Fe(a), Fe(b)).0 as u32;
                }
            }
            Some(t)
        } else {
            None
        };
        Tables { exp, log, add }
    }

    /// Discrete log to the fixed primitive element (table-backed fields only).
    pub fn log(&self, a: Fe) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        self.tables.as_ref().map(|t| t.log[a.0 as usize] as u64)
    }
}

#[cfg(test)]
mod tests;
