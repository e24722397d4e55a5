//! Dense univariate polynomials over a [`Field`], including factorization
//! into distinct irreducible factors (distinct-degree followed by
//! Cantor–Zassenhaus equal-degree splitting).

use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Fe, Field};

/// Polynomial with coefficients constant-term first and no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly(Vec<Fe>);

impl Ord for Poly {
    fn cmp(&self, other: &Poly) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}
impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Poly) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}

impl Poly {
    pub fn zero() -> Poly {
        Poly(Vec::new())
    }
    pub fn one() -> Poly {
        Poly(vec![Fe::ONE])
    }
    pub fn x() -> Poly {
        Poly(vec![Fe::ZERO, Fe::ONE])
    }
    pub fn constant(c: Fe) -> Poly {
        Poly::from_coeffs(vec![c])
    }
    /// `x^k`.
    pub fn monomial(c: Fe, k: usize) -> Poly {
        let mut v = vec![Fe::ZERO; k + 1];
        v[k] = c;
        Poly::from_coeffs(v)
    }
    pub fn from_coeffs(mut v: Vec<Fe>) -> Poly {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        Poly(v)
    }
    /// `x - a`.
    pub fn linear(a: Fe, f: &Field) -> Poly {
        Poly::from_coeffs(vec![f.neg(a), Fe::ONE])
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.0
    }
    pub fn coeff(&self, i: usize) -> Fe {
        self.0.get(i).copied().unwrap_or(Fe::ZERO)
    }
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }
    pub fn lead(&self) -> Fe {
        self.0.last().copied().unwrap_or(Fe::ZERO)
    }
    pub fn is_monic(&self) -> bool {
        self.lead() == Fe::ONE
    }

    pub fn render(&self, var: &str) -> String {
        let raw: Vec<u64> = self.0.iter().map(|c| c.0).collect();
        super::spec::format_int_poly(&raw, var)
    }

    pub fn map(&self, g: impl Fn(Fe) -> Fe) -> Poly {
        Poly::from_coeffs(self.0.iter().map(|&c| g(c)).collect())
    }

    pub fn add(&self, o: &Poly, f: &Field) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::from_coeffs((0..n).map(|i| f.add(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Poly, f: &Field) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::from_coeffs((0..n).map(|i| f.sub(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn neg(&self, f: &Field) -> Poly {
        self.map(|c| f.neg(c))
    }

    pub fn scale(&self, c: Fe, f: &Field) -> Poly {
        self.map(|x| f.mul(x, c))
    }

    pub fn mul(&self, o: &Poly, f: &Field) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Fe::ZERO; self.0.len() + o.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.0.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Fe::ZERO; k];
        v.extend_from_slice(&self.0);
        Poly(v)
    }

    pub fn pow(&self, e: u32, f: &Field) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self, f);
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Poly, f: &Field) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = f.inv(d.lead()).unwrap();
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut qv = vec![Fe::ZERO; r.len() - dd];
        for top in (dd..r.len()).rev() {
            let c = r[top];
            if c.is_zero() {
                continue;
            }
            let k = f.mul(c, lead_inv);
            qv[top - dd] = k;
            for (j, &dj) in d.0.iter().enumerate() {
                let idx = top - dd + j;
                r[idx] = f.sub(r[idx], f.mul(k, dj));
            }
        }
        r.truncate(dd);
        (Poly::from_coeffs(qv), Poly::from_coeffs(r))
    }

    pub fn rem(&self, d: &Poly, f: &Field) -> Poly {
        self.divrem(d, f).1
    }

    /// Quotient when the division is known to be exact.
    pub fn exact_div(&self, d: &Poly, f: &Field) -> Poly {
        let (q, r) = self.divrem(d, f);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self, f: &Field) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = f.inv(self.lead()).unwrap();
        self.scale(inv, f)
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, o: &Poly, f: &Field) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn eval(&self, x: Fe, f: &Field) -> Fe {
        self.0.iter().rev().fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn derivative(&self, f: &Field) -> Poly {
        Poly::from_coeffs(self.0.iter().enumerate().skip(1).map(|(i, &c)| f.mul(f.from_int(i as i64), c)).collect())
    }

    /// Coefficients of `self(a + t)` as a polynomial in `t`.
    pub fn taylor_shift(&self, a: Fe, f: &Field) -> Poly {
        let mut c = self.0.clone();
        let n = c.len();
        // Repeated synthetic division by (x - a).
        for i in 0..n {
            for j in (i..n - 1).rev() {
                c[j] = f.add(c[j], f.mul(a, c[j + 1]));
            }
        }
        Poly::from_coeffs(c)
    }

    pub fn mul_mod(&self, o: &Poly, m: &Poly, f: &Field) -> Poly {
        self.mul(o, f).rem(m, f)
    }

    pub fn pow_mod(&self, mut e: u64, m: &Poly, f: &Field) -> Poly {
        let mut acc = Poly::one().rem(m, f);
        let mut b = self.rem(m, f);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&b, m, f);
            }
            b = b.mul_mod(&b, m, f);
            e >>= 1;
        }
        acc
    }

    /// Largest `k` with `factor^k | self` (`self` nonzero, `factor` of
    /// positive degree).
    pub fn multiplicity(&self, factor: &Poly, f: &Field) -> u32 {
        let mut k = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(factor, f);
            if !r.is_zero() || cur.is_zero() {
                return k;
            }
            k += 1;
            cur = q;
        }
    }

    /// For `self = g^p`, returns `g`.
    fn pth_root(&self, f: &Field) -> Poly {
        let p = f.characteristic() as usize;
        let q_over_p = f.order() / f.characteristic();
        Poly::from_coeffs(self.0.iter().step_by(p).map(|&c| f.pow_u(c, q_over_p)).collect())
    }

    /// Product of the distinct monic irreducible factors.
    pub fn radical(&self, f: &Field) -> Poly {
        if self.deg() == 0 {
            return Poly::one();
        }
        let d = self.derivative(f);
        if d.is_zero() {
            return self.pth_root(f).radical(f);
        }
        let g = self.gcd(&d, f);
        let w = self.exact_div(&g, f).monic(f);
        let rg = g.radical(f);
        let common = w.gcd(&rg, f);
        w.mul(&rg, f).exact_div(&common, f).monic(f)
    }

    /// Rabin-style irreducibility test over `f`.
    pub fn is_irreducible(&self, f: &Field) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let m = self.monic(f);
        let x = Poly::x();
        let frob = |k: usize| {
            let mut cur = x.clone();
            for _ in 0..k {
                cur = cur.pow_mod(f.order(), &m, f);
            }
            cur
        };
        if frob(n) != x {
            return false;
        }
        let mut rest = n;
        let mut r = 2;
        while r <= rest {
            if rest % r == 0 {
                while rest % r == 0 {
                    rest /= r;
                }
                let h = frob(n / r).sub(&x, f);
                if m.gcd(&h, f).deg() != 0 {
                    return false;
                }
            }
            r += 1;
        }
        true
    }

    /// Distinct monic irreducible factors, sorted by degree then encoding.
    pub fn irreducible_factors(&self, f: &Field) -> Vec<Poly> {
        if self.deg() == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(0x1cd_a9c0de);
        for (d, g) in distinct_degree(&self.radical(f), f) {
            equal_degree(&g, d, f, &mut rng, &mut out);
        }
        out.sort();
        out
    }

    /// All roots in `f`, ascending.
    pub fn roots(&self, f: &Field) -> Vec<Fe> {
        let mut roots: Vec<Fe> = self
            .irreducible_factors(f)
            .into_iter()
            .filter(|g| g.deg() == 1)
            .map(|g| f.neg(g.coeff(0)))
            .collect();
        roots.sort();
        roots
    }
}

fn distinct_degree(g: &Poly, f: &Field) -> Vec<(usize, Poly)> {
    let mut out = Vec::new();
    let mut g = g.monic(f);
    let x = Poly::x();
    let mut h = x.clone();
    let mut d = 0;
    while g.deg() >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(f.order(), &g, f);
        let gd = g.gcd(&h.sub(&x, f), f);
        if gd.deg() > 0 {
            g = g.exact_div(&gd, f);
            h = h.rem(&g, f);
            out.push((d, gd));
        }
    }
    if g.deg() > 0 {
        out.push((g.deg(), g));
    }
    out
}

fn equal_degree(g: &Poly, d: usize, f: &Field, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    let n = g.deg();
    if n == d {
        out.push(g.monic(f));
        return;
    }
    loop {
        let a = Poly::from_coeffs((0..n).map(|_| Fe(rng.gen_range(0..f.order()))).collect());
        if a.deg() == 0 {
            continue;
        }
        let b = if f.characteristic() == 2 {
            // Absolute trace to GF(2) of the residue algebra.
            let steps = f.degree() as usize * d;
            let mut cur = a.rem(g, f);
            let mut acc = cur.clone();
            for _ in 1..steps {
                cur = cur.mul_mod(&cur, g, f);
                acc = acc.add(&cur, f);
            }
            acc
        } else {
            let mut cur = a.rem(g, f);
            let mut acc = cur.clone();
            for _ in 1..d {
                cur = cur.pow_mod(f.order(), g, f);
                acc = acc.mul_mod(&cur, g, f);
            }
            acc.pow_mod((f.order() - 1) / 2, g, f).sub(&Poly::one(), f)
        };
        let u = g.gcd(&b, f);
        if u.deg() > 0 && u.deg() < n {
            let v = g.exact_div(&u, f);
            equal_degree(&u, d, f, rng, out);
            equal_degree(&v, d, f, rng, out);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf16() -> Field {
        Field::new(2, 4, &[1, 1, 0, 0, 1]).unwrap()
    }

    #[test]
    fn factors_x_q_minus_x_into_linears() {
        let f = gf16();
        let p = Poly::monomial(Fe::ONE, 16).sub(&Poly::x(), &f);
        let fac = p.irreducible_factors(&f);
        assert_eq!(fac.len(), 16);
        assert!(fac.iter().all(|g| g.deg() == 1));
        assert_eq!(p.roots(&f), f.elements().collect::<Vec<_>>());
    }

    #[test]
    fn radical_strips_multiplicities() {
        let f = Field::prime(3).unwrap();
        let a = Poly::linear(Fe(1), &f);
        let b = Poly::from_coeffs(vec![Fe(1), Fe(0), Fe(1)]); // x^2+1, irreducible mod 3
        let p = a.pow(3, &f).mul(&b.pow(2, &f), &f);
        assert_eq!(p.radical(&f), a.mul(&b, &f).monic(&f));
        assert_eq!(p.irreducible_factors(&f), vec![a.clone(), b.clone()]);
        assert_eq!(p.multiplicity(&a, &f), 3);
        assert_eq!(p.multiplicity(&b, &f), 2);
    }

    #[test]
    fn taylor_shift_matches_evaluation() {
        let f = gf16();
        let p = Poly::from_coeffs(vec![Fe(3), Fe(7), Fe(0), Fe(1)]);
        let a = Fe(5);
        let s = p.taylor_shift(a, &f);
        for t in f.elements() {
            assert_eq!(s.eval(t, &f), p.eval(f.add(a, t), &f));
        }
    }

    #[test]
    fn mixed_degree_factorization() {
        let f = gf16();
        let irr: Vec<Poly> = [2usize, 3]
            .iter()
            .map(|&d| {
                (1u64..)
                    .map(|i| {
                        let mut v: Vec<Fe> = (0..d).map(|k| Fe((i >> (4 * k)) & 15)).collect();
                        v.push(Fe::ONE);
                        Poly::from_coeffs(v)
                    })
                    .find(|p| p.is_irreducible(&f))
                    .unwrap()
            })
            .collect();
        let prod = irr[0].mul(&irr[1], &f).mul(&Poly::linear(Fe(9), &f), &f);
        let fac = prod.irreducible_factors(&f);
        assert_eq!(fac.len(), 3);
        for g in &irr {
            assert!(fac.contains(g));
        }
    }
}
