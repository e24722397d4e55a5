use std::collections::BTreeMap;
use std::fmt;

use crate::curve::{Curve, Place};

use super::FfError;

/// A divisor: a finite formal sum of places with nonzero integer
/// coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Divisor {
    curve: Curve,
    coeffs: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn zero(curve: &Curve) -> Divisor {
        Divisor { curve: curve.clone(), coeffs: BTreeMap::new() }
    }

    pub fn from_terms<I: IntoIterator<Item = (Place, i64)>>(curve: &Curve, terms: I) -> Divisor {
        let mut d = Divisor::zero(curve);
        for (p, c) in terms {
            d.add_term(p, c);
        }
        d
    }

    /// `c * P`.
    pub fn single(curve: &Curve, place: Place, c: i64) -> Divisor {
        Divisor::from_terms(curve, [(place, c)])
    }

    /// Sum of distinct places with coefficient one.
    pub fn sum_of(curve: &Curve, places: &[Place]) -> Divisor {
        Divisor::from_terms(curve, places.iter().map(|p| (p.clone(), 1)))
    }

    pub fn add_term(&mut self, place: Place, c: i64) {
        let e = self.coeffs.entry(place).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.retain(|_, v| *v != 0);
        }
    }

    /// Builder form of [`Divisor::add_term`].
    pub fn with(mut self, place: Place, c: i64) -> Divisor {
        self.add_term(place, c);
        self
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn coeff(&self, p: &Place) -> i64 {
        self.coeffs.get(p).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.coeffs.iter().map(|(p, &c)| (p, c))
    }

    pub fn support(&self) -> impl Iterator<Item = &Place> {
        self.coeffs.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.iter().map(|(p, &c)| c * p.degree() as i64).sum()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|&c| c > 0)
    }

    fn same_curve(&self, o: &Divisor) -> Result<(), FfError> {
        if self.curve == o.curve {
            Ok(())
        } else {
            Err(FfError::MixedCurves)
        }
    }

    pub fn add(&self, o: &Divisor) -> Result<Divisor, FfError> {
        self.same_curve(o)?;
        let mut out = self.clone();
        for (p, c) in o.terms() {
            out.add_term(p.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Divisor) -> Result<Divisor, FfError> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Divisor {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> Divisor {
        Divisor::from_terms(&self.curve, self.terms().map(|(p, c)| (p.clone(), c * k)))
    }

    fn combine(&self, o: &Divisor, op: fn(i64, i64) -> i64) -> Result<Divisor, FfError> {
        self.same_curve(o)?;
        let places: std::collections::BTreeSet<&Place> = self.support().chain(o.support()).collect();
        Ok(Divisor::from_terms(&self.curve, places.into_iter().map(|p| (p.clone(), op(self.coeff(p), o.coeff(p))))))
    }

    /// Coefficient-wise minimum.
    pub fn gcd(&self, o: &Divisor) -> Result<Divisor, FfError> {
        self.combine(o, i64::min)
    }

    /// Coefficient-wise maximum.
    pub fn lmd(&self, o: &Divisor) -> Result<Divisor, FfError> {
        self.combine(o, i64::max)
    }

    /// Whether the supports are disjoint.
    pub fn disjoint(&self, o: &Divisor) -> bool {
        self.support().all(|p| o.coeff(p) == 0)
    }

    /// Text form `c1*P1 + c2*P2 - c3*P3`, or `0`.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for (i, (p, c)) in self.terms().enumerate() {
            let (sign, a) = if c < 0 { ("-", -c) } else { ("+", c) };
            if i == 0 {
                if c < 0 {
                    s.push('-');
                }
            } else {
                s.push_str(&format!(" {sign} "));
            }
            s.push_str(&format!("{a}*{}", p.render()));
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }

    /// Parses the text form. A term without `c*` has coefficient 1.
    pub fn parse(text: &str, curve: &Curve) -> Result<Divisor, FfError> {
        let t = text.trim();
        let mut d = Divisor::zero(curve);
        if t == "0" {
            return Ok(d);
        }
        let bad = |m: &str| FfError::Parse(format!("divisor `{t}`: {m}"));
        // Split at top-level signs; place texts may contain '+' inside brackets.
        let mut terms: Vec<(i64, String)> = Vec::new();
        let mut depth = 0i32;
        let mut sign = 1i64;
        let mut cur = String::new();
        for ch in t.chars() {
            match ch {
                '(' | '[' => depth += 1,
                ')' | ']' => depth -= 1,
                _ => {}
            }
            if depth == 0 && (ch == '+' || ch == '-') {
                if !cur.trim().is_empty() {
                    terms.push((sign, std::mem::take(&mut cur)));
                } else if !terms.is_empty() || sign < 0 {
                    return Err(bad("dangling sign"));
                }
                cur.clear();
                sign = if ch == '-' { -1 } else { 1 };
                continue;
            }
            cur.push(ch);
        }
        if !cur.trim().is_empty() {
            terms.push((sign, cur));
        }
        if terms.is_empty() {
            return Err(bad("empty"));
        }
        for (sign, term) in terms {
            let term = term.trim();
            let (coef, place) = match term.split_once('*') {
                Some((c, p)) if c.trim().chars().all(|ch| ch.is_ascii_digit()) => {
                    (c.trim().parse::<i64>().map_err(|_| bad("bad coefficient"))?, p)
                }
                _ => (1, term),
            };
            let place = Place::parse(place, curve)?;
            d.add_term(place, sign * coef);
        }
        Ok(d)
    }
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
