use std::fmt;

use crate::curve::{Curve, LocalExpansion, Place};
use crate::gf::{Fe, Field, Poly};

use super::{Divisor, FfError};

/// `h(x, y) / d(x)` with `h = sum_j h[j](x) y^j`, `j < deg_y`, reduced
/// modulo the curve equation, `d` monic and coprime to the content of `h`.
#[derive(Clone, PartialEq, Eq)]
pub struct CurveFunction {
    curve: Curve,
    num: Vec<Poly>,
    den: Poly,
}

/// Fraction-free determinant over F[x].
fn bareiss_det(mut m: Vec<Vec<Poly>>, f: &Field) -> Poly {
    let n = m.len();
    let mut sign_neg = false;
    let mut prev = Poly::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign_neg = !sign_neg;
                }
                None => return Poly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].mul(&m[k][k], f).sub(&m[i][k].mul(&m[k][j], f), f);
                m[i][j] = t.exact_div(&prev, f);
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_neg {
        det.neg(f)
    } else {
        det
    }
}

impl CurveFunction {
    /// Builds `sum_j num[j] y^j / den`, reducing any `y`-degree and
    /// normalizing the fraction. `den` must be nonzero.
    pub fn new(curve: &Curve, num: Vec<Poly>, den: Poly) -> CurveFunction {
        assert!(!den.is_zero(), "zero denominator");
        let f = curve.field();
        let mut num = num;
        let py = curve.deg_y() as usize;
        if py == 1 {
            num.truncate(1);
        } else {
            let minus_one = f.neg(Fe::ONE);
            for j in (py..num.len()).rev() {
                let c = std::mem::take(&mut num[j]);
                if c.is_zero() {
                    continue;
                }
                // y^j = y^{j-p_y} (f(x) - y)
                num[j - py] = num[j - py].add(&c.mul(curve.rhs(), f), f);
                num[j - py + 1] = num[j - py + 1].add(&c.scale(minus_one, f), f);
            }
            num.truncate(py);
        }
        while num.last().is_some_and(Poly::is_zero) {
            num.pop();
        }
        let mut den = den;
        if num.is_empty() {
            den = Poly::one();
        } else {
            let g = num.iter().fold(den.clone(), |g, h| g.gcd(h, f));
            if g.deg() > 0 {
                den = den.exact_div(&g, f);
                num = num.iter().map(|h| h.exact_div(&g, f)).collect();
            }
            let inv = f.inv(den.lead()).unwrap();
            den = den.scale(inv, f);
            num = num.iter().map(|h| h.scale(inv, f)).collect();
        }
        CurveFunction { curve: curve.clone(), num, den }
    }

    pub fn from_poly(curve: &Curve, p: Poly) -> CurveFunction {
        CurveFunction::new(curve, vec![p], Poly::one())
    }

    pub fn constant(curve: &Curve, c: Fe) -> CurveFunction {
        CurveFunction::from_poly(curve, Poly::constant(c))
    }

    pub fn one(curve: &Curve) -> CurveFunction {
        CurveFunction::constant(curve, Fe::ONE)
    }

    pub fn x(curve: &Curve) -> CurveFunction {
        CurveFunction::from_poly(curve, Poly::x())
    }

    pub fn y(curve: &Curve) -> CurveFunction {
        CurveFunction::new(curve, vec![Poly::zero(), Poly::one()], Poly::one())
    }

    /// `x^i y^j`.
    pub fn monomial(curve: &Curve, i: usize, j: usize) -> CurveFunction {
        let mut num = vec![Poly::zero(); j + 1];
        num[j] = Poly::monomial(Fe::ONE, i);
        CurveFunction::new(curve, num, Poly::one())
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }
    pub fn numerator(&self) -> &[Poly] {
        &self.num
    }
    pub fn denominator(&self) -> &Poly {
        &self.den
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    fn check(&self, o: &CurveFunction) -> Result<(), FfError> {
        if self.curve == o.curve {
            Ok(())
        } else {
            Err(FfError::MixedCurves)
        }
    }

    pub fn mul(&self, o: &CurveFunction) -> Result<CurveFunction, FfError> {
        self.check(o)?;
        let f = self.curve.field();
        if self.is_zero() || o.is_zero() {
            return Ok(CurveFunction::new(&self.curve, vec![], Poly::one()));
        }
        let mut prod = vec![Poly::zero(); self.num.len() + o.num.len() - 1];
        for (i, a) in self.num.iter().enumerate() {
            for (j, b) in o.num.iter().enumerate() {
                prod[i + j] = prod[i + j].add(&a.mul(b, f), f);
            }
        }
        Ok(CurveFunction::new(&self.curve, prod, self.den.mul(&o.den, f)))
    }

    pub fn add(&self, o: &CurveFunction) -> Result<CurveFunction, FfError> {
        self.check(o)?;
        let f = self.curve.field();
        let n = self.num.len().max(o.num.len());
        let get = |v: &[Poly], j: usize| v.get(j).cloned().unwrap_or_default();
        let num = (0..n)
            .map(|j| get(&self.num, j).mul(&o.den, f).add(&get(&o.num, j).mul(&self.den, f), f))
            .collect();
        Ok(CurveFunction::new(&self.curve, num, self.den.mul(&o.den, f)))
    }

    pub fn neg(&self) -> CurveFunction {
        let f = self.curve.field();
        CurveFunction::new(&self.curve, self.num.iter().map(|h| h.neg(f)).collect(), self.den.clone())
    }

    pub fn sub(&self, o: &CurveFunction) -> Result<CurveFunction, FfError> {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: Fe) -> CurveFunction {
        let f = self.curve.field();
        CurveFunction::new(&self.curve, self.num.iter().map(|h| h.scale(c, f)).collect(), self.den.clone())
    }

    /// Divides by a nonzero polynomial in `x`.
    pub fn div_poly(&self, p: &Poly) -> CurveFunction {
        CurveFunction::new(&self.curve, self.num.clone(), self.den.mul(p, self.curve.field()))
    }

    /// `N(h)`: the norm of the numerator down to F(x), as a polynomial in x.
    pub fn numerator_norm(&self) -> Poly {
        let f = self.curve.field();
        let py = self.curve.deg_y() as usize;
        if py == 1 {
            return self.num.first().cloned().unwrap_or_default();
        }
        // Column j = coordinates of h * y^j.
        let h = CurveFunction::new(&self.curve, self.num.clone(), Poly::one());
        let mut cols = Vec::with_capacity(py);
        for j in 0..py {
            let prod = h.mul(&CurveFunction::monomial(&self.curve, 0, j)).unwrap();
            let mut col = prod.num.clone();
            col.resize(py, Poly::zero());
            cols.push(col);
        }
        let m: Vec<Vec<Poly>> = (0..py).map(|i| (0..py).map(|j| cols[j][i].clone()).collect()).collect();
        bareiss_det(m, f)
    }

    /// Pole weight `max_j (w_x deg h_j + w_y j)` of the numerator.
    pub fn numerator_weight(&self) -> Option<i64> {
        let (wx, wy) = self.curve.weights();
        self.num
            .iter()
            .enumerate()
            .filter(|(_, h)| !h.is_zero())
            .map(|(j, h)| wx * h.deg() as i64 + wy * j as i64)
            .max()
    }

    /// `v_P(self)`.
    pub fn valuation(&self, place: &Place) -> Result<i64, FfError> {
        let Some(weight) = self.numerator_weight() else {
            return Err(FfError::ZeroFunction);
        };
        let f = self.curve.field();
        let (wx, _) = self.curve.weights();
        match place {
            Place::Infinity => Ok(-weight + wx * self.den.deg() as i64),
            _ => {
                let pi = place.x_poly(f).unwrap();
                let den_ord = self.den.multiplicity(&pi, f) as i64;
                // v_P(h) <= deg((h)_0) = weight
                let n = weight as usize + 1;
                let e = self.curve.local_expansion(place, n)?;
                let s = e.eval_series(&self.num, n);
                let ord = s.iter().position(|c| !c.is_zero()).expect("valuation bounded by pole weight") as i64;
                Ok(ord - den_ord)
            }
        }
    }

    /// Laurent expansion `sum_{k >= -den_ord} c_k t^k` at an affine place,
    /// returned as `(lowest exponent, coefficients)` with `len` terms.
    pub fn laurent(&self, place: &Place, len: usize) -> Result<(i64, Vec<Fe>, LocalExpansion), FfError> {
        if place.is_infinity() {
            return Err(FfError::Unsupported("Laurent series at O".into()));
        }
        let f = self.curve.field();
        let pi = place.x_poly(f).unwrap();
        let k = self.den.multiplicity(&pi, f) as usize;
        let d1 = self.den.exact_div(&pi.pow(k as u32, f), f);
        let e = self.curve.local_expansion(place, len.max(1))?;
        let ef = e.field().clone();
        let hs = e.eval_series(&self.num, len);
        // (x - x0)^k = t^k * (pi(x) / (x - x0))^k evaluated as a series
        let pis = e.poly_series(&pi, len + 1);
        let unit: Vec<Fe> = pis[1..].to_vec();
        let mut dser = e.poly_series(&d1, len);
        for _ in 0..k {
            dser = crate::curve::mul_trunc(&dser, &unit, len, &ef);
        }
        let inv = series_inverse(&dser, len, &ef);
        Ok((-(k as i64), crate::curve::mul_trunc(&hs, &inv, len, &ef), e))
    }

    /// Value at a place where the function has no pole, in the residue field.
    pub fn eval_residue_field(&self, place: &Place) -> Result<Fe, FfError> {
        if place.is_infinity() {
            let v = self.valuation(place)?;
            if v < 0 {
                return Err(FfError::Pole(place.render()));
            }
            if v > 0 {
                return Ok(Fe::ZERO);
            }
            // Weight zero forces the top monomial to be x^{deg d}.
            let top = &self.num[0];
            debug_assert_eq!(top.deg(), self.den.deg());
            return Ok(top.lead());
        }
        let f = self.curve.field();
        if let Place::Affine { x, y } = place {
            let d = self.den.eval(*x, f);
            if !d.is_zero() {
                let h = self.num.iter().rev().fold(Fe::ZERO, |acc, hj| f.add(f.mul(acc, *y), hj.eval(*x, f)));
                return Ok(f.div(h, d).unwrap());
            }
        }
        let (low, c, _) = self.laurent(place, 1 + self.den.deg())?;
        let idx = -low;
        if c[..idx as usize].iter().any(|v| !v.is_zero()) {
            return Err(FfError::Pole(place.render()));
        }
        Ok(c[idx as usize])
    }

    /// Value at a degree-one place.
    pub fn eval(&self, place: &Place) -> Result<Fe, FfError> {
        if !place.is_rational() {
            return Err(FfError::Unsupported("evaluation at a place of degree > 1".into()));
        }
        self.eval_residue_field(place)
    }

    /// The principal divisor `(self)`.
    pub fn divisor(&self) -> Result<Divisor, FfError> {
        if self.is_zero() {
            return Err(FfError::ZeroFunction);
        }
        let f = self.curve.field();
        let mut d = Divisor::zero(&self.curve);
        d.add_term(Place::Infinity, self.valuation(&Place::Infinity)?);
        let cand = self.numerator_norm().mul(&self.den, f);
        for pi in cand.irreducible_factors(f) {
            for place in self.curve.fiber_places(&pi)? {
                let v = self.valuation(&place)?;
                d.add_term(place, v);
            }
        }
        assert_eq!(d.degree(), 0, "principal divisor of nonzero degree for {self:?}");
        Ok(d)
    }

    /// Monomial rendering, e.g. `(y + x^2 + 3*x)/(x^2+x)`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let (wx, wy) = self.curve.weights();
        let mut terms: Vec<(i64, String)> = Vec::new();
        for (j, h) in self.num.iter().enumerate() {
            for (i, c) in h.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut mono = Vec::new();
                match i {
                    0 => {}
                    1 => mono.push("x".to_string()),
                    _ => mono.push(format!("x^{i}")),
                }
                match j {
                    0 => {}
                    1 => mono.push("y".to_string()),
                    _ => mono.push(format!("y^{j}")),
                }
                let body = mono.join("*");
                let s = match (c.0, body.is_empty()) {
                    (_, true) => c.0.to_string(),
                    (1, false) => body,
                    (_, false) => format!("{}*{body}", c.0),
                };
                terms.push((wx * i as i64 + wy * j as i64, s));
            }
        }
        terms.sort_by_key(|t| std::cmp::Reverse(t.0));
        let num = terms.into_iter().map(|t| t.1).collect::<Vec<_>>().join(" + ");
        if self.den.deg() == 0 {
            num
        } else {
            format!("({num})/({})", self.den.render("x"))
        }
    }
}

/// Inverse of a power series with nonzero constant term, to `n` terms.
pub(crate) fn series_inverse(a: &[Fe], n: usize, f: &Field) -> Vec<Fe> {
    let a0 = f.inv(a[0]).expect("unit series");
    let mut out = vec![Fe::ZERO; n];
    if n == 0 {
        return out;
    }
    out[0] = a0;
    for k in 1..n {
        let mut s = Fe::ZERO;
        for i in 1..=k.min(a.len() - 1) {
            s = f.add(s, f.mul(a[i], out[k - i]));
        }
        out[k] = f.neg(f.mul(s, a0));
    }
    out
}

impl fmt::Debug for CurveFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for CurveFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
