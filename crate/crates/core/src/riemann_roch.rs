//! Bases of Riemann–Roch spaces `L(G)`.
//!
//! Every `f in L(G)` is written `h / d(x)` with `d = prod pi^{e_pi}` clearing
//! the positive part of `G` fiber by fiber. The numerator then lies in the
//! monomial space `L(s O)` and satisfies finitely many vanishing conditions,
//! read off truncated local expansions at the places over each cleared fiber.

use std::collections::BTreeMap;

use crate::curve::{mul_trunc, Curve, Place};
use crate::function_field::{CurveFunction, Divisor, FfError};
use crate::gf::{Fe, Poly};
use crate::linalg::Matrix;

/// A basis of `L(G)` in weight-reduced form: leading monomials are distinct
/// with coefficient 1, ordered by increasing pole order at `O`.
#[derive(Clone, Debug)]
pub struct RRBasis {
    pub divisor: Divisor,
    pub functions: Vec<CurveFunction>,
}

impl RRBasis {
    pub fn dim(&self) -> usize {
        self.functions.len()
    }

    /// Independent check through full divisors: `(f) + G >= 0` for every
    /// basis element.
    pub fn verify_membership(&self) -> Result<bool, FfError> {
        for f in &self.functions {
            let d = f.divisor()?.add(&self.divisor)?;
            if d.terms().any(|(_, c)| c < 0) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Reduced monomials `x^i y^j` of weight at most `s`, by increasing weight.
pub fn monomials_up_to(curve: &Curve, s: i64) -> Vec<(usize, usize)> {
    let (wx, wy) = curve.weights();
    let mut out = Vec::new();
    if s < 0 {
        return out;
    }
    for j in 0..curve.deg_y() as i64 {
        let mut i = 0;
        while wx * i + wy * j <= s {
            out.push((i as usize, j as usize));
            i += 1;
        }
    }
    out.sort_by_key(|&(i, j)| wx * i as i64 + wy * j as i64);
    out
}

fn power_series(base: &[Fe], e: usize, n: usize, f: &crate::gf::Field) -> Vec<Vec<Fe>> {
    let mut one = vec![Fe::ZERO; n];
    if n > 0 {
        one[0] = Fe::ONE;
    }
    let mut out = vec![one];
    for k in 1..=e {
        let next = mul_trunc(&out[k - 1], base, n, f);
        out.push(next);
    }
    out
}

pub fn rr_basis(curve: &Curve, g: &Divisor) -> Result<RRBasis, FfError> {
    if g.curve() != curve {
        return Err(FfError::MixedCurves);
    }
    let field = curve.field();
    let (wx, _) = curve.weights();
    // Group affine support by x-fiber.
    let mut fibers: BTreeMap<Poly, i64> = BTreeMap::new();
    for (p, m) in g.terms() {
        if let Some(pi) = p.x_poly(field) {
            let e = fibers.entry(pi).or_insert(0);
            *e = (*e).max(m.max(0));
        }
    }
    let mut d = Poly::one();
    for (pi, &e) in &fibers {
        d = d.mul(&pi.pow(e as u32, field), field);
    }
    let s = g.coeff(&Place::Infinity) + wx * d.deg() as i64;
    let monos = monomials_up_to(curve, s);
    if monos.is_empty() {
        return Ok(RRBasis { divisor: g.clone(), functions: Vec::new() });
    }
    let mut rows: Vec<Vec<Fe>> = Vec::new();
    for (pi, &e) in &fibers {
        for place in curve.fiber_places(pi)? {
            let need = e - g.coeff(&place);
            if need <= 0 {
                continue;
            }
            let n = need as usize;
            let exp = curve.local_expansion(&place, n)?;
            let ef = exp.field().clone();
            let max_i = monos.iter().map(|m| m.0).max().unwrap();
            let max_j = monos.iter().map(|m| m.1).max().unwrap();
            let xs = power_series(&exp.poly_series(&Poly::x(), n), max_i, n, &ef);
            let ys = power_series(&exp.y, max_j, n, &ef);
            let series: Vec<Vec<Fe>> = monos.iter().map(|&(i, j)| mul_trunc(&xs[i], &ys[j], n, &ef)).collect();
            if place.is_rational() {
                for k in 0..n {
                    rows.push(series.iter().map(|s| s[k]).collect());
                }
            } else {
                // Tr(beta^l v) for a basis beta^l of the residue field.
                let beta = ef.generator();
                let deg = exp.ext.degree();
                for k in 0..n {
                    let mut bl = Fe::ONE;
                    for _ in 0..deg {
                        rows.push(series.iter().map(|s| exp.ext.trace(ef.mul(bl, s[k]))).collect());
                        bl = ef.mul(bl, beta);
                    }
                }
            }
        }
    }
    let ncols = monos.len();
    let kernel = if rows.is_empty() {
        Matrix::identity(field, ncols)
    } else {
        Matrix::from_rows(field, ncols, rows).expect("constraint rows").kernel_basis()
    };
    // Weight-reduced echelon form: columns by decreasing weight.
    let order: Vec<usize> = (0..ncols).rev().collect();
    let reduced = kernel.select_columns(&order).row_reduced();
    let mut functions: Vec<CurveFunction> = reduced
        .rows()
        .map(|row| {
            let mut num = vec![Poly::zero(); curve.deg_y() as usize];
            let mut coeffs: Vec<Vec<Fe>> = vec![Vec::new(); curve.deg_y() as usize];
            for (col, &c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (i, j) = monos[order[col]];
                if coeffs[j].len() <= i {
                    coeffs[j].resize(i + 1, Fe::ZERO);
                }
                coeffs[j][i] = c;
            }
            for (j, c) in coeffs.into_iter().enumerate() {
                num[j] = Poly::from_coeffs(c);
            }
            CurveFunction::new(curve, num, d.clone())
        })
        .collect();
    functions.reverse();
    Ok(RRBasis { divisor: g.clone(), functions })
}

pub fn rr_dim(curve: &Curve, g: &Divisor) -> Result<usize, FfError> {
    Ok(rr_basis(curve, g)?.dim())
}

/// `i(G) = l(G) - deg G - 1 + g`.
pub fn speciality_index(curve: &Curve, g: &Divisor) -> Result<i64, FfError> {
    Ok(rr_dim(curve, g)? as i64 - g.degree() - 1 + curve.genus() as i64)
}

pub fn is_non_special(curve: &Curve, g: &Divisor) -> Result<bool, FfError> {
    Ok(speciality_index(curve, g)? == 0)
}

/// A canonical divisor: the divisor of `dx`.
pub fn canonical_divisor(curve: &Curve) -> Divisor {
    Divisor::single(curve, Place::Infinity, curve.dx_order_at_infinity())
}

/// Principality on any curve: `deg = 0` and `L(-A) != 0`.
pub fn is_principal(curve: &Curve, a: &Divisor) -> Result<bool, FfError> {
    Ok(a.degree() == 0 && rr_dim(curve, &a.neg())? > 0)
}

/// The function `f` with `(f) = delta`, normalized to leading coefficient 1.
pub fn function_with_divisor(curve: &Curve, delta: &Divisor) -> Result<CurveFunction, FfError> {
    if delta.degree() != 0 {
        return Err(FfError::NotPrincipal(delta.render()));
    }
    let basis = rr_basis(curve, &delta.neg())?;
    match basis.functions.as_slice() {
        [f] => Ok(f.clone()),
        _ => Err(FfError::NotPrincipal(delta.render())),
    }
}
