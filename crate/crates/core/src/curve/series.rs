use std::sync::Arc;

use crate::gf::{Extension, Fe, Field, Poly};

use super::{Curve, CurveError, Place};

/// Power series of `y` in the uniformizer `t = x - x0` at an affine place,
/// with coefficients in the residue field.
#[derive(Clone)]
pub struct LocalExpansion {
    pub place: Place,
    /// Embedding of the base field into the residue field.
    pub ext: Arc<Extension>,
    pub x0: Fe,
    /// `y = sum_{k < order} y[k] t^k + O(t^order)`.
    pub y: Vec<Fe>,
}

/// Product of two series truncated to `n` terms.
pub fn mul_trunc(a: &[Fe], b: &[Fe], n: usize, f: &Field) -> Vec<Fe> {
    let mut out = vec![Fe::ZERO; n];
    for (i, &x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(n - i) {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

impl LocalExpansion {
    pub fn field(&self) -> &Field {
        self.ext.field()
    }

    pub fn order(&self) -> usize {
        self.y.len()
    }

    /// `p(x0 + t)` truncated to `n` terms, for `p` over the base field.
    pub fn poly_series(&self, p: &Poly, n: usize) -> Vec<Fe> {
        let shifted = self.ext.embed_poly(p).taylor_shift(self.x0, self.field());
        let mut out: Vec<Fe> = shifted.coeffs().iter().copied().take(n).collect();
        out.resize(n, Fe::ZERO);
        out
    }

    /// Series of `sum_j h[j](x) y^j`, truncated to `n <= order` terms.
    pub fn eval_series(&self, h: &[Poly], n: usize) -> Vec<Fe> {
        assert!(n <= self.order(), "series requested beyond expansion order");
        let f = self.field();
        let mut acc = vec![Fe::ZERO; n];
        for hj in h.iter().rev() {
            acc = mul_trunc(&acc, &self.y, n, f);
            for (a, b) in acc.iter_mut().zip(self.poly_series(hj, n)) {
                *a = f.add(*a, b);
            }
        }
        acc
    }
}

impl Curve {
    /// Residue-field embedding for an affine place.
    pub fn residue_extension(&self, place: &Place) -> Result<Arc<Extension>, CurveError> {
        match place {
            Place::Infinity => Err(CurveError::Unsupported("no residue embedding at O".into())),
            Place::Affine { .. } => Ok(Extension::of_degree(self.field(), 1)?),
            Place::Higher(h) => Ok(h.ext.clone()),
        }
    }

    /// Expansion of `y` in `t = x - x0` to `order` terms via
    /// `c_k = f_k - [p_y | k] c_{k/p_y}^{p_y}`.
    pub fn local_expansion(&self, place: &Place, order: usize) -> Result<LocalExpansion, CurveError> {
        let ext = self.residue_extension(place)?;
        let (x0, y0) = match place {
            Place::Affine { x, y } => (*x, *y),
            Place::Higher(h) => (h.x, h.y),
            Place::Infinity => unreachable!(),
        };
        let f = ext.field().clone();
        let mut y = vec![Fe::ZERO; order];
        if self.deg_y() > 1 && order > 0 {
            let fk = ext.embed_poly(self.rhs()).taylor_shift(x0, &f);
            let py = self.deg_y() as usize;
            y[0] = y0;
            for k in 1..order {
                let mut c = fk.coeff(k);
                if k % py == 0 {
                    c = f.sub(c, f.pow_u(y[k / py], py as u64));
                }
                y[k] = c;
            }
        }
        Ok(LocalExpansion { place: place.clone(), ext, x0, y })
    }
}
