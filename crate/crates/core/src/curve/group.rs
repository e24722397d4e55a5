//! Group law on `y^2 + y = x^3 + b x + c` (Weierstrass with a1 = a2 = 0,
//! a3 = 1, a4 = b, a6 = c) over GF(2^m).

use crate::gf::Fe;

use super::{Curve, CurveError, Family, Place};

impl Curve {
    fn elliptic_check(&self, p: &Place) -> Result<(), CurveError> {
        if !self.is_elliptic() {
            return Err(CurveError::Unsupported("group law needs an elliptic curve".into()));
        }
        match p {
            Place::Infinity => Ok(()),
            Place::Affine { x, y } if self.on_curve(*x, *y) => Ok(()),
            Place::Affine { x, y } => Err(CurveError::NotOnCurve(x.0, y.0)),
            Place::Higher(_) => Err(CurveError::Unsupported("group law on rational points only".into())),
        }
    }

    pub fn elliptic_neg(&self, p: &Place) -> Result<Place, CurveError> {
        self.elliptic_check(p)?;
        Ok(match p {
            Place::Affine { x, y } => Place::Affine { x: *x, y: self.field().add(*y, Fe::ONE) },
            other => other.clone(),
        })
    }

    pub fn elliptic_add(&self, p: &Place, q: &Place) -> Result<Place, CurveError> {
        self.elliptic_check(p)?;
        self.elliptic_check(q)?;
        let Family::EllipticAS { b, .. } = *self.family() else { unreachable!() };
        let f = self.field();
        let (x1, y1, x2, y2) = match (p, q) {
            (Place::Infinity, _) => return Ok(q.clone()),
            (_, Place::Infinity) => return Ok(p.clone()),
            (Place::Affine { x: x1, y: y1 }, Place::Affine { x: x2, y: y2 }) => (*x1, *y1, *x2, *y2),
            _ => unreachable!(),
        };
        let (lambda, nu) = if x1 != x2 {
            let den = f.inv(f.add(x1, x2)).expect("distinct x");
            let lambda = f.mul(f.add(y1, y2), den);
            let nu = f.mul(f.add(f.mul(y1, x2), f.mul(y2, x1)), den);
            (lambda, nu)
        } else if y1 != y2 {
            // y2 = y1 + 1: q = -p
            return Ok(Place::Infinity);
        } else {
            let x1sq = f.mul(x1, x1);
            let lambda = f.add(x1sq, b);
            let nu = f.add(f.add(f.mul(x1sq, x1), f.mul(b, x1)), y1);
            (lambda, nu)
        };
        let x3 = if x1 != x2 { f.add(f.add(f.mul(lambda, lambda), x1), x2) } else { f.mul(lambda, lambda) };
        let y3 = f.add(f.add(f.mul(lambda, x3), nu), Fe::ONE);
        Ok(Place::Affine { x: x3, y: y3 })
    }

    /// `k * P` by double-and-add; negative `k` uses `-P`.
    pub fn elliptic_mul(&self, p: &Place, k: i64) -> Result<Place, CurveError> {
        self.elliptic_check(p)?;
        let base = if k < 0 { self.elliptic_neg(p)? } else { p.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Place::Infinity;
        let mut cur = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.elliptic_add(&acc, &cur)?;
            }
            cur = self.elliptic_add(&cur, &cur)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Whether `r * P = O`.
    pub fn torsion_test(&self, p: &Place, r: u64) -> Result<bool, CurveError> {
        Ok(self.elliptic_mul(p, r as i64)?.is_infinity())
    }
}
