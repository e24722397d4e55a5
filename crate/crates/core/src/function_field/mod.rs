//! Divisors, functions `h(x,y)/d(x)`, differentials `f dx`, valuations and
//! residues.

mod divisor;
mod function;

use crate::curve::{Curve, CurveError, Place};
use crate::gf::Fe;

pub use divisor::Divisor;
pub use function::CurveFunction;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FfError {
    #[error("objects belong to different curves")]
    MixedCurves,
    #[error("the zero function has no divisor or valuation")]
    ZeroFunction,
    #[error("function has a pole at {0}")]
    Pole(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("divisor {0} is not principal")]
    NotPrincipal(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// The differential `f dx`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Differential {
    pub f: CurveFunction,
}

impl Differential {
    pub fn new(f: CurveFunction) -> Result<Differential, FfError> {
        if f.is_zero() {
            return Err(FfError::ZeroFunction);
        }
        Ok(Differential { f })
    }

    pub fn curve(&self) -> &Curve {
        self.f.curve()
    }

    /// `(f dx) = (f) + (dx)`, where `(dx)` is supported at `O`.
    pub fn divisor(&self) -> Result<Divisor, FfError> {
        let c = self.curve();
        let d = self.f.divisor()?.with(Place::Infinity, c.dx_order_at_infinity());
        assert_eq!(d.degree(), 2 * c.genus() as i64 - 2, "differential divisor degree");
        Ok(d)
    }

    /// Coefficient of `t^{-1}` in the Laurent expansion of `f` in
    /// `t = x - alpha` at a degree-one affine place.
    pub fn residue(&self, place: &Place) -> Result<Fe, FfError> {
        if !matches!(place, Place::Affine { .. }) {
            return Err(FfError::Unsupported("residues only at degree-one affine places".into()));
        }
        let k = self.f.denominator().multiplicity(&place.x_poly(self.curve().field()).unwrap(), self.curve().field());
        if k == 0 {
            return Ok(Fe::ZERO);
        }
        let (low, c, _) = self.f.laurent(place, k as usize)?;
        Ok(c[(-1 - low) as usize])
    }
}

impl Divisor {
    /// The point `D-bar = (+) m_i P_i` of a divisor with rational support on
    /// an elliptic curve.
    pub fn class_point(&self) -> Result<Place, FfError> {
        let c = self.curve();
        if !c.is_elliptic() {
            return Err(FfError::Unsupported("class point needs an elliptic curve".into()));
        }
        let mut acc = Place::Infinity;
        for (p, m) in self.terms() {
            if !p.is_rational() {
                return Err(FfError::Unsupported("class point of a place of degree > 1".into()));
            }
            acc = c.elliptic_add(&acc, &c.elliptic_mul(p, m)?)?;
        }
        Ok(acc)
    }

    /// Principality on an elliptic curve: degree zero and trivial class point.
    pub fn is_principal(&self) -> Result<bool, FfError> {
        Ok(self.degree() == 0 && self.class_point()?.is_infinity())
    }
}
