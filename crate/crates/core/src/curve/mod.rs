//! Plane models `y^{p_y} + y = f(x)` of the four curve families, their
//! places, local expansions and (for genus one) the group law.
//!
//! Every family is an Artin–Schreier type cover of the x-line with a single
//! totally ramified place `O` at infinity. The pole orders `w_x = -v_O(x)`
//! and `w_y = -v_O(y)` are coprime and `j < w_x` for every reduced monomial
//! `x^i y^j`, so monomial weights are pairwise distinct.

mod group;
mod place;
mod series;

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::gf::{Fe, Field, GfError, Poly};

pub use place::{HigherPlace, Place};
pub use series::{mul_trunc, LocalExpansion};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurveError {
    #[error("incompatible field: {0}")]
    IncompatibleField(String),
    #[error("invalid curve spec `{0}`: {1}")]
    Parse(String, String),
    #[error("point ({0},{1}) is not on the curve")]
    NotOnCurve(u64, u64),
    #[error("{0}")]
    Unsupported(String),
    #[error("minimal polynomial {0} is not irreducible")]
    Reducible(String),
    #[error("branch {branch} out of range ({count} places above {poly})")]
    BranchOutOfRange { branch: usize, count: usize, poly: String },
    #[error("invalid place `{0}`: {1}")]
    BadPlace(String, String),
    #[error(transparent)]
    Field(#[from] GfError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    ProjectiveLine,
    /// `y^2 + y = x^3 + b x + c` in characteristic 2.
    EllipticAS { b: Fe, c: Fe },
    /// `y^2 + y = x^{q+1}` over GF(q^2), characteristic 2.
    HyperellipticAS { q: u64 },
    /// `y^q + y = x^{q+1}` over GF(q^2).
    Hermitian { q: u64 },
}

pub struct CurveModel {
    family: Family,
    field: Field,
    genus: u64,
    deg_y: u64,
    w_x: i64,
    w_y: i64,
    rhs: Poly,
    fibers: OnceLock<Vec<Vec<Fe>>>,
    points: OnceLock<Vec<Place>>,
}

/// Shared handle to a [`CurveModel`].
#[derive(Clone)]
pub struct Curve(Arc<CurveModel>);

impl std::ops::Deref for Curve {
    type Target = CurveModel;
    fn deref(&self) -> &CurveModel {
        &self.0
    }
}

impl PartialEq for Curve {
    fn eq(&self, o: &Curve) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || (self.family == o.family && self.field == o.field)
    }
}
impl Eq for Curve {}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.spec_string(), self.field.spec_string())
    }
}

fn is_power_of(q: u64, p: u64) -> bool {
    let mut x = q;
    while x > 1 && x.is_multiple_of(p) {
        x /= p;
    }
    x == 1 && q > 1
}

impl Curve {
    fn build(family: Family, field: &Field) -> Curve {
        let (genus, deg_y, w_x, w_y, rhs) = match &family {
            Family::ProjectiveLine => (0, 1, 1, 0, Poly::zero()),
            Family::EllipticAS { b, c } => {
                (1, 2, 2, 3, Poly::from_coeffs(vec![*c, *b, Fe::ZERO, Fe::ONE]))
            }
            Family::HyperellipticAS { q } => (q / 2, 2, 2, *q as i64 + 1, Poly::monomial(Fe::ONE, *q as usize + 1)),
            Family::Hermitian { q } => {
                (q * (q - 1) / 2, *q, *q as i64, *q as i64 + 1, Poly::monomial(Fe::ONE, *q as usize + 1))
            }
        };
        Curve(Arc::new(CurveModel {
            family,
            field: field.clone(),
            genus,
            deg_y,
            w_x,
            w_y,
            rhs,
            fibers: OnceLock::new(),
            points: OnceLock::new(),
        }))
    }

    pub fn projective_line(field: &Field) -> Curve {
        Curve::build(Family::ProjectiveLine, field)
    }

    pub fn elliptic_as(field: &Field, b: Fe, c: Fe) -> Result<Curve, CurveError> {
        if field.characteristic() != 2 {
            return Err(CurveError::IncompatibleField("elliptic-as needs characteristic 2".into()));
        }
        if !field.contains(b) || !field.contains(c) {
            return Err(CurveError::IncompatibleField(format!("b={} c={} outside GF({})", b.0, c.0, field.order())));
        }
        Ok(Curve::build(Family::EllipticAS { b, c }, field))
    }

    pub fn hyperelliptic_as(field: &Field, q: u64) -> Result<Curve, CurveError> {
        if field.characteristic() != 2 || !is_power_of(q, 2) || q < 2 || field.order() != q * q {
            return Err(CurveError::IncompatibleField(format!(
                "hyperelliptic-as:q={q} needs GF({}) of characteristic 2",
                q * q
            )));
        }
        Ok(Curve::build(Family::HyperellipticAS { q }, field))
    }

    pub fn hermitian(field: &Field, q: u64) -> Result<Curve, CurveError> {
        if !is_power_of(q, field.characteristic()) || field.order() != q * q {
            return Err(CurveError::IncompatibleField(format!("hermitian:q={q} needs GF({})", q * q)));
        }
        Ok(Curve::build(Family::Hermitian { q }, field))
    }

    /// Parses `elliptic-as:b=<int>,c=<int>`, `hyperelliptic-as:q=<int>`,
    /// `hermitian:q=<int>` or `projective-line`.
    pub fn parse(spec: &str, field: &Field) -> Result<Curve, CurveError> {
        let err = |m: &str| CurveError::Parse(spec.to_string(), m.to_string());
        let (name, args) = match spec.trim().split_once(':') {
            Some((n, a)) => (n.trim(), a.trim()),
            None => (spec.trim(), ""),
        };
        let mut kv = std::collections::BTreeMap::new();
        for part in args.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| err("expected key=value"))?;
            let v: u64 = v.trim().parse().map_err(|_| err("values must be non-negative integers"))?;
            kv.insert(k.trim().to_string(), v);
        }
        let get = |k: &str| kv.get(k).copied().ok_or_else(|| err(&format!("missing `{k}`")));
        let allowed: &[&str] = match name {
            "projective-line" => &[],
            "elliptic-as" => &["b", "c"],
            "hyperelliptic-as" | "hermitian" => &["q"],
            _ => return Err(err("unknown curve family")),
        };
        if let Some(k) = kv.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(err(&format!("unexpected parameter `{k}`")));
        }
        match name {
            "projective-line" => Ok(Curve::projective_line(field)),
            "elliptic-as" => Curve::elliptic_as(field, Fe(get("b")?), Fe(get("c")?)),
            "hyperelliptic-as" => Curve::hyperelliptic_as(field, get("q")?),
            _ => Curve::hermitian(field, get("q")?),
        }
    }

    pub fn spec_string(&self) -> String {
        match &self.family {
            Family::ProjectiveLine => "projective-line".into(),
            Family::EllipticAS { b, c } => format!("elliptic-as:b={},c={}", b.0, c.0),
            Family::HyperellipticAS { q } => format!("hyperelliptic-as:q={q}"),
            Family::Hermitian { q } => format!("hermitian:q={q}"),
        }
    }

    /// All base-field `y` with `y^{p_y} + y = c`, ascending.
    pub fn fiber_solutions(&self, c: Fe) -> &[Fe] {
        let table = self.fibers.get_or_init(|| {
            let f = &self.field;
            let mut t = vec![Vec::new(); f.order() as usize];
            if self.deg_y == 1 {
                return t;
            }
            for y in f.elements() {
                let v = f.add(f.pow_u(y, self.deg_y), y);
                t[v.0 as usize].push(y);
            }
            t
        });
        &table[c.0 as usize]
    }

    pub fn on_curve(&self, x: Fe, y: Fe) -> bool {
        let f = &self.field;
        if self.deg_y == 1 {
            return y.is_zero() && f.contains(x);
        }
        f.contains(x) && f.contains(y) && f.add(f.pow_u(y, self.deg_y), y) == self.rhs.eval(x, f)
    }

    /// Rational affine places with x-coordinate `alpha`, ascending in `y`.
    pub fn points_above_x(&self, alpha: Fe) -> Vec<Place> {
        if self.deg_y == 1 {
            return vec![Place::Affine { x: alpha, y: Fe::ZERO }];
        }
        let c = self.rhs.eval(alpha, &self.field);
        self.fiber_solutions(c).iter().map(|&y| Place::Affine { x: alpha, y }).collect()
    }

    /// All degree-one places: `O` first, then by `(x, y)` encoding.
    pub fn enumerate_points(&self) -> &[Place] {
        self.points.get_or_init(|| {
            let mut out = vec![Place::Infinity];
            for a in self.field.elements() {
                out.extend(self.points_above_x(a));
            }
            let n = out.len() as i128;
            let q = self.field.order() as i128;
            let g = self.genus as i128;
            assert!((n - q - 1).pow(2) <= 4 * g * g * q, "Hasse-Weil bound violated: {n} points");
            out
        })
    }

    /// Rational affine places only.
    pub fn affine_points(&self) -> &[Place] {
        &self.enumerate_points()[1..]
    }

    /// Coefficient of `O` in the divisor of `dx`, which is supported at `O`
    /// alone: the finite part of the cover is unramified.
    pub fn dx_order_at_infinity(&self) -> i64 {
        match self.family {
            Family::ProjectiveLine => -2,
            Family::EllipticAS { .. } => 0,
            _ => 2 * self.genus as i64 - 2,
        }
    }
}

impl CurveModel {
    pub fn family(&self) -> &Family {
        &self.family
    }
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn genus(&self) -> u64 {
        self.genus
    }
    /// Degree of the curve equation in `y` (1 on the projective line).
    pub fn deg_y(&self) -> u64 {
        self.deg_y
    }
    /// Pole orders `(w_x, w_y)` of `x` and `y` at `O`.
    pub fn weights(&self) -> (i64, i64) {
        (self.w_x, self.w_y)
    }
    /// Right-hand side `f(x)` of the equation.
    pub fn rhs(&self) -> &Poly {
        &self.rhs
    }
    pub fn is_elliptic(&self) -> bool {
        matches!(self.family, Family::EllipticAS { .. })
    }
}
