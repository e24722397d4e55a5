use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::gf::{Extension, Fe, Field, Poly};
use crate::linalg::Matrix;

use super::{Curve, CurveError};

/// A place of the function field of a curve.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    /// The unique place `O` at infinity.
    Infinity,
    /// A degree-one affine place (`y = 0` on the projective line).
    Affine { x: Fe, y: Fe },
    Higher(Arc<HigherPlace>),
}

/// An affine place of degree > 1.
///
/// The representative point `(x, y)` lives in the residue field. `x` is the
/// smallest root of `minpoly` in that field and `y` the smallest `y`-value
/// of the conjugates of the place lying over that root. `branch` is the
/// index of this place among all places over `minpoly`, ordered by `y`.
pub struct HigherPlace {
    pub minpoly: Poly,
    pub ext: Arc<Extension>,
    pub x: Fe,
    pub y: Fe,
    pub branch: usize,
}

impl HigherPlace {
    pub fn degree(&self) -> u32 {
        self.ext.degree()
    }
    fn key(&self) -> (u32, &Poly, usize) {
        (self.degree(), &self.minpoly, self.branch)
    }
}

impl PartialEq for HigherPlace {
    fn eq(&self, o: &HigherPlace) -> bool {
        self.key() == o.key()
    }
}
impl Eq for HigherPlace {}
impl Hash for HigherPlace {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.key().hash(h)
    }
}
impl Ord for HigherPlace {
    fn cmp(&self, o: &HigherPlace) -> Ordering {
        self.key().cmp(&o.key())
    }
}
impl PartialOrd for HigherPlace {
    fn partial_cmp(&self, o: &HigherPlace) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Place {
    pub fn degree(&self) -> u32 {
        match self {
            Place::Infinity | Place::Affine { .. } => 1,
            Place::Higher(h) => h.degree(),
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity)
    }

    pub fn is_rational(&self) -> bool {
        !matches!(self, Place::Higher(_))
    }

    /// Monic irreducible `pi(x)` whose zeros contain this place; `None` at `O`.
    pub fn x_poly(&self, field: &Field) -> Option<Poly> {
        match self {
            Place::Infinity => None,
            Place::Affine { x, .. } => Some(Poly::linear(*x, field)),
            Place::Higher(h) => Some(h.minpoly.clone()),
        }
    }

    /// Text form: `O`, `(x,y)` or `deg3[x^3+3x^2+2x+4;branch=1]`.
    pub fn render(&self) -> String {
        match self {
            Place::Infinity => "O".into(),
            Place::Affine { x, y } => format!("({},{})", x.0, y.0),
            Place::Higher(h) => format!("deg{}[{};branch={}]", h.degree(), h.minpoly.render("x"), h.branch),
        }
    }

    /// Inverse of [`Place::render`]; validates the place against the curve.
    pub fn parse(s: &str, curve: &Curve) -> Result<Place, CurveError> {
        let t = s.trim();
        let bad = |m: &str| CurveError::BadPlace(t.to_string(), m.to_string());
        if t == "O" {
            return Ok(Place::Infinity);
        }
        if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
            let num = |v: &str| v.parse::<u64>().map_err(|_| bad("coordinates must be canonical integers"));
            let (x, y) = match parts.as_slice() {
                [x] => (num(x)?, 0),
                [x, y] => (num(x)?, num(y)?),
                _ => return Err(bad("expected (x,y)")),
            };
            if !curve.on_curve(Fe(x), Fe(y)) {
                return Err(CurveError::NotOnCurve(x, y));
            }
            return Ok(Place::Affine { x: Fe(x), y: Fe(y) });
        }
        if let Some(rest) = t.strip_prefix("deg") {
            let (deg, body) = rest.split_once('[').ok_or_else(|| bad("expected deg<d>[poly;branch=k]"))?;
            let body = body.strip_suffix(']').ok_or_else(|| bad("missing `]`"))?;
            let (poly, branch) = body.split_once(';').ok_or_else(|| bad("missing `;branch=`"))?;
            let branch: usize = branch
                .trim()
                .strip_prefix("branch=")
                .and_then(|b| b.trim().parse().ok())
                .ok_or_else(|| bad("bad branch"))?;
            let coeffs = crate::gf::parse_int_poly(poly).map_err(|e| bad(&e))?;
            let field = curve.field();
            let minpoly = Poly::from_coeffs(coeffs.iter().map(|&c| Fe(c.max(0) as u64)).collect());
            if coeffs.iter().any(|&c| c < 0 || !field.contains(Fe(c as u64))) {
                return Err(bad("coefficients must be canonical field encodings"));
            }
            let place = curve.make_higher_degree_place(&minpoly, branch)?;
            let d: u32 = deg.trim().parse().map_err(|_| bad("bad degree"))?;
            if place.degree() != d {
                return Err(bad(&format!("place has degree {}", place.degree())));
            }
            return Ok(place);
        }
        Err(bad("unrecognized place"))
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// All solutions in `field` of the additive equation `y^k + y = c`, where
/// `k` is a power of the characteristic, ascending. Solved as a GF(p)-linear
/// system in the polynomial basis.
pub(super) fn solve_additive(field: &Field, k: u64, c: Fe) -> Vec<Fe> {
    let p = field.characteristic();
    let m = field.degree() as usize;
    let fp = Field::prime(p).expect("prime");
    let digits = |mut a: u64| -> Vec<Fe> {
        (0..m)
            .map(|_| {
                let d = a % p;
                a /= p;
                Fe(d)
            })
            .collect()
    };
    // Column i is the image of the basis element p^i.
    let mut basis = Vec::with_capacity(m);
    let mut e = 1u64;
    for _ in 0..m {
        basis.push(Fe(e));
        e = e.saturating_mul(p);
    }
    let images: Vec<Vec<Fe>> = basis.iter().map(|&b| digits(field.add(field.pow_u(b, k), b).0)).collect();
    let rhs = digits(c.0);
    let mut aug = Matrix::zero(&fp, m, m + 1);
    for (j, col) in images.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            aug.set(i, j, v);
        }
    }
    for (i, &v) in rhs.iter().enumerate() {
        aug.set(i, m, v);
    }
    let r = aug.rref();
    if r.pivots.last() == Some(&m) {
        return Vec::new();
    }
    let mut particular = vec![Fe::ZERO; m];
    for (row, &pc) in r.pivots.iter().enumerate() {
        particular[pc] = r.matrix.get(row, m);
    }
    let kernel = aug.select_columns(&(0..m).collect::<Vec<_>>()).kernel_basis();
    let from_digits = |d: &[Fe]| d.iter().rev().fold(0u64, |acc, c| acc * p + c.0);
    let mut out = Vec::new();
    let kdim = kernel.nrows() as u32;
    for idx in 0..p.pow(kdim) {
        let mut v = particular.clone();
        let mut t = idx;
        for row in kernel.rows() {
            let coef = Fe(t % p);
            t /= p;
            for (vi, &ri) in v.iter_mut().zip(row) {
                *vi = fp.add(*vi, fp.mul(coef, ri));
            }
        }
        out.push(Fe(from_digits(&v)));
    }
    out.sort();
    out
}

impl Curve {
    /// All places above the zeros of a monic irreducible `pi(x)` over the base
    /// field, in branch order.
    pub fn fiber_places(&self, pi: &Poly) -> Result<Vec<Place>, CurveError> {
        let base = self.field();
        if !pi.is_monic() || !pi.is_irreducible(base) {
            return Err(CurveError::Reducible(pi.render("x")));
        }
        let d = pi.deg() as u32;
        if d == 1 {
            let alpha = base.neg(pi.coeff(0));
            let pts = self.points_above_x(alpha);
            if !pts.is_empty() {
                return Ok(pts);
            }
        }
        let ext = Extension::of_degree(base, d)?;
        let big = ext.field().clone();
        let x0 = *ext.embed_poly(pi).roots(&big).first().expect("irreducible of degree d splits in GF(Q^d)");
        if self.deg_y() == 1 {
            return Ok(vec![Place::Higher(Arc::new(HigherPlace { minpoly: pi.clone(), ext, x: x0, y: Fe::ZERO, branch: 0 }))]);
        }
        let c = ext.embed_poly(self.rhs()).eval(x0, &big);
        let ys = solve_additive(&big, self.deg_y(), c);
        if !ys.is_empty() {
            return Ok(ys
                .into_iter()
                .enumerate()
                .map(|(branch, y)| Place::Higher(Arc::new(HigherPlace { minpoly: pi.clone(), ext: ext.clone(), x: x0, y, branch })))
                .collect());
        }
        // No solution over GF(Q^d): each place has degree d·p and its
        // conjugates over x0 form an orbit under y -> y^{Q^d}.
        let p = base.characteristic() as u32;
        let ext = Extension::of_degree(base, d * p)?;
        let big = ext.field().clone();
        let x0 = *ext.embed_poly(pi).roots(&big).first().expect("root in extension");
        let c = ext.embed_poly(self.rhs()).eval(x0, &big);
        let ys = solve_additive(&big, self.deg_y(), c);
        let qd = base.order().pow(d);
        let mut reps = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        for &y in &ys {
            if seen.contains(&y) {
                continue;
            }
            let mut cur = y;
            loop {
                seen.insert(cur);
                cur = big.pow_u(cur, qd);
                if cur == y {
                    break;
                }
            }
            reps.push(y);
        }
        Ok(reps
            .into_iter()
            .enumerate()
            .map(|(branch, y)| Place::Higher(Arc::new(HigherPlace { minpoly: pi.clone(), ext: ext.clone(), x: x0, y, branch })))
            .collect())
    }

    /// The place over the zeros of `minpoly` with the given branch index.
    /// A degree-one `minpoly` with rational fiber yields an affine place.
    pub fn make_higher_degree_place(&self, minpoly: &Poly, branch: usize) -> Result<Place, CurveError> {
        let base = self.field();
        if minpoly.deg() == 0 || !minpoly.is_irreducible(base) {
            return Err(CurveError::Reducible(minpoly.render("x")));
        }
        let pi = minpoly.monic(base);
        let places = self.fiber_places(&pi)?;
        let count = places.len();
        places
            .into_iter()
            .nth(branch)
            .ok_or_else(|| CurveError::BranchOutOfRange { branch, count, poly: pi.render("x") })
    }
}
