//! Generalized AG codes `GC(D,G,a) = {(a_1 f(P_1), ..., a_n f(P_n))}`, their
//! duals, the LCD test and parameter classification.

mod distance;

use serde::{Deserialize, Serialize};

use crate::curve::{Curve, Place};
use crate::function_field::{CurveFunction, Differential, Divisor, FfError};
use crate::gf::{Fe, Field};
use crate::linalg::{LinalgError, Matrix, MatrixJson};
use crate::riemann_roch::rr_basis;

pub use distance::{
    column_search, column_search_cost, enumerate_min, enumeration_cost, low_weight_search, weight, weight_distribution,
    DistanceOptions, DistanceReport, Method, MethodUsed,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodeError {
    #[error("supports overlap at {0}")]
    SupportOverlap(String),
    #[error("deg G = {deg} outside ({lo}, {hi})")]
    DegreeOutOfRange { deg: i64, lo: i64, hi: i64 },
    #[error("scaling entry {0} is zero")]
    ZeroScaling(usize),
    #[error("expected {expected} scaling entries, got {got}")]
    Length { expected: usize, got: usize },
    #[error("evaluation place {0} is not a rational affine place")]
    NotRational(String),
    #[error("evaluation place {0} repeated")]
    Repeated(String),
    #[error("differential must have a simple pole at {0}")]
    BadDifferential(String),
    #[error("generator has rank {rank}, expected {expected}")]
    RankMismatch { rank: usize, expected: usize },
    #[error(transparent)]
    Ff(#[from] FfError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A linear code given by a full-rank generator matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    generator: Matrix,
}

impl LinearCode {
    /// Keeps a basis of the row space if `generator` is rank deficient.
    pub fn new(generator: Matrix) -> LinearCode {
        if generator.rank() == generator.nrows() {
            return LinearCode { generator };
        }
        let red = generator.row_reduced();
        let rows: Vec<Vec<Fe>> = red.rows().filter(|r| r.iter().any(|c| !c.is_zero())).map(<[Fe]>::to_vec).collect();
        LinearCode { generator: Matrix::from_rows(red.field(), red.ncols(), rows).unwrap() }
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }
    pub fn field(&self) -> &Field {
        self.generator.field()
    }
    pub fn n(&self) -> usize {
        self.generator.ncols()
    }
    pub fn k(&self) -> usize {
        self.generator.nrows()
    }

    /// Generator of the dual code.
    pub fn parity_check(&self) -> Matrix {
        self.generator.kernel_basis()
    }

    pub fn dual(&self) -> LinearCode {
        LinearCode { generator: self.parity_check() }
    }

    /// `C ∩ C^⊥ = {0}` iff `det(G G^T) != 0`.
    pub fn is_lcd(&self) -> bool {
        self.k() == 0 || !self.generator.gram_det().expect("full rank").is_zero()
    }

    /// The same verdict from `rank [G; H] = n`.
    pub fn is_lcd_by_intersection(&self) -> bool {
        self.generator.vstack(&self.parity_check()).unwrap().rank() == self.n()
    }

    pub fn weight_distribution(&self) -> Vec<u64> {
        weight_distribution(&self.generator)
    }

    pub fn scaled(&self, a: &[Fe]) -> LinearCode {
        LinearCode { generator: self.generator.scale_columns(a) }
    }
}

/// `g_q(k,d) = sum_{i<k} ceil(d / q^i)`.
pub fn griesmer(q: u64, k: usize, d: usize) -> u64 {
    let mut total = 0u64;
    let mut qi: u128 = 1;
    for _ in 0..k {
        total += (d as u128).div_ceil(qi) as u64;
        qi = qi.saturating_mul(q as u128);
    }
    total
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub mds: bool,
    pub almost_mds: bool,
    /// `n = g_q(k,d)`.
    pub griesmer_optimal: bool,
    /// `g_q(k,d+1) > n`: no `[n,k,d+1]` code exists.
    pub distance_optimal: bool,
    /// The inequality criterion quoted for elliptic codes, not re-derived.
    pub elliptic_optimal_cited: bool,
}

/// Classification flags for an `[n,k,d]` code over GF(q).
pub fn bounds(q: u64, n: usize, k: usize, d: usize) -> Flags {
    Flags {
        mds: n + 1 == k + d,
        almost_mds: n == k + d,
        griesmer_optimal: griesmer(q, k, d) == n as u64,
        distance_optimal: griesmer(q, k, d + 1) > n as u64,
        elliptic_optimal_cited: false,
    }
}

/// The cited elliptic criterion: `n >= q+3` and `2 <= deg G <= n-q-1` or
/// `q+1 <= deg G <= n-2`.
pub fn elliptic_optimal_cited(q: u64, n: usize, deg_g: i64) -> bool {
    let (q, n) = (q as i64, n as i64);
    n >= q + 3 && ((2 <= deg_g && deg_g < n - q) || (q < deg_g && deg_g <= n - 2))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterRecord {
    pub n: usize,
    pub k: usize,
    pub design_distance: i64,
    pub exact_distance: Option<usize>,
    pub distance_bracket: [usize; 2],
    pub lcd: bool,
    pub griesmer: Option<u64>,
    pub flags: Flags,
}

/// A generalized AG code with its defining data.
#[derive(Clone, Debug)]
pub struct GeneralizedAGCode {
    pub curve: Curve,
    pub points: Vec<Place>,
    pub g: Divisor,
    pub a: Vec<Fe>,
    pub basis: Vec<CurveFunction>,
    pub code: LinearCode,
}

/// Builds `GC(D,G,a)` with rows `a_j f_i(P_j)` for a basis `f_i` of `L(G)`.
pub fn build_code(curve: &Curve, points: &[Place], g: &Divisor, a: &[Fe]) -> Result<GeneralizedAGCode, CodeError> {
    let n = points.len();
    let genus = curve.genus() as i64;
    check_points(points)?;
    if let Some(p) = points.iter().find(|p| g.coeff(p) != 0) {
        return Err(CodeError::SupportOverlap(p.render()));
    }
    let deg = g.degree();
    if !(2 * genus - 2 < deg && deg < n as i64) {
        return Err(CodeError::DegreeOutOfRange { deg, lo: 2 * genus - 2, hi: n as i64 });
    }
    if a.len() != n {
        return Err(CodeError::Length { expected: n, got: a.len() });
    }
    if let Some(i) = a.iter().position(|c| c.is_zero()) {
        return Err(CodeError::ZeroScaling(i));
    }
    let basis = rr_basis(curve, g)?.functions;
    let field = curve.field();
    let rows: Vec<Vec<Fe>> = basis
        .iter()
        .map(|f| points.iter().zip(a).map(|(p, &s)| Ok(field.mul(s, f.eval(p)?))).collect::<Result<_, FfError>>())
        .collect::<Result<_, _>>()?;
    let m = Matrix::from_rows(field, n, rows)?;
    let expected = (deg + 1 - genus) as usize;
    let rank = m.rank();
    if rank != expected || basis.len() != expected {
        return Err(CodeError::RankMismatch { rank, expected });
    }
    Ok(GeneralizedAGCode { curve: curve.clone(), points: points.to_vec(), g: g.clone(), a: a.to_vec(), basis, code: LinearCode { generator: m } })
}

fn check_points(points: &[Place]) -> Result<(), CodeError> {
    let mut seen = std::collections::BTreeSet::new();
    for p in points {
        if !matches!(p, Place::Affine { .. }) {
            return Err(CodeError::NotRational(p.render()));
        }
        if !seen.insert(p.clone()) {
            return Err(CodeError::Repeated(p.render()));
        }
    }
    Ok(())
}

/// `H = D - G + (omega)` and the residues `e_i = Res_{P_i}(omega)`.
pub fn dual_divisor(
    curve: &Curve,
    points: &[Place],
    g: &Divisor,
    omega: &Differential,
) -> Result<(Divisor, Vec<Fe>), CodeError> {
    check_points(points)?;
    let d = Divisor::sum_of(curve, points);
    let div = omega.divisor()?;
    for p in points {
        if div.coeff(p) != -1 {
            return Err(CodeError::BadDifferential(p.render()));
        }
    }
    let h = d.sub(g)?.add(&div)?;
    let e = points.iter().map(|p| omega.residue(p)).collect::<Result<Vec<_>, _>>()?;
    if let Some(p) = points.iter().zip(&e).find(|(_, r)| r.is_zero()) {
        return Err(CodeError::BadDifferential(p.0.render()));
    }
    Ok((h, e))
}

impl GeneralizedAGCode {
    pub fn n(&self) -> usize {
        self.code.n()
    }
    pub fn k(&self) -> usize {
        self.code.k()
    }
    pub fn generator(&self) -> &Matrix {
        self.code.generator()
    }
    pub fn design_distance(&self) -> i64 {
        self.n() as i64 - self.g.degree()
    }
    pub fn is_lcd(&self) -> bool {
        self.code.is_lcd()
    }

    pub fn min_distance(&self, method: Method, budget: u64) -> DistanceReport {
        self.code.min_distance(&DistanceOptions {
            method,
            budget,
            lower_bound: self.design_distance().max(1) as usize,
            stop_at_lower: false,
        })
    }

    pub fn params(&self, dist: Option<&DistanceReport>) -> ParameterRecord {
        let q = self.curve.field().order();
        let (n, k) = (self.n(), self.k());
        let dd = self.design_distance();
        let bracket = match dist {
            Some(r) => [r.lower.max(dd.max(0) as usize), r.upper],
            None => [dd.max(1) as usize, n - k + 1],
        };
        let exact = (bracket[0] == bracket[1]).then_some(bracket[0]);
        let mut flags = exact.map(|d| bounds(q, n, k, d)).unwrap_or_default();
        flags.elliptic_optimal_cited = self.curve.is_elliptic() && elliptic_optimal_cited(q, n, self.g.degree());
        ParameterRecord {
            n,
            k,
            design_distance: dd,
            exact_distance: exact,
            distance_bracket: bracket,
            lcd: self.is_lcd(),
            griesmer: exact.map(|d| griesmer(q, k, d)),
            flags,
        }
    }

    pub fn to_json(&self, h: Option<&Divisor>, params: &ParameterRecord) -> CodeJson {
        CodeJson {
            field: self.curve.field().spec_string(),
            curve: self.curve.spec_string(),
            d_size: self.n(),
            points: self.points.iter().map(Place::render).collect(),
            g: self.g.render(),
            h: h.map(Divisor::render),
            a: self.a.iter().map(|c| c.0).collect(),
            matrix: self.generator().to_json(),
            params: params.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CodeJson {
    pub field: String,
    pub curve: String,
    pub d_size: usize,
    pub points: Vec<String>,
    pub g: String,
    pub h: Option<String>,
    pub a: Vec<u64>,
    pub matrix: MatrixJson,
    pub params: ParameterRecord,
}
