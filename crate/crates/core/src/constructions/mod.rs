//! Hypothesis-checked LCD recipes. Every builder computes `H` from the
//! differential, re-verifies each hypothesis computationally and only then
//! emits the code pair, which is checked once more for duality and LCD.

mod elliptic;
mod general;
#[cfg(test)]
mod tests;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::agcode::{build_code, dual_divisor, CodeError, CodeJson, DistanceReport, GeneralizedAGCode};
use crate::curve::{Curve, CurveError, Place};
use crate::function_field::{CurveFunction, Differential, Divisor, FfError};
use crate::gf::Fe;
use crate::riemann_roch::{rr_basis, rr_dim};

pub use elliptic::{cor1_build, cor2_build, cor34_gate, fiber_pair, s_set, thm3_elliptic, thm4_build, thm5_build, thm6_build};
pub use general::{
    hermitian_build, hyper_build_reduced, hyper_build_rp, projline_build, projline_printed_matrix, thm7_general,
    thm8_outcome, Thm8Outcome,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub clause: String,
    pub passed: bool,
    pub detail: String,
}

impl Hypothesis {
    pub fn new(clause: &str, passed: bool, detail: impl Into<String>) -> Hypothesis {
        Hypothesis { clause: clause.to_string(), passed, detail: detail.into() }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConstructionError {
    #[error("{recipe}: hypothesis `{clause}` failed: {detail}")]
    Hypothesis { recipe: String, clause: String, detail: String, checked: Vec<Hypothesis> },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Ff(#[from] FfError),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

impl ConstructionError {
    pub fn is_hypothesis_failure(&self) -> bool {
        matches!(self, ConstructionError::Hypothesis { .. })
    }
    pub fn failed_clause(&self) -> Option<&str> {
        match self {
            ConstructionError::Hypothesis { clause, .. } => Some(clause),
            _ => None,
        }
    }
}

/// A code pair `GC(D,G,a)`, `GC(D,H,a)` with the checks that admitted it.
#[derive(Clone, Debug)]
pub struct ConstructionReport {
    pub recipe: String,
    pub params: BTreeMap<String, String>,
    pub hypotheses: Vec<Hypothesis>,
    pub h: Divisor,
    pub omega: Differential,
    pub residues: Vec<Fe>,
    pub code: GeneralizedAGCode,
    pub dual: GeneralizedAGCode,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportJson {
    pub recipe: String,
    pub params: BTreeMap<String, String>,
    pub hypotheses: Vec<Hypothesis>,
    pub omega: String,
    pub residues: Vec<u64>,
    pub code: CodeJson,
    pub dual: CodeJson,
}

impl ConstructionReport {
    /// `dim C + dim C' = n` and `M_G M_H^T = 0` for the scaled generators.
    pub fn duality_holds(&self) -> bool {
        let n = self.code.n();
        if self.code.k() + self.dual.k() != n {
            return false;
        }
        if self.dual.k() == 0 || self.code.k() == 0 {
            return true;
        }
        let prod = self.code.generator().mul(&self.dual.generator().transpose()).unwrap();
        let zero = prod.rows().all(|r| r.iter().all(|x| x.is_zero()));
        zero
    }

    pub fn to_json(&self, code_dist: Option<&DistanceReport>, dual_dist: Option<&DistanceReport>) -> ReportJson {
        ReportJson {
            recipe: self.recipe.clone(),
            params: self.params.clone(),
            hypotheses: self.hypotheses.clone(),
            omega: format!("({}) dx", self.omega.f.render()),
            residues: self.residues.iter().map(|c| c.0).collect(),
            code: self.code.to_json(None, &self.code.params(code_dist)),
            dual: self.dual.to_json(Some(&self.h), &self.dual.params(dual_dist)),
        }
    }
}

/// How the scaling vector `a` is obtained.
pub(crate) enum Scaling {
    /// `a_i = sqrt(Res_{P_i}(omega))`.
    SquareRoots,
    /// A closed-form vector, checked against `a_i^2 = Res`.
    Given(Vec<Fe>),
    /// Constant residues: the classical code `C(D,G)`, `a = 1`.
    Classical,
}

/// Which LCD criterion the recipe relies on.
#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Gate {
    /// Genus one: `deg gcd(G,H) = 0` and `gcd(G,H)` not principal.
    Elliptic,
    /// `gcd(G,H)` non-special of degree `g-1`.
    NonSpecial,
}

pub(crate) struct Plan {
    pub recipe: &'static str,
    pub params: BTreeMap<String, String>,
    pub curve: Curve,
    pub points: Vec<Place>,
    pub g: Divisor,
    pub h_stated: Option<Divisor>,
    pub omega: Differential,
    pub scaling: Scaling,
    pub gate: Gate,
    pub hyps: Vec<Hypothesis>,
}

pub(crate) fn fail_if_any(recipe: &str, hyps: &[Hypothesis]) -> Result<(), ConstructionError> {
    match hyps.iter().find(|h| !h.passed) {
        Some(h) => Err(ConstructionError::Hypothesis {
            recipe: recipe.to_string(),
            clause: h.clause.clone(),
            detail: h.detail.clone(),
            checked: hyps.to_vec(),
        }),
        None => Ok(()),
    }
}

/// Principality through the group law when the support is rational, else
/// through `L(-A)`.
pub(crate) fn principal(curve: &Curve, a: &Divisor) -> Result<bool, FfError> {
    if curve.is_elliptic() && a.support().all(Place::is_rational) {
        a.is_principal()
    } else {
        crate::riemann_roch::is_principal(curve, a)
    }
}

/// A nonzero element of `L(A)`, if any.
pub(crate) fn witness(curve: &Curve, a: &Divisor) -> Result<Option<CurveFunction>, FfError> {
    Ok(rr_basis(curve, a)?.functions.into_iter().next())
}

pub(crate) fn gate_checks(curve: &Curve, gate: Gate, gcd: &Divisor) -> Result<Vec<Hypothesis>, FfError> {
    let g = curve.genus() as i64;
    let deg = gcd.degree();
    Ok(match gate {
        Gate::Elliptic => {
            let p = principal(curve, gcd)?;
            vec![
                Hypothesis::new("deg gcd(G,H)=0", deg == 0, format!("gcd(G,H) = {}", gcd.render())),
                Hypothesis::new("gcd(G,H) not principal", !p, if p { "principal".into() } else { format!("class point {}", class_detail(gcd)) }),
            ]
        }
        Gate::NonSpecial => {
            let l = rr_dim(curve, gcd)?;
            let detail = match witness(curve, gcd)? {
                Some(f) => format!("l(gcd) = {l}, e.g. {} in L({})", f.render(), gcd.render()),
                None => format!("l({}) = 0", gcd.render()),
            };
            vec![
                Hypothesis::new("deg gcd(G,H)=g-1", deg == g - 1, format!("deg {} = {deg}, g-1 = {}", gcd.render(), g - 1)),
                Hypothesis::new("gcd(G,H) non-special", l == 0, detail),
            ]
        }
    })
}

fn class_detail(d: &Divisor) -> String {
    d.class_point().map(|p| p.render()).unwrap_or_else(|_| "n/a".into())
}

pub(crate) fn assemble(plan: Plan) -> Result<ConstructionReport, ConstructionError> {
    let Plan { recipe, params, curve, points, g, h_stated, omega, scaling, gate, mut hyps } = plan;
    let field = curve.field().clone();
    let n = points.len();
    // Range clauses come from the recipe; stop before any heavy work.
    fail_if_any(recipe, &hyps)?;
    let (h, e) = dual_divisor(&curve, &points, &g, &omega)?;
    if let Some(hs) = &h_stated {
        hyps.push(Hypothesis::new("H=D-G+(ω)", *hs == h, format!("computed H = {}", h.render())));
    }
    let overlap = points.iter().find(|p| g.coeff(p) != 0);
    hyps.push(Hypothesis::new(
        "supp(G)∩supp(D)=∅",
        overlap.is_none(),
        overlap.map_or("disjoint".to_string(), |p| format!("{} in both", p.render())),
    ));
    let a: Vec<Fe> = match scaling {
        Scaling::SquareRoots => {
            let roots: Vec<Option<Fe>> = e.iter().map(|&r| field.sqrt(r)).collect();
            let bad = roots.iter().position(Option::is_none);
            hyps.push(Hypothesis::new(
                "Res(ω)=a²",
                bad.is_none(),
                bad.map_or("every residue is a square".to_string(), |i| {
                    format!("Res at {} = {} is not a square", points[i].render(), e[i].0)
                }),
            ));
            roots.into_iter().map(|r| r.unwrap_or(Fe::ONE)).collect()
        }
        Scaling::Given(a) => {
            let bad = (0..n).find(|&i| field.mul(a[i], a[i]) != e[i]);
            hyps.push(Hypothesis::new(
                "Res(ω)=a²",
                bad.is_none(),
                bad.map_or("closed-form a matches every residue".to_string(), |i| {
                    format!("a^2 = {} but Res = {} at {}", field.mul(a[i], a[i]).0, e[i].0, points[i].render())
                }),
            ));
            a
        }
        Scaling::Classical => {
            let constant = e.iter().all(|&r| r == e[0]);
            hyps.push(Hypothesis::new(
                "residues constant",
                constant,
                if constant { format!("Res = {} everywhere", e[0].0) } else { "residues differ".to_string() },
            ));
            vec![Fe::ONE; n]
        }
    };
    let gcd = g.gcd(&h)?;
    hyps.extend(gate_checks(&curve, gate, &gcd)?);
    fail_if_any(recipe, &hyps)?;
    let code = build_code(&curve, &points, &g, &a)?;
    let dual = build_code(&curve, &points, &h, &a)?;
    let report = ConstructionReport { recipe: recipe.to_string(), params, hypotheses: hyps, h, omega, residues: e, code, dual };
    if !report.duality_holds() || !report.code.is_lcd() || !report.dual.is_lcd() {
        return Err(ConstructionError::Invalid(format!(
            "{recipe}: hypotheses hold but the pair is not an LCD dual pair (k = {}, {})",
            report.code.k(),
            report.dual.k()
        )));
    }
    Ok(report)
}

/// `dx / h(x)`.
pub(crate) fn dx_over(curve: &Curve, h: crate::gf::Poly) -> Result<Differential, FfError> {
    Differential::new(CurveFunction::new(curve, vec![crate::gf::Poly::one()], h))
}

pub(crate) fn params<const N: usize>(kv: [(&str, String); N]) -> BTreeMap<String, String> {
    kv.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}
