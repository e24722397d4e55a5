//! Recipes for curves of any genus: the non-special gcd criterion, the
//! constant-residue criterion, and their hyperelliptic, Hermitian and
//! projective-line instances.

use super::{
    assemble, dx_over, params, witness, ConstructionError, ConstructionReport, Gate, Hypothesis, Plan, Scaling,
};
use crate::agcode::{build_code, dual_divisor, LinearCode};
use crate::curve::{Curve, Family, Place};
use crate::function_field::{CurveFunction, Differential, Divisor};
use crate::gf::{Fe, Field, Poly};
use crate::linalg::Matrix;

/// `x^Q - x` for `Q = |F|`: vanishes on every affine fiber.
fn all_fibers_poly(f: &Field) -> Poly {
    Poly::monomial(Fe::ONE, f.order() as usize).add(&Poly::monomial(f.neg(Fe::ONE), 1), f)
}

/// General recipe: square residues and `gcd(G,H)` non-special of degree
/// `g - 1`.
pub fn thm7_general(
    curve: &Curve,
    points: &[Place],
    g: &Divisor,
    omega: &Differential,
) -> Result<ConstructionReport, ConstructionError> {
    let n = points.len() as i64;
    let genus = curve.genus() as i64;
    let deg = g.degree();
    assemble(Plan {
        recipe: "thm7",
        params: params([("G", g.render()), ("n", n.to_string()), ("omega", format!("({}) dx", omega.f.render()))]),
        curve: curve.clone(),
        points: points.to_vec(),
        g: g.clone(),
        h_stated: None,
        omega: omega.clone(),
        scaling: Scaling::SquareRoots,
        gate: Gate::NonSpecial,
        hyps: vec![Hypothesis::new(
            "2g-2<deg(G)<n",
            2 * genus - 2 < deg && deg < n,
            format!("deg G = {deg}, g = {genus}, n = {n}"),
        )],
    })
}

/// Both sides of the constant-residue equivalence, evaluated without gating.
#[derive(Clone, Debug)]
pub struct Thm8Outcome {
    pub h: Divisor,
    pub gcd: Divisor,
    pub residues_constant: bool,
    pub non_special: bool,
    pub witness: Option<CurveFunction>,
    pub lcd: bool,
}

pub fn thm8_outcome(
    curve: &Curve,
    points: &[Place],
    g: &Divisor,
    omega: &Differential,
) -> Result<Thm8Outcome, ConstructionError> {
    let (h, e) = dual_divisor(curve, points, g, omega)?;
    let gcd = g.gcd(&h)?;
    let wit = witness(curve, &gcd)?;
    let code = build_code(curve, points, g, &vec![Fe::ONE; points.len()])?;
    Ok(Thm8Outcome {
        residues_constant: e.iter().all(|&r| r == e[0]),
        non_special: wit.is_none(),
        witness: wit,
        lcd: code.is_lcd(),
        h,
        gcd,
    })
}

fn hyper_q(curve: &Curve) -> Result<u64, ConstructionError> {
    match curve.family() {
        Family::HyperellipticAS { q } => Ok(*q),
        _ => Err(ConstructionError::Invalid("recipe needs hyperelliptic-as".into())),
    }
}

/// `G = (r + q/2)O + rP`, `D` every affine point but `P`.
pub fn hyper_build_rp(curve: &Curve, p: &Place, r: i64) -> Result<ConstructionReport, ConstructionError> {
    let q = hyper_q(curve)? as i64;
    if !matches!(p, Place::Affine { .. }) {
        return Err(ConstructionError::Invalid("P must be a rational affine place".into()));
    }
    let hyps = vec![
        Hypothesis::new("q≥4", q >= 4, format!("q = {q}")),
        Hypothesis::new("q/4≤r≤q²-q/4-1", q / 4 <= r && r < q * q - q / 4, format!("r = {r}")),
    ];
    let points: Vec<Place> = curve.affine_points().iter().filter(|x| *x != p).cloned().collect();
    let g = Divisor::from_terms(curve, [(Place::Infinity, r + q / 2), (p.clone(), r)]);
    let h = Divisor::from_terms(curve, [(Place::Infinity, 2 * q * q + q / 2 - r - 2), (p.clone(), -(r + 1))]);
    assemble(Plan {
        recipe: "hyper-rp",
        params: params([("P", p.render()), ("r", r.to_string())]),
        curve: curve.clone(),
        points,
        g,
        h_stated: Some(h),
        omega: dx_over(curve, all_fibers_poly(curve.field()))?,
        scaling: Scaling::SquareRoots,
        gate: Gate::NonSpecial,
        hyps,
    })
}

/// `G = (2(t + Σr_i) + q - 1)O + Σ r_i (P+ + P-) + Σ n_i P+` with `Σ n_i = g`;
/// `D` omits the fibers over the `alpha_i`.
pub fn hyper_build_reduced(
    curve: &Curve,
    alphas: &[Fe],
    ns: &[i64],
    rs: &[i64],
) -> Result<ConstructionReport, ConstructionError> {
    let q = hyper_q(curve)? as i64;
    let t = alphas.len() as i64;
    if ns.len() != alphas.len() || rs.len() != alphas.len() {
        return Err(ConstructionError::Invalid("alphas, n and r lists must have equal length".into()));
    }
    let genus = curve.genus() as i64;
    let sum_r: i64 = rs.iter().sum();
    let sum_n: i64 = ns.iter().sum();
    let mut sorted = alphas.to_vec();
    sorted.sort();
    sorted.dedup();
    let hyps = vec![
        Hypothesis::new("q≥4", q >= 4, format!("q = {q}")),
        Hypothesis::new("α distinct", sorted.len() == alphas.len() && alphas.iter().all(|a| curve.field().contains(*a)), render(alphas)),
        Hypothesis::new("Σn_i=g, n_i>0", sum_n == genus && ns.iter().all(|&x| x > 0), format!("Σn_i = {sum_n}, g = {genus}")),
        Hypothesis::new(
            "Σr_i≤(2q²-3q/2-4t-4)/4",
            rs.iter().all(|&x| x >= 0) && 8 * sum_r <= 4 * q * q - 3 * q - 8 * t - 8,
            format!("Σr_i = {sum_r}"),
        ),
    ];
    super::fail_if_any("hyper-reduced", &hyps)?;
    let mut g = Divisor::single(curve, Place::Infinity, 2 * (t + sum_r) + q - 1);
    let mut h = Divisor::single(curve, Place::Infinity, 2 * q * q - 2 * (t + sum_r) - 1);
    let mut excluded = Vec::new();
    for i in 0..alphas.len() {
        let pts = curve.points_above_x(alphas[i]);
        let (pp, pm) = (pts[0].clone(), pts[1].clone());
        g.add_term(pp.clone(), rs[i] + ns[i]);
        g.add_term(pm.clone(), rs[i]);
        h.add_term(pp.clone(), -(rs[i] + ns[i] + 1));
        h.add_term(pm.clone(), -(rs[i] + ns[i] + 1) + ns[i]);
        excluded.push(pp);
        excluded.push(pm);
    }
    let points: Vec<Place> = curve.affine_points().iter().filter(|x| !excluded.contains(x)).cloned().collect();
    assemble(Plan {
        recipe: "hyper-reduced",
        params: params([
            ("alphas", render(alphas)),
            ("n", ns.iter().map(i64::to_string).collect::<Vec<_>>().join(",")),
            ("r", rs.iter().map(i64::to_string).collect::<Vec<_>>().join(",")),
        ]),
        curve: curve.clone(),
        points,
        g,
        h_stated: Some(h),
        omega: dx_over(curve, all_fibers_poly(curve.field()))?,
        scaling: Scaling::SquareRoots,
        gate: Gate::NonSpecial,
        hyps,
    })
}

fn render(a: &[Fe]) -> String {
    a.iter().map(|x| x.0.to_string()).collect::<Vec<_>>().join(",")
}

/// `G = (r deg P + g - 1)O + rP` on a Hermitian curve with `deg P > 1`,
/// `D` all rational affine places. Emitted iff `gcd(G,H)` is non-special.
pub fn hermitian_build(curve: &Curve, p: &Place, r: i64) -> Result<ConstructionReport, ConstructionError> {
    if !matches!(curve.family(), Family::Hermitian { .. }) {
        return Err(ConstructionError::Invalid("recipe needs hermitian".into()));
    }
    let genus = curve.genus() as i64;
    let points = curve.affine_points().to_vec();
    let n = points.len() as i64;
    let dp = p.degree() as i64;
    let hyps = vec![
        Hypothesis::new("deg(P)>1", dp > 1, format!("deg P = {dp}")),
        Hypothesis::new("0≤r·deg(P)≤n/2", r >= 0 && 2 * r * dp <= n, format!("r = {r}, n = {n}")),
    ];
    let g = Divisor::from_terms(curve, [(Place::Infinity, r * dp + genus - 1), (p.clone(), r)]);
    let h = Divisor::from_terms(curve, [(Place::Infinity, n - r * dp + genus - 1), (p.clone(), -r)]);
    assemble(Plan {
        recipe: "hermitian",
        params: params([("P", p.render()), ("r", r.to_string())]),
        curve: curve.clone(),
        points,
        g,
        h_stated: Some(h),
        omega: dx_over(curve, all_fibers_poly(curve.field()))?,
        scaling: Scaling::Classical,
        gate: Gate::NonSpecial,
        hyps,
    })
}

/// Rows `rho^{0}`, then `rho^{ij}` and `rho^{-ij}` for `i = 1..=r`, over
/// the columns `j = 0..q-2`.
pub fn projline_printed_matrix(field: &Field, r: i64) -> Matrix {
    let rho = field.primitive();
    let n = field.order() as i64 - 1;
    let row = |e: i64| (0..n).map(|j| field.pow(rho, e * j).unwrap()).collect::<Vec<Fe>>();
    let mut rows = vec![row(0)];
    for i in 1..=r {
        rows.push(row(i));
        rows.push(row(-i));
    }
    Matrix::from_rows(field, n as usize, rows).unwrap()
}

/// `G = rO + rP` on the projective line, `P = 0`, `D = rho^0..rho^{q-2}`.
pub fn projline_build(field: &Field, r: i64) -> Result<ConstructionReport, ConstructionError> {
    let curve = Curve::projective_line(field);
    let q = field.order() as i64;
    let hyps = vec![Hypothesis::new("0<r≤(q-2)/2", 0 < r && 2 * r <= q - 2, format!("r = {r}, q = {q}"))];
    super::fail_if_any("projline", &hyps)?;
    let rho = field.primitive();
    let points: Vec<Place> = (0..q - 1).map(|j| Place::Affine { x: field.pow(rho, j).unwrap(), y: Fe::ZERO }).collect();
    let origin = Place::Affine { x: Fe::ZERO, y: Fe::ZERO };
    let g = Divisor::from_terms(&curve, [(Place::Infinity, r), (origin.clone(), r)]);
    let h = Divisor::from_terms(&curve, [(Place::Infinity, q - r - 2), (origin, -(r + 1))]);
    let mut report = assemble(Plan {
        recipe: "projline",
        params: params([("r", r.to_string()), ("rho", rho.0.to_string())]),
        curve: curve.clone(),
        points: points.clone(),
        g,
        h_stated: Some(h),
        omega: dx_over(&curve, all_fibers_poly(field))?,
        scaling: Scaling::Classical,
        gate: Gate::NonSpecial,
        hyps,
    })?;
    // Swap in the basis x^0, x^1, x^-1, ..., x^r, x^-r.
    let mut basis = vec![CurveFunction::one(&curve)];
    for i in 1..=r as usize {
        basis.push(CurveFunction::monomial(&curve, i, 0));
        basis.push(CurveFunction::new(&curve, vec![Poly::one()], Poly::monomial(Fe::ONE, i)));
    }
    let printed = projline_printed_matrix(field, r);
    let rows: Vec<Vec<Fe>> = basis.iter().map(|f| points.iter().map(|p| f.eval(p).unwrap()).collect()).collect();
    let explicit = Matrix::from_rows(field, points.len(), rows).unwrap();
    if explicit != printed || !Matrix::row_space_equal(&explicit, report.code.generator()).unwrap() {
        return Err(ConstructionError::Invalid("monomial basis does not span L(rO + rP)".into()));
    }
    report.code.basis = basis;
    report.code.code = LinearCode::new(explicit);
    Ok(report)
}
