//! Recipes on `y^2 + y = x^3 + bx + c` and general genus-one inputs.

use super::{assemble, dx_over, params, ConstructionError, ConstructionReport, Gate, Hypothesis, Plan, Scaling};
use crate::curve::{Curve, Place};
use crate::function_field::{Differential, Divisor};
use crate::gf::{Fe, Poly};
use crate::riemann_roch::function_with_divisor;

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

fn need_elliptic(curve: &Curve) -> Result<(), ConstructionError> {
    if !curve.is_elliptic() {
        return Err(ConstructionError::Invalid(format!("{} is not an elliptic curve", curve.spec_string())));
    }
    Ok(())
}

/// `S`: x-coordinates of rational affine points, ascending.
pub fn s_set(curve: &Curve) -> Vec<Fe> {
    let mut s: Vec<Fe> = curve.affine_points().iter().filter_map(|p| match p {
        Place::Affine { x, .. } => Some(*x),
        _ => None,
    }).collect();
    s.dedup();
    s
}

/// `(P+, P-)` above `alpha`: `P+` has the smaller `y` encoding.
pub fn fiber_pair(curve: &Curve, alpha: Fe) -> Result<(Place, Place), ConstructionError> {
    match curve.points_above_x(alpha).as_slice() {
        [a, b] => Ok((a.clone(), b.clone())),
        _ => Err(ConstructionError::Invalid(format!("{} is not the x-coordinate of two rational points", alpha.0))),
    }
}

/// `P ∉ E[r]`: settled by `gcd(r, N) = 1` when it holds, else by computing
/// `rP` explicitly.
pub fn cor34_gate(curve: &Curve, p: &Place, r: u64) -> Result<Hypothesis, ConstructionError> {
    let n = curve.enumerate_points().len() as u64;
    let g = gcd_u64(r, n);
    let rp = curve.elliptic_mul(p, r as i64)?;
    if g == 1 {
        debug_assert!(!rp.is_infinity());
        return Ok(Hypothesis::new("P∉E[r]", true, format!("gcd({r},{n}) = 1")));
    }
    Ok(Hypothesis::new(
        "P∉E[r]",
        !rp.is_infinity(),
        format!("gcd({r},{n}) = {g}; explicit {r}*{} = {}", p.render(), rp.render()),
    ))
}

/// General genus-one recipe: `omega` with `(omega) = G + H - D`, square
/// residues, `deg gcd(G,H) = 0`, `gcd(G,H)` not principal.
pub fn thm3_elliptic(
    curve: &Curve,
    points: &[Place],
    g: &Divisor,
    omega: &Differential,
) -> Result<ConstructionReport, ConstructionError> {
    need_elliptic(curve)?;
    let n = points.len() as i64;
    let deg = g.degree();
    assemble(Plan {
        recipe: "thm3",
        params: params([("G", g.render()), ("n", n.to_string()), ("omega", format!("({}) dx", omega.f.render()))]),
        curve: curve.clone(),
        points: points.to_vec(),
        g: g.clone(),
        h_stated: None,
        omega: omega.clone(),
        scaling: Scaling::SquareRoots,
        gate: Gate::Elliptic,
        hyps: vec![Hypothesis::new("0<deg(G)<n", 0 < deg && deg < n, format!("deg G = {deg}, n = {n}"))],
    })
}

/// `G = (r-1)O + r D̄`, `H = (n-r)O - (r-1) D̄`, `(omega) = (n-1)O + D̄ - D`.
pub fn cor1_build(curve: &Curve, points: &[Place], r: i64) -> Result<ConstructionReport, ConstructionError> {
    need_elliptic(curve)?;
    let n = points.len() as i64;
    let dsum = Divisor::sum_of(curve, points);
    let dbar = dsum.class_point()?;
    let mut hyps = vec![
        Hypothesis::new("2≤r≤(n+1)/2", 2 <= r && 2 * r <= n + 1, format!("r = {r}, n = {n}")),
        Hypothesis::new(
            "O,D̄∉supp(D)",
            !dbar.is_infinity() && !points.contains(&dbar),
            format!("D̄ = {}", dbar.render()),
        ),
    ];
    let torsion = !dbar.is_infinity() && !curve.torsion_test(&dbar, (r - 1).max(0) as u64)?;
    hyps.push(Hypothesis::new("D̄∉E[r-1]", torsion, format!("{}*D̄ = {}", r - 1, curve.elliptic_mul(&dbar, r - 1)?.render())));
    super::fail_if_any("cor1", &hyps)?;
    let target = Divisor::from_terms(curve, [(Place::Infinity, n - 1), (dbar.clone(), 1)]).sub(&dsum)?;
    let f = function_with_divisor(curve, &target)?;
    let got = f.divisor()?;
    hyps.push(Hypothesis::new("(f)=(n-1)O+D̄-D", got == target, format!("f = {}", f.render())));
    let omega = Differential::new(f)?;
    let g = Divisor::from_terms(curve, [(Place::Infinity, r - 1), (dbar.clone(), r)]);
    let h = Divisor::from_terms(curve, [(Place::Infinity, n - r), (dbar.clone(), -(r - 1))]);
    assemble(Plan {
        recipe: "cor1",
        params: params([("r", r.to_string()), ("n", n.to_string()), ("dbar", dbar.render())]),
        curve: curve.clone(),
        points: points.to_vec(),
        g,
        h_stated: Some(h),
        omega,
        scaling: Scaling::SquareRoots,
        gate: Gate::Elliptic,
        hyps,
    })
}

/// `G = rO + rQ`, `H = (n-r)O - rQ`, `(omega) = nO - D` for a degree-one
/// `Q` and `D` with `D - nO` principal.
pub fn cor2_build(curve: &Curve, points: &[Place], q: &Place, r: i64) -> Result<ConstructionReport, ConstructionError> {
    need_elliptic(curve)?;
    let n = points.len() as i64;
    if !matches!(q, Place::Affine { .. }) {
        return Err(ConstructionError::Invalid("Q must be a rational affine place".into()));
    }
    let dsum = Divisor::sum_of(curve, points);
    let dn = dsum.clone().with(Place::Infinity, -n);
    let principal = dn.is_principal()?;
    let rq = curve.elliptic_mul(q, r)?;
    let mut hyps = vec![
        Hypothesis::new("0<2r<n", 0 < 2 * r && 2 * r < n, format!("r = {r}, n = {n}")),
        Hypothesis::new("Q,O∉supp(D)", !points.contains(q), format!("Q = {}", q.render())),
        Hypothesis::new("D principal", principal, format!("class point of D - nO: {}", dn.class_point()?.render())),
        Hypothesis::new("rQ≠O", !rq.is_infinity(), format!("{r}*Q = {}", rq.render())),
    ];
    super::fail_if_any("cor2", &hyps)?;
    let target = Divisor::single(curve, Place::Infinity, n).sub(&dsum)?;
    let f = function_with_divisor(curve, &target)?;
    hyps.push(Hypothesis::new("(f)=nO-D", f.divisor()? == target, format!("f = {}", f.render())));
    let omega = Differential::new(f)?;
    let g = Divisor::from_terms(curve, [(Place::Infinity, r), (q.clone(), r)]);
    let h = Divisor::from_terms(curve, [(Place::Infinity, n - r), (q.clone(), -r)]);
    assemble(Plan {
        recipe: "cor2",
        params: params([("r", r.to_string()), ("n", n.to_string()), ("Q", q.render())]),
        curve: curve.clone(),
        points: points.to_vec(),
        g,
        h_stated: Some(h),
        omega,
        scaling: Scaling::SquareRoots,
        gate: Gate::Elliptic,
        hyps,
    })
}

/// `b_j = 1 / prod_{i != j} (alpha_j^{2^{m-1}} + alpha_i^{2^{m-1}})` over
/// the pole set `poles`, for each `alpha` in `targets`.
fn b_values(curve: &Curve, poles: &[Fe], targets: &[Fe]) -> Vec<Fe> {
    let f = curve.field();
    let half = f.order() / 2;
    let sq = |a: Fe| f.pow_u(a, half);
    targets
        .iter()
        .map(|&aj| {
            let prod = f.product(poles.iter().filter(|&&ai| ai != aj).map(|&ai| f.add(sq(aj), sq(ai))));
            f.inv(prod).expect("distinct x-coordinates")
        })
        .collect()
}

fn check_alphas(curve: &Curve, alphas: &[Fe]) -> Hypothesis {
    let s = s_set(curve);
    let mut sorted = alphas.to_vec();
    sorted.sort();
    sorted.dedup();
    let distinct = sorted.len() == alphas.len();
    let inside = alphas.iter().all(|a| s.contains(a));
    Hypothesis::new(
        "α distinct in S",
        distinct && inside,
        if !distinct { "repeated x-coordinate".to_string() } else if !inside { "x-coordinate outside S".to_string() } else { format!("{} values", alphas.len()) },
    )
}

fn need_as_char2(curve: &Curve) -> Result<(), ConstructionError> {
    if !matches!(curve.family(), crate::curve::Family::EllipticAS { .. }) {
        return Err(ConstructionError::Invalid("recipe needs elliptic-as".into()));
    }
    Ok(())
}

fn prod_x_plus(curve: &Curve, alphas: &[Fe]) -> Poly {
    let f = curve.field();
    alphas.iter().fold(Poly::one(), |acc, &a| acc.mul(&Poly::linear(a, f), f))
}

fn full_fibers(curve: &Curve, alphas: &[Fe]) -> Result<Vec<Place>, ConstructionError> {
    let mut d = Vec::new();
    for &a in alphas {
        let (p, m) = fiber_pair(curve, a)?;
        d.push(p);
        d.push(m);
    }
    Ok(d)
}

fn render_alphas(a: &[Fe]) -> String {
    a.iter().map(|x| x.0.to_string()).collect::<Vec<_>>().join(",")
}

/// `G = rO + rP+`, `D` the full fibers over `alphas`, `a = (b_1,b_1,...)`.
pub fn thm4_build(curve: &Curve, alpha0: Fe, alphas: &[Fe], r: i64) -> Result<ConstructionReport, ConstructionError> {
    need_as_char2(curve)?;
    let s = alphas.len() as i64;
    let mut all = vec![alpha0];
    all.extend_from_slice(alphas);
    let mut hyps = vec![check_alphas(curve, &all), Hypothesis::new("0<r<s", 0 < r && r < s, format!("r = {r}, s = {s}"))];
    super::fail_if_any("thm4", &hyps)?;
    let (p0, _) = fiber_pair(curve, alpha0)?;
    hyps.push(cor34_gate(curve, &p0, r as u64)?);
    let points = full_fibers(curve, alphas)?;
    let b = b_values(curve, alphas, alphas);
    let a: Vec<Fe> = b.iter().flat_map(|&x| [x, x]).collect();
    assemble(Plan {
        recipe: "thm4",
        params: params([("alpha0", alpha0.0.to_string()), ("alphas", render_alphas(alphas)), ("r", r.to_string())]),
        curve: curve.clone(),
        points,
        g: Divisor::from_terms(curve, [(Place::Infinity, r), (p0.clone(), r)]),
        h_stated: Some(Divisor::from_terms(curve, [(Place::Infinity, 2 * s - r), (p0, -r)])),
        omega: dx_over(curve, prod_x_plus(curve, alphas))?,
        scaling: Scaling::Given(a),
        gate: Gate::Elliptic,
        hyps,
    })
}

/// `G = (r+1)O + rP+_{alpha_1}`, `D = P-_{alpha_1} + ` the other fibers.
pub fn thm5_build(curve: &Curve, alphas: &[Fe], r: i64) -> Result<ConstructionReport, ConstructionError> {
    need_as_char2(curve)?;
    let s = alphas.len() as i64;
    let mut hyps = vec![check_alphas(curve, alphas), Hypothesis::new("0≤r<s-1", 0 <= r && r < s - 1, format!("r = {r}, s = {s}"))];
    super::fail_if_any("thm5", &hyps)?;
    let (p1, m1) = fiber_pair(curve, alphas[0])?;
    hyps.push(cor34_gate(curve, &p1, (r + 1) as u64)?);
    let mut points = vec![m1];
    points.extend(full_fibers(curve, &alphas[1..])?);
    let b = b_values(curve, alphas, alphas);
    let mut a = vec![b[0]];
    a.extend(b[1..].iter().flat_map(|&x| [x, x]));
    assemble(Plan {
        recipe: "thm5",
        params: params([("alphas", render_alphas(alphas)), ("r", r.to_string())]),
        curve: curve.clone(),
        points,
        g: Divisor::from_terms(curve, [(Place::Infinity, r + 1), (p1.clone(), r)]),
        h_stated: Some(Divisor::from_terms(curve, [(Place::Infinity, 2 * s - r - 1), (p1, -(r + 1))])),
        omega: dx_over(curve, prod_x_plus(curve, alphas))?,
        scaling: Scaling::Given(a),
        gate: Gate::Elliptic,
        hyps,
    })
}

/// `G = (2r+3)O + r(P+ + P-) + P+` at `alpha0`, `D` the fibers over `alphas`.
pub fn thm6_build(curve: &Curve, alpha0: Fe, alphas: &[Fe], r: i64) -> Result<ConstructionReport, ConstructionError> {
    need_as_char2(curve)?;
    let s = alphas.len() as i64;
    let mut all = vec![alpha0];
    all.extend_from_slice(alphas);
    let hyps = vec![check_alphas(curve, &all), Hypothesis::new("0≤r<(s-2)/2", 0 <= r && 2 * r < s - 2, format!("r = {r}, s = {s}"))];
    super::fail_if_any("thm6", &hyps)?;
    let (p0, m0) = fiber_pair(curve, alpha0)?;
    let points = full_fibers(curve, alphas)?;
    let b = b_values(curve, &all, alphas);
    let a: Vec<Fe> = b.iter().flat_map(|&x| [x, x]).collect();
    let g = Divisor::from_terms(curve, [(Place::Infinity, 2 * r + 3), (p0.clone(), r + 1), (m0.clone(), r)]);
    let h = Divisor::from_terms(curve, [(Place::Infinity, 2 * s - 2 * r - 1), (p0, -(r + 2)), (m0, -(r + 1))]);
    assemble(Plan {
        recipe: "thm6",
        params: params([("alpha0", alpha0.0.to_string()), ("alphas", render_alphas(alphas)), ("r", r.to_string())]),
        curve: curve.clone(),
        points,
        g,
        h_stated: Some(h),
        omega: dx_over(curve, prod_x_plus(curve, &all))?,
        scaling: Scaling::Given(a),
        gate: Gate::Elliptic,
        hyps,
    })
}
