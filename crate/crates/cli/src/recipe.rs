//! Recipe dispatch: `--param key=value` pairs to a construction call.

use std::collections::BTreeMap;

use lcd_agc::constructions::*;
use lcd_agc::curve::{Curve, Place};
use lcd_agc::function_field::{CurveFunction, Differential, Divisor};
use lcd_agc::gf::{Fe, Field, Poly};

use crate::CliError;

pub const RECIPES: &[&str] = &[
    "thm3",
    "cor1",
    "cor2",
    "thm4",
    "thm5",
    "thm6",
    "hyper-rp",
    "hyper-reduced",
    "hermitian",
    "projline",
    "thm7",
];

/// Parameter lookup with typed accessors. Lists are comma separated, except
/// place lists, which use `;` because places contain commas.
pub struct Params<'a> {
    map: &'a BTreeMap<String, String>,
    curve: &'a Curve,
}

impl<'a> Params<'a> {
    pub fn new(map: &'a BTreeMap<String, String>, curve: &'a Curve) -> Params<'a> {
        Params { map, curve }
    }

    fn raw(&self, key: &str) -> Result<&str, CliError> {
        self.map.get(key).map(String::as_str).ok_or_else(|| CliError::Usage(format!("missing --param {key}=...")))
    }

    fn bad(key: &str, v: &str, what: &str) -> CliError {
        CliError::Usage(format!("--param {key}={v}: {what}"))
    }

    pub fn int(&self, key: &str) -> Result<i64, CliError> {
        let v = self.raw(key)?;
        v.trim().parse().map_err(|_| Self::bad(key, v, "expected an integer"))
    }

    pub fn ints(&self, key: &str) -> Result<Vec<i64>, CliError> {
        let v = self.raw(key)?;
        v.split(',').map(|t| t.trim().parse().map_err(|_| Self::bad(key, v, "expected integers"))).collect()
    }

    pub fn elem(&self, key: &str) -> Result<Fe, CliError> {
        let v = self.raw(key)?;
        let e = v.trim().parse::<u64>().map(Fe).map_err(|_| Self::bad(key, v, "expected a field element"))?;
        if !self.curve.field().contains(e) {
            return Err(Self::bad(key, v, "not a canonical field element"));
        }
        Ok(e)
    }

    pub fn elems(&self, key: &str) -> Result<Vec<Fe>, CliError> {
        let v = self.raw(key)?;
        let f = self.curve.field();
        v.split(',')
            .map(|t| match t.trim().parse::<u64>() {
                Ok(x) if f.contains(Fe(x)) => Ok(Fe(x)),
                _ => Err(Self::bad(key, v, "expected field elements")),
            })
            .collect()
    }

    /// `alphas`, defaulting to the elliptic set `S` minus `exclude`.
    pub fn alphas_or_rest(&self, exclude: Fe) -> Result<Vec<Fe>, CliError> {
        if self.map.contains_key("alphas") {
            self.elems("alphas")
        } else {
            Ok(s_set(self.curve).into_iter().filter(|&a| a != exclude).collect())
        }
    }

    pub fn place(&self, key: &str) -> Result<Place, CliError> {
        let v = self.raw(key)?;
        Place::parse(v, self.curve).map_err(|e| Self::bad(key, v, &e.to_string()))
    }

    pub fn places(&self, key: &str) -> Result<Vec<Place>, CliError> {
        let v = self.raw(key)?;
        v.split(';')
            .filter(|t| !t.trim().is_empty())
            .map(|t| Place::parse(t, self.curve).map_err(|e| Self::bad(key, v, &e.to_string())))
            .collect()
    }

    pub fn divisor(&self, key: &str) -> Result<Divisor, CliError> {
        let v = self.raw(key)?;
        Divisor::parse(v, self.curve).map_err(|e| Self::bad(key, v, &e.to_string()))
    }

    /// `dx / h(x)` from `h=c0,c1,...` (constant term first).
    pub fn omega(&self) -> Result<Differential, CliError> {
        let h = Poly::from_coeffs(self.elems("h")?);
        if h.is_zero() {
            return Err(CliError::Usage("--param h must be a nonzero polynomial".into()));
        }
        Ok(Differential::new(CurveFunction::new(self.curve, vec![Poly::one()], h))?)
    }

    /// `points`, defaulting to every rational affine place off `supp(G)`.
    pub fn points_or_all(&self, g: &Divisor) -> Result<Vec<Place>, CliError> {
        if self.map.contains_key("points") {
            self.places("points")
        } else {
            Ok(self.curve.affine_points().iter().filter(|p| g.coeff(p) == 0).cloned().collect())
        }
    }
}

/// Parses `key=value`.
pub fn parse_kv(s: &str) -> Result<(String, String), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("`{s}` is not key=value"))?;
    Ok((k.trim().to_string(), v.trim().to_string()))
}

pub fn load_curve(field: &str, curve: Option<&str>, recipe: &str) -> Result<Curve, CliError> {
    let field = Field::parse(field).map_err(|e| CliError::Usage(format!("--field {field}: {e}")))?;
    let spec = match (curve, recipe) {
        (Some(c), _) => c,
        (None, "projline") => "projective-line",
        (None, _) => return Err(CliError::Usage("--curve is required for this recipe".into())),
    };
    Curve::parse(spec, &field).map_err(|e| CliError::Usage(format!("--curve {spec}: {e}")))
}

pub fn build(curve: &Curve, recipe: &str, map: &BTreeMap<String, String>) -> Result<ConstructionReport, CliError> {
    let p = Params::new(map, curve);
    let report = match recipe {
        "thm3" | "thm7" => {
            let g = p.divisor("G")?;
            let points = p.points_or_all(&g)?;
            let omega = p.omega()?;
            if recipe == "thm3" {
                thm3_elliptic(curve, &points, &g, &omega)
            } else {
                thm7_general(curve, &points, &g, &omega)
            }
        }
        "cor1" => cor1_build(curve, &p.places("points")?, p.int("r")?),
        "cor2" => cor2_build(curve, &p.places("points")?, &p.place("Q")?, p.int("r")?),
        "thm4" => {
            let a0 = p.elem("alpha0")?;
            thm4_build(curve, a0, &p.alphas_or_rest(a0)?, p.int("r")?)
        }
        "thm5" => {
            let a1 = p.elem("alpha1")?;
            let mut alphas = vec![a1];
            alphas.extend(p.alphas_or_rest(a1)?);
            thm5_build(curve, &alphas, p.int("r")?)
        }
        "thm6" => {
            let a0 = p.elem("alpha0")?;
            thm6_build(curve, a0, &p.alphas_or_rest(a0)?, p.int("r")?)
        }
        "hyper-rp" => hyper_build_rp(curve, &p.place("P")?, p.int("r")?),
        "hyper-reduced" => hyper_build_reduced(curve, &p.elems("alphas")?, &p.ints("ns")?, &p.ints("rs")?),
        "hermitian" => hermitian_build(curve, &p.place("P")?, p.int("r")?),
        "projline" => projline_build(curve.field(), p.int("r")?),
        other => return Err(CliError::Usage(format!("unknown recipe `{other}`; expected one of {}", RECIPES.join(", ")))),
    };
    Ok(report?)
}
