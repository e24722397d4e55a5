//! Fixtures shared by the benchmarks.

use lcd_agc::constructions::{s_set, thm4_build, thm6_build, ConstructionReport};
use lcd_agc::curve::Curve;
use lcd_agc::gf::{Fe, Field};

pub fn gf16() -> Field {
    Field::parse("2^4:x^4+x+1").unwrap()
}

/// `y^2 + y = x^3 + rho^3` over GF(16).
pub fn e16() -> Curve {
    Curve::elliptic_as(&gf16(), Fe(0), Fe(8)).unwrap()
}

fn rest(c: &Curve) -> Vec<Fe> {
    s_set(c).into_iter().filter(|&a| a != Fe(2)).collect()
}

/// The `[22,8]` / `[22,14]` pair.
pub fn pair_22_8() -> ConstructionReport {
    let c = e16();
    thm4_build(&c, Fe(2), &rest(&c), 4).unwrap()
}

/// The `[22,4]` / `[22,18]` pair.
pub fn pair_22_4() -> ConstructionReport {
    let c = e16();
    thm6_build(&c, Fe(2), &rest(&c), 0).unwrap()
}
