//! Construction and verification of linear complementary dual (LCD)
//! algebraic geometry codes over elliptic, hyperelliptic, Hermitian curves
//! and the projective line.
//!
//! The crate is layered bottom-up:
//!
//! - [`gf`]: exact GF(p^m) arithmetic, polynomials, extension embeddings;
//! - [`linalg`]: dense linear algebra over GF(q);
//! - [`curve`]: curve models, places, local expansions, the elliptic group law;
//! - [`function_field`]: divisors, functions, differentials, residues;
//! - [`riemann_roch`]: bases of Riemann–Roch spaces;
//! - [`agcode`]: generalized AG codes, duals, LCD test, distances, bounds;
//! - [`constructions`]: one hypothesis-checked builder per LCD recipe.

pub mod gf;
pub mod linalg;
pub mod curve;
pub mod function_field;
pub mod riemann_roch;
pub mod agcode;
pub mod constructions;
