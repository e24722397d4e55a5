use proptest::prelude::*;

use super::*;

fn gf16() -> Field {
    Field::new(2, 4, &[1, 1, 0, 0, 1]).unwrap()
}

fn gf9() -> Field {
    Field::new(3, 2, &[-1, -1, 1]).unwrap()
}

/// Independent GF(2^m) multiply: shift-and-add with reduction after each
/// doubling, on raw bit patterns.
fn bitwise_mul(a: u64, b: u64, modulus: u64, m: u32) -> u64 {
    let (mut a, mut b, mut acc) = (a, b, 0u64);
    while b > 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a >> m & 1 == 1 {
            a ^= modulus;
        }
    }
    acc
}

fn oracle_pow(a: u64, mut e: u64, modulus: u64, m: u32) -> u64 {
    let (mut base, mut acc) = (a, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = bitwise_mul(acc, base, modulus, m);
        }
        base = bitwise_mul(base, base, modulus, m);
        e >>= 1;
    }
    acc
}

#[test]
fn gf16_generator_satisfies_modulus() {
    let f = gf16();
    let rho = f.generator();
    assert_eq!(f.order(), 16);
    assert_eq!(f.pow_u(rho, 4), f.add(rho, Fe::ONE));
    // rho * rho^3 = rho^4 = rho + 1
    assert_eq!(f.mul(rho, f.pow_u(rho, 3)), Fe(3));
}

#[test]
fn gf9_normalizes_signed_modulus() {
    let f = gf9();
    assert_eq!(f.modulus(), &[2, 2, 1]);
    assert_eq!(f.spec_string(), "3^2:x^2+2x+2");
    let rho = f.generator();
    assert_eq!(f.mul(rho, rho), f.add(rho, Fe::ONE));
    assert_eq!(Field::parse("3^2:x^2-x-1").unwrap(), f);
}

#[test]
fn gf2_generator_is_one() {
    let f = Field::new(2, 1, &[1, 1]).unwrap();
    assert_eq!(f.generator(), Fe::ONE);
    assert_eq!(f.elements().collect::<Vec<_>>(), vec![Fe(0), Fe(1)]);
}

#[test]
fn rejects_bad_inputs() {
    assert_eq!(Field::new(4, 2, &[1, 1, 1]).unwrap_err(), GfError::NotPrime(4));
    assert_eq!(Field::new(2, 2, &[1, 0, 1]).unwrap_err(), GfError::Reducible(2));
    assert_eq!(Field::new(2, 2, &[1, 1, 0]).unwrap_err(), GfError::BadModulus(2));
    assert_eq!(Field::new(3, 2, &[1, 1, 2]).unwrap_err(), GfError::BadModulus(2));
    assert!(Field::parse("2^4:x^3+x+1").is_err());
    assert!(Field::parse("two^4:x").is_err());
}

#[test]
fn inverses_and_division() {
    for f in [gf16(), gf9(), Field::parse("3^5:x^5+2x+1").unwrap()] {
        for a in f.elements().skip(1) {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE);
            assert_eq!(f.pow(a, -1).unwrap(), f.inv(a).unwrap());
        }
        assert_eq!(f.div(Fe::ONE, Fe::ZERO), Err(GfError::DivisionByZero));
        assert_eq!(f.pow(Fe::ZERO, -2), Err(GfError::DivisionByZero));
    }
}

#[test]
fn multiplication_matches_bitwise_oracle() {
    let f = gf16();
    for a in 0..16 {
        for b in 0..16 {
            assert_eq!(f.mul(Fe(a), Fe(b)).0, bitwise_mul(a, b, 0b10011, 4));
        }
    }
    // rho^15 = 1 by the repeated-squaring oracle and by the implementation.
    assert_eq!(oracle_pow(2, 15, 0b10011, 4), 1);
    assert_eq!(f.pow_u(f.generator(), 15), Fe::ONE);
}

#[test]
fn polynomial_backend_agrees_with_tables() {
    for f in [Field::parse("2^8:x^8+x^4+x^3+x+1").unwrap(), Field::parse("3^5:x^5+2x+1").unwrap()] {
        for a in (0..f.order()).step_by(7) {
            for b in (0..f.order()).step_by(11) {
                assert_eq!(f.slow_mul(Fe(a), Fe(b)), f.mul(Fe(a), Fe(b)));
            }
        }
    }
}

#[test]
fn large_fields_use_polynomial_arithmetic() {
    let f = Field::default_for(2, 40).unwrap();
    assert!(f.tables.is_none());
    let a = Fe(0x12_3456_789a);
    let inv = f.inv(a).unwrap();
    assert_eq!(f.mul(a, inv), Fe::ONE);
    assert_eq!(f.pow_u(a, f.order() - 1), Fe::ONE);
    let g = Field::default_for(3, 14).unwrap();
    let b = Fe(123_456);
    assert_eq!(g.mul(b, g.inv(b).unwrap()), Fe::ONE);
}

#[test]
fn sqrt_examples() {
    let f = gf16();
    assert_eq!(f.sqrt(Fe::ONE), Some(Fe::ONE));
    let rho = f.generator();
    assert_eq!(f.sqrt(f.mul(rho, rho)), Some(rho));
    let g = gf9();
    let squares: std::collections::BTreeSet<Fe> = g.elements().map(|a| g.mul(a, a)).collect();
    assert_eq!(squares.len(), 5);
    let with_root: Vec<Fe> = g.elements().filter(|&a| g.sqrt(a).is_some()).collect();
    assert_eq!(with_root.len(), 5);
    for a in with_root {
        let r = g.sqrt(a).unwrap();
        assert_eq!(g.mul(r, r), a);
        assert!(squares.contains(&a));
    }
}

#[test]
fn trace_examples() {
    let f = gf16();
    assert_eq!(f.trace(Fe::ZERO), 0);
    // direct power sum of rho^3
    let r3 = oracle_pow(2, 3, 0b10011, 4);
    let mut acc = 0u64;
    let mut cur = r3;
    for _ in 0..4 {
        acc ^= cur;
        cur = bitwise_mul(cur, cur, 0b10011, 4);
    }
    assert_eq!(acc, 1);
    assert_eq!(f.trace(Fe(r3)), 1);
    let gf4 = Field::new(2, 2, &[1, 1, 1]).unwrap();
    assert_eq!(gf4.trace(Fe::ONE), 0);
}

#[test]
fn trace_is_linear_and_onto() {
    for f in [gf16(), gf9(), Field::parse("2^12:x^12+x^3+1").unwrap(), Field::parse("3^3:x^3+2x+1").unwrap()] {
        let p = f.characteristic();
        let mut hits = vec![0u64; p as usize];
        for a in f.elements() {
            hits[f.trace(a) as usize] += 1;
        }
        assert!(hits.iter().all(|&h| h == f.order() / p));
        let a = Fe(f.order() / 3);
        for b in f.elements().step_by(5) {
            assert_eq!(f.trace(f.add(a, b)), (f.trace(a) + f.trace(b)) % p);
            assert_eq!(f.trace(f.mul(Fe(p - 1), b)), (f.trace(b) * (p - 1)) % p);
        }
    }
}

#[test]
fn enumerate_examples() {
    let gf4 = Field::new(2, 2, &[1, 1, 1]).unwrap();
    let e: Vec<Fe> = gf4.elements().collect();
    assert_eq!(e.len(), 4);
    assert_eq!(e[0], Fe::ZERO);
    let f = gf16();
    assert_eq!(f.elements().filter(|&a| f.pow_u(a, 15) == Fe::ONE).count(), 15);
}

#[test]
fn embedding_gf4_into_gf16() {
    let gf4 = Field::new(2, 2, &[1, 1, 1]).unwrap();
    let f = gf16();
    let ext = Extension::between(&gf4, &f).unwrap();
    assert_eq!(ext.embed(Fe::ZERO), Fe::ZERO);
    assert_eq!(ext.embed(Fe::ONE), Fe::ONE);
    // Roots of x^2+x+1 in GF(16), by scan: rho^5 and rho^10.
    let roots: Vec<Fe> = f.elements().filter(|&x| f.add(f.add(f.mul(x, x), x), Fe::ONE).is_zero()).collect();
    let rho = f.generator();
    let mut expected = vec![f.pow_u(rho, 5), f.pow_u(rho, 10)];
    expected.sort();
    assert_eq!(roots, expected);
    let img = ext.embed(gf4.generator());
    assert_eq!(img, roots[0]);
    for a in gf4.elements() {
        for b in gf4.elements() {
            assert_eq!(ext.embed(gf4.mul(a, b)), f.mul(ext.embed(a), ext.embed(b)));
            assert_eq!(ext.embed(gf4.add(a, b)), f.add(ext.embed(a), ext.embed(b)));
        }
        // Tr_{16/2} = Tr_{4/2} o Tr_{16/4}, and Tr_{16/4} of a GF(4) element is 2a = 0.
        assert_eq!(f.trace(ext.embed(a)), gf4.trace(gf4.add(a, a)));
        assert_eq!(ext.trace(ext.embed(a)), Fe::ZERO);
    }
    assert!(embed(Fe::ONE, &f, &gf4).is_err());
    assert!(embed(Fe::ONE, &gf9(), &f).is_err());
}

#[test]
fn embedding_into_degree_three_extension() {
    let base = gf9();
    let ext = Extension::of_degree(&base, 3).unwrap();
    assert_eq!(ext.field().order(), 729);
    let big = ext.field();
    for a in base.elements() {
        assert_eq!(ext.restrict(ext.embed(a)), Some(a));
        for b in base.elements() {
            assert_eq!(ext.embed(base.mul(a, b)), big.mul(ext.embed(a), ext.embed(b)));
        }
    }
    // the relative trace is base-linear and onto
    let mut counts = std::collections::HashMap::new();
    for x in big.elements() {
        *counts.entry(ext.trace(x)).or_insert(0) += 1;
    }
    assert_eq!(counts.len(), 9);
    assert!(counts.values().all(|&c| c == 81));
}

#[test]
fn field_element_rejects_mixed_operands() {
    let a = FieldElement::new(&gf16(), Fe(3));
    let b = FieldElement::new(&gf9(), Fe(3));
    assert_eq!(a.try_add(&b).unwrap_err(), GfError::FieldMismatch);
    assert_eq!(a.try_mul(&a).unwrap().value(), gf16().mul(Fe(3), Fe(3)));
    assert_eq!(a.coefficients(), vec![1, 1, 0, 0]);
    assert_eq!(a.try_div(&FieldElement::new(&gf16(), Fe(0))).unwrap_err(), GfError::DivisionByZero);
}

fn fields() -> Vec<Field> {
    vec![gf16(), gf9(), Field::parse("2^6:x^6+x+1").unwrap(), Field::parse("3^4:x^4+x+2").unwrap()]
}

proptest! {
    #[test]
    fn ring_axioms(idx in 0usize..4, a in 0u64..4096, b in 0u64..4096, c in 0u64..4096) {
        let f = &fields()[idx];
        let (a, b, c) = (Fe(a % f.order()), Fe(b % f.order()), Fe(c % f.order()));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
    }

    #[test]
    fn frobenius_is_additive(idx in 0usize..4, a in 0u64..4096, b in 0u64..4096) {
        let f = &fields()[idx];
        let (a, b) = (Fe(a % f.order()), Fe(b % f.order()));
        prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
    }

    #[test]
    fn char2_sqrt_inverts_squaring(a in 0u64..64) {
        let f = Field::parse("2^6:x^6+x+1").unwrap();
        let a = Fe(a);
        prop_assert_eq!(f.sqrt(f.mul(a, a)), Some(a));
    }
}
