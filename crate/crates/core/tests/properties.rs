//! Algebraic invariants checked on random inputs.

use proptest::prelude::*;
use rtheta::canonical::{alpha_form_of, beta_form_of, Code, GeneratorSet};
use rtheta::poly::{parse_rpoly, Polynomial, QuotientContext, RPoly, TermOrder};
use rtheta::ring::{classify_unit, phi_theta, units, RingElement, Theta, UnitClass};

fn theta() -> impl Strategy<Value = Theta> {
    prop::sample::select(Theta::ALL.to_vec())
}

fn element(t: Theta) -> impl Strategy<Value = RingElement> {
    (0u8..4, 0u8..4).prop_map(move |(a, b)| RingElement::new(t, a, b))
}

fn poly(t: Theta, max_len: usize) -> impl Strategy<Value = RPoly> {
    prop::collection::vec(element(t), 0..=max_len).prop_map(move |cs| RPoly::from_coeffs(t, cs))
}

/// A quotient ring together with `count` polynomials of degree below `n`.
fn quotient_with(count: usize) -> impl Strategy<Value = (QuotientContext, Vec<RPoly>)> {
    (theta(), 1usize..=5).prop_flat_map(move |(t, n)| {
        let us = units(t);
        (
            prop::sample::select(us),
            prop::collection::vec(poly(t, n), count),
        )
            .prop_map(move |(u, ps)| (QuotientContext::new(t, u, n).unwrap(), ps))
    })
}

proptest! {
    #[test]
    fn ring_is_commutative_with_identity((x, y) in theta().prop_flat_map(|t| (element(t), element(t)))) {
        let t = x.theta();
        prop_assert_eq!(x * y, y * x);
        prop_assert_eq!(x + y, y + x);
        prop_assert_eq!(x * RingElement::one(t), x);
        prop_assert_eq!(x + (-x), RingElement::zero(t));
        prop_assert_eq!(x - y, x + (-y));
    }

    #[test]
    fn units_invert_and_classify(x in theta().prop_flat_map(element)) {
        match x.inverse() {
            Some(inv) => {
                prop_assert_eq!(x * inv, RingElement::one(x.theta()));
                prop_assert_ne!(classify_unit(&x), UnitClass::NotAUnit);
            }
            None => prop_assert_eq!(classify_unit(&x), UnitClass::NotAUnit),
        }
    }

    #[test]
    fn phi_respects_both_operations((x, y) in theta().prop_flat_map(|t| (element(t), element(t)))) {
        prop_assert_eq!(phi_theta(&(x + y)), (phi_theta(&x) + phi_theta(&y)) % 4);
        prop_assert_eq!(phi_theta(&(x * y)), (phi_theta(&x) * phi_theta(&y)) % 4);
    }

    #[test]
    fn quotient_multiplication_is_a_commutative_ring((c, ps) in quotient_with(3)) {
        let (f, g, h) = (&ps[0], &ps[1], &ps[2]);
        let m = |a: &RPoly, b: &RPoly| c.quotient_mul(a, b).unwrap();
        prop_assert_eq!(m(f, g), m(g, f));
        prop_assert_eq!(m(&m(f, g), h), m(f, &m(g, h)));
        prop_assert_eq!(m(f, &c.reduce(&g.add(h))), c.reduce(&m(f, g).add(&m(f, h))));
    }

    #[test]
    fn n_shifts_multiply_by_the_unit((c, ps) in quotient_with(1)) {
        let t = c.theta();
        let mut word: Vec<RingElement> = (0..c.n()).map(|i| ps[0].coeff(i)).collect();
        let start = word.clone();
        for _ in 0..c.n() {
            word = c.constacyclic_shift(&word).unwrap();
        }
        let scaled: Vec<RingElement> = start.iter().map(|&x| c.unit() * x).collect();
        prop_assert_eq!(&word, &scaled);
        // A single shift agrees with multiplication by z in the quotient.
        let z = RPoly::monomial(t, 1);
        let shifted = c.constacyclic_shift(&start).unwrap();
        let by_z = c.quotient_mul(&c.reduce(&z), &ps[0]).unwrap();
        prop_assert_eq!(RPoly::from_coeffs(t, shifted), by_z);
    }

    #[test]
    fn reciprocal_of_sum_and_product((f, g) in theta().prop_flat_map(|t| (poly(t, 8), poly(t, 8)))) {
        let (f, g) = match (f.degree(), g.degree()) {
            (Some(a), Some(b)) if a >= b => (f, g),
            (Some(_), Some(_)) => (g, f),
            _ => return Ok(()),
        };
        let (d1, d2) = (f.degree().unwrap(), g.degree().unwrap());
        let sum = f.add(&g);
        if sum.degree() == Some(d1) {
            prop_assert_eq!(sum.reciprocal(), f.reciprocal().add(&g.reciprocal().mul_z_pow(d1 - d2)));
        }
        let product = f.mul(&g);
        if product.degree() == Some(d1 + d2) {
            prop_assert_eq!(product.reciprocal(), f.reciprocal().mul(&g.reciprocal()));
        }
    }

    #[test]
    fn printed_polynomials_parse_back(f in theta().prop_flat_map(|t| poly(t, 6)), descending in any::<bool>()) {
        let order = if descending { TermOrder::Descending } else { TermOrder::Ascending };
        prop_assert_eq!(parse_rpoly(f.theta(), &f.to_text(order)).unwrap(), f);
    }

    #[test]
    fn canonical_generators_regenerate_the_code((c, ps) in quotient_with(2)) {
        let gs = GeneratorSet::new(c.clone(), ps).unwrap();
        let code = Code::generate(&gs);
        prop_assert!(gs.gens().iter().all(|g| code.contains(g)));
        let gens = match c.unit_class() {
            UnitClass::Alpha => alpha_form_of(&code).unwrap().generators(),
            _ => match beta_form_of(&code) {
                Ok(f) => f.generators(),
                Err(_) => return Ok(()),
            },
        };
        prop_assert_eq!(Code::from_polys(c, &gens), code);
    }
}
