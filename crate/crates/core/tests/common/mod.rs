#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rtheta::canonical::{Code, GeneratorSet};
use rtheta::oracle::CodeSet;
use rtheta::poly::{BinPoly, Polynomial, QuotientContext, RPoly};
use rtheta::ring::{tabulated_units, units, RingElement, Theta, UnitClass};

pub fn ctx(theta: Theta, a: u8, b: u8, n: usize) -> QuotientContext {
    QuotientContext::new(theta, RingElement::new(theta, a, b), n).unwrap()
}

/// Table units of the given class (the published ones).
pub fn table_units(theta: Theta, class: UnitClass) -> Vec<RingElement> {
    let (alpha, beta) = tabulated_units(theta);
    match class {
        UnitClass::Alpha => alpha,
        _ => beta,
    }
}

/// Every unit of the given class, including the ones the table leaves out.
pub fn all_units(theta: Theta, class: UnitClass) -> Vec<RingElement> {
    units(theta)
        .into_iter()
        .filter(|u| rtheta::ring::classify_unit(u) == class)
        .collect()
}

/// A generating set for an oracle code, built greedily from its elements.
pub fn generators_of(cs: &CodeSet) -> GeneratorSet {
    let ctx = cs.ctx().clone();
    let mut gens: Vec<RPoly> = Vec::new();
    let mut code = Code::from_polys(ctx.clone(), &[]);
    for e in cs.elements() {
        if !code.contains(&e) {
            gens.push(e);
            code = Code::from_polys(ctx.clone(), &gens);
        }
    }
    GeneratorSet::new(ctx, gens).unwrap()
}

/// The binary cyclic code generated by `g` in `Z2[z]/(z^n - 1)`, as sorted bit masks.
pub fn binary_code(n: usize, g: &BinPoly) -> Vec<u64> {
    let mut span: Vec<u64> = vec![0];
    let mut basis = Vec::new();
    let mut h = g.reduce_cyclic(n);
    for _ in 0..n {
        basis.push(
            h.coeffs()
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &c)| acc | (c as u64) << i),
        );
        h = h.mul_z_pow(1).reduce_cyclic(n);
    }
    for b in basis {
        if !span.contains(&b) {
            let extra: Vec<u64> = span.iter().map(|x| x ^ b).collect();
            span.extend(extra);
        }
    }
    span.sort_unstable();
    span.dedup();
    span
}

/// The four binary tower codes of an oracle code, computed from the definitions.
pub fn oracle_tower(cs: &CodeSet) -> [Vec<u64>; 4] {
    let n = cs.ctx().n();
    let mut out: [Vec<u64>; 4] = Default::default();
    for e in cs.elements() {
        let mut c0 = 0u64;
        let mut c1 = 0u64;
        let mut digits = [0u64; 4];
        for i in 0..n {
            let (x0, x1) = e.coeff(i).to_k_basis();
            c0 |= (x0 as u64) << (2 * i);
            c1 |= (x1 as u64) << (2 * i);
            digits[0] |= ((x0 & 1) as u64) << i;
            digits[1] |= ((x0 >> 1) as u64) << i;
            digits[2] |= ((x1 & 1) as u64) << i;
            digits[3] |= ((x1 >> 1) as u64) << i;
        }
        let even = |w: u64| w & 0x5555_5555_5555_5555 == 0;
        out[0].push(digits[0]);
        if even(c0) {
            out[1].push(digits[1]);
        }
        if c0 == 0 {
            out[2].push(digits[2]);
            if even(c1) {
                out[3].push(digits[3]);
            }
        }
    }
    for s in out.iter_mut() {
        s.sort_unstable();
        s.dedup();
    }
    out
}

/// Seeded source of random generator sets.
pub struct Sampler(pub StdRng);

impl Sampler {
    pub fn seeded(seed: u64) -> Self {
        Sampler(StdRng::seed_from_u64(seed))
    }

    pub fn rpoly(&mut self, theta: Theta, n: usize) -> RPoly {
        let coeffs = (0..n)
            .map(|_| RingElement::new(theta, self.0.gen_range(0..4), self.0.gen_range(0..4)))
            .collect();
        RPoly::from_coeffs(theta, coeffs)
    }

    /// One to three generators, biased towards k-multiples and doubles so that small codes show up.
    pub fn generator_set(&mut self, ctx: &QuotientContext) -> GeneratorSet {
        let theta = ctx.theta();
        let count = self.0.gen_range(1..=3);
        let gens = (0..count)
            .map(|_| {
                let g = self.rpoly(theta, ctx.n());
                match self.0.gen_range(0..4) {
                    0 => g.scale(rtheta::ring::k_theta(theta)),
                    1 => g.scale(RingElement::new(theta, 2, 0)),
                    _ => g,
                }
            })
            .collect();
        GeneratorSet::new(ctx.clone(), gens).unwrap()
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        items.choose(&mut self.0).expect("non-empty choice")
    }
}
