//! Cyclic (`z^n = 1`) and negacyclic (`z^n = -1`) codes over Z4.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{BinPoly, Polynomial, QuadPoly};
use crate::z4module::Z4Module;

/// Column priority for length-`n` coefficient words: highest degree first.
pub fn descending_order(n: usize) -> Vec<usize> {
    (0..n).rev().collect()
}

/// An ideal of `Z4[z]/(z^n - lambda)`, `lambda` in {1, 3}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Z4Code {
    n: usize,
    lambda: u8,
    module: Z4Module,
}

impl Z4Code {
    pub fn from_generators(n: usize, lambda: u8, gens: &[QuadPoly]) -> Self {
        let mut words = Vec::with_capacity(gens.len() * n);
        for g in gens {
            let mut w = g.reduce(n, lambda).to_word(n);
            for _ in 0..n {
                words.push(w.clone());
                w.rotate_right(1);
                w[0] = (w[0] * lambda) % 4;
            }
        }
        Z4Code {
            n,
            lambda,
            module: Z4Module::span(n, &descending_order(n), words),
        }
    }

    /// Wraps a module already known to be shift invariant.
    pub fn from_module(n: usize, lambda: u8, module: Z4Module) -> Self {
        debug_assert_eq!(module.width(), n);
        let module = if module.order() == descending_order(n).as_slice() {
            module
        } else {
            module.with_order(&descending_order(n))
        };
        Z4Code { n, lambda, module }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> u8 {
        self.lambda
    }

    pub fn module(&self) -> &Z4Module {
        &self.module
    }

    pub fn contains(&self, f: &QuadPoly) -> bool {
        self.module
            .contains(&f.reduce(self.n, self.lambda).to_word(self.n))
    }

    /// Canonical representative of `f` modulo the code.
    pub fn normal_form(&self, f: &QuadPoly) -> QuadPoly {
        QuadPoly::from_coeffs(
            &self
                .module
                .reduce(&f.reduce(self.n, self.lambda).to_word(self.n)),
        )
    }

    pub fn log2_size(&self) -> usize {
        self.module.log2_size()
    }

    /// Closed under word reversal.
    pub fn is_reversible(&self) -> bool {
        self.module.rows().all(|(_, r)| {
            let rev: Vec<u8> = r.iter().rev().copied().collect();
            self.module.contains(&rev)
        })
    }

    /// `(g, p, a)` read off the Howell basis: `g` from the lowest unit-led row,
    /// `a` from the lowest row of the part inside `2 Z4^n`.
    pub fn cyclic_form(&self) -> Z4CyclicForm {
        let n = self.n;
        let xn1 = BinPoly::z_n_minus_1(n);
        let tor = self
            .module
            .kernel(n, |r| r.iter().map(|x| (2 * x) % 4).collect());
        let a = tor
            .rows()
            .min_by_key(|(c, _)| *c)
            .map(|(_, r)| QuadPoly::from_coeffs(r).high_bits())
            .unwrap_or_else(|| xn1.clone());
        let (g, p) = match self
            .module
            .rows()
            .filter(|(c, r)| r[*c] == 1)
            .min_by_key(|(c, _)| *c)
        {
            None => (xn1, BinPoly::zero()),
            Some((_, r)) => {
                let row = QuadPoly::from_coeffs(r);
                let g = row.mod2();
                let twice_h = row.sub(&lift_divisor(&g, n));
                let (_, p) = twice_h.high_bits().divmod(&a).expect("a is nonzero");
                (g, p)
            }
        };
        Z4CyclicForm { n, g, p, a }
    }

    /// The exponent `t` with `self = <(z^m - 1)^t>`, `m` the odd part of `n`.
    pub fn chain_exponent(&self) -> Option<usize> {
        let (m, s) = odd_decomposition(self.n);
        (0..=(2usize << s)).find(|&t| {
            let other = Z4Code::from_generators(
                self.n,
                self.lambda,
                &[chain_power(m, self.n, self.lambda, t)],
            );
            other.module == self.module
        })
    }
}

/// `n = m 2^s` with `m` odd.
pub fn odd_decomposition(n: usize) -> (usize, u32) {
    let s = n.trailing_zeros();
    (n >> s, s)
}

/// Lift of a binary `g` to Z4 used as the `g` part of `g + 2p`.
///
/// For odd `n` this is the Hensel lift, the unique monic Z4 divisor of
/// `z^n - 1` reducing to `g`, computed from `G(z^2) = (-1)^d g(z) g(-z)`.
/// For even `n` that lift is not unique and the 0/1 lift is used.
pub fn lift_divisor(g: &BinPoly, n: usize) -> QuadPoly {
    if n.is_multiple_of(2) {
        return g.lift();
    }
    let Some(d) = g.degree() else {
        return QuadPoly::zero();
    };
    let plus = g.lift();
    let minus = QuadPoly::from_coeffs(
        &plus
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 1 { 4 - c } else { c })
            .collect::<Vec<_>>(),
    );
    let prod = plus.mul(&minus).scale(if d % 2 == 1 { 3 } else { 1 });
    QuadPoly::from_coeffs(&prod.coeffs().iter().step_by(2).copied().collect::<Vec<_>>())
}

/// Lift of a divisor of `z^n - lambda` mod 2 to a divisor of `z^n - lambda` over Z4. For odd
/// `n` the negacyclic case is the cyclic one after `z -> -z`.
pub fn lift_divisor_for(g: &BinPoly, n: usize, lambda: u8) -> QuadPoly {
    let lifted = lift_divisor(g, n);
    if lambda == 1 || n.is_multiple_of(2) {
        return lifted;
    }
    let d = g.degree().unwrap_or(0);
    let flipped: Vec<u8> = lifted
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, &c)| if (i + d) % 2 == 1 { (4 - c) % 4 } else { c })
        .collect();
    QuadPoly::from_coeffs(&flipped)
}

/// `(z^m - 1)^t` reduced modulo `z^n - lambda`.
pub fn chain_power(m: usize, n: usize, lambda: u8, t: usize) -> QuadPoly {
    let base = QuadPoly::z_n_minus_1(m).reduce(n, lambda);
    (0..t).fold(QuadPoly::one(), |acc, _| acc.mul(&base).reduce(n, lambda))
}

/// `<g + 2p, 2a>` in `Z4[z]/(z^n - 1)`; `z^n - 1` stands for an absent generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Z4CyclicForm {
    pub n: usize,
    pub g: BinPoly,
    pub p: BinPoly,
    pub a: BinPoly,
}

impl Z4CyclicForm {
    pub fn generators(&self) -> Vec<QuadPoly> {
        let xn1 = BinPoly::z_n_minus_1(self.n);
        let mut out = Vec::new();
        if self.g != xn1 {
            out.push(lift_divisor(&self.g, self.n).add(&self.p.lift().scale(2)));
        }
        if self.a != xn1 {
            out.push(self.a.lift().scale(2));
        }
        out
    }

    /// The divisibility and degree constraints of the cyclic structure theorem.
    pub fn satisfies_invariants(&self) -> bool {
        let xn1 = BinPoly::z_n_minus_1(self.n);
        if !(self.a.divides(&self.g) && self.g.divides(&xn1)) {
            return false;
        }
        if self.p.is_zero() {
            return true;
        }
        let Some(cofactor) = xn1.exact_div(&self.g) else {
            return false;
        };
        self.a.divides(&self.p.mul(&cofactor)) && self.p.degree() < self.a.degree()
    }
}

pub fn z4_cyclic_canonicalize(n: usize, gens: &[QuadPoly]) -> Z4CyclicForm {
    Z4Code::from_generators(n, 1, gens).cyclic_form()
}

/// `<(z^m - 1)^t>` in `Z4[z]/(z^N + 1)`, `N = m 2^s`, `m` odd.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Z4NegacyclicForm {
    pub big_n: usize,
    pub n_odd: usize,
    pub s: u32,
    pub t: usize,
}

impl Z4NegacyclicForm {
    pub fn is_zero_code(&self) -> bool {
        self.t == 2usize << self.s
    }

    pub fn generator(&self) -> QuadPoly {
        chain_power(self.n_odd, self.big_n, 3, self.t)
    }
}

/// Identifies `<gens>` in `Z4[z]/(z^N + 1)` with a chain ideal `<(z^m - 1)^t>`.
///
/// Fails with `NotInChain` when the ideal is not of that shape, which happens
/// as soon as `z^m - 1` is reducible mod 2 (`m > 1`).
pub fn z4_negacyclic_identify(big_n: usize, gens: &[QuadPoly]) -> Result<Z4NegacyclicForm> {
    if big_n == 0 {
        return Err(Error::ZeroLength);
    }
    let code = Z4Code::from_generators(big_n, 3, gens);
    let (n_odd, s) = odd_decomposition(big_n);
    let t = code.chain_exponent().ok_or(Error::NotInChain)?;
    Ok(Z4NegacyclicForm { big_n, n_odd, s, t })
}
