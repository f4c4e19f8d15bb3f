//! Brute-force ground truth: ideals as explicit element sets.
//!
//! A word of length `n` is packed into a `u64`, four bits per coefficient
//! (`a` in the low pair, `b` in the high pair), so the packed value is also an
//! index into a membership bitset of `16^n` bits.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::canonical::{Code, GeneratorSet};
use crate::error::{Error, Result};
use crate::poly::{QuotientContext, RPoly};
use crate::ring::{enumerate_ring, k_theta, phi_theta, units, RingElement, Theta};

/// Default bound on the ambient word count `16^n`.
pub const DEFAULT_MAX_WORDS: u64 = 1 << 24;

const LOW_BITS: u64 = 0x5555_5555_5555_5555;

fn add_words(x: u64, y: u64) -> u64 {
    (x ^ y) ^ ((x & y & LOW_BITS) << 1)
}

/// Multiplication table of one ring, indexed by packed nibbles.
#[derive(Clone)]
struct Tables {
    mul: [[u8; 16]; 16],
}

impl Tables {
    fn new(theta: Theta) -> Self {
        let mut mul = [[0u8; 16]; 16];
        for x in enumerate_ring(theta) {
            for y in enumerate_ring(theta) {
                mul[x.to_nibble() as usize][y.to_nibble() as usize] = (x * y).to_nibble();
            }
        }
        Tables { mul }
    }
}

/// Word arithmetic for one quotient ring.
#[derive(Clone)]
pub struct WordOps {
    ctx: QuotientContext,
    tables: Tables,
}

impl WordOps {
    pub fn new(ctx: &QuotientContext) -> Self {
        WordOps {
            ctx: ctx.clone(),
            tables: Tables::new(ctx.theta()),
        }
    }

    fn n(&self) -> usize {
        self.ctx.n()
    }

    pub fn pack(&self, f: &RPoly) -> u64 {
        let f = self.ctx.reduce(f);
        (0..self.n()).fold(0, |acc, i| acc | (f.coeff(i).to_nibble() as u64) << (4 * i))
    }

    pub fn unpack(&self, w: u64) -> RPoly {
        let theta = self.ctx.theta();
        RPoly::from_coeffs(
            theta,
            (0..self.n())
                .map(|i| RingElement::from_nibble(theta, ((w >> (4 * i)) & 15) as u8))
                .collect(),
        )
    }

    pub fn scale(&self, c: RingElement, w: u64) -> u64 {
        let row = &self.tables.mul[c.to_nibble() as usize];
        (0..self.n()).fold(0, |acc, i| {
            acc | (row[((w >> (4 * i)) & 15) as usize] as u64) << (4 * i)
        })
    }

    /// Multiplication by `z`.
    pub fn shift(&self, w: u64) -> u64 {
        let n = self.n();
        let top = ((w >> (4 * (n - 1))) & 15) as usize;
        let mask = if n >= 16 {
            u64::MAX
        } else {
            (1u64 << (4 * n)) - 1
        };
        let body = (w << 4) & mask;
        body | self.tables.mul[self.ctx.unit().to_nibble() as usize][top] as u64
    }

    pub fn reverse(&self, w: u64) -> u64 {
        let n = self.n();
        (0..n).fold(0, |acc, i| acc | ((w >> (4 * i)) & 15) << (4 * (n - 1 - i)))
    }
}

fn check_size(n: usize, max_words: u64) -> Result<()> {
    let size = 1u64
        .checked_shl(4 * n as u32)
        .filter(|_| n < 16)
        .unwrap_or(u64::MAX);
    if size > max_words {
        return Err(Error::SizeLimitExceeded {
            what: "oracle word space 16^n",
            size,
            limit: max_words,
        });
    }
    Ok(())
}

/// A code given by its elements.
#[derive(Clone)]
pub struct CodeSet {
    ctx: QuotientContext,
    ops: WordOps,
    bits: Vec<u64>,
    elements: Vec<u64>,
}

impl std::fmt::Debug for CodeSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "CodeSet(n={}, |C|={})",
            self.ctx.n(),
            self.elements.len()
        )
    }
}

impl PartialEq for CodeSet {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.bits == other.bits
    }
}

impl CodeSet {
    fn empty(ctx: &QuotientContext) -> Self {
        let words = 1usize << (4 * ctx.n());
        let mut s = CodeSet {
            ctx: ctx.clone(),
            ops: WordOps::new(ctx),
            bits: vec![0; words.div_ceil(64)],
            elements: Vec::new(),
        };
        s.insert(0);
        s
    }

    fn insert(&mut self, w: u64) -> bool {
        let (i, b) = ((w / 64) as usize, 1u64 << (w % 64));
        if self.bits[i] & b != 0 {
            return false;
        }
        self.bits[i] |= b;
        self.elements.push(w);
        true
    }

    pub fn ctx(&self) -> &QuotientContext {
        &self.ctx
    }

    pub fn ops(&self) -> &WordOps {
        &self.ops
    }

    pub fn contains_word(&self, w: u64) -> bool {
        self.bits[(w / 64) as usize] & (1 << (w % 64)) != 0
    }

    pub fn contains(&self, f: &RPoly) -> bool {
        self.contains_word(self.ops.pack(f))
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Packed elements in ascending order.
    pub fn words(&self) -> Vec<u64> {
        let mut w = self.elements.clone();
        w.sort_unstable();
        w
    }

    pub fn elements(&self) -> Vec<RPoly> {
        self.words()
            .into_iter()
            .map(|w| self.ops.unpack(w))
            .collect()
    }

    /// Adds the additive group generated by `g` (assumed outside the set).
    fn extend_by(&mut self, g: u64) {
        let old = self.elements.len();
        let mut gk = 0;
        for _ in 1..4 {
            gk = add_words(gk, g);
            for i in 0..old {
                let w = add_words(self.elements[i], gk);
                self.insert(w);
            }
        }
    }

    /// Least superset closed under addition, `v`-multiplication and, if
    /// `ideal`, multiplication by `z`.
    fn close(&mut self, seeds: impl IntoIterator<Item = u64>, ideal: bool) {
        let nu = RingElement::nu(self.ctx.theta());
        let mut work: Vec<u64> = seeds.into_iter().collect();
        while let Some(g) = work.pop() {
            if self.contains_word(g) {
                continue;
            }
            self.extend_by(g);
            work.push(self.ops.scale(nu, g));
            if ideal {
                work.push(self.ops.shift(g));
            }
        }
    }

    fn is_ideal(&self) -> bool {
        let nu = RingElement::nu(self.ctx.theta());
        self.elements.iter().all(|&w| {
            self.contains_word(self.ops.shift(w)) && self.contains_word(self.ops.scale(nu, w))
        })
    }
}

pub fn enumerate_ideal(gs: &GeneratorSet) -> Result<CodeSet> {
    enumerate_ideal_bounded(gs, DEFAULT_MAX_WORDS)
}

pub fn enumerate_ideal_bounded(gs: &GeneratorSet, max_words: u64) -> Result<CodeSet> {
    let ctx = gs.ctx();
    check_size(ctx.n(), max_words)?;
    let mut s = CodeSet::empty(ctx);
    let seeds: Vec<u64> = gs.gens().iter().map(|g| s.ops.pack(g)).collect();
    s.close(seeds, true);
    assert!(s.is_ideal(), "closure is not shift/scalar invariant");
    Ok(s)
}

/// The `R_theta`-submodule (not ideal) spanned by `words`.
pub fn module_span(ctx: &QuotientContext, words: &[RPoly]) -> Result<CodeSet> {
    check_size(ctx.n(), DEFAULT_MAX_WORDS)?;
    let mut s = CodeSet::empty(ctx);
    let seeds: Vec<u64> = words.iter().map(|g| s.ops.pack(g)).collect();
    s.close(seeds, false);
    Ok(s)
}

/// Z4 words packed two bits per coefficient.
pub type Z4WordSet = Vec<u64>;

/// `Res = {phi(c)}` and `Tor = {a : k a in C}`, both sorted.
pub fn oracle_res_tor(cs: &CodeSet) -> (Z4WordSet, Z4WordSet) {
    let n = cs.ctx.n();
    let theta = cs.ctx.theta();
    let mut res: Vec<u64> = cs
        .elements
        .iter()
        .map(|&w| {
            (0..n).fold(0, |acc, i| {
                acc | (phi_theta(&RingElement::from_nibble(
                    theta,
                    ((w >> (4 * i)) & 15) as u8,
                )) as u64)
                    << (2 * i)
            })
        })
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    res.sort_unstable();
    let k = k_theta(theta);
    let tor: Vec<u64> = (0..1u64 << (2 * n))
        .filter(|&a| {
            let word = (0..n).fold(0, |acc, i| {
                acc | ((RingElement::from_z4(theta, ((a >> (2 * i)) & 3) as u8) * k).to_nibble()
                    as u64)
                    << (4 * i)
            });
            cs.contains_word(word)
        })
        .collect();
    (res, tor)
}

pub fn oracle_reversible(cs: &CodeSet) -> bool {
    cs.elements
        .iter()
        .all(|&w| cs.contains_word(cs.ops.reverse(w)))
}

pub fn oracle_equal(a: &CodeSet, b: &CodeSet) -> Result<bool> {
    if a.ctx != b.ctx {
        return Err(Error::CtxMismatch);
    }
    Ok(a.bits == b.bits)
}

/// Minimal number of `R_theta`-module generators, from `|C / mC|` at each
/// maximal ideal `m` of `R_theta`.
pub fn oracle_rank(cs: &CodeSet) -> usize {
    let theta = cs.ctx.theta();
    let el = |a, b| RingElement::new(theta, a, b);
    let maximal: Vec<[RingElement; 2]> = match theta {
        Theta::Zero | Theta::One => vec![[el(2, 0), k_theta(theta)]],
        Theta::Nu => vec![[el(2, 0), el(0, 1)], [el(2, 0), el(1, 3)]],
    };
    maximal
        .into_iter()
        .map(|m| {
            let mut mc = CodeSet::empty(&cs.ctx);
            let seeds: Vec<u64> = cs
                .elements
                .iter()
                .flat_map(|&w| m.map(|x| cs.ops.scale(x, w)))
                .collect();
            mc.close(seeds, false);
            (cs.len() / mc.len()).trailing_zeros() as usize
        })
        .max()
        .unwrap_or(0)
}

/// Every distinct ideal of `R_theta[z]/(z^n - u)`, as sums of principal ideals.
pub fn enumerate_all_ideals(ctx: &QuotientContext) -> Result<Vec<CodeSet>> {
    if ctx.n() > 3 {
        return Err(Error::SizeLimitExceeded {
            what: "exhaustive ideal enumeration length",
            size: ctx.n() as u64,
            limit: 3,
        });
    }
    let words = 1u64 << (4 * ctx.n());
    let principal = |w: u64| {
        let mut s = CodeSet::empty(ctx);
        s.close([w], true);
        s
    };
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut generators: Vec<u64> = Vec::new();
    let mut ideals: Vec<CodeSet> = Vec::new();
    let all: Vec<(u64, CodeSet)> = (0..words)
        .into_par_iter()
        .map(|w| (w, principal(w)))
        .collect();
    for (w, s) in all {
        if seen.insert(s.words()) {
            generators.push(w);
            ideals.push(s);
        }
    }
    let mut frontier: Vec<usize> = (0..ideals.len()).collect();
    while !frontier.is_empty() {
        let sums: Vec<CodeSet> = frontier
            .par_iter()
            .flat_map_iter(|&i| {
                let base = &ideals[i];
                generators
                    .iter()
                    .filter(|&&g| !base.contains_word(g))
                    .map(|&g| {
                        let mut s = base.clone();
                        s.close([g], true);
                        s
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        frontier.clear();
        for s in sums {
            if seen.insert(s.words()) {
                frontier.push(ideals.len());
                ideals.push(s);
            }
        }
    }
    ideals.sort_by_key(|s| (s.len(), s.words()));
    Ok(ideals)
}

/// Every distinct ideal, found by brute force over principal generators but stored and
/// deduplicated by Howell form instead of element sets. Reaches lengths where the
/// element-set enumeration is out of memory or time; `max_words` bounds `16^n`.
pub fn discover_ideals(ctx: &QuotientContext, max_words: u64) -> Result<Vec<Code>> {
    check_size(ctx.n(), max_words)?;
    let ops = WordOps::new(ctx);
    let scalars: Vec<RingElement> = units(ctx.theta());
    let n = ctx.n();
    // One representative per orbit under multiplication by z and by scalar units.
    let is_representative = |w: u64| {
        let mut v = w;
        for _ in 0..n {
            if scalars.iter().any(|&c| ops.scale(c, v) < w) {
                return false;
            }
            v = ops.shift(v);
        }
        true
    };
    let mut principal: Vec<Code> = (0..1u64 << (4 * n))
        .into_par_iter()
        .filter(|&w| is_representative(w))
        .map(|w| Code::from_polys(ctx.clone(), &[ops.unpack(w)]))
        .collect();
    let mut seen: HashSet<Code> = HashSet::new();
    principal.retain(|c| seen.insert(c.clone()));

    let mut ideals: Vec<Code> = principal.clone();
    let mut frontier: Vec<usize> = (0..ideals.len()).collect();
    while !frontier.is_empty() {
        let sums: Vec<Code> = frontier
            .par_iter()
            .flat_map_iter(|&i| {
                let base = &ideals[i];
                principal
                    .iter()
                    .filter(|p| !base.contains_code(p))
                    .map(|p| base.join(p))
                    .collect::<Vec<_>>()
            })
            .collect();
        frontier.clear();
        for s in sums {
            if seen.insert(s.clone()) {
                frontier.push(ideals.len());
                ideals.push(s);
            }
        }
    }
    ideals.sort_by_cached_key(|c| {
        (
            c.log2_size(),
            c.module()
                .rows()
                .map(|(_, r)| r.to_vec())
                .collect::<Vec<_>>(),
        )
    });
    Ok(ideals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_rpoly;

    fn ctx(theta: Theta, a: u8, b: u8, n: usize) -> QuotientContext {
        QuotientContext::new(theta, RingElement::new(theta, a, b), n).unwrap()
    }

    fn ideal(c: &QuotientContext, gens: &[&str]) -> CodeSet {
        enumerate_ideal(&GeneratorSet::parse(c.clone(), gens).unwrap()).unwrap()
    }

    #[test]
    fn word_ops_agree_with_polynomials() {
        let c = ctx(Theta::One, 0, 3, 3);
        let ops = WordOps::new(&c);
        let f = parse_rpoly(Theta::One, "(1+v) + 2*z + (3+2v)*z^2").unwrap();
        let w = ops.pack(&f);
        assert_eq!(ops.unpack(w), f);
        let z = parse_rpoly(Theta::One, "z").unwrap();
        assert_eq!(ops.unpack(ops.shift(w)), c.quotient_mul(&f, &z).unwrap());
        let g = parse_rpoly(Theta::One, "v + z^2").unwrap();
        assert_eq!(ops.unpack(add_words(w, ops.pack(&g))), f.add(&g));
        let e = RingElement::new(Theta::One, 3, 2);
        assert_eq!(ops.unpack(ops.scale(e, w)), f.scale(e));
        let c1 = ctx(Theta::Zero, 3, 0, 1);
        let ops1 = WordOps::new(&c1);
        assert_eq!(ops1.shift(1), 3);
    }

    #[test]
    fn trivial_ideals() {
        let c = ctx(Theta::Zero, 1, 1, 2);
        assert_eq!(ideal(&c, &[]).len(), 1);
        assert_eq!(ideal(&c, &["1"]).len(), 256);
        assert!(oracle_reversible(&ideal(&c, &[])));
        assert!(!oracle_equal(&ideal(&c, &[]), &ideal(&c, &["1"])).unwrap());
        let other = ctx(Theta::Zero, 3, 0, 2);
        assert_eq!(
            oracle_equal(&ideal(&c, &[]), &ideal(&other, &[])),
            Err(Error::CtxMismatch)
        );
    }

    #[test]
    fn torsion_of_zero_code_for_square_zero_k() {
        let c = ctx(Theta::Zero, 1, 0, 2);
        let (res, tor) = oracle_res_tor(&ideal(&c, &[]));
        assert_eq!(res, vec![0]);
        // v * 2 = 2v is nonzero, so v a = 0 forces a = 0
        assert_eq!(tor, vec![0]);
    }

    #[test]
    fn size_limit() {
        let c = ctx(Theta::Zero, 1, 0, 7);
        let gs = GeneratorSet::parse(c, &["1"]).unwrap();
        assert!(matches!(
            enumerate_ideal(&gs),
            Err(Error::SizeLimitExceeded { .. })
        ));
    }

    #[test]
    fn ideal_lattice_of_the_base_ring() {
        for theta in Theta::ALL {
            let c = ctx(theta, 1, 0, 1);
            let all = enumerate_all_ideals(&c).unwrap();
            assert_eq!(all.len(), if theta == Theta::Nu { 9 } else { 7 });
            assert_eq!(all[0].len(), 1);
            assert_eq!(all.last().unwrap().len(), 16);
        }
    }

    #[test]
    fn rank_of_small_ideals() {
        let c = ctx(Theta::Zero, 1, 0, 1);
        assert_eq!(oracle_rank(&ideal(&c, &["2", "v"])), 2);
        assert_eq!(oracle_rank(&ideal(&c, &["1"])), 1);
        assert_eq!(oracle_rank(&ideal(&c, &[])), 0);
    }
}
