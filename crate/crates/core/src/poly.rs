//! Dense polynomials over Z2, Z4 and R_theta, and arithmetic in `R_theta[z]/(z^n - u)`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ring::{
    classify_unit, kernel_scalar, parse_element, phi_theta, RingElement, Theta, UnitClass,
};

/// Operations shared by all three coefficient rings.
pub trait Polynomial: Clone + PartialEq {
    /// `None` for the zero polynomial.
    fn degree(&self) -> Option<usize>;
    /// Reverse the trimmed coefficient sequence.
    fn reciprocal(&self) -> Self;
    fn mul_z_pow(&self, k: usize) -> Self;
    fn is_zero(&self) -> bool {
        self.degree().is_none()
    }
}

pub fn reciprocal<P: Polynomial>(f: &P) -> P {
    f.reciprocal()
}

pub fn self_reciprocal<P: Polynomial>(f: &P) -> bool {
    f.reciprocal() == *f
}

/// The word reversal of `f` read as a length-`n` word: `z^(n - 1 - deg f) f*`.
pub fn reverse_poly<P: Polynomial>(n: usize, f: &P) -> Result<P> {
    match f.degree() {
        None => Ok(f.clone()),
        Some(d) if d >= n => Err(Error::InvalidDegree { degree: d, n }),
        Some(d) => Ok(f.reciprocal().mul_z_pow(n - 1 - d)),
    }
}

/// Order in which the printer emits terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TermOrder {
    #[default]
    Ascending,
    Descending,
}

fn format_terms(coeffs: &[String], order: TermOrder) -> String {
    let mut terms = Vec::new();
    for (k, c) in coeffs.iter().enumerate() {
        if c == "0" {
            continue;
        }
        let c = if c.contains('+') {
            format!("({c})")
        } else {
            c.clone()
        };
        let term = match (k, c.as_str()) {
            (0, _) => c,
            (1, "1") => "z".to_string(),
            (_, "1") => format!("z^{k}"),
            (1, _) => format!("{c}*z"),
            _ => format!("{c}*z^{k}"),
        };
        terms.push(term);
    }
    if terms.is_empty() {
        return "0".to_string();
    }
    if order == TermOrder::Descending {
        terms.reverse();
    }
    terms.join(" + ")
}

// ---------------------------------------------------------------------------
// Z2

/// Binary polynomial, bit `i` of the packed words is the coefficient of `z^i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BinPoly {
    words: Vec<u64>,
}

impl BinPoly {
    pub fn zero() -> Self {
        BinPoly { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn monomial(k: usize) -> Self {
        let mut p = Self::zero();
        p.flip(k);
        p
    }

    /// `z^n - 1`, which over Z2 is `z^n + 1`.
    pub fn z_n_minus_1(n: usize) -> Self {
        let mut p = Self::monomial(n);
        p.flip(0);
        p
    }

    /// Coefficients lowest degree first; each is taken mod 2.
    pub fn from_coeffs(coeffs: &[u8]) -> Self {
        let mut p = Self::zero();
        for (i, &c) in coeffs.iter().enumerate() {
            if c & 1 == 1 {
                p.flip(i);
            }
        }
        p
    }

    pub fn coeffs(&self) -> Vec<u8> {
        match self.degree() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|i| self.coeff(i)).collect(),
        }
    }

    pub fn coeff(&self, i: usize) -> u8 {
        self.words
            .get(i / 64)
            .map_or(0, |w| ((w >> (i % 64)) & 1) as u8)
    }

    fn flip(&mut self, i: usize) {
        if self.words.len() <= i / 64 {
            self.words.resize(i / 64 + 1, 0);
        }
        self.words[i / 64] ^= 1 << (i % 64);
        self.trim();
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.words.len().max(other.words.len());
        let mut words: Vec<u64> = (0..len)
            .map(|i| {
                self.words.get(i).copied().unwrap_or(0) ^ other.words.get(i).copied().unwrap_or(0)
            })
            .collect();
        while words.last() == Some(&0) {
            words.pop();
        }
        BinPoly { words }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut acc = Self::zero();
        if let Some(d) = self.degree() {
            for i in 0..=d {
                if self.coeff(i) == 1 {
                    acc = acc.add(&other.mul_z_pow(i));
                }
            }
        }
        acc
    }

    pub fn divmod(&self, g: &Self) -> Result<(Self, Self)> {
        bin_divmod(self, g)
    }

    /// `Some(self / g)` when `g` divides `self` exactly.
    pub fn exact_div(&self, g: &Self) -> Option<Self> {
        match bin_divmod(self, g) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// Divisibility with the convention that only `0` is divisible by `0`.
    pub fn divides(&self, f: &Self) -> bool {
        if self.is_zero() {
            return f.is_zero();
        }
        f.exact_div(self).is_some()
    }

    /// Remainder modulo `z^n - 1` (fold exponents mod `n`).
    pub fn reduce_cyclic(&self, n: usize) -> Self {
        let mut out = Self::zero();
        for (i, c) in self.coeffs().into_iter().enumerate() {
            if c == 1 {
                out.flip(i % n);
            }
        }
        out
    }

    pub fn to_text(&self, order: TermOrder) -> String {
        let cs: Vec<String> = self.coeffs().iter().map(|c| c.to_string()).collect();
        format_terms(&cs, order)
    }

    pub fn lift(&self) -> QuadPoly {
        QuadPoly::from_coeffs(&self.coeffs())
    }
}

impl Polynomial for BinPoly {
    fn degree(&self) -> Option<usize> {
        let last = self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - last.leading_zeros() as usize)
    }

    fn reciprocal(&self) -> Self {
        let mut c = self.coeffs();
        c.reverse();
        Self::from_coeffs(&c)
    }

    fn mul_z_pow(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let (wshift, bshift) = (k / 64, k % 64);
        let mut words = vec![0u64; self.words.len() + wshift + 1];
        for (i, &w) in self.words.iter().enumerate() {
            words[i + wshift] |= w << bshift;
            if bshift > 0 {
                words[i + wshift + 1] |= w >> (64 - bshift);
            }
        }
        let mut p = BinPoly { words };
        p.trim();
        p
    }
}

impl fmt::Display for BinPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(TermOrder::Ascending))
    }
}

impl fmt::Debug for BinPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinPoly({self})")
    }
}

impl Serialize for BinPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub fn bin_divmod(f: &BinPoly, g: &BinPoly) -> Result<(BinPoly, BinPoly)> {
    let dg = g.degree().ok_or(Error::DivByZero)?;
    let mut q = BinPoly::zero();
    let mut r = f.clone();
    while let Some(dr) = r.degree() {
        if dr < dg {
            break;
        }
        q.flip(dr - dg);
        r = r.add(&g.mul_z_pow(dr - dg));
    }
    Ok((q, r))
}

pub fn bin_gcd(f: &BinPoly, g: &BinPoly) -> BinPoly {
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_zero() {
        let (_, r) = bin_divmod(&a, &b).expect("b is nonzero");
        a = b;
        b = r;
    }
    a
}

// ---------------------------------------------------------------------------
// Z4

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QuadPoly {
    coeffs: Vec<u8>,
}

impl QuadPoly {
    pub fn zero() -> Self {
        QuadPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: u8) -> Self {
        Self::from_coeffs(&[c])
    }

    pub fn monomial(k: usize) -> Self {
        Self::one().mul_z_pow(k)
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// `z^n - 1` over Z4.
    pub fn z_n_minus_1(n: usize) -> Self {
        Self::monomial(n).sub(&Self::one())
    }

    pub fn from_coeffs(coeffs: &[u8]) -> Self {
        let mut p = QuadPoly {
            coeffs: coeffs.iter().map(|c| c % 4).collect(),
        };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u8 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u8, u8) -> u8) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let cs: Vec<u8> = (0..len)
            .map(|i| f(self.coeff(i), other.coeff(i)) % 4)
            .collect();
        Self::from_coeffs(&cs)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + 4 - b)
    }

    pub fn neg(&self) -> Self {
        self.scale(3)
    }

    pub fn scale(&self, c: u8) -> Self {
        Self::from_coeffs(&self.coeffs.iter().map(|x| x * (c % 4)).collect::<Vec<_>>())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut cs = vec![0u8; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                cs[i + j] = (cs[i + j] + a * b) % 4;
            }
        }
        Self::from_coeffs(&cs)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Remainder modulo `z^n - lambda`.
    pub fn reduce(&self, n: usize, lambda: u8) -> Self {
        let mut cs = self.coeffs.clone();
        for i in (n..cs.len()).rev() {
            let c = cs[i];
            cs[i] = 0;
            cs[i - n] = (cs[i - n] + c * lambda) % 4;
        }
        Self::from_coeffs(&cs)
    }

    pub fn mod2(&self) -> BinPoly {
        BinPoly::from_coeffs(&self.coeffs)
    }

    /// The binary polynomial of the `2`-digit: `self = lo + 2 hi` with `lo, hi` in {0,1}.
    pub fn high_bits(&self) -> BinPoly {
        BinPoly::from_coeffs(&self.coeffs.iter().map(|c| c >> 1).collect::<Vec<_>>())
    }

    /// Length-`n` coefficient word; the caller guarantees `deg < n`.
    pub fn to_word(&self, n: usize) -> Vec<u8> {
        (0..n).map(|i| self.coeff(i)).collect()
    }

    pub fn to_text(&self, order: TermOrder) -> String {
        let cs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format_terms(&cs, order)
    }

    pub fn embed(&self, theta: Theta) -> RPoly {
        RPoly::from_coeffs(
            theta,
            self.coeffs
                .iter()
                .map(|&c| RingElement::from_z4(theta, c))
                .collect(),
        )
    }
}

impl Polynomial for QuadPoly {
    fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn reciprocal(&self) -> Self {
        let mut cs = self.coeffs.clone();
        cs.reverse();
        Self::from_coeffs(&cs)
    }

    fn mul_z_pow(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut cs = vec![0u8; k];
        cs.extend_from_slice(&self.coeffs);
        QuadPoly { coeffs: cs }
    }
}

impl fmt::Display for QuadPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(TermOrder::Ascending))
    }
}

impl fmt::Debug for QuadPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadPoly({self})")
    }
}

impl Serialize for QuadPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

// ---------------------------------------------------------------------------
// R_theta

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RPoly {
    theta: Theta,
    coeffs: Vec<RingElement>,
}

impl RPoly {
    pub fn zero(theta: Theta) -> Self {
        RPoly {
            theta,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: RingElement) -> Self {
        Self::from_coeffs(c.theta(), vec![c])
    }

    pub fn monomial(theta: Theta, k: usize) -> Self {
        Self::constant(RingElement::one(theta)).mul_z_pow(k)
    }

    pub fn from_coeffs(theta: Theta, coeffs: Vec<RingElement>) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.theta() == theta));
        let mut p = RPoly { theta, coeffs };
        while p.coeffs.last().is_some_and(|c| c.is_zero()) {
            p.coeffs.pop();
        }
        p
    }

    /// A word of `(a, b)` pairs read as `sum (a_i + b_i v) z^i`.
    pub fn from_pairs(theta: Theta, pairs: &[(u8, u8)]) -> Self {
        Self::from_coeffs(
            theta,
            pairs
                .iter()
                .map(|&(a, b)| RingElement::new(theta, a, b))
                .collect(),
        )
    }

    pub fn theta(&self) -> Theta {
        self.theta
    }

    pub fn coeffs(&self) -> &[RingElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RingElement {
        self.coeffs
            .get(i)
            .copied()
            .unwrap_or(RingElement::zero(self.theta))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.theta == other.theta {
            Ok(())
        } else {
            Err(Error::ThetaMismatch(self.theta, other.theta))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add(other))
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs(
            self.theta,
            (0..len).map(|i| self.coeff(i) + other.coeff(i)).collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self::from_coeffs(self.theta, self.coeffs.iter().map(|&c| -c).collect())
    }

    pub fn scale(&self, c: RingElement) -> Self {
        Self::from_coeffs(self.theta, self.coeffs.iter().map(|&x| x * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.theta);
        }
        let mut cs =
            vec![RingElement::zero(self.theta); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                cs[i + j] = cs[i + j] + a * b;
            }
        }
        Self::from_coeffs(self.theta, cs)
    }

    /// Remainder modulo `z^n - unit`.
    pub fn reduce(&self, n: usize, unit: RingElement) -> Self {
        let mut cs = self.coeffs.clone();
        for i in (n..cs.len()).rev() {
            let c = cs[i];
            cs[i] = RingElement::zero(self.theta);
            cs[i - n] = cs[i - n] + c * unit;
        }
        Self::from_coeffs(self.theta, cs)
    }

    /// Length-`n` word; the caller guarantees `deg < n`.
    pub fn to_word(&self, n: usize) -> Vec<RingElement> {
        (0..n).map(|i| self.coeff(i)).collect()
    }

    /// Coefficient-wise `phi_theta`, landing in Z4.
    pub fn phi(&self) -> QuadPoly {
        QuadPoly::from_coeffs(&self.coeffs.iter().map(phi_theta).collect::<Vec<_>>())
    }

    /// Coordinates in the `k`-basis: `self = x0 + k x1` coefficient-wise.
    pub fn k_parts(&self) -> (QuadPoly, QuadPoly) {
        let (x0, x1): (Vec<u8>, Vec<u8>) = self.coeffs.iter().map(|c| c.to_k_basis()).unzip();
        (QuadPoly::from_coeffs(&x0), QuadPoly::from_coeffs(&x1))
    }

    pub fn from_k_parts(theta: Theta, x0: &QuadPoly, x1: &QuadPoly) -> Self {
        let len = x0.coeffs().len().max(x1.coeffs().len());
        Self::from_coeffs(
            theta,
            (0..len)
                .map(|i| RingElement::from_k_basis(theta, x0.coeff(i), x1.coeff(i)))
                .collect(),
        )
    }

    pub fn to_text(&self, order: TermOrder) -> String {
        let cs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format_terms(&cs, order)
    }
}

impl Polynomial for RPoly {
    fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn reciprocal(&self) -> Self {
        let mut cs = self.coeffs.clone();
        cs.reverse();
        Self::from_coeffs(self.theta, cs)
    }

    fn mul_z_pow(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut cs = vec![RingElement::zero(self.theta); k];
        cs.extend_from_slice(&self.coeffs);
        RPoly {
            theta: self.theta,
            coeffs: cs,
        }
    }
}

impl fmt::Display for RPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(TermOrder::Ascending))
    }
}

impl fmt::Debug for RPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RPoly[{}]({self})", self.theta)
    }
}

impl Serialize for RPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

// ---------------------------------------------------------------------------
// quotient ring

/// Fixes the ambient ring `R_theta[z]/(z^n - unit)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuotientContext {
    theta: Theta,
    n: usize,
    unit: RingElement,
    unit_class: UnitClass,
    n_odd_part: usize,
    s: u32,
}

impl QuotientContext {
    pub fn new(theta: Theta, unit: RingElement, n: usize) -> Result<Self> {
        if unit.theta() != theta {
            return Err(Error::ThetaMismatch(theta, unit.theta()));
        }
        if n == 0 {
            return Err(Error::ZeroLength);
        }
        let unit_class = classify_unit(&unit);
        if unit_class == UnitClass::NotAUnit {
            return Err(Error::NotAUnit(unit.to_string()));
        }
        let s = n.trailing_zeros();
        Ok(QuotientContext {
            theta,
            n,
            unit,
            unit_class,
            n_odd_part: n >> s,
            s,
        })
    }

    pub fn theta(&self) -> Theta {
        self.theta
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn unit(&self) -> RingElement {
        self.unit
    }

    pub fn unit_class(&self) -> UnitClass {
        self.unit_class
    }

    pub fn n_odd_part(&self) -> usize {
        self.n_odd_part
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// `phi_theta(unit)`: the residue code lives in `Z4[z]/(z^n - res_lambda)`.
    pub fn res_lambda(&self) -> u8 {
        phi_theta(&self.unit)
    }

    /// The torsion code lives in `Z4[z]/(z^n - tor_lambda)`.
    pub fn tor_lambda(&self) -> u8 {
        kernel_scalar(&self.unit)
    }

    pub fn k(&self) -> RingElement {
        crate::ring::k_theta(self.theta)
    }

    pub fn element(&self, a: u8, b: u8) -> RingElement {
        RingElement::new(self.theta, a, b)
    }

    pub fn reduce(&self, f: &RPoly) -> RPoly {
        f.reduce(self.n, self.unit)
    }

    fn check_degree(&self, f: &RPoly) -> Result<()> {
        if f.theta() != self.theta {
            return Err(Error::ThetaMismatch(self.theta, f.theta()));
        }
        match f.degree() {
            Some(d) if d >= self.n => Err(Error::InvalidDegree {
                degree: d,
                n: self.n,
            }),
            _ => Ok(()),
        }
    }

    pub fn quotient_mul(&self, f: &RPoly, g: &RPoly) -> Result<RPoly> {
        self.check_degree(f)?;
        self.check_degree(g)?;
        Ok(self.reduce(&f.mul(g)))
    }

    pub fn constacyclic_shift(&self, word: &[RingElement]) -> Result<Vec<RingElement>> {
        if word.len() != self.n {
            return Err(Error::InvalidLength {
                expected: self.n,
                got: word.len(),
            });
        }
        let mut out = Vec::with_capacity(self.n);
        out.push(self.unit * word[self.n - 1]);
        out.extend_from_slice(&word[..self.n - 1]);
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// parsing

fn split_terms(text: &str) -> Result<Vec<(bool, String)>> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse {
            token: text.to_string(),
            reason: "empty polynomial".into(),
        });
    }
    let mut terms = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut negative = false;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse {
                token: ")".into(),
                reason: "unbalanced parenthesis".into(),
            });
        }
        if depth == 0 && (ch == '+' || ch == '-') {
            if cur.is_empty() {
                if !terms.is_empty() || ch == '+' {
                    return Err(Error::Parse {
                        token: ch.to_string(),
                        reason: "missing term".into(),
                    });
                }
            } else {
                terms.push((negative, std::mem::take(&mut cur)));
            }
            negative = ch == '-';
            continue;
        }
        cur.push(ch);
    }
    if depth != 0 {
        return Err(Error::Parse {
            token: "(".into(),
            reason: "unbalanced parenthesis".into(),
        });
    }
    if cur.is_empty() {
        return Err(Error::Parse {
            token: s,
            reason: "dangling operator".into(),
        });
    }
    terms.push((negative, cur));
    Ok(terms)
}

fn parse_term(theta: Theta, term: &str) -> Result<(RingElement, usize)> {
    let bad = |reason: &str| Error::Parse {
        token: term.to_string(),
        reason: reason.to_string(),
    };
    let (coef, var) = match term.find('z') {
        None => (term, None),
        Some(i) => (
            term[..i].strip_suffix('*').unwrap_or(&term[..i]),
            Some(&term[i + 1..]),
        ),
    };
    let exp = match var {
        None => 0,
        Some("") => 1,
        Some(rest) => rest
            .strip_prefix('^')
            .and_then(|k| k.parse::<usize>().ok())
            .ok_or_else(|| bad("expected z^K with K a nonnegative integer"))?,
    };
    let c = if coef.is_empty() {
        if var.is_none() {
            return Err(bad("empty term"));
        }
        RingElement::one(theta)
    } else {
        let inner = coef
            .strip_prefix('(')
            .and_then(|c| c.strip_suffix(')'))
            .unwrap_or(coef);
        if inner.contains(['(', ')']) {
            return Err(bad("malformed coefficient"));
        }
        parse_element(theta, inner).map_err(|e| match e {
            Error::Parse { reason, .. } => Error::Parse {
                token: term.to_string(),
                reason,
            },
            other => other,
        })?
    };
    Ok((c, exp))
}

/// Parses the polynomial grammar (`(1+v)*z^2 + 2*z + 3`, `z-1`, `v*z+v`).
pub fn parse_rpoly(theta: Theta, text: &str) -> Result<RPoly> {
    let mut acc = RPoly::zero(theta);
    for (negative, term) in split_terms(text)? {
        let (c, k) = parse_term(theta, &term)?;
        let c = if negative { -c } else { c };
        acc = acc.add(&RPoly::constant(c).mul_z_pow(k));
    }
    Ok(acc)
}

pub fn parse_quad(text: &str) -> Result<QuadPoly> {
    let p = parse_rpoly(Theta::Zero, text)?;
    if let Some(c) = p.coeffs().iter().find(|c| c.b() != 0) {
        return Err(Error::Parse {
            token: c.to_string(),
            reason: "Z4 polynomial cannot involve v".into(),
        });
    }
    Ok(p.phi())
}

pub fn parse_bin(text: &str) -> Result<BinPoly> {
    Ok(parse_quad(text)?.mod2())
}
