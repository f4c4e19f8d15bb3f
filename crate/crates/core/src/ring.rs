//! The sixteen-element rings `Z4 + vZ4` with `v^2` in `{0, 1, v}`.
//!
//! Elements are stored as `a + b v` with `a, b` reduced mod 4. Every element
//! also has a unique expansion `x0 + k x1` over the distinguished zero
//! divisor `k` (`v` for `v^2 in {0, v}`, `1 + v` for `v^2 = 1`); the
//! first coordinate of that expansion is the reduction map `phi`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// The value of `v^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theta {
    Zero,
    One,
    Nu,
}

impl Theta {
    pub const ALL: [Theta; 3] = [Theta::Zero, Theta::One, Theta::Nu];

    /// Builds `Theta` from `v^2 = a + b v`; only `0`, `1` and `v` are accepted.
    pub fn from_nu_square(a: u8, b: u8) -> Result<Theta> {
        match (a % 4, b % 4) {
            (0, 0) => Ok(Theta::Zero),
            (1, 0) => Ok(Theta::One),
            (0, 1) => Ok(Theta::Nu),
            (a, b) => Err(Error::InvalidTheta(format!(
                "{}",
                RingElement::new(Theta::Zero, a, b)
            ))),
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Theta::Zero => "0",
            Theta::One => "1",
            Theta::Nu => "v",
        }
    }
}

impl fmt::Display for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Theta {
    type Err = Error;
    fn from_str(s: &str) -> Result<Theta> {
        match s.trim() {
            "0" => Ok(Theta::Zero),
            "1" => Ok(Theta::One),
            "v" | "nu" => Ok(Theta::Nu),
            other => Err(Error::InvalidTheta(other.to_string())),
        }
    }
}

impl Serialize for Theta {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.token())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement {
    a: u8,
    b: u8,
    theta: Theta,
}

impl RingElement {
    pub fn new(theta: Theta, a: u8, b: u8) -> Self {
        RingElement {
            a: a % 4,
            b: b % 4,
            theta,
        }
    }

    pub fn zero(theta: Theta) -> Self {
        Self::new(theta, 0, 0)
    }

    pub fn one(theta: Theta) -> Self {
        Self::new(theta, 1, 0)
    }

    pub fn nu(theta: Theta) -> Self {
        Self::new(theta, 0, 1)
    }

    /// The integer `c` mod 4 embedded as a constant.
    pub fn from_z4(theta: Theta, c: u8) -> Self {
        Self::new(theta, c, 0)
    }

    pub fn a(&self) -> u8 {
        self.a
    }

    pub fn b(&self) -> u8 {
        self.b
    }

    pub fn theta(&self) -> Theta {
        self.theta
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Packs into four bits: `a` in the low pair, `b` in the high pair.
    pub fn to_nibble(&self) -> u8 {
        self.a | (self.b << 2)
    }

    pub fn from_nibble(theta: Theta, nib: u8) -> Self {
        Self::new(theta, nib & 3, (nib >> 2) & 3)
    }

    /// Coordinates `(x0, x1)` with `self = x0 + k x1`.
    pub fn to_k_basis(&self) -> (u8, u8) {
        (phi_theta(self), self.b)
    }

    pub fn from_k_basis(theta: Theta, x0: u8, x1: u8) -> Self {
        match theta {
            // (x0 - x1) + x1 v ... with k = 1 + v: x0 + x1 + x1 v
            Theta::One => Self::new(theta, (x0 + x1) % 4, x1),
            _ => Self::new(theta, x0, x1),
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        enumerate_ring(self.theta)
            .into_iter()
            .find(|y| (*self * *y) == Self::one(self.theta))
    }

    pub fn is_unit(&self) -> bool {
        self.inverse().is_some()
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.theta == other.theta {
            Ok(())
        } else {
            Err(Error::ThetaMismatch(self.theta, other.theta))
        }
    }

    fn raw_mul(&self, o: &Self) -> Self {
        let (a, b, c, d) = (self.a as u32, self.b as u32, o.a as u32, o.b as u32);
        let (x, y) = match self.theta {
            Theta::Zero => (a * c, a * d + b * c),
            Theta::One => (a * c + b * d, a * d + b * c),
            Theta::Nu => (a * c, a * d + b * c + b * d),
        };
        Self::new(self.theta, (x % 4) as u8, (y % 4) as u8)
    }
}

impl Add for RingElement {
    type Output = RingElement;
    fn add(self, o: Self) -> Self {
        debug_assert_eq!(self.theta, o.theta);
        Self::new(self.theta, self.a + o.a, self.b + o.b)
    }
}

impl Sub for RingElement {
    type Output = RingElement;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> Self {
        Self::new(self.theta, 4 - self.a, 4 - self.b)
    }
}

impl Mul for RingElement {
    type Output = RingElement;
    fn mul(self, o: Self) -> Self {
        debug_assert_eq!(self.theta, o.theta);
        self.raw_mul(&o)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn ring_arith(x: RingElement, y: RingElement, op: ArithOp) -> Result<RingElement> {
    x.same_ring(&y)?;
    Ok(match op {
        ArithOp::Add => x + y,
        ArithOp::Sub => x - y,
        ArithOp::Mul => x * y,
    })
}

/// `k_theta`: `v` when `v^2 in {0, v}`, `1 + v` when `v^2 = 1`.
pub fn k_theta(theta: Theta) -> RingElement {
    match theta {
        Theta::One => RingElement::new(theta, 1, 1),
        _ => RingElement::nu(theta),
    }
}

/// Reduction modulo `k_theta`, landing in `Z4`.
pub fn phi_theta(x: &RingElement) -> u8 {
    match x.theta {
        Theta::One => (x.a + 4 - x.b) % 4,
        _ => x.a,
    }
}

/// The scalar by which `x` acts on the ideal `k R`: `x * k = kernel_scalar(x) * k`.
///
/// For `v^2 = 0` this agrees with `phi_theta`; for the other two rings `v` acts
/// on `k R` as `1`, so the scalar is `a + b`.
pub fn kernel_scalar(x: &RingElement) -> u8 {
    match x.theta {
        Theta::Zero => x.a,
        _ => (x.a + x.b) % 4,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnitClass {
    Alpha,
    Beta,
    NotAUnit,
}

impl UnitClass {
    pub fn name(self) -> &'static str {
        match self {
            UnitClass::Alpha => "alpha",
            UnitClass::Beta => "beta",
            UnitClass::NotAUnit => "not-a-unit",
        }
    }
}

impl Serialize for UnitClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Units whose residue code is cyclic map to `Alpha`, negacyclic to `Beta`.
///
/// The split is decided by `phi_theta(x)` (1 or 3). This reproduces the
/// published table and additionally classifies the trivial units `1` (all
/// rings) and `3` (`v^2 = v`), which the table leaves out.
pub fn classify_unit(x: &RingElement) -> UnitClass {
    if !x.is_unit() {
        return UnitClass::NotAUnit;
    }
    match phi_theta(x) {
        1 => UnitClass::Alpha,
        3 => UnitClass::Beta,
        _ => unreachable!("units reduce to units of Z4"),
    }
}

/// The published unit table: `(alpha units, beta units)` for each ring.
pub fn tabulated_units(theta: Theta) -> (Vec<RingElement>, Vec<RingElement>) {
    let e = |a, b| RingElement::new(theta, a, b);
    match theta {
        Theta::Zero => (
            vec![e(1, 1), e(1, 2), e(1, 3)],
            vec![e(3, 0), e(3, 2), e(3, 3), e(3, 1)],
        ),
        Theta::One => (
            vec![e(2, 1), e(3, 2), e(0, 3)],
            vec![e(3, 0), e(0, 1), e(1, 2), e(2, 3)],
        ),
        Theta::Nu => (vec![e(1, 2)], vec![e(3, 2)]),
    }
}

/// All sixteen elements, `b`-major then `a`.
pub fn enumerate_ring(theta: Theta) -> Vec<RingElement> {
    (0..4)
        .flat_map(|b| (0..4).map(move |a| RingElement::new(theta, a, b)))
        .collect()
}

pub fn units(theta: Theta) -> Vec<RingElement> {
    enumerate_ring(theta)
        .into_iter()
        .filter(|x| x.is_unit())
        .collect()
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nu = match self.b {
            0 => None,
            1 => Some("v".to_string()),
            b => Some(format!("{b}v")),
        };
        match (self.a, nu) {
            (a, None) => write!(f, "{a}"),
            (0, Some(v)) => f.write_str(&v),
            (a, Some(v)) => write!(f, "{a}+{v}"),
        }
    }
}

impl Serialize for RingElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Parses `a`, `bv`, `a+bv` (terms in any order, `v` alone means `1v`).
pub fn parse_element(theta: Theta, text: &str) -> Result<RingElement> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = |reason: &str| Error::Parse {
        token: text.to_string(),
        reason: reason.to_string(),
    };
    if s.is_empty() {
        return Err(bad("empty element"));
    }
    let (mut a, mut b) = (None, None);
    for term in s.split('+') {
        if term.is_empty() {
            return Err(bad("dangling '+'"));
        }
        let (digits, is_nu) = match term.strip_suffix('v') {
            Some(d) => (d, true),
            None => (term, false),
        };
        let value = if digits.is_empty() && is_nu {
            1
        } else {
            match digits {
                "0" => 0,
                "1" => 1,
                "2" => 2,
                "3" => 3,
                _ => {
                    return Err(Error::Parse {
                        token: term.to_string(),
                        reason: "expected a digit 0-3".into(),
                    })
                }
            }
        };
        let slot = if is_nu { &mut b } else { &mut a };
        if slot.replace(value).is_some() {
            return Err(Error::Parse {
                token: term.to_string(),
                reason: "repeated term".into(),
            });
        }
    }
    Ok(RingElement::new(theta, a.unwrap_or(0), b.unwrap_or(0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(t: Theta, a: u8, b: u8) -> RingElement {
        RingElement::new(t, a, b)
    }

    #[test]
    fn products_from_examples() {
        assert!(el(Theta::Zero, 0, 1) * el(Theta::Zero, 0, 1) == el(Theta::Zero, 0, 0));
        assert_eq!(
            el(Theta::One, 1, 1) * el(Theta::One, 1, 1),
            el(Theta::One, 2, 2)
        );
        assert_eq!(
            el(Theta::Nu, 1, 2) * el(Theta::Nu, 3, 2),
            el(Theta::Nu, 3, 0)
        );
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let r = ring_arith(el(Theta::Zero, 1, 0), el(Theta::One, 1, 0), ArithOp::Add);
        assert_eq!(r, Err(Error::ThetaMismatch(Theta::Zero, Theta::One)));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_theta(&el(Theta::Zero, 2, 3)), 2);
        assert_eq!(phi_theta(&el(Theta::One, 1, 1)), 0);
        assert_eq!(phi_theta(&el(Theta::One, 3, 2)), 1);
    }

    #[test]
    fn k_squares() {
        for t in Theta::ALL {
            let k = k_theta(t);
            let expect = match t {
                Theta::Zero => el(t, 0, 0),
                Theta::One => el(t, 2, 2),
                Theta::Nu => el(t, 0, 1),
            };
            assert_eq!(k * k, expect);
            assert_eq!(phi_theta(&k), 0);
        }
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_unit(&el(Theta::Zero, 1, 2)), UnitClass::Alpha);
        assert_eq!(classify_unit(&el(Theta::Nu, 3, 2)), UnitClass::Beta);
        assert_eq!(classify_unit(&el(Theta::One, 2, 2)), UnitClass::NotAUnit);
        assert!(enumerate_ring(Theta::One)
            .iter()
            .all(|y| el(Theta::One, 2, 2) * *y != RingElement::one(Theta::One)));
    }

    #[test]
    fn enumeration_order() {
        let r = enumerate_ring(Theta::Nu);
        assert_eq!(r.len(), 16);
        assert!(r[0].is_zero());
        assert_eq!(r[1], el(Theta::Nu, 1, 0));
        assert_eq!(r[4], el(Theta::Nu, 0, 1));
        assert_eq!(units(Theta::One).len(), 8);
    }

    #[test]
    fn kernel_scalar_describes_action_on_k() {
        for t in Theta::ALL {
            let k = k_theta(t);
            for x in enumerate_ring(t) {
                assert_eq!(x * k, RingElement::from_z4(t, kernel_scalar(&x)) * k);
            }
        }
    }

    #[test]
    fn k_basis_round_trip() {
        for t in Theta::ALL {
            for x in enumerate_ring(t) {
                let (x0, x1) = x.to_k_basis();
                assert_eq!(RingElement::from_k_basis(t, x0, x1), x);
                assert_eq!(
                    RingElement::from_z4(t, x0) + k_theta(t) * RingElement::from_z4(t, x1),
                    x
                );
            }
        }
    }

    #[test]
    fn text_round_trip() {
        for t in Theta::ALL {
            for x in enumerate_ring(t) {
                assert_eq!(parse_element(t, &x.to_string()).unwrap(), x);
            }
        }
        assert_eq!(
            parse_element(Theta::Zero, " 3 + 2v ").unwrap(),
            el(Theta::Zero, 3, 2)
        );
        assert_eq!(
            parse_element(Theta::Zero, "v+1").unwrap(),
            el(Theta::Zero, 1, 1)
        );
        assert!(parse_element(Theta::Zero, "4").is_err());
        assert!(parse_element(Theta::Zero, "1+").is_err());
        assert!(parse_element(Theta::Zero, "1+2").is_err());
    }

    #[test]
    fn theta_from_square() {
        assert_eq!(Theta::from_nu_square(0, 1).unwrap(), Theta::Nu);
        assert!(Theta::from_nu_square(2, 0).is_err());
        assert!("2v".parse::<Theta>().is_err());
    }
}
