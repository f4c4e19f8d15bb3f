//! Ideals of `R_theta[z]/(z^n - u)` and their canonical generators.
//!
//! A code is stored as the additive group it spans inside `Z4^(2n)`, using
//! the `k`-basis coordinates `c = c0 + k c1` (first `n` columns hold `c0`,
//! the next `n` hold `c1`). Columns are prioritized `c0` before `c1` and high
//! degree before low, so the Howell basis exposes the filtration
//! `C ⊇ C ∩ (2, k) ⊇ C ∩ (k) ⊇ C ∩ (2k)` layer by layer.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{parse_rpoly, BinPoly, Polynomial, QuadPoly, QuotientContext, RPoly};
use crate::ring::{RingElement, Theta, UnitClass};
use crate::z4codes::{lift_divisor_for, odd_decomposition, Z4Code, Z4CyclicForm, Z4NegacyclicForm};
use crate::z4module::Z4Module;

/// A generating set, each polynomial reduced below degree `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    ctx: QuotientContext,
    gens: Vec<RPoly>,
}

impl GeneratorSet {
    /// Inputs of any degree are reduced modulo `z^n - u`.
    pub fn new(ctx: QuotientContext, gens: Vec<RPoly>) -> Result<Self> {
        let mut reduced = Vec::with_capacity(gens.len());
        for g in gens {
            if g.theta() != ctx.theta() {
                return Err(Error::ThetaMismatch(ctx.theta(), g.theta()));
            }
            reduced.push(ctx.reduce(&g));
        }
        Ok(GeneratorSet { ctx, gens: reduced })
    }

    pub fn parse<S: AsRef<str>>(ctx: QuotientContext, texts: &[S]) -> Result<Self> {
        let gens = texts
            .iter()
            .map(|t| parse_rpoly(ctx.theta(), t.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ctx, gens)
    }

    pub fn ctx(&self) -> &QuotientContext {
        &self.ctx
    }

    pub fn gens(&self) -> &[RPoly] {
        &self.gens
    }
}

/// Coordinates of `f` (degree < n) in `Z4^(2n)`.
pub fn poly_to_vec(n: usize, f: &RPoly) -> Vec<u8> {
    let (x0, x1) = f.k_parts();
    let mut v = x0.to_word(n);
    v.extend(x1.to_word(n));
    v
}

pub fn vec_to_poly(theta: Theta, v: &[u8]) -> RPoly {
    let n = v.len() / 2;
    RPoly::from_k_parts(
        theta,
        &QuadPoly::from_coeffs(&v[..n]),
        &QuadPoly::from_coeffs(&v[n..]),
    )
}

/// `c0` columns before `c1` columns, each from degree `n - 1` down to 0.
pub fn ideal_order(n: usize) -> Vec<usize> {
    (0..n).rev().chain((n..2 * n).rev()).collect()
}

fn shift_word(ctx: &QuotientContext, w: &[RingElement]) -> Vec<RingElement> {
    ctx.constacyclic_shift(w).expect("word has length n")
}

/// An ideal of `R_theta[z]/(z^n - u)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Code {
    ctx: QuotientContext,
    module: Z4Module,
}

impl Code {
    pub fn generate(gs: &GeneratorSet) -> Code {
        Self::from_polys(gs.ctx.clone(), gs.gens())
    }

    /// The ideal generated by `gens`, which must already have degree < n.
    pub fn from_polys(ctx: QuotientContext, gens: &[RPoly]) -> Code {
        let n = ctx.n();
        let nu = RingElement::nu(ctx.theta());
        let mut vecs = Vec::with_capacity(2 * n * gens.len());
        for g in gens {
            for eps in [RingElement::one(ctx.theta()), nu] {
                let mut w = g.scale(eps).to_word(n);
                for _ in 0..n {
                    vecs.push(vec_of_word(&w));
                    w = shift_word(&ctx, &w);
                }
            }
        }
        let module = Z4Module::span(2 * n, &ideal_order(n), vecs);
        Code { ctx, module }
    }

    /// `self + other`.
    pub fn join(&self, other: &Code) -> Code {
        let n = self.ctx.n();
        let rows: Vec<Vec<u8>> = self
            .module
            .rows()
            .chain(other.module.rows())
            .map(|(_, r)| r.to_vec())
            .collect();
        Code {
            ctx: self.ctx.clone(),
            module: Z4Module::span(2 * n, &ideal_order(n), rows),
        }
    }

    pub fn whole(ctx: QuotientContext) -> Code {
        let one = RPoly::constant(RingElement::one(ctx.theta()));
        Self::from_polys(ctx, &[one])
    }

    pub fn ctx(&self) -> &QuotientContext {
        &self.ctx
    }

    pub fn module(&self) -> &Z4Module {
        &self.module
    }

    pub fn contains(&self, f: &RPoly) -> bool {
        self.module
            .contains(&poly_to_vec(self.ctx.n(), &self.ctx.reduce(f)))
    }

    pub fn contains_code(&self, other: &Code) -> bool {
        self.module.contains_module(&other.module)
    }

    pub fn log2_size(&self) -> usize {
        self.module.log2_size()
    }

    pub fn is_zero(&self) -> bool {
        self.module.is_zero()
    }

    /// Rows of the Howell basis, as polynomials; they span the code additively.
    pub fn additive_generators(&self) -> Vec<RPoly> {
        self.module
            .rows()
            .map(|(_, r)| vec_to_poly(self.ctx.theta(), r))
            .collect()
    }

    /// `phi_theta(C)` in `Z4[z]/(z^n - phi(u))`.
    pub fn residue(&self) -> Z4Code {
        let n = self.ctx.n();
        let m = self
            .module
            .image(n, &crate::z4codes::descending_order(n), |r| r[..n].to_vec());
        Z4Code::from_module(n, self.ctx.res_lambda(), m)
    }

    /// `{a : k a in C}` in `Z4[z]/(z^n - psi(u))`.
    pub fn torsion(&self) -> Z4Code {
        let n = self.ctx.n();
        let ker = self.module.kernel(n, |r| r[..n].to_vec());
        let m = ker.image(n, &crate::z4codes::descending_order(n), |r| r[n..].to_vec());
        Z4Code::from_module(n, self.ctx.tor_lambda(), m)
    }

    fn scaled(&self, c: RingElement) -> Z4Module {
        let theta = self.ctx.theta();
        let n = self.ctx.n();
        self.module.image(2 * n, &ideal_order(n), |r| {
            poly_to_vec(n, &vec_to_poly(theta, r).scale(c))
        })
    }

    fn sum(&self, parts: &[Z4Module]) -> Z4Module {
        let n = self.ctx.n();
        let rows = parts
            .iter()
            .flat_map(|m| m.rows().map(|(_, r)| r.to_vec()).collect::<Vec<_>>());
        Z4Module::span(2 * n, &ideal_order(n), rows)
    }

    /// Minimal number of generators of `C` as an `R_theta`-module.
    ///
    /// `R_0` and `R_1` are local with maximal ideal `(2, k)`; `R_v` splits as
    /// `vR x (1 - v)R`, each factor a copy of Z4, and the count is the larger
    /// of the two local counts.
    pub fn rank(&self) -> usize {
        let theta = self.ctx.theta();
        let el = |a, b| RingElement::new(theta, a, b);
        match theta {
            Theta::Zero | Theta::One => {
                let m = self.sum(&[self.scaled(el(2, 0)), self.scaled(self.ctx.k())]);
                self.log2_size() - m.log2_size()
            }
            Theta::Nu => [el(0, 1), el(1, 3)]
                .into_iter()
                .map(|e| {
                    let part = self.scaled(e);
                    let doubled = Z4Module::span(
                        part.width(),
                        part.order(),
                        part.rows()
                            .map(|(_, r)| r.iter().map(|x| (2 * x) % 4).collect()),
                    );
                    part.log2_size() - doubled.log2_size()
                })
                .max()
                .unwrap_or(0),
        }
    }

    /// Closed under word reversal (checked on an additive basis).
    pub fn is_reversible(&self) -> bool {
        self.reversal_witness().is_none()
    }

    /// An additive generator whose reversal leaves the code.
    pub fn reversal_witness(&self) -> Option<RPoly> {
        let n = self.ctx.n();
        self.module.rows().find_map(|(_, r)| {
            let mut rev: Vec<u8> = r[..n].iter().rev().copied().collect();
            rev.extend(r[n..].iter().rev());
            (!self.module.contains(&rev)).then(|| vec_to_poly(self.ctx.theta(), r))
        })
    }
}

fn vec_of_word(w: &[RingElement]) -> Vec<u8> {
    let n = w.len();
    let mut v = vec![0u8; 2 * n];
    for (i, x) in w.iter().enumerate() {
        let (x0, x1) = x.to_k_basis();
        v[i] = x0;
        v[n + i] = x1;
    }
    v
}

fn digits(n: usize, v: &[u8]) -> [BinPoly; 4] {
    let c0 = QuadPoly::from_coeffs(&v[..n]);
    let c1 = QuadPoly::from_coeffs(&v[n..]);
    [c0.mod2(), c0.high_bits(), c1.mod2(), c1.high_bits()]
}

/// Digits of the row leading layer `layer`. When that layer is a unit-led one (0 or 2), its
/// Z4 part is read as `lift(t) + 2 p` with `lift` the lift of divisors of `z^n - 1`, so the
/// digit after the diagonal is `p` rather than the plain high bits.
fn layer_digits(ctx: &QuotientContext, layer: usize, v: &[u8]) -> [BinPoly; 4] {
    let n = ctx.n();
    let mut d = digits(n, v);
    if layer == 0 || layer == 2 {
        let part = QuadPoly::from_coeffs(if layer == 0 { &v[..n] } else { &v[n..] });
        d[layer + 1] = part.sub(&layer_lift(ctx, layer, &d[layer])).high_bits();
    }
    d
}

/// Row of `m` with the lowest pivot among those accepted by `keep`.
fn lowest_row(m: &Z4Module, keep: impl Fn(usize, &[u8]) -> bool) -> Option<Vec<u8>> {
    m.rows()
        .filter(|(c, r)| keep(*c, r))
        .min_by_key(|(c, _)| *c)
        .map(|(_, r)| r.to_vec())
}

// ---------------------------------------------------------------------------
// alpha

/// `C = <T1, T2, T3, T4>` with
/// `T1 = t11 + 2 t12 + k t13 + 2k t14`, `T2 = 2 t22 + k t23 + 2k t24`,
/// `T3 = k t33 + 2k t34`, `T4 = 2k t44`; an absent layer has `tii = z^n - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AlphaCanonicalForm {
    #[serde(skip)]
    pub ctx: QuotientContext,
    pub t11: BinPoly,
    pub t12: BinPoly,
    pub t13: BinPoly,
    pub t14: BinPoly,
    pub t22: BinPoly,
    pub t23: BinPoly,
    pub t24: BinPoly,
    pub t33: BinPoly,
    pub t34: BinPoly,
    pub t44: BinPoly,
}

impl AlphaCanonicalForm {
    pub fn diagonal(&self) -> [&BinPoly; 4] {
        [&self.t11, &self.t22, &self.t33, &self.t44]
    }

    /// `s_i = deg t_ii`, with `n` for absent layers.
    pub fn diagonal_degrees(&self) -> [usize; 4] {
        self.diagonal()
            .map(|t| t.degree().expect("diagonal entries are nonzero"))
    }

    /// Row `i` (1-based) of the upper triangular table, zero-padded on the left.
    pub fn row(&self, i: usize) -> [BinPoly; 4] {
        let z = BinPoly::zero();
        match i {
            1 => [
                self.t11.clone(),
                self.t12.clone(),
                self.t13.clone(),
                self.t14.clone(),
            ],
            2 => [z, self.t22.clone(), self.t23.clone(), self.t24.clone()],
            3 => [z.clone(), z, self.t33.clone(), self.t34.clone()],
            4 => [z.clone(), z.clone(), z, self.t44.clone()],
            _ => panic!("row index {i} out of range"),
        }
    }

    /// The present `T_i`, in order.
    pub fn generators(&self) -> Vec<RPoly> {
        let xn1 = BinPoly::z_n_minus_1(self.ctx.n());
        (1..=4)
            .filter(|&i| *self.diagonal()[i - 1] != xn1)
            .map(|i| compose_digits(&self.ctx, i - 1, &self.row(i)))
            .collect()
    }
}

/// The residue layer lives modulo `z^n - 1` and the kernel layer modulo `z^n - psi(u)`.
fn layer_lift(ctx: &QuotientContext, layer: usize, t: &BinPoly) -> QuadPoly {
    let lambda = if layer == 0 {
        ctx.res_lambda()
    } else {
        ctx.tor_lambda()
    };
    lift_divisor_for(t, ctx.n(), lambda)
}

/// Inverse of `layer_digits`.
fn compose_digits(ctx: &QuotientContext, layer: usize, d: &[BinPoly; 4]) -> RPoly {
    let unit_part = |i: usize| {
        if i == layer {
            layer_lift(ctx, i, &d[i])
        } else {
            d[i].lift()
        }
    };
    let x0 = unit_part(0).add(&d[1].lift().scale(2));
    let x1 = unit_part(2).add(&d[3].lift().scale(2));
    RPoly::from_k_parts(ctx.theta(), &x0, &x1)
}

/// Minimal generators of the four binary tower codes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TowerCodes {
    pub c1: BinPoly,
    pub c2: BinPoly,
    pub c3: BinPoly,
    pub c4: BinPoly,
}

fn require_class(ctx: &QuotientContext, class: UnitClass) -> Result<()> {
    if ctx.unit_class() == class {
        Ok(())
    } else {
        Err(Error::WrongUnitClass {
            expected: class.name(),
            found: ctx.unit_class().name(),
        })
    }
}

/// The four layer representatives `T_i` before degree reduction.
fn layer_rows(code: &Code) -> [Option<Vec<u8>>; 4] {
    let n = code.ctx.n();
    let h = &code.module;
    let t1 = lowest_row(h, |c, r| c < n && r[c] == 1);
    let f1 = h.kernel(n, |r| r[..n].iter().map(|x| (2 * x) % 4).collect());
    let t2 = lowest_row(&f1, |c, _| c < n);
    let ker = h.kernel(n, |r| r[..n].to_vec());
    let t3 = lowest_row(&ker, |c, r| r[c] == 1);
    let f3 = ker.kernel(n, |r| r[n..].iter().map(|x| (2 * x) % 4).collect());
    let t4 = lowest_row(&f3, |_, _| true);
    [t1, t2, t3, t4]
}

pub fn tower_codes(gs: &GeneratorSet) -> Result<TowerCodes> {
    let f = canonicalize_alpha(gs)?;
    Ok(TowerCodes {
        c1: f.t11,
        c2: f.t22,
        c3: f.t33,
        c4: f.t44,
    })
}

pub fn canonicalize_alpha(gs: &GeneratorSet) -> Result<AlphaCanonicalForm> {
    alpha_form_of(&Code::generate(gs))
}

pub fn alpha_form_of(code: &Code) -> Result<AlphaCanonicalForm> {
    let ctx = &code.ctx;
    require_class(ctx, UnitClass::Alpha)?;
    let n = ctx.n();
    let theta = ctx.theta();
    let xn1 = BinPoly::z_n_minus_1(n);
    let mut rows = layer_rows(code);
    let diag: Vec<BinPoly> = (0..4)
        .map(|i| {
            rows[i]
                .as_ref()
                .map_or(xn1.clone(), |r| digits(n, r)[i].clone())
        })
        .collect();

    for i in (0..4).rev() {
        let Some(mut ti) = rows[i].clone() else {
            continue;
        };
        for j in i + 1..4 {
            let Some(tj) = rows[j].as_ref() else { continue };
            let (q, _) = layer_digits(ctx, i, &ti)[j]
                .divmod(&diag[j])
                .expect("diagonal entries are nonzero");
            if q.is_zero() {
                continue;
            }
            let prod = ctx.reduce(&q.lift().embed(theta).mul(&vec_to_poly(theta, tj)));
            ti = poly_to_vec(n, &vec_to_poly(theta, &ti).sub(&prod));
        }
        rows[i] = Some(ti);
    }

    let entry = |i: usize, j: usize| {
        rows[i]
            .as_ref()
            .map_or(BinPoly::zero(), |r| layer_digits(ctx, i, r)[j].clone())
    };
    Ok(AlphaCanonicalForm {
        ctx: ctx.clone(),
        t11: diag[0].clone(),
        t12: entry(0, 1),
        t13: entry(0, 2),
        t14: entry(0, 3),
        t22: diag[1].clone(),
        t23: entry(1, 2),
        t24: entry(1, 3),
        t33: diag[2].clone(),
        t34: entry(2, 3),
        t44: diag[3].clone(),
    })
}

// ---------------------------------------------------------------------------
// Z4 images

/// Canonical description of a residue or torsion code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Z4Form {
    Cyclic(Z4CyclicForm),
    Negacyclic(Z4NegacyclicForm),
    /// A negacyclic code outside the `(z^m - 1)^t` chain, given by its Howell rows.
    Unstructured {
        lambda: u8,
        rows: Vec<QuadPoly>,
    },
}

fn z4_form(code: &Z4Code) -> Z4Form {
    if code.lambda() == 1 {
        return Z4Form::Cyclic(code.cyclic_form());
    }
    let (n_odd, s) = odd_decomposition(code.n());
    match code.chain_exponent() {
        Some(t) => Z4Form::Negacyclic(Z4NegacyclicForm {
            big_n: code.n(),
            n_odd,
            s,
            t,
        }),
        None => Z4Form::Unstructured {
            lambda: code.lambda(),
            rows: code
                .module()
                .rows()
                .map(|(_, r)| QuadPoly::from_coeffs(r))
                .collect(),
        },
    }
}

pub fn residue_code(gs: &GeneratorSet) -> Z4Form {
    z4_form(&Code::generate(gs).residue())
}

/// `J` with `ker phi_theta = k J`, i.e. the torsion code.
pub fn kernel_code(gs: &GeneratorSet) -> Z4Form {
    z4_form(&Code::generate(gs).torsion())
}

// ---------------------------------------------------------------------------
// beta

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BetaTorsion {
    /// `Tor(C) = <(z^m - 1)^t2>` in `Z4[z]/(z^N + 1)`.
    Chain { t2: usize },
    /// `Tor(C)` is cyclic because `u` acts on `kR` as `1`.
    Cyclic(Z4CyclicForm),
}

/// `C = <(z^m - 1)^t1 + k t, k Tor(C)>` with `t` in normal form modulo `Tor(C)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BetaCanonicalForm {
    #[serde(skip)]
    pub ctx: QuotientContext,
    pub t1: usize,
    pub torsion: BetaTorsion,
    pub t: QuadPoly,
}

impl BetaCanonicalForm {
    pub fn t2(&self) -> Option<usize> {
        match self.torsion {
            BetaTorsion::Chain { t2 } => Some(t2),
            BetaTorsion::Cyclic(_) => None,
        }
    }

    /// `2^(s+1)`, the exponent of the zero ideal in the chain.
    pub fn top_exponent(&self) -> usize {
        2usize << self.ctx.s()
    }

    pub fn is_zero_code(&self) -> bool {
        self.t1 == self.top_exponent() && self.t2() == Some(self.top_exponent())
    }

    fn chain(&self, t: usize) -> QuadPoly {
        crate::z4codes::chain_power(self.ctx.n_odd_part(), self.ctx.n(), 3, t)
    }

    /// `l1 = (z^m - 1)^t1 + k t`.
    pub fn l1(&self) -> RPoly {
        RPoly::from_k_parts(self.ctx.theta(), &self.chain(self.t1), &self.t)
    }

    /// `k` times the generators of the torsion code.
    pub fn torsion_generators(&self) -> Vec<RPoly> {
        let theta = self.ctx.theta();
        let tor = match &self.torsion {
            BetaTorsion::Chain { t2 } => vec![self.chain(*t2)],
            BetaTorsion::Cyclic(f) => f.generators(),
        };
        tor.iter()
            .map(|g| RPoly::from_k_parts(theta, &QuadPoly::zero(), g))
            .filter(|g| !g.is_zero())
            .collect()
    }

    pub fn generators(&self) -> Vec<RPoly> {
        let mut out: Vec<RPoly> = Some(self.l1())
            .filter(|l| !l.is_zero())
            .into_iter()
            .collect();
        out.extend(self.torsion_generators());
        out
    }
}

pub fn canonicalize_beta(gs: &GeneratorSet) -> Result<BetaCanonicalForm> {
    beta_form_of(&Code::generate(gs))
}

pub fn beta_form_of(code: &Code) -> Result<BetaCanonicalForm> {
    let ctx = &code.ctx;
    require_class(ctx, UnitClass::Beta)?;
    let n = ctx.n();
    let t1 = code.residue().chain_exponent().ok_or(Error::NotInChain)?;
    let tor = code.torsion();
    let torsion = if tor.lambda() == 1 {
        BetaTorsion::Cyclic(tor.cyclic_form())
    } else {
        BetaTorsion::Chain {
            t2: tor.chain_exponent().ok_or(Error::NotInChain)?,
        }
    };
    let head = crate::z4codes::chain_power(ctx.n_odd_part(), n, 3, t1);
    let mut v = head.to_word(n);
    v.extend(std::iter::repeat_n(0, n));
    let residual = code.module.reduce(&v);
    debug_assert!(
        residual[..n].iter().all(|&x| x == 0),
        "chain power lies in the residue code"
    );
    let tail = QuadPoly::from_coeffs(&residual[n..]).neg();
    let t = tor.normal_form(&tail);
    Ok(BetaCanonicalForm {
        ctx: ctx.clone(),
        t1,
        torsion,
        t,
    })
}

// ---------------------------------------------------------------------------
// divisibility relations

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    NotApplicable,
}

impl Outcome {
    fn from_bool(b: bool) -> Self {
        if b {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

/// Why a relation was not evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Skip {
    /// The relation is stated for another `theta`.
    OtherRing,
    /// A quotient inside the relation is not an exact division.
    InexactQuotient,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub id: &'static str,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<Skip>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

struct Divisibility<'a> {
    f: &'a AlphaCanonicalForm,
    xn1: BinPoly,
}

impl Divisibility<'_> {
    /// `d | e` in `Z2[z]/(z^n - 1)`.
    fn divides(&self, d: &BinPoly, e: &BinPoly) -> bool {
        d.divides(&e.reduce_cyclic(self.f.ctx.n()))
    }

    fn quo(&self, a: &BinPoly, b: &BinPoly) -> Option<BinPoly> {
        a.exact_div(b)
    }

    fn cofactor(&self, t: &BinPoly) -> Option<BinPoly> {
        self.xn1.exact_div(t)
    }
}

/// Evaluates the divisibility relations every canonical quadruple must satisfy.
pub fn verify_divisibility(form: &AlphaCanonicalForm) -> Vec<Relation> {
    let d = Divisibility {
        f: form,
        xn1: BinPoly::z_n_minus_1(form.ctx.n()),
    };
    let f = form;
    let theta = f.ctx.theta();
    let mut out = Vec::new();
    let mut push = |id: &'static str, value: Option<bool>| {
        let (outcome, skipped) = match value {
            Some(b) => (Outcome::from_bool(b), None),
            None => (Outcome::NotApplicable, Some(Skip::InexactQuotient)),
        };
        out.push(Relation {
            id,
            outcome,
            skipped,
            note: None,
        });
    };

    push(
        "(1)",
        Some(d.divides(&f.t22, &f.t11) && f.t11.divides(&d.xn1)),
    );
    push(
        "(2)",
        if f.t12.is_zero() {
            Some(true)
        } else {
            d.cofactor(&f.t11)
                .map(|c| d.divides(&f.t22, &f.t12.mul(&c)) && f.t12.degree() < f.t22.degree())
        },
    );
    push(
        "(3)",
        Some(d.divides(&f.t44, &f.t33) && f.t33.divides(&d.xn1)),
    );
    push(
        "(4)",
        if f.t34.is_zero() {
            Some(true)
        } else {
            d.cofactor(&f.t33)
                .map(|c| d.divides(&f.t44, &f.t34.mul(&c)) && f.t34.degree() < f.t44.degree())
        },
    );
    push(
        "(i)",
        (|| {
            let c = d.cofactor(&f.t11)?;
            let q = d.quo(&f.t12, &f.t22)?;
            Some(d.divides(&f.t33, &c.mul(&f.t13.add(&q.mul(&f.t23)))))
        })(),
    );
    push("(ii)", Some(d.divides(&f.t44, &f.t23)));
    push(
        "(iii)",
        d.quo(&f.t11, &f.t22)
            .map(|q| d.divides(&f.t33, &q.mul(&f.t23))),
    );
    push(
        "(iv)",
        (|| {
            let c = d.cofactor(&f.t22)?;
            let q = d.quo(&f.t23, &f.t33)?;
            Some(d.divides(&f.t44, &c.mul(&f.t24.add(&q.mul(&f.t34)))))
        })(),
    );
    push(
        "(v)",
        (|| {
            let q1 = d.quo(&f.t11, &f.t22)?;
            let q2 = d.quo(&f.t11, &f.t22.mul(&f.t33))?;
            let e = f.t13.add(&q1.mul(&f.t24)).add(&q2.mul(&f.t23).mul(&f.t34));
            Some(d.divides(&f.t44, &e))
        })(),
    );
    push(
        "(vi)",
        (|| {
            let c = d.cofactor(&f.t11)?;
            let q1 = d.quo(&f.t12, &f.t22)?;
            let q2 = d.quo(&f.t12.mul(&f.t23), &f.t22)?;
            let q3 = d.quo(&f.t13.add(&q2), &f.t33)?;
            let e = f.t14.add(&q1.mul(&f.t24)).add(&q3.mul(&f.t34));
            Some(d.divides(&f.t44, &c.mul(&e)))
        })(),
    );

    let mut themed =
        |id: &'static str, applies: bool, value: Option<bool>, note: Option<&'static str>| {
            let (outcome, skipped) = match (applies, value) {
                (false, _) => (Outcome::NotApplicable, Some(Skip::OtherRing)),
                (true, None) => (Outcome::NotApplicable, Some(Skip::InexactQuotient)),
                (true, Some(b)) => (Outcome::from_bool(b), None),
            };
            out.push(Relation {
                id,
                outcome,
                skipped,
                note,
            });
        };
    themed(
        "(vii)",
        theta == Theta::Zero,
        Some(
            d.divides(&f.t44, &f.t11)
                && d.divides(&f.t44, &f.t22)
                && d.divides(&f.t44, &f.t33)
                && d.divides(&f.t33, &f.t11),
        ),
        None,
    );
    themed(
        "(viii)",
        theta == Theta::One,
        Some(
            d.divides(&f.t33, &f.t11)
                && d.divides(&f.t44, &f.t11)
                && d.divides(&f.t44, &f.t22.add(&f.t23)),
        ),
        None,
    );
    themed(
        "(ix)",
        theta == Theta::One,
        d.quo(&f.t11, &f.t33)
            .map(|q| d.divides(&f.t44, &f.t12.add(&f.t13).add(&q.mul(&f.t34)))),
        Some("divisor printed as g44 in the source statement; evaluated with t44"),
    );
    themed(
        "(x)",
        theta == Theta::Nu,
        Some(d.divides(&f.t44, &f.t13) && d.divides(&f.t44, &f.t11)),
        None,
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_bin;

    fn ctx(theta: Theta, a: u8, b: u8, n: usize) -> QuotientContext {
        QuotientContext::new(theta, RingElement::new(theta, a, b), n).unwrap()
    }

    fn gs(c: &QuotientContext, gens: &[&str]) -> GeneratorSet {
        GeneratorSet::parse(c.clone(), gens).unwrap()
    }

    #[test]
    fn example_one_form() {
        let c = ctx(Theta::Zero, 1, 1, 3);
        let f = canonicalize_alpha(&gs(&c, &["v*z+v"])).unwrap();
        let xn1 = BinPoly::z_n_minus_1(3);
        assert_eq!(f.t11, xn1);
        assert_eq!(f.t22, xn1);
        assert_eq!(f.t33, parse_bin("z+1").unwrap());
        assert_eq!(f.t44, BinPoly::one());
        assert_eq!(Code::generate(&gs(&c, &["v*z+v"])).log2_size(), 5);
    }

    #[test]
    fn whole_and_zero_codes() {
        let c = ctx(Theta::One, 3, 2, 4);
        let f = canonicalize_alpha(&gs(&c, &["1"])).unwrap();
        assert!(f.diagonal().iter().all(|t| **t == BinPoly::one()));
        assert!([&f.t12, &f.t13, &f.t14, &f.t23, &f.t24, &f.t34]
            .iter()
            .all(|t| t.is_zero()));
        let z = canonicalize_alpha(&gs(&c, &[])).unwrap();
        assert!(z.diagonal().iter().all(|t| **t == BinPoly::z_n_minus_1(4)));
        assert!(z.generators().is_empty());
        assert!(verify_divisibility(&f)
            .iter()
            .all(|r| r.outcome != Outcome::Fail));
    }

    #[test]
    fn unit_class_is_enforced() {
        let c = ctx(Theta::Zero, 3, 2, 2);
        assert!(matches!(
            canonicalize_alpha(&gs(&c, &["1"])),
            Err(Error::WrongUnitClass { .. })
        ));
        let c = ctx(Theta::Zero, 1, 2, 2);
        assert!(matches!(
            canonicalize_beta(&gs(&c, &["1"])),
            Err(Error::WrongUnitClass { .. })
        ));
    }

    #[test]
    fn example_three_form() {
        let c = ctx(Theta::Zero, 3, 2, 4);
        let g = gs(&c, &["z-1+v", "v*z-v"]);
        let f = canonicalize_beta(&g).unwrap();
        assert_eq!((f.t1, f.t2()), (1, Some(1)));
        assert_eq!(f.t, QuadPoly::one());
        assert_eq!(Code::generate(&g).log2_size(), 14);
        assert_eq!(
            Code::from_polys(c.clone(), &f.generators()),
            Code::generate(&g)
        );
    }

    #[test]
    fn kernel_generator_gives_top_residue_exponent() {
        for (theta, a, b) in [(Theta::Zero, 3, 0), (Theta::One, 0, 1), (Theta::Nu, 3, 2)] {
            let c = ctx(theta, a, b, 2);
            let k = crate::ring::k_theta(theta);
            let f = beta_form_of(&Code::from_polys(c.clone(), &[RPoly::constant(k)])).unwrap();
            assert_eq!(f.t1, 4);
            assert!(f.t.is_zero());
            if let Some(t2) = f.t2() {
                assert_eq!(t2, 0);
            }
        }
    }

    #[test]
    fn residue_and_torsion_of_example_one() {
        let c = ctx(Theta::Zero, 1, 1, 3);
        let code = Code::generate(&gs(&c, &["v*z+v"]));
        assert_eq!(code.residue().log2_size(), 0);
        assert!(code
            .torsion()
            .contains(&crate::poly::parse_quad("z+1").unwrap()));
        let k = Code::generate(&gs(&c, &["v"]));
        assert_eq!(k.torsion().log2_size(), 6);
    }
}
