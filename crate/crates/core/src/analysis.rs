//! Rank, cardinality, spanning sets and reversibility.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::canonical::{
    alpha_form_of, beta_form_of, verify_divisibility, AlphaCanonicalForm, BetaCanonicalForm, Code,
    GeneratorSet, Outcome, Relation,
};
use crate::error::{Error, Result};
use crate::poly::{BinPoly, Polynomial, QuadPoly, QuotientContext, RPoly};
use crate::ring::{RingElement, UnitClass};

/// An insertion-ordered string map for reports.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OrderedMap<V>(pub Vec<(String, V)>);

impl<V> OrderedMap<V> {
    pub fn get(&self, key: &str) -> Option<&V> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }
}

impl<V: Serialize> Serialize for OrderedMap<V> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

// ---------------------------------------------------------------------------
// closed-form counts

/// Rank and `log2 |C|` from the published closed forms for the alpha case.
pub fn rank_cardinality_alpha(form: &AlphaCanonicalForm) -> (i64, i64) {
    let n = form.ctx.n() as i64;
    let [s1, s2, s3, s4] = form.diagonal_degrees().map(|d| d as i64);
    let st = s2.min(s3);
    let rank = n + s1 + st - s2 - s3 - s4;
    let log2 = if form.t23.is_zero() {
        4 * n + st - 2 * s2 - 2 * s3 - s4
    } else {
        4 * n + s1 + st - 3 * s2 - 2 * s3 - s4
    };
    (rank, log2)
}

/// Rank `N - n t2` and `log2 |C| = 4N - 2n t1 - 2n t2`; the zero code reports `(0, 0)`.
///
/// `None` when the torsion code is not a chain ideal.
pub fn rank_cardinality_beta(form: &BetaCanonicalForm) -> Option<(i64, i64)> {
    let t2 = form.t2()? as i64;
    if form.is_zero_code() {
        return Some((0, 0));
    }
    let big_n = form.ctx.n() as i64;
    let n = form.ctx.n_odd_part() as i64;
    let t1 = form.t1 as i64;
    Some((big_n - n * t2, 4 * big_n - 2 * n * t1 - 2 * n * t2))
}

/// `log2 |C|` from the layer degrees: each layer contributes `n - s_i`.
pub fn exact_log2_alpha(form: &AlphaCanonicalForm) -> usize {
    4 * form.ctx.n() - form.diagonal_degrees().iter().sum::<usize>()
}

/// `log2 |C| = 4N - n t1 - n t2`, valid for chain torsion.
pub fn exact_log2_beta(form: &BetaCanonicalForm) -> Option<usize> {
    let t2 = form.t2()?;
    let (big_n, n) = (form.ctx.n(), form.ctx.n_odd_part());
    let layer = |t: usize| (2 * big_n).saturating_sub(n * t);
    Some(layer(form.t1) + layer(t2))
}

/// `{z^i l1 : i < N - n t1} ∪ {z^i l2 : i < n t1 - n t2}`.
pub fn minimal_spanning_beta(form: &BetaCanonicalForm) -> Result<Vec<RPoly>> {
    let t2 = form.t2().ok_or(Error::NotInChain)?;
    if form.t1 < t2 {
        return Err(Error::InvalidExponents { t1: form.t1, t2 });
    }
    let ctx = &form.ctx;
    let (big_n, n) = (ctx.n(), ctx.n_odd_part());
    let l1 = form.l1();
    let l2 = form
        .torsion_generators()
        .into_iter()
        .next()
        .unwrap_or_else(|| RPoly::zero(ctx.theta()));
    let mut out: Vec<RPoly> = (0..big_n.saturating_sub(n * form.t1))
        .map(|i| ctx.reduce(&l1.mul_z_pow(i)))
        .collect();
    out.extend((0..n * (form.t1 - t2)).map(|i| ctx.reduce(&l2.mul_z_pow(i))));
    Ok(out)
}

// ---------------------------------------------------------------------------
// reversibility

/// `z^e f` in `R_theta[z]/(z^n - u)` for any integer `e`.
fn z_pow_times(ctx: &QuotientContext, f: &RPoly, e: i64) -> RPoly {
    let n = ctx.n() as i64;
    if e >= 0 {
        return ctx.reduce(&f.mul_z_pow(e as usize));
    }
    let m = (-e + n - 1) / n;
    let inv = ctx.unit().inverse().expect("context unit is invertible");
    let scale = (0..m).fold(RingElement::one(ctx.theta()), |acc, _| acc * inv);
    ctx.reduce(&f.mul_z_pow((e + m * n) as usize).scale(scale))
}

/// `z^e f` in `Z4[z]/(z^n - lambda)`, `lambda = ±1`.
fn z_pow_times_z4(n: usize, lambda: u8, f: &QuadPoly, e: i64) -> QuadPoly {
    let n = n as i64;
    let m = if e >= 0 { 0 } else { (-e + n - 1) / n };
    let scale = if m % 2 == 1 { lambda } else { 1 };
    f.mul_z_pow((e + m * n) as usize)
        .scale(scale)
        .reduce(n as usize, lambda)
}

fn deg(f: &BinPoly) -> i64 {
    f.degree().map_or(0, |d| d as i64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MembershipVerdict {
    pub reversible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<RPoly>,
}

/// Whether the reciprocal of every listed generator lies in the code.
pub fn reversible_by_membership(gs: &GeneratorSet) -> MembershipVerdict {
    let code = Code::generate(gs);
    let witness = gs
        .gens()
        .iter()
        .find(|g| !code.contains(&g.reciprocal()))
        .cloned();
    MembershipVerdict {
        reversible: witness.is_none(),
        witness,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructuralVerdict {
    pub reversible: bool,
    pub conditions: OrderedMap<Outcome>,
}

fn verdict(conditions: Vec<(&str, bool)>) -> StructuralVerdict {
    let reversible = conditions.iter().all(|(_, b)| *b);
    let conditions = OrderedMap(
        conditions
            .into_iter()
            .map(|(k, b)| (k.to_string(), if b { Outcome::Pass } else { Outcome::Fail }))
            .collect(),
    );
    StructuralVerdict {
        reversible,
        conditions,
    }
}

/// The four-condition reversibility criterion for alpha codes, with the
/// auxiliary polynomials taken as `h1 = t13` and `h2 = t23`.
pub fn reversible_alpha_structural(form: &AlphaCanonicalForm, code: &Code) -> StructuralVerdict {
    let ctx = &form.ctx;
    let theta = ctx.theta();
    let n = ctx.n();

    let self_reciprocal = form.diagonal().iter().all(|t| t.reciprocal() == **t);

    let cond_ii = form.t34.is_zero() || {
        let alpha = (deg(&form.t33) - deg(&form.t34)) as usize;
        let e = form
            .t34
            .reciprocal()
            .mul_z_pow(alpha)
            .add(&form.t34)
            .reduce_cyclic(n);
        form.t44.divides(&e)
    };

    // z^e f* - f inside the quotient ring, for f lifted to R_theta
    let twisted = |f: &RPoly, e: i64| z_pow_times(ctx, &f.reciprocal(), e).sub(&ctx.reduce(f));
    let mut cand = RPoly::zero(theta);
    if !form.t12.is_zero() {
        let f = form.t12.lift().scale(2).embed(theta);
        cand = cand.add(&twisted(&f, deg(&form.t11) - deg(&form.t12)));
    }
    if !form.t13.is_zero() {
        let f = form.t13.lift().embed(theta).scale(ctx.k());
        cand = cand.add(&twisted(&f, deg(&form.t11) - deg(&form.t13)));
    }
    let cond_iii = code.contains(&cand);

    let cond_iv = form.t23.is_zero() || {
        let lam = ctx.tor_lambda();
        let h = form.t23.lift();
        let delta = deg(&form.t22) - deg(&form.t23);
        let q = z_pow_times_z4(n, lam, &h.reciprocal(), delta).sub(&h.reduce(n, lam));
        code.torsion().contains(&q)
    };

    verdict(vec![
        ("(i)", self_reciprocal),
        ("(ii)", cond_ii),
        ("(iii)", cond_iii),
        ("(iv)", cond_iv),
    ])
}

/// Reversibility of a beta code from its canonical pair: `l1* in C`, plus the
/// reciprocals of the torsion generators (automatic for chain torsion).
pub fn reversible_beta_structural(form: &BetaCanonicalForm, code: &Code) -> StructuralVerdict {
    let l1 = code.contains(&form.l1().reciprocal());
    let l2 = form
        .torsion_generators()
        .iter()
        .all(|g| code.contains(&g.reciprocal()));
    verdict(vec![("l1*", l1), ("l2*", l2)])
}

/// Whether `Tor(C)` is closed under word reversal.
pub fn torsion_reversibility_check(gs: &GeneratorSet) -> bool {
    Code::generate(gs).torsion().is_reversible()
}

// ---------------------------------------------------------------------------
// report

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaValues {
    pub rank: i64,
    pub log2_cardinality: i64,
    pub matches_exact: bool,
}

/// Canonical form of either class, as reported.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum CanonicalForm {
    Alpha(AlphaCanonicalForm),
    Beta(BetaCanonicalForm),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeReport {
    /// Minimal number of `R_theta`-module generators.
    pub rank: usize,
    pub log2_cardinality: usize,
    /// Closure under word reversal, decided on an additive basis.
    pub reversible: bool,
    pub structural: Option<StructuralVerdict>,
    pub membership: MembershipVerdict,
    pub torsion_reversible: bool,
    pub formula: Option<FormulaValues>,
    pub spanning_set_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divisibility: Option<OrderedMap<Outcome>>,
    #[serde(skip)]
    pub canonical: Option<CanonicalForm>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub canonical_error: Option<String>,
}

fn relation_map(rel: Vec<Relation>) -> OrderedMap<Outcome> {
    OrderedMap(
        rel.into_iter()
            .map(|r| (r.id.to_string(), r.outcome))
            .collect(),
    )
}

pub fn analyze(gs: &GeneratorSet) -> CodeReport {
    let code = Code::generate(gs);
    let rank = code.rank();
    let log2 = code.log2_size();
    let mut report = CodeReport {
        rank,
        log2_cardinality: log2,
        reversible: code.is_reversible(),
        structural: None,
        membership: reversible_by_membership(gs),
        torsion_reversible: code.torsion().is_reversible(),
        formula: None,
        spanning_set_size: None,
        divisibility: None,
        canonical: None,
        canonical_error: None,
    };
    match gs.ctx().unit_class() {
        UnitClass::Alpha => {
            let form = alpha_form_of(&code).expect("alpha class checked");
            let (r, c) = rank_cardinality_alpha(&form);
            report.formula = Some(FormulaValues {
                rank: r,
                log2_cardinality: c,
                matches_exact: r == rank as i64 && c == log2 as i64,
            });
            report.structural = Some(reversible_alpha_structural(&form, &code));
            report.divisibility = Some(relation_map(verify_divisibility(&form)));
            report.spanning_set_size = Some(rank);
            report.canonical = Some(CanonicalForm::Alpha(form));
        }
        UnitClass::Beta => match beta_form_of(&code) {
            Ok(form) => {
                if let Some((r, c)) = rank_cardinality_beta(&form) {
                    report.formula = Some(FormulaValues {
                        rank: r,
                        log2_cardinality: c,
                        matches_exact: r == rank as i64 && c == log2 as i64,
                    });
                }
                report.spanning_set_size = minimal_spanning_beta(&form).ok().map(|b| b.len());
                report.structural = Some(reversible_beta_structural(&form, &code));
                report.canonical = Some(CanonicalForm::Beta(form));
            }
            Err(e) => report.canonical_error = Some(e.to_string()),
        },
        UnitClass::NotAUnit => unreachable!("contexts only hold units"),
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::canonicalize_beta;
    use crate::ring::Theta;

    fn ctx(theta: Theta, a: u8, b: u8, n: usize) -> QuotientContext {
        QuotientContext::new(theta, RingElement::new(theta, a, b), n).unwrap()
    }

    fn gs(c: &QuotientContext, gens: &[&str]) -> GeneratorSet {
        GeneratorSet::parse(c.clone(), gens).unwrap()
    }

    #[test]
    fn whole_ring_counts() {
        for n in 1..5 {
            let c = ctx(Theta::Zero, 1, 2, n);
            let r = analyze(&gs(&c, &["1"]));
            assert_eq!((r.rank, r.log2_cardinality), (n, 4 * n));
            let f = r.formula.unwrap();
            assert_eq!((f.rank, f.log2_cardinality), (n as i64, 4 * n as i64));
            assert!(r.reversible);
            let z = analyze(&gs(&c, &[]));
            assert_eq!(z.log2_cardinality, 0);
            assert_eq!(z.formula.unwrap().log2_cardinality, 0);
        }
    }

    #[test]
    fn beta_spanning_sets() {
        let c = ctx(Theta::Zero, 3, 2, 4);
        let f = canonicalize_beta(&gs(&c, &["z-1+v", "v*z-v"])).unwrap();
        assert_eq!(minimal_spanning_beta(&f).unwrap().len(), 3);
        assert_eq!(rank_cardinality_beta(&f), Some((3, 12)));
        assert_eq!(exact_log2_beta(&f), Some(14));
        let whole = canonicalize_beta(&gs(&c, &["1"])).unwrap();
        assert_eq!(minimal_spanning_beta(&whole).unwrap().len(), 4);
        let f = canonicalize_beta(&gs(&c, &["z^2-2*z+1", "v*z-v"])).unwrap();
        assert_eq!((f.t1, f.t2()), (2, Some(1)));
        assert_eq!(minimal_spanning_beta(&f).unwrap().len(), 3);
    }

    #[test]
    fn negative_shift_exponents() {
        let c = ctx(Theta::Zero, 1, 1, 3);
        let f = crate::poly::parse_rpoly(Theta::Zero, "1 + 2*z").unwrap();
        let back = z_pow_times(&c, &z_pow_times(&c, &f, -4), 4);
        assert_eq!(back, f);
        let q = QuadPoly::from_coeffs(&[1, 2]);
        assert_eq!(z_pow_times_z4(3, 3, &z_pow_times_z4(3, 3, &q, -5), 5), q);
    }
}
