//! Command-line front end. `run` is the whole program minus process plumbing.

use std::io::Write;

use clap::{ArgAction, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::analysis::{analyze, CanonicalForm, CodeReport};
use crate::canonical::{
    alpha_form_of, beta_form_of, AlphaCanonicalForm, BetaCanonicalForm, BetaTorsion, Code,
    GeneratorSet, Outcome,
};
use crate::error::Error;
use crate::examples::run_worked_examples;
use crate::oracle::{
    enumerate_all_ideals, enumerate_ideal_bounded, oracle_rank, oracle_reversible,
    DEFAULT_MAX_WORDS,
};
use crate::poly::{QuotientContext, RPoly, TermOrder};
use crate::ring::{classify_unit, parse_element, units, Theta, UnitClass};

pub const EXIT_PARSE: i32 = 1;
pub const EXIT_NOT_A_UNIT: i32 = 2;
pub const EXIT_SIZE_LIMIT: i32 = 3;
pub const EXIT_EXAMPLE_MISMATCH: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "rtheta",
    version,
    about = "Constacyclic codes over Z4 + vZ4: canonical forms, counts, reversibility"
)]
pub struct Cli {
    /// v^2 for the coefficient ring: 0, 1 or v
    #[arg(long, global = true)]
    pub theta: Option<String>,
    /// The constant u of z^n - u, e.g. 1+2v
    #[arg(long, global = true)]
    pub unit: Option<String>,
    /// Code length n
    #[arg(long, global = true)]
    pub length: Option<String>,
    /// Generator polynomials; repeat the flag or separate with commas
    #[arg(long = "gens", global = true, action = ArgAction::Append)]
    pub gens: Vec<String>,
    /// Human-readable text instead of JSON
    #[arg(long, global = true)]
    pub pretty: bool,
    /// List every element (enumerate)
    #[arg(long = "dump-elements", global = true)]
    pub dump_elements: bool,
    /// Oracle bound on the ambient word count 16^n
    #[arg(long = "max-size", global = true)]
    pub max_size: Option<u64>,
    /// Print polynomials from the highest degree down
    #[arg(long, global = true)]
    pub descending: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Canonical generators
    Canonicalize,
    /// Rank, cardinality, reversibility and structural checks
    Analyze,
    /// Reversibility verdict with per-condition breakdown
    Reversible,
    /// Brute-force element count
    Enumerate,
    /// Compare structural results with brute force on every ideal
    Verify,
    /// Run the worked examples
    Examples,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotAUnit(_) => EXIT_NOT_A_UNIT,
            Error::SizeLimitExceeded { .. } => EXIT_SIZE_LIMIT,
            _ => EXIT_PARSE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_PARSE,
        message: message.into(),
    }
}

struct Job<'a> {
    cli: &'a Cli,
    order: TermOrder,
}

impl Job<'_> {
    fn text(&self, f: &RPoly) -> String {
        f.to_text(self.order)
    }

    fn theta(&self) -> Result<Option<Theta>, Failure> {
        self.cli
            .theta
            .as_deref()
            .map(|t| t.parse::<Theta>().map_err(Failure::from))
            .transpose()
    }

    fn length(&self) -> Result<Option<usize>, Failure> {
        match self.cli.length.as_deref() {
            None => Ok(None),
            Some(s) => match s.trim().parse::<usize>() {
                Ok(0) | Err(_) => Err(usage(format!(
                    "parse error at `{s}`: length must be a positive integer"
                ))),
                Ok(n) => Ok(Some(n)),
            },
        }
    }

    fn context(&self) -> Result<QuotientContext, Failure> {
        let theta = self.theta()?.ok_or_else(|| usage("missing --theta"))?;
        let unit_text = self
            .cli
            .unit
            .as_deref()
            .ok_or_else(|| usage("missing --unit"))?;
        let n = self.length()?.ok_or_else(|| usage("missing --length"))?;
        let unit = parse_element(theta, unit_text)?;
        Ok(QuotientContext::new(theta, unit, n)?)
    }

    fn generator_set(&self) -> Result<GeneratorSet, Failure> {
        let ctx = self.context()?;
        let texts: Vec<&str> = self
            .cli
            .gens
            .iter()
            .flat_map(|g| g.split(','))
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        Ok(GeneratorSet::parse(ctx, &texts)?)
    }
}

fn header(ctx: &QuotientContext) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("theta".into(), json!(ctx.theta()));
    m.insert("unit".into(), json!(ctx.unit().to_string()));
    m.insert("length".into(), json!(ctx.n()));
    m.insert("class".into(), json!(ctx.unit_class()));
    m
}

fn alpha_json(job: &Job, f: &AlphaCanonicalForm) -> Map<String, Value> {
    let mut m = Map::new();
    let fields = [
        ("t11", &f.t11),
        ("t12", &f.t12),
        ("t13", &f.t13),
        ("t14", &f.t14),
        ("t22", &f.t22),
        ("t23", &f.t23),
        ("t24", &f.t24),
        ("t33", &f.t33),
        ("t34", &f.t34),
        ("t44", &f.t44),
    ];
    for (k, v) in fields {
        m.insert(k.into(), json!(v.to_text(job.order)));
    }
    m.insert(
        "generators".into(),
        json!(f
            .generators()
            .iter()
            .map(|g| job.text(g))
            .collect::<Vec<_>>()),
    );
    m
}

fn beta_json(job: &Job, f: &BetaCanonicalForm) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("n_odd".into(), json!(f.ctx.n_odd_part()));
    m.insert("s".into(), json!(f.ctx.s()));
    m.insert("t1".into(), json!(f.t1));
    m.insert("t2".into(), json!(f.t2()));
    m.insert("t".into(), json!(f.t.to_text(job.order)));
    if let BetaTorsion::Cyclic(c) = &f.torsion {
        m.insert(
            "torsion".into(),
            json!({"kind": "cyclic", "g": c.g.to_text(job.order), "p": c.p.to_text(job.order), "a": c.a.to_text(job.order)}),
        );
    }
    m.insert(
        "generators".into(),
        json!(f
            .generators()
            .iter()
            .map(|g| job.text(g))
            .collect::<Vec<_>>()),
    );
    m
}

fn form_json(job: &Job, form: &CanonicalForm) -> Map<String, Value> {
    match form {
        CanonicalForm::Alpha(f) => alpha_json(job, f),
        CanonicalForm::Beta(f) => beta_json(job, f),
    }
}

fn canonicalize(job: &Job) -> Result<Value, Failure> {
    let gs = job.generator_set()?;
    let code = Code::generate(&gs);
    let mut m = header(gs.ctx());
    let form = match gs.ctx().unit_class() {
        UnitClass::Alpha => alpha_form_of(&code).map(CanonicalForm::Alpha),
        _ => beta_form_of(&code).map(CanonicalForm::Beta),
    };
    match form {
        Ok(f) => m.extend(form_json(job, &f)),
        Err(e) => {
            m.insert("canonical_form".into(), Value::Null);
            m.insert("reason".into(), json!(e.to_string()));
        }
    }
    Ok(Value::Object(m))
}

fn conditions_json(report: &CodeReport) -> Value {
    report.structural.as_ref().map_or(Value::Null, |s| {
        serde_json::to_value(&s.conditions).expect("serializable")
    })
}

fn analysis_fields(job: &Job, report: &CodeReport, m: &mut Map<String, Value>) {
    m.insert("reversible".into(), json!(report.reversible));
    m.insert("conditions".into(), conditions_json(report));
    m.insert(
        "structural_reversible".into(),
        json!(report.structural.as_ref().map(|s| s.reversible)),
    );
    m.insert(
        "membership".into(),
        json!({
            "reversible": report.membership.reversible,
            "witness": report.membership.witness.as_ref().map(|w| job.text(w)),
        }),
    );
    m.insert(
        "torsion_reversible".into(),
        json!(report.torsion_reversible),
    );
}

fn analyze_cmd(job: &Job) -> Result<Value, Failure> {
    let gs = job.generator_set()?;
    let report = analyze(&gs);
    let mut m = header(gs.ctx());
    m.insert("rank".into(), json!(report.rank));
    m.insert("log2_cardinality".into(), json!(report.log2_cardinality));
    analysis_fields(job, &report, &mut m);
    m.insert(
        "formula".into(),
        serde_json::to_value(&report.formula).expect("serializable"),
    );
    m.insert("spanning_set_size".into(), json!(report.spanning_set_size));
    if let Some(d) = &report.divisibility {
        m.insert(
            "divisibility".into(),
            serde_json::to_value(d).expect("serializable"),
        );
    }
    match &report.canonical {
        Some(f) => {
            m.insert("canonical".into(), Value::Object(form_json(job, f)));
        }
        None => {
            m.insert("canonical".into(), Value::Null);
            m.insert("reason".into(), json!(report.canonical_error));
        }
    }
    Ok(Value::Object(m))
}

fn reversible_cmd(job: &Job) -> Result<Value, Failure> {
    let gs = job.generator_set()?;
    let report = analyze(&gs);
    let mut m = header(gs.ctx());
    analysis_fields(job, &report, &mut m);
    let code = Code::generate(&gs);
    m.insert(
        "reversal_witness".into(),
        json!(code.reversal_witness().map(|w| job.text(&w))),
    );
    Ok(Value::Object(m))
}

fn enumerate_cmd(job: &Job) -> Result<Value, Failure> {
    let gs = job.generator_set()?;
    let cs = enumerate_ideal_bounded(&gs, job.cli.max_size.unwrap_or(DEFAULT_MAX_WORDS))?;
    let mut m = header(gs.ctx());
    m.insert("count".into(), json!(cs.len()));
    m.insert("log2_count".into(), json!(cs.len().trailing_zeros()));
    m.insert("reversible".into(), json!(oracle_reversible(&cs)));
    if job.cli.dump_elements {
        m.insert(
            "elements".into(),
            json!(cs
                .elements()
                .iter()
                .map(|e| job.text(e))
                .collect::<Vec<_>>()),
        );
    }
    Ok(Value::Object(m))
}

#[derive(Default)]
struct Tally {
    checked: usize,
    mismatches: usize,
}

impl Tally {
    fn record(&mut self, ok: bool) {
        self.checked += 1;
        if !ok {
            self.mismatches += 1;
        }
    }

    fn json(&self) -> Value {
        json!({"checked": self.checked, "mismatches": self.mismatches})
    }
}

fn verify_cmd(job: &Job) -> Result<Value, Failure> {
    let thetas = match job.theta()? {
        Some(t) => vec![t],
        None => Theta::ALL.to_vec(),
    };
    let lengths = match job.length()? {
        Some(n) => vec![n],
        None => vec![1, 2],
    };
    let mut contexts = Vec::new();
    for &theta in &thetas {
        let us = match job.cli.unit.as_deref() {
            Some(u) => vec![parse_element(theta, u)?],
            None => units(theta),
        };
        for u in us {
            if classify_unit(&u) == UnitClass::NotAUnit {
                return Err(Error::NotAUnit(u.to_string()).into());
            }
            for &n in &lengths {
                contexts.push(QuotientContext::new(theta, u, n)?);
            }
        }
    }
    let names = [
        "cardinality",
        "rank",
        "canonical_regenerates",
        "reversible",
        "structural_reversible",
        "formula_cardinality",
        "formula_rank",
        "divisibility",
    ];
    let mut tallies: Vec<Tally> = names.iter().map(|_| Tally::default()).collect();
    let mut ideals = 0;
    let mut no_form = 0;
    for ctx in &contexts {
        for cs in enumerate_all_ideals(ctx)? {
            ideals += 1;
            let gens = cs.elements();
            let code = Code::from_polys(ctx.clone(), &gens);
            let gs = GeneratorSet::new(ctx.clone(), gens).expect("elements share the context");
            let report = analyze(&gs);
            let oracle_rev = oracle_reversible(&cs);
            tallies[0].record(1usize << report.log2_cardinality == cs.len());
            tallies[1].record(report.rank == oracle_rank(&cs));
            let generators = match &report.canonical {
                Some(CanonicalForm::Alpha(f)) => Some(f.generators()),
                Some(CanonicalForm::Beta(f)) => Some(f.generators()),
                None => None,
            };
            match generators {
                Some(g) => tallies[2].record(Code::from_polys(ctx.clone(), &g) == code),
                None => no_form += 1,
            }
            tallies[3].record(report.reversible == oracle_rev);
            if let Some(s) = &report.structural {
                tallies[4].record(s.reversible == oracle_rev);
            }
            if let Some(f) = &report.formula {
                tallies[5]
                    .record(f.log2_cardinality >= 0 && 1usize << f.log2_cardinality == cs.len());
                tallies[6].record(f.rank == report.rank as i64);
            }
            if let Some(d) = &report.divisibility {
                tallies[7].record(d.0.iter().all(|(_, o)| *o != Outcome::Fail));
            }
        }
    }
    let mut checks = Map::new();
    for (name, t) in names.iter().zip(&tallies) {
        checks.insert(name.to_string(), t.json());
    }
    Ok(json!({
        "contexts": contexts.len(),
        "ideals_checked": ideals,
        "without_canonical_form": no_form,
        "checks": checks,
    }))
}

fn examples_cmd() -> Result<(Value, bool), Failure> {
    let outcomes = run_worked_examples()?;
    let all = outcomes.iter().all(|o| o.matches);
    Ok((json!({"examples": outcomes, "all_match": all}), all))
}

fn render_pretty(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match x {
                    Value::Object(_) | Value::Array(_) if !is_flat(x) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_pretty(x, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(x))),
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if is_flat(x) {
                    out.push_str(&format!("{pad}- {}\n", scalar(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render_pretty(x, indent + 1, out);
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v))),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Object(m) => m.is_empty(),
        Value::Array(a) => a.iter().all(|x| !x.is_object() && !x.is_array()),
        _ => true,
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// Runs the program on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_PARSE,
            };
            let target: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let job = Job {
        cli: &cli,
        order: if cli.descending {
            TermOrder::Descending
        } else {
            TermOrder::Ascending
        },
    };
    let result = match cli.command {
        Command::Canonicalize => canonicalize(&job).map(|v| (v, true)),
        Command::Analyze => analyze_cmd(&job).map(|v| (v, true)),
        Command::Reversible => reversible_cmd(&job).map(|v| (v, true)),
        Command::Enumerate => enumerate_cmd(&job).map(|v| (v, true)),
        Command::Verify => verify_cmd(&job).map(|v| (v, true)),
        Command::Examples => examples_cmd(),
    };
    match result {
        Ok((value, ok)) => {
            let text = if cli.pretty {
                let mut s = String::new();
                render_pretty(&value, 0, &mut s);
                s
            } else {
                format!("{}\n", serde_json::to_string(&value).expect("serializable"))
            };
            let _ = out.write_all(text.as_bytes());
            if ok {
                0
            } else {
                let _ = writeln!(err, "some example verdicts differ from the expected ones");
                EXIT_EXAMPLE_MISMATCH
            }
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(
            std::iter::once("rtheta").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn missing_context_flags_are_parse_errors() {
        let (code, out, err) = call(&["--theta", "0", "--length", "2", "analyze"]);
        assert_eq!(code, EXIT_PARSE);
        assert!(out.is_empty());
        assert!(err.contains("--unit"));
        assert_eq!(
            call(&["--theta", "0", "--unit", "1", "--length", "0", "analyze"]).0,
            EXIT_PARSE
        );
    }

    #[test]
    fn descending_flag_changes_term_order() {
        let base = [
            "--theta",
            "0",
            "--unit",
            "1",
            "--length",
            "3",
            "--gens",
            "1+z",
            "canonicalize",
        ];
        let (_, asc, _) = call(&base);
        let (_, desc, _) = call(&[&base[..], &["--descending"]].concat());
        assert!(asc.contains("\"1 + z\""));
        assert!(desc.contains("\"z + 1\""));
    }

    #[test]
    fn pretty_rendering_nests_objects() {
        let mut s = String::new();
        render_pretty(&json!({"a": 1, "b": {"c": [1, 2]}, "d": null}), 0, &mut s);
        assert_eq!(s, "a: 1\nb:\n  c: [1, 2]\nd: -\n");
    }
}
