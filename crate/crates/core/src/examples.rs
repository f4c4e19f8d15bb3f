//! The four worked examples used as a regression corpus.

use serde::Serialize;

use crate::analysis::{analyze, OrderedMap};
use crate::canonical::Outcome;
use crate::canonical::{Code, GeneratorSet};
use crate::error::Result;
use crate::poly::QuotientContext;
use crate::ring::{parse_element, Theta};

#[derive(Debug, Clone)]
pub struct WorkedExample {
    pub id: &'static str,
    pub theta: Theta,
    pub unit: &'static str,
    pub length: usize,
    pub gens: &'static [&'static str],
    pub expected_reversible: bool,
    /// Structural condition the source names as the failing one.
    pub expected_failure: Option<&'static str>,
    /// A second reading of the generators whose ideal is compared with the first.
    pub alternative: Option<&'static [&'static str]>,
}

pub fn worked_examples() -> Vec<WorkedExample> {
    vec![
        WorkedExample {
            id: "example-1",
            theta: Theta::Zero,
            unit: "1+v",
            length: 3,
            gens: &["v*z + v"],
            expected_reversible: true,
            expected_failure: None,
            alternative: None,
        },
        WorkedExample {
            id: "example-2",
            theta: Theta::Zero,
            unit: "1+2v",
            length: 8,
            gens: &[
                "3 + z^4 + v*z + v",
                "2 + 2*z^2 + v*z - v",
                "v + v*z^4 + 2v*z - 2v",
                "2v + 2v*z^2",
            ],
            expected_reversible: false,
            expected_failure: Some("(iv)"),
            alternative: None,
        },
        WorkedExample {
            id: "example-3",
            theta: Theta::Zero,
            unit: "3+2v",
            length: 4,
            gens: &["z - 1 + v", "v*z - v"],
            expected_reversible: true,
            expected_failure: None,
            alternative: Some(&["z - 1 + v", "z - 1"]),
        },
        WorkedExample {
            id: "example-4",
            theta: Theta::One,
            unit: "1+2v",
            length: 3,
            gens: &["z^6 - 2*z^3 + 1 + (1+v)*z^2 + (2+2v)*z", "z^3 - 1"],
            expected_reversible: false,
            expected_failure: None,
            alternative: Some(&[
                "z^6 - 2*z^3 + 1 + (1+v)*z^2 + (2+2v)*z",
                "(1+v)*z^3 - 1 - v",
            ]),
        },
    ]
}

#[derive(Debug, Clone, Serialize)]
pub struct AlternativeReading {
    pub generators: Vec<String>,
    pub same_code: bool,
    pub log2_cardinality: usize,
    pub reversible: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExampleOutcome {
    pub id: &'static str,
    pub theta: Theta,
    pub unit: &'static str,
    pub length: usize,
    pub generators: Vec<String>,
    pub expected_reversible: bool,
    pub reversible: bool,
    pub structural_reversible: Option<bool>,
    pub membership_reversible: bool,
    pub conditions: Option<OrderedMap<Outcome>>,
    pub expected_failure: Option<&'static str>,
    pub log2_cardinality: usize,
    pub alternative: Option<AlternativeReading>,
    pub matches: bool,
}

impl WorkedExample {
    pub fn context(&self) -> Result<QuotientContext> {
        QuotientContext::new(
            self.theta,
            parse_element(self.theta, self.unit)?,
            self.length,
        )
    }

    pub fn generator_set(&self) -> Result<GeneratorSet> {
        GeneratorSet::parse(self.context()?, self.gens)
    }

    pub fn run(&self) -> Result<ExampleOutcome> {
        let gs = self.generator_set()?;
        let report = analyze(&gs);
        let structural = report.structural.as_ref();
        let conditions = structural.map(|s| s.conditions.clone());
        let failure_ok = match self.expected_failure {
            None => true,
            Some(id) => conditions.as_ref().and_then(|c| c.get(id)) == Some(&Outcome::Fail),
        };
        let alternative = match self.alternative {
            None => None,
            Some(alt) => {
                let alt_gs = GeneratorSet::parse(self.context()?, alt)?;
                let a = Code::generate(&alt_gs);
                Some(AlternativeReading {
                    generators: alt.iter().map(|s| s.to_string()).collect(),
                    same_code: a == Code::generate(&gs),
                    log2_cardinality: a.log2_size(),
                    reversible: a.is_reversible(),
                })
            }
        };
        Ok(ExampleOutcome {
            id: self.id,
            theta: self.theta,
            unit: self.unit,
            length: self.length,
            generators: self.gens.iter().map(|s| s.to_string()).collect(),
            expected_reversible: self.expected_reversible,
            reversible: report.reversible,
            structural_reversible: structural.map(|s| s.reversible),
            membership_reversible: report.membership.reversible,
            conditions,
            expected_failure: self.expected_failure,
            log2_cardinality: report.log2_cardinality,
            alternative,
            matches: report.reversible == self.expected_reversible && failure_ok,
        })
    }
}

pub fn run_worked_examples() -> Result<Vec<ExampleOutcome>> {
    worked_examples().iter().map(|e| e.run()).collect()
}
