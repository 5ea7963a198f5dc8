//! Cross product of rules, instances and axioms.

use crate::games::WorthFunction;
use crate::net::Network;
use crate::values::AllocationRule;

use super::audit::{audit, AuditReport, Axiom, PermutationChoice, EXHAUSTIVE_SYMMETRY_PLAYERS};

/// A named worth function and network.
#[derive(Clone, Debug)]
pub struct SuiteCase {
    pub name: String,
    pub w: WorthFunction,
    pub g: Network,
}

/// Which audits count as expected to pass.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expectation {
    /// Only the axioms that characterize the rule: CE, BC and symmetry for
    /// `bce`; CE, F and symmetry for `fce` and `fce-direct`.
    Characterized,
    /// Every requested audit.
    AllRequested,
}

pub fn characterizes(rule: &str, axiom: Axiom) -> bool {
    match rule {
        "bce" => matches!(axiom, Axiom::Ce | Axiom::Bc | Axiom::Symmetry),
        "fce" | "fce-direct" => matches!(axiom, Axiom::Ce | Axiom::F | Axiom::Symmetry),
        _ => false,
    }
}

#[derive(Clone, Debug)]
pub struct SuiteEntry {
    pub rule: String,
    pub case: String,
    pub network: Network,
    pub axiom: Axiom,
    pub expected: bool,
    /// The audit, or the error that stopped it.
    pub outcome: Result<AuditReport, String>,
}

impl SuiteEntry {
    /// An expected-pass audit with violations or an error.
    pub fn is_failure(&self) -> bool {
        match &self.outcome {
            Ok(report) => self.expected && !report.holds(),
            Err(_) => true,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub entries: Vec<SuiteEntry>,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &SuiteEntry> {
        self.entries.iter().filter(|e| e.is_failure())
    }

    /// `0` when every expected-pass audit passed, `1` otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.failures().next().is_some() {
            1
        } else {
            0
        }
    }

    /// Entries for one rule and axiom.
    pub fn select<'a>(&'a self, rule: &'a str, axiom: Axiom) -> impl Iterator<Item = &'a SuiteEntry> {
        self.entries
            .iter()
            .filter(move |e| e.rule == rule && e.axiom == axiom)
    }
}

/// Audits every rule on every case for every axiom, in input order.
///
/// Symmetry uses every permutation up to six players and `sampled` above that.
pub fn run_suite(
    rules: &[&dyn AllocationRule],
    cases: &[SuiteCase],
    axioms: &[Axiom],
    sampled: &PermutationChoice,
    expectation: Expectation,
) -> SuiteReport {
    let mut report = SuiteReport::default();
    for rule in rules {
        for case in cases {
            let symmetry = if case.g.players() <= EXHAUSTIVE_SYMMETRY_PLAYERS {
                PermutationChoice::All
            } else {
                sampled.clone()
            };
            for &axiom in axioms {
                let outcome = audit(*rule, &case.w, &case.g, axiom, &symmetry)
                    .map_err(|e| e.to_string());
                report.entries.push(SuiteEntry {
                    rule: rule.name().to_string(),
                    case: case.name.clone(),
                    network: case.g,
                    axiom,
                    expected: match expectation {
                        Expectation::Characterized => characterizes(rule.name(), axiom),
                        Expectation::AllRequested => true,
                    },
                    outcome,
                });
            }
        }
    }
    report
}
