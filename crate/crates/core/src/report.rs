//! Per-axiom outcomes and their JSON reports.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    Unknown,
    Vacuous,
    ExpectedCounterexample,
}

/// Outcome of one axiom on one instance.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub outcome: Outcome,
    pub witness: Option<Value>,
}

impl Check {
    pub fn pass() -> Self {
        Check { outcome: Outcome::Pass, witness: None }
    }

    pub fn vacuous() -> Self {
        Check { outcome: Outcome::Vacuous, witness: None }
    }

    pub fn unknown(witness: Value) -> Self {
        Check { outcome: Outcome::Unknown, witness: Some(witness) }
    }

    pub fn fail(witness: Value) -> Self {
        Check { outcome: Outcome::Fail, witness: Some(witness) }
    }

    pub fn from_bool(ok: bool, witness: impl FnOnce() -> Value) -> Self {
        if ok {
            Check::pass()
        } else {
            Check::fail(witness())
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub unknown: usize,
    pub vacuous: usize,
    #[serde(rename = "expected-counterexample")]
    pub expected_counterexample: usize,
}

impl Counts {
    pub fn total(&self) -> usize {
        self.pass + self.fail + self.unknown + self.vacuous + self.expected_counterexample
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomResult {
    pub axiom: String,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Value>,
    pub counts: Counts,
}

impl AxiomResult {
    /// Fold per-instance checks: any failure fails, then any unknown, then
    /// pass unless every instance was vacuous. The first failing (or, failing
    /// that, unknown) witness is kept.
    pub fn aggregate(axiom: &str, checks: impl IntoIterator<Item = Check>) -> Self {
        let mut counts = Counts::default();
        let mut first_fail = None;
        let mut first_unknown = None;
        let mut first_expected = None;
        for c in checks {
            match c.outcome {
                Outcome::Pass => counts.pass += 1,
                Outcome::Vacuous => counts.vacuous += 1,
                Outcome::Fail => {
                    counts.fail += 1;
                    first_fail = first_fail.or(c.witness);
                }
                Outcome::Unknown => {
                    counts.unknown += 1;
                    first_unknown = first_unknown.or(c.witness);
                }
                Outcome::ExpectedCounterexample => {
                    counts.expected_counterexample += 1;
                    first_expected = first_expected.or(c.witness);
                }
            }
        }
        let (outcome, witness) = if counts.fail > 0 {
            (Outcome::Fail, first_fail)
        } else if counts.expected_counterexample > 0 {
            (Outcome::ExpectedCounterexample, first_expected)
        } else if counts.unknown > 0 {
            (Outcome::Unknown, first_unknown)
        } else if counts.pass == 0 && counts.vacuous > 0 {
            (Outcome::Vacuous, None)
        } else {
            (Outcome::Pass, None)
        };
        AxiomResult { axiom: axiom.to_string(), outcome, witness, counts }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub suite: String,
    pub space: String,
    pub seed: u64,
    pub trials: usize,
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn has_failures(&self) -> bool {
        self.results.iter().any(|r| r.outcome == Outcome::Fail)
    }

    pub fn result(&self, axiom: &str) -> Option<&AxiomResult> {
        self.results.iter().find(|r| r.axiom == axiom)
    }

    /// Drop witnesses, for `--quiet` output.
    pub fn strip_witnesses(&mut self) {
        for r in &mut self.results {
            r.witness = None;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failure_dominates() {
        let r = AxiomResult::aggregate(
            "X",
            vec![Check::pass(), Check::unknown(Value::Null), Check::fail(Value::from(3)), Check::vacuous()],
        );
        assert_eq!(r.outcome, Outcome::Fail);
        assert_eq!(r.witness, Some(Value::from(3)));
        assert_eq!(r.counts.total(), 4);
    }

    #[test]
    fn all_vacuous_is_vacuous() {
        let r = AxiomResult::aggregate("X", vec![Check::vacuous(), Check::vacuous()]);
        assert_eq!(r.outcome, Outcome::Vacuous);
        let r = AxiomResult::aggregate("X", vec![Check::vacuous(), Check::pass()]);
        assert_eq!(r.outcome, Outcome::Pass);
    }
}
