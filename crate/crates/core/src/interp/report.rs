//! Interpolation reports: what was computed, in which mode, and the
//! verdicts of the independent verification checks.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::Mode;
use crate::syntax::{render, Formula, PropName};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// The premise does not entail this consequence, so the uniform
    /// interpolant owes it nothing.
    Vacuous,
    /// The consequence shares propositions with the premise outside the
    /// kept set; the clause does not apply.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub clause: String,
    pub verdict: Verdict,
    /// World bound of the model enumeration backing this verdict; absent
    /// for syntactic checks and exact propositional entailment.
    pub bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Resource statistics of an interpolation run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub types: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub team_classes: Option<u64>,
    pub team_models_checked: u64,
}

impl Stats {
    pub(crate) fn absorb(&mut self, other: &Stats) {
        self.types = match (self.types, other.types) {
            (a, None) => a,
            (None, b) => b,
            (Some(a), Some(b)) => Some(a.max(b)),
        };
        self.team_classes = match (self.team_classes, other.team_classes) {
            (a, None) => a,
            (None, b) => b,
            (Some(a), Some(b)) => Some(a.max(b)),
        };
        self.team_models_checked += other.team_models_checked;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InterpReport {
    pub mode: String,
    pub input: String,
    pub kept: Vec<String>,
    pub result: String,
    pub checks: Vec<CheckEntry>,
    pub stats: Stats,
}

impl InterpReport {
    pub(crate) fn new(
        input: &Formula,
        kept: &BTreeSet<PropName>,
        result: &Formula,
        mode: Mode,
    ) -> InterpReport {
        InterpReport {
            mode: match mode {
                Mode::Exact => "exact".into(),
                Mode::Bounded => "bounded".into(),
            },
            input: render(input),
            kept: kept.iter().map(|p| p.as_str().to_string()).collect(),
            result: render(result),
            checks: Vec::new(),
            stats: Stats::default(),
        }
    }

    pub(crate) fn push_language_check(&mut self, theta: &Formula, keep: &BTreeSet<PropName>) {
        let outside = theta.free_props().into_iter().find(|p| !keep.contains(p));
        self.checks.push(match outside {
            None => CheckEntry {
                clause: "interpolant language within kept set".into(),
                verdict: Verdict::Pass,
                bound: None,
                witness: None,
            },
            Some(p) => CheckEntry {
                clause: "interpolant language within kept set".into(),
                verdict: Verdict::Fail,
                bound: None,
                witness: Some(p.as_str().to_string()),
            },
        });
    }

    /// True when no check failed (vacuous and skipped entries do not
    /// count as failures).
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

impl fmt::Display for InterpReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mode: {}", self.mode)?;
        writeln!(f, "kept: {}", self.kept.join(" "))?;
        writeln!(f, "result: {}", self.result)?;
        for c in &self.checks {
            write!(f, "check [{}]: ", c.clause)?;
            match c.verdict {
                Verdict::Pass => write!(f, "pass")?,
                Verdict::Fail => write!(f, "FAIL")?,
                Verdict::Vacuous => write!(f, "vacuous")?,
                Verdict::Skipped => write!(f, "skipped (common language outside kept set)")?,
            }
            if let Some(b) = c.bound {
                write!(f, " (checked up to {b} worlds)")?;
            }
            if let Some(w) = &c.witness {
                write!(f, " witness: {w}")?;
            }
            writeln!(f)?;
        }
        write!(
            f,
            "stats: {} team models checked",
            self.stats.team_models_checked
        )?;
        if let Some(t) = self.stats.types {
            write!(f, ", {t} types")?;
        }
        if let Some(c) = self.stats.team_classes {
            write!(f, ", {c} team classes")?;
        }
        Ok(())
    }
}
