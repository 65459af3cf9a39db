//! Propositional team semantics: teams of valuations, exact evaluation,
//! whole-property enumeration, closure analysis, and projection-based
//! uniform interpolation.

mod eval;
mod format;
mod synth;


pub use eval::{closure_report, entails_prop, eval_prop, models_of, Checked, ClosureReport, Entailment};
pub use format::TeamFormatError;
pub use synth::{synthesize_fptl, uniform_interpolant_prop};

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::limits::CapExceeded;
use crate::syntax::PropName;

/// A single assignment of truth values to a finite proposition domain.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Valuation {
    bits: BTreeMap<PropName, bool>,
}

impl Valuation {
    pub fn new(bits: BTreeMap<PropName, bool>) -> Valuation {
        Valuation { bits }
    }

    pub fn domain(&self) -> impl Iterator<Item = &PropName> {
        self.bits.keys()
    }

    pub fn value(&self, p: &PropName) -> Option<bool> {
        self.bits.get(p).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PropName, bool)> {
        self.bits.iter().map(|(p, &v)| (p, v))
    }

    /// Restriction `s|Q`. Errors if `q` mentions a proposition outside the
    /// domain.
    pub fn project(&self, q: &BTreeSet<PropName>) -> Result<Valuation, EvalError> {
        let mut bits = BTreeMap::new();
        for p in q {
            match self.bits.get(p) {
                Some(&v) => {
                    bits.insert(p.clone(), v);
                }
                None => return Err(EvalError::NotInDomain(p.clone())),
            }
        }
        Ok(Valuation { bits })
    }

    /// `s[p|value]`: forces `p` to `value`, extending the domain if needed.
    pub fn substitute_const(&self, p: &PropName, value: bool) -> Valuation {
        let mut bits = self.bits.clone();
        bits.insert(p.clone(), value);
        Valuation { bits }
    }
}

/// A team: a set of valuations sharing one explicit proposition domain.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Team {
    domain: BTreeSet<PropName>,
    members: BTreeSet<Valuation>,
}

impl Team {
    pub fn new(
        domain: BTreeSet<PropName>,
        members: impl IntoIterator<Item = Valuation>,
    ) -> Result<Team, EvalError> {
        let members: BTreeSet<Valuation> = members.into_iter().collect();
        for m in &members {
            let mdom: BTreeSet<&PropName> = m.domain().collect();
            if mdom.len() != domain.len() || !domain.iter().all(|p| mdom.contains(p)) {
                return Err(EvalError::MemberDomainMismatch);
            }
        }
        Ok(Team { domain, members })
    }

    pub fn empty(domain: BTreeSet<PropName>) -> Team {
        Team { domain, members: BTreeSet::new() }
    }

    pub fn domain(&self) -> &BTreeSet<PropName> {
        &self.domain
    }

    pub fn members(&self) -> impl Iterator<Item = &Valuation> {
        self.members.iter()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: &Valuation) -> bool {
        self.members.contains(v)
    }

    pub fn is_subteam_of(&self, other: &Team) -> bool {
        self.domain == other.domain && self.members.is_subset(&other.members)
    }

    /// Projection `X|Q = { s|Q : s in X }`; members may merge.
    pub fn project(&self, q: &BTreeSet<PropName>) -> Result<Team, EvalError> {
        for p in q {
            if !self.domain.contains(p) {
                return Err(EvalError::NotInDomain(p.clone()));
            }
        }
        let members = self
            .members
            .iter()
            .map(|s| s.project(q))
            .collect::<Result<BTreeSet<_>, _>>()?;
        Ok(Team { domain: q.clone(), members })
    }

    /// `X[p|value]`: substitutes the constant in every member; members may
    /// merge, and the domain is extended by `p` if absent.
    pub fn substitute_const(&self, p: &PropName, value: bool) -> Team {
        let mut domain = self.domain.clone();
        domain.insert(p.clone());
        let members = self
            .members
            .iter()
            .map(|s| s.substitute_const(p, value))
            .collect();
        Team { domain, members }
    }

    /// Widens the domain. Only the empty team can acquire new propositions;
    /// a nonempty team would need values for them.
    pub fn extend_domain(&self, extra: &BTreeSet<PropName>) -> Result<Team, EvalError> {
        if extra.iter().all(|p| self.domain.contains(p)) {
            return Ok(self.clone());
        }
        if !self.members.is_empty() {
            let missing = extra.iter().find(|p| !self.domain.contains(*p)).unwrap();
            return Err(EvalError::MissingProp(missing.clone()));
        }
        let mut domain = self.domain.clone();
        domain.extend(extra.iter().cloned());
        Ok(Team { domain, members: BTreeSet::new() })
    }
}

/// An extensional team property: a set of teams over one domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TeamProperty {
    domain: BTreeSet<PropName>,
    teams: BTreeSet<Team>,
}

impl TeamProperty {
    pub fn new(
        domain: BTreeSet<PropName>,
        teams: impl IntoIterator<Item = Team>,
    ) -> Result<TeamProperty, EvalError> {
        let teams: BTreeSet<Team> = teams.into_iter().collect();
        for t in &teams {
            if t.domain() != &domain {
                return Err(EvalError::MemberDomainMismatch);
            }
        }
        Ok(TeamProperty { domain, teams })
    }

    pub fn domain(&self) -> &BTreeSet<PropName> {
        &self.domain
    }

    pub fn teams(&self) -> impl Iterator<Item = &Team> {
        self.teams.iter()
    }

    pub fn len(&self) -> usize {
        self.teams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.teams.is_empty()
    }

    pub fn contains(&self, t: &Team) -> bool {
        self.teams.contains(t)
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("modal operator in a propositional evaluation")]
    ModalNode,
    #[error("bisimulation quantifier not allowed in direct evaluation")]
    QuantifierNode,
    #[error("team connective in a classical context")]
    NonClassicalNode,
    #[error("team domain is missing proposition '{0}'")]
    MissingProp(PropName),
    #[error("proposition '{0}' is not in the team domain")]
    NotInDomain(PropName),
    #[error("team members must share the team domain")]
    MemberDomainMismatch,
    #[error("kept set contains '{0}' which is not in the formula language")]
    KeepNotInLanguage(PropName),
    #[error(transparent)]
    Cap(#[from] CapExceeded),
}
