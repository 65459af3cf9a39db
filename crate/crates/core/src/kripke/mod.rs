//! Kripke models, classical (singleton) satisfaction, and modal team
//! semantics including the dependence, inclusion, and independence atoms.

pub mod enumerate;
mod eval;
mod io;

pub use eval::{eval_singleton, eval_team, eval_team_modal, EvalSession};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::limits::CapExceeded;
use crate::syntax::PropName;

/// World identifier; plain strings, compared by value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WorldId(String);

impl WorldId {
    pub fn new(id: impl Into<String>) -> WorldId {
        WorldId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for WorldId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A finite labeled directed graph `(W, R, V)`. Propositions absent from a
/// world's label set are false there.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct KripkeModel {
    worlds: BTreeSet<WorldId>,
    edges: BTreeSet<(WorldId, WorldId)>,
    labels: BTreeMap<WorldId, BTreeSet<PropName>>,
}

impl KripkeModel {
    /// Builds a model. Missing label entries default to the empty set;
    /// edges and labels must reference declared worlds.
    pub fn new(
        worlds: BTreeSet<WorldId>,
        edges: BTreeSet<(WorldId, WorldId)>,
        labels: BTreeMap<WorldId, BTreeSet<PropName>>,
    ) -> Result<KripkeModel, KripkeError> {
        for (s, t) in &edges {
            for w in [s, t] {
                if !worlds.contains(w) {
                    return Err(KripkeError::EdgeEndpointMissing(w.clone()));
                }
            }
        }
        for w in labels.keys() {
            if !worlds.contains(w) {
                return Err(KripkeError::LabelForUnknownWorld(w.clone()));
            }
        }
        let mut labels = labels;
        for w in &worlds {
            labels.entry(w.clone()).or_default();
        }
        Ok(KripkeModel { worlds, edges, labels })
    }

    pub fn worlds(&self) -> impl Iterator<Item = &WorldId> {
        self.worlds.iter()
    }

    pub fn world_count(&self) -> usize {
        self.worlds.len()
    }

    pub fn has_world(&self, w: &WorldId) -> bool {
        self.worlds.contains(w)
    }

    pub fn edges(&self) -> impl Iterator<Item = &(WorldId, WorldId)> {
        self.edges.iter()
    }

    pub fn has_edge(&self, from: &WorldId, to: &WorldId) -> bool {
        self.edges.contains(&(from.clone(), to.clone()))
    }

    pub fn label(&self, w: &WorldId) -> Result<&BTreeSet<PropName>, KripkeError> {
        self.labels.get(w).ok_or_else(|| KripkeError::UnknownWorld(w.clone()))
    }

    pub fn successors<'a>(&'a self, w: &'a WorldId) -> impl Iterator<Item = &'a WorldId> {
        self.edges
            .iter()
            .filter(move |(s, _)| s == w)
            .map(|(_, t)| t)
    }

    /// `R(X)`: the successor set of `X` (what the box clause evaluates at).
    pub fn post_set(&self, xs: &BTreeSet<WorldId>) -> BTreeSet<WorldId> {
        let mut out = BTreeSet::new();
        for x in xs {
            out.extend(self.successors(x).cloned());
        }
        out
    }

    /// `X R Y`: every member of `X` has a successor in `Y` and every member
    /// of `Y` a predecessor in `X`.
    pub fn covers(&self, xs: &BTreeSet<WorldId>, ys: &BTreeSet<WorldId>) -> bool {
        xs.iter().all(|x| self.successors(x).any(|t| ys.contains(t)))
            && ys.iter().all(|y| xs.iter().any(|x| self.has_edge(x, y)))
    }

    /// `R(X)` together with the `X R Y` verdict, validating the inputs.
    pub fn successors_and_cover(
        &self,
        xs: &BTreeSet<WorldId>,
        ys: &BTreeSet<WorldId>,
    ) -> Result<(BTreeSet<WorldId>, bool), KripkeError> {
        for w in xs.iter().chain(ys.iter()) {
            if !self.has_world(w) {
                return Err(KripkeError::UnknownWorld(w.clone()));
            }
        }
        Ok((self.post_set(xs), self.covers(xs, ys)))
    }

    pub fn left_copy_id(w: &WorldId) -> WorldId {
        WorldId::new(format!("l:{w}"))
    }

    pub fn right_copy_id(w: &WorldId) -> WorldId {
        WorldId::new(format!("r:{w}"))
    }

    /// Tagged union: worlds of `self` are prefixed `l:`, worlds of `other`
    /// `r:`. Each world is bisimilar to its copy.
    pub fn disjoint_union(&self, other: &KripkeModel) -> KripkeModel {
        let worlds = self
            .worlds
            .iter()
            .map(Self::left_copy_id)
            .chain(other.worlds.iter().map(Self::right_copy_id))
            .collect();
        let edges = self
            .edges
            .iter()
            .map(|(s, t)| (Self::left_copy_id(s), Self::left_copy_id(t)))
            .chain(
                other
                    .edges
                    .iter()
                    .map(|(s, t)| (Self::right_copy_id(s), Self::right_copy_id(t))),
            )
            .collect();
        let labels = self
            .labels
            .iter()
            .map(|(w, l)| (Self::left_copy_id(w), l.clone()))
            .chain(other.labels.iter().map(|(w, l)| (Self::right_copy_id(w), l.clone())))
            .collect();
        KripkeModel { worlds, edges, labels }
    }
}

/// A Kripke model with a distinguished team of worlds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TeamModel {
    model: KripkeModel,
    team: BTreeSet<WorldId>,
}

impl TeamModel {
    pub fn new(model: KripkeModel, team: BTreeSet<WorldId>) -> Result<TeamModel, KripkeError> {
        for w in &team {
            if !model.has_world(w) {
                return Err(KripkeError::TeamOutsideModel(w.clone()));
            }
        }
        Ok(TeamModel { model, team })
    }

    pub fn model(&self) -> &KripkeModel {
        &self.model
    }

    pub fn team(&self) -> &BTreeSet<WorldId> {
        &self.team
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum KripkeError {
    #[error("unknown world '{0}'")]
    UnknownWorld(WorldId),
    #[error("edge endpoint '{0}' is not a declared world")]
    EdgeEndpointMissing(WorldId),
    #[error("label entry for undeclared world '{0}'")]
    LabelForUnknownWorld(WorldId),
    #[error("team member '{0}' is not a world of the model")]
    TeamOutsideModel(WorldId),
    #[error("expected a classical formula")]
    NotClassical,
    #[error("bisimulation quantifier not allowed in direct evaluation")]
    Quantifier,
    #[error("invalid model file: {0}")]
    Format(String),
    #[error(transparent)]
    Cap(#[from] CapExceeded),
}
