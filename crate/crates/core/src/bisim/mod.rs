//! Bounded and maximal proposition-restricted bisimulations, team
//! bisimilarity with witnesses, and the amalgamation constructions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::kripke::{KripkeError, KripkeModel, TeamModel, WorldId};
use crate::syntax::PropName;

/// The layered family `B_0 ⊇ B_1 ⊇ … ⊇ B_k` between two fixed models:
/// `B_0` relates label-agreeing worlds, `B_{i+1}` keeps the pairs whose
/// successors match into `B_i`. `(w, v) ∈ B_k` iff the pointed models are
/// k-bisimilar over the restriction set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BisimFamily {
    props: BTreeSet<PropName>,
    layers: Vec<BTreeSet<(WorldId, WorldId)>>,
}

impl BisimFamily {
    pub fn k(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn props(&self) -> &BTreeSet<PropName> {
        &self.props
    }

    pub fn layer(&self, i: usize) -> &BTreeSet<(WorldId, WorldId)> {
        &self.layers[i]
    }

    /// The top layer `B_k`.
    pub fn top(&self) -> &BTreeSet<(WorldId, WorldId)> {
        self.layers.last().expect("at least B_0")
    }

    pub fn related(&self, w: &WorldId, v: &WorldId) -> bool {
        self.top().contains(&(w.clone(), v.clone()))
    }
}

/// A relation claimed to be a P-bisimulation. [`is_bisimulation`] is the
/// independent checker for the claim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bisimulation {
    props: BTreeSet<PropName>,
    pairs: BTreeSet<(WorldId, WorldId)>,
}

impl Bisimulation {
    pub fn new(props: BTreeSet<PropName>, pairs: BTreeSet<(WorldId, WorldId)>) -> Bisimulation {
        Bisimulation { props, pairs }
    }

    pub fn props(&self) -> &BTreeSet<PropName> {
        &self.props
    }

    pub fn pairs(&self) -> impl Iterator<Item = &(WorldId, WorldId)> {
        self.pairs.iter()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, w: &WorldId, v: &WorldId) -> bool {
        self.pairs.contains(&(w.clone(), v.clone()))
    }

    /// Dump format: a `props:` header, then one `w <-> v` line per pair.
    pub fn to_dump(&self) -> String {
        let mut out = String::from("props:");
        for p in &self.props {
            out.push(' ');
            out.push_str(p.as_str());
        }
        out.push('\n');
        for (w, v) in &self.pairs {
            out.push_str(&format!("{w} <-> {v}\n"));
        }
        out
    }

    pub fn parse_dump(text: &str) -> Result<Bisimulation, BisimError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header =
            lines.next().ok_or_else(|| BisimError::Dump("missing 'props:' header".into()))?;
        let names = header
            .strip_prefix("props:")
            .ok_or_else(|| BisimError::Dump("missing 'props:' header".into()))?;
        let mut props = BTreeSet::new();
        for name in names.split_whitespace() {
            props.insert(
                PropName::new(name)
                    .map_err(|_| BisimError::Dump(format!("bad proposition '{name}'")))?,
            );
        }
        let mut pairs = BTreeSet::new();
        for line in lines {
            let (w, v) = line
                .split_once("<->")
                .ok_or_else(|| BisimError::Dump(format!("expected 'w <-> v', got '{line}'")))?;
            pairs.insert((WorldId::new(w.trim()), WorldId::new(v.trim())));
        }
        Ok(Bisimulation { props, pairs })
    }
}

/// Which side of a pairwise check failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// First reason a relation fails to be a bisimulation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BisimViolation {
    #[error("pair ({0}, {1}) references a world outside the {2} model")]
    UnknownWorld(WorldId, WorldId, Side),
    #[error("pair ({0}, {1}) disagrees on '{2}'")]
    LabelMismatch(WorldId, WorldId, PropName),
    #[error("pair ({0}, {1}): successor {2} of the left world has no matching partner")]
    ForthFails(WorldId, WorldId, WorldId),
    #[error("pair ({0}, {1}): successor {2} of the right world has no matching partner")]
    BackFails(WorldId, WorldId, WorldId),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BisimError {
    #[error("the bisimulation must be nonempty")]
    EmptyBisimulation,
    #[error("relation is not a bisimulation: {0}")]
    NotABisimulation(BisimViolation),
    #[error("teams are not bisimilar: {side} world '{world}' has no partner")]
    NotTeamBisimilar { side: Side, world: WorldId },
    #[error("invalid bisimulation dump: {0}")]
    Dump(String),
    #[error(transparent)]
    Kripke(#[from] KripkeError),
}

fn label_disagreement(
    m: &KripkeModel,
    n: &KripkeModel,
    w: &WorldId,
    v: &WorldId,
    props: &BTreeSet<PropName>,
) -> Option<PropName> {
    let lw = m.label(w).expect("world of m");
    let lv = n.label(v).expect("world of n");
    props.iter().find(|p| lw.contains(*p) != lv.contains(*p)).cloned()
}

fn refine(
    m: &KripkeModel,
    n: &KripkeModel,
    base: &BTreeSet<(WorldId, WorldId)>,
    prev: &BTreeSet<(WorldId, WorldId)>,
) -> BTreeSet<(WorldId, WorldId)> {
    base.iter()
        .filter(|(w, v)| {
            let forth = m
                .successors(w)
                .all(|u| n.successors(v).any(|u2| prev.contains(&(u.clone(), u2.clone()))));
            let back = n
                .successors(v)
                .all(|u2| m.successors(w).any(|u| prev.contains(&(u.clone(), u2.clone()))));
            forth && back
        })
        .cloned()
        .collect()
}

/// The greatest family `B_0 ⊇ … ⊇ B_k` over `props`.
pub fn bounded_bisim(
    m: &KripkeModel,
    n: &KripkeModel,
    props: &BTreeSet<PropName>,
    k: usize,
) -> BisimFamily {
    let mut base = BTreeSet::new();
    for w in m.worlds() {
        for v in n.worlds() {
            if label_disagreement(m, n, w, v, props).is_none() {
                base.insert((w.clone(), v.clone()));
            }
        }
    }
    let mut layers = vec![base.clone()];
    for _ in 0..k {
        let next = refine(m, n, &base, layers.last().unwrap());
        layers.push(next);
    }
    BisimFamily { props: props.clone(), layers }
}

/// The maximal P-bisimulation: greatest fixpoint of the refinement
/// operator, reached within `|W_M| * |W_N|` rounds.
pub fn max_bisim(m: &KripkeModel, n: &KripkeModel, props: &BTreeSet<PropName>) -> Bisimulation {
    let base = bounded_bisim(m, n, props, 0).top().clone();
    let mut current = base.clone();
    loop {
        let next = refine(m, n, &base, &current);
        if next == current {
            return Bisimulation { props: props.clone(), pairs: current };
        }
        current = next;
    }
}

/// Independent checker: is `rel` a bisimulation between `m` and `n` over
/// its own proposition set? Returns the first violation in pair order.
pub fn is_bisimulation(
    m: &KripkeModel,
    n: &KripkeModel,
    rel: &Bisimulation,
) -> Result<(), BisimViolation> {
    for (w, v) in &rel.pairs {
        if !m.has_world(w) {
            return Err(BisimViolation::UnknownWorld(w.clone(), v.clone(), Side::Left));
        }
        if !n.has_world(v) {
            return Err(BisimViolation::UnknownWorld(w.clone(), v.clone(), Side::Right));
        }
        if let Some(p) = label_disagreement(m, n, w, v, &rel.props) {
            return Err(BisimViolation::LabelMismatch(w.clone(), v.clone(), p));
        }
        for u in m.successors(w) {
            if !n.successors(v).any(|u2| rel.pairs.contains(&(u.clone(), u2.clone()))) {
                return Err(BisimViolation::ForthFails(w.clone(), v.clone(), u.clone()));
            }
        }
        for u2 in n.successors(v) {
            if !m.successors(w).any(|u| rel.pairs.contains(&(u.clone(), u2.clone()))) {
                return Err(BisimViolation::BackFails(w.clone(), v.clone(), u2.clone()));
            }
        }
    }
    Ok(())
}

/// Outcome of a team bisimilarity check. On success the witness maps give
/// for every world of one team its least partner in the other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TeamBisim {
    Bisimilar {
        forward: BTreeMap<WorldId, WorldId>,
        backward: BTreeMap<WorldId, WorldId>,
    },
    Blocked { side: Side, world: WorldId },
}

impl TeamBisim {
    pub fn holds(&self) -> bool {
        matches!(self, TeamBisim::Bisimilar { .. })
    }
}

/// Team bisimilarity: both-ways coverage through the maximal bisimulation,
/// or through layer `B_k` when a bound is given.
pub fn team_bisimilar(
    tm: &TeamModel,
    tn: &TeamModel,
    props: &BTreeSet<PropName>,
    k: Option<usize>,
) -> TeamBisim {
    let rel: BTreeSet<(WorldId, WorldId)> = match k {
        Some(k) => bounded_bisim(tm.model(), tn.model(), props, k).top().clone(),
        None => max_bisim(tm.model(), tn.model(), props).pairs,
    };
    coverage(tm.team(), tn.team(), &rel)
}

/// Coverage of two teams through an explicit relation.
pub fn coverage(
    x: &BTreeSet<WorldId>,
    y: &BTreeSet<WorldId>,
    rel: &BTreeSet<(WorldId, WorldId)>,
) -> TeamBisim {
    let mut forward = BTreeMap::new();
    for w in x {
        match y.iter().find(|v| rel.contains(&(w.clone(), (*v).clone()))) {
            Some(v) => {
                forward.insert(w.clone(), v.clone());
            }
            None => return TeamBisim::Blocked { side: Side::Left, world: w.clone() },
        }
    }
    let mut backward = BTreeMap::new();
    for v in y {
        match x.iter().find(|w| rel.contains(&((*w).clone(), v.clone()))) {
            Some(w) => {
                backward.insert(v.clone(), w.clone());
            }
            None => return TeamBisim::Blocked { side: Side::Right, world: v.clone() },
        }
    }
    TeamBisim::Bisimilar { forward, backward }
}

/// The amalgam of two models along a shared-language bisimulation: worlds
/// are the related pairs, edges are componentwise, labels come from the
/// left model on `P` and the right model on `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Amalgamation {
    model: KripkeModel,
    pair_of: BTreeMap<WorldId, (WorldId, WorldId)>,
    left_props: BTreeSet<PropName>,
    right_props: BTreeSet<PropName>,
}

impl Amalgamation {
    pub fn model(&self) -> &KripkeModel {
        &self.model
    }

    pub fn pair_of(&self, w: &WorldId) -> Option<&(WorldId, WorldId)> {
        self.pair_of.get(w)
    }

    pub fn world_for(&self, m: &WorldId, n: &WorldId) -> Option<WorldId> {
        let id = pair_world(m, n);
        self.pair_of.contains_key(&id).then_some(id)
    }

    /// Projection to the left model: a P-bisimulation from the amalgam.
    pub fn first_projection(&self) -> Bisimulation {
        Bisimulation {
            props: self.left_props.clone(),
            pairs: self.pair_of.iter().map(|(k, (m, _))| (k.clone(), m.clone())).collect(),
        }
    }

    /// Projection to the right model: a Q-bisimulation from the amalgam.
    pub fn second_projection(&self) -> Bisimulation {
        Bisimulation {
            props: self.right_props.clone(),
            pairs: self.pair_of.iter().map(|(k, (_, n))| (k.clone(), n.clone())).collect(),
        }
    }
}

fn pair_world(m: &WorldId, n: &WorldId) -> WorldId {
    WorldId::new(format!("({m},{n})"))
}

/// Builds the amalgam of `m` and `n` over a nonempty bisimulation for the
/// shared propositions. `b` is validated with the independent checker
/// against `p ∩ q` before anything is constructed.
pub fn amalgamate(
    m: &KripkeModel,
    n: &KripkeModel,
    b: &Bisimulation,
    p: &BTreeSet<PropName>,
    q: &BTreeSet<PropName>,
) -> Result<Amalgamation, BisimError> {
    if b.is_empty() {
        return Err(BisimError::EmptyBisimulation);
    }
    let shared: BTreeSet<PropName> = p.intersection(q).cloned().collect();
    let checked = Bisimulation { props: shared, pairs: b.pairs.clone() };
    is_bisimulation(m, n, &checked).map_err(BisimError::NotABisimulation)?;

    let mut worlds = BTreeSet::new();
    let mut labels = BTreeMap::new();
    let mut pair_of = BTreeMap::new();
    for (wm, wn) in &checked.pairs {
        let id = pair_world(wm, wn);
        // left side decides P, right side decides Q; on the overlap both
        // agree because the relation is a bisimulation
        let mut label: BTreeSet<PropName> =
            m.label(wm)?.iter().filter(|r| p.contains(*r)).cloned().collect();
        label.extend(n.label(wn)?.iter().filter(|r| q.contains(*r)).cloned());
        worlds.insert(id.clone());
        labels.insert(id.clone(), label);
        pair_of.insert(id, (wm.clone(), wn.clone()));
    }
    let mut edges = BTreeSet::new();
    for (id_a, (ma, na)) in &pair_of {
        for (id_b, (mb, nb)) in &pair_of {
            if m.has_edge(ma, mb) && n.has_edge(na, nb) {
                edges.insert((id_a.clone(), id_b.clone()));
            }
        }
    }
    let model = KripkeModel::new(worlds, edges, labels)?;
    Ok(Amalgamation { model, pair_of, left_props: p.clone(), right_props: q.clone() })
}

/// The team amalgam `(K, Z)` with `Z = (X × Y) ∩ B` over the maximal
/// shared-language bisimulation; bisimilar to `(M, X)` over `P` and to
/// `(N, Y)` over `Q`.
#[derive(Debug, Clone)]
pub struct TeamAmalgamation {
    pub amalgamation: Amalgamation,
    pub team: BTreeSet<WorldId>,
}

impl TeamAmalgamation {
    pub fn team_model(&self) -> TeamModel {
        TeamModel::new(self.amalgamation.model().clone(), self.team.clone())
            .expect("team worlds are amalgam worlds")
    }
}

pub fn team_amalgamate(
    tm: &TeamModel,
    p: &BTreeSet<PropName>,
    tn: &TeamModel,
    q: &BTreeSet<PropName>,
) -> Result<TeamAmalgamation, BisimError> {
    let shared: BTreeSet<PropName> = p.intersection(q).cloned().collect();
    let b = max_bisim(tm.model(), tn.model(), &shared);
    match coverage(tm.team(), tn.team(), &b.pairs) {
        TeamBisim::Bisimilar { .. } => {}
        TeamBisim::Blocked { side, world } => {
            return Err(BisimError::NotTeamBisimilar { side, world })
        }
    }
    let amalgamation = amalgamate(tm.model(), tn.model(), &b, p, q)?;
    let team = tm
        .team()
        .iter()
        .flat_map(|x| {
            tn.team().iter().filter(|y| b.contains(x, y)).map(|y| pair_world(x, y))
        })
        .collect();
    Ok(TeamAmalgamation { amalgamation, team })
}
