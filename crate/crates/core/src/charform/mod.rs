//! Canonical k-bisimulation types (Hintikka trees) and characteristic
//! formulas for pointed and team models: the engine behind quantifier
//! elimination.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::kripke::{KripkeError, KripkeModel, TeamModel, WorldId};
use crate::limits::{CapExceeded, CapKind};
use crate::syntax::{Formula, PropName};

/// A canonical k-type over a proposition set: the label of the root and
/// the set of (k-1)-types of its successors. Children are kept sorted and
/// duplicate-free, so structural equality is type equality. Two worlds
/// have equal trees iff they are k-bisimilar over the proposition set.
///
/// The depth is carried explicitly: a dead end has the same children ([])
/// at every depth, but its 1-type pins "no successors" while its 0-type
/// does not.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeTree {
    depth: usize,
    props: BTreeSet<PropName>,
    label: BTreeSet<PropName>,
    children: Vec<TypeTree>,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CharformError {
    #[error("type label must be a subset of the type propositions")]
    LabelOutsideProps,
    #[error("a depth-0 type has no children")]
    LeafWithChildren,
    #[error("children of a depth-k type must have depth k-1")]
    ChildDepthMismatch,
    #[error("children must share the proposition set of the parent")]
    ChildPropsMismatch,
    #[error("projection set is not a subset of the type propositions")]
    NotAProjection,
    #[error(transparent)]
    Cap(#[from] CapExceeded),
    #[error(transparent)]
    Kripke(#[from] KripkeError),
}

impl TypeTree {
    /// Canonicalizing constructor: sorts and deduplicates the children and
    /// validates the shape invariants.
    pub fn new(
        depth: usize,
        props: BTreeSet<PropName>,
        label: BTreeSet<PropName>,
        children: Vec<TypeTree>,
    ) -> Result<TypeTree, CharformError> {
        if !label.is_subset(&props) {
            return Err(CharformError::LabelOutsideProps);
        }
        if depth == 0 && !children.is_empty() {
            return Err(CharformError::LeafWithChildren);
        }
        for c in &children {
            if c.depth + 1 != depth {
                return Err(CharformError::ChildDepthMismatch);
            }
            if c.props != props {
                return Err(CharformError::ChildPropsMismatch);
            }
        }
        let mut children = children;
        children.sort();
        children.dedup();
        Ok(TypeTree { depth, props, label, children })
    }

    pub fn leaf(props: BTreeSet<PropName>, label: BTreeSet<PropName>) -> Result<TypeTree, CharformError> {
        TypeTree::new(0, props, label, Vec::new())
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn props(&self) -> &BTreeSet<PropName> {
        &self.props
    }

    pub fn label(&self) -> &BTreeSet<PropName> {
        &self.label
    }

    pub fn children(&self) -> &[TypeTree] {
        &self.children
    }
}

impl fmt::Display for TypeTree {
    /// Stable text encoding: `({p,q} -> [child, child])`, labels sorted,
    /// children in canonical order; leaves print as `({p,q})`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("({")?;
        let mut first = true;
        for p in &self.label {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        f.write_str("}")?;
        if self.depth > 0 {
            f.write_str(" -> [")?;
            for (i, c) in self.children.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{c}")?;
            }
            f.write_str("]")?;
        }
        f.write_str(")")
    }
}

/// The canonical k-type of a pointed model over `props`.
pub fn type_of(
    model: &KripkeModel,
    w: &WorldId,
    props: &BTreeSet<PropName>,
    k: usize,
) -> Result<TypeTree, CharformError> {
    let label: BTreeSet<PropName> =
        model.label(w)?.iter().filter(|p| props.contains(*p)).cloned().collect();
    let children = if k == 0 {
        Vec::new()
    } else {
        model
            .successors(w)
            .map(|v| type_of(model, v, props, k - 1))
            .collect::<Result<Vec<_>, _>>()?
    };
    TypeTree::new(k, props.clone(), label, children)
}

/// The k-types of the team's worlds, distinct and in canonical order.
pub fn team_types(
    tm: &TeamModel,
    props: &BTreeSet<PropName>,
    k: usize,
) -> Result<Vec<TypeTree>, CharformError> {
    let mut out: Vec<TypeTree> = tm
        .team()
        .iter()
        .map(|w| type_of(tm.model(), w, props, k))
        .collect::<Result<_, _>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// `T_k` with `T_0 = 2^|P|` and `T_{i+1} = 2^|P| * 2^{T_i}`; `None` on
/// overflow (definitely beyond any practical cap).
pub fn type_count(props: usize, k: usize) -> Option<u64> {
    let base = 1u64.checked_shl(props as u32)?;
    let mut count = base;
    for _ in 0..k {
        let pow = 1u64.checked_shl(u32::try_from(count).ok()?)?;
        count = base.checked_mul(pow)?;
    }
    Some(count)
}

/// All canonical k-types over `props`, each exactly once, sorted; errors
/// if `T_k` exceeds the cap.
pub fn enumerate_types(
    props: &BTreeSet<PropName>,
    k: usize,
    cap: u64,
) -> Result<Vec<TypeTree>, CharformError> {
    let count = type_count(props.len(), k);
    if count.is_none() || count.unwrap() > cap {
        return Err(CharformError::Cap(CapExceeded {
            kind: CapKind::Types,
            need: count.unwrap_or(u64::MAX),
            cap,
        }));
    }
    let names: Vec<&PropName> = props.iter().collect();
    let labels: Vec<BTreeSet<PropName>> = (0..1usize << names.len())
        .map(|mask| {
            names
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p.clone())
                .collect()
        })
        .collect();
    let mut level: Vec<TypeTree> = labels
        .iter()
        .map(|l| TypeTree::leaf(props.clone(), l.clone()).expect("label within props"))
        .collect();
    level.sort();
    for depth in 1..=k {
        let mut next = Vec::new();
        for label in &labels {
            for pick in 0..1usize << level.len() {
                let children: Vec<TypeTree> = level
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| pick >> i & 1 == 1)
                    .map(|(_, t)| t.clone())
                    .collect();
                next.push(
                    TypeTree::new(depth, props.clone(), label.clone(), children)
                        .expect("enumerated types are well-formed"),
                );
            }
        }
        next.sort();
        level = next;
    }
    Ok(level)
}

/// Restriction of a type to a smaller proposition set; children may merge
/// under the coarser labels.
pub fn project_type(t: &TypeTree, keep: &BTreeSet<PropName>) -> Result<TypeTree, CharformError> {
    if !keep.is_subset(&t.props) {
        return Err(CharformError::NotAProjection);
    }
    let label = t.label.intersection(keep).cloned().collect();
    let children = t
        .children
        .iter()
        .map(|c| project_type(c, keep))
        .collect::<Result<Vec<_>, _>>()?;
    TypeTree::new(t.depth, keep.clone(), label, children)
}

/// The characteristic formula of a k-type: the literal description of the
/// label, a diamond for each child type, and a box over their
/// splitjunction (`[] bot` for a dead end). Classical, with modal depth
/// equal to the type depth; a pointed model satisfies it iff its k-type
/// is exactly this tree.
pub fn char_formula(t: &TypeTree) -> Formula {
    let mut out: Option<Formula> = None;
    for p in &t.props {
        let lit = if t.label.contains(p) {
            Formula::prop(p.clone())
        } else {
            Formula::negprop(p.clone())
        };
        out = Some(match out {
            None => lit,
            Some(acc) => Formula::and(acc, lit),
        });
    }
    let mut formula = out.unwrap_or(Formula::Top);
    if t.depth > 0 {
        for c in &t.children {
            formula = Formula::and(formula, Formula::dia(char_formula(c)));
        }
        let inside = t
            .children
            .iter()
            .map(char_formula)
            .reduce(Formula::split)
            .unwrap_or(Formula::Bottom);
        formula = Formula::and(formula, Formula::boxed(inside));
    }
    formula
}

/// The characteristic formula of a team model at depth k: the
/// splitjunction of `char & NE` over the distinct k-types of the team's
/// worlds; `bot` for the empty team. A team model satisfies it iff it is
/// k-bisimilar to the given one over `props`.
pub fn team_char_formula(
    tm: &TeamModel,
    props: &BTreeSet<PropName>,
    k: usize,
) -> Result<Formula, CharformError> {
    let types = team_types(tm, props, k)?;
    Ok(assemble_team_char(&types))
}

/// The team characteristic formula from an explicit set of k-types
/// (sorted, deduplicated by the caller or via [`team_types`]).
pub fn assemble_team_char(types: &[TypeTree]) -> Formula {
    types
        .iter()
        .map(|t| Formula::and(char_formula(t), Formula::Ne))
        .reduce(Formula::split)
        .unwrap_or(Formula::Bottom)
}

/// A minimal pointed model realizing the type: the type tree itself, one
/// world per node, edges parent to child.
pub fn realize(t: &TypeTree) -> (KripkeModel, WorldId) {
    let mut worlds = BTreeSet::new();
    let mut edges = BTreeSet::new();
    let mut labels = BTreeMap::new();
    let mut counter = 0usize;
    let root = build_realization(t, &mut worlds, &mut edges, &mut labels, &mut counter);
    let model = KripkeModel::new(worlds, edges, labels).expect("realization is well-formed");
    (model, root)
}

fn build_realization(
    t: &TypeTree,
    worlds: &mut BTreeSet<WorldId>,
    edges: &mut BTreeSet<(WorldId, WorldId)>,
    labels: &mut BTreeMap<WorldId, BTreeSet<PropName>>,
    counter: &mut usize,
) -> WorldId {
    let id = WorldId::new(format!("n{counter}"));
    *counter += 1;
    worlds.insert(id.clone());
    labels.insert(id.clone(), t.label.clone());
    for c in &t.children {
        let child = build_realization(c, worlds, edges, labels, counter);
        edges.insert((id.clone(), child));
    }
    id
}

/// The universal model for depth k over `props`: one world per j-type for
/// every `j <= k`, with an edge from each type to each of its children.
/// The world of a j-type realizes exactly that j-type.
pub struct UniversalModel {
    pub model: KripkeModel,
    /// Worlds of the depth-k types, in canonical type order.
    pub top_level: Vec<(TypeTree, WorldId)>,
}

pub fn universal_model(
    props: &BTreeSet<PropName>,
    k: usize,
    cap: u64,
) -> Result<UniversalModel, CharformError> {
    let mut world_of: BTreeMap<TypeTree, WorldId> = BTreeMap::new();
    let mut levels: Vec<Vec<TypeTree>> = Vec::new();
    for j in 0..=k {
        let types = enumerate_types(props, j, cap)?;
        for (i, t) in types.iter().enumerate() {
            world_of.insert(t.clone(), WorldId::new(format!("u{j}_{i}")));
        }
        levels.push(types);
    }
    let worlds: BTreeSet<WorldId> = world_of.values().cloned().collect();
    let mut edges = BTreeSet::new();
    let mut labels = BTreeMap::new();
    for (t, w) in &world_of {
        labels.insert(w.clone(), t.label.clone());
        for c in &t.children {
            edges.insert((w.clone(), world_of[c].clone()));
        }
    }
    let model = KripkeModel::new(worlds, edges, labels)?;
    let top_level = levels
        .pop()
        .expect("at least one level")
        .into_iter()
        .map(|t| {
            let w = world_of[&t].clone();
            (t, w)
        })
        .collect();
    Ok(UniversalModel { model, top_level })
}
