//! Shared fixtures for the acceptance suite: the propositional corpus,
//! pool-team machinery, a deterministic model generator, and the
//! isomorphism-reduced model grids.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::OnceLock;

use teamlog::kripke::enumerate::all_models;
use teamlog::kripke::{KripkeModel, WorldId};
use teamlog::prop::{models_of, Team, Valuation};
use teamlog::syntax::{parse, Formula, PropName};
use teamlog::Limits;

pub fn pn(s: &str) -> PropName {
    PropName::new(s).unwrap()
}

pub fn props(names: &[&str]) -> BTreeSet<PropName> {
    names.iter().map(|s| pn(s)).collect()
}

pub fn pool_props() -> BTreeSet<PropName> {
    props(&["p", "q", "r"])
}

/// Deterministic propositional corpus over the pool: all atoms, all
/// binary combinations under every connective, a slice of depth-2
/// formulas, and the worked examples.
pub fn corpus() -> &'static Vec<Formula> {
    static CORPUS: OnceLock<Vec<Formula>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let atom_texts = [
            "p", "q", "r", "~p", "~q", "~r", "bot", "top", "NE",
            "=( ; p)", "=( ; q)", "=(p ; q)", "=(q ; r)", "=(p, q ; r)",
            "inc(p ; q)", "inc(q ; r)", "ind(p ; q)",
        ];
        let atoms: Vec<Formula> = atom_texts.iter().map(|t| parse(t).unwrap()).collect();
        let combine = [Formula::and, Formula::split, Formula::nesplit, Formula::or];
        let mut out = atoms.clone();
        let mut layer1 = Vec::new();
        for a in &atoms {
            for b in &atoms {
                for op in &combine {
                    layer1.push(op(a.clone(), b.clone()));
                }
            }
        }
        // a slice of depth-2 formulas for texture
        for (i, f) in layer1.iter().enumerate().step_by(37) {
            let atom = &atoms[(i * 7) % atoms.len()];
            let op = &combine[(i / atoms.len()) % combine.len()];
            out.push(op(f.clone(), atom.clone()));
        }
        out.extend(layer1);
        out.push(parse("(p & q) \\/+ (~p & q)").unwrap());
        out.push(parse("=(p ; q) & =( ; p)").unwrap());
        out
    })
}

/// The 256 teams over the pool, ordered by valuation-mask index.
pub fn all_pool_teams() -> &'static Vec<Team> {
    static TEAMS: OnceLock<Vec<Team>> = OnceLock::new();
    TEAMS.get_or_init(|| {
        let pool: Vec<PropName> = pool_props().into_iter().collect();
        let valuations: Vec<Valuation> = (0..1usize << pool.len())
            .map(|ix| {
                let bits: BTreeMap<PropName, bool> = pool
                    .iter()
                    .enumerate()
                    .map(|(k, p)| (p.clone(), ix >> (pool.len() - 1 - k) & 1 == 1))
                    .collect();
                Valuation::new(bits)
            })
            .collect();
        (0..1usize << valuations.len())
            .map(|mask| {
                let members = valuations
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, v)| v.clone());
                Team::new(pool_props(), members).unwrap()
            })
            .collect()
    })
}

/// `||f||` over the pool as a bitmask over [`all_pool_teams`]. By
/// locality, mask inclusion is entailment over the union language.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct PoolMask([u64; 4]);

impl PoolMask {
    pub fn subset_of(&self, other: &PoolMask) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

pub fn pool_mask(f: &Formula, limits: &Limits) -> PoolMask {
    let property = models_of(f, &pool_props(), limits).unwrap();
    let mut mask = [0u64; 4];
    for (i, t) in all_pool_teams().iter().enumerate() {
        if property.contains(t) {
            mask[i / 64] |= 1 << (i % 64);
        }
    }
    PoolMask(mask)
}

/// Splitmix-style deterministic generator; no randomness enters the
/// suite, repeated runs are identical.
pub struct Lcg(u64);

impl Lcg {
    pub fn new(seed: u64) -> Lcg {
        Lcg(seed)
    }

    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0 >> 33
    }

    pub fn model(&mut self, props: &BTreeSet<PropName>, n: usize) -> KripkeModel {
        let worlds: Vec<WorldId> = (0..n).map(|i| WorldId::new(format!("x{i}"))).collect();
        let mut edges = BTreeSet::new();
        for a in &worlds {
            for b in &worlds {
                if self.next().is_multiple_of(2) {
                    edges.insert((a.clone(), b.clone()));
                }
            }
        }
        let mut labels = BTreeMap::new();
        for w in &worlds {
            let set: BTreeSet<PropName> =
                props.iter().filter(|_| self.next().is_multiple_of(2)).cloned().collect();
            labels.insert(w.clone(), set);
        }
        KripkeModel::new(worlds.into_iter().collect(), edges, labels).unwrap()
    }
}

/// Witness scaffolding for existential bisimulation clauses whose
/// witnesses need more worlds than the three-world grid offers.
///
/// The graft keeps the original model as a tail, adds two relabelable
/// middle copies of every successor of a team world (each wired to the
/// successor's original targets), and two fresh roots per team world
/// (wired to the middles of its successors). Patterns of the dropped
/// proposition at the team and its successors are then free while the
/// structure stays bisimilar to the original over any set excluding it;
/// one dropped proposition needs at most two variants per world (the
/// splitjunctions can demand both values of it over one bisimulation
/// class).
pub struct Graft {
    base: KripkeModel,
    /// fresh roots, one per team world
    pub roots: BTreeSet<WorldId>,
    /// graft world paired with the original world it mimics
    pub relation: BTreeSet<(WorldId, WorldId)>,
    adjustable: Vec<WorldId>,
}

impl Graft {
    pub fn new(m: &KripkeModel, team: &BTreeSet<WorldId>) -> Graft {
        let root_id = |x: &WorldId, i: usize| WorldId::new(format!("g{i}:{x}"));
        let mid_id = |u: &WorldId, i: usize| WorldId::new(format!("m{i}:{u}"));
        let succ_union: BTreeSet<WorldId> = m.post_set(team);

        let mut worlds: BTreeSet<WorldId> = m.worlds().cloned().collect();
        let mut edges: BTreeSet<(WorldId, WorldId)> = m.edges().cloned().collect();
        let mut labels: BTreeMap<WorldId, BTreeSet<PropName>> =
            m.worlds().map(|w| (w.clone(), m.label(w).unwrap().clone())).collect();
        let mut relation: BTreeSet<(WorldId, WorldId)> =
            m.worlds().map(|w| (w.clone(), w.clone())).collect();

        let mut adjustable: Vec<WorldId> = Vec::new();
        for u in &succ_union {
            for i in 0..2 {
                let mid = mid_id(u, i);
                worlds.insert(mid.clone());
                labels.insert(mid.clone(), m.label(u).unwrap().clone());
                for t in m.successors(u) {
                    edges.insert((mid.clone(), t.clone()));
                }
                relation.insert((mid.clone(), u.clone()));
                adjustable.push(mid);
            }
        }
        let mut roots = BTreeSet::new();
        for x in team {
            for i in 0..2 {
                let root = root_id(x, i);
                worlds.insert(root.clone());
                labels.insert(root.clone(), m.label(x).unwrap().clone());
                for u in m.successors(x) {
                    for j in 0..2 {
                        edges.insert((root.clone(), mid_id(u, j)));
                    }
                }
                relation.insert((root.clone(), x.clone()));
                adjustable.push(root.clone());
                roots.insert(root);
            }
        }
        let base = KripkeModel::new(worlds, edges, labels).unwrap();
        Graft { base, roots, relation, adjustable }
    }

    pub fn mask_count(&self) -> u64 {
        1 << self.adjustable.len()
    }

    /// The graft with the dropped proposition assigned to roots and
    /// middles according to the mask (the tail keeps its labels).
    pub fn candidate(&self, p: &PropName, mask: u64) -> KripkeModel {
        let mut labels: BTreeMap<WorldId, BTreeSet<PropName>> = self
            .base
            .worlds()
            .map(|w| (w.clone(), self.base.label(w).unwrap().clone()))
            .collect();
        for (i, w) in self.adjustable.iter().enumerate() {
            let entry = labels.get_mut(w).unwrap();
            if mask >> i & 1 == 1 {
                entry.insert(p.clone());
            } else {
                entry.remove(p);
            }
        }
        KripkeModel::new(
            self.base.worlds().cloned().collect(),
            self.base.edges().cloned().collect(),
            labels,
        )
        .unwrap()
    }
}

/// Stable color-refinement signatures across a whole model family: two
/// worlds (of the same or different models) receive equal ids exactly
/// when the coarsest bisimulation over `keep` on the disjoint union of
/// all models relates them. Refinement starts from the kept labels and
/// splits classes by successor class sets until stable. Callers validate
/// the correspondence with `max_bisim` on samples.
pub fn stable_signatures(
    models: &[KripkeModel],
    keep: &BTreeSet<PropName>,
) -> Vec<Vec<usize>> {
    // initial classes: kept label sets
    let mut class_of: BTreeMap<BTreeSet<PropName>, usize> = BTreeMap::new();
    let mut ids: Vec<Vec<usize>> = models
        .iter()
        .map(|m| {
            m.worlds()
                .map(|w| {
                    let label: BTreeSet<PropName> = m
                        .label(w)
                        .unwrap()
                        .iter()
                        .filter(|p| keep.contains(*p))
                        .cloned()
                        .collect();
                    let next = class_of.len();
                    *class_of.entry(label).or_insert(next)
                })
                .collect()
        })
        .collect();
    let mut classes = class_of.len();
    loop {
        let mut next_of: BTreeMap<(usize, BTreeSet<usize>), usize> = BTreeMap::new();
        let next_ids: Vec<Vec<usize>> = models
            .iter()
            .zip(&ids)
            .map(|(m, model_ids)| {
                let worlds: Vec<&WorldId> = m.worlds().collect();
                worlds
                    .iter()
                    .enumerate()
                    .map(|(wix, w)| {
                        let succ: BTreeSet<usize> = m
                            .successors(w)
                            .map(|t| model_ids[worlds.binary_search(&t).unwrap()])
                            .collect();
                        let key = (model_ids[wix], succ);
                        let next = next_of.len();
                        *next_of.entry(key).or_insert(next)
                    })
                    .collect()
            })
            .collect();
        let next_classes = next_of.len();
        ids = next_ids;
        if next_classes == classes {
            return ids;
        }
        classes = next_classes;
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    match n {
        1 => vec![vec![0]],
        2 => vec![vec![0, 1], vec![1, 0]],
        3 => vec![
            vec![0, 1, 2],
            vec![0, 2, 1],
            vec![1, 0, 2],
            vec![1, 2, 0],
            vec![2, 0, 1],
            vec![2, 1, 0],
        ],
        _ => panic!("grids stop at three worlds"),
    }
}

fn canonical_key(m: &KripkeModel, names: &[PropName]) -> (u8, Vec<u8>, u16) {
    let worlds: Vec<&WorldId> = m.worlds().collect();
    let n = worlds.len();
    let mut best: Option<(Vec<u8>, u16)> = None;
    for perm in permutations(n) {
        let labels: Vec<u8> = perm
            .iter()
            .map(|&orig| {
                let label = m.label(worlds[orig]).unwrap();
                names
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| label.contains(*p))
                    .map(|(k, _)| 1u8 << k)
                    .fold(0, |a, b| a | b)
            })
            .collect();
        let mut edges: u16 = 0;
        for (a, &oa) in perm.iter().enumerate() {
            for (b, &ob) in perm.iter().enumerate() {
                if m.has_edge(worlds[oa], worlds[ob]) {
                    edges |= 1 << (a * n + b);
                }
            }
        }
        let cand = (labels, edges);
        best = Some(match best {
            None => cand,
            Some(old) if cand < old => cand,
            Some(old) => old,
        });
    }
    let (labels, edges) = best.unwrap();
    (n as u8, labels, edges)
}

fn canonical_models(props: &BTreeSet<PropName>) -> Vec<KripkeModel> {
    let names: Vec<PropName> = props.iter().cloned().collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for n in 1..=3 {
        for m in all_models(props, n) {
            if seen.insert(canonical_key(&m, &names)) {
                out.push(m);
            }
        }
    }
    out
}

/// All models with up to three worlds over {p}, one representative per
/// isomorphism class, in deterministic order.
pub fn canonical_models_p() -> &'static Vec<KripkeModel> {
    static MODELS: OnceLock<Vec<KripkeModel>> = OnceLock::new();
    MODELS.get_or_init(|| canonical_models(&props(&["p"])))
}

/// The same grid over {p, q}.
pub fn canonical_models_pq() -> &'static Vec<KripkeModel> {
    static MODELS: OnceLock<Vec<KripkeModel>> = OnceLock::new();
    MODELS.get_or_init(|| canonical_models(&props(&["p", "q"])))
}
