//! Exact propositional evaluation via satisfaction tables over the subset
//! lattice of a finite ground set of valuations.
//!
//! A formula is compiled bottom-up into one bit per candidate team (a mask
//! over the ground set). The splitjunctions need an exhaustive cover
//! search — each member may go to the left part, the right part, or both —
//! which is computed exactly by a counting zeta/Moebius transform over the
//! lattice instead of walking the 3^n assignments one by one.

use std::collections::{BTreeMap, BTreeSet};

use super::{EvalError, Team, TeamProperty, Valuation};
use crate::limits::{CapExceeded, CapKind, Limits};
use crate::syntax::{Formula, PropName};

/// Satisfaction table: bit `m` says whether the team `{ground[i] : i in m}`
/// satisfies the formula.
pub(crate) struct SatTable {
    n: usize,
    bits: Vec<u64>,
}

impl SatTable {
    fn empty(n: usize) -> SatTable {
        SatTable { n, bits: vec![0; (1usize << n).div_ceil(64)] }
    }

    pub(crate) fn size(&self) -> usize {
        1usize << self.n
    }

    pub(crate) fn get(&self, mask: usize) -> bool {
        self.bits[mask / 64] >> (mask % 64) & 1 == 1
    }

    fn set(&mut self, mask: usize, value: bool) {
        if value {
            self.bits[mask / 64] |= 1 << (mask % 64);
        } else {
            self.bits[mask / 64] &= !(1 << (mask % 64));
        }
    }

    fn fill_with(n: usize, mut f: impl FnMut(usize) -> bool) -> SatTable {
        let mut t = SatTable::empty(n);
        for m in 0..1usize << n {
            t.set(m, f(m));
        }
        t
    }

    fn zip(&self, other: &SatTable, f: impl Fn(u64, u64) -> u64) -> SatTable {
        let bits = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(&a, &b)| f(a, b))
            .collect();
        SatTable { n: self.n, bits }
    }
}

/// `out[m] = 1` iff some cover `a ∪ b = m` has `left[a]` and `right[b]`;
/// with `nonempty_parts` the parts must be nonempty (the empty team is
/// handled by the caller).
fn union_cover(left: &SatTable, right: &SatTable, nonempty_parts: bool) -> SatTable {
    let n = left.n;
    let size = 1usize << n;
    let start = usize::from(nonempty_parts);
    let mut ca = vec![0u64; size];
    let mut cb = vec![0u64; size];
    for m in start..size {
        ca[m] = u64::from(left.get(m));
        cb[m] = u64::from(right.get(m));
    }
    // zeta transform: ca[m] = number of satisfying subsets of m
    for i in 0..n {
        let bit = 1usize << i;
        for m in 0..size {
            if m & bit != 0 {
                ca[m] += ca[m ^ bit];
                cb[m] += cb[m ^ bit];
            }
        }
    }
    let mut prod: Vec<u64> = ca.iter().zip(&cb).map(|(&a, &b)| a * b).collect();
    // Moebius transform recovers the number of exact covers of m
    for i in 0..n {
        let bit = 1usize << i;
        for m in 0..size {
            if m & bit != 0 {
                prod[m] -= prod[m ^ bit];
            }
        }
    }
    SatTable::fill_with(n, |m| prod[m] > 0)
}

/// Classical propositional evaluation of a single valuation, with the
/// splitjunction read as plain disjunction.
pub(crate) fn eval_classical_val(f: &Formula, s: &Valuation) -> Result<bool, EvalError> {
    match f {
        Formula::Prop(p) => s.value(p).ok_or_else(|| EvalError::MissingProp(p.clone())),
        Formula::NegProp(p) => s
            .value(p)
            .map(|v| !v)
            .ok_or_else(|| EvalError::MissingProp(p.clone())),
        Formula::Bottom => Ok(false),
        Formula::Top => Ok(true),
        Formula::And(l, r) => Ok(eval_classical_val(l, s)? && eval_classical_val(r, s)?),
        Formula::Split(l, r) => Ok(eval_classical_val(l, s)? || eval_classical_val(r, s)?),
        Formula::Dia(_) | Formula::Box(_) => Err(EvalError::ModalNode),
        Formula::Bq(_, _) => Err(EvalError::QuantifierNode),
        _ => Err(EvalError::NonClassicalNode),
    }
}

/// Distinct small ids for the values of a tuple of classical formulas
/// across the ground set.
fn pattern_ids(args: &[Formula], ground: &[Valuation]) -> Result<Vec<usize>, EvalError> {
    let mut seen: BTreeMap<Vec<bool>, usize> = BTreeMap::new();
    let mut ids = Vec::with_capacity(ground.len());
    for s in ground {
        let pat = args
            .iter()
            .map(|a| eval_classical_val(a, s))
            .collect::<Result<Vec<bool>, _>>()?;
        let next = seen.len();
        ids.push(*seen.entry(pat).or_insert(next));
    }
    Ok(ids)
}

// Ceiling on the ground-set width: tables and transforms are 2^n-sized.
const MAX_GROUND: usize = 24;

pub(crate) fn sat_table(f: &Formula, ground: &[Valuation]) -> Result<SatTable, EvalError> {
    let n = ground.len();
    if n > MAX_GROUND {
        return Err(EvalError::Cap(CapExceeded {
            kind: CapKind::CoverWidth,
            need: n as u64,
            cap: MAX_GROUND as u64,
        }));
    }
    let table = match f {
        Formula::Prop(p) | Formula::NegProp(p) => {
            let want = matches!(f, Formula::Prop(_));
            let mut bad: usize = 0;
            for (i, s) in ground.iter().enumerate() {
                match s.value(p) {
                    Some(v) if v != want => bad |= 1 << i,
                    Some(_) => {}
                    None => return Err(EvalError::MissingProp(p.clone())),
                }
            }
            SatTable::fill_with(n, |m| m & bad == 0)
        }
        Formula::Bottom => SatTable::fill_with(n, |m| m == 0),
        Formula::Top => SatTable::fill_with(n, |_| true),
        Formula::Ne => SatTable::fill_with(n, |m| m != 0),
        Formula::And(l, r) => sat_table(l, ground)?.zip(&sat_table(r, ground)?, |a, b| a & b),
        Formula::Or(l, r) => sat_table(l, ground)?.zip(&sat_table(r, ground)?, |a, b| a | b),
        Formula::Split(l, r) => union_cover(&sat_table(l, ground)?, &sat_table(r, ground)?, false),
        Formula::NeSplit(l, r) => {
            let mut t = union_cover(&sat_table(l, ground)?, &sat_table(r, ground)?, true);
            t.set(0, true);
            t
        }
        Formula::Dep { args, target } => {
            let arg_ids = pattern_ids(args, ground)?;
            let tgt_ids = pattern_ids(std::slice::from_ref(&**target), ground)?;
            SatTable::fill_with(n, |m| {
                let mut seen: [Option<usize>; 64] = [None; 64];
                for i in 0..n {
                    if m >> i & 1 == 1 {
                        match seen[arg_ids[i]] {
                            None => seen[arg_ids[i]] = Some(tgt_ids[i]),
                            Some(t) if t != tgt_ids[i] => return false,
                            Some(_) => {}
                        }
                    }
                }
                true
            })
        }
        Formula::Inc { left, right } => {
            let left_ids = pattern_values(left, ground)?;
            let right_ids = pattern_values(right, ground)?;
            SatTable::fill_with(n, |m| {
                (0..n).filter(|i| m >> i & 1 == 1).all(|i| {
                    (0..n)
                        .filter(|j| m >> j & 1 == 1)
                        .any(|j| left_ids[i] == right_ids[j])
                })
            })
        }
        Formula::Ind { left, right } => {
            let left_ids = pattern_values(left, ground)?;
            let right_ids = pattern_values(right, ground)?;
            SatTable::fill_with(n, |m| {
                let idx: Vec<usize> = (0..n).filter(|i| m >> i & 1 == 1).collect();
                idx.iter().all(|&i| {
                    idx.iter().all(|&j| {
                        idx.iter()
                            .any(|&w| left_ids[w] == left_ids[i] && right_ids[w] == right_ids[j])
                    })
                })
            })
        }
        Formula::Dia(_) | Formula::Box(_) => return Err(EvalError::ModalNode),
        Formula::Bq(_, _) => return Err(EvalError::QuantifierNode),
    };
    Ok(table)
}

/// Raw value tuples (not deduplicated ids): inclusion compares the left
/// tuple of one member against the right tuple of another, so both sides
/// must share one encoding.
fn pattern_values(args: &[Formula], ground: &[Valuation]) -> Result<Vec<Vec<bool>>, EvalError> {
    ground
        .iter()
        .map(|s| {
            args.iter()
                .map(|a| eval_classical_val(a, s))
                .collect::<Result<Vec<bool>, _>>()
        })
        .collect()
}

/// Exact team satisfaction. The team's own domain is the evaluation
/// domain; it must contain the formula language.
pub fn eval_prop(f: &Formula, team: &Team, limits: &Limits) -> Result<bool, EvalError> {
    if team.len() > limits.max_cover_width {
        return Err(EvalError::Cap(CapExceeded {
            kind: CapKind::CoverWidth,
            need: team.len() as u64,
            cap: limits.max_cover_width as u64,
        }));
    }
    let ground: Vec<Valuation> = team.members().cloned().collect();
    let table = sat_table(f, &ground)?;
    Ok(table.get(table.size() - 1))
}

/// All valuations over `props`, ordered so that ascending index is
/// ascending `Valuation` order (first proposition most significant).
pub(crate) fn all_valuations(props: &BTreeSet<PropName>) -> Vec<Valuation> {
    let names: Vec<&PropName> = props.iter().collect();
    let n = names.len();
    (0..1usize << n)
        .map(|ix| {
            let mut bits = BTreeMap::new();
            for (k, name) in names.iter().enumerate() {
                bits.insert((*name).clone(), ix >> (n - 1 - k) & 1 == 1);
            }
            Valuation::new(bits)
        })
        .collect()
}

pub(crate) fn check_prop_cap(props: &BTreeSet<PropName>, limits: &Limits) -> Result<(), EvalError> {
    if props.len() > limits.max_props {
        return Err(EvalError::Cap(CapExceeded {
            kind: CapKind::Props,
            need: props.len() as u64,
            cap: limits.max_props as u64,
        }));
    }
    Ok(())
}

pub(crate) fn team_from_mask(ground: &[Valuation], props: &BTreeSet<PropName>, mask: usize) -> Team {
    let members = (0..ground.len())
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| ground[i].clone());
    Team::new(props.clone(), members).expect("ground valuations share the domain")
}

/// Compares two team masks by the order of the teams they denote
/// (lexicographic on the ascending member sequences).
pub(crate) fn team_mask_cmp(a: usize, b: usize) -> std::cmp::Ordering {
    let (mut a, mut b) = (a, b);
    while a != 0 && b != 0 {
        let ia = a.trailing_zeros();
        let ib = b.trailing_zeros();
        match ia.cmp(&ib) {
            std::cmp::Ordering::Equal => {
                a &= a - 1;
                b &= b - 1;
            }
            other => return other,
        }
    }
    a.count_ones().cmp(&b.count_ones())
}

/// Extensionally enumerates the team models of `f` over `props`.
pub fn models_of(
    f: &Formula,
    props: &BTreeSet<PropName>,
    limits: &Limits,
) -> Result<TeamProperty, EvalError> {
    check_prop_cap(props, limits)?;
    let ground = all_valuations(props);
    let table = sat_table(f, &ground)?;
    let teams = (0..table.size())
        .filter(|&m| table.get(m))
        .map(|m| team_from_mask(&ground, props, m));
    TeamProperty::new(props.clone(), teams)
}

/// Verdict of one closure check, with the least witness on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Checked<W> {
    Holds,
    Fails(W),
}

impl<W> Checked<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Checked::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Checked::Holds => None,
            Checked::Fails(w) => Some(w),
        }
    }
}

/// Brute-force closure analysis of `||f||` over `props`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport {
    /// Fails with `(X, Y)`: `X` satisfies, `Y ⊆ X` does not.
    pub downward: Checked<(Team, Team)>,
    /// Fails with `(X1, X2)`: both satisfy, their union does not.
    pub union: Checked<(Team, Team)>,
    /// Fails with the empty team.
    pub empty_team: Checked<Team>,
    /// Fails with `(X, Y)`: equal restrictions to the formula language,
    /// different verdicts (`X` satisfies).
    pub local: Checked<(Team, Team)>,
}

impl ClosureReport {
    /// Downward and union closed: the classical ("flat") envelope.
    pub fn flat(&self) -> bool {
        self.downward.holds() && self.union.holds()
    }
}

pub fn closure_report(
    f: &Formula,
    props: &BTreeSet<PropName>,
    limits: &Limits,
) -> Result<ClosureReport, EvalError> {
    check_prop_cap(props, limits)?;
    let ground = all_valuations(props);
    let table = sat_table(f, &ground)?;
    let size = table.size();
    let n = ground.len();
    let team = |m: usize| team_from_mask(&ground, props, m);

    // teams in lexicographic order
    let mut order: Vec<usize> = (0..size).collect();
    order.sort_by(|&a, &b| team_mask_cmp(a, b));

    let empty_team = if table.get(0) { Checked::Holds } else { Checked::Fails(team(0)) };

    let mut downward = Checked::Holds;
    'down: for &m in &order {
        if !table.get(m) {
            continue;
        }
        // single removals suffice: any unsatisfied subset yields one along
        // a chain of single removals
        let mut best: Option<usize> = None;
        for i in 0..n {
            if m >> i & 1 == 1 && !table.get(m & !(1 << i)) {
                let sub = m & !(1 << i);
                best = Some(match best {
                    None => sub,
                    Some(old) if team_mask_cmp(sub, old).is_lt() => sub,
                    Some(old) => old,
                });
            }
        }
        if let Some(sub) = best {
            downward = Checked::Fails((team(m), team(sub)));
            break 'down;
        }
    }

    // union closure: a violation exists iff some unsatisfied mask is a
    // cover of two satisfied ones, which one transform decides
    let cover = union_cover(&table, &table, false);
    let violated = (0..size).any(|m| cover.get(m) && !table.get(m));
    let union = if !violated {
        Checked::Holds
    } else {
        let mut found = None;
        'pairs: for &a in &order {
            if !table.get(a) {
                continue;
            }
            for &b in &order {
                if table.get(b) && !table.get(a | b) {
                    found = Some((team(a), team(b)));
                    break 'pairs;
                }
            }
        }
        Checked::Fails(found.expect("transform found a union violation"))
    };

    // locality: group teams by their restriction to the formula language
    let lang = f.free_props();
    let proj_ground = all_valuations(&lang);
    let proj_index: Vec<usize> = ground
        .iter()
        .map(|s| {
            let p = s.project(&lang).expect("language within props");
            proj_ground.binary_search(&p).expect("projection is a valuation over lang")
        })
        .collect();
    let mut groups: BTreeMap<u64, (Option<usize>, Option<usize>)> = BTreeMap::new();
    for &m in &order {
        let mut sig: u64 = 0;
        for (i, &pi) in proj_index.iter().enumerate() {
            if m >> i & 1 == 1 {
                sig |= 1 << pi;
            }
        }
        let entry = groups.entry(sig).or_default();
        let slot = if table.get(m) { &mut entry.0 } else { &mut entry.1 };
        if slot.is_none() {
            *slot = Some(m); // first in lexicographic order
        }
    }
    let mut local = Checked::Holds;
    let mut best: Option<(usize, usize)> = None;
    for (sat, unsat) in groups.values() {
        if let (Some(x), Some(y)) = (sat, unsat) {
            let cand = (*x, *y);
            best = Some(match best {
                None => cand,
                Some(old)
                    if team_mask_cmp(cand.0, old.0)
                        .then_with(|| team_mask_cmp(cand.1, old.1))
                        .is_lt() =>
                {
                    cand
                }
                Some(old) => old,
            });
        }
    }
    if let Some((x, y)) = best {
        local = Checked::Fails((team(x), team(y)));
    }

    Ok(ClosureReport { downward, union, empty_team, local })
}

/// Outcome of an exact propositional entailment check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Entailment {
    Holds,
    /// The least team over the union language satisfying the premise but
    /// not the conclusion.
    Refuted { witness: Team },
}

impl Entailment {
    pub fn holds(&self) -> bool {
        matches!(self, Entailment::Holds)
    }
}

/// Decides `f ⊨ g` over the union language. Sound and complete for the
/// team fragments because every formula is local.
pub fn entails_prop(f: &Formula, g: &Formula, limits: &Limits) -> Result<Entailment, EvalError> {
    let props: BTreeSet<PropName> = f.free_props().union(&g.free_props()).cloned().collect();
    check_prop_cap(&props, limits)?;
    let ground = all_valuations(&props);
    let tf = sat_table(f, &ground)?;
    let tg = sat_table(g, &ground)?;
    let mut worst: Option<usize> = None;
    for m in 0..tf.size() {
        if tf.get(m) && !tg.get(m) {
            worst = Some(match worst {
                None => m,
                Some(old) if team_mask_cmp(m, old).is_lt() => m,
                Some(old) => old,
            });
        }
    }
    Ok(match worst {
        None => Entailment::Holds,
        Some(m) => Entailment::Refuted { witness: team_from_mask(&ground, &props, m) },
    })
}
