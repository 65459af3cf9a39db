//! Singleton and team evaluation over Kripke models.
//!
//! Team evaluation recurses on (subformula, team) pairs with memoization;
//! the splitjunction clauses run an exhaustive cover search over the
//! subteams, the diamond clause searches the subsets of `R(X)` (any `Y`
//! with `X R Y` is one of them). [`EvalSession`] keeps the memo alive
//! across many team queries against one model.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{KripkeError, KripkeModel, TeamModel, WorldId};
use crate::limits::{CapExceeded, CapKind, Limits};
use crate::syntax::Formula;

/// Classical satisfaction at a pointed model, with `\/` read as ordinary
/// disjunction.
pub fn eval_singleton(f: &Formula, model: &KripkeModel, w: &WorldId) -> Result<bool, KripkeError> {
    if !f.is_classical() {
        return Err(KripkeError::NotClassical);
    }
    let mut ev = SingletonEvaluator::new(model);
    let at = ev.index_of(w)?;
    ev.eval(f, at)
}

struct SingletonEvaluator<'a> {
    model: &'a KripkeModel,
    worlds: Vec<WorldId>,
    memo: HashMap<(usize, usize), bool>,
}

impl<'a> SingletonEvaluator<'a> {
    fn new(model: &'a KripkeModel) -> Self {
        let worlds: Vec<WorldId> = model.worlds().cloned().collect();
        SingletonEvaluator { model, worlds, memo: HashMap::new() }
    }

    fn index_of(&self, w: &WorldId) -> Result<usize, KripkeError> {
        self.worlds
            .binary_search(w)
            .map_err(|_| KripkeError::UnknownWorld(w.clone()))
    }

    fn eval(&mut self, f: &Formula, at: usize) -> Result<bool, KripkeError> {
        let key = (f as *const Formula as usize, at);
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        let w = self.worlds[at].clone();
        let v = match f {
            Formula::Prop(p) => self.model.label(&w)?.contains(p),
            Formula::NegProp(p) => !self.model.label(&w)?.contains(p),
            Formula::Bottom => false,
            Formula::Top => true,
            Formula::And(l, r) => self.eval(l, at)? && self.eval(r, at)?,
            Formula::Split(l, r) => self.eval(l, at)? || self.eval(r, at)?,
            Formula::Dia(g) => {
                let succ: Vec<usize> = self
                    .model
                    .successors(&w)
                    .map(|t| self.worlds.binary_search(t).expect("successor is a world"))
                    .collect();
                let mut any = false;
                for t in succ {
                    if self.eval(g, t)? {
                        any = true;
                        break;
                    }
                }
                any
            }
            Formula::Box(g) => {
                let succ: Vec<usize> = self
                    .model
                    .successors(&w)
                    .map(|t| self.worlds.binary_search(t).expect("successor is a world"))
                    .collect();
                let mut all = true;
                for t in succ {
                    if !self.eval(g, t)? {
                        all = false;
                        break;
                    }
                }
                all
            }
            _ => return Err(KripkeError::NotClassical),
        };
        self.memo.insert(key, v);
        Ok(v)
    }
}

/// Team satisfaction for a team model.
pub fn eval_team_modal(f: &Formula, tm: &TeamModel, limits: &Limits) -> Result<bool, KripkeError> {
    eval_team(f, tm.model(), tm.team(), limits)
}

/// Team satisfaction of `f` at `(model, team)`.
pub fn eval_team(
    f: &Formula,
    model: &KripkeModel,
    team: &BTreeSet<WorldId>,
    limits: &Limits,
) -> Result<bool, KripkeError> {
    let mut session = EvalSession::new(model, limits)?;
    session.eval(f, team)
}

/// A memoized evaluation context for many (formula, team) queries against
/// one model. Formulas must outlive the session (the memo is keyed by
/// node identity).
pub struct EvalSession<'a> {
    ev: TeamEvaluator<'a>,
}

impl<'a> EvalSession<'a> {
    pub fn new(model: &'a KripkeModel, limits: &'a Limits) -> Result<EvalSession<'a>, KripkeError> {
        if model.world_count() > 64 {
            return Err(KripkeError::Cap(CapExceeded {
                kind: CapKind::CoverWidth,
                need: model.world_count() as u64,
                cap: 64,
            }));
        }
        Ok(EvalSession { ev: TeamEvaluator::new(model, limits) })
    }

    pub fn eval(&mut self, f: &'a Formula, team: &BTreeSet<WorldId>) -> Result<bool, KripkeError> {
        let mut mask = 0u64;
        for w in team {
            match self.ev.singleton.worlds.binary_search(w) {
                Ok(i) => mask |= 1 << i,
                Err(_) => return Err(KripkeError::TeamOutsideModel(w.clone())),
            }
        }
        self.ev.eval(f, mask)
    }

    /// Evaluate at a team given as a bitmask over the model's worlds in
    /// ascending order.
    pub fn eval_mask(&mut self, f: &'a Formula, mask: u64) -> Result<bool, KripkeError> {
        self.ev.eval(f, mask)
    }

    /// The model's worlds in mask-bit order.
    pub fn worlds(&self) -> &[WorldId] {
        &self.ev.singleton.worlds
    }
}

struct TeamEvaluator<'a> {
    succ_mask: Vec<u64>,
    limits: &'a Limits,
    memo: HashMap<(usize, u64), bool>,
    singleton: SingletonEvaluator<'a>,
}

impl<'a> TeamEvaluator<'a> {
    fn new(model: &'a KripkeModel, limits: &'a Limits) -> Self {
        let singleton = SingletonEvaluator::new(model);
        let succ_mask = singleton
            .worlds
            .iter()
            .map(|w| {
                model
                    .successors(w)
                    .map(|t| 1u64 << singleton.worlds.binary_search(t).expect("world"))
                    .fold(0, |a, b| a | b)
            })
            .collect();
        TeamEvaluator { succ_mask, limits, memo: HashMap::new(), singleton }
    }

    fn bits(m: u64) -> impl Iterator<Item = usize> {
        (0..64).filter(move |i| m >> i & 1 == 1)
    }

    fn post_mask(&self, m: u64) -> u64 {
        Self::bits(m).map(|i| self.succ_mask[i]).fold(0, |a, b| a | b)
    }

    fn eval(&mut self, f: &Formula, m: u64) -> Result<bool, KripkeError> {
        let key = (f as *const Formula as usize, m);
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        let v = match f {
            Formula::Prop(p) => {
                let mut ok = true;
                for i in Self::bits(m) {
                    let w = self.singleton.worlds[i].clone();
                    if !self.singleton.model.label(&w)?.contains(p) {
                        ok = false;
                        break;
                    }
                }
                ok
            }
            Formula::NegProp(p) => {
                let mut ok = true;
                for i in Self::bits(m) {
                    let w = self.singleton.worlds[i].clone();
                    if self.singleton.model.label(&w)?.contains(p) {
                        ok = false;
                        break;
                    }
                }
                ok
            }
            Formula::Bottom => m == 0,
            Formula::Top => true,
            Formula::Ne => m != 0,
            Formula::And(l, r) => self.eval(l, m)? && self.eval(r, m)?,
            Formula::Or(l, r) => self.eval(l, m)? || self.eval(r, m)?,
            Formula::Split(l, r) => self.cover(l, r, m, false)?,
            Formula::NeSplit(l, r) => m == 0 || self.cover(l, r, m, true)?,
            Formula::Dia(g) => self.diamond(g, m)?,
            Formula::Box(g) => {
                let post = self.post_mask(m);
                self.eval(g, post)?
            }
            Formula::Dep { args, target } => {
                let pats = self.patterns(args, m)?;
                let tgts = self.patterns(std::slice::from_ref(&**target), m)?;
                let mut seen: BTreeMap<&Vec<bool>, &Vec<bool>> = BTreeMap::new();
                let mut ok = true;
                for (pat, tgt) in pats.iter().zip(&tgts) {
                    match seen.get(pat) {
                        None => {
                            seen.insert(pat, tgt);
                        }
                        Some(&old) if old != tgt => {
                            ok = false;
                            break;
                        }
                        Some(_) => {}
                    }
                }
                ok
            }
            Formula::Inc { left, right } => {
                let lp = self.patterns(left, m)?;
                let rp = self.patterns(right, m)?;
                lp.iter().all(|pat| rp.iter().any(|other| pat == other))
            }
            Formula::Ind { left, right } => {
                let lp = self.patterns(left, m)?;
                let rp = self.patterns(right, m)?;
                let n = lp.len();
                (0..n).all(|i| (0..n).all(|j| (0..n).any(|w| lp[w] == lp[i] && rp[w] == rp[j])))
            }
            Formula::Bq(_, _) => return Err(KripkeError::Quantifier),
        };
        self.memo.insert(key, v);
        Ok(v)
    }

    /// Value tuples of the classical atom arguments at each team member.
    fn patterns(&mut self, args: &[Formula], m: u64) -> Result<Vec<Vec<bool>>, KripkeError> {
        Self::bits(m)
            .map(|i| {
                args.iter()
                    .map(|a| self.singleton.eval(a, i))
                    .collect::<Result<Vec<bool>, _>>()
            })
            .collect()
    }

    /// Exhaustive cover search for the splitjunctions: does some pair of
    /// subteams with union `m` satisfy left and right (nonempty parts when
    /// `nonempty` is set)?
    fn cover(
        &mut self,
        l: &Formula,
        r: &Formula,
        m: u64,
        nonempty: bool,
    ) -> Result<bool, KripkeError> {
        let members: Vec<usize> = Self::bits(m).collect();
        let k = members.len();
        if k > self.limits.max_cover_width {
            return Err(KripkeError::Cap(CapExceeded {
                kind: CapKind::CoverWidth,
                need: k as u64,
                cap: self.limits.max_cover_width as u64,
            }));
        }
        let size = 1usize << k;
        let to_global = |lm: usize| {
            members
                .iter()
                .enumerate()
                .filter(|(j, _)| lm >> j & 1 == 1)
                .map(|(_, &i)| 1u64 << i)
                .fold(0, |a, b| a | b)
        };
        let mut lv = vec![false; size];
        let mut rv = vec![false; size];
        for lm in 0..size {
            let g = to_global(lm);
            lv[lm] = self.eval(l, g)?;
            rv[lm] = self.eval(r, g)?;
        }
        if nonempty {
            lv[0] = false;
            rv[0] = false;
        }
        // up[req] = some superset of req satisfies the right side
        let mut up = rv;
        for j in 0..k {
            for lm in 0..size {
                if lm & (1 << j) == 0 {
                    up[lm] = up[lm] || up[lm | (1 << j)];
                }
            }
        }
        let full = size - 1;
        Ok((0..size).any(|lm| lv[lm] && up[full & !lm]))
    }

    /// Diamond clause: search `Y` over subsets of `R(X)`. Every member of
    /// `R(X)` has a predecessor in `X`, so only the forward half of
    /// `X R Y` needs checking.
    fn diamond(&mut self, g: &Formula, m: u64) -> Result<bool, KripkeError> {
        let post = self.post_mask(m);
        let rbits: Vec<usize> = Self::bits(post).collect();
        let k = rbits.len();
        if k > self.limits.max_cover_width {
            return Err(KripkeError::Cap(CapExceeded {
                kind: CapKind::CoverWidth,
                need: k as u64,
                cap: self.limits.max_cover_width as u64,
            }));
        }
        // successor sets of the team members, in local Y-bit coordinates
        let local_succ: Vec<usize> = Self::bits(m)
            .map(|i| {
                rbits
                    .iter()
                    .enumerate()
                    .filter(|(_, &t)| self.succ_mask[i] >> t & 1 == 1)
                    .map(|(j, _)| 1usize << j)
                    .fold(0, |a, b| a | b)
            })
            .collect();
        for ym in 0..1usize << k {
            if local_succ.iter().all(|&s| s & ym != 0) {
                let yg = rbits
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| ym >> j & 1 == 1)
                    .map(|(_, &t)| 1u64 << t)
                    .fold(0, |a, b| a | b);
                if self.eval(g, yg)? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}
