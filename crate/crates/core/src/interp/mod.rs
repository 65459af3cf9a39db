//! Bisimulation-quantifier elimination and uniform interpolation for
//! modal team logic, with independent verification of the interpolant
//! claims.
//!
//! Exact mode enumerates the team models of the universal k-type model —
//! one world per j-type, j ≤ k — and emits the disjunction over satisfying
//! type sets of the projected team characteristic formulas. Bounded mode
//! ranges over explicitly enumerated team models instead and re-verifies
//! its (possibly stronger) candidate rather than returning it silently.

mod report;

pub use report::{CheckEntry, InterpReport, Stats, Verdict};

use std::collections::BTreeSet;

use thiserror::Error;

use crate::charform::{
    char_formula, enumerate_types, project_type, realize, team_types, type_count, universal_model,
    CharformError, TypeTree,
};
use crate::kripke::enumerate::{all_models, all_teams};
use crate::kripke::{eval_singleton, EvalSession, KripkeError, KripkeModel, TeamModel, WorldId};
use crate::limits::{CapExceeded, CapKind, Limits};
use crate::prop::{entails_prop, Entailment, EvalError};
use crate::syntax::{render, Formula, PropName};

/// Interpolation mode: exact quantifier elimination behind the type caps,
/// or a bounded sound-candidate construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Bounded,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum InterpError {
    #[error("expected a classical formula")]
    NotClassical,
    #[error("the formula contains a bisimulation quantifier; use interp with --keep to eliminate propositions instead")]
    Quantified,
    #[error("kept set contains '{0}' which is not in the formula language")]
    KeepNotInLanguage(PropName),
    #[error(transparent)]
    Cap(#[from] CapExceeded),
    #[error(transparent)]
    Kripke(#[from] KripkeError),
    #[error(transparent)]
    Charform(#[from] CharformError),
    #[error(transparent)]
    Prop(#[from] EvalError),
}

/// Quantifier elimination for classical modal formulas: the classical
/// disjunction (splitjunction) of the projected characteristic formulas of
/// the satisfiable k-types. Under singleton semantics the result holds at
/// a pointed model iff some model bisimilar over the remaining language
/// satisfies the input.
pub fn bisim_quantifier_ml(
    a: &Formula,
    p: &PropName,
    k: Option<usize>,
    limits: &Limits,
) -> Result<Formula, InterpError> {
    if !a.is_classical() {
        return Err(InterpError::NotClassical);
    }
    let lang = a.free_props();
    if !lang.contains(p) {
        return Ok(a.clone());
    }
    let k = k.unwrap_or_else(|| a.modal_depth());
    let keep: BTreeSet<PropName> = lang.iter().filter(|q| *q != p).cloned().collect();
    let mut projected: Vec<TypeTree> = Vec::new();
    for t in enumerate_types(&lang, k, limits.type_cap)? {
        let (model, root) = realize(&t);
        if eval_singleton(a, &model, &root)? {
            projected.push(project_type(&t, &keep)?);
        }
    }
    projected.sort();
    projected.dedup();
    Ok(projected
        .iter()
        .map(char_formula)
        .reduce(Formula::split)
        .unwrap_or(Formula::Bottom))
}

/// The distinct k-type sets realized by satisfying team models, each
/// turned into one disjunct: the splitjunction over the set of
/// `char(project(t)) & NE`. The lattice of disjuncts is the formula.
fn assemble(
    type_sets: &BTreeSet<Vec<TypeTree>>,
    keep: &BTreeSet<PropName>,
) -> Result<Formula, InterpError> {
    // distinct type sets may project to the same disjunct; classical
    // disjunction is idempotent, so equal disjuncts merge
    let mut disjuncts = BTreeSet::new();
    for types in type_sets {
        let mut projected = types
            .iter()
            .map(|t| project_type(t, keep))
            .collect::<Result<Vec<_>, _>>()?;
        projected.sort();
        projected.dedup();
        disjuncts.insert(
            projected
                .iter()
                .map(|t| Formula::and(char_formula(t), Formula::Ne))
                .reduce(Formula::split)
                .unwrap_or(Formula::Bottom),
        );
    }
    Ok(disjuncts
        .into_iter()
        .reduce(Formula::or)
        .unwrap_or(Formula::and(Formula::Bottom, Formula::Ne)))
}

/// Eliminates one bisimulation quantifier from a team formula.
pub fn bisim_quantifier_team(
    f: &Formula,
    p: &PropName,
    mode: Mode,
    limits: &Limits,
) -> Result<(Formula, InterpReport), InterpError> {
    if f.has_bq() {
        return Err(InterpError::Quantified);
    }
    let lang = f.free_props();
    if !lang.contains(p) {
        let mut report = InterpReport::new(f, &lang, f, mode);
        report.push_language_check(f, &lang);
        verify_premise_entailment(f, f, &mut report, limits)?;
        return Ok((f.clone(), report));
    }
    let keep: BTreeSet<PropName> = lang.iter().filter(|q| *q != p).cloned().collect();
    let k = f.modal_depth();
    let mut stats = Stats::default();

    let type_sets: BTreeSet<Vec<TypeTree>> = match mode {
        Mode::Exact => {
            let count = type_count(lang.len(), k);
            let effective = limits.exact_types.min(limits.type_cap);
            if count.is_none() || count.unwrap() > effective {
                let over_exact = count.is_none_or(|c| c > limits.exact_types);
                let (kind, cap) = if over_exact {
                    (CapKind::ExactTypes, limits.exact_types)
                } else {
                    (CapKind::Types, limits.type_cap)
                };
                return Err(InterpError::Cap(CapExceeded {
                    kind,
                    need: count.unwrap_or(u64::MAX),
                    cap,
                }));
            }
            let u = universal_model(&lang, k, effective)?;
            stats.types = Some(u.top_level.len() as u64);
            stats.team_classes = Some(1u64 << u.top_level.len());
            let mut session = EvalSession::new(&u.model, limits)?;
            let mut sets = BTreeSet::new();
            for mask in 0..1usize << u.top_level.len() {
                let team: BTreeSet<WorldId> = u
                    .top_level
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, (_, w))| w.clone())
                    .collect();
                stats.team_models_checked += 1;
                if session.eval(f, &team)? {
                    let types: Vec<TypeTree> = u
                        .top_level
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, (t, _))| t.clone())
                        .collect();
                    sets.insert(types);
                }
            }
            sets
        }
        Mode::Bounded => {
            let mut sets = BTreeSet::new();
            for n in 1..=limits.max_worlds.min(Limits::MAX_ENUMERABLE_WORLDS) {
                for model in all_models(&lang, n) {
                    let mut session = EvalSession::new(&model, limits)?;
                    for team in all_teams(&model) {
                        stats.team_models_checked += 1;
                        if session.eval(f, &team)? {
                            let tm = TeamModel::new(model.clone(), team)?;
                            sets.insert(team_types(&tm, &lang, k)?);
                        }
                    }
                }
            }
            sets
        }
    };

    let theta = assemble(&type_sets, &keep)?;
    let mut report = InterpReport::new(f, &keep, &theta, mode);
    report.stats = stats;
    report.push_language_check(&theta, &keep);
    // bounded mode can in principle miss disjuncts and strengthen the
    // result, so the premise entailment is always re-verified
    verify_premise_entailment(f, &theta, &mut report, limits)?;
    Ok((theta, report))
}

/// Uniform interpolant of a team formula with respect to the kept
/// language: folds single-quantifier elimination over the dropped
/// propositions in ascending order.
pub fn uniform_interpolant_modal(
    f: &Formula,
    keep: &BTreeSet<PropName>,
    mode: Mode,
    limits: &Limits,
) -> Result<(Formula, InterpReport), InterpError> {
    let lang = f.free_props();
    for q in keep {
        if !lang.contains(q) {
            return Err(InterpError::KeepNotInLanguage(q.clone()));
        }
    }
    let mut theta = f.clone();
    let mut stats = Stats::default();
    for p in lang.difference(keep) {
        let (next, step) = bisim_quantifier_team(&theta, p, mode, limits)?;
        stats.absorb(&step.stats);
        theta = next;
    }
    let mut report = InterpReport::new(f, keep, &theta, mode);
    report.stats = stats;
    report.push_language_check(&theta, keep);
    verify_premise_entailment(f, &theta, &mut report, limits)?;
    Ok((theta, report))
}

/// Outcome of a bounded modal entailment check: either no counterexample
/// up to the bound, or the least refuting team model in enumeration order
/// (worlds ascending, then labelings, edge sets, teams).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundedEntailment {
    Holds { max_worlds: usize, team_models_checked: u64 },
    Refuted { model: KripkeModel, team: BTreeSet<WorldId> },
}

impl BoundedEntailment {
    pub fn holds(&self) -> bool {
        matches!(self, BoundedEntailment::Holds { .. })
    }
}

/// Checks `f ⊨ g` over every team model with up to `max_worlds` worlds
/// labeled from the union language. A positive answer is a bounded
/// verdict, not an absolute one.
pub fn bounded_entails_modal(
    f: &Formula,
    g: &Formula,
    max_worlds: usize,
    limits: &Limits,
) -> Result<BoundedEntailment, InterpError> {
    if f.has_bq() || g.has_bq() {
        return Err(InterpError::Quantified);
    }
    if max_worlds > Limits::MAX_ENUMERABLE_WORLDS {
        return Err(InterpError::Cap(CapExceeded {
            kind: CapKind::Worlds,
            need: max_worlds as u64,
            cap: Limits::MAX_ENUMERABLE_WORLDS as u64,
        }));
    }
    let props: BTreeSet<PropName> = f.free_props().union(&g.free_props()).cloned().collect();
    let mut checked = 0u64;
    for n in 1..=max_worlds {
        for model in all_models(&props, n) {
            let mut session = EvalSession::new(&model, limits)?;
            for team in all_teams(&model) {
                checked += 1;
                if session.eval(f, &team)? && !session.eval(g, &team)? {
                    return Ok(BoundedEntailment::Refuted { model, team });
                }
            }
        }
    }
    Ok(BoundedEntailment::Holds { max_worlds, team_models_checked: checked })
}

/// Verifies the interpolant clauses for `theta` against `f`: the language
/// bound, `f ⊨ theta`, and for every supplied consequence `psi` whose
/// common language with `f` lies inside `keep`, that `theta ⊨ psi`
/// whenever `f ⊨ psi`. Failures become verdicts, not errors.
pub fn check_interpolant(
    f: &Formula,
    theta: &Formula,
    keep: &BTreeSet<PropName>,
    consequences: &[Formula],
    limits: &Limits,
) -> Result<InterpReport, InterpError> {
    let mode = if all_propositional(&[f, theta]) && consequences.iter().all(|c| c.is_propositional() && !c.has_bq()) {
        Mode::Exact
    } else {
        Mode::Bounded
    };
    let mut report = InterpReport::new(f, keep, theta, mode);
    report.push_language_check(theta, keep);
    verify_premise_entailment(f, theta, &mut report, limits)?;
    report.checks.extend(consequence_checks(f, theta, keep, consequences, limits)?);
    Ok(report)
}

/// One check entry per supplied consequence: skipped when its common
/// language with the premise leaks outside the kept set, vacuous when the
/// premise does not entail it, pass/fail on the interpolant otherwise.
pub fn consequence_checks(
    f: &Formula,
    theta: &Formula,
    keep: &BTreeSet<PropName>,
    consequences: &[Formula],
    limits: &Limits,
) -> Result<Vec<CheckEntry>, InterpError> {
    let flang = f.free_props();
    let mut out = Vec::new();
    for psi in consequences {
        let label = format!("interpolant entails '{}'", render(psi));
        let psi_lang = psi.free_props();
        let common: BTreeSet<&PropName> = flang.intersection(&psi_lang).collect();
        if !common.iter().all(|q| keep.contains(*q)) {
            out.push(CheckEntry {
                clause: label,
                verdict: Verdict::Skipped,
                bound: None,
                witness: None,
            });
            continue;
        }
        if entails(f, psi, limits)?.is_some() {
            // f does not entail psi: clause 2 is vacuous for this psi
            out.push(CheckEntry {
                clause: label,
                verdict: Verdict::Vacuous,
                bound: None,
                witness: None,
            });
            continue;
        }
        match entails(theta, psi, limits)? {
            None => out.push(CheckEntry {
                clause: label,
                verdict: Verdict::Pass,
                bound: entail_bound(theta, psi, limits),
                witness: None,
            }),
            Some((bound, witness)) => out.push(CheckEntry {
                clause: label,
                verdict: Verdict::Fail,
                bound,
                witness: Some(witness),
            }),
        }
    }
    Ok(out)
}

fn all_propositional(fs: &[&Formula]) -> bool {
    fs.iter().all(|f| f.is_propositional() && !f.has_bq())
}

/// `None` if the entailment holds (exactly for propositional inputs, up to
/// the bound otherwise); otherwise the bound used and a rendered witness.
#[allow(clippy::type_complexity)]
fn entails(
    f: &Formula,
    g: &Formula,
    limits: &Limits,
) -> Result<Option<(Option<usize>, String)>, InterpError> {
    if all_propositional(&[f, g]) {
        match entails_prop(f, g, limits)? {
            Entailment::Holds => Ok(None),
            Entailment::Refuted { witness } => Ok(Some((None, witness.to_string()))),
        }
    } else {
        match bounded_entails_modal(f, g, limits.max_worlds, limits)? {
            BoundedEntailment::Holds { .. } => Ok(None),
            BoundedEntailment::Refuted { model, team } => {
                Ok(Some((Some(limits.max_worlds), model.to_json(Some(&team)))))
            }
        }
    }
}

fn entail_bound(f: &Formula, g: &Formula, limits: &Limits) -> Option<usize> {
    if all_propositional(&[f, g]) {
        None
    } else {
        Some(limits.max_worlds)
    }
}

/// Adds the `f ⊨ theta` check entry to a report.
fn verify_premise_entailment(
    f: &Formula,
    theta: &Formula,
    report: &mut InterpReport,
    limits: &Limits,
) -> Result<(), InterpError> {
    let entry = match entails(f, theta, limits)? {
        None => CheckEntry {
            clause: "premise entails interpolant".into(),
            verdict: Verdict::Pass,
            bound: entail_bound(f, theta, limits),
            witness: None,
        },
        Some((bound, witness)) => CheckEntry {
            clause: "premise entails interpolant".into(),
            verdict: Verdict::Fail,
            bound,
            witness: Some(witness),
        },
    };
    report.checks.push(entry);
    Ok(())
}
