//! Readable hints for interpolation output: a small deterministic pool of
//! candidate formulas over the kept propositions, reported only when the
//! semantic checker proves equivalence at the active bound.

use std::collections::BTreeSet;

use teamlog::interp::bounded_entails_modal;
use teamlog::prop::models_of;
use teamlog::syntax::{render, Formula, PropName};
use teamlog::Limits;

/// The candidate pool, coarsest first. Only propositional candidates when
/// the formula is propositional; modal candidates otherwise.
fn candidates(keep: &BTreeSet<PropName>, modal: bool) -> Vec<Formula> {
    let mut out = vec![
        Formula::Bottom,
        Formula::Top,
        Formula::Ne,
        Formula::and(Formula::Bottom, Formula::Ne),
    ];
    for p in keep {
        let prop = Formula::prop(p.clone());
        let neg = Formula::negprop(p.clone());
        out.push(prop.clone());
        out.push(neg.clone());
        out.push(Formula::dep(vec![], prop.clone()).expect("classical"));
        out.push(Formula::and(prop.clone(), Formula::Ne));
        out.push(Formula::and(neg.clone(), Formula::Ne));
        out.push(Formula::and(
            Formula::dep(vec![], prop.clone()).expect("classical"),
            Formula::Ne,
        ));
        if modal {
            out.push(Formula::dia(prop.clone()));
            out.push(Formula::boxed(prop.clone()));
            out.push(Formula::and(Formula::dia(prop.clone()), Formula::Ne));
        }
    }
    if modal {
        out.push(Formula::dia(Formula::Top));
        out.push(Formula::boxed(Formula::Bottom));
        out.push(Formula::and(Formula::dia(Formula::Top), Formula::Ne));
    }
    let keep: Vec<&PropName> = keep.iter().collect();
    if keep.len() == 2 {
        let (p, q) = (keep[0], keep[1]);
        let fp = Formula::prop(p.clone());
        let fq = Formula::prop(q.clone());
        out.push(Formula::and(fp.clone(), fq.clone()));
        out.push(Formula::split(fp.clone(), fq.clone()));
        out.push(Formula::dep(vec![fp.clone()], fq.clone()).expect("classical"));
        out.push(Formula::inc(vec![fp.clone()], vec![fq.clone()]).expect("classical"));
        out.push(Formula::and(Formula::and(fp, fq), Formula::Ne));
    }
    out
}

fn equivalent(theta: &Formula, candidate: &Formula, keep: &BTreeSet<PropName>, limits: &Limits) -> bool {
    let modal = !theta.is_propositional() || !candidate.is_propositional();
    if modal {
        let a = bounded_entails_modal(theta, candidate, limits.max_worlds, limits);
        let b = bounded_entails_modal(candidate, theta, limits.max_worlds, limits);
        matches!((a, b), (Ok(x), Ok(y)) if x.holds() && y.holds())
    } else {
        // exact: equal team model sets over the kept domain
        match (models_of(theta, keep, limits), models_of(candidate, keep, limits)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }
}

/// The first pool candidate provably equivalent to `theta`, rendered;
/// `None` when the pool has nothing equivalent (or `theta` is already one
/// of the candidates syntactically).
pub fn equivalent_simple_form(
    theta: &Formula,
    keep: &BTreeSet<PropName>,
    limits: &Limits,
) -> Option<String> {
    if keep.len() > 2 {
        return None;
    }
    let modal = !theta.is_propositional();
    for candidate in candidates(keep, modal) {
        if &candidate == theta {
            return None; // already in simplest form
        }
        if equivalent(theta, &candidate, keep, limits) {
            return Some(render(&candidate));
        }
    }
    None
}
