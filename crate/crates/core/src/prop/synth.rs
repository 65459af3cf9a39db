//! Synthesis of formulas from explicit team properties and the
//! projection-based uniform interpolant.

use std::collections::BTreeSet;

use super::eval::{all_valuations, check_prop_cap, sat_table};
use super::{EvalError, Team, TeamProperty, Valuation};
use crate::limits::Limits;
use crate::syntax::{Formula, PropName};

/// Conjunction of literals pinning the valuation on its whole domain;
/// `top` for the empty domain.
fn literal_conjunction(s: &Valuation) -> Formula {
    let mut out: Option<Formula> = None;
    for (p, v) in s.iter() {
        let lit = if v { Formula::prop(p.clone()) } else { Formula::negprop(p.clone()) };
        out = Some(match out {
            None => lit,
            Some(acc) => Formula::and(acc, lit),
        });
    }
    out.unwrap_or(Formula::Top)
}

/// Splitjunction of `lits(s) & NE` over the members; `bot` for the empty
/// team. Satisfied by exactly one team over the domain: the team itself.
fn team_formula(x: &Team) -> Formula {
    let mut out: Option<Formula> = None;
    for s in x.members() {
        let factor = Formula::and(literal_conjunction(s), Formula::Ne);
        out = Some(match out {
            None => factor,
            Some(acc) => Formula::split(acc, factor),
        });
    }
    out.unwrap_or(Formula::Bottom)
}

/// Builds a full-team-logic formula whose team models over the property
/// domain are exactly the given teams. The empty property yields the
/// unsatisfiable `bot & NE`.
pub fn synthesize_fptl(property: &TeamProperty) -> Formula {
    let mut out: Option<Formula> = None;
    for x in property.teams() {
        let disjunct = team_formula(x);
        out = Some(match out {
            None => disjunct,
            Some(acc) => Formula::or(acc, disjunct),
        });
    }
    out.unwrap_or(Formula::and(Formula::Bottom, Formula::Ne))
}

/// Uniform interpolant of a propositional team formula with respect to
/// `keep`: projects the satisfying teams onto the kept propositions and
/// synthesizes the resulting property.
pub fn uniform_interpolant_prop(
    f: &Formula,
    keep: &BTreeSet<PropName>,
    limits: &Limits,
) -> Result<Formula, EvalError> {
    let lang = f.free_props();
    for p in keep {
        if !lang.contains(p) {
            return Err(EvalError::KeepNotInLanguage(p.clone()));
        }
    }
    check_prop_cap(&lang, limits)?;
    let ground = all_valuations(&lang);
    let table = sat_table(f, &ground)?;
    let proj_ground = all_valuations(keep);
    let proj_index: Vec<usize> = ground
        .iter()
        .map(|s| {
            let p = s.project(keep).expect("keep is within the language");
            proj_ground.binary_search(&p).expect("projection enumerated")
        })
        .collect();
    let mut sigs: BTreeSet<u64> = BTreeSet::new();
    for m in 0..table.size() {
        if table.get(m) {
            let mut sig: u64 = 0;
            for (i, &pi) in proj_index.iter().enumerate() {
                if m >> i & 1 == 1 {
                    sig |= 1 << pi;
                }
            }
            sigs.insert(sig);
        }
    }
    let teams = sigs.into_iter().map(|sig| {
        let members = (0..proj_ground.len())
            .filter(|j| sig >> j & 1 == 1)
            .map(|j| proj_ground[j].clone());
        Team::new(keep.clone(), members).expect("projected members share the kept domain")
    });
    let property = TeamProperty::new(keep.clone(), teams)?;
    Ok(synthesize_fptl(&property))
}
