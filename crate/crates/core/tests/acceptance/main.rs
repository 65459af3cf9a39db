//! Acceptance suite: one test per criterion, each printing a PASS line
//! with its statistics (run with `--nocapture` to see them).
//!
//! Conventions used throughout:
//! - the shared propositional corpus lives over the pool {p, q, r};
//! - Kripke model grids are "all models with <= 3 worlds" deduplicated up
//!   to world renaming (isomorphism), which every checked property is
//!   invariant under — this is the symmetry pruning the heavy criteria
//!   rely on, and representatives are chosen deterministically.

mod modal_criteria;
mod support;

use std::collections::BTreeSet;
use std::time::Instant;

use support::*;

use teamlog::interp::{check_interpolant, Verdict};
use teamlog::prop::{
    closure_report, entails_prop, models_of, uniform_interpolant_prop, Entailment, Team,
};
use teamlog::syntax::{parse, Formula, PropName};
use teamlog::Limits;

#[test]
fn ac01_example_one_regression() {
    let start = Instant::now();
    let limits = Limits::default();
    let f = parse("(p & q) \\/+ (~p & q)").unwrap();
    let p = pn("p");
    let g = Formula::split(f.substitute_const(&p, true), f.substitute_const(&p, false));
    let witness = match entails_prop(&f, &g, &limits).unwrap() {
        Entailment::Refuted { witness } => witness,
        Entailment::Holds => panic!("AC-1: the substitution splitjunction must not follow"),
    };
    assert_eq!(witness, Team::parse("{p=1 q=1; p=0 q=1}").unwrap());
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "AC-1 exceeded 1s: {elapsed:?}");
    println!("AC-1 PASS: entailment refuted with the two-valuation witness team ({elapsed:?})");
}

#[test]
fn ac02_example_two_regression() {
    let start = Instant::now();
    let limits = Limits::default();
    let f = parse("=(p ; q) & =( ; p)").unwrap();
    let keep: BTreeSet<PropName> = [pn("q")].into();
    let theta = uniform_interpolant_prop(&f, &keep, &limits).unwrap();

    let got = models_of(&theta, &keep, &limits).unwrap();
    let want = models_of(&parse("=( ; q)").unwrap(), &keep, &limits).unwrap();
    assert_eq!(got, want, "AC-2: interpolant differs from =( ; q) over {{q}}");

    let consequences = vec![parse("=( ; q)").unwrap()];
    let report = check_interpolant(&f, &theta, &keep, &consequences, &limits).unwrap();
    assert!(report.all_pass(), "AC-2: a clause failed:\n{report}");
    assert!(report
        .checks
        .iter()
        .all(|c| c.verdict == Verdict::Pass));

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "AC-2 exceeded 1s: {elapsed:?}");
    println!("AC-2 PASS: uniform interpolant equals =( ; q) and all clauses verified ({elapsed:?})");
}

#[test]
fn ac03_substitution_lemma() {
    let start = Instant::now();
    let limits = Limits::default();
    let pool = pool_props();
    let teams = all_pool_teams();
    let corpus = corpus();

    let mut pairs = 0u64;
    for f in corpus {
        let base = models_of(f, &pool, &limits).unwrap();
        for p in &pool {
            for value in [true, false] {
                let substituted = models_of(&f.substitute_const(p, value), &pool, &limits).unwrap();
                for x in teams {
                    let lhs = substituted.contains(x);
                    let rhs = base.contains(&x.substitute_const(p, value));
                    assert_eq!(
                        lhs, rhs,
                        "AC-3: substitution lemma failed for {f} [{}|{}] at {x}",
                        p,
                        if value { "top" } else { "bot" }
                    );
                    // on teams that already decide p, substitution is free
                    if x.members().all(|s| s.value(p) == Some(value)) {
                        assert_eq!(base.contains(x), lhs);
                    }
                    pairs += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(pairs >= 10_000, "AC-3 needs at least 10^4 pairs, got {pairs}");
    assert!(elapsed.as_secs_f64() < 60.0, "AC-3 exceeded 60s: {elapsed:?}");
    println!(
        "AC-3 PASS: substitution lemma on {} formulas x teams = {pairs} pairs, 0 exceptions ({elapsed:?})",
        corpus.len()
    );
}

#[test]
fn ac04_downward_lemma() {
    let start = Instant::now();
    let limits = Limits::default();
    let mut downward_formulas = 0u64;
    let mut entailments = 0u64;
    for f in corpus() {
        let lang = f.free_props();
        let report = closure_report(f, &lang, &limits).unwrap();
        if !report.downward.holds() {
            continue;
        }
        downward_formulas += 1;
        for p in &lang {
            let g = Formula::split(f.substitute_const(p, true), f.substitute_const(p, false));
            assert!(
                entails_prop(f, &g, &limits).unwrap().holds(),
                "AC-4: downward lemma failed for {f} at {p}"
            );
            entailments += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(downward_formulas > 0);
    println!(
        "AC-4 PASS: downward lemma on {downward_formulas} downward-closed formulas, {entailments} entailments, 0 exceptions ({elapsed:?})"
    );
}

#[test]
fn ac05_propositional_uniform_interpolation() {
    let start = Instant::now();
    let limits = Limits::default();
    let corpus = corpus();

    // ||phi|| over the shared pool as bitmask over the 256 pool teams;
    // entailment over the pool equals entailment over the union language
    // by locality (cross-checked against entails_prop on a stride)
    let masks: Vec<PoolMask> = corpus.iter().map(|f| pool_mask(f, &limits)).collect();
    let mut cross_checked = 0u64;
    for (i, f) in corpus.iter().enumerate() {
        for (j, g) in corpus.iter().enumerate() {
            if (i * corpus.len() + j).is_multiple_of(997) {
                let direct = entails_prop(f, g, &limits).unwrap().holds();
                assert_eq!(direct, masks[i].subset_of(&masks[j]), "locality bridge at ({i},{j})");
                cross_checked += 1;
            }
        }
    }

    let mut interpolants = 0u64;
    let mut consequence_checks = 0u64;
    for (i, f) in corpus.iter().enumerate() {
        let lang: Vec<PropName> = f.free_props().into_iter().collect();
        for pick in 0..1usize << lang.len() {
            let keep: BTreeSet<PropName> = lang
                .iter()
                .enumerate()
                .filter(|(k, _)| pick >> k & 1 == 1)
                .map(|(_, p)| p.clone())
                .collect();
            let theta = uniform_interpolant_prop(f, &keep, &limits).unwrap();
            interpolants += 1;
            assert!(
                theta.free_props().is_subset(&keep),
                "AC-5: language clause failed for {f} keep {keep:?}"
            );
            let theta_mask = pool_mask(&theta, &limits);
            assert!(
                masks[i].subset_of(&theta_mask),
                "AC-5: premise entailment failed for {f} keep {keep:?}"
            );
            for (j, psi) in corpus.iter().enumerate() {
                // clause 2 gate: psi follows from f and shares only kept props
                if !masks[i].subset_of(&masks[j]) {
                    continue;
                }
                let shared_ok = f
                    .free_props()
                    .intersection(&psi.free_props())
                    .all(|p| keep.contains(p));
                if !shared_ok {
                    continue;
                }
                consequence_checks += 1;
                assert!(
                    theta_mask.subset_of(&masks[j]),
                    "AC-5: interpolant {theta} fails consequence {psi} of {f} (keep {keep:?})"
                );
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 600.0, "AC-5 exceeded 10min: {elapsed:?}");
    println!(
        "AC-5 PASS: {interpolants} interpolants, {consequence_checks} consequence checks, {cross_checked} locality cross-checks, 0 exceptions ({elapsed:?})"
    );
}

#[test]
fn ac10_amalgamation() {
    use teamlog::bisim::{
        amalgamate, is_bisimulation, max_bisim, team_amalgamate, team_bisimilar, TeamBisim,
    };
    use teamlog::kripke::TeamModel;

    let start = Instant::now();
    let mut rng = Lcg::new(0x5eed_cafe_f00d_0001);
    let p_lang = props(&["p", "q"]);
    let q_lang = props(&["q", "r"]);
    let shared = props(&["q"]);

    let mut nonempty_pairs = 0u64;
    let mut team_pairs = 0u64;
    let mut attempts = 0u64;
    while nonempty_pairs < 100 {
        attempts += 1;
        assert!(attempts < 10_000, "AC-10: generator starved");
        let m_size = 1 + (rng.next() % 3) as usize;
        let m = rng.model(&p_lang, m_size);
        let n_size = 1 + (rng.next() % 3) as usize;
        let n = rng.model(&q_lang, n_size);
        let b = max_bisim(&m, &n, &shared);
        if b.is_empty() {
            continue;
        }
        nonempty_pairs += 1;
        let am = amalgamate(&m, &n, &b, &p_lang, &q_lang).unwrap();
        is_bisimulation(am.model(), &m, &am.first_projection())
            .unwrap_or_else(|v| panic!("AC-10: first projection fails: {v}"));
        is_bisimulation(am.model(), &n, &am.second_projection())
            .unwrap_or_else(|v| panic!("AC-10: second projection fails: {v}"));

        // a team pair satisfying the precondition: X from the domain of B,
        // Y its image
        let x: BTreeSet<_> = m
            .worlds()
            .filter(|w| rng.next().is_multiple_of(2) && b.pairs().any(|(a, _)| &a == w))
            .cloned()
            .collect();
        let y: BTreeSet<_> = b
            .pairs()
            .filter(|(a, _)| x.contains(a))
            .map(|(_, v)| v.clone())
            .collect();
        let tm = TeamModel::new(m.clone(), x).unwrap();
        let tn = TeamModel::new(n.clone(), y).unwrap();
        if !matches!(team_bisimilar(&tm, &tn, &shared, None), TeamBisim::Bisimilar { .. }) {
            continue;
        }
        let out = team_amalgamate(&tm, &p_lang, &tn, &q_lang).unwrap();
        let tz = out.team_model();
        assert!(
            team_bisimilar(&tz, &tm, &p_lang, None).holds(),
            "AC-10: amalgam not P-bisimilar to the left input"
        );
        assert!(
            team_bisimilar(&tz, &tn, &q_lang, None).holds(),
            "AC-10: amalgam not Q-bisimilar to the right input"
        );
        team_pairs += 1;
    }
    let elapsed = start.elapsed();
    println!(
        "AC-10 PASS: {nonempty_pairs} model pairs with nonempty shared bisimulation, {team_pairs} team amalgams, 0 exceptions ({elapsed:?})"
    );
}

#[test]
fn ac11_closure_preservation() {
    let start = Instant::now();
    let limits = Limits::default();
    let mut downward_cases = 0u64;
    let mut union_cases = 0u64;
    for f in corpus() {
        let lang: Vec<PropName> = f.free_props().into_iter().collect();
        let report = closure_report(f, &f.free_props(), &limits).unwrap();
        if !report.downward.holds() && !report.union.holds() {
            continue;
        }
        for pick in 0..1usize << lang.len() {
            let keep: BTreeSet<PropName> = lang
                .iter()
                .enumerate()
                .filter(|(k, _)| pick >> k & 1 == 1)
                .map(|(_, p)| p.clone())
                .collect();
            let theta = uniform_interpolant_prop(f, &keep, &limits).unwrap();
            let treport = closure_report(&theta, &keep, &limits).unwrap();
            if report.downward.holds() {
                assert!(
                    treport.downward.holds(),
                    "AC-11: downward closure lost interpolating {f} to {keep:?}: {theta}"
                );
                downward_cases += 1;
            }
            if report.union.holds() {
                assert!(
                    treport.union.holds(),
                    "AC-11: union closure lost interpolating {f} to {keep:?}: {theta}"
                );
                union_cases += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(downward_cases > 0 && union_cases > 0);
    println!(
        "AC-11 PASS: closure preserved across {downward_cases} downward and {union_cases} union-closed interpolations, 0 exceptions ({elapsed:?})"
    );
}
