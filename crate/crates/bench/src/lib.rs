//! Benchmark fixtures for the team-logic workbench.

use std::collections::{BTreeMap, BTreeSet};

use teamlog::kripke::{KripkeModel, WorldId};
use teamlog::prop::Team;
use teamlog::syntax::{parse, Formula, PropName};

pub fn pn(s: &str) -> PropName {
    PropName::new(s).unwrap()
}

/// The worked dependence example: =(p ; q) & =( ; p).
pub fn dependence_formula() -> Formula {
    parse("=(p ; q) & =( ; p)").unwrap()
}

/// A splitjunction-heavy formula over three propositions.
pub fn split_heavy_formula() -> Formula {
    parse("(p & q \\/ ~p & r) \\/+ (=(p ; q) \\/ inc(q ; r)) \\/ (NE & ~r || =( ; p))").unwrap()
}

/// The full team over `names` (every valuation a member).
pub fn full_team(names: &[&str]) -> Team {
    let props: Vec<PropName> = names.iter().map(|s| pn(s)).collect();
    let members: Vec<teamlog::prop::Valuation> = (0..1usize << props.len())
        .map(|ix| {
            let bits: BTreeMap<PropName, bool> = props
                .iter()
                .enumerate()
                .map(|(k, p)| (p.clone(), ix >> k & 1 == 1))
                .collect();
            teamlog::prop::Valuation::new(bits)
        })
        .collect();
    Team::new(props.into_iter().collect(), members).unwrap()
}

/// A ring of `n` worlds with alternating labels and a chord per world.
pub fn ring_model(n: usize) -> KripkeModel {
    let worlds: Vec<WorldId> = (0..n).map(|i| WorldId::new(format!("w{i}"))).collect();
    let mut edges = BTreeSet::new();
    for i in 0..n {
        edges.insert((worlds[i].clone(), worlds[(i + 1) % n].clone()));
        edges.insert((worlds[i].clone(), worlds[(i + 2) % n].clone()));
    }
    let labels: BTreeMap<WorldId, BTreeSet<PropName>> = worlds
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let mut set = BTreeSet::new();
            if i % 2 == 0 {
                set.insert(pn("p"));
            }
            if i % 3 == 0 {
                set.insert(pn("q"));
            }
            (w.clone(), set)
        })
        .collect();
    KripkeModel::new(worlds.into_iter().collect(), edges, labels).unwrap()
}
