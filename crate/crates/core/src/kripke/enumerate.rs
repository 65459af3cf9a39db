//! Exhaustive enumeration of small Kripke models, used by the bounded
//! verification harnesses. Deterministic order: labelings ascending, then
//! edge sets ascending.

use std::collections::{BTreeMap, BTreeSet};

use super::{KripkeModel, WorldId};
use crate::syntax::PropName;

/// Iterator over every model with exactly `n` worlds (`w0..w{n-1}`) and
/// every labeling over `props`.
pub struct ModelEnum {
    props: Vec<PropName>,
    worlds: Vec<WorldId>,
    label_ix: u64,
    edge_ix: u64,
    label_count: u64,
    edge_count: u64,
}

/// All models on `n` named worlds over `props`. The number of models is
/// `2^(|props|*n) * 2^(n*n)`; callers keep `n` small.
pub fn all_models(props: &BTreeSet<PropName>, n: usize) -> ModelEnum {
    assert!(n * n + props.len() * n <= 62, "enumeration grid too large");
    ModelEnum {
        props: props.iter().cloned().collect(),
        worlds: (0..n).map(|i| WorldId::new(format!("w{i}"))).collect(),
        label_ix: 0,
        edge_ix: 0,
        label_count: 1 << (props.len() * n),
        edge_count: 1 << (n * n),
    }
}

impl Iterator for ModelEnum {
    type Item = KripkeModel;

    fn next(&mut self) -> Option<KripkeModel> {
        if self.label_ix >= self.label_count {
            return None;
        }
        let n = self.worlds.len();
        let p = self.props.len();
        let mut labels = BTreeMap::new();
        for (i, w) in self.worlds.iter().enumerate() {
            let mut set = BTreeSet::new();
            for (j, prop) in self.props.iter().enumerate() {
                if self.label_ix >> (i * p + j) & 1 == 1 {
                    set.insert(prop.clone());
                }
            }
            labels.insert(w.clone(), set);
        }
        let mut edges = BTreeSet::new();
        for (i, s) in self.worlds.iter().enumerate() {
            for (j, t) in self.worlds.iter().enumerate() {
                if self.edge_ix >> (i * n + j) & 1 == 1 {
                    edges.insert((s.clone(), t.clone()));
                }
            }
        }
        let model = KripkeModel::new(self.worlds.iter().cloned().collect(), edges, labels)
            .expect("enumerated models are well-formed");
        self.edge_ix += 1;
        if self.edge_ix >= self.edge_count {
            self.edge_ix = 0;
            self.label_ix += 1;
        }
        Some(model)
    }
}

/// All subsets of the model's worlds, ascending.
pub fn all_teams(model: &KripkeModel) -> Vec<BTreeSet<WorldId>> {
    let worlds: Vec<&WorldId> = model.worlds().collect();
    (0..1usize << worlds.len())
        .map(|mask| {
            worlds
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &w)| w.clone())
                .collect()
        })
        .collect()
}
