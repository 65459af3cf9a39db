//! JSON model files:
//! `{"worlds":["w1","w2"],"edges":[["w1","w2"]],"val":{"w1":["p"],"w2":[]},"team":["w1"]}`
//! with `team` optional.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{KripkeError, KripkeModel, WorldId};
use crate::syntax::PropName;

#[derive(Serialize, Deserialize)]
struct ModelFile {
    worlds: Vec<String>,
    edges: Vec<(String, String)>,
    val: BTreeMap<String, Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    team: Option<Vec<String>>,
}

impl KripkeModel {
    /// Parses a model file; returns the model and the optional team.
    pub fn from_json(text: &str) -> Result<(KripkeModel, Option<BTreeSet<WorldId>>), KripkeError> {
        let file: ModelFile =
            serde_json::from_str(text).map_err(|e| KripkeError::Format(e.to_string()))?;
        let worlds: BTreeSet<WorldId> = file.worlds.into_iter().map(WorldId::new).collect();
        let edges = file
            .edges
            .into_iter()
            .map(|(s, t)| (WorldId::new(s), WorldId::new(t)))
            .collect();
        let mut labels = BTreeMap::new();
        for (w, props) in file.val {
            let mut set = BTreeSet::new();
            for p in props {
                set.insert(
                    PropName::new(&p)
                        .map_err(|_| KripkeError::Format(format!("bad proposition '{p}'")))?,
                );
            }
            labels.insert(WorldId::new(w), set);
        }
        let model = KripkeModel::new(worlds, edges, labels)?;
        let team = match file.team {
            None => None,
            Some(ws) => {
                let team: BTreeSet<WorldId> = ws.into_iter().map(WorldId::new).collect();
                for w in &team {
                    if !model.has_world(w) {
                        return Err(KripkeError::TeamOutsideModel(w.clone()));
                    }
                }
                Some(team)
            }
        };
        Ok((model, team))
    }

    /// Serializes the model (and team, if given) in the model file format.
    pub fn to_json(&self, team: Option<&BTreeSet<WorldId>>) -> String {
        let file = ModelFile {
            worlds: self.worlds().map(|w| w.as_str().to_string()).collect(),
            edges: self
                .edges()
                .map(|(s, t)| (s.as_str().to_string(), t.as_str().to_string()))
                .collect(),
            val: self
                .worlds()
                .map(|w| {
                    let props = self.labels[w].iter().map(|p| p.as_str().to_string()).collect();
                    (w.as_str().to_string(), props)
                })
                .collect(),
            team: team.map(|t| t.iter().map(|w| w.as_str().to_string()).collect()),
        };
        serde_json::to_string(&file).expect("model files serialize")
    }
}
