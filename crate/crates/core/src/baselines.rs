//! Reference recommenders: the naive context-repeater and global popularity.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{BenchError, Result};
use crate::instances::{EvaluationInstance, Role};
use crate::item::ItemId;
use crate::metrics::RankedPrediction;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NaiveScope {
    #[default]
    BothSpeakers,
    SeekerOnly,
}

/// Context items, most recently mentioned first. Never longer than the
/// number of distinct context items.
pub fn naive_recommend(inst: &EvaluationInstance, scope: NaiveScope) -> Vec<ItemId> {
    let mentions: Vec<&ItemId> = inst
        .context
        .iter()
        .filter(|t| scope == NaiveScope::BothSpeakers || t.role == Role::Seeker)
        .flat_map(|t| t.mentions.iter())
        .collect();

    let mut seen = HashSet::new();
    mentions
        .into_iter()
        .rev()
        .filter(|id| !id.is_masked() && seen.insert(*id))
        .cloned()
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PopularityModel {
    /// Items by descending ground-truth frequency, ties by ascending id.
    pub ranking: Vec<ItemId>,
    pub counts: Vec<usize>,
}

impl PopularityModel {
    /// Count ground-truth occurrences over training instances. Placeholder
    /// ids are ignored.
    pub fn fit(train: &[EvaluationInstance]) -> Self {
        let mut freq: HashMap<&ItemId, usize> = HashMap::new();
        for id in train.iter().flat_map(|i| i.ground_truth.iter()) {
            if !id.is_masked() {
                *freq.entry(id).or_insert(0) += 1;
            }
        }
        let mut items: Vec<(&ItemId, usize)> = freq.into_iter().collect();
        items.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
        PopularityModel {
            ranking: items.iter().map(|(id, _)| (*id).clone()).collect(),
            counts: items.iter().map(|(_, c)| *c).collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.ranking.is_empty()
    }
}

/// Top-k of the global popularity order. The instance is ignored.
pub fn popularity_recommend(
    model: &PopularityModel,
    _inst: &EvaluationInstance,
    k: usize,
) -> Result<Vec<ItemId>> {
    if k == 0 {
        return Err(BenchError::Config(
            "popularity cutoff k must be at least 1".into(),
        ));
    }
    Ok(model.ranking.iter().take(k).cloned().collect())
}

pub fn naive_predictions(
    instances: &[EvaluationInstance],
    scope: NaiveScope,
) -> Vec<RankedPrediction> {
    instances
        .iter()
        .map(|inst| RankedPrediction {
            instance_id: inst.instance_id.clone(),
            ranking: naive_recommend(inst, scope),
        })
        .collect()
}

pub fn popularity_predictions(
    model: &PopularityModel,
    instances: &[EvaluationInstance],
    k: usize,
) -> Result<Vec<RankedPrediction>> {
    instances
        .iter()
        .map(|inst| {
            Ok(RankedPrediction {
                instance_id: inst.instance_id.clone(),
                ranking: popularity_recommend(model, inst, k)?,
            })
        })
        .collect()
}
