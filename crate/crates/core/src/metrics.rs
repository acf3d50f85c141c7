//! Scoring of ranked predictions: Recall@k, Success Rate and
//! Reward-per-Dialogue-Length.
//!
//! Recall is computed per instance and macro-averaged by default. SR and RDL
//! group instances by dialogue; both look only at the top `sr_cutoff` items
//! of each ranking. Sums use compensated accumulation so the result does not
//! depend on evaluation order beyond the last ulp.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::Answer;
use crate::error::{BenchError, Result};
use crate::fingerprint::fingerprint;
use crate::instances::{EvaluationInstance, Variant};
use crate::item::ItemId;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankedPrediction {
    pub instance_id: String,
    pub ranking: Vec<ItemId>,
}

/// Predictions indexed by instance id.
#[derive(Debug, Clone, Default)]
pub struct PredictionSet {
    by_id: HashMap<String, Vec<ItemId>>,
}

impl PredictionSet {
    /// Rejects duplicate instance ids, duplicate items within a ranking and
    /// placeholder (negative) ids.
    pub fn new(predictions: impl IntoIterator<Item = RankedPrediction>) -> Result<Self> {
        let mut by_id = HashMap::new();
        for p in predictions {
            let mut seen = HashSet::new();
            for id in &p.ranking {
                if id.is_masked() {
                    return Err(BenchError::InvalidPrediction {
                        instance_id: p.instance_id,
                        message: format!("placeholder id {id} cannot be recommended"),
                    });
                }
                if !seen.insert(id) {
                    return Err(BenchError::InvalidPrediction {
                        instance_id: p.instance_id,
                        message: format!("item {id} ranked twice"),
                    });
                }
            }
            if by_id.contains_key(&p.instance_id) {
                return Err(BenchError::DuplicatePrediction(p.instance_id));
            }
            by_id.insert(p.instance_id, p.ranking);
        }
        Ok(PredictionSet { by_id })
    }

    pub fn get(&self, instance_id: &str) -> Option<&[ItemId]> {
        self.by_id.get(instance_id).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.by_id.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_id.is_empty()
    }

    /// Rankings for every instance, or the ids that have none.
    pub fn align<'a>(&'a self, instances: &[EvaluationInstance]) -> Result<Vec<&'a [ItemId]>> {
        let mut missing = Vec::new();
        let mut out = Vec::with_capacity(instances.len());
        for inst in instances {
            match self.get(&inst.instance_id) {
                Some(r) => out.push(r),
                None => missing.push(inst.instance_id.clone()),
            }
        }
        if missing.is_empty() {
            Ok(out)
        } else {
            Err(BenchError::MissingPredictions(missing))
        }
    }
}

/// Neumaier compensated sum.
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut c = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            c += (sum - t) + v;
        } else {
            c += (v - t) + sum;
        }
        sum = t;
    }
    sum + c
}

/// Number of ground-truth entries found in the first `k` ranked items.
/// Placeholder ids never count.
pub fn hits_at_k(ranking: &[ItemId], ground_truth: &[ItemId], k: usize) -> usize {
    let top: HashSet<&ItemId> = ranking.iter().take(k).collect();
    ground_truth
        .iter()
        .filter(|g| !g.is_masked() && top.contains(g))
        .count()
}

pub fn recall_at_k(pred: &RankedPrediction, inst: &EvaluationInstance, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(BenchError::Config(
            "recall cutoff k must be at least 1".into(),
        ));
    }
    if inst.ground_truth.is_empty() {
        return Err(BenchError::EmptyGroundTruth(inst.instance_id.clone()));
    }
    Ok(hits_at_k(&pred.ranking, &inst.ground_truth, k) as f64 / inst.ground_truth.len() as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceScore {
    pub instance_id: String,
    pub dialogue_id: String,
    pub ground_truth_size: usize,
    pub hits_at: BTreeMap<usize, usize>,
    pub recall_at: BTreeMap<usize, f64>,
    /// 1-based rank of the first ground-truth item anywhere in the ranking.
    pub hit_rank: Option<usize>,
}

pub fn score_instance(
    ranking: &[ItemId],
    inst: &EvaluationInstance,
    ks: &[usize],
) -> Result<InstanceScore> {
    if inst.ground_truth.is_empty() {
        return Err(BenchError::EmptyGroundTruth(inst.instance_id.clone()));
    }
    let n = inst.ground_truth.len();
    let mut hits_at = BTreeMap::new();
    let mut recall_at = BTreeMap::new();
    for &k in ks {
        let h = hits_at_k(ranking, &inst.ground_truth, k);
        hits_at.insert(k, h);
        recall_at.insert(k, h as f64 / n as f64);
    }
    let gt: HashSet<&ItemId> = inst
        .ground_truth
        .iter()
        .filter(|g| !g.is_masked())
        .collect();
    let hit_rank = ranking.iter().position(|r| gt.contains(r)).map(|p| p + 1);
    Ok(InstanceScore {
        instance_id: inst.instance_id.clone(),
        dialogue_id: inst.dialogue_id.clone(),
        ground_truth_size: n,
        hits_at,
        recall_at,
        hit_rank,
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RdlDenominator {
    #[default]
    AllTurns,
    RecommenderTurns,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecallAverage {
    /// Mean of per-instance recall.
    #[default]
    Macro,
    /// Total hits over total ground-truth items.
    Micro,
}

pub const MAX_SR_CUTOFF: usize = 50;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ScoringConfig {
    pub ks: Vec<usize>,
    pub sr_cutoff: usize,
    pub rdl_denominator: RdlDenominator,
    pub recall_average: RecallAverage,
}

impl Default for ScoringConfig {
    fn default() -> Self {
        ScoringConfig {
            ks: vec![1, 10, 50],
            sr_cutoff: 1,
            rdl_denominator: RdlDenominator::AllTurns,
            recall_average: RecallAverage::Macro,
        }
    }
}

impl ScoringConfig {
    pub fn validate(&self) -> Result<()> {
        if self.ks.is_empty() || self.ks.contains(&0) {
            return Err(BenchError::Config(
                "cutoffs must be a non-empty list of integers >= 1".into(),
            ));
        }
        if !(1..=MAX_SR_CUTOFF).contains(&self.sr_cutoff) {
            return Err(BenchError::Config(format!(
                "sr cutoff must lie in 1..={MAX_SR_CUTOFF}, got {}",
                self.sr_cutoff
            )));
        }
        Ok(())
    }

    pub fn fingerprint(&self) -> String {
        fingerprint(self)
    }
}

/// Reward for recommending a ground-truth item: 1.0 if the seeker liked
/// it, 0.5 if they saw it without liking it, 0 otherwise.
pub fn reward(feedback: Option<&crate::instances::Feedback>) -> f64 {
    match feedback {
        Some(f) if f.liked == Answer::Yes => 1.0,
        Some(f) if f.seen == Answer::Yes => 0.5,
        _ => 0.0,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DialogueScore {
    pub dialogue_id: String,
    pub instances: usize,
    pub success: bool,
    pub reward: f64,
    pub turns: usize,
    pub value: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// Hits on items for which the seeker filled no form.
    pub hits_without_form: usize,
    /// Predictions whose instance id is not in the scored instance set.
    pub unmatched_predictions: usize,
}

/// Per-dialogue SR and RDL ingredients, in order of first appearance.
pub fn score_dialogues(
    instances: &[EvaluationInstance],
    rankings: &[&[ItemId]],
    cutoff: usize,
    denominator: RdlDenominator,
) -> Result<(Vec<DialogueScore>, usize)> {
    assert_eq!(
        instances.len(),
        rankings.len(),
        "rankings must be aligned with instances"
    );
    let mut order: Vec<&str> = Vec::new();
    let mut groups: HashMap<&str, Vec<usize>> = HashMap::new();
    for (i, inst) in instances.iter().enumerate() {
        groups
            .entry(inst.dialogue_id.as_str())
            .or_insert_with(|| {
                order.push(inst.dialogue_id.as_str());
                Vec::new()
            })
            .push(i);
    }

    let mut missing_forms = 0usize;
    let mut out = Vec::with_capacity(order.len());
    for dialogue_id in order {
        let idx = &groups[dialogue_id];
        let mut success = false;
        let mut rewards = Vec::with_capacity(idx.len());
        for &i in idx {
            let inst = &instances[i];
            let top: HashSet<&ItemId> = rankings[i].iter().take(cutoff).collect();
            let mut best: Option<f64> = None;
            for g in inst
                .ground_truth
                .iter()
                .filter(|g| !g.is_masked() && top.contains(g))
            {
                let fb = inst.feedback.get(g);
                if fb.is_none() {
                    missing_forms += 1;
                }
                let r = reward(fb);
                best = Some(best.map_or(r, |b: f64| b.max(r)));
            }
            if let Some(r) = best {
                success = true;
                rewards.push(r);
            }
        }
        let first = &instances[idx[0]];
        let turns = match denominator {
            RdlDenominator::AllTurns => first.dialogue_turns,
            RdlDenominator::RecommenderTurns => first.dialogue_recommender_turns,
        };
        if turns == 0 {
            return Err(BenchError::Config(format!(
                "instance {} carries no dialogue turn counts",
                first.instance_id
            )));
        }
        let reward = compensated_sum(rewards);
        out.push(DialogueScore {
            dialogue_id: dialogue_id.to_owned(),
            instances: idx.len(),
            success,
            reward,
            turns,
            value: reward / turns as f64,
        });
    }
    Ok((out, missing_forms))
}

pub fn success_rate(
    instances: &[EvaluationInstance],
    predictions: &PredictionSet,
    cutoff: usize,
) -> Result<f64> {
    let rankings = predictions.align(instances)?;
    let (dialogues, _) = score_dialogues(instances, &rankings, cutoff, RdlDenominator::AllTurns)?;
    if dialogues.is_empty() {
        return Err(BenchError::EmptyInstanceSet);
    }
    Ok(dialogues.iter().filter(|d| d.success).count() as f64 / dialogues.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RdlOutcome {
    pub value: f64,
    pub hits_without_form: usize,
}

pub fn rdl(
    instances: &[EvaluationInstance],
    predictions: &PredictionSet,
    cutoff: usize,
    denominator: RdlDenominator,
) -> Result<RdlOutcome> {
    let rankings = predictions.align(instances)?;
    let (dialogues, missing) = score_dialogues(instances, &rankings, cutoff, denominator)?;
    if dialogues.is_empty() {
        return Err(BenchError::EmptyInstanceSet);
    }
    Ok(RdlOutcome {
        value: compensated_sum(dialogues.iter().map(|d| d.value)) / dialogues.len() as f64,
        hits_without_form: missing,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub name: String,
    pub variant: Variant,
    pub instance_count: usize,
    pub dialogue_count: usize,
    pub recall_average: RecallAverage,
    pub recall: BTreeMap<usize, f64>,
    pub sr_cutoff: usize,
    pub success_rate: f64,
    pub rdl_denominator: RdlDenominator,
    pub rdl: f64,
    pub diagnostics: Diagnostics,
    /// Fingerprint of the instance artifact that was scored, if known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instances_fingerprint: Option<String>,
    pub config_fingerprint: String,
}

pub fn aggregate(
    instance_scores: &[InstanceScore],
    dialogue_scores: &[DialogueScore],
    variant: Variant,
    config: &ScoringConfig,
) -> Result<MetricReport> {
    if instance_scores.is_empty() || dialogue_scores.is_empty() {
        return Err(BenchError::EmptyInstanceSet);
    }
    config.validate()?;
    let n = instance_scores.len() as f64;
    let mut recall = BTreeMap::new();
    for &k in &config.ks {
        let value = match config.recall_average {
            RecallAverage::Macro => {
                compensated_sum(
                    instance_scores
                        .iter()
                        .map(|s| s.recall_at.get(&k).copied().unwrap_or(0.0)),
                ) / n
            }
            RecallAverage::Micro => {
                let hits: usize = instance_scores
                    .iter()
                    .map(|s| s.hits_at.get(&k).copied().unwrap_or(0))
                    .sum();
                let total: usize = instance_scores.iter().map(|s| s.ground_truth_size).sum();
                hits as f64 / total as f64
            }
        };
        recall.insert(k, value);
    }
    let d = dialogue_scores.len() as f64;
    let successes = dialogue_scores.iter().filter(|s| s.success).count();
    Ok(MetricReport {
        name: String::new(),
        variant,
        instance_count: instance_scores.len(),
        dialogue_count: dialogue_scores.len(),
        recall_average: config.recall_average,
        recall,
        sr_cutoff: config.sr_cutoff,
        success_rate: successes as f64 / d,
        rdl_denominator: config.rdl_denominator,
        rdl: compensated_sum(dialogue_scores.iter().map(|s| s.value)) / d,
        diagnostics: Diagnostics::default(),
        instances_fingerprint: None,
        config_fingerprint: fingerprint(&(config, variant)),
    })
}

/// Score a prediction set against an instance set end to end.
pub fn evaluate(
    instances: &[EvaluationInstance],
    predictions: &PredictionSet,
    config: &ScoringConfig,
) -> Result<MetricReport> {
    config.validate()?;
    if instances.is_empty() {
        return Err(BenchError::EmptyInstanceSet);
    }
    let variant = instances[0].variant;
    if let Some(other) = instances.iter().find(|i| i.variant != variant) {
        return Err(BenchError::Config(format!(
            "mixed variants in instance set ({variant} and {})",
            other.variant
        )));
    }
    let mut ids = HashSet::new();
    for inst in instances {
        if !ids.insert(inst.instance_id.as_str()) {
            return Err(BenchError::Config(format!(
                "duplicate instance id {}",
                inst.instance_id
            )));
        }
    }
    let rankings = predictions.align(instances)?;

    let instance_scores: Vec<InstanceScore> = instances
        .par_iter()
        .zip(rankings.par_iter())
        .map(|(inst, r)| score_instance(r, inst, &config.ks))
        .collect::<Result<_>>()?;
    let (dialogue_scores, hits_without_form) = score_dialogues(
        instances,
        &rankings,
        config.sr_cutoff,
        config.rdl_denominator,
    )?;

    let mut report = aggregate(&instance_scores, &dialogue_scores, variant, config)?;
    report.diagnostics = Diagnostics {
        hits_without_form,
        unmatched_predictions: predictions.len() - instances.len(),
    };
    Ok(report)
}

impl MetricReport {
    pub const CSV_HEADER: &'static str =
        "name,variant,instances,dialogues,recall_average,cutoff,recall,sr_cutoff,success_rate,rdl_denominator,rdl,config_fingerprint";

    /// One CSV row per recall cutoff.
    pub fn csv_rows(&self) -> Vec<String> {
        self.recall
            .iter()
            .map(|(k, r)| {
                format!(
                    "{},{},{},{},{},{},{:.6},{},{:.6},{},{:.6},{}",
                    self.name,
                    self.variant,
                    self.instance_count,
                    self.dialogue_count,
                    enum_str(&self.recall_average),
                    k,
                    r,
                    self.sr_cutoff,
                    self.success_rate,
                    enum_str(&self.rdl_denominator),
                    self.rdl,
                    self.config_fingerprint
                )
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for row in self.csv_rows() {
            out.push_str(&row);
            out.push('\n');
        }
        out
    }
}

/// Wide comparison table: one row per report, one column per cutoff.
pub fn comparison_table(reports: &[MetricReport]) -> String {
    let ks: std::collections::BTreeSet<usize> = reports
        .iter()
        .flat_map(|r| r.recall.keys().copied())
        .collect();
    let mut out = String::from("name,variant,instances,dialogues");
    for k in &ks {
        out.push_str(&format!(",R@{k}"));
    }
    out.push_str(",SR,RDL,config_fingerprint\n");
    for r in reports {
        out.push_str(&format!(
            "{},{},{},{}",
            r.name, r.variant, r.instance_count, r.dialogue_count
        ));
        for k in &ks {
            match r.recall.get(k) {
                Some(v) => out.push_str(&format!(",{v:.3}")),
                None => out.push(','),
            }
        }
        out.push_str(&format!(
            ",{:.3},{:.3},{}\n",
            r.success_rate, r.rdl, r.config_fingerprint
        ));
    }
    out
}

fn enum_str<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|j| j.as_str().map(str::to_owned))
        .unwrap_or_default()
}
