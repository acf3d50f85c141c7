//! Evaluation instances: turn merging, instance construction, the
//! deduplicated test variant and catalog masking.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::catalog::{ItemCatalog, NegativeIdAllocator};
use crate::corpus::{extract_mentions, rewrite_mentions, Answer, RawDialogue, Suggested};
use crate::item::ItemId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Seeker,
    Recommender,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Turn {
    pub role: Role,
    pub text: String,
    pub mentions: Vec<ItemId>,
    #[serde(default, skip_serializing)]
    pub source_message_ids: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Standard,
    Dedup,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Standard => "standard",
            Variant::Dedup => "dedup",
        })
    }
}

/// Which recommender mentions count as ground truth.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroundTruthMode {
    /// Every movie the recommender mentioned in the turn.
    #[default]
    Mentioned,
    /// Only mentions whose form says `suggested = yes`.
    SuggestedOnly,
}

/// Seeker questionnaire answers for a ground-truth item.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Feedback {
    pub seen: Answer,
    pub liked: Answer,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationInstance {
    pub instance_id: String,
    pub dialogue_id: String,
    pub variant: Variant,
    pub context: Vec<Turn>,
    pub ground_truth: Vec<ItemId>,
    #[serde(default)]
    pub dropped_ground_truth: Vec<ItemId>,
    /// Merged turns in the whole dialogue.
    #[serde(default)]
    pub dialogue_turns: usize,
    /// Merged recommender turns in the whole dialogue.
    #[serde(default)]
    pub dialogue_recommender_turns: usize,
    /// Seeker answers keyed by ground-truth id.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub feedback: BTreeMap<ItemId, Feedback>,
}

impl EvaluationInstance {
    /// All context mentions in order of occurrence.
    pub fn context_mentions(&self) -> impl Iterator<Item = &ItemId> {
        self.context.iter().flat_map(|t| t.mentions.iter())
    }

    pub fn context_mention_set(&self) -> HashSet<&ItemId> {
        self.context_mentions().collect()
    }

    /// True when some ground-truth item already occurs in the context.
    pub fn repeats_context(&self) -> bool {
        let ctx = self.context_mention_set();
        self.ground_truth.iter().any(|g| ctx.contains(g))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DropRecord {
    pub instance_id: String,
    pub dialogue_id: String,
    pub dropped_ground_truth: Vec<ItemId>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DedupOutcome {
    Kept(EvaluationInstance),
    Dropped(DropRecord),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TestVariant {
    pub name: Variant,
    pub instances: Vec<EvaluationInstance>,
    pub drop_log: Vec<DropRecord>,
}

/// Merge consecutive same-sender messages into alternating turns.
///
/// The initiator is the seeker; any other sender is treated as the
/// recommender (validation flags unknown senders separately).
pub fn merge_turns(d: &RawDialogue) -> Vec<Turn> {
    let mut turns: Vec<Turn> = Vec::new();
    for msg in &d.messages {
        let role = if msg.sender_worker_id == d.initiator_worker_id {
            Role::Seeker
        } else {
            Role::Recommender
        };
        let mentions = extract_mentions(&msg.text)
            .into_iter()
            .map(|m| ItemId::new(m.id));
        match turns.last_mut() {
            Some(last) if last.role == role => {
                last.text.push(' ');
                last.text.push_str(&msg.text);
                last.mentions.extend(mentions);
                last.source_message_ids.push(msg.message_id);
            }
            _ => turns.push(Turn {
                role,
                text: msg.text.clone(),
                mentions: mentions.collect(),
                source_message_ids: vec![msg.message_id],
            }),
        }
    }
    turns
}

fn unique_in_order<'a>(ids: impl IntoIterator<Item = &'a ItemId>) -> Vec<ItemId> {
    let mut seen = HashSet::new();
    ids.into_iter()
        .filter(|id| seen.insert(*id))
        .cloned()
        .collect()
}

/// One standard instance per recommender turn that has at least one
/// mention and at least one preceding turn.
pub fn build_instances(turns: &[Turn], dialogue_id: &str) -> Vec<EvaluationInstance> {
    build_filtered(turns, dialogue_id, |_| true)
}

fn build_filtered(
    turns: &[Turn],
    dialogue_id: &str,
    keep: impl Fn(&ItemId) -> bool,
) -> Vec<EvaluationInstance> {
    let recommender_turns = turns.iter().filter(|t| t.role == Role::Recommender).count();
    turns
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, t)| t.role == Role::Recommender)
        .filter_map(|(idx, t)| {
            let ground_truth = unique_in_order(t.mentions.iter().filter(|id| keep(id)));
            if ground_truth.is_empty() {
                return None;
            }
            Some(EvaluationInstance {
                instance_id: format!("{dialogue_id}#{idx}"),
                dialogue_id: dialogue_id.to_owned(),
                variant: Variant::Standard,
                context: turns[..idx].to_vec(),
                ground_truth,
                dropped_ground_truth: Vec::new(),
                dialogue_turns: turns.len(),
                dialogue_recommender_turns: recommender_turns,
                feedback: BTreeMap::new(),
            })
        })
        .collect()
}

/// Build the standard instances of one dialogue, attaching seeker feedback
/// for every ground-truth item that has a form.
pub fn build_dialogue_instances(d: &RawDialogue, mode: GroundTruthMode) -> Vec<EvaluationInstance> {
    let turns = merge_turns(d);
    let mut instances = match mode {
        GroundTruthMode::Mentioned => build_instances(&turns, &d.conversation_id),
        GroundTruthMode::SuggestedOnly => build_filtered(&turns, &d.conversation_id, |id| {
            d.suggestion_form(id.as_str())
                .is_some_and(|f| f.suggested == Suggested::Yes)
        }),
    };
    for inst in &mut instances {
        for id in &inst.ground_truth {
            if let Some(f) = d.seeker_form(id.as_str()) {
                inst.feedback.insert(
                    id.clone(),
                    Feedback {
                        seen: f.seen,
                        liked: f.liked,
                    },
                );
            }
        }
    }
    instances
}

/// Remove ground-truth items already mentioned in the context.
pub fn deduplicate(inst: &EvaluationInstance) -> DedupOutcome {
    let ctx = inst.context_mention_set();
    let (repeated, fresh): (Vec<ItemId>, Vec<ItemId>) = inst
        .ground_truth
        .iter()
        .cloned()
        .partition(|g| ctx.contains(g));

    let mut dropped = inst.dropped_ground_truth.clone();
    dropped.extend(repeated);

    if fresh.is_empty() {
        return DedupOutcome::Dropped(DropRecord {
            instance_id: inst.instance_id.clone(),
            dialogue_id: inst.dialogue_id.clone(),
            dropped_ground_truth: dropped,
            reason: "ground truth fully repeated in context".to_owned(),
        });
    }

    let mut out = inst.clone();
    out.feedback.retain(|id, _| fresh.contains(id));
    out.ground_truth = fresh;
    out.dropped_ground_truth = dropped;
    out.variant = Variant::Dedup;
    DedupOutcome::Kept(out)
}

/// Restrict an instance to what a catalog can resolve.
///
/// Uncovered context mentions disappear from the mention lists and their
/// tokens are replaced by the movie title from `titles`. Uncovered
/// ground-truth items get a fresh negative id each, so they stay counted as
/// misses. Covered ids become canonical catalog ids. Ids that are already
/// negative pass through unchanged.
pub fn apply_catalog_mask(
    inst: &EvaluationInstance,
    cat: &ItemCatalog,
    titles: &BTreeMap<String, String>,
    neg: &mut NegativeIdAllocator,
) -> EvaluationInstance {
    let mut out = inst.clone();

    for turn in &mut out.context {
        turn.text = rewrite_mentions(&turn.text, |id| {
            if cat.contains(id) {
                None
            } else {
                Some(titles.get(id).map(String::as_str).unwrap_or(""))
            }
        });
        turn.mentions = turn
            .mentions
            .iter()
            .filter_map(|id| cat.resolve(id.as_str()))
            .collect();
    }

    let mut feedback = BTreeMap::new();
    out.ground_truth = inst
        .ground_truth
        .iter()
        .map(|id| {
            if id.is_masked() {
                return id.clone();
            }
            match cat.resolve(id.as_str()) {
                Some(canonical) => {
                    if let Some(f) = inst.feedback.get(id) {
                        feedback.entry(canonical.clone()).or_insert(*f);
                    }
                    canonical
                }
                None => neg.allocate(),
            }
        })
        .collect();
    out.feedback = feedback;
    out
}

/// Standard and deduplicated variants of a corpus, in corpus order.
pub fn build_test_variants(
    dialogues: &[RawDialogue],
    mode: GroundTruthMode,
) -> (TestVariant, TestVariant) {
    use rayon::prelude::*;

    let standard: Vec<EvaluationInstance> = dialogues
        .par_iter()
        .map(|d| build_dialogue_instances(d, mode))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();

    let (dedup, drop_log) = dedup_variant(&standard);
    (
        TestVariant {
            name: Variant::Standard,
            instances: standard,
            drop_log: Vec::new(),
        },
        TestVariant {
            name: Variant::Dedup,
            instances: dedup,
            drop_log,
        },
    )
}

pub fn dedup_variant(
    standard: &[EvaluationInstance],
) -> (Vec<EvaluationInstance>, Vec<DropRecord>) {
    let mut kept = Vec::new();
    let mut drops = Vec::new();
    for inst in standard {
        match deduplicate(inst) {
            DedupOutcome::Kept(i) => kept.push(i),
            DedupOutcome::Dropped(r) => drops.push(r),
        }
    }
    (kept, drops)
}

/// Mask every instance of a variant in order, sharing one allocator.
/// Instances whose dialogue is absent from `dialogues` get no title
/// substitutions.
pub fn mask_instances(
    instances: &[EvaluationInstance],
    cat: &ItemCatalog,
    dialogues: &[RawDialogue],
    neg: &mut NegativeIdAllocator,
) -> Vec<EvaluationInstance> {
    let titles: std::collections::HashMap<&str, &BTreeMap<String, String>> = dialogues
        .iter()
        .map(|d| (d.conversation_id.as_str(), &d.movie_mentions))
        .collect();
    let empty = BTreeMap::new();
    instances
        .iter()
        .map(|inst| {
            let t = titles
                .get(inst.dialogue_id.as_str())
                .copied()
                .unwrap_or(&empty);
            apply_catalog_mask(inst, cat, t, neg)
        })
        .collect()
}
