//! Descriptive corpus statistics and the repetition rate.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::corpus::{extract_mentions, RawDialogue};
use crate::instances::EvaluationInstance;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsRow {
    pub split: String,
    pub conversations: usize,
    pub rec_instances: usize,
    /// Ground-truth items summed over instances.
    pub movie_mentions: usize,
    /// Every `@<digits>` token in every message.
    pub mention_tokens: usize,
    /// Distinct ids across the dialogues' mention maps.
    pub unique_movies: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsTable {
    pub rows: Vec<StatsRow>,
    pub total: StatsRow,
}

pub struct SplitData<'a> {
    pub name: &'a str,
    pub dialogues: &'a [RawDialogue],
    pub instances: &'a [EvaluationInstance],
}

fn movie_ids(dialogues: &[RawDialogue]) -> BTreeSet<&str> {
    dialogues
        .iter()
        .flat_map(|d| d.movie_mentions.keys().map(String::as_str))
        .collect()
}

pub fn corpus_stats(splits: &[SplitData<'_>]) -> StatsTable {
    let rows: Vec<StatsRow> = splits
        .iter()
        .map(|s| StatsRow {
            split: s.name.to_owned(),
            conversations: s.dialogues.len(),
            rec_instances: s.instances.len(),
            movie_mentions: s.instances.iter().map(|i| i.ground_truth.len()).sum(),
            mention_tokens: s
                .dialogues
                .iter()
                .flat_map(|d| d.messages.iter())
                .map(|m| extract_mentions(&m.text).len())
                .sum(),
            unique_movies: movie_ids(s.dialogues).len(),
        })
        .collect();

    let all: BTreeSet<&str> = splits.iter().flat_map(|s| movie_ids(s.dialogues)).collect();
    let total = StatsRow {
        split: "total".to_owned(),
        conversations: rows.iter().map(|r| r.conversations).sum(),
        rec_instances: rows.iter().map(|r| r.rec_instances).sum(),
        movie_mentions: rows.iter().map(|r| r.movie_mentions).sum(),
        mention_tokens: rows.iter().map(|r| r.mention_tokens).sum(),
        unique_movies: all.len(),
    };
    StatsTable { rows, total }
}

/// Share of instances whose ground truth overlaps the context mentions.
/// Zero for an empty set.
pub fn repetition_rate(instances: &[EvaluationInstance]) -> f64 {
    if instances.is_empty() {
        return 0.0;
    }
    instances.iter().filter(|i| i.repeats_context()).count() as f64 / instances.len() as f64
}

impl StatsTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "split,conversations,rec_instances,movie_mentions,mention_tokens,unique_movies\n",
        );
        for r in self.rows.iter().chain(std::iter::once(&self.total)) {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                r.split,
                r.conversations,
                r.rec_instances,
                r.movie_mentions,
                r.mention_tokens,
                r.unique_movies
            );
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{:<8} {:>8} {:>15} {:>15} {:>15} {:>14}\n",
            "Split",
            "#Conv",
            "#Rec-Instances",
            "#Movie-Mentions",
            "#Mention-Tokens",
            "#Unique Movies"
        );
        for r in self.rows.iter().chain(std::iter::once(&self.total)) {
            let _ = writeln!(
                out,
                "{:<8} {:>8} {:>15} {:>15} {:>15} {:>14}",
                r.split,
                r.conversations,
                r.rec_instances,
                r.movie_mentions,
                r.mention_tokens,
                r.unique_movies
            );
        }
        out
    }
}
