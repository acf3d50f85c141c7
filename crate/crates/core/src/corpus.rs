//! ReDial-format corpus ingestion.
//!
//! A corpus file holds one dialogue per line using the field names of the
//! public release (`conversationId`, `messages`, `movieMentions`,
//! `initiatorQuestions`, ...). Parsing is parallel per line but the output
//! always follows file order. Malformed lines are collected, never dropped
//! silently.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::ops::Range;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::de::{self, Deserializer, MapAccess, SeqAccess, Visitor};
use serde::{Deserialize, Serialize};

use crate::error::{BenchError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Test,
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Split::Train => "train",
            Split::Test => "test",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMessage {
    #[serde(rename = "messageId")]
    pub message_id: i64,
    #[serde(rename = "senderWorkerId")]
    pub sender_worker_id: i64,
    pub text: String,
    #[serde(rename = "timeOffset")]
    pub time_offset: i64,
}

/// Three-valued questionnaire answer (`seen`, `liked`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Answer {
    No,
    Yes,
    DidNotSay,
}

impl TryFrom<u8> for Answer {
    type Error = String;

    fn try_from(v: u8) -> Result<Self, Self::Error> {
        match v {
            0 => Ok(Answer::No),
            1 => Ok(Answer::Yes),
            2 => Ok(Answer::DidNotSay),
            other => Err(format!("answer must be 0, 1 or 2, got {other}")),
        }
    }
}

impl From<Answer> for u8 {
    fn from(a: Answer) -> u8 {
        match a {
            Answer::No => 0,
            Answer::Yes => 1,
            Answer::DidNotSay => 2,
        }
    }
}

/// Whether the recommender marked the movie as a suggestion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Suggested {
    No,
    Yes,
}

impl TryFrom<u8> for Suggested {
    type Error = String;

    fn try_from(v: u8) -> Result<Self, Self::Error> {
        match v {
            0 => Ok(Suggested::No),
            1 => Ok(Suggested::Yes),
            other => Err(format!("suggested must be 0 or 1, got {other}")),
        }
    }
}

impl From<Suggested> for u8 {
    fn from(s: Suggested) -> u8 {
        match s {
            Suggested::No => 0,
            Suggested::Yes => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MentionForm {
    pub suggested: Suggested,
    pub seen: Answer,
    pub liked: Answer,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawDialogue {
    #[serde(rename = "conversationId", deserialize_with = "string_or_number")]
    pub conversation_id: String,
    #[serde(rename = "initiatorWorkerId")]
    pub initiator_worker_id: i64,
    #[serde(rename = "respondentWorkerId")]
    pub respondent_worker_id: i64,
    pub messages: Vec<RawMessage>,
    #[serde(
        rename = "movieMentions",
        default,
        deserialize_with = "map_or_empty_list"
    )]
    pub movie_mentions: BTreeMap<String, String>,
    #[serde(
        rename = "initiatorQuestions",
        default,
        deserialize_with = "map_or_empty_list"
    )]
    pub initiator_forms: BTreeMap<String, MentionForm>,
    #[serde(
        rename = "respondentQuestions",
        default,
        deserialize_with = "map_or_empty_list"
    )]
    pub respondent_forms: BTreeMap<String, MentionForm>,
}

impl RawDialogue {
    /// Form filled by the seeker for a mention.
    pub fn seeker_form(&self, mention_id: &str) -> Option<&MentionForm> {
        self.initiator_forms.get(mention_id)
    }

    /// Recommender form first, seeker form as fallback.
    pub fn suggestion_form(&self, mention_id: &str) -> Option<&MentionForm> {
        self.respondent_forms
            .get(mention_id)
            .or_else(|| self.initiator_forms.get(mention_id))
    }

    pub fn title(&self, mention_id: &str) -> Option<&str> {
        self.movie_mentions.get(mention_id).map(String::as_str)
    }

    /// Serialize back to a single corpus line.
    pub fn to_json_line(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

/// A `@<digits>` token found in an utterance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mention {
    pub id: String,
    /// Byte span of the whole token, including the `@`.
    pub span: Range<usize>,
}

/// Every maximal `@<digits>` token, left to right.
///
/// Trailing non-digit characters are not part of the token, so `@123abc`
/// yields id `123`.
pub fn extract_mentions(text: &str) -> Vec<Mention> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'@' {
            let digits_start = i + 1;
            let mut j = digits_start;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            if j > digits_start {
                out.push(Mention {
                    id: text[digits_start..j].to_owned(),
                    span: i..j,
                });
                i = j;
                continue;
            }
        }
        i += 1;
    }
    out
}

/// Replace mention tokens for which `replace` returns `Some` and leave the
/// rest of the text untouched.
pub fn rewrite_mentions<'a, F>(text: &str, mut replace: F) -> String
where
    F: FnMut(&str) -> Option<&'a str>,
{
    let mut out = String::with_capacity(text.len());
    let mut cursor = 0;
    for m in extract_mentions(text) {
        if let Some(sub) = replace(&m.id) {
            out.push_str(&text[cursor..m.span.start]);
            out.push_str(sub);
            cursor = m.span.end;
        }
    }
    out.push_str(&text[cursor..]);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "code", rename_all = "snake_case")]
pub enum ValidationIssue {
    /// Token in text without a `movieMentions` entry.
    DanglingMention {
        message_id: i64,
        mention_id: String,
    },
    /// `movieMentions` entry never referenced in text.
    UnusedMention {
        mention_id: String,
    },
    UnknownSender {
        message_id: i64,
        sender_worker_id: i64,
    },
    EmptyMessage {
        message_id: i64,
    },
    /// Initiator and respondent share a worker id.
    SameWorkers,
}

impl ValidationIssue {
    pub fn code(&self) -> &'static str {
        match self {
            ValidationIssue::DanglingMention { .. } => "dangling_mention",
            ValidationIssue::UnusedMention { .. } => "unused_mention",
            ValidationIssue::UnknownSender { .. } => "unknown_sender",
            ValidationIssue::EmptyMessage { .. } => "empty_message",
            ValidationIssue::SameWorkers => "same_workers",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub conversation_id: String,
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.issues.is_empty()
    }
}

pub fn validate_dialogue(d: &RawDialogue) -> ValidationReport {
    let mut issues = Vec::new();
    if d.initiator_worker_id == d.respondent_worker_id {
        issues.push(ValidationIssue::SameWorkers);
    }

    let mut used = BTreeSet::new();
    for msg in &d.messages {
        if msg.sender_worker_id != d.initiator_worker_id
            && msg.sender_worker_id != d.respondent_worker_id
        {
            issues.push(ValidationIssue::UnknownSender {
                message_id: msg.message_id,
                sender_worker_id: msg.sender_worker_id,
            });
        }
        if msg.text.trim().is_empty() {
            issues.push(ValidationIssue::EmptyMessage {
                message_id: msg.message_id,
            });
        }
        for m in extract_mentions(&msg.text) {
            if !d.movie_mentions.contains_key(&m.id) {
                issues.push(ValidationIssue::DanglingMention {
                    message_id: msg.message_id,
                    mention_id: m.id.clone(),
                });
            }
            used.insert(m.id);
        }
    }

    for id in d.movie_mentions.keys() {
        if !used.contains(id) {
            issues.push(ValidationIssue::UnusedMention {
                mention_id: id.clone(),
            });
        }
    }

    ValidationReport {
        conversation_id: d.conversation_id.clone(),
        issues,
    }
}

/// Counts per issue code over a set of reports.
pub fn issue_histogram<'a>(
    reports: impl IntoIterator<Item = &'a ValidationReport>,
) -> BTreeMap<&'static str, usize> {
    let mut hist = BTreeMap::new();
    for r in reports {
        for issue in &r.issues {
            *hist.entry(issue.code()).or_insert(0) += 1;
        }
    }
    hist
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, Default)]
pub struct ParsedCorpus {
    pub dialogues: Vec<RawDialogue>,
    pub errors: Vec<RecordError>,
}

impl ParsedCorpus {
    /// Convert the first record error, if any, into a fatal error.
    pub fn into_strict(self, path: &Path) -> Result<Vec<RawDialogue>> {
        match self.errors.into_iter().next() {
            Some(e) => Err(BenchError::Record {
                path: path.to_path_buf(),
                line: e.line,
                message: e.message,
            }),
            None => Ok(self.dialogues),
        }
    }
}

pub fn parse_dialogue_line(line: &str) -> std::result::Result<RawDialogue, String> {
    let d: RawDialogue = serde_json::from_str(line).map_err(|e| e.to_string())?;
    if d.messages.is_empty() {
        return Err(format!("dialogue {} has no messages", d.conversation_id));
    }
    Ok(d)
}

/// Parse corpus text already in memory. Line numbers are 1-based.
pub fn parse_corpus_str(content: &str) -> ParsedCorpus {
    let lines: Vec<(usize, &str)> = content
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, l))
        .collect();

    let parsed: Vec<(usize, std::result::Result<RawDialogue, String>)> = lines
        .par_iter()
        .map(|&(n, l)| (n, parse_dialogue_line(l)))
        .collect();

    let mut out = ParsedCorpus::default();
    for (line, res) in parsed {
        match res {
            Ok(d) => out.dialogues.push(d),
            Err(message) => out.errors.push(RecordError { line, message }),
        }
    }
    out
}

/// Parse a corpus file. The split only labels the data; it does not change
/// parsing.
pub fn parse_corpus(path: impl AsRef<Path>, _split: Split) -> Result<ParsedCorpus> {
    let path = path.as_ref();
    let content = fs::read_to_string(path).map_err(|e| BenchError::io(path, e))?;
    Ok(parse_corpus_str(&content))
}

/// SHA-256 of a file's bytes, hex encoded.
pub fn file_digest(path: &Path) -> Result<String> {
    use sha2::{Digest, Sha256};
    let bytes = fs::read(path).map_err(|e| BenchError::io(PathBuf::from(path), e))?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

fn string_or_number<'de, D: Deserializer<'de>>(d: D) -> Result<String, D::Error> {
    struct V;
    impl Visitor<'_> for V {
        type Value = String;
        fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            f.write_str("a string or integer id")
        }
        fn visit_str<E: de::Error>(self, v: &str) -> Result<String, E> {
            Ok(v.to_owned())
        }
        fn visit_i64<E: de::Error>(self, v: i64) -> Result<String, E> {
            Ok(v.to_string())
        }
        fn visit_u64<E: de::Error>(self, v: u64) -> Result<String, E> {
            Ok(v.to_string())
        }
    }
    d.deserialize_any(V)
}

// The public release writes `[]` instead of `{}` for dialogues without
// mentions.
fn map_or_empty_list<'de, D, T>(d: D) -> Result<BTreeMap<String, T>, D::Error>
where
    D: Deserializer<'de>,
    T: Deserialize<'de>,
{
    struct V<T>(std::marker::PhantomData<T>);

    impl<'de, T: Deserialize<'de>> Visitor<'de> for V<T> {
        type Value = BTreeMap<String, T>;

        fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            f.write_str("a map or an empty list")
        }

        fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Self::Value, A::Error> {
            let mut out = BTreeMap::new();
            while let Some((k, v)) = map.next_entry::<String, Option<T>>()? {
                if let Some(v) = v {
                    out.insert(k, v);
                }
            }
            Ok(out)
        }

        fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
            if seq.next_element::<de::IgnoredAny>()?.is_some() {
                return Err(de::Error::custom("expected an empty list"));
            }
            Ok(BTreeMap::new())
        }

        fn visit_unit<E: de::Error>(self) -> Result<Self::Value, E> {
            Ok(BTreeMap::new())
        }
    }

    d.deserialize_any(V(std::marker::PhantomData))
}
