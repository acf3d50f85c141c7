#![allow(dead_code)]

use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

/// Directory holding the public release (`train_data.jsonl`,
/// `test_data.jsonl`).
pub fn public_corpus_dir() -> PathBuf {
    std::env::var_os("REDIAL_DATA_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/redial"))
}

pub fn public_split(name: &str) -> Option<PathBuf> {
    let p = public_corpus_dir().join(format!("{name}_data.jsonl"));
    p.exists().then_some(p)
}

pub fn bless() -> bool {
    std::env::var_os("REDIAL_BENCH_BLESS").is_some()
}

/// Compare against a committed golden file, or rewrite it when blessing.
pub fn check_golden(name: &str, actual: &str) {
    let path = golden_dir().join(name);
    if bless() {
        std::fs::create_dir_all(golden_dir()).unwrap();
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| {
        panic!(
            "golden {} unreadable ({e}); rerun with REDIAL_BENCH_BLESS=1",
            path.display()
        )
    });
    assert_eq!(
        actual,
        expected,
        "output differs from golden {}",
        path.display()
    );
}

/// Random ReDial-format corpus. Mention ids follow a skewed distribution
/// so repeats happen; some dialogues start with the recommender, some
/// carry unused or dangling mentions.
pub fn synthetic_corpus(seed: u64, dialogues: usize) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = String::new();
    for d in 0..dialogues {
        let seeker = 1000 + 2 * d as i64;
        let rec = seeker + 1;
        let n_msgs = rng.gen_range(1..=18);
        let mut mentions = Map::new();
        let mut init_q = Map::new();
        let mut resp_q = Map::new();
        let mut messages = Vec::new();
        let mut sender = if rng.gen_bool(0.85) { seeker } else { rec };
        for m in 0..n_msgs {
            if rng.gen_bool(0.55) {
                sender = if sender == seeker { rec } else { seeker };
            }
            let mut text = String::from(if sender == seeker { "I like" } else { "Try" });
            let n_mentions = match rng.gen_range(0..10) {
                0..=4 => 0,
                5..=7 => 1,
                8 => 2,
                _ => 3,
            };
            for _ in 0..n_mentions {
                let id: u32 = if rng.gen_bool(0.3) {
                    rng.gen_range(1..20)
                } else {
                    rng.gen_range(1..400)
                };
                let dangling = rng.gen_bool(0.02);
                text.push_str(&format!(" @{id}"));
                if rng.gen_bool(0.1) {
                    text.push_str("abc");
                }
                if !dangling {
                    mentions.insert(
                        id.to_string(),
                        Value::String(format!("Movie {id} (19{:02})", id % 100)),
                    );
                    init_q.insert(
                        id.to_string(),
                        json!({"suggested": rng.gen_range(0..2), "seen": rng.gen_range(0..3), "liked": rng.gen_range(0..3)}),
                    );
                    if rng.gen_bool(0.8) {
                        resp_q.insert(
                            id.to_string(),
                            json!({"suggested": rng.gen_range(0..2), "seen": rng.gen_range(0..3), "liked": rng.gen_range(0..3)}),
                        );
                    }
                }
            }
            if rng.gen_bool(0.05) {
                let id: u32 = rng.gen_range(500..600);
                mentions.insert(id.to_string(), Value::String(format!("Unused {id}")));
            }
            text.push_str(" ok");
            messages.push(json!({
                "timeOffset": m as i64 * 5,
                "text": text,
                "senderWorkerId": sender,
                "messageId": (d * 100 + m) as i64,
            }));
        }
        let rec_q = if resp_q.is_empty() {
            json!([])
        } else {
            Value::Object(resp_q)
        };
        let line = json!({
            "movieMentions": Value::Object(mentions),
            "respondentQuestions": rec_q,
            "messages": messages,
            "conversationId": (20000 + d).to_string(),
            "respondentWorkerId": rec,
            "initiatorWorkerId": seeker,
            "initiatorQuestions": Value::Object(init_q),
        });
        out.push_str(&line.to_string());
        out.push('\n');
    }
    out
}
