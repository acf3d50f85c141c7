//! Merge turns and print the evaluation instances of one corpus.
//!
//!     cargo run --example build_instances [corpus.jsonl]

use std::path::PathBuf;

use redial_bench::corpus::{parse_corpus, Split};
use redial_bench::instances::{build_dialogue_instances, merge_turns, GroundTruthMode};

fn main() -> redial_bench::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/mini_test.jsonl"));
    let corpus = parse_corpus(&path, Split::Test)?.into_strict(&path)?;

    for d in &corpus {
        let turns = merge_turns(d);
        println!(
            "dialogue {} ({} messages, {} turns)",
            d.conversation_id,
            d.messages.len(),
            turns.len()
        );
        for inst in build_dialogue_instances(d, GroundTruthMode::Mentioned) {
            let gt: Vec<String> = inst.ground_truth.iter().map(|g| g.to_string()).collect();
            println!(
                "  {}: {} context turns, ground truth [{}]{}",
                inst.instance_id,
                inst.context.len(),
                gt.join(", "),
                if inst.repeats_context() {
                    " (repeats context)"
                } else {
                    ""
                }
            );
        }
    }
    Ok(())
}
