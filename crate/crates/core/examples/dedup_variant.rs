//! Build both test variants and show what deduplication removed.
//!
//!     cargo run --example dedup_variant [corpus.jsonl]

use std::path::PathBuf;

use redial_bench::corpus::{parse_corpus, Split};
use redial_bench::instances::{build_test_variants, GroundTruthMode};
use redial_bench::stats::repetition_rate;

fn main() -> redial_bench::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/mini_test.jsonl"));
    let corpus = parse_corpus(&path, Split::Test)?.into_strict(&path)?;
    let (standard, dedup) = build_test_variants(&corpus, GroundTruthMode::Mentioned);

    println!("standard: {} instances", standard.instances.len());
    println!("dedup:    {} instances", dedup.instances.len());
    println!(
        "repetition rate: {:.4}",
        repetition_rate(&standard.instances)
    );
    for inst in dedup
        .instances
        .iter()
        .filter(|i| !i.dropped_ground_truth.is_empty())
    {
        let lost: Vec<String> = inst
            .dropped_ground_truth
            .iter()
            .map(|g| g.to_string())
            .collect();
        println!("  {} lost [{}]", inst.instance_id, lost.join(", "));
    }
    for drop in &dedup.drop_log {
        println!("  {} dropped: {}", drop.instance_id, drop.reason);
    }
    Ok(())
}
