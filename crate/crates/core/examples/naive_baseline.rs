//! Score the naive baseline (context items, most recent first) on both
//! variants.
//!
//!     cargo run --example naive_baseline [corpus.jsonl] [--seeker-only]

use std::path::PathBuf;

use redial_bench::baselines::{naive_predictions, NaiveScope};
use redial_bench::corpus::{parse_corpus, Split};
use redial_bench::instances::{build_test_variants, GroundTruthMode};
use redial_bench::metrics::{comparison_table, evaluate, PredictionSet, ScoringConfig};

fn main() -> redial_bench::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let scope = if args.iter().any(|a| a == "--seeker-only") {
        NaiveScope::SeekerOnly
    } else {
        NaiveScope::BothSpeakers
    };
    let path = args
        .iter()
        .find(|a| !a.starts_with("--"))
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/mini_test.jsonl"));
    let corpus = parse_corpus(&path, Split::Test)?.into_strict(&path)?;
    let (standard, dedup) = build_test_variants(&corpus, GroundTruthMode::Mentioned);

    let config = ScoringConfig::default();
    let mut reports = Vec::new();
    for variant in [&standard, &dedup] {
        let preds = PredictionSet::new(naive_predictions(&variant.instances, scope))?;
        let mut r = evaluate(&variant.instances, &preds, &config)?;
        r.name = "naive".into();
        reports.push(r);
    }
    print!("{}", comparison_table(&reports));
    Ok(())
}
