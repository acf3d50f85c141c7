//! Fit the popularity baseline on a training corpus and score it on a test
//! corpus.
//!
//!     cargo run --example popularity_baseline [train.jsonl test.jsonl]

use std::path::PathBuf;

use redial_bench::baselines::{popularity_predictions, PopularityModel};
use redial_bench::corpus::{parse_corpus, Split};
use redial_bench::instances::{build_test_variants, GroundTruthMode};
use redial_bench::metrics::{comparison_table, evaluate, PredictionSet, ScoringConfig};

fn main() -> redial_bench::Result<()> {
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
    let args: Vec<PathBuf> = std::env::args().skip(1).map(PathBuf::from).collect();
    let (train_path, test_path) = match args.as_slice() {
        [train, test] => (train.clone(), test.clone()),
        _ => (data.join("mini_train.jsonl"), data.join("mini_test.jsonl")),
    };

    let train = parse_corpus(&train_path, Split::Train)?.into_strict(&train_path)?;
    let test = parse_corpus(&test_path, Split::Test)?.into_strict(&test_path)?;
    let (train_instances, _) = build_test_variants(&train, GroundTruthMode::Mentioned);
    let model = PopularityModel::fit(&train_instances.instances);
    println!("top items:");
    for (item, n) in model.ranking.iter().zip(&model.counts).take(5) {
        println!("  {item} ({n} mentions)");
    }

    let (standard, dedup) = build_test_variants(&test, GroundTruthMode::Mentioned);
    let config = ScoringConfig::default();
    let mut reports = Vec::new();
    for variant in [&standard, &dedup] {
        let preds = PredictionSet::new(popularity_predictions(&model, &variant.instances, 50)?)?;
        let mut r = evaluate(&variant.instances, &preds, &config)?;
        r.name = "popularity".into();
        reports.push(r);
    }
    print!("{}", comparison_table(&reports));
    Ok(())
}
