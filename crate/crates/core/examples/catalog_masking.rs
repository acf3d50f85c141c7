//! Mask instances against an item catalog and report coverage. With
//! `--identity OUT` it writes an identity catalog for the corpus instead.
//!
//!     cargo run --example catalog_masking [corpus.jsonl] [catalog.csv]
//!     cargo run --example catalog_masking -- --identity catalog.csv [corpus.jsonl]

use std::path::PathBuf;

use redial_bench::catalog::{compute_coverage, load_catalog, ItemCatalog, NegativeIdAllocator};
use redial_bench::corpus::{parse_corpus, Split};
use redial_bench::instances::{build_test_variants, mask_instances, GroundTruthMode};

fn main() -> redial_bench::Result<()> {
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
    let mut args: Vec<String> = std::env::args().skip(1).collect();
    let identity_out = match args.iter().position(|a| a == "--identity") {
        Some(i) => {
            let out = args.get(i + 1).cloned().expect("--identity needs a path");
            args.drain(i..i + 2);
            Some(out)
        }
        None => None,
    };
    let corpus_path = args
        .first()
        .map(PathBuf::from)
        .unwrap_or_else(|| data.join("mini_test.jsonl"));
    let corpus = parse_corpus(&corpus_path, Split::Test)?.into_strict(&corpus_path)?;
    let items = || {
        corpus
            .iter()
            .flat_map(|d| d.movie_mentions.keys().map(String::as_str))
    };

    if let Some(out) = identity_out {
        let cat = ItemCatalog::identity("identity", items())?;
        std::fs::write(&out, cat.to_file_string()).map_err(|e| redial_bench::BenchError::Io {
            path: out.clone().into(),
            source: e,
        })?;
        println!("wrote {} entries to {out}", cat.len());
        return Ok(());
    }

    let cat = load_catalog(
        args.get(1)
            .map(PathBuf::from)
            .unwrap_or_else(|| data.join("half_catalog.csv")),
    )?;
    let (standard, _) = build_test_variants(&corpus, GroundTruthMode::Mentioned);
    let coverage = compute_coverage(&standard.instances, items(), &cat);
    println!(
        "catalog {}: test data {:.3} ({}/{}), items {:.3} ({}/{})",
        coverage.catalog_id,
        coverage.test_data_pct,
        coverage.evaluable_instances,
        coverage.total_instances,
        coverage.items_pct,
        coverage.covered_items,
        coverage.total_items
    );

    let mut neg = NegativeIdAllocator::new();
    for inst in mask_instances(&standard.instances, &cat, &corpus, &mut neg) {
        let gt: Vec<String> = inst.ground_truth.iter().map(|g| g.to_string()).collect();
        println!(
            "  {}: [{}]  last context: {:?}",
            inst.instance_id,
            gt.join(", "),
            inst.context.last().map(|t| &t.text)
        );
    }
    Ok(())
}
