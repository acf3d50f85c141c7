//! Print the per-split statistics table.
//!
//!     cargo run --example corpus_stats [train.jsonl test.jsonl]

use std::path::PathBuf;

use redial_bench::corpus::Split;
use redial_bench::pipeline::{build, BuildOptions};
use redial_bench::stats::{corpus_stats, repetition_rate, SplitData};

fn main() -> redial_bench::Result<()> {
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
    let args: Vec<PathBuf> = std::env::args().skip(1).map(PathBuf::from).collect();
    let paths = match args.as_slice() {
        [train, test] => [train.clone(), test.clone()],
        _ => [data.join("mini_train.jsonl"), data.join("mini_test.jsonl")],
    };

    let mut outputs = Vec::new();
    for (split, path) in [Split::Train, Split::Test].into_iter().zip(&paths) {
        let opts = BuildOptions {
            split: Some(split),
            ..BuildOptions::default()
        };
        outputs.push((split.to_string(), build(path, &opts)?));
    }
    let splits: Vec<SplitData<'_>> = outputs
        .iter()
        .map(|(name, o)| SplitData {
            name,
            dialogues: &o.dialogues,
            instances: &o.standard.instances,
        })
        .collect();
    print!("{}", corpus_stats(&splits).to_text());
    for (name, o) in &outputs {
        println!(
            "repetition rate ({name}): {:.4}",
            repetition_rate(&o.standard.instances)
        );
    }
    Ok(())
}
