//! Parse a ReDial-format corpus and print the validation issue histogram.
//!
//!     cargo run --example parse_and_validate [corpus.jsonl]

use std::path::PathBuf;

use redial_bench::corpus::{issue_histogram, parse_corpus, validate_dialogue, Split};

fn main() -> redial_bench::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/mini_test.jsonl"));
    let parsed = parse_corpus(&path, Split::Test)?;
    println!(
        "{} dialogues, {} unparseable lines",
        parsed.dialogues.len(),
        parsed.errors.len()
    );
    for e in &parsed.errors {
        println!("  line {}: {}", e.line, e.message);
    }

    let reports: Vec<_> = parsed.dialogues.iter().map(validate_dialogue).collect();
    for r in reports.iter().filter(|r| !r.is_clean()) {
        for issue in &r.issues {
            println!("  {}: {}", r.conversation_id, serde_json::to_string(issue)?);
        }
    }
    for (code, n) in issue_histogram(&reports) {
        println!("{code:>16} {n}");
    }
    Ok(())
}
