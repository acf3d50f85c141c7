//! Score an external prediction file against an instance file, the way a
//! model's output would be evaluated. Without arguments it builds the mini
//! fixture and scores a toy model that always ranks item 102 first.
//!
//!     cargo run --example score_predictions [instances.jsonl predictions.jsonl] [c]

use std::path::PathBuf;

use redial_bench::artifact::read_jsonl;
use redial_bench::instances::EvaluationInstance;
use redial_bench::metrics::{
    evaluate, PredictionSet, RankedPrediction, RdlDenominator, ScoringConfig,
};
use redial_bench::pipeline::{build, BuildOptions};
use redial_bench::ItemId;

fn main() -> redial_bench::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (instances, predictions): (Vec<EvaluationInstance>, Vec<RankedPrediction>) =
        match args.as_slice() {
            [inst, preds, ..] => (read_jsonl(inst.as_ref())?.1, read_jsonl(preds.as_ref())?.1),
            _ => {
                let corpus = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/mini_test.jsonl");
                let out = build(&corpus, &BuildOptions::default())?;
                let instances = out.standard.instances;
                let preds = instances
                    .iter()
                    .map(|i| RankedPrediction {
                        instance_id: i.instance_id.clone(),
                        ranking: vec![
                            ItemId::from(102u64),
                            ItemId::from(200u64),
                            ItemId::from(300u64),
                        ],
                    })
                    .collect();
                (instances, preds)
            }
        };
    let c = args.get(2).and_then(|c| c.parse().ok()).unwrap_or(1);

    let preds = PredictionSet::new(predictions)?;
    for denom in [RdlDenominator::AllTurns, RdlDenominator::RecommenderTurns] {
        let config = ScoringConfig {
            sr_cutoff: c,
            rdl_denominator: denom,
            ..ScoringConfig::default()
        };
        config.validate()?;
        let r = evaluate(&instances, &preds, &config)?;
        println!("{}", serde_json::to_string_pretty(&r)?);
    }
    Ok(())
}
