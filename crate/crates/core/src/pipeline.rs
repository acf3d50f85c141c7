//! Corpus to instance-file pipeline shared by the command line and the
//! examples.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::artifact::{write_jsonl, ArtifactHeader};
use crate::catalog::{ItemCatalog, NegativeIdAllocator};
use crate::corpus::{
    file_digest, issue_histogram, parse_corpus_str, validate_dialogue, RawDialogue, RecordError,
    Split, ValidationReport,
};
use crate::error::{BenchError, Result};
use crate::fingerprint::fingerprint;
use crate::instances::{
    build_test_variants, mask_instances, EvaluationInstance, GroundTruthMode, TestVariant, Variant,
};
use crate::stats::repetition_rate;

/// Everything that influences the content of an instance file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildConfig {
    pub split: Split,
    pub gt_mode: GroundTruthMode,
    pub strict_validation: bool,
    pub corpus_sha256: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalog_id: Option<String>,
}

impl BuildConfig {
    pub fn fingerprint(&self) -> String {
        fingerprint(self)
    }
}

#[derive(Debug, Clone, Default)]
pub struct BuildOptions {
    pub split: Option<Split>,
    pub gt_mode: GroundTruthMode,
    pub strict_validation: bool,
    pub catalog: Option<ItemCatalog>,
}

#[derive(Debug, Clone)]
pub struct BuildOutput {
    pub config: BuildConfig,
    pub dialogues: Vec<RawDialogue>,
    pub parse_errors: Vec<RecordError>,
    pub validation: Vec<ValidationReport>,
    /// Dialogues removed by strict validation.
    pub excluded_dialogues: Vec<String>,
    pub standard: TestVariant,
    pub dedup: TestVariant,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BuildLog {
    pub fingerprint: String,
    pub config: BuildConfig,
    pub dialogues: usize,
    pub parse_errors: Vec<RecordError>,
    pub validation_histogram: BTreeMap<String, usize>,
    pub dialogues_with_issues: usize,
    pub excluded_dialogues: usize,
    pub standard_instances: usize,
    pub dedup_instances: usize,
    pub dedup_drops: usize,
    pub repetition_rate: f64,
}

/// Build standard and dedup variants from corpus text.
pub fn build_from_str(
    content: &str,
    corpus_sha256: String,
    opts: &BuildOptions,
) -> Result<BuildOutput> {
    let parsed = parse_corpus_str(content);
    if opts.strict_validation {
        if let Some(e) = parsed.errors.first() {
            return Err(BenchError::Record {
                path: PathBuf::from("<corpus>"),
                line: e.line,
                message: e.message.clone(),
            });
        }
    }

    let validation: Vec<ValidationReport> =
        parsed.dialogues.iter().map(validate_dialogue).collect();
    let (dialogues, excluded): (Vec<RawDialogue>, Vec<String>) = if opts.strict_validation {
        let mut kept = Vec::new();
        let mut dropped = Vec::new();
        for (d, v) in parsed.dialogues.into_iter().zip(&validation) {
            if v.is_clean() {
                kept.push(d);
            } else {
                dropped.push(d.conversation_id);
            }
        }
        (kept, dropped)
    } else {
        (parsed.dialogues, Vec::new())
    };

    let (mut standard, mut dedup) = build_test_variants(&dialogues, opts.gt_mode);
    if let Some(cat) = &opts.catalog {
        let mut neg = NegativeIdAllocator::new();
        standard.instances = mask_instances(&standard.instances, cat, &dialogues, &mut neg);
        dedup.instances = mask_instances(&dedup.instances, cat, &dialogues, &mut neg);
    }

    Ok(BuildOutput {
        config: BuildConfig {
            split: opts.split.unwrap_or(Split::Test),
            gt_mode: opts.gt_mode,
            strict_validation: opts.strict_validation,
            corpus_sha256,
            catalog_id: opts.catalog.as_ref().map(|c| c.catalog_id.clone()),
        },
        dialogues,
        parse_errors: parsed.errors,
        validation,
        excluded_dialogues: excluded,
        standard,
        dedup,
    })
}

pub fn build(corpus: &Path, opts: &BuildOptions) -> Result<BuildOutput> {
    let content = fs::read_to_string(corpus).map_err(|e| BenchError::io(corpus, e))?;
    let digest = file_digest(corpus)?;
    build_from_str(&content, digest, opts).map_err(|e| match e {
        BenchError::Record { line, message, .. } => BenchError::Record {
            path: corpus.to_path_buf(),
            line,
            message,
        },
        other => other,
    })
}

pub fn instance_header(config: &BuildConfig, variant: Variant) -> ArtifactHeader {
    ArtifactHeader {
        artifact: "instances".to_owned(),
        fingerprint: config.fingerprint(),
        variant: Some(variant),
        config: serde_json::to_value(config).expect("build config serializes"),
    }
}

impl BuildOutput {
    pub fn fingerprint(&self) -> String {
        self.config.fingerprint()
    }

    pub fn variant(&self, v: Variant) -> &TestVariant {
        match v {
            Variant::Standard => &self.standard,
            Variant::Dedup => &self.dedup,
        }
    }

    pub fn log(&self) -> BuildLog {
        BuildLog {
            fingerprint: self.fingerprint(),
            config: self.config.clone(),
            dialogues: self.dialogues.len(),
            parse_errors: self.parse_errors.clone(),
            validation_histogram: issue_histogram(&self.validation)
                .into_iter()
                .map(|(k, v)| (k.to_owned(), v))
                .collect(),
            dialogues_with_issues: self.validation.iter().filter(|v| !v.is_clean()).count(),
            excluded_dialogues: self.excluded_dialogues.len(),
            standard_instances: self.standard.instances.len(),
            dedup_instances: self.dedup.instances.len(),
            dedup_drops: self.dedup.drop_log.len(),
            repetition_rate: repetition_rate(&self.standard.instances),
        }
    }

    pub fn instance_path(out_dir: &Path, split: Split, variant: Variant) -> PathBuf {
        out_dir.join(format!("{split}.{variant}.jsonl"))
    }

    /// Write the requested variants, the dedup drop log and the build log.
    pub fn write(&self, out_dir: &Path, variants: &[Variant]) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(out_dir).map_err(|e| BenchError::io(out_dir, e))?;
        let split = self.config.split;
        let mut written = Vec::new();
        for &v in variants {
            let path = Self::instance_path(out_dir, split, v);
            write_jsonl(
                &path,
                Some(&instance_header(&self.config, v)),
                &self.variant(v).instances,
            )?;
            written.push(path);
        }
        if variants.contains(&Variant::Dedup) {
            let path = out_dir.join(format!("{split}.dedup.drops.jsonl"));
            let header = ArtifactHeader {
                artifact: "drops".to_owned(),
                ..instance_header(&self.config, Variant::Dedup)
            };
            write_jsonl(&path, Some(&header), &self.dedup.drop_log)?;
            written.push(path);
        }
        let log_path = out_dir.join(format!("{split}.build.json"));
        let mut log = serde_json::to_string_pretty(&self.log())?;
        log.push('\n');
        fs::write(&log_path, log).map_err(|e| BenchError::io(&log_path, e))?;
        written.push(log_path);
        Ok(written)
    }
}

/// Mask an already built instance artifact.
pub fn mask_artifact(
    header: Option<&ArtifactHeader>,
    instances: &[EvaluationInstance],
    cat: &ItemCatalog,
    dialogues: &[RawDialogue],
) -> Result<(ArtifactHeader, Vec<EvaluationInstance>)> {
    let mut config = header
        .map(|h| h.config.clone())
        .unwrap_or_else(|| serde_json::json!({}));
    if config.get("catalog_id").is_some_and(|c| !c.is_null()) {
        return Err(BenchError::Config("instance file is already masked".into()));
    }
    let lowest = instances
        .iter()
        .flat_map(|i| i.ground_truth.iter())
        .filter_map(|g| g.as_integer())
        .filter(|&n| n < 0)
        .min()
        .unwrap_or(0);
    let mut neg = NegativeIdAllocator::starting_below(lowest);
    let masked = mask_instances(instances, cat, dialogues, &mut neg);

    if let Some(obj) = config.as_object_mut() {
        obj.insert(
            "catalog_id".into(),
            serde_json::Value::String(cat.catalog_id.clone()),
        );
        obj.insert(
            "catalog_sha256".into(),
            serde_json::Value::String(fingerprint(&cat.to_file_string())),
        );
    }
    let header = ArtifactHeader {
        artifact: "instances".to_owned(),
        fingerprint: fingerprint(&config),
        variant: header
            .and_then(|h| h.variant)
            .or_else(|| masked.first().map(|i| i.variant)),
        config,
    };
    Ok((header, masked))
}
