//! Command-line front end.
//!
//! Every subcommand is deterministic. Effective settings come from flags,
//! then an optional TOML file given with `--config`, then built-in defaults.
//! Failures print one JSON error record on stderr and map to distinct exit
//! codes (see [`ExitCode`]).

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::artifact::{read_jsonl, write_jsonl, ArtifactHeader};
use crate::baselines::{naive_predictions, popularity_predictions, NaiveScope, PopularityModel};
use crate::catalog::{compute_coverage, load_catalog};
use crate::corpus::{parse_corpus, Split};
use crate::error::BenchError;
use crate::fingerprint::fingerprint;
use crate::instances::{EvaluationInstance, GroundTruthMode, Variant};
use crate::metrics::{
    comparison_table, evaluate, MetricReport, PredictionSet, RankedPrediction, RdlDenominator,
    RecallAverage, ScoringConfig,
};
use crate::pipeline::{build, mask_artifact, BuildOptions, BuildOutput};
use crate::stats::{corpus_stats, repetition_rate, SplitData};

pub const THREADS_ENV: &str = "REDIAL_BENCH_THREADS";

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Internal = 1,
    Usage = 2,
    MissingInput = 3,
    PredictionMismatch = 4,
    InvalidData = 5,
    FingerprintMismatch = 6,
    InvalidConfig = 7,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CliError {
    pub code: &'static str,
    pub exit_code: i32,
    pub message: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<String>,
}

impl CliError {
    fn new(exit: ExitCode, code: &'static str, message: impl Into<String>) -> Self {
        CliError {
            code,
            exit_code: exit as i32,
            message: message.into(),
            details: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({ "error": self }).to_string()
    }
}

impl From<BenchError> for CliError {
    fn from(e: BenchError) -> Self {
        let message = e.to_string();
        match e {
            BenchError::Io { ref source, .. } if source.kind() == std::io::ErrorKind::NotFound => {
                CliError::new(ExitCode::MissingInput, "missing_input", message)
            }
            BenchError::Io { .. } => CliError::new(ExitCode::Internal, "io", message),
            BenchError::MissingPredictions(ids) => CliError {
                details: ids,
                ..CliError::new(ExitCode::PredictionMismatch, "missing_predictions", message)
            },
            BenchError::DuplicatePrediction(_) | BenchError::InvalidPrediction { .. } => {
                CliError::new(ExitCode::PredictionMismatch, "invalid_predictions", message)
            }
            BenchError::FingerprintMismatch { .. } => CliError::new(
                ExitCode::FingerprintMismatch,
                "fingerprint_mismatch",
                message,
            ),
            BenchError::Config(_) => {
                CliError::new(ExitCode::InvalidConfig, "invalid_config", message)
            }
            BenchError::Record { .. }
            | BenchError::Catalog { .. }
            | BenchError::DuplicateCatalogKey { .. }
            | BenchError::EmptyGroundTruth(_)
            | BenchError::EmptyInstanceSet
            | BenchError::Json(_) => CliError::new(ExitCode::InvalidData, "invalid_data", message),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "redial-bench",
    version,
    about = "Conversational recommendation evaluation harness"
)]
pub struct Cli {
    /// TOML file with default settings; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Corpus to standard and dedup instance files.
    Build(BuildArgs),
    /// Apply a catalog to an instance file.
    Mask(MaskArgs),
    /// Corpus statistics and repetition rate.
    Stats(StatsArgs),
    /// Produce a baseline prediction file.
    Baseline(BaselineArgs),
    /// Score predictions against instances.
    Score(ScoreArgs),
    /// Merge score reports into one comparison table.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitArg {
    Train,
    Test,
}

impl From<SplitArg> for Split {
    fn from(s: SplitArg) -> Split {
        match s {
            SplitArg::Train => Split::Train,
            SplitArg::Test => Split::Test,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VariantArg {
    Standard,
    Dedup,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Standard => Variant::Standard,
            VariantArg::Dedup => Variant::Dedup,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GtModeArg {
    Mentioned,
    SuggestedOnly,
}

impl From<GtModeArg> for GroundTruthMode {
    fn from(g: GtModeArg) -> Self {
        match g {
            GtModeArg::Mentioned => GroundTruthMode::Mentioned,
            GtModeArg::SuggestedOnly => GroundTruthMode::SuggestedOnly,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RdlDenominatorArg {
    AllTurns,
    RecommenderTurns,
}

impl From<RdlDenominatorArg> for RdlDenominator {
    fn from(r: RdlDenominatorArg) -> Self {
        match r {
            RdlDenominatorArg::AllTurns => RdlDenominator::AllTurns,
            RdlDenominatorArg::RecommenderTurns => RdlDenominator::RecommenderTurns,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RecallAverageArg {
    Macro,
    Micro,
}

impl From<RecallAverageArg> for RecallAverage {
    fn from(r: RecallAverageArg) -> Self {
        match r {
            RecallAverageArg::Macro => RecallAverage::Macro,
            RecallAverageArg::Micro => RecallAverage::Micro,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NaiveScopeArg {
    BothSpeakers,
    SeekerOnly,
}

impl From<NaiveScopeArg> for NaiveScope {
    fn from(n: NaiveScopeArg) -> Self {
        match n {
            NaiveScopeArg::BothSpeakers => NaiveScope::BothSpeakers,
            NaiveScopeArg::SeekerOnly => NaiveScope::SeekerOnly,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BaselineName {
    Naive,
    Popularity,
}

/// Settings shared by several subcommands; also the schema of `--config`.
#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct Settings {
    #[arg(long)]
    pub split: Option<SplitArg>,
    #[arg(long)]
    pub variant: Option<VariantArg>,
    /// Comma-separated recall cutoffs.
    #[arg(long = "k", value_delimiter = ',')]
    #[serde(rename = "k")]
    pub ks: Option<Vec<usize>>,
    #[arg(long)]
    pub sr_cutoff: Option<usize>,
    #[arg(long)]
    pub rdl_denominator: Option<RdlDenominatorArg>,
    #[arg(long)]
    pub gt_mode: Option<GtModeArg>,
    #[arg(long)]
    pub recall_average: Option<RecallAverageArg>,
    #[arg(long)]
    pub naive_scope: Option<NaiveScopeArg>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub catalog: Option<PathBuf>,
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub strict_validation: Option<bool>,
}

impl Settings {
    /// Fill unset fields from `lower`.
    pub fn or(self, lower: Settings) -> Settings {
        Settings {
            split: self.split.or(lower.split),
            variant: self.variant.or(lower.variant),
            ks: self.ks.or(lower.ks),
            sr_cutoff: self.sr_cutoff.or(lower.sr_cutoff),
            rdl_denominator: self.rdl_denominator.or(lower.rdl_denominator),
            gt_mode: self.gt_mode.or(lower.gt_mode),
            recall_average: self.recall_average.or(lower.recall_average),
            naive_scope: self.naive_scope.or(lower.naive_scope),
            catalog: self.catalog.or(lower.catalog),
            strict_validation: self.strict_validation.or(lower.strict_validation),
        }
    }

    pub fn defaults() -> Settings {
        let scoring = ScoringConfig::default();
        Settings {
            split: Some(SplitArg::Test),
            variant: None,
            ks: Some(scoring.ks),
            sr_cutoff: Some(scoring.sr_cutoff),
            rdl_denominator: Some(RdlDenominatorArg::AllTurns),
            gt_mode: Some(GtModeArg::Mentioned),
            recall_average: Some(RecallAverageArg::Macro),
            naive_scope: Some(NaiveScopeArg::BothSpeakers),
            catalog: None,
            strict_validation: Some(false),
        }
    }

    fn scoring(&self) -> ScoringConfig {
        ScoringConfig {
            ks: self.ks.clone().unwrap_or_default(),
            sr_cutoff: self.sr_cutoff.unwrap_or(1),
            rdl_denominator: self
                .rdl_denominator
                .unwrap_or(RdlDenominatorArg::AllTurns)
                .into(),
            recall_average: self
                .recall_average
                .unwrap_or(RecallAverageArg::Macro)
                .into(),
        }
    }
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[arg(long)]
    pub corpus: PathBuf,
    #[arg(long)]
    pub out_dir: PathBuf,
    #[command(flatten)]
    pub settings: Settings,
}

#[derive(Debug, Args)]
pub struct MaskArgs {
    #[arg(long)]
    pub instances: PathBuf,
    /// Corpus the instances were built from; supplies movie titles.
    #[arg(long)]
    pub corpus: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub settings: Settings,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[arg(long)]
    pub train: Option<PathBuf>,
    #[arg(long)]
    pub test: Option<PathBuf>,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    #[command(flatten)]
    pub settings: Settings,
}

#[derive(Debug, Args)]
pub struct BaselineArgs {
    #[arg(long)]
    pub name: BaselineName,
    #[arg(long)]
    pub instances: PathBuf,
    /// Training instances, required by the popularity baseline.
    #[arg(long)]
    pub train_instances: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub settings: Settings,
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    #[arg(long)]
    pub instances: PathBuf,
    #[arg(long)]
    pub predictions: PathBuf,
    /// JSON report path; a CSV with the same stem is written next to it.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Label used in comparison tables.
    #[arg(long)]
    pub name: Option<String>,
    /// Score even if fingerprints disagree.
    #[arg(long)]
    pub force: bool,
    #[command(flatten)]
    pub settings: Settings,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long, num_args = 1.., required = true)]
    pub inputs: Vec<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// What a successful invocation produced.
#[derive(Debug, Default)]
pub struct Outcome {
    pub written: Vec<PathBuf>,
    pub stdout: String,
}

fn effective(settings: &Settings, file: &Settings) -> Settings {
    settings.clone().or(file.clone()).or(Settings::defaults())
}

fn load_settings_file(path: Option<&Path>) -> CliResult<Settings> {
    let Some(path) = path else {
        return Ok(Settings::default());
    };
    let text = fs::read_to_string(path).map_err(|e| CliError::from(BenchError::io(path, e)))?;
    toml::from_str(&text).map_err(|e| {
        CliError::new(
            ExitCode::InvalidConfig,
            "invalid_config",
            format!("{}: {e}", path.display()),
        )
    })
}

fn write_text(path: &Path, text: &str) -> CliResult<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| CliError::from(BenchError::io(parent, e)))?;
    }
    fs::write(path, text).map_err(|e| CliError::from(BenchError::io(path, e)))
}

fn read_instances(path: &Path) -> CliResult<(Option<ArtifactHeader>, Vec<EvaluationInstance>)> {
    Ok(read_jsonl(path)?)
}

/// Fingerprint of an instance artifact: its header, or a digest of the
/// records when the file has none.
fn instances_fingerprint(
    header: Option<&ArtifactHeader>,
    instances: &[EvaluationInstance],
) -> String {
    match header {
        Some(h) => h.fingerprint.clone(),
        None => fingerprint(instances),
    }
}

/// Parse arguments and run. Returns the produced artifacts or a structured
/// error.
pub fn execute<I, T>(args: I) -> CliResult<Outcome>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| {
        CliError::new(
            ExitCode::Usage,
            "usage",
            e.to_string().trim_end().to_owned(),
        )
    })?;
    let file = load_settings_file(cli.config.as_deref())?;
    match cli.command {
        Command::Build(a) => cmd_build(a, &file),
        Command::Mask(a) => cmd_mask(a, &file),
        Command::Stats(a) => cmd_stats(a, &file),
        Command::Baseline(a) => cmd_baseline(a, &file),
        Command::Score(a) => cmd_score(a, &file),
        Command::Report(a) => cmd_report(a),
    }
}

fn build_options(s: &Settings) -> CliResult<BuildOptions> {
    let catalog = match &s.catalog {
        Some(p) => Some(load_catalog(p)?),
        None => None,
    };
    Ok(BuildOptions {
        split: s.split.map(Split::from),
        gt_mode: s.gt_mode.map(Into::into).unwrap_or_default(),
        strict_validation: s.strict_validation.unwrap_or(false),
        catalog,
    })
}

fn cmd_build(a: BuildArgs, file: &Settings) -> CliResult<Outcome> {
    let s = effective(&a.settings, file);
    let opts = build_options(&s)?;
    let out = build(&a.corpus, &opts)?;
    let variants: Vec<Variant> = match s.variant {
        Some(v) => vec![v.into()],
        None => vec![Variant::Standard, Variant::Dedup],
    };
    let written = out.write(&a.out_dir, &variants)?;
    let log = out.log();
    let stdout = format!(
        "fingerprint {}\ndialogues {} (parse errors {}, excluded {})\nstandard {} instances\ndedup {} instances ({} dropped)\nrepetition rate {:.4}\n",
        log.fingerprint,
        log.dialogues,
        log.parse_errors.len(),
        log.excluded_dialogues,
        log.standard_instances,
        log.dedup_instances,
        log.dedup_drops,
        log.repetition_rate
    );
    Ok(Outcome { written, stdout })
}

fn cmd_mask(a: MaskArgs, file: &Settings) -> CliResult<Outcome> {
    let s = effective(&a.settings, file);
    let cat_path = s
        .catalog
        .as_ref()
        .ok_or_else(|| CliError::new(ExitCode::Usage, "usage", "mask requires --catalog PATH"))?;
    let cat = load_catalog(cat_path)?;
    let (header, instances) = read_instances(&a.instances)?;
    let split = s.split.map(Split::from).unwrap_or(Split::Test);
    let dialogues = parse_corpus(&a.corpus, split)?.dialogues;
    let (header, masked) = mask_artifact(header.as_ref(), &instances, &cat, &dialogues)?;
    write_jsonl(&a.out, Some(&header), &masked)?;

    let coverage = compute_coverage(
        &instances,
        dialogues
            .iter()
            .flat_map(|d| d.movie_mentions.keys().map(String::as_str)),
        &cat,
    );
    let cov_path = a.out.with_extension("coverage.json");
    write_text(
        &cov_path,
        &(serde_json::to_string_pretty(&coverage).map_err(BenchError::from)? + "\n"),
    )?;
    Ok(Outcome {
        written: vec![a.out, cov_path],
        stdout: format!(
            "catalog {}: test data {:.4}, items {:.4}\n",
            coverage.catalog_id, coverage.test_data_pct, coverage.items_pct
        ),
    })
}

#[derive(Serialize)]
struct StatsDump<'a> {
    fingerprint: String,
    table: &'a crate::stats::StatsTable,
    repetition_rate: std::collections::BTreeMap<String, f64>,
    validation: std::collections::BTreeMap<String, std::collections::BTreeMap<String, usize>>,
}

fn cmd_stats(a: StatsArgs, file: &Settings) -> CliResult<Outcome> {
    let s = effective(&a.settings, file);
    let mut inputs: Vec<(Split, &PathBuf)> = Vec::new();
    if let Some(p) = &a.train {
        inputs.push((Split::Train, p));
    }
    if let Some(p) = &a.test {
        inputs.push((Split::Test, p));
    }
    if inputs.is_empty() {
        return Err(CliError::new(
            ExitCode::Usage,
            "usage",
            "stats needs --train and/or --test",
        ));
    }

    let mut outputs: Vec<(Split, BuildOutput)> = Vec::new();
    for (split, path) in inputs {
        let mut opts = build_options(&s)?;
        opts.split = Some(split);
        outputs.push((split, build(path, &opts)?));
    }

    let names: Vec<String> = outputs.iter().map(|(s, _)| s.to_string()).collect();
    let data: Vec<SplitData<'_>> = outputs
        .iter()
        .zip(&names)
        .map(|((_, o), name)| SplitData {
            name,
            dialogues: &o.dialogues,
            instances: &o.standard.instances,
        })
        .collect();
    let table = corpus_stats(&data);

    let fps: Vec<String> = outputs.iter().map(|(_, o)| o.fingerprint()).collect();
    let dump = StatsDump {
        fingerprint: fingerprint(&fps),
        table: &table,
        repetition_rate: outputs
            .iter()
            .map(|(s, o)| (s.to_string(), repetition_rate(&o.standard.instances)))
            .collect(),
        validation: outputs
            .iter()
            .map(|(s, o)| (s.to_string(), o.log().validation_histogram))
            .collect(),
    };

    let mut stdout = table.to_text();
    for (split, rate) in &dump.repetition_rate {
        stdout.push_str(&format!("repetition rate ({split}): {rate:.4}\n"));
    }

    let mut written = Vec::new();
    if let Some(dir) = &a.out_dir {
        let csv = dir.join("stats.csv");
        let txt = dir.join("stats.txt");
        let json = dir.join("stats.json");
        write_text(&csv, &table.to_csv())?;
        write_text(&txt, &stdout)?;
        write_text(
            &json,
            &(serde_json::to_string_pretty(&dump).map_err(BenchError::from)? + "\n"),
        )?;
        written.extend([csv, txt, json]);
    }
    Ok(Outcome { written, stdout })
}

fn cmd_baseline(a: BaselineArgs, file: &Settings) -> CliResult<Outcome> {
    let s = effective(&a.settings, file);
    let (header, instances) = read_instances(&a.instances)?;
    let source_fp = instances_fingerprint(header.as_ref(), &instances);

    let (predictions, config) = match a.name {
        BaselineName::Naive => {
            let scope: NaiveScope = s.naive_scope.map(Into::into).unwrap_or_default();
            (
                naive_predictions(&instances, scope),
                serde_json::json!({ "baseline": "naive", "naive_scope": scope }),
            )
        }
        BaselineName::Popularity => {
            let train = a.train_instances.as_ref().ok_or_else(|| {
                CliError::new(
                    ExitCode::Usage,
                    "usage",
                    "popularity baseline needs --train-instances",
                )
            })?;
            let (_, train_instances) = read_instances(train)?;
            let model = PopularityModel::fit(&train_instances);
            let k =
                s.ks.as_ref()
                    .and_then(|k| k.iter().max().copied())
                    .unwrap_or(50);
            (
                popularity_predictions(&model, &instances, k)?,
                serde_json::json!({ "baseline": "popularity", "k": k, "train_items": model.ranking.len() }),
            )
        }
    };

    let out_header = ArtifactHeader {
        artifact: "predictions".to_owned(),
        fingerprint: source_fp,
        variant: header.and_then(|h| h.variant),
        config,
    };
    write_jsonl(&a.out, Some(&out_header), &predictions)?;
    Ok(Outcome {
        stdout: format!("{} predictions written\n", predictions.len()),
        written: vec![a.out],
    })
}

fn cmd_score(a: ScoreArgs, file: &Settings) -> CliResult<Outcome> {
    let s = effective(&a.settings, file);
    let config = s.scoring();
    config.validate()?;

    let (ih, instances) = read_instances(&a.instances)?;
    let (ph, predictions): (Option<ArtifactHeader>, Vec<RankedPrediction>) =
        read_jsonl(&a.predictions)?;
    let instance_fp = instances_fingerprint(ih.as_ref(), &instances);

    if let Some(ph) = &ph {
        if ph.fingerprint != instance_fp && !a.force {
            return Err(BenchError::FingerprintMismatch {
                expected: instance_fp,
                found: ph.fingerprint.clone(),
            }
            .into());
        }
    }

    let file_variant = ih
        .as_ref()
        .and_then(|h| h.variant)
        .or_else(|| instances.first().map(|i| i.variant));
    if let (Some(flag), Some(actual)) = (s.variant.map(Variant::from), file_variant) {
        if flag != actual {
            return Err(CliError::new(
                ExitCode::PredictionMismatch,
                "variant_mismatch",
                format!("--variant {flag} but the instance file holds the {actual} variant"),
            ));
        }
    }

    let set = PredictionSet::new(predictions)?;
    let mut report = evaluate(&instances, &set, &config)?;
    report.name = a
        .name
        .clone()
        .or_else(|| {
            ph.as_ref()
                .and_then(|h| h.config.get("baseline"))
                .and_then(|b| b.as_str())
                .map(str::to_owned)
        })
        .or_else(|| {
            a.predictions
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
        })
        .unwrap_or_default();
    report.instances_fingerprint = Some(instance_fp.clone());
    report.config_fingerprint = fingerprint(&(&instance_fp, &config, report.variant));

    let json = serde_json::to_string_pretty(&report).map_err(BenchError::from)? + "\n";
    let mut written = Vec::new();
    if let Some(out) = &a.out {
        write_text(out, &json)?;
        let csv = out.with_extension("csv");
        write_text(&csv, &report.to_csv())?;
        written.extend([out.clone(), csv]);
    }
    Ok(Outcome {
        written,
        stdout: json,
    })
}

fn cmd_report(a: ReportArgs) -> CliResult<Outcome> {
    let mut reports = Vec::new();
    for p in &a.inputs {
        let text = fs::read_to_string(p).map_err(|e| CliError::from(BenchError::io(p, e)))?;
        let r: MetricReport = serde_json::from_str(&text).map_err(|e| {
            CliError::from(BenchError::Record {
                path: p.clone(),
                line: e.line(),
                message: e.to_string(),
            })
        })?;
        reports.push(r);
    }
    let table = comparison_table(&reports);
    let mut written = Vec::new();
    if let Some(out) = &a.out {
        write_text(out, &table)?;
        written.push(out.clone());
    }
    Ok(Outcome {
        written,
        stdout: table,
    })
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
}

/// Entry point for the binary: runs, prints, and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    configure_threads();
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    // --help and --version are not errors.
    if let Err(e) = Cli::try_parse_from(&args) {
        if matches!(
            e.kind(),
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
        ) {
            print!("{e}");
            return 0;
        }
    }
    match execute(args) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            0
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code
        }
    }
}
