//! The `jguard` command line.
//!
//! ```text
//! jguard [--seed N] split        --in c.jsonl --out-dir DIR [--ratios 7:2:1]
//! jguard [--seed N] extract      --in c.jsonl --out f.csv [--raw]
//! jguard [--seed N] train-lr     --train t.jsonl --out m.json
//! jguard [--seed N] train-fusion --train t.jsonl --val v.jsonl --out m.json EMB
//! jguard [--seed N] eval         --model m.json --test t.jsonl --out r.json [EMB]
//! jguard [--seed N] attack       --kind cyrillic|paraphrase --in c.jsonl --out a.jsonl [--paraphrases p.jsonl]
//! jguard [--seed N] robustness   --model m.json --test t.jsonl --kind K --out r.json [EMB]
//! jguard [--seed N] report       --in r1.json [--in r2.json ...] --out all.json
//!
//! EMB: --embeddings e.bin [--post-embeddings p.bin] | --pseudo-embeddings --dim D
//! ```
//!
//! Exit codes: 0 success, 2 usage, 3 data error, 4 numeric failure. Errors
//! are printed to stderr as a single `error[<class>]: <message>` line.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::attack::{robustness_eval, AttackError, AttackSpec};
use crate::corpus::{load_corpus, split_corpus, write_corpus, Corpus, CorpusError, SplitSpec};
use crate::eval::{
    auroc_of, config_digest, emit_report, read_report, render_table, score_corpus, EvalError,
    EvalReport, ReportEntry,
};
use crate::features::{extract_batch, FeatureVector, FEATURE_COUNT, FEATURE_NAMES};
use crate::fusion::{
    load_embeddings, load_model, model_to_json, save_model, train_fusion, train_lr, EmbeddingError,
    EmbeddingSource, FusionError, FusionExample, FusionModel, HeadShape, LrConfig, Model,
    TrainConfig,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DATA: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "jguard", version, about = "Journalism-guided AI-news detection")]
pub struct CliConfig {
    /// Master seed for every random choice.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Split a corpus into train/test/validation files.
    Split {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, default_value = "7:2:1")]
        ratios: String,
    },
    /// Write journalism features as CSV.
    Extract {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Unnormalized values.
        #[arg(long)]
        raw: bool,
    },
    /// Train the logistic-regression baseline.
    TrainLr {
        #[arg(long)]
        train: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = LrConfig::default().learning_rate)]
        lr: f64,
        #[arg(long, default_value_t = LrConfig::default().epochs)]
        epochs: usize,
        #[arg(long, default_value_t = LrConfig::default().l2)]
        l2: f64,
        #[arg(long, default_value_t = LrConfig::default().batch_size)]
        batch_size: usize,
    },
    /// Train the fusion network.
    TrainFusion {
        #[arg(long)]
        train: PathBuf,
        #[arg(long)]
        val: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        emb: EmbeddingArgs,
        #[arg(long, default_value_t = TrainConfig::default().learning_rate)]
        lr: f64,
        #[arg(long, default_value_t = TrainConfig::default().dropout_rate)]
        dropout: f64,
        #[arg(long, default_value_t = TrainConfig::default().max_epochs)]
        epochs: usize,
        #[arg(long, default_value_t = TrainConfig::default().patience)]
        patience: usize,
        #[arg(long, default_value_t = TrainConfig::default().batch_size)]
        batch_size: usize,
        #[arg(long, default_value_t = HeadShape::default().guidance_hidden)]
        guidance_hidden: usize,
        #[arg(long, default_value_t = HeadShape::default().guidance_out)]
        guidance_out: usize,
        #[arg(long, default_value_t = HeadShape::default().class_hidden)]
        class_hidden: usize,
    },
    /// Score a test corpus and write an AUROC report.
    Eval {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        test: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        emb: EmbeddingArgs,
    },
    /// Write an attacked copy of a corpus.
    Attack {
        #[arg(long)]
        kind: KindArg,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        paraphrases: Option<PathBuf>,
    },
    /// AUROC before and after an attack.
    Robustness {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        test: PathBuf,
        #[arg(long)]
        kind: KindArg,
        #[arg(long)]
        paraphrases: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        emb: EmbeddingArgs,
    },
    /// Merge reports and render the table.
    Report {
        #[arg(long = "in", required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Cyrillic,
    Paraphrase,
}

#[derive(Debug, Clone, Args)]
pub struct EmbeddingArgs {
    /// JGEMB1 embedding file.
    #[arg(long, conflicts_with = "pseudo_embeddings")]
    pub embeddings: Option<PathBuf>,
    /// JGEMB1 file of post-attack embeddings (robustness only).
    #[arg(long, requires = "embeddings")]
    pub post_embeddings: Option<PathBuf>,
    /// Deterministic stand-in embeddings derived from ids and the seed.
    #[arg(long, requires = "dim")]
    pub pseudo_embeddings: bool,
    #[arg(long)]
    pub dim: Option<usize>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Data(_) => EXIT_DATA,
            CliError::Numeric(_) => EXIT_NUMERIC,
        }
    }

    fn class(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Data(_) => "data",
            CliError::Numeric(_) => "numeric",
        }
    }
}

impl From<CorpusError> for CliError {
    fn from(e: CorpusError) -> Self {
        match e {
            CorpusError::InvalidSplit(_) => CliError::Usage(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

impl From<FusionError> for CliError {
    fn from(e: FusionError) -> Self {
        match e {
            FusionError::NonFiniteInput | FusionError::NonFiniteLoss { .. } => CliError::Numeric(e.to_string()),
            FusionError::InvalidConfig(_) | FusionError::InvalidShape(_) => CliError::Usage(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::NonFiniteScore => CliError::Numeric(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

impl From<EmbeddingError> for CliError {
    fn from(e: EmbeddingError) -> Self {
        match e {
            EmbeddingError::NonFinite { .. } => CliError::Numeric(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

impl From<AttackError> for CliError {
    fn from(e: AttackError) -> Self {
        match e {
            AttackError::Corpus(e) => e.into(),
            AttackError::Eval(e) => e.into(),
            AttackError::MissingParaphrasePath => CliError::Usage(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

/// Parses `argv` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match CliConfig::try_parse_from(argv) {
        Ok(cfg) => cfg,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    EXIT_OK
                }
                _ => {
                    let msg = e.to_string();
                    let first = msg.lines().next().unwrap_or("invalid arguments");
                    eprintln!("error[usage]: {}", first.trim_start_matches("error: "));
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cfg) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            eprintln!("error[{}]: {msg}", e.class());
            e.exit_code()
        }
    }
}

pub fn execute(cfg: &CliConfig) -> Result<(), CliError> {
    let seed = cfg.seed;
    match &cfg.command {
        Command::Split { input, out_dir, ratios } => cmd_split(input, out_dir, ratios, seed),
        Command::Extract { input, out, raw } => cmd_extract(input, out, *raw),
        Command::TrainLr { train, out, lr, epochs, l2, batch_size } => {
            let lr_cfg = LrConfig {
                learning_rate: *lr,
                epochs: *epochs,
                l2: *l2,
                batch_size: *batch_size,
                seed,
            };
            cmd_train_lr(train, out, &lr_cfg)
        }
        Command::TrainFusion {
            train,
            val,
            out,
            emb,
            lr,
            dropout,
            epochs,
            patience,
            batch_size,
            guidance_hidden,
            guidance_out,
            class_hidden,
        } => {
            let tcfg = TrainConfig {
                learning_rate: *lr,
                dropout_rate: *dropout,
                max_epochs: *epochs,
                patience: *patience,
                batch_size: *batch_size,
                seed,
            };
            let shape = HeadShape {
                guidance_hidden: *guidance_hidden,
                guidance_out: *guidance_out,
                class_hidden: *class_hidden,
            };
            cmd_train_fusion(train, val, out, emb, &tcfg, shape, seed)
        }
        Command::Eval { model, test, out, emb } => cmd_eval(model, test, out, emb, seed),
        Command::Attack { kind, input, out, paraphrases } => {
            let spec = attack_spec(*kind, paraphrases.as_deref())?;
            let attacked = spec.apply(&load_corpus(input)?)?;
            Ok(write_corpus(&attacked, out)?)
        }
        Command::Robustness { model, test, kind, paraphrases, out, emb } => {
            let spec = attack_spec(*kind, paraphrases.as_deref())?;
            cmd_robustness(model, test, &spec, out, emb, seed)
        }
        Command::Report { inputs, out } => {
            let mut entries = Vec::new();
            for p in inputs {
                entries.extend(read_report(p)?);
            }
            emit_report(&entries, out)?;
            print!("{}", render_table(&entries));
            Ok(())
        }
    }
}

fn attack_spec(kind: KindArg, paraphrases: Option<&Path>) -> Result<AttackSpec, CliError> {
    match (kind, paraphrases) {
        (KindArg::Cyrillic, _) => Ok(AttackSpec::cyrillic()),
        (KindArg::Paraphrase, Some(p)) => Ok(AttackSpec::paraphrase(p)),
        (KindArg::Paraphrase, None) => Err(CliError::Usage("--kind paraphrase needs --paraphrases".into())),
    }
}

fn cmd_split(input: &Path, out_dir: &Path, ratios: &str, seed: u64) -> Result<(), CliError> {
    let spec = SplitSpec::parse_ratios(ratios, seed)?;
    let corpus = load_corpus(input)?;
    let (train, test, val) = split_corpus(&corpus, &spec)?;
    fs::create_dir_all(out_dir).map_err(|e| CliError::Data(format!("{}: {e}", out_dir.display())))?;
    for part in [&train, &test, &val] {
        write_corpus(part, out_dir.join(format!("{}.jsonl", part.name)))?;
    }
    Ok(())
}

/// Rounds to 9 significant digits and prints the shortest decimal form.
pub fn format_sig9(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{}", if v == 0.0 { 0.0 } else { v });
    }
    let rounded: f64 = format!("{v:.8e}").parse().expect("formatted float parses");
    format!("{rounded}")
}

pub fn features_csv(corpus: &Corpus, features: &[FeatureVector]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["id", "label"];
    header.extend(FEATURE_NAMES);
    let csv_err = |e: csv::Error| CliError::Data(e.to_string());
    w.write_record(&header).map_err(csv_err)?;
    for (a, f) in corpus.articles.iter().zip(features) {
        let mut row = Vec::with_capacity(FEATURE_COUNT + 2);
        row.push(a.id.clone());
        row.push(a.label.as_u8().to_string());
        row.extend(f.values.iter().map(|&v| format_sig9(v)));
        w.write_record(&row).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Data(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Data(e.to_string()))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn cmd_extract(input: &Path, out: &Path, raw: bool) -> Result<(), CliError> {
    let corpus = load_corpus(input)?;
    let texts: Vec<&str> = corpus.articles.iter().map(|a| a.text.as_str()).collect();
    let features = extract_batch(&texts, !raw);
    write_file(out, &features_csv(&corpus, &features)?)
}

fn normalized_features(corpus: &Corpus) -> Vec<[f64; FEATURE_COUNT]> {
    let texts: Vec<&str> = corpus.articles.iter().map(|a| a.text.as_str()).collect();
    extract_batch(&texts, true).into_iter().map(|f| f.values).collect()
}

fn cmd_train_lr(train: &Path, out: &Path, cfg: &LrConfig) -> Result<(), CliError> {
    let corpus = load_corpus(train)?;
    let model = train_lr(&normalized_features(&corpus), &corpus.labels(), cfg)?;
    Ok(save_model(&Model::Lr(model), out)?)
}

/// Resolves the pre- and post-attack embedding sources.
fn embedding_sources(
    emb: &EmbeddingArgs,
    seed: u64,
) -> Result<(Option<EmbeddingSource>, Option<EmbeddingSource>), CliError> {
    if emb.pseudo_embeddings {
        let dim = emb.dim.ok_or_else(|| CliError::Usage("--pseudo-embeddings needs --dim".into()))?;
        if dim == 0 {
            return Err(CliError::Usage("--dim must be >= 1".into()));
        }
        return Ok((
            Some(EmbeddingSource::pseudo(dim, seed)),
            Some(EmbeddingSource::pseudo_tagged(dim, seed, "post")),
        ));
    }
    let pre = emb
        .embeddings
        .as_ref()
        .map(|p| load_embeddings(p).map(EmbeddingSource::from_file))
        .transpose()?;
    let post = emb
        .post_embeddings
        .as_ref()
        .map(|p| load_embeddings(p).map(EmbeddingSource::from_file))
        .transpose()?;
    Ok((pre, post))
}

fn fusion_examples(
    corpus: &Corpus,
    source: &EmbeddingSource,
) -> Result<Vec<FusionExample>, CliError> {
    let features = normalized_features(corpus);
    corpus
        .articles
        .iter()
        .zip(features)
        .map(|(a, f)| {
            Ok(FusionExample {
                embedding: source.get(&a.id)?.into_owned(),
                features: f.to_vec(),
                label: a.label,
            })
        })
        .collect()
}

fn cmd_train_fusion(
    train: &Path,
    val: &Path,
    out: &Path,
    emb: &EmbeddingArgs,
    tcfg: &TrainConfig,
    shape: HeadShape,
    seed: u64,
) -> Result<(), CliError> {
    let (source, _) = embedding_sources(emb, seed)?;
    let source = source.ok_or_else(|| {
        CliError::Usage("train-fusion needs --embeddings or --pseudo-embeddings --dim".into())
    })?;
    let train_set = fusion_examples(&load_corpus(train)?, &source)?;
    let val_set = fusion_examples(&load_corpus(val)?, &source)?;
    let init = FusionModel::new(source.dim(), FEATURE_COUNT, shape, seed)?;
    let model = train_fusion(&init, &train_set, &val_set, tcfg)?;
    Ok(save_model(&Model::Fusion(model), out)?)
}

fn check_dim(model: &Model, source: Option<&EmbeddingSource>) -> Result<(), CliError> {
    match (model.embedding_dim(), source) {
        (Some(_), None) => Err(CliError::Usage(
            "fusion model needs --embeddings or --pseudo-embeddings --dim".into(),
        )),
        (Some(d), Some(s)) if s.dim() != d => Err(CliError::Data(format!(
            "model expects {d}-dimensional embeddings, source has {}",
            s.dim()
        ))),
        _ => Ok(()),
    }
}

fn cmd_eval(model_path: &Path, test: &Path, out: &Path, emb: &EmbeddingArgs, seed: u64) -> Result<(), CliError> {
    let model = load_model(model_path)?;
    let corpus = load_corpus(test)?;
    let (source, _) = embedding_sources(emb, seed)?;
    check_dim(&model, source.as_ref())?;
    let scores = score_corpus(&model, &corpus, source.as_ref())?;
    let auroc = auroc_of(&scores, &corpus.labels())?;
    let report = EvalReport {
        detector: model.detector_name().to_string(),
        generator: corpus.generator_tag(),
        auroc,
        n_test: corpus.len(),
        config_digest: config_digest(&model_to_json(&model), &corpus.name),
    };
    emit_report(&[ReportEntry::Eval(report)], out)?;
    Ok(())
}

fn cmd_robustness(
    model_path: &Path,
    test: &Path,
    spec: &AttackSpec,
    out: &Path,
    emb: &EmbeddingArgs,
    seed: u64,
) -> Result<(), CliError> {
    let model = load_model(model_path)?;
    let corpus = load_corpus(test)?;
    let (pre, post) = embedding_sources(emb, seed)?;
    check_dim(&model, pre.as_ref())?;
    if model.needs_embeddings() && post.is_none() {
        return Err(CliError::Usage("fusion robustness needs --post-embeddings".into()));
    }
    check_dim(&model, post.as_ref())?;
    let report = robustness_eval(&model, &corpus, pre.as_ref(), post.as_ref(), spec)?;
    emit_report(&[ReportEntry::Robustness(report)], out)?;
    Ok(())
}
