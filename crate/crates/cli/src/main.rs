use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use devspell::eval::{self, REFERENCE_KS};
use devspell::mlm::{CandidateProvider, MlmConfig, MockProvider, RemoteProvider};
use devspell::{Pipeline, PipelineConfig};

mod config;

/// Exit statuses.
const EXIT_FAILURE: u8 = 1;
const EXIT_MALFORMED: u8 = 2;
const EXIT_PROVIDER: u8 = 3;

#[derive(Parser)]
#[command(name = "devspell", version, about = "Context-sensitive spelling correction for OCR Devanagari text")]
struct Cli {
    /// key=value settings file; command-line flags take precedence.
    #[arg(long, global = true, env = "DEVSPELL_CONFIG")]
    config: Option<PathBuf>,
    /// Word list, one word per line. Defaults to the bundled sample.
    #[arg(long, global = true)]
    lexicon: Option<PathBuf>,
    /// Directory of <label>.txt gazetteers. Defaults to the bundled sample.
    #[arg(long, global = true)]
    gazetteers: Option<PathBuf>,
    /// Alternative WX mapping table.
    #[arg(long, global = true)]
    wx_table: Option<PathBuf>,
    /// Base URL of the masked language model service.
    #[arg(long, global = true)]
    endpoint: Option<String>,
    /// Candidates requested per masked word.
    #[arg(long, global = true)]
    top_k: Option<usize>,
    #[arg(long, global = true)]
    timeout_ms: Option<u64>,
    /// Answer from a JSON candidate table instead of a live model.
    #[arg(long, global = true)]
    mock_table: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convert between Devanagari and WX, line by line.
    Translit {
        direction: Direction,
        file: Option<PathBuf>,
    },
    /// List out-of-vocabulary words as <sentence> <index> <surface>.
    Detect { file: Option<PathBuf> },
    /// Print the corrected text.
    Correct {
        file: Option<PathBuf>,
        /// Write a JSON record of every decision here.
        #[arg(long)]
        audit: Option<PathBuf>,
    },
    /// Measure correction accuracy against a tab-separated gold file.
    Eval {
        gold: PathBuf,
        #[arg(long, value_delimiter = ',', default_values_t = REFERENCE_KS.to_vec())]
        ks: Vec<usize>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    ToWx,
    FromWx,
}

struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        Failure { code: EXIT_FAILURE, error }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("devspell: {}", describe(&f.error));
            ExitCode::from(f.code)
        }
    }
}

/// The error chain, leaving out causes already quoted by their parent.
fn describe(error: &anyhow::Error) -> String {
    let mut msg = error.to_string();
    for cause in error.chain().skip(1) {
        let text = cause.to_string();
        if !msg.contains(&text) {
            msg.push_str(": ");
            msg.push_str(&text);
        }
    }
    msg
}

fn read_input(file: Option<&Path>) -> anyhow::Result<String> {
    match file {
        Some(p) => {
            let bytes = fs::read(p).with_context(|| format!("reading {}", p.display()))?;
            String::from_utf8(bytes).map_err(|e| anyhow!("{}: not UTF-8: {e}", p.display()))
        }
        None => {
            let mut bytes = Vec::new();
            io::stdin().read_to_end(&mut bytes).context("reading stdin")?;
            String::from_utf8(bytes).map_err(|e| anyhow!("stdin: not UTF-8: {e}"))
        }
    }
}

fn settings(cli: &Cli) -> anyhow::Result<PipelineConfig> {
    let mut cfg = PipelineConfig::default();
    if let Some(path) = &cli.config {
        config::apply_file(&mut cfg, path)?;
    }
    if let Some(p) = &cli.lexicon {
        cfg.lexicon_path = Some(p.clone());
    }
    if let Some(p) = &cli.gazetteers {
        cfg.gazetteer_dir = Some(p.clone());
    }
    if let Some(p) = &cli.wx_table {
        cfg.wx_table_path = Some(p.clone());
    }
    if let Some(e) = &cli.endpoint {
        cfg.mlm.endpoint = Some(e.clone());
    }
    if let Some(k) = cli.top_k {
        cfg.mlm.top_k = k;
    }
    if let Some(ms) = cli.timeout_ms {
        cfg.mlm.timeout = Duration::from_millis(ms);
    }
    cfg.mlm.validate().map_err(|e| anyhow!("invalid settings: {e}"))?;
    Ok(cfg)
}

fn provider(cli: &Cli, mlm: &MlmConfig) -> anyhow::Result<Box<dyn CandidateProvider>> {
    if let Some(path) = &cli.mock_table {
        let mock = MockProvider::load(path).with_context(|| format!("mock table {}", path.display()))?;
        return Ok(Box::new(mock));
    }
    if mlm.endpoint.is_some() {
        return Ok(Box::new(RemoteProvider::new(mlm).map_err(|e| anyhow!("{e}"))?));
    }
    eprintln!("devspell: no model endpoint configured; no candidates will be proposed");
    Ok(Box::new(MockProvider::new()))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let mut out = io::stdout().lock();
    match &cli.command {
        Command::Translit { direction, file } => {
            let text = read_input(file.as_deref())?;
            for (n, line) in text.lines().enumerate() {
                let converted = match direction {
                    Direction::ToWx => devspell::to_wx(line).into_string(),
                    Direction::FromWx => devspell::from_wx(line).map_err(|e| Failure {
                        code: EXIT_MALFORMED,
                        error: anyhow!("line {}: {e}", n + 1),
                    })?,
                };
                writeln!(out, "{converted}").map_err(anyhow::Error::from)?;
            }
            Ok(0)
        }
        Command::Detect { file } => {
            let cfg = settings(&cli)?;
            let text = read_input(file.as_deref())?;
            let pipeline = Pipeline::from_config(&cfg).map_err(anyhow::Error::from)?;
            for (sentence, e) in pipeline.detect(&text) {
                writeln!(out, "{sentence}\t{}\t{}", e.word_index, e.surface).map_err(anyhow::Error::from)?;
            }
            Ok(0)
        }
        Command::Correct { file, audit } => {
            let cfg = settings(&cli)?;
            let text = read_input(file.as_deref())?;
            let pipeline = Pipeline::from_config(&cfg).map_err(anyhow::Error::from)?;
            let provider = provider(&cli, &cfg.mlm)?;
            let doc = pipeline.correct(&text, provider.as_ref());
            out.write_all(doc.text.as_bytes()).map_err(anyhow::Error::from)?;
            out.flush().map_err(anyhow::Error::from)?;

            let record = serde_json::to_string_pretty(&doc.audit()).map_err(anyhow::Error::from)?;
            if let Some(path) = audit {
                fs::write(path, record + "\n")
                    .with_context(|| format!("writing audit {}", path.display()))?;
            } else if cfg.emit_audit {
                eprintln!("{record}");
            }
            for s in doc.skipped.iter().filter(|s| s.provider_error.is_some()) {
                eprintln!(
                    "devspell: sentence {} word {} ({}) left unchanged: {}",
                    s.sentence,
                    s.error.word_index,
                    s.error.surface,
                    s.provider_error.as_ref().unwrap()
                );
            }
            Ok(if doc.provider_failures() > 0 { EXIT_PROVIDER } else { 0 })
        }
        Command::Eval { gold, ks, json } => {
            let cfg = settings(&cli)?;
            if ks.is_empty() || ks.contains(&0) {
                return Err(anyhow!("--ks must list positive integers").into());
            }
            let corpus = eval::load_gold(gold).with_context(|| format!("gold file {}", gold.display()))?;
            for line in &corpus.warnings {
                eprintln!("devspell: {}:{line}: word counts differ; pair skipped", gold.display());
            }
            if corpus.pairs.is_empty() {
                eprintln!("devspell: {}: no usable pairs", gold.display());
            }
            let provider = provider(&cli, &cfg.mlm)?;
            let report = eval::evaluate(&corpus, &cfg, provider.as_ref(), ks).map_err(anyhow::Error::from)?;
            if *json {
                let s = serde_json::to_string_pretty(&report.to_json()).map_err(anyhow::Error::from)?;
                writeln!(out, "{s}").map_err(anyhow::Error::from)?;
            } else {
                out.write_all(report.to_table().as_bytes()).map_err(anyhow::Error::from)?;
            }
            Ok(0)
        }
    }
}
