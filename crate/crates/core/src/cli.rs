//! Command-line front end. Every subcommand is a thin adapter over the
//! library; see `srtk --help`.
//!
//! Exit codes: 0 success, 1 data or validation error, 2 usage error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use crate::corpus::{
    corpus_stats, generate_synthetic, parse_conll, parse_tagged, parse_tokens, write_conll,
    write_tagged, Corpus, SyntheticConfig,
};
use crate::demo::render_table1;
use crate::ensemble::majority_vote;
use crate::eval::{evaluate, Comparison, TableStyle};
use crate::schemes::{convert, decode, encode, validate, DecodeMode, Scheme};
use crate::tagger::{tag_corpus, train, TaggerModel, TrainConfig};

#[derive(Debug, Parser)]
#[command(name = "srtk", version, about = "Segment representation toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Re-encode a CoNLL file under another scheme.
    Convert {
        #[arg(long, value_parser = parse_scheme)]
        from: Scheme,
        #[arg(long, value_parser = parse_scheme)]
        to: Scheme,
        #[command(flatten)]
        io: InOut,
        #[arg(long, default_value = "strict", value_parser = parse_mode)]
        mode: DecodeMode,
        /// Tag column index (default: last column).
        #[arg(long)]
        tag_column: Option<usize>,
    },
    /// Report every scheme violation; exit 1 if any.
    Validate {
        #[arg(long, value_parser = parse_scheme)]
        scheme: Scheme,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        tag_column: Option<usize>,
    },
    /// Entity-length histogram.
    Stats {
        #[arg(long, value_parser = parse_scheme)]
        scheme: Scheme,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "strict", value_parser = parse_mode)]
        mode: DecodeMode,
        #[arg(long)]
        tag_column: Option<usize>,
    },
    /// Generate a synthetic corpus.
    Gen {
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        sentences: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0.2)]
        density: f64,
        /// Six comma-separated probabilities for entity lengths 1..=6.
        #[arg(long = "len-dist")]
        len_dist: Option<String>,
        /// Comma-separated entity classes.
        #[arg(long, default_value = "protein,dna,cell_type")]
        classes: String,
        #[arg(long, default_value_t = 500)]
        vocab: usize,
        /// Scheme of the written tag column.
        #[arg(long, default_value = "iob2", value_parser = parse_scheme)]
        scheme: Scheme,
    },
    /// Train a perceptron model.
    Train {
        #[arg(long, value_parser = parse_scheme)]
        scheme: Scheme,
        #[arg(long)]
        train: PathBuf,
        #[arg(long)]
        model: PathBuf,
        #[arg(long, default_value_t = 5)]
        epochs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Scheme of the training file, if different from --scheme.
        #[arg(long, value_parser = parse_scheme)]
        in_scheme: Option<Scheme>,
        #[arg(long)]
        no_shuffle: bool,
    },
    /// Tag a file with a trained model. Only the first column is read.
    Tag {
        #[arg(long)]
        model: PathBuf,
        #[command(flatten)]
        io: InOut,
    },
    /// Exact-match evaluation.
    Eval {
        #[arg(long)]
        gold: PathBuf,
        #[arg(long)]
        pred: PathBuf,
        #[arg(long, value_parser = parse_scheme)]
        scheme: Scheme,
        #[arg(long, value_parser = parse_scheme)]
        gold_scheme: Option<Scheme>,
        #[arg(long, value_parser = parse_scheme)]
        pred_scheme: Option<Scheme>,
        #[arg(long)]
        by_length: bool,
        #[arg(long)]
        tsv: bool,
        /// Column name in the report (default: the prediction scheme).
        #[arg(long)]
        name: Option<String>,
    },
    /// Majority vote over prediction files; output is IOB2.
    Ensemble {
        /// Prediction file and its scheme, as FILE:SCHEME. Repeat per system.
        #[arg(long = "pred", required = true, value_parser = parse_pred)]
        preds: Vec<(PathBuf, Scheme)>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        threshold: Option<usize>,
    },
    /// Print the example sentence encoded under all eight schemes.
    #[command(name = "demo-table1")]
    DemoTable1,
}

#[derive(Debug, Args)]
struct InOut {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_scheme(s: &str) -> Result<Scheme, String> {
    s.parse().map_err(|e: crate::schemes::SchemeError| e.to_string())
}

fn parse_mode(s: &str) -> Result<DecodeMode, String> {
    s.parse().map_err(|e: crate::schemes::SchemeError| e.to_string())
}

fn parse_pred(s: &str) -> Result<(PathBuf, Scheme), String> {
    let (path, scheme) = s
        .rsplit_once(':')
        .ok_or_else(|| format!("expected FILE:SCHEME, got `{s}`"))?;
    Ok((PathBuf::from(path), parse_scheme(scheme)?))
}

fn parse_len_dist(s: &str) -> Result<[f64; 6]> {
    let values = s
        .split(',')
        .map(|v| v.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .with_context(|| format!("invalid --len-dist `{s}`"))?;
    values
        .try_into()
        .map_err(|v: Vec<f64>| anyhow!("--len-dist needs 6 values, got {}", v.len()))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
        }
        None => stdout.write_all(text.as_bytes()).context("cannot write output"),
    }
}

/// Runs the CLI with the process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// Runs the CLI against arbitrary output streams and returns the exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 2 } else { 0 };
            let rendered = err.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, stdout) {
        Ok(code) => code,
        Err(err) => {
            let _ = writeln!(stderr, "error: {err:#}");
            1
        }
    }
}

fn execute(command: Command, stdout: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Convert {
            from,
            to,
            io,
            mode,
            tag_column,
        } => {
            let text = read(&io.input)?;
            let sentences = parse_tagged(&text, tag_column, from)
                .with_context(|| format!("in {}", io.input.display()))?;
            let mut converted = Vec::with_capacity(sentences.len());
            for (i, s) in sentences.iter().enumerate() {
                converted.push(convert(&s.tags, to, mode).with_context(|| {
                    format!("{}: sentence {} (line {})", io.input.display(), i, s.lines[0])
                })?);
            }
            let out = write_tagged(
                sentences
                    .iter()
                    .zip(&converted)
                    .map(|(s, tags)| (s.tokens.as_slice(), tags)),
            );
            emit(&io.out, &out, stdout)?;
        }
        Command::Validate {
            scheme,
            input,
            tag_column,
        } => {
            let text = read(&input)?;
            let sentences = parse_tagged(&text, tag_column, scheme)
                .with_context(|| format!("in {}", input.display()))?;
            let mut found = 0;
            for (i, s) in sentences.iter().enumerate() {
                for v in validate(&s.tags) {
                    found += 1;
                    writeln!(
                        stdout,
                        "{}:{}: sentence {} token {}: {}: {}",
                        input.display(),
                        s.lines[v.token_index],
                        i,
                        v.token_index,
                        v.kind,
                        v.description
                    )?;
                }
            }
            if found > 0 {
                return Ok(1);
            }
        }
        Command::Stats {
            scheme,
            input,
            mode,
            tag_column,
        } => {
            let text = read(&input)?;
            let corpus = parse_conll(&text, tag_column, scheme, mode)
                .with_context(|| format!("in {}", input.display()))?;
            stdout.write_all(corpus_stats(&corpus).render().as_bytes())?;
        }
        Command::Gen {
            out,
            sentences,
            seed,
            density,
            len_dist,
            classes,
            vocab,
            scheme,
        } => {
            let mut config = SyntheticConfig {
                sentence_count: sentences,
                seed,
                entity_density: density,
                vocab_size: vocab,
                classes: classes
                    .split(',')
                    .filter(|c| !c.is_empty())
                    .map(str::to_string)
                    .collect(),
                ..SyntheticConfig::default()
            };
            if let Some(spec) = len_dist {
                config.length_distribution = parse_len_dist(&spec)?;
            }
            let corpus = generate_synthetic(&config)?;
            emit(&out, &write_conll(&corpus, scheme), stdout)?;
        }
        Command::Train {
            scheme,
            train: path,
            model,
            epochs,
            seed,
            in_scheme,
            no_shuffle,
        } => {
            let text = read(&path)?;
            let corpus = parse_conll(
                &text,
                None,
                in_scheme.unwrap_or(scheme),
                DecodeMode::Strict,
            )
            .with_context(|| format!("in {}", path.display()))?;
            let config = TrainConfig {
                epochs,
                seed,
                shuffle: !no_shuffle,
            };
            let trained = train(&corpus, scheme, &config)?;
            fs::write(&model, trained.to_text())
                .with_context(|| format!("cannot write {}", model.display()))?;
        }
        Command::Tag { model, io } => {
            let model = TaggerModel::from_text(&read(&model)?)
                .with_context(|| format!("in {}", model.display()))?;
            let tokens = parse_tokens(&read(&io.input)?)
                .with_context(|| format!("in {}", io.input.display()))?;
            let corpus: Corpus = tokens
                .into_iter()
                .map(|t| crate::corpus::Sentence::new(t, Vec::new()))
                .collect::<Result<_, _>>()?;
            let tags = tag_corpus(&model, &corpus);
            let out = write_tagged(
                corpus
                    .sentences()
                    .iter()
                    .zip(&tags)
                    .map(|(s, t)| (s.tokens(), t)),
            );
            emit(&io.out, &out, stdout)?;
        }
        Command::Eval {
            gold,
            pred,
            scheme,
            gold_scheme,
            pred_scheme,
            by_length,
            tsv,
            name,
        } => {
            let gold_corpus = parse_conll(
                &read(&gold)?,
                None,
                gold_scheme.unwrap_or(scheme),
                DecodeMode::Strict,
            )
            .with_context(|| format!("in {}", gold.display()))?;
            let pred_scheme = pred_scheme.unwrap_or(scheme);
            let pred_spans = read_predictions(&pred, pred_scheme)?;
            check_alignment(&gold_corpus, &pred_spans, &pred)?;
            let spans: Vec<_> = pred_spans.into_iter().map(|(_, s)| s).collect();
            let report = evaluate(&gold_corpus.span_sets(), &spans)?;
            let mut comparison = Comparison::new();
            comparison.push(
                name.unwrap_or_else(|| pred_scheme.display_name().to_string()),
                report,
            );
            let style = if tsv { TableStyle::Tsv } else { TableStyle::Plain };
            stdout.write_all(comparison.render(style, by_length).as_bytes())?;
        }
        Command::Ensemble {
            preds,
            out,
            threshold,
        } => {
            let mut systems = Vec::with_capacity(preds.len());
            let mut reference: Option<Vec<(Vec<crate::corpus::Token>, usize)>> = None;
            for (path, scheme) in &preds {
                let parsed = read_predictions(path, *scheme)?;
                let shape: Vec<usize> = parsed.iter().map(|(t, _)| t.len()).collect();
                match &reference {
                    None => {
                        reference = Some(
                            parsed
                                .iter()
                                .map(|(t, _)| (t.clone(), t.len()))
                                .collect(),
                        )
                    }
                    Some(r) => {
                        let expected: Vec<usize> = r.iter().map(|(_, n)| *n).collect();
                        if expected != shape {
                            bail!(
                                "{} is not aligned with {}",
                                path.display(),
                                preds[0].0.display()
                            );
                        }
                    }
                }
                systems.push(parsed.into_iter().map(|(_, s)| s).collect::<Vec<_>>());
            }
            let voted = majority_vote(&systems, threshold)?;
            let reference = reference.unwrap_or_default();
            let encoded = reference
                .iter()
                .zip(&voted)
                .map(|((tokens, len), spans)| encode(spans, *len, Scheme::Iob2).map(|t| (tokens, t)))
                .collect::<Result<Vec<_>, _>>()?;
            let text = write_tagged(encoded.iter().map(|(tokens, t)| (tokens.as_slice(), t)));
            emit(&out, &text, stdout)?;
        }
        Command::DemoTable1 => {
            stdout.write_all(render_table1().as_bytes())?;
        }
    }
    Ok(0)
}

type Decoded = (Vec<crate::corpus::Token>, Vec<crate::corpus::EntitySpan>);

/// Reads a prediction file and decodes it leniently.
fn read_predictions(path: &Path, scheme: Scheme) -> Result<Vec<Decoded>> {
    let sentences = parse_tagged(&read(path)?, None, scheme)
        .with_context(|| format!("in {}", path.display()))?;
    sentences
        .into_iter()
        .map(|s| {
            let spans = decode(&s.tags, DecodeMode::Lenient)?;
            Ok((s.tokens, spans))
        })
        .collect()
}

fn check_alignment(gold: &Corpus, pred: &[Decoded], path: &Path) -> Result<()> {
    if gold.len() != pred.len() {
        bail!(
            "{} has {} sentences, gold has {}",
            path.display(),
            pred.len(),
            gold.len()
        );
    }
    for (i, (g, (tokens, _))) in gold.sentences().iter().zip(pred).enumerate() {
        if g.len() != tokens.len() {
            bail!(
                "{}: sentence {} has {} tokens, gold has {}",
                path.display(),
                i,
                tokens.len(),
                g.len()
            );
        }
    }
    Ok(())
}
