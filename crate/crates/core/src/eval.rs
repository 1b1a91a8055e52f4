//! Exact-match entity scoring.
//!
//! A predicted span counts only if its start, end and class all equal a gold
//! span in the same sentence. Errors are bucketed by entity length: true
//! positives and false negatives by gold length, false positives by the
//! predicted length, so every error lands in exactly one bucket.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::iter::Sum;
use std::ops::{Add, AddAssign};

use thiserror::Error;

use crate::corpus::{Corpus, EntitySpan};
use crate::schemes::{decode, DecodeMode, Scheme, SchemeError, TagSequence};

#[derive(Debug, Error, PartialEq)]
pub enum EvalError {
    #[error("gold has {gold} sentences but predictions have {pred}")]
    SentenceCount { gold: usize, pred: usize },
    #[error("system `{system}`: sentence {sentence} has {pred} tags for {gold} tokens")]
    SentenceLength {
        system: String,
        sentence: usize,
        gold: usize,
        pred: usize,
    },
    #[error("system `{0}` is not a known scheme")]
    UnknownScheme(String),
    #[error("system `{key}` carries {found} tags")]
    SchemeMismatch { key: String, found: Scheme },
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error("tsv line {line}: {message}")]
    Tsv { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct EvalCounts {
    pub tp: usize,
    pub fp: usize,
    pub fn_: usize,
}

impl EvalCounts {
    pub fn new(tp: usize, fp: usize, fn_: usize) -> Self {
        EvalCounts { tp, fp, fn_ }
    }

    pub fn is_empty(&self) -> bool {
        self.tp + self.fp + self.fn_ == 0
    }

    pub fn metrics(&self) -> Metrics {
        Metrics::from_counts(*self)
    }
}

impl Add for EvalCounts {
    type Output = EvalCounts;

    fn add(self, rhs: Self) -> Self::Output {
        EvalCounts {
            tp: self.tp + rhs.tp,
            fp: self.fp + rhs.fp,
            fn_: self.fn_ + rhs.fn_,
        }
    }
}

impl AddAssign for EvalCounts {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sum for EvalCounts {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(EvalCounts::default(), Add::add)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Metrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl Metrics {
    /// `P = TP/(TP+FP)`, `R = TP/(TP+FN)`, `f1 = 2PR/(P+R)`; every 0/0 is 0.
    pub fn from_counts(counts: EvalCounts) -> Self {
        let ratio = |num: usize, den: usize| {
            if den == 0 {
                0.0
            } else {
                num as f64 / den as f64
            }
        };
        let precision = ratio(counts.tp, counts.tp + counts.fp);
        let recall = ratio(counts.tp, counts.tp + counts.fn_);
        let f1 = if precision + recall > 0.0 {
            2.0 * precision * recall / (precision + recall)
        } else {
            0.0
        };
        Metrics {
            precision,
            recall,
            f1,
        }
    }
}

/// Length buckets of the per-length report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LengthClass {
    One,
    Two,
    ThreeOrMore,
}

impl LengthClass {
    pub const ALL: [LengthClass; 3] = [LengthClass::One, LengthClass::Two, LengthClass::ThreeOrMore];

    pub fn of(len: usize) -> Self {
        match len {
            0 | 1 => LengthClass::One,
            2 => LengthClass::Two,
            _ => LengthClass::ThreeOrMore,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            LengthClass::One => "N = 1",
            LengthClass::Two => "N = 2",
            LengthClass::ThreeOrMore => "N >= 3",
        }
    }

    /// Compact key used in TSV section names.
    pub fn key(self) -> &'static str {
        match self {
            LengthClass::One => "n=1",
            LengthClass::Two => "n=2",
            LengthClass::ThreeOrMore => "n>=3",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EvalReport {
    overall: EvalCounts,
    per_length: BTreeMap<LengthClass, EvalCounts>,
    per_class: BTreeMap<String, EvalCounts>,
}

impl EvalReport {
    pub fn overall(&self) -> EvalCounts {
        self.overall
    }

    pub fn metrics(&self) -> Metrics {
        self.overall.metrics()
    }

    pub fn by_length(&self, bucket: LengthClass) -> EvalCounts {
        self.per_length.get(&bucket).copied().unwrap_or_default()
    }

    pub fn per_class(&self) -> &BTreeMap<String, EvalCounts> {
        &self.per_class
    }

    fn record(&mut self, span: &EntitySpan, delta: EvalCounts) {
        self.overall += delta;
        *self.per_length.entry(LengthClass::of(span.len())).or_default() += delta;
        *self.per_class.entry(span.class.clone()).or_default() += delta;
    }
}

/// Scores predicted span sets against gold, sentence by sentence.
pub fn evaluate(
    gold: &[Vec<EntitySpan>],
    pred: &[Vec<EntitySpan>],
) -> Result<EvalReport, EvalError> {
    if gold.len() != pred.len() {
        return Err(EvalError::SentenceCount {
            gold: gold.len(),
            pred: pred.len(),
        });
    }
    let mut report = EvalReport::default();
    for (gold, pred) in gold.iter().zip(pred) {
        let gold: BTreeSet<&EntitySpan> = gold.iter().collect();
        let pred: BTreeSet<&EntitySpan> = pred.iter().collect();
        for span in &pred {
            if gold.contains(span) {
                report.record(span, EvalCounts::new(1, 0, 0));
            } else {
                report.record(span, EvalCounts::new(0, 1, 0));
            }
        }
        for span in gold.difference(&pred) {
            report.record(span, EvalCounts::new(0, 0, 1));
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TableStyle {
    #[default]
    Plain,
    Tsv,
}

/// Named reports rendered side by side, one column per system.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Comparison {
    systems: Vec<(String, EvalReport)>,
}

impl Comparison {
    pub fn new() -> Self {
        Comparison::default()
    }

    pub fn push(&mut self, name: impl Into<String>, report: EvalReport) {
        self.systems.push((name.into(), report));
    }

    pub fn systems(&self) -> &[(String, EvalReport)] {
        &self.systems
    }

    pub fn report(&self, name: &str) -> Option<&EvalReport> {
        self.systems
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, report)| report)
    }

    /// Renders overall R/P/f1, optionally f1 per entity length, then f1 per
    /// class. Rows whose counts are empty for every system are omitted, so
    /// an empty comparison renders as its header alone.
    pub fn render(&self, style: TableStyle, by_length: bool) -> String {
        let mut rows: Vec<Row> = Vec::new();
        if self.systems.iter().any(|(_, r)| !r.overall.is_empty()) {
            let metrics: Vec<Metrics> = self.systems.iter().map(|(_, r)| r.metrics()).collect();
            rows.push(Row::new("overall", "R", metrics.iter().map(|m| m.recall)));
            rows.push(Row::new("overall", "P", metrics.iter().map(|m| m.precision)));
            rows.push(Row::new("overall", "f1", metrics.iter().map(|m| m.f1)));
        }
        if by_length {
            for bucket in LengthClass::ALL {
                let counts: Vec<EvalCounts> =
                    self.systems.iter().map(|(_, r)| r.by_length(bucket)).collect();
                if counts.iter().all(EvalCounts::is_empty) {
                    continue;
                }
                let section = format!("length:{}", bucket.key());
                rows.extend(Row::triple(&section, &counts, bucket.label()));
            }
        }
        let classes: BTreeSet<&String> = self
            .systems
            .iter()
            .flat_map(|(_, r)| r.per_class.keys())
            .collect();
        for class in classes {
            let counts: Vec<EvalCounts> = self
                .systems
                .iter()
                .map(|(_, r)| r.per_class.get(class).copied().unwrap_or_default())
                .collect();
            rows.extend(Row::triple(&format!("class:{class}"), &counts, class));
        }

        match style {
            TableStyle::Tsv => self.render_tsv(&rows),
            TableStyle::Plain => self.render_plain(&rows),
        }
    }

    fn render_tsv(&self, rows: &[Row]) -> String {
        let mut out = String::from("section\trow\tsystem\tvalue\n");
        for row in rows {
            for ((system, _), value) in self.systems.iter().zip(&row.values) {
                let _ = writeln!(
                    out,
                    "{}\t{}\t{}\t{}",
                    row.section,
                    row.row,
                    system,
                    percent(*value)
                );
            }
        }
        out
    }

    fn render_plain(&self, rows: &[Row]) -> String {
        let rows: Vec<&Row> = rows.iter().filter(|r| r.plain).collect();
        let first = rows
            .iter()
            .map(|r| r.title.len())
            .chain(std::iter::once("Measure".len()))
            .max()
            .unwrap_or(0)
            + 2;
        let width = self
            .systems
            .iter()
            .map(|(n, _)| n.len())
            .max()
            .unwrap_or(0)
            .max(6)
            + 2;
        let mut out = String::new();
        let _ = write!(out, "{:<first$}", "Measure");
        for (name, _) in &self.systems {
            let _ = write!(out, "{name:>width$}");
        }
        out = out.trim_end().to_string();
        out.push('\n');

        let mut last_group = "";
        for row in rows {
            let group = row.section.split(':').next().unwrap_or("");
            if group != last_group {
                if !last_group.is_empty() {
                    out.push('\n');
                }
                match group {
                    "length" => {
                        let _ = writeln!(out, "f1 by tokens per entity");
                    }
                    "class" => {
                        let _ = writeln!(out, "f1 by class");
                    }
                    _ => {}
                }
                last_group = group;
            }
            let _ = write!(out, "{:<first$}", row.title);
            for value in &row.values {
                let _ = write!(out, "{:>width$}", percent(*value));
            }
            out.push('\n');
        }
        out
    }
}

struct Row {
    section: String,
    row: String,
    title: String,
    values: Vec<f64>,
    /// Shown in the plain layout.
    plain: bool,
}

impl Row {
    fn new(section: &str, row: &str, values: impl Iterator<Item = f64>) -> Self {
        let title = match row {
            "f1" => "f1-measure".to_string(),
            other => other.to_string(),
        };
        Row {
            section: section.to_string(),
            row: row.to_string(),
            title,
            values: values.collect(),
            plain: true,
        }
    }

    /// R, P and f1 rows for a section. Only the f1 row is shown in the plain
    /// layout, titled by `title`.
    fn triple(section: &str, counts: &[EvalCounts], title: &str) -> Vec<Row> {
        let metrics: Vec<Metrics> = counts.iter().map(EvalCounts::metrics).collect();
        let mut rows = vec![
            Row::new(section, "R", metrics.iter().map(|m| m.recall)),
            Row::new(section, "P", metrics.iter().map(|m| m.precision)),
            Row::new(section, "f1", metrics.iter().map(|m| m.f1)),
        ];
        rows[2].title = title.to_string();
        rows.iter_mut().take(2).for_each(|r| r.plain = false);
        rows
    }
}

fn percent(value: f64) -> String {
    format!("{:.2}", 100.0 * value)
}

/// Renders one report as a single-system table named `system`.
pub fn render_table(report: &EvalReport, style: TableStyle) -> String {
    let mut comparison = Comparison::new();
    comparison.push("system", report.clone());
    comparison.render(style, true)
}

/// One data line of a TSV report.
#[derive(Debug, Clone, PartialEq)]
pub struct TsvRow {
    pub section: String,
    pub row: String,
    pub system: String,
    /// Percentage, as printed.
    pub value: f64,
}

/// Reads back a TSV report produced by [`Comparison::render`].
pub fn parse_tsv(text: &str) -> Result<Vec<TsvRow>, EvalError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, "section\trow\tsystem\tvalue")) => {}
        _ => {
            return Err(EvalError::Tsv {
                line: 1,
                message: "missing header".into(),
            })
        }
    }
    lines
        .filter(|(_, line)| !line.is_empty())
        .map(|(i, line)| {
            let fields: Vec<&str> = line.split('\t').collect();
            let [section, row, system, value] = fields[..] else {
                return Err(EvalError::Tsv {
                    line: i + 1,
                    message: format!("expected 4 fields, found {}", fields.len()),
                });
            };
            let value = value.parse().map_err(|_| EvalError::Tsv {
                line: i + 1,
                message: format!("bad value `{value}`"),
            })?;
            Ok(TsvRow {
                section: section.into(),
                row: row.into(),
                system: system.into(),
                value,
            })
        })
        .collect()
}

/// Decodes each system's tags and scores them against `gold`.
///
/// Keys are scheme identifiers; each system becomes a column named by the
/// scheme's display name, in input order.
pub fn compare_schemes(
    gold: &Corpus,
    predictions: &[(&str, &[TagSequence])],
    mode: DecodeMode,
) -> Result<Comparison, EvalError> {
    let gold_spans = gold.span_sets();
    let mut comparison = Comparison::new();
    for (key, tags) in predictions {
        let scheme: Scheme = key
            .parse()
            .map_err(|_| EvalError::UnknownScheme(key.to_string()))?;
        if tags.len() != gold.len() {
            return Err(EvalError::SentenceCount {
                gold: gold.len(),
                pred: tags.len(),
            });
        }
        let mut spans = Vec::with_capacity(tags.len());
        for (i, (sentence, seq)) in gold.sentences().iter().zip(tags.iter()).enumerate() {
            if seq.scheme() != scheme {
                return Err(EvalError::SchemeMismatch {
                    key: key.to_string(),
                    found: seq.scheme(),
                });
            }
            if seq.len() != sentence.len() {
                return Err(EvalError::SentenceLength {
                    system: key.to_string(),
                    sentence: i,
                    gold: sentence.len(),
                    pred: seq.len(),
                });
            }
            spans.push(decode(seq, mode)?);
        }
        comparison.push(scheme.display_name(), evaluate(&gold_spans, &spans)?);
    }
    Ok(comparison)
}
