use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use super::{extract_features, TaggerError};
use crate::corpus::Token;
use crate::schemes::{legal_transitions, LegalityTable, Scheme, TagLabel};

const MAGIC: &str = "srtk-model";
const VERSION: &str = "v1";

/// Emission and transition weights over a scheme's label inventory, plus
/// the legality table used for constrained decoding.
#[derive(Debug, Clone, PartialEq)]
pub struct TaggerModel {
    scheme: Scheme,
    classes: BTreeSet<String>,
    legality: LegalityTable,
    feature_index: HashMap<String, usize>,
    feature_names: Vec<String>,
    /// Row per feature, one column per label.
    emission: Vec<f64>,
    /// `labels x labels`, row = previous label.
    transition: Vec<f64>,
}

impl TaggerModel {
    /// A model with every weight at zero.
    pub fn new<'a, I>(scheme: Scheme, classes: I) -> Self
    where
        I: IntoIterator<Item = &'a str>,
    {
        let classes: BTreeSet<String> = classes.into_iter().map(str::to_string).collect();
        let legality = legal_transitions(scheme, classes.iter().map(String::as_str));
        let labels = legality.len();
        TaggerModel {
            scheme,
            classes,
            legality,
            feature_index: HashMap::new(),
            feature_names: Vec::new(),
            emission: Vec::new(),
            transition: vec![0.0; labels * labels],
        }
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn classes(&self) -> &BTreeSet<String> {
        &self.classes
    }

    /// Label inventory in label order.
    pub fn labels(&self) -> &[TagLabel] {
        self.legality.labels()
    }

    pub fn legality(&self) -> &LegalityTable {
        &self.legality
    }

    pub fn feature_count(&self) -> usize {
        self.feature_names.len()
    }

    fn label_index(&self, label: &TagLabel) -> Result<usize, TaggerError> {
        self.legality
            .index_of(label)
            .ok_or_else(|| TaggerError::UnknownLabel(label.to_string()))
    }

    pub(crate) fn feature_row(&self, feature: &str) -> Option<usize> {
        self.feature_index.get(feature).copied()
    }

    pub(crate) fn intern_feature(&mut self, feature: &str) -> usize {
        if let Some(row) = self.feature_row(feature) {
            return row;
        }
        let row = self.feature_names.len();
        self.feature_index.insert(feature.to_string(), row);
        self.feature_names.push(feature.to_string());
        self.emission.resize(self.emission.len() + self.labels().len(), 0.0);
        row
    }

    pub fn emission(&self, feature: &str, label: &TagLabel) -> f64 {
        match (self.feature_row(feature), self.legality.index_of(label)) {
            (Some(row), Some(col)) => self.emission[row * self.labels().len() + col],
            _ => 0.0,
        }
    }

    pub fn transition(&self, prev: &TagLabel, next: &TagLabel) -> f64 {
        match (self.legality.index_of(prev), self.legality.index_of(next)) {
            (Some(p), Some(n)) => self.transition[p * self.labels().len() + n],
            _ => 0.0,
        }
    }

    pub fn set_emission(
        &mut self,
        feature: &str,
        label: &TagLabel,
        weight: f64,
    ) -> Result<(), TaggerError> {
        let col = self.label_index(label)?;
        let row = self.intern_feature(feature);
        let width = self.labels().len();
        self.emission[row * width + col] = weight;
        Ok(())
    }

    /// Fails for transitions the legality table forbids.
    pub fn set_transition(
        &mut self,
        prev: &TagLabel,
        next: &TagLabel,
        weight: f64,
    ) -> Result<(), TaggerError> {
        let p = self.label_index(prev)?;
        let n = self.label_index(next)?;
        if !self.legality.allowed_at(p, n) {
            return Err(TaggerError::IllegalTransition(
                prev.to_string(),
                next.to_string(),
            ));
        }
        let width = self.labels().len();
        self.transition[p * width + n] = weight;
        Ok(())
    }

    pub(crate) fn emission_weights_mut(&mut self) -> &mut [f64] {
        &mut self.emission
    }

    pub(crate) fn emission_weights(&self) -> &[f64] {
        &self.emission
    }

    pub(crate) fn transition_weights_mut(&mut self) -> &mut [f64] {
        &mut self.transition
    }

    pub(crate) fn transition_weights(&self) -> &[f64] {
        &self.transition
    }

    /// Per-token emission scores, `tokens x labels`, row major. Features the
    /// model has never seen contribute nothing.
    pub(crate) fn emission_scores(&self, tokens: &[Token]) -> Vec<f64> {
        let rows: Vec<Vec<usize>> = (0..tokens.len())
            .map(|i| {
                extract_features(tokens, i)
                    .keys()
                    .iter()
                    .filter_map(|k| self.feature_row(k))
                    .collect()
            })
            .collect();
        self.scores_for_rows(&rows)
    }

    pub(crate) fn scores_for_rows(&self, rows: &[Vec<usize>]) -> Vec<f64> {
        let width = self.labels().len();
        let mut scores = vec![0.0; rows.len() * width];
        for (t, features) in rows.iter().enumerate() {
            let out = &mut scores[t * width..(t + 1) * width];
            for &row in features {
                let weights = &self.emission[row * width..(row + 1) * width];
                for (o, w) in out.iter_mut().zip(weights) {
                    *o += w;
                }
            }
        }
        scores
    }

    /// Serializes to the versioned text format: a `srtk-model v1 <scheme>`
    /// header, one `C<TAB>class` line per class, then every nonzero weight as
    /// `E<TAB>feature<TAB>label<TAB>weight` or `T<TAB>label<TAB>label<TAB>weight`
    /// with 17 significant digits. Output is sorted, so equal models give
    /// equal bytes.
    pub fn to_text(&self) -> String {
        let labels = self.labels();
        let width = labels.len();
        let mut out = format!("{MAGIC} {VERSION} {}\n", self.scheme.id());
        for class in &self.classes {
            let _ = writeln!(out, "C\t{class}");
        }
        let mut rows: Vec<(&str, usize)> = self
            .feature_names
            .iter()
            .enumerate()
            .map(|(i, name)| (name.as_str(), i))
            .collect();
        rows.sort();
        for (name, row) in rows {
            for (col, label) in labels.iter().enumerate() {
                let w = self.emission[row * width + col];
                if w != 0.0 {
                    let _ = writeln!(out, "E\t{name}\t{label}\t{w:.16e}");
                }
            }
        }
        for (p, prev) in labels.iter().enumerate() {
            for (n, next) in labels.iter().enumerate() {
                let w = self.transition[p * width + n];
                if w != 0.0 {
                    let _ = writeln!(out, "T\t{prev}\t{next}\t{w:.16e}");
                }
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, TaggerError> {
        let mut lines = text.lines().enumerate();
        let header = lines
            .next()
            .map(|(_, l)| l)
            .ok_or_else(|| TaggerError::Format { line: 1, message: "empty model".into() })?;
        let scheme = match header.split(' ').collect::<Vec<_>>()[..] {
            [MAGIC, VERSION, scheme] => scheme.parse::<Scheme>().map_err(|e| TaggerError::Format {
                line: 1,
                message: e.to_string(),
            })?,
            _ => {
                return Err(TaggerError::Format {
                    line: 1,
                    message: format!("expected `{MAGIC} {VERSION} <scheme>`, found `{header}`"),
                })
            }
        };

        let mut classes = Vec::new();
        let mut weights = Vec::new();
        for (i, line) in lines {
            let line_no = i + 1;
            let bad = |message: String| TaggerError::Format {
                line: line_no,
                message,
            };
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            match fields[..] {
                ["C", class] => classes.push(class),
                ["E" | "T", _, _, w] => {
                    let w: f64 = w.parse().map_err(|_| bad(format!("bad weight `{w}`")))?;
                    weights.push((line_no, fields, w));
                }
                _ => return Err(bad(format!("unrecognized record `{line}`"))),
            }
        }

        let mut model = TaggerModel::new(scheme, classes);
        for (line, fields, w) in weights {
            let at_line = |e: TaggerError| TaggerError::Format {
                line,
                message: e.to_string(),
            };
            let label = |s: &str| {
                s.parse::<TagLabel>().map_err(|e| TaggerError::Format {
                    line,
                    message: e.to_string(),
                })
            };
            match fields[0] {
                "E" => model
                    .set_emission(fields[1], &label(fields[2])?, w)
                    .map_err(at_line)?,
                _ => model
                    .set_transition(&label(fields[1])?, &label(fields[2])?, w)
                    .map_err(at_line)?,
            }
        }
        Ok(model)
    }
}
