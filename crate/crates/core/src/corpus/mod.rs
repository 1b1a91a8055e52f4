//! Scheme-independent corpus representation, CoNLL I/O, statistics and
//! synthetic data generation.

mod conll;
mod stats;
mod synthetic;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub use conll::{parse_conll, parse_tagged, parse_tokens, write_conll, write_tagged, TaggedSentence};
pub use stats::{corpus_stats, LengthBucket, LengthHistogram};
pub use synthetic::{generate_synthetic, SyntheticConfig};

use crate::schemes::{SchemeError, Violation};

/// A single pre-tokenized word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Token(String);

impl Token {
    pub fn new(surface: impl Into<String>) -> Result<Self, CorpusError> {
        let surface = surface.into();
        if surface.is_empty() || surface.chars().any(char::is_whitespace) {
            return Err(CorpusError::InvalidToken(surface));
        }
        Ok(Token(surface))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A contiguous, inclusive token range carrying an entity class.
///
/// Ordering is by `(start, end, class)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EntitySpan {
    pub start: usize,
    pub end: usize,
    pub class: String,
}

impl EntitySpan {
    pub fn new(start: usize, end: usize, class: impl Into<String>) -> Self {
        EntitySpan {
            start,
            end,
            class: class.into(),
        }
    }

    /// Number of tokens covered.
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn overlaps(&self, other: &EntitySpan) -> bool {
        self.start <= other.end && other.start <= self.end
    }
}

impl fmt::Display for EntitySpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.start, self.end, self.class)
    }
}

/// Tokens plus a sorted set of pairwise-disjoint spans within bounds.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sentence {
    tokens: Vec<Token>,
    spans: Vec<EntitySpan>,
}

impl Sentence {
    pub fn new(tokens: Vec<Token>, mut spans: Vec<EntitySpan>) -> Result<Self, CorpusError> {
        spans.sort();
        for span in &spans {
            if span.start > span.end || span.end >= tokens.len() {
                return Err(CorpusError::Scheme(SchemeError::SpanOutOfBounds {
                    span: span.clone(),
                    len: tokens.len(),
                }));
            }
        }
        if let Some(pair) = spans.windows(2).find(|w| w[0].overlaps(&w[1])) {
            return Err(CorpusError::Scheme(SchemeError::Overlap(
                pair[0].clone(),
                pair[1].clone(),
            )));
        }
        Ok(Sentence { tokens, spans })
    }

    /// Convenience constructor from whitespace-separated words.
    pub fn from_words(text: &str, spans: Vec<EntitySpan>) -> Result<Self, CorpusError> {
        let tokens = text
            .split_whitespace()
            .map(Token::new)
            .collect::<Result<_, _>>()?;
        Sentence::new(tokens, spans)
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn spans(&self) -> &[EntitySpan] {
        &self.spans
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().map(Token::as_str)
    }
}

/// An ordered collection of sentences.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Corpus {
    sentences: Vec<Sentence>,
    classes: BTreeSet<String>,
}

impl Corpus {
    pub fn new(sentences: Vec<Sentence>) -> Self {
        let classes = sentences
            .iter()
            .flat_map(|s| s.spans.iter().map(|span| span.class.clone()))
            .collect();
        Corpus { sentences, classes }
    }

    pub fn sentences(&self) -> &[Sentence] {
        &self.sentences
    }

    /// Union of classes appearing in spans.
    pub fn class_inventory(&self) -> &BTreeSet<String> {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    pub fn span_count(&self) -> usize {
        self.sentences.iter().map(|s| s.spans.len()).sum()
    }

    /// Per-sentence span sets, in order.
    pub fn span_sets(&self) -> Vec<Vec<EntitySpan>> {
        self.sentences.iter().map(|s| s.spans.clone()).collect()
    }

    pub fn into_sentences(self) -> Vec<Sentence> {
        self.sentences
    }
}

impl FromIterator<Sentence> for Corpus {
    fn from_iter<T: IntoIterator<Item = Sentence>>(iter: T) -> Self {
        Corpus::new(iter.into_iter().collect())
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum CorpusError {
    #[error("token `{0}` is empty or contains whitespace")]
    InvalidToken(String),
    #[error("line {line}: expected {expected} columns, found {found}")]
    ColumnCount {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: tag column {column} is out of range for {found} columns")]
    TagColumn {
        line: usize,
        column: usize,
        found: usize,
    },
    #[error("line {line}: {source}")]
    Tag { line: usize, source: SchemeError },
    #[error("line {line}: token {token_index} of sentence {sentence}: {violation}")]
    Validation {
        line: usize,
        sentence: usize,
        token_index: usize,
        violation: Violation,
    },
    #[error("invalid synthetic config: {0}")]
    Config(String),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}
