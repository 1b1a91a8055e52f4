//! Segment representation schemes and their span codecs.
//!
//! A scheme maps a set of disjoint [`EntitySpan`]s onto one [`TagLabel`] per
//! token. All schemes except `io` are lossless; `io` cannot separate two
//! adjacent entities of the same class and merges them on decode.

mod codec;
mod legality;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use codec::{convert, decode, encode, frobes_counts};
pub use legality::{legal_transitions, validate, LegalityTable};

use crate::corpus::EntitySpan;

/// The positional part of a tag.
///
/// Declaration order is the label order used for deterministic tie-breaking:
/// `O` sorts before every entity position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Position {
    O,
    B,
    I,
    F,
    R,
    E,
    S,
}

impl Position {
    pub fn letter(self) -> char {
        match self {
            Position::O => 'O',
            Position::B => 'B',
            Position::I => 'I',
            Position::F => 'F',
            Position::R => 'R',
            Position::E => 'E',
            Position::S => 'S',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Some(match c {
            'O' => Position::O,
            'B' => Position::B,
            'I' => Position::I,
            'F' => Position::F,
            'R' => Position::R,
            'E' => Position::E,
            'S' => Position::S,
            _ => return None,
        })
    }

    /// True for positions that always start a new entity.
    pub(crate) fn opens(self) -> bool {
        matches!(self, Position::B | Position::S)
    }

    /// True for positions that always finish the current entity.
    pub(crate) fn closes(self) -> bool {
        matches!(self, Position::E | Position::S)
    }
}

/// One of the eight supported segment representations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Scheme {
    Io,
    Iob1,
    Iob2,
    Ioe1,
    Ioe2,
    Iobe,
    Iobes,
    Frobes,
}

impl Scheme {
    pub const ALL: [Scheme; 8] = [
        Scheme::Io,
        Scheme::Iob1,
        Scheme::Iob2,
        Scheme::Ioe1,
        Scheme::Ioe2,
        Scheme::Iobe,
        Scheme::Iobes,
        Scheme::Frobes,
    ];

    /// Lowercase identifier used on the command line and in model headers.
    pub fn id(self) -> &'static str {
        match self {
            Scheme::Io => "io",
            Scheme::Iob1 => "iob1",
            Scheme::Iob2 => "iob2",
            Scheme::Ioe1 => "ioe1",
            Scheme::Ioe2 => "ioe2",
            Scheme::Iobe => "iobe",
            Scheme::Iobes => "iobes",
            Scheme::Frobes => "frobes",
        }
    }

    /// Conventional uppercase name, as used in report headers.
    pub fn display_name(self) -> &'static str {
        match self {
            Scheme::Io => "IO",
            Scheme::Iob1 => "IOB1",
            Scheme::Iob2 => "IOB2",
            Scheme::Ioe1 => "IOE1",
            Scheme::Ioe2 => "IOE2",
            Scheme::Iobe => "IOBE",
            Scheme::Iobes => "IOBES",
            Scheme::Frobes => "FROBES",
        }
    }

    /// Positions the scheme may emit, in label order.
    pub fn tag_set(self) -> &'static [Position] {
        use Position::*;
        match self {
            Scheme::Io => &[O, I],
            Scheme::Iob1 | Scheme::Iob2 => &[O, B, I],
            Scheme::Ioe1 | Scheme::Ioe2 => &[O, I, E],
            Scheme::Iobe => &[O, B, I, E],
            Scheme::Iobes => &[O, B, I, E, S],
            Scheme::Frobes => &[O, B, F, R, E, S],
        }
    }

    pub fn allows(self, position: Position) -> bool {
        self.tag_set().contains(&position)
    }

    /// Whether encode followed by strict decode reproduces every span set.
    pub fn is_lossless(self) -> bool {
        self != Scheme::Io
    }

    /// Every label the scheme can emit over the given classes, sorted in
    /// label order.
    pub fn labels<'a, I>(self, classes: I) -> Vec<TagLabel>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut labels = vec![TagLabel::outside()];
        for class in classes {
            for &pos in self.tag_set() {
                if pos != Position::O {
                    labels.push(TagLabel::entity(pos, class));
                }
            }
        }
        labels.sort();
        labels.dedup();
        labels
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Scheme {
    type Err = SchemeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scheme::ALL
            .into_iter()
            .find(|scheme| scheme.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| SchemeError::UnknownScheme(s.to_string()))
    }
}

/// A positional tag, optionally paired with an entity class.
///
/// The class is absent exactly when the position is `O`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TagLabel {
    position: Position,
    class: Option<String>,
}

impl TagLabel {
    pub fn outside() -> Self {
        TagLabel {
            position: Position::O,
            class: None,
        }
    }

    /// Builds an entity label.
    ///
    /// # Panics
    ///
    /// Panics if `position` is `O`; use [`TagLabel::outside`] instead.
    pub fn entity(position: Position, class: impl Into<String>) -> Self {
        assert!(position != Position::O, "entity label cannot use position O");
        TagLabel {
            position,
            class: Some(class.into()),
        }
    }

    pub fn position(&self) -> Position {
        self.position
    }

    pub fn class(&self) -> Option<&str> {
        self.class.as_deref()
    }

    pub fn is_outside(&self) -> bool {
        self.position == Position::O
    }

    pub(crate) fn same_class(&self, other: &TagLabel) -> bool {
        self.class.is_some() && self.class == other.class
    }
}

impl Ord for TagLabel {
    // O first, then class-major, then position.
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.class, &other.class) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) => a
                .as_bytes()
                .cmp(b.as_bytes())
                .then(self.position.cmp(&other.position)),
        }
    }
}

impl PartialOrd for TagLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TagLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.class {
            None => f.write_str("O"),
            Some(class) => write!(f, "{}-{}", self.position.letter(), class),
        }
    }
}

impl FromStr for TagLabel {
    type Err = SchemeError;

    /// Parses `O` or `<POS>-<class>`; the split happens at the first hyphen,
    /// so classes may themselves contain hyphens.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "O" {
            return Ok(TagLabel::outside());
        }
        let malformed = || SchemeError::MalformedLabel(s.to_string());
        let (pos, class) = s.split_once('-').ok_or_else(malformed)?;
        let mut chars = pos.chars();
        let position = match (chars.next(), chars.next()) {
            (Some(c), None) => Position::from_letter(c).ok_or_else(malformed)?,
            _ => return Err(malformed()),
        };
        if position == Position::O || class.is_empty() {
            return Err(malformed());
        }
        Ok(TagLabel::entity(position, class))
    }
}

/// Labels for one sentence under a known scheme.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TagSequence {
    scheme: Scheme,
    labels: Vec<TagLabel>,
}

impl TagSequence {
    /// Fails if any label's position is outside the scheme's tag set.
    pub fn new(scheme: Scheme, labels: Vec<TagLabel>) -> Result<Self, SchemeError> {
        if let Some((index, label)) = labels
            .iter()
            .enumerate()
            .find(|(_, l)| !scheme.allows(l.position()))
        {
            return Err(SchemeError::TagSet {
                scheme,
                index,
                label: label.to_string(),
            });
        }
        Ok(TagSequence { scheme, labels })
    }

    /// Parses whitespace-separated labels.
    pub fn parse(scheme: Scheme, text: &str) -> Result<Self, SchemeError> {
        let labels = text
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<TagLabel>, _>>()?;
        TagSequence::new(scheme, labels)
    }

    pub fn outside(scheme: Scheme, len: usize) -> Self {
        TagSequence {
            scheme,
            labels: vec![TagLabel::outside(); len],
        }
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn labels(&self) -> &[TagLabel] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn into_labels(self) -> Vec<TagLabel> {
        self.labels
    }
}

impl fmt::Display for TagSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, label) in self.labels.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{label}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    IllegalStart,
    IllegalTransition,
    IllegalEnd,
    CountImbalance,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationKind::IllegalStart => "illegal-start",
            ViolationKind::IllegalTransition => "illegal-transition",
            ViolationKind::IllegalEnd => "illegal-end",
            ViolationKind::CountImbalance => "count-imbalance",
        }
    }
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A reason a tag sequence is not the encoding of any span set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub token_index: usize,
    pub kind: ViolationKind,
    pub description: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at token {}: {}",
            self.kind, self.token_index, self.description
        )
    }
}

/// How decoding treats sequences the encoder could not have produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DecodeMode {
    /// Reject with the list of violations.
    #[default]
    Strict,
    /// Repair by run-splitting; never fails.
    Lenient,
}

impl FromStr for DecodeMode {
    type Err = SchemeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" => Ok(DecodeMode::Strict),
            "lenient" => Ok(DecodeMode::Lenient),
            other => Err(SchemeError::UnknownMode(other.to_string())),
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum SchemeError {
    #[error("unknown scheme `{0}` (expected one of io, iob1, iob2, ioe1, ioe2, iobe, iobes, frobes)")]
    UnknownScheme(String),
    #[error("unknown decode mode `{0}` (expected strict or lenient)")]
    UnknownMode(String),
    #[error("malformed tag `{0}` (expected `O` or `<POS>-<class>`)")]
    MalformedLabel(String),
    #[error("tag `{label}` at token {index} is not in the {scheme} tag set")]
    TagSet {
        scheme: Scheme,
        index: usize,
        label: String,
    },
    #[error("span {span} lies outside a sentence of {len} tokens")]
    SpanOutOfBounds { span: EntitySpan, len: usize },
    #[error("spans {0} and {1} overlap")]
    Overlap(EntitySpan, EntitySpan),
    #[error("frobes front/rear counts are defined for entities of length >= 3, got {0}")]
    Domain(usize),
    #[error("invalid tag sequence: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
}
