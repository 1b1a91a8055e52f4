use std::collections::HashMap;

use super::codec::lenient_spans;
use super::{frobes_counts, Position, Scheme, TagLabel, TagSequence, Violation, ViolationKind};

/// Whether `label` may be the first label of a sentence.
pub(crate) fn start_legal(scheme: Scheme, label: &TagLabel) -> bool {
    use Position::*;
    let pos = label.position();
    if !scheme.allows(pos) {
        return false;
    }
    match scheme {
        Scheme::Io | Scheme::Ioe1 | Scheme::Ioe2 => true,
        Scheme::Iob1 => pos != B,
        Scheme::Iob2 | Scheme::Iobe => matches!(pos, O | B),
        Scheme::Iobes | Scheme::Frobes => matches!(pos, O | B | S),
    }
}

/// Whether `label` may be the last label of a sentence.
pub(crate) fn end_legal(scheme: Scheme, label: &TagLabel) -> bool {
    use Position::*;
    let pos = label.position();
    if !scheme.allows(pos) {
        return false;
    }
    match scheme {
        Scheme::Io | Scheme::Iob1 | Scheme::Iob2 => true,
        Scheme::Ioe1 => pos != E,
        Scheme::Ioe2 => matches!(pos, O | E),
        Scheme::Iobe => matches!(pos, O | B | E),
        Scheme::Iobes | Scheme::Frobes => matches!(pos, O | E | S),
    }
}

/// Whether `next` may immediately follow `prev`.
pub(crate) fn bigram_legal(scheme: Scheme, prev: &TagLabel, next: &TagLabel) -> bool {
    use Position::*;
    let (p, n) = (prev.position(), next.position());
    if !scheme.allows(p) || !scheme.allows(n) {
        return false;
    }
    let same = prev.same_class(next);
    match scheme {
        Scheme::Io => true,
        Scheme::Iob1 => n != B || same,
        Scheme::Iob2 => n != I || same,
        Scheme::Ioe1 => p != E || same,
        Scheme::Ioe2 => p != I || same,
        Scheme::Iobe | Scheme::Iobes => match n {
            I | E => matches!(p, B | I) && same,
            _ => !matches!(p, I) && !(p == B && scheme == Scheme::Iobes),
        },
        Scheme::Frobes => match n {
            F => matches!(p, B | F) && same,
            R => matches!(p, F | R) && same,
            E => matches!(p, B | F | R) && same,
            _ => matches!(p, O | E | S),
        },
    }
}

/// Sentence-boundary and bigram legality over a fixed label inventory.
///
/// Labels are indexed in label order (`O` is always index 0).
#[derive(Debug, Clone, PartialEq)]
pub struct LegalityTable {
    scheme: Scheme,
    labels: Vec<TagLabel>,
    index: HashMap<TagLabel, usize>,
    start: Vec<bool>,
    end: Vec<bool>,
    bigram: Vec<bool>,
}

impl LegalityTable {
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

    pub fn index_of(&self, label: &TagLabel) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn start_at(&self, label: usize) -> bool {
        self.start[label]
    }

    pub fn end_at(&self, label: usize) -> bool {
        self.end[label]
    }

    pub fn allowed_at(&self, prev: usize, next: usize) -> bool {
        self.bigram[prev * self.labels.len() + next]
    }

    pub fn can_start(&self, label: &TagLabel) -> bool {
        self.index_of(label).is_some_and(|i| self.start[i])
    }

    pub fn can_end(&self, label: &TagLabel) -> bool {
        self.index_of(label).is_some_and(|i| self.end[i])
    }

    pub fn allowed(&self, prev: &TagLabel, next: &TagLabel) -> bool {
        match (self.index_of(prev), self.index_of(next)) {
            (Some(p), Some(n)) => self.allowed_at(p, n),
            _ => false,
        }
    }
}

/// Builds the legality table for `scheme` over `classes`.
///
/// `(prev, next)` is legal iff some span configuration encodes to a sequence
/// containing `prev` immediately followed by `next`; the start and end sets
/// are defined the same way for sentence boundaries. First-order rules cannot
/// express the FROBES front/rear balance, which only [`validate`] checks.
pub fn legal_transitions<'a, I>(scheme: Scheme, classes: I) -> LegalityTable
where
    I: IntoIterator<Item = &'a str>,
{
    let labels = scheme.labels(classes);
    let index = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.clone(), i))
        .collect();
    let start = labels.iter().map(|l| start_legal(scheme, l)).collect();
    let end = labels.iter().map(|l| end_legal(scheme, l)).collect();
    let bigram = labels
        .iter()
        .flat_map(|p| labels.iter().map(move |n| bigram_legal(scheme, p, n)))
        .collect();
    LegalityTable {
        scheme,
        labels,
        index,
        start,
        end,
        bigram,
    }
}

/// Lists every reason `tags` is not a valid encoding, ordered by token.
///
/// The list is empty exactly when strict decoding succeeds.
pub fn validate(tags: &TagSequence) -> Vec<Violation> {
    let scheme = tags.scheme();
    let labels = tags.labels();
    let mut violations = Vec::new();

    for (i, label) in labels.iter().enumerate() {
        if i == 0 {
            if !start_legal(scheme, label) {
                violations.push(Violation {
                    token_index: 0,
                    kind: ViolationKind::IllegalStart,
                    description: format!("{scheme} sequence cannot begin with {label}"),
                });
            }
        } else {
            let prev = &labels[i - 1];
            if !bigram_legal(scheme, prev, label) {
                // A non-O label that would open a fresh segment is a bad
                // start; anything else breaks an entity already in progress.
                let opens_segment = !label.is_outside()
                    && (prev.is_outside()
                        || prev.position().closes()
                        || label.position().opens()
                        || !prev.same_class(label));
                let kind = if opens_segment {
                    ViolationKind::IllegalStart
                } else {
                    ViolationKind::IllegalTransition
                };
                let description = if opens_segment {
                    format!("{label} cannot open an entity after {prev}")
                } else {
                    format!("{label} cannot follow {prev}")
                };
                violations.push(Violation {
                    token_index: i,
                    kind,
                    description,
                });
            }
        }
    }
    if let Some(last) = labels.last() {
        if !end_legal(scheme, last) {
            violations.push(Violation {
                token_index: labels.len() - 1,
                kind: ViolationKind::IllegalEnd,
                description: format!("{scheme} sequence cannot end with {last}"),
            });
        }
    }

    if scheme == Scheme::Frobes {
        for span in lenient_spans(labels) {
            let n = span.len();
            let clean = (span.start + 1..=span.end).all(|i| {
                violations
                    .iter()
                    .all(|v| v.token_index != i || v.kind == ViolationKind::IllegalEnd)
            });
            if n < 3
                || !clean
                || labels[span.start].position() != Position::B
                || labels[span.end].position() != Position::E
            {
                continue;
            }
            let interior = &labels[span.start + 1..span.end];
            let front = interior
                .iter()
                .filter(|l| l.position() == Position::F)
                .count();
            let rear = interior
                .iter()
                .filter(|l| l.position() == Position::R)
                .count();
            let expected = frobes_counts(n).expect("n >= 3");
            if (front, rear) != expected {
                violations.push(Violation {
                    token_index: span.start,
                    kind: ViolationKind::CountImbalance,
                    description: format!(
                        "entity of {n} tokens has {front} F / {rear} R, expected {} F / {} R",
                        expected.0, expected.1
                    ),
                });
            }
        }
    }

    violations.sort_by_key(|v| v.token_index);
    violations
}
