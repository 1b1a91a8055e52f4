use super::{validate, DecodeMode, Position, Scheme, SchemeError, TagLabel, TagSequence};
use crate::corpus::EntitySpan;

/// Number of front (`F`) and rear (`R`) tags inside a FROBES entity of
/// length `n`.
///
/// The interior `n - 2` tokens are split so that the front half is never
/// shorter than the rear half: `f = ceil((n-2)/2)`, `r = floor((n-2)/2)`.
pub fn frobes_counts(n: usize) -> Result<(usize, usize), SchemeError> {
    if n < 3 {
        return Err(SchemeError::Domain(n));
    }
    let interior = n - 2;
    Ok((interior.div_ceil(2), interior / 2))
}

/// Encodes a set of disjoint spans as one label per token.
pub fn encode(
    spans: &[EntitySpan],
    sentence_len: usize,
    scheme: Scheme,
) -> Result<TagSequence, SchemeError> {
    let spans = checked_spans(spans, sentence_len)?;
    let mut labels = vec![TagLabel::outside(); sentence_len];

    for (i, span) in spans.iter().enumerate() {
        let after_same = i > 0 && {
            let prev = spans[i - 1];
            prev.end + 1 == span.start && prev.class == span.class
        };
        let before_same = spans
            .get(i + 1)
            .is_some_and(|next| span.end + 1 == next.start && next.class == span.class);

        let n = span.len();
        let class = span.class.as_str();
        let mut put = |offset: usize, pos: Position| {
            labels[span.start + offset] = TagLabel::entity(pos, class);
        };
        for offset in 0..n {
            put(offset, Position::I);
        }
        match scheme {
            Scheme::Io => {}
            Scheme::Iob1 => {
                if after_same {
                    put(0, Position::B);
                }
            }
            Scheme::Iob2 => put(0, Position::B),
            Scheme::Ioe1 => {
                if before_same {
                    put(n - 1, Position::E);
                }
            }
            Scheme::Ioe2 => put(n - 1, Position::E),
            Scheme::Iobe | Scheme::Iobes if n == 1 => put(
                0,
                if scheme == Scheme::Iobe {
                    Position::B
                } else {
                    Position::S
                },
            ),
            Scheme::Iobe | Scheme::Iobes => {
                put(0, Position::B);
                put(n - 1, Position::E);
            }
            Scheme::Frobes => match n {
                1 => put(0, Position::S),
                _ => {
                    put(0, Position::B);
                    put(n - 1, Position::E);
                    if n >= 3 {
                        let (front, _) = frobes_counts(n)?;
                        for offset in 1..n - 1 {
                            put(
                                offset,
                                if offset <= front {
                                    Position::F
                                } else {
                                    Position::R
                                },
                            );
                        }
                    }
                }
            },
        }
    }
    Ok(TagSequence { scheme, labels })
}

/// Decodes labels back to spans.
///
/// Strict mode accepts only sequences [`encode`] can produce. Lenient mode
/// repairs anything by run-splitting: a segment opens at `B`/`S`, on a class
/// change, or after `O` or a closing label; it closes at `E`/`S`, on a class
/// change, at `O`, or at the end of the sentence.
pub fn decode(tags: &TagSequence, mode: DecodeMode) -> Result<Vec<EntitySpan>, SchemeError> {
    if mode == DecodeMode::Strict {
        let violations = validate(tags);
        if !violations.is_empty() {
            return Err(SchemeError::Invalid(violations));
        }
    }
    Ok(lenient_spans(tags.labels()))
}

pub(crate) fn lenient_spans(labels: &[TagLabel]) -> Vec<EntitySpan> {
    let mut spans = Vec::new();
    let mut open: Option<(usize, &str)> = None;

    for (i, label) in labels.iter().enumerate() {
        let Some(class) = label.class() else {
            if let Some((start, class)) = open.take() {
                spans.push(EntitySpan::new(start, i - 1, class));
            }
            continue;
        };
        let opens = label.position().opens() || open.is_none_or(|(_, c)| c != class);
        if opens {
            if let Some((start, c)) = open.take() {
                spans.push(EntitySpan::new(start, i - 1, c));
            }
            open = Some((i, class));
        }
        if label.position().closes() {
            let (start, c) = open.take().expect("segment is open");
            spans.push(EntitySpan::new(start, i, c));
        }
    }
    if let Some((start, class)) = open {
        spans.push(EntitySpan::new(start, labels.len() - 1, class));
    }
    spans
}

/// Re-encodes a tag sequence under another scheme via its spans.
pub fn convert(
    tags: &TagSequence,
    target: Scheme,
    mode: DecodeMode,
) -> Result<TagSequence, SchemeError> {
    let spans = decode(tags, mode)?;
    encode(&spans, tags.len(), target)
}

fn checked_spans(spans: &[EntitySpan], len: usize) -> Result<Vec<&EntitySpan>, SchemeError> {
    let mut sorted: Vec<&EntitySpan> = spans.iter().collect();
    sorted.sort();
    for span in &sorted {
        if span.start > span.end || span.end >= len {
            return Err(SchemeError::SpanOutOfBounds {
                span: (*span).clone(),
                len,
            });
        }
    }
    for pair in sorted.windows(2) {
        if pair[1].start <= pair[0].end {
            return Err(SchemeError::Overlap(pair[0].clone(), pair[1].clone()));
        }
    }
    Ok(sorted)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn span(start: usize, end: usize, class: &str) -> EntitySpan {
        EntitySpan::new(start, end, class)
    }

    fn tags(scheme: Scheme, text: &str) -> TagSequence {
        TagSequence::parse(scheme, text).unwrap()
    }

    #[test]
    fn frobes_counts_small_cases() {
        assert_eq!(frobes_counts(6).unwrap(), (2, 2));
        assert_eq!(frobes_counts(5).unwrap(), (2, 1));
        assert_eq!(frobes_counts(3).unwrap(), (1, 0));
        assert_eq!(frobes_counts(2), Err(SchemeError::Domain(2)));
        assert_eq!(frobes_counts(0), Err(SchemeError::Domain(0)));
    }

    #[test]
    fn frobes_six_token_protein() {
        let encoded = encode(&[span(0, 5, "protein")], 6, Scheme::Frobes).unwrap();
        assert_eq!(
            encoded.to_string(),
            "B-protein F-protein F-protein R-protein R-protein E-protein"
        );
    }

    #[test]
    fn frobes_short_entities() {
        let encoded = encode(
            &[span(0, 0, "a"), span(2, 3, "a"), span(5, 7, "b")],
            8,
            Scheme::Frobes,
        )
        .unwrap();
        assert_eq!(encoded.to_string(), "S-a O B-a E-a O B-b F-b E-b");
    }

    #[test]
    fn iob1_and_ioe1_mark_only_same_class_boundaries() {
        let spans = [span(0, 1, "a"), span(2, 2, "a"), span(3, 3, "b")];
        let iob1 = encode(&spans, 4, Scheme::Iob1).unwrap();
        assert_eq!(iob1.to_string(), "I-a I-a B-a I-b");
        let ioe1 = encode(&spans, 4, Scheme::Ioe1).unwrap();
        assert_eq!(ioe1.to_string(), "I-a E-a I-a I-b");
    }

    #[test]
    fn iobe_uses_b_for_single_tokens() {
        let encoded = encode(&[span(0, 0, "a"), span(1, 2, "a")], 3, Scheme::Iobe).unwrap();
        assert_eq!(encoded.to_string(), "B-a B-a E-a");
    }

    #[test]
    fn overlapping_spans_are_rejected() {
        let err = encode(&[span(0, 2, "a"), span(2, 3, "b")], 5, Scheme::Iob2).unwrap_err();
        assert!(matches!(err, SchemeError::Overlap(..)));
        let err = encode(&[span(3, 5, "a")], 5, Scheme::Iob2).unwrap_err();
        assert!(matches!(err, SchemeError::SpanOutOfBounds { .. }));
    }

    #[test]
    fn encode_accepts_unsorted_input() {
        let a = encode(&[span(3, 3, "b"), span(0, 1, "a")], 4, Scheme::Iobes).unwrap();
        assert_eq!(a.to_string(), "B-a E-a O S-b");
    }

    #[test]
    fn lenient_decode_of_stray_front_tag() {
        let input = tags(Scheme::Frobes, "O F-protein O");
        assert_eq!(
            decode(&input, DecodeMode::Lenient).unwrap(),
            vec![span(1, 1, "protein")]
        );
        assert!(decode(&input, DecodeMode::Strict).is_err());
    }

    #[test]
    fn lenient_decode_splits_on_class_change_and_closers() {
        let input = tags(Scheme::Iobes, "I-a I-b E-b E-b S-a B-a");
        assert_eq!(
            decode(&input, DecodeMode::Lenient).unwrap(),
            vec![
                span(0, 0, "a"),
                span(1, 2, "b"),
                span(3, 3, "b"),
                span(4, 4, "a"),
                span(5, 5, "a"),
            ]
        );
    }

    #[test]
    fn io_merges_adjacent_same_class() {
        let encoded = encode(&[span(0, 0, "a"), span(1, 2, "a")], 3, Scheme::Io).unwrap();
        assert_eq!(
            decode(&encoded, DecodeMode::Strict).unwrap(),
            vec![span(0, 2, "a")]
        );
    }

    #[test]
    fn convert_all_outside_stays_outside() {
        for from in Scheme::ALL {
            for to in Scheme::ALL {
                let out = convert(&TagSequence::outside(from, 5), to, DecodeMode::Strict).unwrap();
                assert_eq!(out, TagSequence::outside(to, 5));
            }
        }
    }

    #[test]
    fn empty_sentence_round_trips() {
        for scheme in Scheme::ALL {
            let encoded = encode(&[], 0, scheme).unwrap();
            assert!(encoded.is_empty());
            assert!(decode(&encoded, DecodeMode::Strict).unwrap().is_empty());
        }
    }
}
