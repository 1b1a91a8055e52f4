use super::{Corpus, CorpusError, Sentence, Token};
use crate::schemes::{decode, encode, validate, DecodeMode, Scheme, TagLabel, TagSequence};

/// A sentence as read from disk: tokens plus the raw tag column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedSentence {
    pub tokens: Vec<Token>,
    pub tags: TagSequence,
    /// 1-based source line of each token.
    pub lines: Vec<usize>,
}

/// Document separators that carry no tokens. JNLPBA files put
/// `###MEDLINE:<id>` between abstracts; CoNLL-2003 uses `-DOCSTART-`.
fn is_document_marker(line: &str) -> bool {
    line.starts_with("###MEDLINE:") || line.starts_with("-DOCSTART-")
}

/// Splits a document into sentences of `(line number, columns)`.
fn sentence_blocks(text: &str) -> Vec<Vec<(usize, Vec<&str>)>> {
    let mut blocks = Vec::new();
    let mut current = Vec::new();
    for (i, raw) in text.split('\n').enumerate() {
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() || is_document_marker(line) {
            if !current.is_empty() {
                blocks.push(std::mem::take(&mut current));
            }
            continue;
        }
        current.push((i + 1, line.split_whitespace().collect()));
    }
    if !current.is_empty() {
        blocks.push(current);
    }
    blocks
}

/// Reads tokens and raw tags without decoding them.
///
/// The tag column defaults to the last column. Every token line must have as
/// many columns as the first one, and at least two.
pub fn parse_tagged(
    text: &str,
    tag_column: Option<usize>,
    scheme: Scheme,
) -> Result<Vec<TaggedSentence>, CorpusError> {
    let mut expected: Option<usize> = None;
    let mut sentences = Vec::new();

    for block in sentence_blocks(text) {
        let mut tokens = Vec::with_capacity(block.len());
        let mut labels = Vec::with_capacity(block.len());
        let mut lines = Vec::with_capacity(block.len());
        for (line, columns) in block {
            let found = columns.len();
            let width = *expected.get_or_insert(found.max(2));
            if found != width {
                return Err(CorpusError::ColumnCount {
                    line,
                    expected: width,
                    found,
                });
            }
            let column = tag_column.unwrap_or(found - 1);
            if column == 0 || column >= found {
                return Err(CorpusError::TagColumn {
                    line,
                    column,
                    found,
                });
            }
            let label: TagLabel = columns[column]
                .parse()
                .map_err(|source| CorpusError::Tag { line, source })?;
            if !scheme.allows(label.position()) {
                return Err(CorpusError::Tag {
                    line,
                    source: crate::schemes::SchemeError::TagSet {
                        scheme,
                        index: labels.len(),
                        label: label.to_string(),
                    },
                });
            }
            tokens.push(Token::new(columns[0])?);
            labels.push(label);
            lines.push(line);
        }
        let tags = TagSequence::new(scheme, labels)?;
        sentences.push(TaggedSentence {
            tokens,
            tags,
            lines,
        });
    }
    Ok(sentences)
}

/// Reads only the token column, ignoring any other columns.
pub fn parse_tokens(text: &str) -> Result<Vec<Vec<Token>>, CorpusError> {
    sentence_blocks(text)
        .into_iter()
        .map(|block| {
            block
                .into_iter()
                .map(|(_, columns)| Token::new(columns[0]))
                .collect()
        })
        .collect()
}

/// Parses a CoNLL-style document and decodes its tag column into spans.
///
/// In strict mode the first sequence the scheme's encoder could not have
/// produced is reported with its sentence, token index and line.
pub fn parse_conll(
    text: &str,
    tag_column: Option<usize>,
    scheme: Scheme,
    mode: DecodeMode,
) -> Result<Corpus, CorpusError> {
    let mut sentences = Vec::new();
    for (index, tagged) in parse_tagged(text, tag_column, scheme)?
        .into_iter()
        .enumerate()
    {
        if mode == DecodeMode::Strict {
            if let Some(violation) = validate(&tagged.tags).into_iter().next() {
                return Err(CorpusError::Validation {
                    line: tagged.lines[violation.token_index],
                    sentence: index,
                    token_index: violation.token_index,
                    violation,
                });
            }
        }
        let spans = decode(&tagged.tags, DecodeMode::Lenient)?;
        sentences.push(Sentence::new(tagged.tokens, spans)?);
    }
    Ok(Corpus::new(sentences))
}

/// Writes `token<TAB>tag` lines with a blank line after every sentence.
pub fn write_tagged<'a, I>(sentences: I) -> String
where
    I: IntoIterator<Item = (&'a [Token], &'a TagSequence)>,
{
    let mut out = String::new();
    for (tokens, tags) in sentences {
        for (token, label) in tokens.iter().zip(tags.labels()) {
            out.push_str(token.as_str());
            out.push('\t');
            out.push_str(&label.to_string());
            out.push('\n');
        }
        out.push('\n');
    }
    out
}

/// Encodes every sentence under `scheme` and writes it in CoNLL layout.
pub fn write_conll(corpus: &Corpus, scheme: Scheme) -> String {
    let encoded: Vec<TagSequence> = corpus
        .sentences()
        .iter()
        .map(|s| encode(s.spans(), s.len(), scheme).expect("sentence spans are valid"))
        .collect();
    write_tagged(
        corpus
            .sentences()
            .iter()
            .zip(&encoded)
            .map(|(s, tags)| (s.tokens(), tags)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::EntitySpan;
    use crate::schemes::SchemeError;

    #[test]
    fn all_outside_sentence() {
        let corpus = parse_conll("He O\nran O\n\n", None, Scheme::Iob2, DecodeMode::Strict).unwrap();
        assert_eq!(corpus.len(), 1);
        assert_eq!(corpus.sentences()[0].len(), 2);
        assert_eq!(corpus.span_count(), 0);
    }

    #[test]
    fn foreign_tag_letter_is_a_tag_set_error() {
        let err = parse_conll("CD28 Q-protein\n", None, Scheme::Iob2, DecodeMode::Strict)
            .unwrap_err();
        assert!(matches!(err, CorpusError::Tag { line: 1, .. }), "{err:?}");
        let err = parse_conll("CD28 S-protein\n", None, Scheme::Iob2, DecodeMode::Strict)
            .unwrap_err();
        assert!(matches!(
            err,
            CorpusError::Tag {
                source: SchemeError::TagSet { .. },
                ..
            }
        ));
    }

    #[test]
    fn column_count_mismatch_reports_line() {
        let err = parse_conll("a NN O\nb O\n", None, Scheme::Iob2, DecodeMode::Strict)
            .unwrap_err();
        assert_eq!(
            err,
            CorpusError::ColumnCount {
                line: 2,
                expected: 3,
                found: 2
            }
        );
    }

    #[test]
    fn strict_violation_names_token() {
        let err = parse_conll("x O\ny I-p\n", None, Scheme::Iob2, DecodeMode::Strict)
            .unwrap_err();
        match err {
            CorpusError::Validation {
                line, token_index, ..
            } => {
                assert_eq!(line, 2);
                assert_eq!(token_index, 1);
            }
            other => panic!("unexpected {other:?}"),
        }
        let lenient = parse_conll("x O\ny I-p\n", None, Scheme::Iob2, DecodeMode::Lenient).unwrap();
        assert_eq!(lenient.sentences()[0].spans(), &[EntitySpan::new(1, 1, "p")]);
    }

    #[test]
    fn crlf_markers_and_missing_trailing_blank() {
        let text = "###MEDLINE:123\r\n\r\nIL-2\tB-protein\r\ngene\tI-protein\r\n\r\nok\tO";
        let corpus = parse_conll(text, None, Scheme::Iob2, DecodeMode::Strict).unwrap();
        assert_eq!(corpus.len(), 2);
        assert_eq!(corpus.sentences()[0].spans(), &[EntitySpan::new(0, 1, "protein")]);
        assert_eq!(corpus.sentences()[1].tokens()[0].as_str(), "ok");
    }

    #[test]
    fn explicit_tag_column() {
        let text = "IL-2 B-protein NN\ngene I-protein NN\n";
        let corpus = parse_conll(text, Some(1), Scheme::Iob2, DecodeMode::Strict).unwrap();
        assert_eq!(corpus.span_count(), 1);
        assert!(matches!(
            parse_conll(text, Some(3), Scheme::Iob2, DecodeMode::Strict),
            Err(CorpusError::TagColumn { .. })
        ));
    }

    #[test]
    fn empty_corpus_writes_nothing() {
        assert_eq!(write_conll(&Corpus::default(), Scheme::Iobes), "");
        assert!(parse_conll("", None, Scheme::Iobes, DecodeMode::Strict)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn tokens_only_reader() {
        let sentences = parse_tokens("a\nb\n\nc X Y\n").unwrap();
        assert_eq!(sentences.len(), 2);
        assert_eq!(sentences[1][0].as_str(), "c");
    }
}
