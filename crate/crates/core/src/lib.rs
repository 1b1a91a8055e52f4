//! Segment representation toolkit.
//!
//! Entity spans are the scheme-independent ground truth. Every tagging scheme
//! (`io`, `iob1`, `iob2`, `ioe1`, `ioe2`, `iobe`, `iobes`, `frobes`) is a
//! codec between span sets and per-token labels. On top of the codecs sit a
//! CoNLL reader/writer, a synthetic corpus generator, an averaged perceptron
//! tagger with scheme-constrained Viterbi decoding, exact-match evaluation
//! and span-level majority voting.
//!
//! ```
//! use srtk::{decode, encode, DecodeMode, EntitySpan, Scheme};
//!
//! let spans = vec![EntitySpan::new(0, 5, "protein")];
//! let tags = encode(&spans, 6, Scheme::Frobes).unwrap();
//! assert_eq!(tags.to_string(), "B-protein F-protein F-protein R-protein R-protein E-protein");
//! assert_eq!(decode(&tags, DecodeMode::Strict).unwrap(), spans);
//! ```

pub mod cli;
pub mod corpus;
pub mod demo;
pub mod ensemble;
pub mod eval;
pub mod schemes;
pub mod tagger;

pub use corpus::{
    corpus_stats, generate_synthetic, parse_conll, write_conll, Corpus, CorpusError, EntitySpan,
    LengthBucket, LengthHistogram, Sentence, SyntheticConfig, Token,
};
pub use ensemble::{majority_vote, resolve_overlaps, EnsembleError, VotedSpan};
pub use eval::{
    compare_schemes, evaluate, render_table, Comparison, EvalCounts, EvalError, EvalReport,
    LengthClass, Metrics, TableStyle,
};
pub use schemes::{
    convert, decode, encode, frobes_counts, legal_transitions, validate, DecodeMode,
    LegalityTable, Position, Scheme, SchemeError, TagLabel, TagSequence, Violation,
    ViolationKind,
};
pub use tagger::{
    extract_features, tag_corpus, train, viterbi_decode, FeatureVector, TaggerError, TaggerModel,
    TrainConfig,
};
