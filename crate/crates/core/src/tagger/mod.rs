//! Averaged structured perceptron with scheme-constrained Viterbi decoding.
//!
//! The tagger is deliberately simple: sparse orthographic and window
//! features, one weight per `(feature, label)` and per label bigram, and hard
//! legality constraints from [`crate::schemes::legal_transitions`]. Only the
//! segment representation changes between experiments.

mod features;
mod model;
mod viterbi;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

pub use features::{extract_features, word_shape, FeatureVector};
pub use model::TaggerModel;
pub use viterbi::viterbi_decode;

use crate::corpus::Corpus;
use crate::schemes::{encode, Scheme, SchemeError, TagSequence};

#[derive(Debug, Error, PartialEq)]
pub enum TaggerError {
    #[error("cannot train on an empty corpus")]
    EmptyCorpus,
    #[error("epochs must be at least 1")]
    ZeroEpochs,
    #[error("label `{0}` is not in the model's inventory")]
    UnknownLabel(String),
    #[error("transition {0} -> {1} is illegal for this scheme")]
    IllegalTransition(String, String),
    #[error("model line {line}: {message}")]
    Format { line: usize, message: String },
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrainConfig {
    pub epochs: usize,
    pub seed: u64,
    pub shuffle: bool,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            epochs: 5,
            seed: 0,
            shuffle: true,
        }
    }
}

/// Trains a model for `scheme` on the gold spans of `corpus`.
///
/// Each sentence is decoded with the current weights; on a mistake the gold
/// emission and transition features gain +1 and the predicted ones lose 1.
/// The returned weights are averaged over every step. Shuffling, when
/// enabled, draws from a generator seeded with `config.seed`, so training is
/// fully deterministic.
pub fn train(
    corpus: &Corpus,
    scheme: Scheme,
    config: &TrainConfig,
) -> Result<TaggerModel, TaggerError> {
    if corpus.is_empty() {
        return Err(TaggerError::EmptyCorpus);
    }
    if config.epochs == 0 {
        return Err(TaggerError::ZeroEpochs);
    }

    let mut model = TaggerModel::new(
        scheme,
        corpus.class_inventory().iter().map(String::as_str),
    );
    let mut instances = Vec::with_capacity(corpus.len());
    for sentence in corpus.sentences() {
        let tokens = sentence.tokens();
        let rows: Vec<Vec<usize>> = (0..tokens.len())
            .map(|i| {
                extract_features(tokens, i)
                    .keys()
                    .iter()
                    .map(|k| model.intern_feature(k))
                    .collect()
            })
            .collect();
        let gold: Vec<usize> = encode(sentence.spans(), sentence.len(), scheme)?
            .labels()
            .iter()
            .map(|l| model.legality().index_of(l).expect("gold label in inventory"))
            .collect();
        instances.push((rows, gold));
    }

    let width = model.labels().len();
    let mut emission_acc = vec![0.0; model.emission_weights().len()];
    let mut transition_acc = vec![0.0; width * width];
    let mut step = 1.0_f64;
    let mut order: Vec<usize> = (0..instances.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    for _ in 0..config.epochs {
        if config.shuffle {
            order.shuffle(&mut rng);
        }
        for &i in &order {
            let (rows, gold) = &instances[i];
            let scores = model.scores_for_rows(rows);
            let pred = viterbi::best_path(&scores, model.transition_weights(), model.legality());
            if &pred != gold {
                let emission = model.emission_weights_mut();
                for (t, features) in rows.iter().enumerate() {
                    if gold[t] == pred[t] {
                        continue;
                    }
                    for &f in features {
                        for (label, delta) in [(gold[t], 1.0), (pred[t], -1.0)] {
                            emission[f * width + label] += delta;
                            emission_acc[f * width + label] += step * delta;
                        }
                    }
                }
                let transition = model.transition_weights_mut();
                for t in 1..gold.len() {
                    let g = gold[t - 1] * width + gold[t];
                    let p = pred[t - 1] * width + pred[t];
                    if g == p {
                        continue;
                    }
                    for (cell, delta) in [(g, 1.0), (p, -1.0)] {
                        transition[cell] += delta;
                        transition_acc[cell] += step * delta;
                    }
                }
            }
            step += 1.0;
        }
    }

    for (w, acc) in model.emission_weights_mut().iter_mut().zip(&emission_acc) {
        *w -= acc / step;
    }
    for (w, acc) in model.transition_weights_mut().iter_mut().zip(&transition_acc) {
        *w -= acc / step;
    }
    Ok(model)
}

/// Decodes every sentence, in parallel, preserving input order.
pub fn tag_corpus(model: &TaggerModel, corpus: &Corpus) -> Vec<TagSequence> {
    corpus
        .sentences()
        .par_iter()
        .map(|s| viterbi_decode(model, s.tokens()))
        .collect()
}
