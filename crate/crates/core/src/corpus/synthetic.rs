use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Corpus, CorpusError, EntitySpan, Sentence, Token};

/// Parameters for [`generate_synthetic`].
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticConfig {
    pub sentence_count: usize,
    /// Number of distinct filler (non-entity) words.
    pub vocab_size: usize,
    pub classes: Vec<String>,
    /// Probability of entity lengths 1 through 6.
    pub length_distribution: [f64; 6],
    /// Probability that any free slot in a sentence starts an entity.
    pub entity_density: f64,
    pub seed: u64,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        SyntheticConfig {
            sentence_count: 1000,
            vocab_size: 500,
            classes: vec!["protein".into(), "dna".into(), "cell_type".into()],
            length_distribution: [0.35, 0.30, 0.15, 0.10, 0.06, 0.04],
            entity_density: 0.2,
            seed: 7,
        }
    }
}

impl SyntheticConfig {
    fn check(&self) -> Result<(), CorpusError> {
        let sum: f64 = self.length_distribution.iter().sum();
        if self
            .length_distribution
            .iter()
            .any(|p| !p.is_finite() || *p < 0.0)
            || (sum - 1.0).abs() > 1e-9
        {
            return Err(CorpusError::Config(format!(
                "length distribution must be non-negative and sum to 1, got {:?}",
                self.length_distribution
            )));
        }
        if !(0.0..=1.0).contains(&self.entity_density) {
            return Err(CorpusError::Config(format!(
                "entity density must lie in [0, 1], got {}",
                self.entity_density
            )));
        }
        if self.vocab_size == 0 {
            return Err(CorpusError::Config("vocab size must be positive".into()));
        }
        if self.entity_density > 0.0 && self.classes.is_empty() {
            return Err(CorpusError::Config("at least one class is required".into()));
        }
        if self.classes.iter().any(|c| Token::new(c.as_str()).is_err()) {
            return Err(CorpusError::Config(
                "class labels must be non-empty and free of whitespace".into(),
            ));
        }
        Ok(())
    }
}

const CONSONANTS: &[u8] = b"bdfgklmnprstvz";
const VOWELS: &[u8] = b"aeiou";
const ENDING_SUFFIXES: &[&str] = &["ase", "in", "or", "ite", "um", "ol"];
const ENDINGS_PER_CLASS: usize = 3;
const SENTENCE_LEN: std::ops::RangeInclusive<usize> = 5..=20;

fn syllable(k: usize) -> [char; 2] {
    let k = k % (CONSONANTS.len() * VOWELS.len());
    [
        CONSONANTS[k / VOWELS.len()] as char,
        VOWELS[k % VOWELS.len()] as char,
    ]
}

/// Consonant-vowel word with at least `min` syllables, unique per `k`.
fn cv_word(mut k: usize, min: usize) -> String {
    let base = CONSONANTS.len() * VOWELS.len();
    let mut out = String::new();
    let mut emitted = 0;
    while emitted < min || k > 0 {
        out.extend(syllable(k % base));
        k /= base;
        emitted += 1;
    }
    out
}

/// Lexicon shared by every class: fillers are lowercase CV words, entity
/// bodies are capitalized with a digit, single-word entities are class
/// specific acronyms, and each class owns a few fixed two-word endings whose
/// suffixes never occur in fillers.
struct Lexicon {
    fillers: Vec<String>,
    bodies: Vec<String>,
    singles: Vec<Vec<String>>,
    endings: Vec<Vec<[String; 2]>>,
}

impl Lexicon {
    fn new(config: &SyntheticConfig) -> Self {
        let fillers = (0..config.vocab_size).map(|k| cv_word(k, 2)).collect();
        let body_count = (config.vocab_size / 4).max(8);
        let bodies = (0..body_count)
            .map(|k| {
                let word = cv_word(k, 2);
                let mut chars = word.chars();
                let first = chars.next().expect("non-empty").to_ascii_uppercase();
                format!("{first}{}{}", chars.as_str(), k % 10)
            })
            .collect();
        let classes = config.classes.len();
        let singles = (0..classes)
            .map(|c| {
                let a = (b'A' + (c % 26) as u8) as char;
                let b = (b'A' + ((c / 26) % 26) as u8) as char;
                (0..(body_count / 2).max(4))
                    .map(|k| format!("{a}{b}{}", k + 1))
                    .collect()
            })
            .collect();
        let endings = (0..classes)
            .map(|c| {
                let suffix = match c / ENDING_SUFFIXES.len() {
                    0 => ENDING_SUFFIXES[c].to_string(),
                    round => format!("{}{round}", ENDING_SUFFIXES[c % ENDING_SUFFIXES.len()]),
                };
                (0..ENDINGS_PER_CLASS)
                    .map(|j| {
                        let seed = c * ENDINGS_PER_CLASS + j;
                        [
                            format!("{}{suffix}", cv_word(2 * seed, 2)),
                            format!("{}{suffix}", cv_word(2 * seed + 1, 2)),
                        ]
                    })
                    .collect()
            })
            .collect();
        Lexicon {
            fillers,
            bodies,
            singles,
            endings,
        }
    }
}

fn sample_length(rng: &mut ChaCha8Rng, distribution: &[f64; 6]) -> usize {
    let draw: f64 = rng.gen();
    let mut acc = 0.0;
    for (i, p) in distribution.iter().enumerate() {
        acc += p;
        if draw < acc {
            return i + 1;
        }
    }
    // Rounding slack: fall back to the longest length with mass.
    distribution.iter().rposition(|p| *p > 0.0).unwrap_or(0) + 1
}

/// Generates a deterministic synthetic corpus.
///
/// Entities never touch each other (a filler word always follows one), and
/// every entity of length >= 2 ends with one of its class's fixed endings.
pub fn generate_synthetic(config: &SyntheticConfig) -> Result<Corpus, CorpusError> {
    config.check()?;
    let lexicon = Lexicon::new(config);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut sentences = Vec::with_capacity(config.sentence_count);

    for _ in 0..config.sentence_count {
        let target = rng.gen_range(SENTENCE_LEN);
        let mut words: Vec<&str> = Vec::with_capacity(target + 8);
        let mut spans = Vec::new();
        while words.len() < target {
            if rng.gen::<f64>() < config.entity_density {
                let class = rng.gen_range(0..config.classes.len());
                let len = sample_length(&mut rng, &config.length_distribution);
                let start = words.len();
                if len == 1 {
                    let singles = &lexicon.singles[class];
                    words.push(&singles[rng.gen_range(0..singles.len())]);
                } else {
                    let endings = &lexicon.endings[class];
                    let ending = &endings[rng.gen_range(0..endings.len())];
                    let body = if len == 2 { 1 } else { len - 2 };
                    for _ in 0..body {
                        words.push(&lexicon.bodies[rng.gen_range(0..lexicon.bodies.len())]);
                    }
                    if len > 2 {
                        words.push(&ending[0]);
                    }
                    words.push(&ending[1]);
                }
                spans.push(EntitySpan::new(
                    start,
                    words.len() - 1,
                    config.classes[class].as_str(),
                ));
            }
            words.push(&lexicon.fillers[rng.gen_range(0..lexicon.fillers.len())]);
        }
        let tokens = words
            .into_iter()
            .map(Token::new)
            .collect::<Result<Vec<_>, _>>()?;
        sentences.push(Sentence::new(tokens, spans)?);
    }
    Ok(Corpus::new(sentences))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{corpus_stats, write_conll, LengthBucket};
    use crate::schemes::Scheme;

    #[test]
    fn same_seed_same_bytes() {
        let config = SyntheticConfig {
            sentence_count: 200,
            ..SyntheticConfig::default()
        };
        let a = write_conll(&generate_synthetic(&config).unwrap(), Scheme::Iob2);
        let b = write_conll(&generate_synthetic(&config).unwrap(), Scheme::Iob2);
        assert_eq!(a, b);
        let other = SyntheticConfig { seed: 8, ..config };
        assert_ne!(a, write_conll(&generate_synthetic(&other).unwrap(), Scheme::Iob2));
    }

    #[test]
    fn zero_density_has_no_spans() {
        let config = SyntheticConfig {
            entity_density: 0.0,
            sentence_count: 100,
            ..SyntheticConfig::default()
        };
        let corpus = generate_synthetic(&config).unwrap();
        assert_eq!(corpus.len(), 100);
        assert_eq!(corpus.span_count(), 0);
    }

    #[test]
    fn invalid_configs() {
        let bad_sum = SyntheticConfig {
            length_distribution: [0.5, 0.2, 0.0, 0.0, 0.0, 0.0],
            ..SyntheticConfig::default()
        };
        assert!(matches!(generate_synthetic(&bad_sum), Err(CorpusError::Config(_))));
        let bad_density = SyntheticConfig {
            entity_density: 1.5,
            ..SyntheticConfig::default()
        };
        assert!(generate_synthetic(&bad_density).is_err());
        let negative = SyntheticConfig {
            length_distribution: [1.5, -0.5, 0.0, 0.0, 0.0, 0.0],
            ..SyntheticConfig::default()
        };
        assert!(generate_synthetic(&negative).is_err());
    }

    #[test]
    fn concentrated_length_distribution() {
        let config = SyntheticConfig {
            length_distribution: [1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
            entity_density: 0.5,
            sentence_count: 2500,
            ..SyntheticConfig::default()
        };
        let stats = corpus_stats(&generate_synthetic(&config).unwrap());
        assert!(stats.total() >= 10_000, "only {} entities", stats.total());
        assert!(stats.fraction(LengthBucket::One) >= 0.99);
    }

    #[test]
    fn long_entities_end_with_class_endings() {
        let corpus = generate_synthetic(&SyntheticConfig::default()).unwrap();
        for sentence in corpus.sentences() {
            for span in sentence.spans().iter().filter(|s| s.len() >= 2) {
                let last = sentence.tokens()[span.end].as_str();
                let class = SyntheticConfig::default()
                    .classes
                    .iter()
                    .position(|c| *c == span.class)
                    .unwrap();
                assert!(last.ends_with(ENDING_SUFFIXES[class]), "{last} / {}", span.class);
            }
        }
    }

    #[test]
    fn generated_words_are_distinct_across_roles() {
        let lexicon = Lexicon::new(&SyntheticConfig::default());
        let fillers: std::collections::HashSet<&String> = lexicon.fillers.iter().collect();
        assert_eq!(fillers.len(), lexicon.fillers.len());
        for ending in lexicon.endings.iter().flatten().flatten() {
            assert!(!fillers.contains(ending));
        }
        for body in &lexicon.bodies {
            assert!(!fillers.contains(body));
        }
    }
}
