use super::TaggerModel;
use crate::schemes::{LegalityTable, TagSequence};
use crate::corpus::Token;

/// Highest-scoring legal label path for precomputed emission scores.
///
/// Scores are accumulated backwards (best completion from each position), so
/// the forward read-out can take the lowest-indexed label among exact ties at
/// every step. That yields the lexicographically smallest optimal path in
/// label order.
pub(crate) fn best_path(emissions: &[f64], transitions: &[f64], legality: &LegalityTable) -> Vec<usize> {
    let width = legality.len();
    if width == 0 || emissions.is_empty() {
        return Vec::new();
    }
    let len = emissions.len() / width;
    let mut suffix = vec![f64::NEG_INFINITY; len * width];

    for y in 0..width {
        if legality.end_at(y) {
            suffix[(len - 1) * width + y] = emissions[(len - 1) * width + y];
        }
    }
    for t in (0..len - 1).rev() {
        for y in 0..width {
            let best = continuation(y, t + 1, &suffix, transitions, legality).1;
            if best > f64::NEG_INFINITY {
                suffix[t * width + y] = emissions[t * width + y] + best;
            }
        }
    }

    let mut path = Vec::with_capacity(len);
    let mut current = (0..width)
        .filter(|&y| legality.start_at(y))
        .fold((usize::MAX, f64::NEG_INFINITY), |acc, y| {
            if suffix[y] > acc.1 {
                (y, suffix[y])
            } else {
                acc
            }
        })
        .0;
    path.push(current);
    for t in 1..len {
        current = continuation(current, t, &suffix, transitions, legality).0;
        path.push(current);
    }
    path
}

/// Best `(next label, score)` reachable from `prev` into position `t`.
fn continuation(
    prev: usize,
    t: usize,
    suffix: &[f64],
    transitions: &[f64],
    legality: &LegalityTable,
) -> (usize, f64) {
    let width = legality.len();
    let mut best = (usize::MAX, f64::NEG_INFINITY);
    for next in 0..width {
        if !legality.allowed_at(prev, next) {
            continue;
        }
        let tail = suffix[t * width + next];
        if tail == f64::NEG_INFINITY {
            continue;
        }
        let score = transitions[prev * width + next] + tail;
        if score > best.1 {
            best = (next, score);
        }
    }
    best
}

/// Decodes a sentence under the model's legality constraints.
///
/// Ties are broken toward the lexicographically smaller label sequence, with
/// `O` ordered first; a model with all-zero weights therefore tags every
/// token `O`.
pub fn viterbi_decode(model: &TaggerModel, tokens: &[Token]) -> TagSequence {
    let emissions = model.emission_scores(tokens);
    let path = best_path(&emissions, model.transition_weights(), model.legality());
    let labels = path
        .into_iter()
        .map(|i| model.labels()[i].clone())
        .collect();
    TagSequence::new(model.scheme(), labels).expect("model labels belong to its scheme")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schemes::{Scheme, TagLabel};

    fn tokens(text: &str) -> Vec<Token> {
        text.split_whitespace().map(|w| Token::new(w).unwrap()).collect()
    }

    #[test]
    fn zero_model_tags_everything_outside() {
        for scheme in Scheme::ALL {
            let model = TaggerModel::new(scheme, ["a", "b"]);
            let out = viterbi_decode(&model, &tokens("x y z w"));
            assert_eq!(out, TagSequence::outside(scheme, 4));
        }
    }

    #[test]
    fn dominant_emission() {
        let mut model = TaggerModel::new(Scheme::Frobes, ["protein"]);
        model
            .set_emission("w0=CD28", &TagLabel::entity(crate::schemes::Position::S, "protein"), 10.0)
            .unwrap();
        let out = viterbi_decode(&model, &tokens("molecule CD28 binds"));
        assert_eq!(out.to_string(), "O S-protein O");
    }

    #[test]
    fn constraints_override_emissions() {
        // R is the strongest emission but FROBES cannot open an entity with R.
        let mut model = TaggerModel::new(Scheme::Frobes, ["p"]);
        let r = "R-p".parse::<TagLabel>().unwrap();
        model.set_emission("w0=x", &r, 5.0).unwrap();
        let out = viterbi_decode(&model, &tokens("x"));
        assert_eq!(out.to_string(), "O");
    }

    #[test]
    fn empty_sentence() {
        let model = TaggerModel::new(Scheme::Iob2, ["a"]);
        assert!(viterbi_decode(&model, &[]).is_empty());
    }
}
