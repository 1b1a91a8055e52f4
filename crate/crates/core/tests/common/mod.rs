//! Brute-force reference implementations shared by the integration tests.
//! Nothing here calls the code path it is used to check.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use srtk::{encode, extract_features, EntitySpan, Scheme, TagLabel, TaggerModel, Token};

pub const CLASSES: [&str; 4] = ["protein", "dna", "cell_type", "rna"];

/// Random disjoint spans over a sentence of `len` tokens. Adjacent spans of
/// the same class are common on purpose.
pub fn random_spans(rng: &mut ChaCha8Rng, len: usize, classes: usize) -> Vec<EntitySpan> {
    let mut spans = Vec::new();
    let mut i = 0;
    while i < len {
        if rng.gen_bool(0.45) {
            let max = (len - i).min(7);
            let n = rng.gen_range(1..=max);
            let class = CLASSES[rng.gen_range(0..classes)];
            spans.push(EntitySpan::new(i, i + n - 1, class));
            i += n;
        } else {
            i += 1;
        }
    }
    spans
}

/// Every flat span configuration over `len` tokens and the given classes.
pub fn all_span_sets(len: usize, classes: &[&str]) -> Vec<Vec<EntitySpan>> {
    fn go(
        pos: usize,
        len: usize,
        classes: &[&str],
        current: &mut Vec<EntitySpan>,
        out: &mut Vec<Vec<EntitySpan>>,
    ) {
        if pos == len {
            out.push(current.clone());
            return;
        }
        go(pos + 1, len, classes, current, out);
        for end in pos..len {
            for class in classes {
                current.push(EntitySpan::new(pos, end, *class));
                go(end + 1, len, classes, current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(0, len, classes, &mut Vec::new(), &mut out);
    out
}

/// Start, end and bigram sets observed over all encodings of all span
/// configurations on sentences up to `max_len` tokens.
pub struct ObservedLegality {
    pub start: BTreeSet<String>,
    pub end: BTreeSet<String>,
    pub bigram: BTreeSet<(String, String)>,
}

pub fn enumerate_legality(scheme: Scheme, classes: &[&str], max_len: usize) -> ObservedLegality {
    let mut observed = ObservedLegality {
        start: BTreeSet::new(),
        end: BTreeSet::new(),
        bigram: BTreeSet::new(),
    };
    for len in 1..=max_len {
        for spans in all_span_sets(len, classes) {
            let labels: Vec<String> = encode(&spans, len, scheme)
                .unwrap()
                .labels()
                .iter()
                .map(ToString::to_string)
                .collect();
            observed.start.insert(labels[0].clone());
            observed.end.insert(labels[len - 1].clone());
            for pair in labels.windows(2) {
                observed.bigram.insert((pair[0].clone(), pair[1].clone()));
            }
        }
    }
    observed
}

/// Path score recomputed from the public weight accessors.
pub fn path_score(model: &TaggerModel, tokens: &[Token], labels: &[TagLabel]) -> f64 {
    let mut score = 0.0;
    for (i, label) in labels.iter().enumerate() {
        for key in extract_features(tokens, i).keys() {
            score += model.emission(key, label);
        }
        if i > 0 {
            score += model.transition(&labels[i - 1], label);
        }
    }
    score
}

/// Exhaustive search over every legal label sequence. Returns the best score
/// and the lexicographically smallest sequence attaining it exactly.
pub fn brute_force_best(model: &TaggerModel, tokens: &[Token]) -> (f64, Vec<TagLabel>) {
    let table = model.legality();
    let labels = model.labels();
    let mut best: Option<(f64, Vec<TagLabel>)> = None;
    let mut current: Vec<TagLabel> = Vec::new();

    fn go(
        model: &TaggerModel,
        tokens: &[Token],
        labels: &[TagLabel],
        table: &srtk::LegalityTable,
        current: &mut Vec<TagLabel>,
        best: &mut Option<(f64, Vec<TagLabel>)>,
    ) {
        if current.len() == tokens.len() {
            if current.last().is_some_and(|l| !table.can_end(l)) {
                return;
            }
            let score = path_score(model, tokens, current);
            let better = match best {
                None => true,
                Some((s, seq)) => score > *s || (score == *s && current.as_slice() < seq.as_slice()),
            };
            if better {
                *best = Some((score, current.clone()));
            }
            return;
        }
        for label in labels {
            let ok = match current.last() {
                None => table.can_start(label),
                Some(prev) => table.allowed(prev, label),
            };
            if ok {
                current.push(label.clone());
                go(model, tokens, labels, table, current, best);
                current.pop();
            }
        }
    }
    go(model, tokens, labels, table, &mut current, &mut best);
    best.expect("the all-O path is always legal")
}

/// Exact-match counts by linear scanning: (tp, fp, fn).
pub fn naive_counts(gold: &[Vec<EntitySpan>], pred: &[Vec<EntitySpan>]) -> (usize, usize, usize) {
    let (mut tp, mut fp, mut fn_) = (0, 0, 0);
    for (g, p) in gold.iter().zip(pred) {
        let g = distinct(g);
        let p = distinct(p);
        for span in &p {
            if g.iter().any(|x| x == span) {
                tp += 1;
            } else {
                fp += 1;
            }
        }
        fn_ += g.iter().filter(|x| !p.contains(x)).count();
    }
    (tp, fp, fn_)
}

fn distinct(spans: &[EntitySpan]) -> Vec<EntitySpan> {
    let mut out: Vec<EntitySpan> = Vec::new();
    for s in spans {
        if !out.contains(s) {
            out.push(s.clone());
        }
    }
    out
}

/// Majority voting by enumerating candidates and counting membership, then
/// repeatedly taking the best remaining non-overlapping candidate.
pub fn naive_vote(systems: &[Vec<Vec<EntitySpan>>], threshold: usize) -> Vec<Vec<EntitySpan>> {
    let sentences = systems[0].len();
    (0..sentences)
        .map(|i| {
            let mut candidates: Vec<EntitySpan> = Vec::new();
            for system in systems {
                for span in &system[i] {
                    if !candidates.contains(span) {
                        candidates.push(span.clone());
                    }
                }
            }
            let mut remaining: Vec<(EntitySpan, usize)> = candidates
                .into_iter()
                .map(|c| {
                    let votes = systems.iter().filter(|s| s[i].contains(&c)).count();
                    (c, votes)
                })
                .filter(|(_, v)| *v >= threshold)
                .collect();
            let mut accepted: Vec<EntitySpan> = Vec::new();
            while !remaining.is_empty() {
                let mut best = 0;
                for j in 1..remaining.len() {
                    let (a, va) = &remaining[j];
                    let (b, vb) = &remaining[best];
                    let better = va > vb
                        || (va == vb && a.len() > b.len())
                        || (va == vb && a.len() == b.len() && a.start < b.start)
                        || (va == vb && a.len() == b.len() && a.start == b.start && a.class < b.class);
                    if better {
                        best = j;
                    }
                }
                let (span, _) = remaining.remove(best);
                if accepted.iter().all(|a| a.end < span.start || span.end < a.start) {
                    accepted.push(span);
                }
            }
            accepted.sort();
            accepted
        })
        .collect()
}

pub fn merge_adjacent_same_class(spans: &[EntitySpan]) -> Vec<EntitySpan> {
    let mut sorted = spans.to_vec();
    sorted.sort();
    let mut out: Vec<EntitySpan> = Vec::new();
    for span in sorted {
        match out.last_mut() {
            Some(last) if last.end + 1 == span.start && last.class == span.class => last.end = span.end,
            _ => out.push(span),
        }
    }
    out
}

pub fn tokens(text: &str) -> Vec<Token> {
    text.split_whitespace().map(|w| Token::new(w).unwrap()).collect()
}
