//! Span-level majority voting across systems.
//!
//! Systems may use different tag sets, so votes are cast on decoded spans:
//! each system contributes one vote to every distinct `(start, end, class)`
//! it predicts. Surviving candidates are made disjoint greedily.

use std::cmp::Reverse;
use std::collections::BTreeMap;

use thiserror::Error;

use crate::corpus::EntitySpan;

#[derive(Debug, Error, PartialEq)]
pub enum EnsembleError {
    #[error("at least one system output is required")]
    NoSystems,
    #[error("system {system} has {found} sentences, expected {expected}")]
    Misaligned {
        system: usize,
        expected: usize,
        found: usize,
    },
    #[error("vote threshold must be at least 1")]
    ZeroThreshold,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VotedSpan {
    pub span: EntitySpan,
    pub votes: usize,
}

/// Strict majority of `k` systems.
pub fn default_threshold(k: usize) -> usize {
    k / 2 + 1
}

/// Combines per-sentence span sets from `k` systems.
///
/// `system_outputs[s][i]` is system `s`'s span set for sentence `i`. Spans
/// with at least `threshold` votes (default: strict majority) survive and are
/// then passed through [`resolve_overlaps`].
pub fn majority_vote(
    system_outputs: &[Vec<Vec<EntitySpan>>],
    threshold: Option<usize>,
) -> Result<Vec<Vec<EntitySpan>>, EnsembleError> {
    let first = system_outputs.first().ok_or(EnsembleError::NoSystems)?;
    let sentences = first.len();
    if let Some((system, out)) = system_outputs
        .iter()
        .enumerate()
        .find(|(_, out)| out.len() != sentences)
    {
        return Err(EnsembleError::Misaligned {
            system,
            expected: sentences,
            found: out.len(),
        });
    }
    let threshold = threshold.unwrap_or(default_threshold(system_outputs.len()));
    if threshold == 0 {
        return Err(EnsembleError::ZeroThreshold);
    }

    Ok((0..sentences)
        .map(|i| {
            let mut votes: BTreeMap<&EntitySpan, usize> = BTreeMap::new();
            for system in system_outputs {
                let mut seen: Vec<&EntitySpan> = system[i].iter().collect();
                seen.sort();
                seen.dedup();
                for span in seen {
                    *votes.entry(span).or_default() += 1;
                }
            }
            let candidates = votes
                .into_iter()
                .filter(|(_, v)| *v >= threshold)
                .map(|(span, votes)| VotedSpan {
                    span: span.clone(),
                    votes,
                })
                .collect();
            resolve_overlaps(candidates)
        })
        .collect())
}

/// Greedy disjoint selection by `(votes desc, length desc, start asc, class
/// asc)`. The result is sorted by position.
pub fn resolve_overlaps(mut candidates: Vec<VotedSpan>) -> Vec<EntitySpan> {
    candidates.sort_by(|a, b| {
        let key = |c: &VotedSpan| {
            (
                Reverse(c.votes),
                Reverse(c.span.len()),
                c.span.start,
                c.span.class.clone(),
            )
        };
        key(a).cmp(&key(b))
    });
    let mut accepted: Vec<EntitySpan> = Vec::new();
    for candidate in candidates {
        if accepted.iter().all(|s| !s.overlaps(&candidate.span)) {
            accepted.push(candidate.span);
        }
    }
    accepted.sort();
    accepted.dedup();
    accepted
}

#[cfg(test)]
mod tests {
    use super::*;

    fn span(start: usize, end: usize, class: &str) -> EntitySpan {
        EntitySpan::new(start, end, class)
    }

    fn voted(start: usize, end: usize, class: &str, votes: usize) -> VotedSpan {
        VotedSpan {
            span: span(start, end, class),
            votes,
        }
    }

    #[test]
    fn three_systems() {
        let a = span(0, 2, "protein");
        let b = span(4, 4, "dna");
        let out = majority_vote(
            &[vec![vec![a.clone()]], vec![vec![a.clone(), b]], vec![vec![a.clone()]]],
            None,
        )
        .unwrap();
        assert_eq!(out, vec![vec![a]]);
    }

    #[test]
    fn single_system_is_identity() {
        let spans = vec![vec![span(0, 1, "p"), span(3, 3, "d")], vec![]];
        assert_eq!(majority_vote(std::slice::from_ref(&spans), None).unwrap(), spans);
    }

    #[test]
    fn threshold_override_gives_union() {
        let out = majority_vote(
            &[vec![vec![span(0, 0, "p")]], vec![vec![span(2, 2, "p")]]],
            Some(1),
        )
        .unwrap();
        assert_eq!(out, vec![vec![span(0, 0, "p"), span(2, 2, "p")]]);
        assert_eq!(
            majority_vote(&[vec![vec![]]], Some(0)),
            Err(EnsembleError::ZeroThreshold)
        );
    }

    #[test]
    fn misaligned_outputs() {
        assert!(matches!(
            majority_vote(&[vec![vec![]], vec![]], None),
            Err(EnsembleError::Misaligned { system: 1, .. })
        ));
        assert_eq!(majority_vote(&[], None), Err(EnsembleError::NoSystems));
    }

    #[test]
    fn leftmost_wins_full_tie() {
        let out = resolve_overlaps(vec![voted(1, 3, "p", 2), voted(0, 2, "p", 2)]);
        assert_eq!(out, vec![span(0, 2, "p")]);
    }

    #[test]
    fn disjoint_candidates_survive() {
        let out = resolve_overlaps(vec![voted(0, 4, "p", 2), voted(6, 6, "d", 3)]);
        assert_eq!(out, vec![span(0, 4, "p"), span(6, 6, "d")]);
    }

    #[test]
    fn more_votes_beat_longer_span() {
        let out = resolve_overlaps(vec![voted(0, 4, "p", 2), voted(3, 3, "d", 3)]);
        assert_eq!(out, vec![span(3, 3, "d")]);
        let out = resolve_overlaps(vec![voted(0, 1, "p", 2), voted(0, 2, "d", 2)]);
        assert_eq!(out, vec![span(0, 2, "d")]);
    }
}
