//! Majority voting across three systems that disagree on boundaries.

use srtk::{majority_vote, resolve_overlaps, EntitySpan, VotedSpan};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let iob2 = vec![vec![EntitySpan::new(0, 2, "protein"), EntitySpan::new(5, 5, "dna")]];
    let iobes = vec![vec![EntitySpan::new(0, 2, "protein"), EntitySpan::new(4, 5, "dna")]];
    let frobes = vec![vec![EntitySpan::new(1, 2, "protein"), EntitySpan::new(4, 5, "dna")]];
    let systems = [iob2, iobes, frobes];

    for threshold in [None, Some(1), Some(3)] {
        let voted = majority_vote(&systems, threshold)?;
        let spans: Vec<String> = voted[0].iter().map(ToString::to_string).collect();
        println!("threshold {threshold:?}: {}", spans.join(" "));
    }

    // Overlap resolution on its own: more votes win, then longer spans.
    let candidates = vec![
        VotedSpan { span: EntitySpan::new(0, 3, "protein"), votes: 2 },
        VotedSpan { span: EntitySpan::new(2, 4, "dna"), votes: 2 },
        VotedSpan { span: EntitySpan::new(4, 4, "dna"), votes: 3 },
    ];
    let kept: Vec<String> = resolve_overlaps(candidates).iter().map(ToString::to_string).collect();
    println!("resolved: {}", kept.join(" "));
    Ok(())
}
