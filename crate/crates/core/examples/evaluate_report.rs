//! Exact-match scoring of hand-made predictions, rendered both ways.

use srtk::{evaluate, Comparison, EntitySpan, TableStyle};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let gold = vec![
        vec![EntitySpan::new(0, 1, "protein"), EntitySpan::new(3, 3, "dna")],
        vec![EntitySpan::new(2, 6, "protein")],
    ];
    // One boundary error, one class error, one spurious span.
    let first = vec![
        vec![EntitySpan::new(0, 1, "protein"), EntitySpan::new(5, 5, "dna")],
        vec![EntitySpan::new(2, 5, "protein")],
    ];
    let second = vec![
        vec![EntitySpan::new(0, 1, "protein"), EntitySpan::new(3, 3, "protein")],
        vec![EntitySpan::new(2, 6, "protein")],
    ];

    let mut comparison = Comparison::new();
    for (name, pred) in [("first", &first), ("second", &second)] {
        let report = evaluate(&gold, pred)?;
        let c = report.overall();
        println!("{name}: tp={} fp={} fn={}", c.tp, c.fp, c.fn_);
        comparison.push(name, report);
    }
    println!();
    print!("{}", comparison.render(TableStyle::Plain, true));
    println!();
    print!("{}", comparison.render(TableStyle::Tsv, true));
    Ok(())
}
