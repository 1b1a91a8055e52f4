//! Encodes the classic example sentence under every scheme, then shows the
//! front/rear split FROBES applies to a long entity.

use srtk::demo::render_table1;
use srtk::{encode, frobes_counts, EntitySpan, Scheme};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    print!("{}", render_table1());

    let words = ["human", "proximal", "sequence", "element-binding", "transcription", "factor"];
    let tags = encode(&[EntitySpan::new(0, 5, "protein")], words.len(), Scheme::Frobes)?;
    println!();
    for (word, tag) in words.iter().zip(tags.labels()) {
        println!("{word:>16}  {tag}");
    }

    println!("\n  n   F   R");
    for n in 3..=8 {
        let (f, r) = frobes_counts(n)?;
        println!("{n:>3} {f:>3} {r:>3}");
    }
    Ok(())
}
