//! Generates a synthetic corpus and prints its entity-length histogram and a
//! few sample sentences.
//!
//! `cargo run --example synthetic_corpus -- 2000 42`

use srtk::{corpus_stats, encode, generate_synthetic, Scheme, SyntheticConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let sentence_count = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1000);
    let seed = args.next().map(|s| s.parse()).transpose()?.unwrap_or(7);

    let corpus = generate_synthetic(&SyntheticConfig {
        sentence_count,
        seed,
        ..SyntheticConfig::default()
    })?;
    println!("{} sentences, {} entities, classes {:?}\n", corpus.len(), corpus.span_count(), corpus.class_inventory());
    print!("{}", corpus_stats(&corpus));

    for sentence in corpus.sentences().iter().take(3) {
        let tags = encode(sentence.spans(), sentence.len(), Scheme::Frobes)?;
        println!();
        for (word, tag) in sentence.words().zip(tags.labels()) {
            println!("{word}\t{tag}");
        }
    }
    Ok(())
}
