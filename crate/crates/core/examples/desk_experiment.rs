//! The full pipeline at desk scale: synthetic 5,000/1,000 split, three
//! schemes, a majority-vote ensemble, and overall plus per-length reports.
//!
//! `cargo run --release --example desk_experiment -- [seed]`

use std::time::Instant;

use srtk::{
    corpus_stats, decode, evaluate, generate_synthetic, majority_vote, tag_corpus, train,
    Comparison, Corpus, DecodeMode, LengthClass, Scheme, SyntheticConfig, TableStyle, TrainConfig,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(2004);
    let started = Instant::now();

    let corpus = generate_synthetic(&SyntheticConfig {
        sentence_count: 6000,
        seed,
        ..SyntheticConfig::default()
    })?;
    let mut sentences = corpus.into_sentences();
    let test = Corpus::new(sentences.split_off(5000));
    let train_set = Corpus::new(sentences);
    println!("test set entity lengths\n{}", corpus_stats(&test));

    let gold = test.span_sets();
    let mut comparison = Comparison::new();
    let mut outputs = Vec::new();
    for scheme in [Scheme::Iob2, Scheme::Iobes, Scheme::Frobes] {
        let model = train(&train_set, scheme, &TrainConfig::default())?;
        let spans = tag_corpus(&model, &test)
            .iter()
            .map(|t| decode(t, DecodeMode::Lenient))
            .collect::<Result<Vec<_>, _>>()?;
        comparison.push(scheme.display_name(), evaluate(&gold, &spans)?);
        outputs.push(spans);
    }
    comparison.push("Ensemble", evaluate(&gold, &majority_vote(&outputs, None)?)?);

    println!("overall and per-length f1");
    print!("{}", comparison.render(TableStyle::Plain, true));

    let mut long: Vec<(&str, f64)> = comparison
        .systems()
        .iter()
        .take(3)
        .map(|(name, r)| (name.as_str(), r.by_length(LengthClass::ThreeOrMore).metrics().f1))
        .collect();
    long.sort_by(|a, b| b.1.total_cmp(&a.1));
    println!("\nbest on n >= 3: {} ({:.2})", long[0].0, 100.0 * long[0].1);
    println!("elapsed {:.1?}", started.elapsed());
    Ok(())
}
