//! Trains a FROBES perceptron on synthetic data, saves and reloads it, and
//! tags unseen sentences.

use srtk::{
    decode, generate_synthetic, tag_corpus, train, Corpus, DecodeMode, Scheme, SyntheticConfig,
    TaggerModel, TrainConfig,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = generate_synthetic(&SyntheticConfig {
        sentence_count: 1200,
        ..SyntheticConfig::default()
    })?;
    let mut sentences = data.into_sentences();
    let test = Corpus::new(sentences.split_off(1000));
    let train_set = Corpus::new(sentences);

    let model = train(&train_set, Scheme::Frobes, &TrainConfig::default())?;
    let text = model.to_text();
    println!("model: {} features, {} bytes serialized", model.feature_count(), text.len());
    let model = TaggerModel::from_text(&text)?;

    for (sentence, tags) in test.sentences().iter().zip(tag_corpus(&model, &test)).take(3) {
        println!();
        for (word, tag) in sentence.words().zip(tags.labels()) {
            println!("{word:>14}  {tag}");
        }
        let found: Vec<String> = decode(&tags, DecodeMode::Lenient)?.iter().map(ToString::to_string).collect();
        println!("spans: {}", found.join(" "));
    }
    Ok(())
}
