//! Parses a CoNLL fragment, converts it between schemes, and shows what the
//! validator and the two decode modes make of a broken sequence.

use srtk::corpus::{parse_tagged, write_tagged};
use srtk::{convert, decode, validate, DecodeMode, Scheme, TagSequence};

const IOB2: &str = "\
IL-2\tB-protein
gene\tB-DNA
expression\tO
in\tO
activated\tB-cell_type
T\tI-cell_type
cells\tI-cell_type

";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sentences = parse_tagged(IOB2, None, Scheme::Iob2)?;
    for target in [Scheme::Iobes, Scheme::Frobes, Scheme::Ioe1] {
        println!("--- {target}");
        let converted: Vec<TagSequence> = sentences
            .iter()
            .map(|s| convert(&s.tags, target, DecodeMode::Strict))
            .collect::<Result<_, _>>()?;
        print!(
            "{}",
            write_tagged(sentences.iter().zip(&converted).map(|(s, t)| (s.tokens.as_slice(), t)))
        );
    }

    let broken = TagSequence::parse(Scheme::Frobes, "O F-protein R-protein O B-dna F-dna")?;
    println!("--- {broken}");
    for v in validate(&broken) {
        println!("token {}: {}: {}", v.token_index, v.kind, v.description);
    }
    match decode(&broken, DecodeMode::Strict) {
        Ok(spans) => println!("strict:  {spans:?}"),
        Err(e) => println!("strict:  {e}"),
    }
    let spans: Vec<String> = decode(&broken, DecodeMode::Lenient)?
        .iter()
        .map(ToString::to_string)
        .collect();
    println!("lenient: {}", spans.join(" "));
    Ok(())
}
