//! The classic fifteen-token example sentence with four gold entities, used
//! by `srtk demo-table1` and the golden tests.

use crate::corpus::{EntitySpan, Sentence};
use crate::schemes::{encode, Scheme};

pub const TABLE1_TOKENS: [&str; 15] = [
    "The", "T", "cell", "surface", "molecule", "CD28", "binds", "to", "ligands", "on",
    "accessory", "cells", "and", "APCs", ",",
];

/// Column order of the demo table.
pub const TABLE1_SCHEMES: [Scheme; 8] = [
    Scheme::Io,
    Scheme::Ioe1,
    Scheme::Ioe2,
    Scheme::Iob1,
    Scheme::Iob2,
    Scheme::Iobe,
    Scheme::Iobes,
    Scheme::Frobes,
];

pub fn table1_spans() -> Vec<EntitySpan> {
    vec![
        EntitySpan::new(1, 4, "protein"),
        EntitySpan::new(5, 5, "protein"),
        EntitySpan::new(10, 11, "cell_type"),
        EntitySpan::new(13, 13, "cell_type"),
    ]
}

pub fn table1_sentence() -> Sentence {
    Sentence::from_words(&TABLE1_TOKENS.join(" "), table1_spans()).expect("fixture is valid")
}

/// Tab-separated table: one row per token, one column per scheme.
pub fn render_table1() -> String {
    let sentence = table1_sentence();
    let columns: Vec<Vec<String>> = TABLE1_SCHEMES
        .iter()
        .map(|&scheme| {
            encode(sentence.spans(), sentence.len(), scheme)
                .expect("fixture is valid")
                .labels()
                .iter()
                .map(ToString::to_string)
                .collect()
        })
        .collect();

    let mut out = String::from("Tokens");
    for scheme in TABLE1_SCHEMES {
        out.push('\t');
        out.push_str(scheme.display_name());
    }
    out.push('\n');
    for (i, token) in sentence.words().enumerate() {
        out.push_str(token);
        for column in &columns {
            out.push('\t');
            out.push_str(&column[i]);
        }
        out.push('\n');
    }
    out
}
