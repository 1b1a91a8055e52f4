use crate::corpus::Token;

const START: &str = "<S>";
const END: &str = "</S>";

/// Deduplicated, sorted feature keys for one token position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FeatureVector(Vec<String>);

impl FeatureVector {
    pub fn keys(&self) -> &[String] {
        &self.0
    }

    pub fn contains(&self, key: &str) -> bool {
        self.0.binary_search_by(|k| k.as_str().cmp(key)).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<'a> IntoIterator for &'a FeatureVector {
    type Item = &'a String;
    type IntoIter = std::slice::Iter<'a, String>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Word shape: uppercase to `X`, lowercase to `x`, digits to `9`, anything
/// else kept, with runs of the same symbol collapsed.
pub fn word_shape(word: &str) -> String {
    let mut shape = String::new();
    for c in word.chars() {
        let s = if c.is_uppercase() {
            'X'
        } else if c.is_lowercase() {
            'x'
        } else if c.is_ascii_digit() {
            '9'
        } else {
            c
        };
        if !shape.ends_with(s) {
            shape.push(s);
        }
    }
    shape
}

/// Orthographic and window features for the token at `position`.
///
/// # Panics
///
/// Panics if `position` is out of bounds.
pub fn extract_features(tokens: &[Token], position: usize) -> FeatureVector {
    let word = tokens[position].as_str();
    let at = |offset: isize| -> &str {
        let i = position as isize + offset;
        if i < 0 {
            START
        } else if i as usize >= tokens.len() {
            END
        } else {
            tokens[i as usize].as_str()
        }
    };

    let mut keys = vec![
        format!("w0={word}"),
        format!("low0={}", word.to_lowercase()),
        format!("shape={}", word_shape(word)),
        format!("w-1={}", at(-1)),
        format!("w-2={}", at(-2)),
        format!("w+1={}", at(1)),
        format!("w+2={}", at(2)),
    ];
    let chars: Vec<char> = word.chars().collect();
    for k in 2..=4 {
        if chars.len() >= k {
            keys.push(format!("pre{k}={}", chars[..k].iter().collect::<String>()));
            keys.push(format!(
                "suf{k}={}",
                chars[chars.len() - k..].iter().collect::<String>()
            ));
        }
    }
    if chars.iter().any(char::is_ascii_digit) {
        keys.push("hasdigit".to_string());
    }
    if chars.contains(&'-') {
        keys.push("hashyphen".to_string());
    }
    keys.sort();
    keys.dedup();
    FeatureVector(keys)
}
