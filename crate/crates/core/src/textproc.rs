//! Sentence segmentation and word tokenization.

/// One sentence of a [`Document`]: its position, original text, and tokens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    /// 0-based position in the owning document.
    pub index: usize,
    /// Original character span, whitespace-trimmed and internally collapsed.
    pub raw: String,
    /// Lowercase word tokens with surrounding punctuation stripped.
    pub tokens: Vec<String>,
}

/// An ordered list of sentences plus an opaque source identifier.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Document {
    pub sentences: Vec<Sentence>,
    pub source_id: String,
}

impl Document {
    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    /// Token lists of all sentences flattened into one sequence.
    pub fn all_tokens(&self) -> Vec<String> {
        self.sentences
            .iter()
            .flat_map(|s| s.tokens.iter().cloned())
            .collect()
    }
}

/// Words after which a `.` never ends a sentence. Compared case-insensitively
/// against the whitespace-delimited word ending at the terminator.
const ABBREVIATIONS: &[&str] = &[
    "mr.", "mrs.", "dr.", "prof.", "st.", "u.s.", "e.g.", "i.e.", "etc.",
];

fn is_terminator(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

/// ASCII punctuation removed from tokens. Hyphens and apostrophes survive in
/// internal positions so compound words keep their shape.
fn is_strippable(c: char) -> bool {
    c.is_ascii_punctuation() && c != '-' && c != '\''
}

/// Whether the word ending at the last char of `prefix` is a known abbreviation.
fn ends_with_abbreviation(prefix: &[char]) -> bool {
    let word_start = prefix
        .iter()
        .rposition(|c| c.is_whitespace())
        .map_or(0, |p| p + 1);
    let word: String = prefix[word_start..]
        .iter()
        .skip_while(|c| !c.is_alphanumeric())
        .collect::<String>()
        .to_lowercase();
    ABBREVIATIONS.contains(&word.as_str())
}

/// Splits raw text into a [`Document`] on `.`, `!`, `?` followed by
/// whitespace or end of text, except after a listed abbreviation.
/// Empty segments are dropped; each sentence is tokenized.
pub fn split_sentences(raw_text: &str) -> Document {
    let chars: Vec<char> = raw_text.chars().collect();
    let mut raws = Vec::new();
    let mut start = 0;
    for i in 0..chars.len() {
        if !is_terminator(chars[i]) {
            continue;
        }
        let followed_by_break = match chars.get(i + 1) {
            None => true,
            Some(c) => c.is_whitespace(),
        };
        if followed_by_break && !ends_with_abbreviation(&chars[..=i]) {
            raws.push(&chars[start..=i]);
            start = i + 1;
        }
    }
    if start < chars.len() {
        raws.push(&chars[start..]);
    }

    let mut sentences = Vec::new();
    for segment in raws {
        let raw = segment
            .iter()
            .collect::<String>()
            .split_whitespace()
            .collect::<Vec<_>>()
            .join(" ");
        if raw.is_empty() {
            continue;
        }
        let tokens = tokenize(&raw);
        sentences.push(Sentence {
            index: sentences.len(),
            raw,
            tokens,
        });
    }
    Document {
        sentences,
        source_id: String::new(),
    }
}

/// Lowercases, splits on whitespace, strips punctuation, and drops empty
/// results. Internal hyphens and apostrophes are preserved.
pub fn tokenize(raw_sentence: &str) -> Vec<String> {
    raw_sentence
        .to_lowercase()
        .split_whitespace()
        .filter_map(|piece| {
            let cleaned: String = piece.chars().filter(|&c| !is_strippable(c)).collect();
            let trimmed = cleaned.trim_matches(|c| c == '-' || c == '\'');
            if trimmed.is_empty() {
                None
            } else {
                Some(trimmed.to_string())
            }
        })
        .collect()
}
