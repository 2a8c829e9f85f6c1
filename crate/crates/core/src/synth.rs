//! Synthetic labeled corpus generator. Each document is a run of vocabulary
//! sentences; a random subset carries a distinctive marker token and becomes
//! the verbatim reference summary, so label recovery and end-to-end learning
//! can be tested without licensed newswire data.

use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::CorpusError;

/// Token that identifies summary sentences. Its letters never occur in
/// [`VOCAB`], so its n-gram buckets are disjoint from vocabulary n-grams;
/// and a two-letter token averages the fewest buckets, giving it the
/// largest norm of any token, so the marker dominates the embedding of
/// any sentence containing it.
pub const MARKER: &str = "zq";

/// All words are 6 to 9 letters so their token norms stay uniformly small
/// next to the marker's.
pub const VOCAB: &[&str] = &[
    "harbors", "evening", "lantern", "seagulls", "fishing", "vessels", "slowly", "gliding",
    "beneath", "autumn", "clouds", "drifting", "towards", "distant", "islands", "sailors",
    "mending", "canvas", "against", "weathered", "railings", "traders", "selling", "baskets",
    "apples", "lemons", "herring", "barrels", "coiled", "timber", "wagons", "rolling", "cobbled",
    "streets", "children", "racing", "between", "painted", "shutters", "windows", "morning",
    "coastal", "villages", "beacons", "turning", "signals", "steady", "current", "carries",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SynthConfig {
    pub n_docs: usize,
    /// Marked sentences per document; each becomes one reference sentence.
    pub summary_len: usize,
    pub seed: u64,
    pub min_sentences: usize,
    pub max_sentences: usize,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            n_docs: 200,
            summary_len: 5,
            seed: 42,
            min_sentences: 30,
            max_sentences: 120,
        }
    }
}

impl SynthConfig {
    pub fn validate(&self) -> Result<(), CorpusError> {
        if self.n_docs < 1 {
            return Err(CorpusError::InvalidArg("n_docs must be at least 1".into()));
        }
        if self.summary_len < 1 {
            return Err(CorpusError::InvalidArg(
                "summary_len must be at least 1".into(),
            ));
        }
        if self.min_sentences < 1 || self.min_sentences > self.max_sentences {
            return Err(CorpusError::InvalidArg(format!(
                "sentence range {}..={} is invalid",
                self.min_sentences, self.max_sentences
            )));
        }
        Ok(())
    }
}

/// Words per base sentence. One set of distinct words is drawn per corpus
/// and every sentence is a fresh shuffle of it: sentence embeddings are
/// order independent, so all unmarked sentences share one embedding and
/// the marker is the only embedding-space difference a scorer can use.
/// That keeps the corpus separable by construction, whatever the seed.
/// Distinctness matters: a repeated word inflates the base embedding's
/// norm and dilutes the marker's share of marked sentences.
const BASE_LEN: usize = 4;

fn base_words(rng: &mut ChaCha8Rng) -> Vec<&'static str> {
    rand::seq::index::sample(rng, VOCAB.len(), BASE_LEN)
        .iter()
        .map(|i| VOCAB[i])
        .collect()
}

fn render(words: &[&str]) -> String {
    let mut s = words.join(" ");
    s.push('.');
    s
}

/// Writes `n_docs` documents under `<root>/docs/doc_NNNN.xml` with their
/// reference summaries under `<root>/summaries/doc_NNNN.txt`. Byte-identical
/// for identical configs.
pub fn generate_corpus(root: &Path, config: &SynthConfig) -> Result<(), CorpusError> {
    config.validate()?;
    let docs_dir = root.join("docs");
    let summaries_dir = root.join("summaries");
    for dir in [&docs_dir, &summaries_dir] {
        std::fs::create_dir_all(dir).map_err(|source| CorpusError::Io {
            path: dir.clone(),
            source,
        })?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let base = base_words(&mut rng);
    for doc_idx in 0..config.n_docs {
        let n_sent = rng.random_range(config.min_sentences..=config.max_sentences);
        let n_marked = config.summary_len.min(n_sent);
        let mut marked = rand::seq::index::sample(&mut rng, n_sent, n_marked).into_vec();
        marked.sort_unstable();

        let mut sentences = Vec::with_capacity(n_sent);
        for i in 0..n_sent {
            let mut words = base.clone();
            words.shuffle(&mut rng);
            if marked.binary_search(&i).is_ok() {
                let at = rng.random_range(0..=words.len());
                words.insert(at, MARKER);
            }
            sentences.push(render(&words));
        }

        let name = format!("doc_{doc_idx:04}");
        let body = sentences.join(" ");
        let xml = format!("<DOC>\n<DOCNO> {name} </DOCNO>\n<TEXT>\n{body}\n</TEXT>\n</DOC>\n");
        let doc_path = docs_dir.join(format!("{name}.xml"));
        std::fs::write(&doc_path, xml).map_err(|source| CorpusError::Io {
            path: doc_path.clone(),
            source,
        })?;

        let summary: String = marked
            .iter()
            .map(|&i| sentences[i].as_str())
            .collect::<Vec<_>>()
            .join(" ");
        let summary_path = summaries_dir.join(format!("{name}.txt"));
        std::fs::write(&summary_path, summary + "\n").map_err(|source| CorpusError::Io {
            path: summary_path.clone(),
            source,
        })?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{load_corpus, DEFAULT_BODY_TAG};

    fn config(n_docs: usize, seed: u64) -> SynthConfig {
        SynthConfig {
            n_docs,
            seed,
            ..SynthConfig::default()
        }
    }

    fn dir_bytes(root: &Path) -> Vec<(String, Vec<u8>)> {
        let mut out = Vec::new();
        for sub in ["docs", "summaries"] {
            let mut files: Vec<_> = std::fs::read_dir(root.join(sub))
                .unwrap()
                .map(|e| e.unwrap().path())
                .collect();
            files.sort();
            for f in files {
                out.push((
                    format!("{sub}/{}", f.file_name().unwrap().to_string_lossy()),
                    std::fs::read(&f).unwrap(),
                ));
            }
        }
        out
    }

    #[test]
    fn writes_one_doc_and_one_summary_per_document() {
        let dir = tempfile::tempdir().unwrap();
        generate_corpus(dir.path(), &config(7, 1)).unwrap();
        assert_eq!(std::fs::read_dir(dir.path().join("docs")).unwrap().count(), 7);
        assert_eq!(
            std::fs::read_dir(dir.path().join("summaries")).unwrap().count(),
            7
        );
    }

    #[test]
    fn same_seed_is_byte_identical_and_seeds_differ() {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        let c = tempfile::tempdir().unwrap();
        generate_corpus(a.path(), &config(5, 3)).unwrap();
        generate_corpus(b.path(), &config(5, 3)).unwrap();
        generate_corpus(c.path(), &config(5, 4)).unwrap();
        assert_eq!(dir_bytes(a.path()), dir_bytes(b.path()));
        assert_ne!(dir_bytes(a.path()), dir_bytes(c.path()));
    }

    #[test]
    fn loaded_corpus_recovers_marker_labels_exactly() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = config(6, 11);
        generate_corpus(dir.path(), &cfg).unwrap();
        let loaded = load_corpus(dir.path(), DEFAULT_BODY_TAG).unwrap();
        assert_eq!(loaded.pairs.len(), 6);
        assert!(loaded.notes.is_empty());
        for pair in &loaded.pairs {
            let n = pair.document.len();
            assert!((cfg.min_sentences..=cfg.max_sentences).contains(&n));
            assert_eq!(pair.reference_summary.len(), cfg.summary_len);
            let marked = pair.positive_indices();
            assert_eq!(marked.len(), cfg.summary_len);
            for (i, sentence) in pair.document.sentences.iter().enumerate() {
                let has_marker = sentence.tokens.iter().any(|t| t == MARKER);
                assert_eq!(has_marker, marked.contains(&i));
            }
        }
    }

    #[test]
    fn reference_sentences_are_verbatim_extracts() {
        let dir = tempfile::tempdir().unwrap();
        generate_corpus(dir.path(), &config(4, 21)).unwrap();
        let loaded = load_corpus(dir.path(), DEFAULT_BODY_TAG).unwrap();
        for pair in &loaded.pairs {
            for ref_sent in &pair.reference_summary.sentences {
                assert!(
                    pair.document
                        .sentences
                        .iter()
                        .any(|s| s.tokens == ref_sent.tokens),
                    "reference sentence missing from document"
                );
            }
        }
    }

    #[test]
    fn rejects_zero_documents() {
        let dir = tempfile::tempdir().unwrap();
        assert!(generate_corpus(dir.path(), &config(0, 1)).is_err());
    }
}
