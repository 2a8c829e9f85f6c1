//! Corpus ingestion: tolerant XML body extraction, label generation from
//! reference summaries, training-pair construction, and train/eval splits.
//!
//! Directory layout: `<root>/docs/*.xml|*.txt` paired with
//! `<root>/summaries/<stem>.txt` by file stem.

use std::io;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::embedding::EmbeddingTable;
use crate::network::{NetworkConfig, Page, TargetDistribution};
use crate::rouge::rouge_n;
use crate::summarizer::paginate;
use crate::textproc::{split_sentences, Document};

pub const DEFAULT_BODY_TAG: &str = "TEXT";

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}: no <{tag}> body tag found")]
    MissingBodyTag { path: PathBuf, tag: String },
    #[error("{path}: malformed markup at byte {offset}: {reason}")]
    Parse {
        path: PathBuf,
        offset: usize,
        reason: String,
    },
    #[error("no usable document/summary pairs under {root}")]
    EmptyCorpus { root: PathBuf },
    #[error("cannot split an empty pair list")]
    EmptySplit,
    #[error("invalid split spec: {0}")]
    InvalidSplit(String),
    #[error("invalid corpus argument: {0}")]
    InvalidArg(String),
}

/// String-level failure of [`extract_body_text`], positioned by byte offset.
#[derive(Debug, PartialEq, Eq)]
pub enum BodyTextError {
    MissingTag,
    Malformed { offset: usize, reason: String },
}

fn decode_entities(text: &str) -> String {
    // `&amp;` last, so `&amp;lt;` decodes to the literal `&lt;`.
    text.replace("&lt;", "<")
        .replace("&gt;", ">")
        .replace("&quot;", "\"")
        .replace("&apos;", "'")
        .replace("&amp;", "&")
}

/// Pulls the text content of every `body_tag` element (case-insensitive)
/// out of DUC-style markup. Nested tags contribute their text; the five
/// standard entities are decoded; whitespace is collapsed. Tolerant of
/// non-well-formed input, but a `<` that never closes or a nameless tag is
/// a malformed-markup error.
pub fn extract_body_text(xml: &str, body_tag: &str) -> Result<String, BodyTextError> {
    let bytes = xml.as_bytes();
    let mut i = 0;
    let mut depth = 0usize;
    let mut found = false;
    let mut captured = String::new();
    while i < bytes.len() {
        if bytes[i] == b'<' {
            let close = xml[i..]
                .find('>')
                .map(|p| i + p)
                .ok_or(BodyTextError::Malformed {
                    offset: i,
                    reason: "tag never closes".into(),
                })?;
            let inner = &xml[i + 1..close];
            let (closing, name_part) = match inner.strip_prefix('/') {
                Some(rest) => (true, rest),
                None => (false, inner),
            };
            if name_part.is_empty() || name_part.starts_with(char::is_whitespace) {
                return Err(BodyTextError::Malformed {
                    offset: i,
                    reason: "tag has no name".into(),
                });
            }
            let name = name_part
                .split(|c: char| c.is_whitespace() || c == '/')
                .next()
                .unwrap();
            if name.eq_ignore_ascii_case(body_tag) {
                found = true;
                if closing {
                    depth = depth.saturating_sub(1);
                } else if !inner.ends_with('/') {
                    depth += 1;
                }
            }
            i = close + 1;
        } else {
            let next_tag = xml[i..].find('<').map(|p| i + p).unwrap_or(bytes.len());
            if depth > 0 {
                captured.push_str(&xml[i..next_tag]);
                captured.push(' ');
            }
            i = next_tag;
        }
    }
    if !found {
        return Err(BodyTextError::MissingTag);
    }
    let decoded = decode_entities(&captured);
    Ok(decoded.split_whitespace().collect::<Vec<_>>().join(" "))
}

/// Reads a DUC-style markup file and extracts its body text.
pub fn parse_duc_xml(path: &Path, body_tag: &str) -> Result<String, CorpusError> {
    let xml = std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    extract_body_text(&xml, body_tag).map_err(|e| match e {
        BodyTextError::MissingTag => CorpusError::MissingBodyTag {
            path: path.to_path_buf(),
            tag: body_tag.to_string(),
        },
        BodyTextError::Malformed { offset, reason } => CorpusError::Parse {
            path: path.to_path_buf(),
            offset,
            reason,
        },
    })
}

/// Per-sentence summary-membership labels. Stage 1 marks every document
/// sentence whose token list exactly equals a reference sentence's. Stage 2
/// covers each still-unmatched reference sentence by marking the document
/// sentence with the highest ROUGE-1 recall against it (earliest on ties),
/// if that recall reaches 0.5.
pub fn make_labels(document: &Document, reference: &Document) -> Vec<bool> {
    let mut labels = vec![false; document.len()];
    let mut ref_matched = vec![false; reference.len()];
    for (r, ref_sent) in reference.sentences.iter().enumerate() {
        for (d, doc_sent) in document.sentences.iter().enumerate() {
            if !doc_sent.tokens.is_empty() && doc_sent.tokens == ref_sent.tokens {
                labels[d] = true;
                ref_matched[r] = true;
            }
        }
    }
    for (r, ref_sent) in reference.sentences.iter().enumerate() {
        if ref_matched[r] || ref_sent.tokens.is_empty() {
            continue;
        }
        let mut best: Option<(f64, usize)> = None;
        for (d, doc_sent) in document.sentences.iter().enumerate() {
            let recall = rouge_n(&doc_sent.tokens, &ref_sent.tokens, 1).recall;
            if best.map_or(true, |(b, _)| recall > b) {
                best = Some((recall, d));
            }
        }
        if let Some((recall, d)) = best {
            if recall >= 0.5 {
                labels[d] = true;
            }
        }
    }
    labels
}

/// A document, its reference summary, and the derived sentence labels.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusPair {
    pub document: Document,
    pub reference_summary: Document,
    pub labels: Vec<bool>,
}

impl CorpusPair {
    /// Builds the pair, deriving labels with [`make_labels`].
    pub fn labeled(document: Document, reference_summary: Document) -> Self {
        let labels = make_labels(&document, &reference_summary);
        Self {
            document,
            reference_summary,
            labels,
        }
    }

    pub fn has_positive_label(&self) -> bool {
        self.labels.iter().any(|&l| l)
    }

    /// Document indices of the labeled sentences.
    pub fn positive_indices(&self) -> Vec<usize> {
        self.labels
            .iter()
            .enumerate()
            .filter_map(|(i, &l)| l.then_some(i))
            .collect()
    }
}

/// Paginates a labeled pair into supervised training examples. Each page's
/// target is uniform over its labeled slots; pages with no labeled slot are
/// dropped. Returns the examples and the dropped-page count.
pub fn build_training_pairs(
    pair: &CorpusPair,
    net_config: &NetworkConfig,
    table: &EmbeddingTable,
) -> (Vec<(Page, TargetDistribution)>, usize) {
    debug_assert_eq!(pair.labels.len(), pair.document.len());
    let mut out = Vec::new();
    let mut dropped = 0;
    for page in paginate(&pair.document, net_config.page_len, table) {
        let positives: Vec<usize> = page
            .sentence_refs()
            .iter()
            .enumerate()
            .filter_map(|(slot, &orig)| pair.labels[orig].then_some(slot))
            .collect();
        if positives.is_empty() {
            dropped += 1;
            continue;
        }
        let target = TargetDistribution::uniform_over(&positives, net_config.page_len)
            .expect("slot indices are in range and nonempty");
        out.push((page, target));
    }
    (out, dropped)
}

/// Train/eval partition parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitSpec {
    pub train_fraction: f64,
    pub seed: u64,
}

impl Default for SplitSpec {
    fn default() -> Self {
        Self {
            train_fraction: 0.75,
            seed: 42,
        }
    }
}

impl SplitSpec {
    pub fn validate(&self) -> Result<(), CorpusError> {
        if !(self.train_fraction > 0.0 && self.train_fraction < 1.0) {
            return Err(CorpusError::InvalidSplit(format!(
                "train_fraction {} not in (0, 1)",
                self.train_fraction
            )));
        }
        Ok(())
    }
}

/// Seeded shuffle, then the first `floor(train_fraction * n)` pairs train
/// and the rest evaluate. Both halves are nonempty whenever `n >= 2`.
pub fn split_train_eval(
    pairs: Vec<CorpusPair>,
    spec: &SplitSpec,
) -> Result<(Vec<CorpusPair>, Vec<CorpusPair>), CorpusError> {
    spec.validate()?;
    if pairs.is_empty() {
        return Err(CorpusError::EmptySplit);
    }
    let n = pairs.len();
    let mut shuffled = pairs;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    shuffled.shuffle(&mut rng);
    let mut train_n = (spec.train_fraction * n as f64).floor() as usize;
    if n >= 2 {
        train_n = train_n.clamp(1, n - 1);
    }
    let eval = shuffled.split_off(train_n);
    Ok((shuffled, eval))
}

/// A loaded corpus plus per-file notes about anything skipped.
#[derive(Debug)]
pub struct LoadedCorpus {
    pub pairs: Vec<CorpusPair>,
    pub notes: Vec<String>,
}

fn note(notes: &mut Vec<String>, path: &Path, what: impl std::fmt::Display) {
    notes.push(format!("{}: {}", path.display(), what));
}

/// Loads every document/summary pair under `root`. Documents are
/// `docs/*.xml` (body-tag extraction) or `docs/*.txt` (plain text);
/// summaries are plain text at `summaries/<stem>.txt`. Files that fail to
/// parse, lack a summary, or produce no usable labels are skipped with a
/// note; an entirely unusable corpus is an error. Processing order is
/// sorted by filename, so results are deterministic.
pub fn load_corpus(root: &Path, body_tag: &str) -> Result<LoadedCorpus, CorpusError> {
    let docs_dir = root.join("docs");
    let summaries_dir = root.join("summaries");
    let entries = std::fs::read_dir(&docs_dir).map_err(|source| CorpusError::Io {
        path: docs_dir.clone(),
        source,
    })?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| {
            matches!(
                p.extension().and_then(|s| s.to_str()),
                Some("xml") | Some("txt")
            )
        })
        .collect();
    files.sort();

    let mut pairs = Vec::new();
    let mut notes = Vec::new();
    for path in files {
        let stem = match path.file_stem() {
            Some(s) => s.to_string_lossy().into_owned(),
            None => continue,
        };
        let is_xml = path.extension().and_then(|s| s.to_str()) == Some("xml");
        let text = if is_xml {
            match parse_duc_xml(&path, body_tag) {
                Ok(t) => t,
                Err(e) => {
                    notes.push(format!("{e}; skipped"));
                    continue;
                }
            }
        } else {
            match std::fs::read_to_string(&path) {
                Ok(t) => t,
                Err(e) => {
                    note(&mut notes, &path, format!("{e}; skipped"));
                    continue;
                }
            }
        };
        let mut document = split_sentences(&text);
        document.source_id = stem.clone();
        if document.is_empty() {
            note(&mut notes, &path, "no sentences; skipped");
            continue;
        }
        let summary_path = summaries_dir.join(format!("{stem}.txt"));
        let summary_text = match std::fs::read_to_string(&summary_path) {
            Ok(t) => t,
            Err(e) => {
                note(&mut notes, &summary_path, format!("{e}; skipped"));
                continue;
            }
        };
        let mut reference = split_sentences(&summary_text);
        reference.source_id = stem.clone();
        if reference.is_empty() {
            note(&mut notes, &summary_path, "empty reference summary; skipped");
            continue;
        }
        let pair = CorpusPair::labeled(document, reference);
        if !pair.has_positive_label() {
            note(
                &mut notes,
                &path,
                "no document sentence matched the reference; skipped",
            );
            continue;
        }
        pairs.push(pair);
    }
    if pairs.is_empty() {
        return Err(CorpusError::EmptyCorpus {
            root: root.to_path_buf(),
        });
    }
    Ok(LoadedCorpus { pairs, notes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::EmbeddingConfig;

    fn doc_from(text: &str) -> Document {
        split_sentences(text)
    }

    #[test]
    fn extracts_body_text_directly() {
        let out = extract_body_text("<DOC><TEXT>A cat. A dog.</TEXT></DOC>", "TEXT").unwrap();
        assert_eq!(out, "A cat. A dog.");
    }

    #[test]
    fn missing_body_tag_is_an_error() {
        assert_eq!(
            extract_body_text("<DOC><HEAD>x</HEAD></DOC>", "TEXT"),
            Err(BodyTextError::MissingTag)
        );
    }

    #[test]
    fn decodes_the_five_standard_entities() {
        let out = extract_body_text(
            "<TEXT>a &amp; b &lt;c&gt; &quot;d&quot; &apos;e&apos;</TEXT>",
            "TEXT",
        )
        .unwrap();
        assert_eq!(out, "a & b <c> \"d\" 'e'");
    }

    #[test]
    fn double_escaped_ampersand_decodes_once() {
        let out = extract_body_text("<TEXT>&amp;lt;</TEXT>", "TEXT").unwrap();
        assert_eq!(out, "&lt;");
    }

    #[test]
    fn nested_tags_contribute_their_text() {
        let out = extract_body_text("<TEXT>a <P>b</P> c</TEXT>", "TEXT").unwrap();
        assert_eq!(out, "a b c");
    }

    #[test]
    fn multiple_body_blocks_concatenate() {
        let out =
            extract_body_text("<DOC><TEXT>One.</TEXT><TEXT>Two.</TEXT></DOC>", "TEXT").unwrap();
        assert_eq!(out, "One. Two.");
    }

    #[test]
    fn body_tag_name_is_configurable_and_case_insensitive() {
        let out = extract_body_text("<doc><body>Hi there.</body></doc>", "BODY").unwrap();
        assert_eq!(out, "Hi there.");
    }

    #[test]
    fn unclosed_angle_bracket_reports_offset() {
        let err = extract_body_text("<TEXT>ok</TEXT> trailing <oops", "TEXT").unwrap_err();
        match err {
            BodyTextError::Malformed { offset, .. } => assert_eq!(offset, 25),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn nameless_tag_reports_offset() {
        let err = extract_body_text("<TEXT>a < b</TEXT>", "TEXT").unwrap_err();
        assert!(matches!(err, BodyTextError::Malformed { offset: 8, .. }));
    }

    #[test]
    fn whitespace_collapses_across_lines() {
        let out = extract_body_text("<TEXT>\n  One.\n\n  Two.\n</TEXT>", "TEXT").unwrap();
        assert_eq!(out, "One. Two.");
    }

    #[test]
    fn verbatim_references_label_exactly_their_positions() {
        let document = doc_from("First point. Second point. Third point. Fourth point.");
        let reference = doc_from("Second point. Fourth point.");
        assert_eq!(
            make_labels(&document, &reference),
            vec![false, true, false, true]
        );
    }

    #[test]
    fn empty_reference_labels_nothing() {
        let document = doc_from("One. Two.");
        let reference = doc_from("");
        assert_eq!(make_labels(&document, &reference), vec![false, false]);
    }

    #[test]
    fn near_match_falls_back_to_rouge_recall() {
        let document = doc_from("The cat sat on the mat. Dogs bark loudly.");
        let reference = doc_from("The cat sat on a mat.");
        assert_eq!(make_labels(&document, &reference), vec![true, false]);
    }

    #[test]
    fn low_recall_produces_no_label() {
        let document = doc_from("Alpha beta gamma. Delta epsilon zeta.");
        let reference = doc_from("Completely different words here entirely.");
        assert_eq!(make_labels(&document, &reference), vec![false, false]);
    }

    #[test]
    fn fallback_tie_goes_to_earliest_sentence() {
        let document = doc_from("Red green blue. Red green blue. Unrelated words.");
        let reference = doc_from("Red green yellow.");
        assert_eq!(make_labels(&document, &reference), vec![true, false, false]);
    }

    fn small_table() -> EmbeddingTable {
        EmbeddingTable::hashed(EmbeddingConfig {
            dim: 6,
            bucket_count: 500,
            ..EmbeddingConfig::default()
        })
        .unwrap()
    }

    fn net_config(page_len: usize) -> NetworkConfig {
        NetworkConfig {
            page_len,
            embed_dim: 6,
            hidden_size: 3,
            ..NetworkConfig::default()
        }
    }

    fn pair_with_labels(n: usize, positives: &[usize]) -> CorpusPair {
        let text: String = (0..n)
            .map(|i| format!("word number {i}."))
            .collect::<Vec<_>>()
            .join(" ");
        let document = doc_from(&text);
        let mut labels = vec![false; n];
        for &p in positives {
            labels[p] = true;
        }
        CorpusPair {
            reference_summary: Document::default(),
            document,
            labels,
        }
    }

    #[test]
    fn single_positive_becomes_one_hot_target() {
        let pair = pair_with_labels(5, &[3]);
        let (pairs, dropped) = build_training_pairs(&pair, &net_config(5), &small_table());
        assert_eq!(pairs.len(), 1);
        assert_eq!(dropped, 0);
        let probs = pairs[0].1.probs();
        assert_eq!(probs[3], 1.0);
        assert_eq!(probs.iter().sum::<f64>(), 1.0);
    }

    #[test]
    fn two_positives_share_probability() {
        let pair = pair_with_labels(5, &[1, 4]);
        let (pairs, _) = build_training_pairs(&pair, &net_config(5), &small_table());
        let probs = pairs[0].1.probs();
        assert_eq!(probs[1], 0.5);
        assert_eq!(probs[4], 0.5);
    }

    #[test]
    fn unlabeled_pages_are_dropped_and_counted() {
        let pair = pair_with_labels(9, &[2]);
        let (pairs, dropped) = build_training_pairs(&pair, &net_config(5), &small_table());
        assert_eq!(pairs.len(), 1);
        assert_eq!(dropped, 1);
        assert_eq!(pairs[0].0.sentence_refs()[0], 0);
    }

    #[test]
    fn second_page_positions_map_to_local_slots() {
        let pair = pair_with_labels(9, &[7]);
        let (pairs, _) = build_training_pairs(&pair, &net_config(5), &small_table());
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].1.probs()[2], 1.0);
    }

    fn dummy_pairs(n: usize) -> Vec<CorpusPair> {
        (0..n)
            .map(|i| {
                let mut pair = pair_with_labels(3, &[i % 3]);
                pair.document.source_id = format!("d{i}");
                pair
            })
            .collect()
    }

    #[test]
    fn split_four_pairs_three_to_one() {
        let (train, eval) =
            split_train_eval(dummy_pairs(4), &SplitSpec::default()).unwrap();
        assert_eq!(train.len(), 3);
        assert_eq!(eval.len(), 1);
    }

    #[test]
    fn split_567_pairs_is_425_to_142() {
        let (train, eval) =
            split_train_eval(dummy_pairs(567), &SplitSpec::default()).unwrap();
        assert_eq!(train.len(), 425);
        assert_eq!(eval.len(), 142);
    }

    #[test]
    fn split_is_deterministic_and_seed_sensitive() {
        let a = split_train_eval(dummy_pairs(20), &SplitSpec::default()).unwrap();
        let b = split_train_eval(dummy_pairs(20), &SplitSpec::default()).unwrap();
        assert_eq!(a, b);
        let c = split_train_eval(
            dummy_pairs(20),
            &SplitSpec {
                seed: 7,
                ..SplitSpec::default()
            },
        )
        .unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn split_preserves_every_pair() {
        let pairs = dummy_pairs(11);
        let (train, eval) = split_train_eval(pairs.clone(), &SplitSpec::default()).unwrap();
        assert_eq!(train.len() + eval.len(), pairs.len());
        for p in &pairs {
            assert!(train.contains(p) || eval.contains(p));
        }
    }

    #[test]
    fn split_keeps_both_halves_nonempty_for_two_pairs() {
        for fraction in [0.1, 0.5, 0.99] {
            let spec = SplitSpec {
                train_fraction: fraction,
                seed: 1,
            };
            let (train, eval) = split_train_eval(dummy_pairs(2), &spec).unwrap();
            assert_eq!(train.len(), 1, "fraction {fraction}");
            assert_eq!(eval.len(), 1, "fraction {fraction}");
        }
    }

    #[test]
    fn split_rejects_empty_input_and_bad_fraction() {
        assert!(matches!(
            split_train_eval(vec![], &SplitSpec::default()),
            Err(CorpusError::EmptySplit)
        ));
        let bad = SplitSpec {
            train_fraction: 1.0,
            seed: 1,
        };
        assert!(matches!(
            split_train_eval(dummy_pairs(3), &bad),
            Err(CorpusError::InvalidSplit(_))
        ));
    }

    #[test]
    fn load_corpus_pairs_docs_with_summaries() {
        let dir = tempfile::tempdir().unwrap();
        let root = dir.path();
        std::fs::create_dir_all(root.join("docs")).unwrap();
        std::fs::create_dir_all(root.join("summaries")).unwrap();
        std::fs::write(
            root.join("docs/a.xml"),
            "<DOC><TEXT>Apples grow. Pears ripen. Plums fall.</TEXT></DOC>",
        )
        .unwrap();
        std::fs::write(root.join("summaries/a.txt"), "Pears ripen.").unwrap();
        std::fs::write(root.join("docs/b.txt"), "Rivers flow. Stones rest.").unwrap();
        std::fs::write(root.join("summaries/b.txt"), "Stones rest.").unwrap();
        std::fs::write(root.join("docs/ignored.dat"), "not corpus data").unwrap();

        let loaded = load_corpus(root, DEFAULT_BODY_TAG).unwrap();
        assert_eq!(loaded.pairs.len(), 2);
        assert!(loaded.notes.is_empty());
        assert_eq!(loaded.pairs[0].document.source_id, "a");
        assert_eq!(loaded.pairs[0].labels, vec![false, true, false]);
        assert_eq!(loaded.pairs[1].document.source_id, "b");
        assert_eq!(loaded.pairs[1].labels, vec![false, true]);
    }

    #[test]
    fn load_corpus_skips_docs_without_summary() {
        let dir = tempfile::tempdir().unwrap();
        let root = dir.path();
        std::fs::create_dir_all(root.join("docs")).unwrap();
        std::fs::create_dir_all(root.join("summaries")).unwrap();
        std::fs::write(root.join("docs/a.txt"), "Kept here. Also kept.").unwrap();
        std::fs::write(root.join("summaries/a.txt"), "Kept here.").unwrap();
        std::fs::write(root.join("docs/orphan.txt"), "No summary exists.").unwrap();

        let loaded = load_corpus(root, DEFAULT_BODY_TAG).unwrap();
        assert_eq!(loaded.pairs.len(), 1);
        assert_eq!(loaded.notes.len(), 1);
        assert!(loaded.notes[0].contains("orphan"));
    }

    #[test]
    fn load_corpus_notes_unmatchable_references() {
        let dir = tempfile::tempdir().unwrap();
        let root = dir.path();
        std::fs::create_dir_all(root.join("docs")).unwrap();
        std::fs::create_dir_all(root.join("summaries")).unwrap();
        std::fs::write(root.join("docs/a.txt"), "Aaa bbb ccc. Ddd eee fff.").unwrap();
        std::fs::write(root.join("summaries/a.txt"), "Zzz yyy xxx www.").unwrap();
        std::fs::write(root.join("docs/b.txt"), "Good sentence here.").unwrap();
        std::fs::write(root.join("summaries/b.txt"), "Good sentence here.").unwrap();

        let loaded = load_corpus(root, DEFAULT_BODY_TAG).unwrap();
        assert_eq!(loaded.pairs.len(), 1);
        assert_eq!(loaded.pairs[0].document.source_id, "b");
        assert_eq!(loaded.notes.len(), 1);
    }

    #[test]
    fn load_corpus_empty_directory_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        let root = dir.path();
        std::fs::create_dir_all(root.join("docs")).unwrap();
        std::fs::create_dir_all(root.join("summaries")).unwrap();
        assert!(matches!(
            load_corpus(root, DEFAULT_BODY_TAG),
            Err(CorpusError::EmptyCorpus { .. })
        ));
    }

    #[test]
    fn load_corpus_missing_docs_dir_is_io_error() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(
            load_corpus(dir.path(), DEFAULT_BODY_TAG),
            Err(CorpusError::Io { .. })
        ));
    }
}
