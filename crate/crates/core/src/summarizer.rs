//! Recursive page-based summarization: embed and paginate a document, score
//! each page with the network, keep the top sentences per page, and repeat
//! on the concatenated survivors until at most the requested number remain.

use thiserror::Error;

use crate::embedding::EmbeddingTable;
use crate::network::{forward, NetworkError, NetworkParams, Page};
use crate::textproc::Document;

#[derive(Debug, Error)]
pub enum SummarizerError {
    #[error("invalid summary request: {0}")]
    InvalidRequest(String),
    #[error("document has no sentences")]
    EmptyDocument,
    #[error(transparent)]
    Network(#[from] NetworkError),
}

/// How long a summary to produce and with what page width.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SummaryRequest {
    /// Requested summary length in sentences (the X of the selection rule).
    pub summary_len: usize,
    /// Sentence slots per page; must match the scoring network.
    pub page_len: usize,
}

impl SummaryRequest {
    pub fn new(summary_len: usize, page_len: usize) -> Result<Self, SummarizerError> {
        let request = Self {
            summary_len,
            page_len,
        };
        request.validate()?;
        Ok(request)
    }

    pub fn validate(&self) -> Result<(), SummarizerError> {
        if self.summary_len < 1 {
            return Err(SummarizerError::InvalidRequest(
                "summary_len must be at least 1".into(),
            ));
        }
        if self.summary_len > self.page_len {
            return Err(SummarizerError::InvalidRequest(format!(
                "summary_len {} exceeds page_len {}",
                self.summary_len, self.page_len
            )));
        }
        Ok(())
    }
}

/// An extractive summary: which sentences were kept and how many reduction
/// passes it took.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summary {
    /// Strictly ascending source-document sentence indices.
    pub indices: Vec<usize>,
    /// The kept sentences' raw text joined in order.
    pub text: String,
    pub passes: usize,
}

/// Splits a document into `ceil(len/page_len)` embedded pages in order. The
/// last page is zero-padded; an empty document yields no pages.
pub fn paginate(doc: &Document, page_len: usize, table: &EmbeddingTable) -> Vec<Page> {
    assert!(page_len >= 1, "page_len must be at least 1");
    doc.sentences
        .chunks(page_len)
        .map(|chunk| {
            let rows = chunk
                .iter()
                .map(|s| table.embed_sentence(&s.tokens))
                .collect();
            let refs = chunk.iter().map(|s| s.index).collect();
            Page::new(rows, refs, page_len, table.config().dim)
                .expect("chunked sentences always form a valid page")
        })
        .collect()
}

/// Indices of the `k` highest-probability mask-true slots (all of them if
/// fewer exist). Ties go to the earlier slot; the result is ascending.
pub fn select_top_k(probs: &[f64], mask: &[bool], k: usize) -> Vec<usize> {
    assert!(k >= 1, "k must be at least 1");
    debug_assert_eq!(probs.len(), mask.len());
    let mut slots: Vec<usize> = (0..probs.len()).filter(|&i| mask[i]).collect();
    slots.sort_by(|&a, &b| probs[b].total_cmp(&probs[a]).then(a.cmp(&b)));
    slots.truncate(k);
    slots.sort_unstable();
    slots
}

fn check_compatible(
    request: &SummaryRequest,
    params: &NetworkParams,
    table: &EmbeddingTable,
) -> Result<(), SummarizerError> {
    request.validate()?;
    if request.page_len != params.config.page_len {
        return Err(SummarizerError::InvalidRequest(format!(
            "request page_len {} does not match network page_len {}",
            request.page_len, params.config.page_len
        )));
    }
    if table.config().dim != params.config.embed_dim {
        return Err(SummarizerError::InvalidRequest(format!(
            "embedding dim {} does not match network embed_dim {}",
            table.config().dim,
            params.config.embed_dim
        )));
    }
    Ok(())
}

/// Scores the working sentences (given as positions into `doc`) page by
/// page. Returns the per-page top-`summary_len` keepers plus every real
/// slot's (probability, position) for global fallback ranking.
fn score_pages(
    working: &[usize],
    embedded: &[Vec<f64>],
    request: &SummaryRequest,
    params: &NetworkParams,
) -> Result<(Vec<usize>, Vec<(f64, usize)>), SummarizerError> {
    let mut kept = Vec::new();
    let mut candidates = Vec::new();
    for chunk in working.chunks(request.page_len) {
        let rows: Vec<Vec<f64>> = chunk.iter().map(|&pos| embedded[pos].clone()).collect();
        let page = Page::new(
            rows,
            chunk.to_vec(),
            request.page_len,
            params.config.embed_dim,
        )?;
        let pass = forward(&page, params)?;
        for slot in select_top_k(&pass.probs, page.mask(), request.summary_len) {
            kept.push(page.sentence_refs()[slot]);
        }
        for (slot, &pos) in page.sentence_refs().iter().enumerate() {
            candidates.push((pass.probs[slot], pos));
        }
    }
    Ok((kept, candidates))
}

fn embed_all(doc: &Document, table: &EmbeddingTable) -> Vec<Vec<f64>> {
    doc.sentences
        .iter()
        .map(|s| table.embed_sentence(&s.tokens))
        .collect()
}

/// One reduction pass: keeps the per-page top `summary_len` sentences and
/// returns them as a new document. The returned sentences keep their
/// original `index` values so later passes and reports can cite source
/// positions.
pub fn summarize_pass(
    doc: &Document,
    request: &SummaryRequest,
    params: &NetworkParams,
    table: &EmbeddingTable,
) -> Result<Document, SummarizerError> {
    check_compatible(request, params, table)?;
    if doc.is_empty() {
        return Err(SummarizerError::EmptyDocument);
    }
    let embedded = embed_all(doc, table);
    let working: Vec<usize> = (0..doc.len()).collect();
    let (kept, _) = score_pages(&working, &embedded, request, params)?;
    Ok(Document {
        sentences: kept.iter().map(|&pos| doc.sentences[pos].clone()).collect(),
        source_id: doc.source_id.clone(),
    })
}

/// Full recursive summarization. Documents no longer than the requested
/// length come back whole with zero passes; otherwise reduction passes run
/// until at most `summary_len` sentences remain.
pub fn summarize(
    doc: &Document,
    request: &SummaryRequest,
    params: &NetworkParams,
    table: &EmbeddingTable,
) -> Result<Summary, SummarizerError> {
    check_compatible(request, params, table)?;
    let x = request.summary_len;
    if doc.len() <= x {
        return Ok(Summary {
            indices: doc.sentences.iter().map(|s| s.index).collect(),
            text: join_raw(doc, (0..doc.len()).collect::<Vec<_>>().as_slice()),
            passes: 0,
        });
    }

    let embedded = embed_all(doc, table);
    let mut working: Vec<usize> = (0..doc.len()).collect();
    let mut passes = 0;
    while working.len() > x {
        let (kept, candidates) = score_pages(&working, &embedded, request, params)?;
        passes += 1;
        if kept.len() < working.len() {
            working = kept;
        } else {
            // Only reachable when page_len == summary_len with more than one
            // page: every page keeps all its sentences, so per-page selection
            // can never shrink the document. Cut to a single global top-X so
            // the recursion terminates.
            let mut ranked = candidates;
            ranked.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
            ranked.truncate(x);
            working = ranked.into_iter().map(|(_, pos)| pos).collect();
            working.sort_unstable();
        }
    }

    Ok(Summary {
        indices: working.iter().map(|&pos| doc.sentences[pos].index).collect(),
        text: join_raw(doc, &working),
        passes,
    })
}

fn join_raw(doc: &Document, positions: &[usize]) -> String {
    positions
        .iter()
        .map(|&pos| doc.sentences[pos].raw.as_str())
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::EmbeddingConfig;
    use crate::network::{init_params, NetworkConfig};
    use crate::textproc::Sentence;
    use proptest::prelude::*;

    const DIM: usize = 8;

    fn table() -> EmbeddingTable {
        EmbeddingTable::hashed(EmbeddingConfig {
            dim: DIM,
            bucket_count: 1000,
            ..EmbeddingConfig::default()
        })
        .unwrap()
    }

    fn params(page_len: usize) -> NetworkParams {
        init_params(&NetworkConfig {
            page_len,
            embed_dim: DIM,
            hidden_size: 4,
            ..NetworkConfig::default()
        })
        .unwrap()
    }

    fn doc(n: usize) -> Document {
        Document {
            sentences: (0..n)
                .map(|i| Sentence {
                    index: i,
                    raw: format!("sentence number {i}."),
                    tokens: vec!["sentence".into(), "number".into(), format!("{i}")],
                })
                .collect(),
            source_id: "test".into(),
        }
    }

    #[test]
    fn request_rejects_zero_and_oversized_lengths() {
        assert!(SummaryRequest::new(0, 40).is_err());
        assert!(SummaryRequest::new(41, 40).is_err());
        assert!(SummaryRequest::new(40, 40).is_ok());
    }

    #[test]
    fn paginate_splits_95_into_3_pages() {
        let pages = paginate(&doc(95), 40, &table());
        assert_eq!(pages.len(), 3);
        assert_eq!(pages[0].real_count(), 40);
        assert_eq!(pages[1].real_count(), 40);
        assert_eq!(pages[2].real_count(), 15);
        assert_eq!(pages[1].sentence_refs()[0], 40);
        assert_eq!(pages[2].sentence_refs(), (80..95).collect::<Vec<_>>());
        assert!(pages[2].mask()[14]);
        assert!(!pages[2].mask()[15]);
    }

    #[test]
    fn paginate_exact_fit_has_no_padding() {
        let pages = paginate(&doc(40), 40, &table());
        assert_eq!(pages.len(), 1);
        assert!(pages[0].mask().iter().all(|&m| m));
    }

    #[test]
    fn paginate_empty_document_has_no_pages() {
        assert!(paginate(&doc(0), 40, &table()).is_empty());
    }

    #[test]
    fn paginate_padded_rows_are_zero() {
        let pages = paginate(&doc(3), 5, &table());
        let flat = pages[0].flat_vectors();
        assert!(flat[3 * DIM..].iter().all(|&v| v == 0.0));
    }

    #[test]
    fn top_k_breaks_ties_toward_earlier_slot() {
        let probs = [0.1, 0.5, 0.2, 0.2];
        let mask = [true; 4];
        assert_eq!(select_top_k(&probs, &mask, 2), vec![1, 2]);
    }

    #[test]
    fn top_k_saturates_at_mask_size() {
        let probs = [0.3, 0.7, 0.0, 0.0];
        let mask = [true, true, false, false];
        assert_eq!(select_top_k(&probs, &mask, 5), vec![0, 1]);
    }

    #[test]
    fn top_k_all_equal_takes_earliest() {
        let probs = [0.25; 4];
        let mask = [true; 4];
        assert_eq!(select_top_k(&probs, &mask, 3), vec![0, 1, 2]);
    }

    #[test]
    fn pass_keeps_short_document_intact() {
        let d = doc(4);
        let request = SummaryRequest::new(5, 40).unwrap();
        let out = summarize_pass(&d, &request, &params(40), &table()).unwrap();
        assert_eq!(out, d);
    }

    #[test]
    fn pass_on_95_sentences_keeps_15() {
        let request = SummaryRequest::new(5, 40).unwrap();
        let out = summarize_pass(&doc(95), &request, &params(40), &table()).unwrap();
        assert_eq!(out.len(), 15);
        let indices: Vec<usize> = out.sentences.iter().map(|s| s.index).collect();
        assert!(indices.windows(2).all(|w| w[0] < w[1]));
        assert!(indices.iter().filter(|&&i| i < 40).count() == 5);
        assert!(indices.iter().filter(|&&i| (40..80).contains(&i)).count() == 5);
    }

    #[test]
    fn pass_single_page_selects_in_order() {
        let request = SummaryRequest::new(3, 40).unwrap();
        let out = summarize_pass(&doc(10), &request, &params(40), &table()).unwrap();
        assert_eq!(out.len(), 3);
        let indices: Vec<usize> = out.sentences.iter().map(|s| s.index).collect();
        assert!(indices.windows(2).all(|w| w[0] < w[1]));
        assert!(indices.iter().all(|&i| i < 10));
    }

    #[test]
    fn pass_rejects_empty_document() {
        let request = SummaryRequest::new(5, 40).unwrap();
        assert!(matches!(
            summarize_pass(&doc(0), &request, &params(40), &table()),
            Err(SummarizerError::EmptyDocument)
        ));
    }

    #[test]
    fn pass_output_retains_original_indices_when_chained() {
        let request = SummaryRequest::new(5, 40).unwrap();
        let p = params(40);
        let t = table();
        let first = summarize_pass(&doc(95), &request, &p, &t).unwrap();
        let second = summarize_pass(&first, &request, &p, &t).unwrap();
        assert_eq!(second.len(), 5);
        let first_set: Vec<usize> = first.sentences.iter().map(|s| s.index).collect();
        for s in &second.sentences {
            assert!(first_set.contains(&s.index));
            assert!(s.index < 95);
        }
    }

    #[test]
    fn summarize_95_takes_two_passes() {
        let request = SummaryRequest::new(5, 40).unwrap();
        let summary = summarize(&doc(95), &request, &params(40), &table()).unwrap();
        assert_eq!(summary.passes, 2);
        assert_eq!(summary.indices.len(), 5);
    }

    #[test]
    fn summarize_short_document_returns_everything() {
        let request = SummaryRequest::new(5, 40).unwrap();
        let summary = summarize(&doc(3), &request, &params(40), &table()).unwrap();
        assert_eq!(summary.indices, vec![0, 1, 2]);
        assert_eq!(summary.passes, 0);
        assert_eq!(
            summary.text,
            "sentence number 0. sentence number 1. sentence number 2."
        );
    }

    #[test]
    fn summarize_1700_takes_three_passes() {
        let request = SummaryRequest::new(5, 40).unwrap();
        let summary = summarize(&doc(1700), &request, &params(40), &table()).unwrap();
        assert_eq!(summary.passes, 3);
        assert_eq!(summary.indices.len(), 5);
    }

    #[test]
    fn summarize_empty_document() {
        let request = SummaryRequest::new(5, 40).unwrap();
        let summary = summarize(&doc(0), &request, &params(40), &table()).unwrap();
        assert!(summary.indices.is_empty());
        assert_eq!(summary.text, "");
        assert_eq!(summary.passes, 0);
    }

    #[test]
    fn summarize_terminates_when_page_len_equals_summary_len() {
        let request = SummaryRequest::new(5, 5).unwrap();
        let summary = summarize(&doc(7), &request, &params(5), &table()).unwrap();
        assert_eq!(summary.indices.len(), 5);
        assert_eq!(summary.passes, 1);
        assert!(summary.indices.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn summarize_is_deterministic() {
        let request = SummaryRequest::new(4, 10).unwrap();
        let p = params(10);
        let t = table();
        let a = summarize(&doc(137), &request, &p, &t).unwrap();
        let b = summarize(&doc(137), &request, &p, &t).unwrap();
        assert_eq!(a, b);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn summary_contracts_hold(
            n in 0usize..220,
            page_len in prop::sample::select(vec![5usize, 10, 40]),
            x_offset in 0usize..40,
        ) {
            let x = 1 + x_offset % page_len;
            let request = SummaryRequest::new(x, page_len).unwrap();
            let d = doc(n);
            let summary = summarize(&d, &request, &params(page_len), &table()).unwrap();

            prop_assert_eq!(summary.indices.len(), x.min(n));
            prop_assert!(summary.indices.windows(2).all(|w| w[0] < w[1]));
            for &i in &summary.indices {
                prop_assert!(i < n);
                prop_assert!(summary.text.contains(&d.sentences[i].raw));
            }
            if page_len > x && n > x {
                // Geometric shrink rate X/page_len only applies to full
                // pages; the short tail page loses nothing, so descending
                // through the final band costs up to page_len/(page_len - x)
                // extra linear passes on top of the log term.
                let geometric = ((n as f64 / x as f64).ln()
                    / (page_len as f64 / x as f64).ln())
                    .ceil() as usize;
                let tail = (page_len + (page_len - x) - 1) / (page_len - x);
                let bound = geometric + 1 + tail;
                prop_assert!(
                    summary.passes <= bound,
                    "passes {} exceeded bound {}",
                    summary.passes,
                    bound
                );
            }
        }
    }
}
