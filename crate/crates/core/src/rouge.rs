//! ROUGE-N recall scoring with clipped n-gram counts, the sentence-level
//! precision metric, and evaluation report formatting.

use std::collections::{HashMap, HashSet};

/// Multiset of the contiguous n-token runs of a sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NgramMultiset {
    counts: HashMap<Vec<String>, usize>,
    n: usize,
}

impl NgramMultiset {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn count(&self, gram: &[String]) -> usize {
        self.counts.get(gram).copied().unwrap_or(0)
    }

    /// Total number of n-grams with multiplicity.
    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<String>, usize)> {
        self.counts.iter().map(|(k, &v)| (k, v))
    }

    pub fn distinct(&self) -> usize {
        self.counts.len()
    }
}

/// Extracts all contiguous runs of `n` tokens with multiplicity. Fewer than
/// `n` tokens yields an empty multiset.
pub fn ngrams(tokens: &[String], n: usize) -> NgramMultiset {
    assert!(n >= 1, "gram order must be at least 1");
    let mut counts = HashMap::new();
    if tokens.len() >= n {
        for window in tokens.windows(n) {
            *counts.entry(window.to_vec()).or_insert(0) += 1;
        }
    }
    NgramMultiset { counts, n }
}

/// Result of scoring one candidate against one reference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RougeScore {
    /// `overlap_count / reference_count`, or 0 for an empty reference.
    pub recall: f64,
    pub overlap_count: usize,
    pub reference_count: usize,
}

impl RougeScore {
    fn zero() -> Self {
        Self {
            recall: 0.0,
            overlap_count: 0,
            reference_count: 0,
        }
    }
}

/// ROUGE-N recall: clipped n-gram overlap divided by the reference n-gram
/// total. An empty reference scores 0 with `reference_count` 0.
pub fn rouge_n(candidate: &[String], reference: &[String], n: usize) -> RougeScore {
    let cand = ngrams(candidate, n);
    let reference = ngrams(reference, n);
    let reference_count = reference.total();
    if reference_count == 0 {
        return RougeScore::zero();
    }
    let overlap_count: usize = reference
        .iter()
        .map(|(gram, count)| count.min(cand.count(gram)))
        .sum();
    RougeScore {
        recall: overlap_count as f64 / reference_count as f64,
        overlap_count,
        reference_count,
    }
}

/// Scores against several references independently and reports the maximum
/// recall. Extension beyond single-reference scoring; no references scores 0.
pub fn rouge_n_multi(candidate: &[String], references: &[Vec<String>], n: usize) -> RougeScore {
    references
        .iter()
        .map(|r| rouge_n(candidate, r, n))
        .max_by(|a, b| a.recall.total_cmp(&b.recall))
        .unwrap_or_else(RougeScore::zero)
}

/// Fraction of selected sentence indices that appear in the reference
/// selection. Inputs are treated as sets; empty selection scores 0.
pub fn sentence_precision(selected_indices: &[usize], reference_indices: &[usize]) -> f64 {
    let selected: HashSet<usize> = selected_indices.iter().copied().collect();
    if selected.is_empty() {
        return 0.0;
    }
    let reference: HashSet<usize> = reference_indices.iter().copied().collect();
    let hits = selected.intersection(&reference).count();
    hits as f64 / selected.len() as f64
}

/// One evaluated document in a report.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalRow {
    pub doc_id: String,
    pub rouge1_recall: f64,
    pub rouge2_recall: f64,
    pub precision: f64,
}

fn mean_row(rows: &[EvalRow]) -> EvalRow {
    let n = rows.len() as f64;
    EvalRow {
        doc_id: "mean".into(),
        rouge1_recall: rows.iter().map(|r| r.rouge1_recall).sum::<f64>() / n,
        rouge2_recall: rows.iter().map(|r| r.rouge2_recall).sum::<f64>() / n,
        precision: rows.iter().map(|r| r.precision).sum::<f64>() / n,
    }
}

/// CSV report: header, one row per document, then a mean row. LF line
/// endings, `.` decimal separator.
pub fn csv_report(rows: &[EvalRow]) -> String {
    let mut out = String::from("doc_id,rouge1_recall,rouge2_recall,precision\n");
    let emit = |out: &mut String, r: &EvalRow| {
        out.push_str(&format!(
            "{},{:.6},{:.6},{:.6}\n",
            r.doc_id, r.rouge1_recall, r.rouge2_recall, r.precision
        ));
    };
    for row in rows {
        emit(&mut out, row);
    }
    if !rows.is_empty() {
        emit(&mut out, &mean_row(rows));
    }
    out
}

/// Plain-text aligned table for terminals. The precision column is labeled
/// as reconstructed because that metric is a declared reconstruction, not a
/// published formula.
pub fn text_report(rows: &[EvalRow]) -> String {
    let precision_head = "sentence-precision (reconstructed)";
    let id_width = rows
        .iter()
        .map(|r| r.doc_id.len())
        .chain(["doc_id".len(), "mean".len()])
        .max()
        .unwrap();
    let mut out = format!(
        "{:<id_width$}  {:>8}  {:>8}  {:>prec_width$}\n",
        "doc_id",
        "rouge-1",
        "rouge-2",
        precision_head,
        id_width = id_width,
        prec_width = precision_head.len(),
    );
    let mut emit = |r: &EvalRow| {
        out.push_str(&format!(
            "{:<id_width$}  {:>8.4}  {:>8.4}  {:>prec_width$.4}\n",
            r.doc_id,
            r.rouge1_recall,
            r.rouge2_recall,
            r.precision,
            id_width = id_width,
            prec_width = precision_head.len(),
        ));
    };
    for row in rows {
        emit(row);
    }
    if !rows.is_empty() {
        emit(&mean_row(rows));
    }
    out
}
