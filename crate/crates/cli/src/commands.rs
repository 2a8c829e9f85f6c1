//! The six subcommands and their exit-code mapping.

use std::path::{Path, PathBuf};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pagesum_core::rouge::{csv_report, rouge_n, sentence_precision, text_report, EvalRow};
use pagesum_core::{
    build_training_pairs, grad_check, init_params, load_corpus, load_model, save_model,
    split_train_eval, summarize, train, CorpusPair, EmbeddingTable, ModelIoError, NetworkConfig,
    NetworkParams, Page, SplitSpec, SummaryRequest, SynthConfig, TargetDistribution,
};

use crate::config::RunConfig;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_UNWRITABLE: i32 = 3;
pub const EXIT_CORRUPT_MODEL: i32 = 4;

/// A command failure: what to print and which code to exit with.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

pub type CmdResult = Result<(), Failure>;

fn input_failure(err: impl std::fmt::Display) -> Failure {
    Failure::new(EXIT_BAD_INPUT, err.to_string())
}

fn output_failure(err: impl std::fmt::Display) -> Failure {
    Failure::new(EXIT_UNWRITABLE, err.to_string())
}

/// A model file that exists but fails validation exits 4; a file we cannot
/// read at all is a missing input.
fn model_failure(err: ModelIoError) -> Failure {
    match err {
        ModelIoError::Io { .. } => Failure::new(EXIT_BAD_INPUT, err.to_string()),
        _ => Failure::new(EXIT_CORRUPT_MODEL, err.to_string()),
    }
}

fn split_spec(cfg: &RunConfig) -> SplitSpec {
    SplitSpec { train_fraction: cfg.train_fraction, seed: cfg.seed }
}

fn load_split(cfg: &RunConfig) -> Result<(Vec<CorpusPair>, Vec<CorpusPair>), Failure> {
    let loaded = load_corpus(&cfg.corpus_root, &cfg.body_tag).map_err(input_failure)?;
    for note in &loaded.notes {
        eprintln!("note: {note}");
    }
    split_train_eval(loaded.pairs, &split_spec(cfg)).map_err(input_failure)
}

fn training_examples(
    pairs: &[CorpusPair],
    net_config: &NetworkConfig,
    table: &EmbeddingTable,
) -> (Vec<(Page, TargetDistribution)>, usize) {
    let mut examples = Vec::new();
    let mut dropped = 0;
    for pair in pairs {
        let (mut ex, d) = build_training_pairs(pair, net_config, table);
        examples.append(&mut ex);
        dropped += d;
    }
    (examples, dropped)
}

fn eval_rows(
    pairs: &[CorpusPair],
    request: &SummaryRequest,
    params: &NetworkParams,
    table: &EmbeddingTable,
) -> Result<Vec<EvalRow>, Failure> {
    let mut rows = Vec::with_capacity(pairs.len());
    for pair in pairs {
        let summary = summarize(&pair.document, request, params, table).map_err(input_failure)?;
        let candidate: Vec<String> = summary
            .indices
            .iter()
            .flat_map(|&i| pair.document.sentences[i].tokens.iter().cloned())
            .collect();
        let reference = pair.reference_summary.all_tokens();
        rows.push(EvalRow {
            doc_id: pair.document.source_id.clone(),
            rouge1_recall: rouge_n(&candidate, &reference, 1).recall,
            rouge2_recall: rouge_n(&candidate, &reference, 2).recall,
            precision: sentence_precision(&summary.indices, &pair.positive_indices()),
        });
    }
    rows.sort_by(|a, b| a.doc_id.cmp(&b.doc_id));
    Ok(rows)
}

/// Load the corpus, train on the training split, report per-epoch mean
/// loss, and write the model file.
pub fn train_cmd(cfg: &RunConfig) -> CmdResult {
    let (train_pairs, eval_pairs) = load_split(cfg)?;
    println!(
        "corpus: {} training documents, {} held out",
        train_pairs.len(),
        eval_pairs.len()
    );
    let net_config = cfg.network_config();
    let table = EmbeddingTable::hashed(cfg.embedding_config()).map_err(input_failure)?;
    let (examples, dropped) = training_examples(&train_pairs, &net_config, &table);
    if dropped > 0 {
        eprintln!("note: dropped {dropped} pages with no labeled sentence");
    }
    println!("training on {} pages", examples.len());
    let model = train(&examples, &net_config).map_err(input_failure)?;
    for (epoch, loss) in model.epoch_losses.iter().enumerate() {
        println!("epoch {:>3}: mean loss {:.6}", epoch + 1, loss);
    }
    save_model(&model.params, &cfg.model_path).map_err(output_failure)?;
    println!("model written to {}", cfg.model_path.display());
    Ok(())
}

/// Summarize one plain-text file with a trained model, one sentence per
/// line. With `indices`, append each sentence's original position.
pub fn summarize_cmd(cfg: &RunConfig, input: &Path, show_indices: bool) -> CmdResult {
    let params = load_model(&cfg.model_path).map_err(model_failure)?;
    let text = std::fs::read_to_string(input)
        .map_err(|e| input_failure(format!("cannot read {}: {e}", input.display())))?;
    let doc = pagesum_core::split_sentences(&text);
    if doc.is_empty() {
        return Err(input_failure(format!("{}: no sentences found", input.display())));
    }
    let request =
        SummaryRequest::new(cfg.summary_len, params.config.page_len).map_err(input_failure)?;
    let table = EmbeddingTable::hashed(cfg.embedding_config_for(params.config.embed_dim))
        .map_err(input_failure)?;
    let summary = summarize(&doc, &request, &params, &table).map_err(input_failure)?;
    for &idx in &summary.indices {
        let raw = &doc.sentences[idx].raw;
        if show_indices {
            println!("{raw}\t{idx}");
        } else {
            println!("{raw}");
        }
    }
    Ok(())
}

/// Score the held-out split with a trained model: CSV to disk, aligned
/// table to stdout.
pub fn eval_cmd(cfg: &RunConfig) -> CmdResult {
    let params = load_model(&cfg.model_path).map_err(model_failure)?;
    let (_, eval_pairs) = load_split(cfg)?;
    if eval_pairs.is_empty() {
        return Err(input_failure("no documents in the evaluation split"));
    }
    let request =
        SummaryRequest::new(cfg.summary_len, params.config.page_len).map_err(input_failure)?;
    let table = EmbeddingTable::hashed(cfg.embedding_config_for(params.config.embed_dim))
        .map_err(input_failure)?;
    let rows = eval_rows(&eval_pairs, &request, &params, &table)?;
    let csv_path = cfg.csv_out.clone().unwrap_or_else(|| PathBuf::from("eval.csv"));
    std::fs::write(&csv_path, csv_report(&rows))
        .map_err(|e| output_failure(format!("cannot write {}: {e}", csv_path.display())))?;
    print!("{}", text_report(&rows));
    println!("csv written to {}", csv_path.display());
    Ok(())
}

/// Train a fresh model per page length (shared seed and split) and report
/// mean ROUGE over the held-out split for each.
pub fn sweep_cmd(cfg: &RunConfig, page_lens: &[usize]) -> CmdResult {
    if page_lens.is_empty() {
        return Err(input_failure("sweep needs at least one page_len"));
    }
    let mut grid = page_lens.to_vec();
    grid.sort_unstable();
    grid.dedup();
    for &p in &grid {
        if p < cfg.summary_len {
            return Err(input_failure(format!(
                "page_len {p} is smaller than summary_len {}",
                cfg.summary_len
            )));
        }
    }
    let (train_pairs, eval_pairs) = load_split(cfg)?;
    if eval_pairs.is_empty() {
        return Err(input_failure("no documents in the evaluation split"));
    }
    let table = EmbeddingTable::hashed(cfg.embedding_config()).map_err(input_failure)?;
    let mut csv = String::from("page_len,mean_rouge1,mean_rouge2\n");
    for &p in &grid {
        let net_config = NetworkConfig { page_len: p, ..cfg.network_config() };
        let (examples, _) = training_examples(&train_pairs, &net_config, &table);
        let model = train(&examples, &net_config).map_err(input_failure)?;
        let request = SummaryRequest::new(cfg.summary_len, p).map_err(input_failure)?;
        let rows = eval_rows(&eval_pairs, &request, &model.params, &table)?;
        let n = rows.len() as f64;
        let mean_r1 = rows.iter().map(|r| r.rouge1_recall).sum::<f64>() / n;
        let mean_r2 = rows.iter().map(|r| r.rouge2_recall).sum::<f64>() / n;
        println!("page_len {p:>4}: mean rouge1 {mean_r1:.4}, mean rouge2 {mean_r2:.4}");
        csv.push_str(&format!("{p},{mean_r1:.6},{mean_r2:.6}\n"));
    }
    let csv_path = cfg.csv_out.clone().unwrap_or_else(|| PathBuf::from("sweep.csv"));
    std::fs::write(&csv_path, csv)
        .map_err(|e| output_failure(format!("cannot write {}: {e}", csv_path.display())))?;
    println!("csv written to {}", csv_path.display());
    Ok(())
}

const GRADCHECK_INSTANCES: usize = 20;
const GRADCHECK_EPS: f64 = 1e-5;
const GRADCHECK_TOL: f64 = 1e-4;

/// Compare analytic gradients with central differences on seeded random
/// instances. Exits nonzero when the worst relative error is over
/// tolerance. `corrupt_analytic` injects a deliberate gradient fault on
/// the first instance so the detector itself can be exercised.
pub fn gradcheck_cmd(cfg: &RunConfig, corrupt_analytic: bool) -> CmdResult {
    let check_failure = |e: pagesum_core::NetworkError| Failure::new(EXIT_CHECK_FAILED, e.to_string());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut max_err = 0.0f64;
    for i in 0..GRADCHECK_INSTANCES {
        let net = NetworkConfig {
            page_len: rng.random_range(2..=8),
            embed_dim: rng.random_range(3..=10),
            hidden_size: rng.random_range(3..=12),
            learning_rate: 0.05,
            epochs: 1,
            seed: cfg.seed.wrapping_add(i as u64),
        };
        let params = init_params(&net).map_err(check_failure)?;
        let real = rng.random_range(1..=net.page_len);
        let rows: Vec<Vec<f64>> = (0..real)
            .map(|_| (0..net.embed_dim).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect())
            .collect();
        let page = Page::new(rows, (0..real).collect(), net.page_len, net.embed_dim)
            .map_err(check_failure)?;
        let subset_len = rng.random_range(1..=real);
        let subset = rand::seq::index::sample(&mut rng, real, subset_len).into_vec();
        let target =
            TargetDistribution::uniform_over(&subset, net.page_len).map_err(check_failure)?;
        let err = if corrupt_analytic && i == 0 {
            pagesum_core::network::grad_check_with_fault(
                &params,
                &page,
                &target,
                GRADCHECK_EPS,
                0.5,
            )
            .map_err(check_failure)?
        } else {
            grad_check(&params, &page, &target, GRADCHECK_EPS).map_err(check_failure)?
        };
        println!("instance {i:>2}: max rel err {err:.3e}");
        max_err = max_err.max(err);
    }
    println!(
        "max rel err over {GRADCHECK_INSTANCES} instances: {max_err:.3e} (tolerance {GRADCHECK_TOL:.0e})"
    );
    if max_err <= GRADCHECK_TOL {
        Ok(())
    } else {
        Err(Failure::new(
            EXIT_CHECK_FAILED,
            format!("gradient check failed: {max_err:.3e} > {GRADCHECK_TOL:.0e}"),
        ))
    }
}

/// Generate a synthetic labeled corpus under the configured corpus root.
pub fn gencorpus_cmd(cfg: &RunConfig, n_docs: usize) -> CmdResult {
    let synth = SynthConfig {
        n_docs,
        summary_len: cfg.summary_len,
        seed: cfg.seed,
        ..SynthConfig::default()
    };
    synth.validate().map_err(input_failure)?;
    pagesum_core::generate_corpus(&cfg.corpus_root, &synth).map_err(output_failure)?;
    println!("wrote {} documents under {}", n_docs, cfg.corpus_root.display());
    Ok(())
}
