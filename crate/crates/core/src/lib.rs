//! Page-based extractive text summarization.
//!
//! A document is split into sentences, each sentence embedded as a fixed
//! 100-dimensional vector from hashed character n-grams, and consecutive
//! sentences grouped into fixed-width pages. A one-hidden-layer network
//! scores every page's sentence slots with a masked softmax; the top
//! sentences per page survive into a shorter document, and the process
//! repeats until the requested summary length is reached. Training,
//! ROUGE evaluation, corpus ingestion, and model persistence live here;
//! the `pagesum` binary wires them into a CLI.

pub mod corpus;
pub mod embedding;
pub mod hash;
pub mod model_io;
pub mod network;
pub mod rouge;
pub mod summarizer;
pub mod synth;
pub mod textproc;

pub use corpus::{
    build_training_pairs, load_corpus, make_labels, split_train_eval, CorpusError, CorpusPair,
    LoadedCorpus, SplitSpec, DEFAULT_BODY_TAG,
};
pub use embedding::{EmbeddingConfig, EmbeddingError, EmbeddingTable};
pub use model_io::{load_model, save_model, ModelIoError};
pub use network::{
    backward, cross_entropy, forward, grad_check, init_params, sgd_step, train, ForwardPass,
    Gradients, NetworkConfig, NetworkError, NetworkParams, Page, TargetDistribution, TrainedModel,
};
pub use rouge::{ngrams, rouge_n, sentence_precision, EvalRow, NgramMultiset, RougeScore};
pub use summarizer::{
    paginate, select_top_k, summarize, summarize_pass, Summary, SummaryRequest, SummarizerError,
};
pub use synth::{generate_corpus, SynthConfig};
pub use textproc::{split_sentences, tokenize, Document, Sentence};
