//! One-hidden-layer feedforward sentence scorer: tanh hidden layer, masked
//! softmax output over sentence slots, cross-entropy loss, analytic
//! backpropagation with per-example SGD, and a finite-difference gradient
//! checker.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Probabilities below this are clamped inside the log; keeps the loss
/// finite when a target slot received zero mass.
const LOG_EPS: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum NetworkError {
    #[error("invalid network config: {0}")]
    InvalidConfig(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid page: {0}")]
    InvalidPage(String),
    #[error("invalid target distribution: {0}")]
    InvalidTarget(String),
    #[error("empty training set")]
    EmptyTrainingSet,
}

/// Architecture and training hyperparameters.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkConfig {
    /// Sentence slots per page.
    pub page_len: usize,
    /// Dimensionality of each sentence vector.
    pub embed_dim: usize,
    pub hidden_size: usize,
    pub learning_rate: f64,
    pub epochs: usize,
    pub seed: u64,
}

impl Default for NetworkConfig {
    fn default() -> Self {
        Self {
            page_len: 40,
            embed_dim: 100,
            hidden_size: 500,
            learning_rate: 0.05,
            epochs: 20,
            seed: 42,
        }
    }
}

impl NetworkConfig {
    pub fn validate(&self) -> Result<(), NetworkError> {
        if self.page_len < 1 {
            return Err(NetworkError::InvalidConfig("page_len must be >= 1".into()));
        }
        if self.embed_dim < 1 {
            return Err(NetworkError::InvalidConfig("embed_dim must be >= 1".into()));
        }
        if self.hidden_size < 1 {
            return Err(NetworkError::InvalidConfig(
                "hidden_size must be >= 1".into(),
            ));
        }
        if !(self.learning_rate > 0.0) {
            return Err(NetworkError::InvalidConfig(
                "learning_rate must be > 0".into(),
            ));
        }
        if self.epochs < 1 {
            return Err(NetworkError::InvalidConfig("epochs must be >= 1".into()));
        }
        Ok(())
    }

    /// Length of the flattened input vector.
    pub fn input_dim(&self) -> usize {
        self.page_len * self.embed_dim
    }
}

/// Weights and biases of the two-layer network. Matrices are flat row-major:
/// `w1` is `hidden_size x input_dim`, `w2` is `page_len x hidden_size`.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkParams {
    pub w1: Vec<f64>,
    pub b1: Vec<f64>,
    pub w2: Vec<f64>,
    pub b2: Vec<f64>,
    pub config: NetworkConfig,
}

/// A fixed-width block of embedded sentence slots. Real sentences occupy a
/// prefix of the slots; the rest are zero-padded with a false mask.
#[derive(Debug, Clone, PartialEq)]
pub struct Page {
    vectors: Vec<f64>,
    mask: Vec<bool>,
    sentence_refs: Vec<usize>,
    page_len: usize,
    embed_dim: usize,
}

impl Page {
    /// Builds a page from the embedded rows of its real sentences and their
    /// original document indices. Rows must be nonempty, at most `page_len`,
    /// and each exactly `embed_dim` long.
    pub fn new(
        rows: Vec<Vec<f64>>,
        sentence_refs: Vec<usize>,
        page_len: usize,
        embed_dim: usize,
    ) -> Result<Self, NetworkError> {
        if rows.is_empty() {
            return Err(NetworkError::InvalidPage(
                "page must hold at least one real sentence".into(),
            ));
        }
        if rows.len() > page_len {
            return Err(NetworkError::InvalidPage(format!(
                "{} sentences exceed page_len {}",
                rows.len(),
                page_len
            )));
        }
        if rows.len() != sentence_refs.len() {
            return Err(NetworkError::InvalidPage(format!(
                "{} rows but {} sentence refs",
                rows.len(),
                sentence_refs.len()
            )));
        }
        let mut vectors = vec![0.0; page_len * embed_dim];
        for (slot, row) in rows.iter().enumerate() {
            if row.len() != embed_dim {
                return Err(NetworkError::InvalidPage(format!(
                    "row {} has {} components, expected {}",
                    slot,
                    row.len(),
                    embed_dim
                )));
            }
            vectors[slot * embed_dim..(slot + 1) * embed_dim].copy_from_slice(row);
        }
        let mut mask = vec![false; page_len];
        for m in mask.iter_mut().take(rows.len()) {
            *m = true;
        }
        Ok(Self {
            vectors,
            mask,
            sentence_refs,
            page_len,
            embed_dim,
        })
    }

    /// Number of real (non-padding) sentence slots.
    pub fn real_count(&self) -> usize {
        self.sentence_refs.len()
    }

    pub fn page_len(&self) -> usize {
        self.page_len
    }

    pub fn embed_dim(&self) -> usize {
        self.embed_dim
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    /// Original document indices of the real slots.
    pub fn sentence_refs(&self) -> &[usize] {
        &self.sentence_refs
    }

    /// Row-major flattening of the slot vectors, padding included.
    pub fn flat_vectors(&self) -> &[f64] {
        &self.vectors
    }

    /// Scales every slot vector in place. Test and experiment helper.
    pub fn scale_vectors(&mut self, factor: f64) {
        for v in &mut self.vectors {
            *v *= factor;
        }
    }
}

/// Supervision for one page: a probability distribution over its slots,
/// zero on padded slots.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetDistribution {
    probs: Vec<f64>,
}

impl TargetDistribution {
    /// Uniform distribution over the given (distinct) positive slots.
    pub fn uniform_over(positive_slots: &[usize], page_len: usize) -> Result<Self, NetworkError> {
        let mut slots: Vec<usize> = positive_slots.to_vec();
        slots.sort_unstable();
        slots.dedup();
        if slots.is_empty() {
            return Err(NetworkError::InvalidTarget(
                "at least one positive slot required".into(),
            ));
        }
        if let Some(&bad) = slots.iter().find(|&&s| s >= page_len) {
            return Err(NetworkError::InvalidTarget(format!(
                "slot {} out of range for page_len {}",
                bad, page_len
            )));
        }
        let mut probs = vec![0.0; page_len];
        let p = 1.0 / slots.len() as f64;
        for s in slots {
            probs[s] = p;
        }
        Ok(Self { probs })
    }

    pub fn one_hot(slot: usize, page_len: usize) -> Result<Self, NetworkError> {
        Self::uniform_over(&[slot], page_len)
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    fn validate_for(&self, page: &Page) -> Result<(), NetworkError> {
        if self.probs.len() != page.page_len() {
            return Err(NetworkError::InvalidTarget(format!(
                "target has {} slots, page has {}",
                self.probs.len(),
                page.page_len()
            )));
        }
        let mut sum = 0.0;
        for (slot, (&p, &real)) in self.probs.iter().zip(page.mask()).enumerate() {
            if p < 0.0 || !p.is_finite() {
                return Err(NetworkError::InvalidTarget(format!(
                    "negative or non-finite probability at slot {}",
                    slot
                )));
            }
            if !real && p != 0.0 {
                return Err(NetworkError::InvalidTarget(format!(
                    "nonzero probability {} on padded slot {}",
                    p, slot
                )));
            }
            sum += p;
        }
        if (sum - 1.0).abs() > 1e-9 {
            return Err(NetworkError::InvalidTarget(format!(
                "probabilities sum to {}, expected 1",
                sum
            )));
        }
        Ok(())
    }
}

/// Activations produced by one forward pass.
#[derive(Debug, Clone)]
pub struct ForwardPass {
    pub hidden: Vec<f64>,
    pub logits: Vec<f64>,
    /// Masked softmax over the logits: zero on padded slots.
    pub probs: Vec<f64>,
}

/// Loss gradients with the same shapes as [`NetworkParams`].
#[derive(Debug, Clone, PartialEq)]
pub struct Gradients {
    pub dw1: Vec<f64>,
    pub db1: Vec<f64>,
    pub dw2: Vec<f64>,
    pub db2: Vec<f64>,
}

/// Final parameters plus the per-epoch mean loss trace.
#[derive(Debug, Clone)]
pub struct TrainedModel {
    pub params: NetworkParams,
    pub epoch_losses: Vec<f64>,
}

/// Glorot-uniform weight init, zero biases. Deterministic given the seed.
pub fn init_params(config: &NetworkConfig) -> Result<NetworkParams, NetworkError> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let input_dim = config.input_dim();
    let w1_bound = (6.0 / (input_dim + config.hidden_size) as f64).sqrt();
    let w2_bound = (6.0 / (config.hidden_size + config.page_len) as f64).sqrt();
    let mut uniform = |bound: f64| (rng.random::<f64>() * 2.0 - 1.0) * bound;
    let w1 = (0..config.hidden_size * input_dim)
        .map(|_| uniform(w1_bound))
        .collect();
    let w2 = (0..config.page_len * config.hidden_size)
        .map(|_| uniform(w2_bound))
        .collect();
    Ok(NetworkParams {
        w1,
        b1: vec![0.0; config.hidden_size],
        w2,
        b2: vec![0.0; config.page_len],
        config: config.clone(),
    })
}

fn check_shapes(page: &Page, params: &NetworkParams) -> Result<(), NetworkError> {
    let c = &params.config;
    if page.page_len() != c.page_len || page.embed_dim() != c.embed_dim {
        return Err(NetworkError::ShapeMismatch(format!(
            "page is {}x{}, network expects {}x{}",
            page.page_len(),
            page.embed_dim(),
            c.page_len,
            c.embed_dim
        )));
    }
    if params.w1.len() != c.hidden_size * c.input_dim()
        || params.b1.len() != c.hidden_size
        || params.w2.len() != c.page_len * c.hidden_size
        || params.b2.len() != c.page_len
    {
        return Err(NetworkError::ShapeMismatch(
            "parameter tensors do not match config".into(),
        ));
    }
    Ok(())
}

/// Forward pass: `hidden = tanh(W1 x + b1)`, `logits = W2 hidden + b2`,
/// masked softmax over real slots.
pub fn forward(page: &Page, params: &NetworkParams) -> Result<ForwardPass, NetworkError> {
    check_shapes(page, params)?;
    let c = &params.config;
    let x = page.flat_vectors();
    let input_dim = c.input_dim();

    let mut hidden = vec![0.0; c.hidden_size];
    for (k, h) in hidden.iter_mut().enumerate() {
        let row = &params.w1[k * input_dim..(k + 1) * input_dim];
        let mut acc = params.b1[k];
        for (w, xi) in row.iter().zip(x) {
            acc += w * xi;
        }
        *h = acc.tanh();
    }

    let mut logits = vec![0.0; c.page_len];
    for (j, l) in logits.iter_mut().enumerate() {
        let row = &params.w2[j * c.hidden_size..(j + 1) * c.hidden_size];
        let mut acc = params.b2[j];
        for (w, h) in row.iter().zip(&hidden) {
            acc += w * h;
        }
        *l = acc;
    }

    let probs = masked_softmax(&logits, page.mask());
    Ok(ForwardPass {
        hidden,
        logits,
        probs,
    })
}

/// Softmax restricted to mask-true slots; mask-false slots get exactly zero.
pub fn masked_softmax(logits: &[f64], mask: &[bool]) -> Vec<f64> {
    debug_assert_eq!(logits.len(), mask.len());
    let max = logits
        .iter()
        .zip(mask)
        .filter(|(_, &m)| m)
        .map(|(&l, _)| l)
        .fold(f64::NEG_INFINITY, f64::max);
    let mut probs = vec![0.0; logits.len()];
    let mut sum = 0.0;
    for ((p, &l), &m) in probs.iter_mut().zip(logits).zip(mask) {
        if m {
            *p = (l - max).exp();
            sum += *p;
        }
    }
    for p in &mut probs {
        *p /= sum;
    }
    probs
}

/// Cross-entropy of the predicted distribution against the target.
/// Clamped at zero so a perfect prediction cannot go negative through the
/// log epsilon.
pub fn cross_entropy(probs: &[f64], target: &TargetDistribution) -> f64 {
    assert_eq!(probs.len(), target.len(), "probs/target length mismatch");
    let mut loss = 0.0;
    for (&p, &t) in probs.iter().zip(target.probs()) {
        if t > 0.0 {
            loss -= t * (p + LOG_EPS).ln();
        }
    }
    loss.max(0.0)
}

fn output_delta(probs: &[f64], target: &TargetDistribution) -> Vec<f64> {
    probs
        .iter()
        .zip(target.probs())
        .map(|(&p, &t)| p - t)
        .collect()
}

/// Analytic gradients of `cross_entropy(forward(page), target)` with respect
/// to every parameter.
pub fn backward(
    page: &Page,
    params: &NetworkParams,
    target: &TargetDistribution,
) -> Result<Gradients, NetworkError> {
    let (_, grads) = loss_and_gradients(page, params, target)?;
    Ok(grads)
}

/// One forward/backward pass returning both the loss and the gradients.
pub fn loss_and_gradients(
    page: &Page,
    params: &NetworkParams,
    target: &TargetDistribution,
) -> Result<(f64, Gradients), NetworkError> {
    check_shapes(page, params)?;
    target.validate_for(page)?;
    let c = &params.config;
    let pass = forward(page, params)?;
    let loss = cross_entropy(&pass.probs, target);

    // Output-layer delta: probs - target. Zero on padded slots since both
    // probabilities and targets are zero there.
    let delta_out = output_delta(&pass.probs, target);

    let mut dw2 = vec![0.0; c.page_len * c.hidden_size];
    for (j, &d) in delta_out.iter().enumerate() {
        let row = &mut dw2[j * c.hidden_size..(j + 1) * c.hidden_size];
        for (g, &h) in row.iter_mut().zip(&pass.hidden) {
            *g = d * h;
        }
    }
    let db2 = delta_out.clone();

    let mut delta_hidden = vec![0.0; c.hidden_size];
    for (j, &d) in delta_out.iter().enumerate() {
        let row = &params.w2[j * c.hidden_size..(j + 1) * c.hidden_size];
        for (dh, &w) in delta_hidden.iter_mut().zip(row) {
            *dh += d * w;
        }
    }
    for (dh, &h) in delta_hidden.iter_mut().zip(&pass.hidden) {
        *dh *= 1.0 - h * h;
    }

    let x = page.flat_vectors();
    let input_dim = c.input_dim();
    let mut dw1 = vec![0.0; c.hidden_size * input_dim];
    for (k, &dh) in delta_hidden.iter().enumerate() {
        let row = &mut dw1[k * input_dim..(k + 1) * input_dim];
        for (g, &xi) in row.iter_mut().zip(x) {
            *g = dh * xi;
        }
    }
    let db1 = delta_hidden;

    Ok((loss, Gradients { dw1, db1, dw2, db2 }))
}

/// Applies one SGD update: `p <- p - lr * dp` for every parameter.
pub fn sgd_step(
    params: &mut NetworkParams,
    grads: &Gradients,
    lr: f64,
) -> Result<(), NetworkError> {
    if grads.dw1.len() != params.w1.len()
        || grads.db1.len() != params.b1.len()
        || grads.dw2.len() != params.w2.len()
        || grads.db2.len() != params.b2.len()
    {
        return Err(NetworkError::ShapeMismatch(
            "gradient tensors do not match parameters".into(),
        ));
    }
    for (p, g) in params.w1.iter_mut().zip(&grads.dw1) {
        *p -= lr * g;
    }
    for (p, g) in params.b1.iter_mut().zip(&grads.db1) {
        *p -= lr * g;
    }
    for (p, g) in params.w2.iter_mut().zip(&grads.dw2) {
        *p -= lr * g;
    }
    for (p, g) in params.b2.iter_mut().zip(&grads.db2) {
        *p -= lr * g;
    }
    Ok(())
}

/// Fused backward + SGD update, bit-identical to [`backward`] followed by
/// [`sgd_step`] but without materializing the W1-sized gradient. Returns the
/// pre-update loss.
fn train_step(
    params: &mut NetworkParams,
    page: &Page,
    target: &TargetDistribution,
    lr: f64,
) -> Result<f64, NetworkError> {
    check_shapes(page, params)?;
    target.validate_for(page)?;
    let c = params.config.clone();
    let pass = forward(page, params)?;
    let loss = cross_entropy(&pass.probs, target);
    let delta_out = output_delta(&pass.probs, target);

    // Hidden delta must read W2 before it is updated.
    let mut delta_hidden = vec![0.0; c.hidden_size];
    for (j, &d) in delta_out.iter().enumerate() {
        let row = &params.w2[j * c.hidden_size..(j + 1) * c.hidden_size];
        for (dh, &w) in delta_hidden.iter_mut().zip(row) {
            *dh += d * w;
        }
    }
    for (dh, &h) in delta_hidden.iter_mut().zip(&pass.hidden) {
        *dh *= 1.0 - h * h;
    }

    for (j, &d) in delta_out.iter().enumerate() {
        let row = &mut params.w2[j * c.hidden_size..(j + 1) * c.hidden_size];
        for (w, &h) in row.iter_mut().zip(&pass.hidden) {
            *w -= lr * (d * h);
        }
        params.b2[j] -= lr * d;
    }

    let x = page.flat_vectors();
    let input_dim = c.input_dim();
    for (k, &dh) in delta_hidden.iter().enumerate() {
        let row = &mut params.w1[k * input_dim..(k + 1) * input_dim];
        for (w, &xi) in row.iter_mut().zip(x) {
            *w -= lr * (dh * xi);
        }
        params.b1[k] -= lr * dh;
    }
    Ok(loss)
}

/// Trains from a fresh initialization: per-example SGD over a seeded shuffle
/// of the pairs, for `config.epochs` epochs.
pub fn train(
    pairs: &[(Page, TargetDistribution)],
    config: &NetworkConfig,
) -> Result<TrainedModel, NetworkError> {
    config.validate()?;
    if pairs.is_empty() {
        return Err(NetworkError::EmptyTrainingSet);
    }
    let mut params = init_params(config)?;
    for (page, target) in pairs {
        check_shapes(page, &params)?;
        target.validate_for(page)?;
    }

    // Distinct stream from the init draw so reordering data cannot alias
    // the weight initialization.
    let mut shuffle_rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x5348_5546_464c_4531);
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    let mut epoch_losses = Vec::with_capacity(config.epochs);
    for _ in 0..config.epochs {
        order.shuffle(&mut shuffle_rng);
        let mut loss_sum = 0.0;
        for &idx in &order {
            let (page, target) = &pairs[idx];
            loss_sum += train_step(&mut params, page, target, config.learning_rate)?;
        }
        epoch_losses.push(loss_sum / pairs.len() as f64);
    }
    Ok(TrainedModel {
        params,
        epoch_losses,
    })
}

fn loss_at(
    params: &NetworkParams,
    page: &Page,
    target: &TargetDistribution,
) -> Result<f64, NetworkError> {
    let pass = forward(page, params)?;
    Ok(cross_entropy(&pass.probs, target))
}

#[derive(Clone, Copy)]
enum Tensor {
    W1,
    B1,
    W2,
    B2,
}

/// Compares analytic gradients against central finite differences on a
/// deterministic sample of parameter coordinates (at least 200, or all of
/// them for small networks) and returns the maximum relative error.
pub fn grad_check(
    params: &NetworkParams,
    page: &Page,
    target: &TargetDistribution,
    eps: f64,
) -> Result<f64, NetworkError> {
    grad_check_impl(params, page, target, eps, None)
}

/// [`grad_check`] with a fault injected into one analytic gradient
/// coordinate. Exists to verify the checker actually detects a broken
/// gradient; a nonzero fault must push the reported error above threshold.
pub fn grad_check_with_fault(
    params: &NetworkParams,
    page: &Page,
    target: &TargetDistribution,
    eps: f64,
    fault: f64,
) -> Result<f64, NetworkError> {
    grad_check_impl(params, page, target, eps, Some(fault))
}

fn grad_check_impl(
    params: &NetworkParams,
    page: &Page,
    target: &TargetDistribution,
    eps: f64,
    fault: Option<f64>,
) -> Result<f64, NetworkError> {
    assert!(eps > 0.0, "eps must be positive");
    let grads = backward(page, params, target)?;

    let lens = [
        grads.dw1.len(),
        grads.db1.len(),
        grads.dw2.len(),
        grads.db2.len(),
    ];
    let tensors = [Tensor::W1, Tensor::B1, Tensor::W2, Tensor::B2];
    // Per-tensor quotas keep the small bias vectors represented even though
    // W1 holds nearly all coordinates.
    let mut amounts = [
        80.min(lens[0]),
        40.min(lens[1]),
        60.min(lens[2]),
        20.min(lens[3]),
    ];
    let mut sampled: usize = amounts.iter().sum();
    for t in 0..4 {
        if sampled >= 200 {
            break;
        }
        let extra = (200 - sampled).min(lens[t] - amounts[t]);
        amounts[t] += extra;
        sampled += extra;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(params.config.seed ^ 0x6772_6164_6368_6b21);
    let mut coords: Vec<(Tensor, usize)> = Vec::with_capacity(sampled);
    for (t, (&amount, &len)) in amounts.iter().zip(&lens).enumerate() {
        let picked = rand::seq::index::sample(&mut rng, len, amount);
        coords.extend(picked.iter().map(|i| (tensors[t], i)));
    }

    let mut scratch = params.clone();
    let mut max_rel = 0.0_f64;
    for (pos, &(tensor, idx)) in coords.iter().enumerate() {
        let mut analytic = match tensor {
            Tensor::W1 => grads.dw1[idx],
            Tensor::B1 => grads.db1[idx],
            Tensor::W2 => grads.dw2[idx],
            Tensor::B2 => grads.db2[idx],
        };
        if pos == 0 {
            if let Some(f) = fault {
                analytic += f;
            }
        }
        let slot: &mut f64 = match tensor {
            Tensor::W1 => &mut scratch.w1[idx],
            Tensor::B1 => &mut scratch.b1[idx],
            Tensor::W2 => &mut scratch.w2[idx],
            Tensor::B2 => &mut scratch.b2[idx],
        };
        let saved = *slot;
        *slot = saved + eps;
        let loss_plus = loss_at(&scratch, page, target)?;
        let slot: &mut f64 = match tensor {
            Tensor::W1 => &mut scratch.w1[idx],
            Tensor::B1 => &mut scratch.b1[idx],
            Tensor::W2 => &mut scratch.w2[idx],
            Tensor::B2 => &mut scratch.b2[idx],
        };
        *slot = saved - eps;
        let loss_minus = loss_at(&scratch, page, target)?;
        let slot: &mut f64 = match tensor {
            Tensor::W1 => &mut scratch.w1[idx],
            Tensor::B1 => &mut scratch.b1[idx],
            Tensor::W2 => &mut scratch.w2[idx],
            Tensor::B2 => &mut scratch.b2[idx],
        };
        *slot = saved;

        let numeric = (loss_plus - loss_minus) / (2.0 * eps);
        let rel = (analytic - numeric).abs() / analytic.abs().max(numeric.abs()).max(1e-8);
        max_rel = max_rel.max(rel);
    }
    Ok(max_rel)
}
