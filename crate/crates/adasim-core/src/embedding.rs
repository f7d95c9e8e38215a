//! Node embedding trainer: maximize the log-likelihood of each token given
//! the average of its window context, with a Huffman-coded hierarchical
//! softmax output layer and linearly decaying SGD.
//!
//! The default mode predicts the center token from its averaged context;
//! skip-gram mode instead predicts each context token from the center vector
//! (used by the edge-classifier baselines).

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use rand::Rng;
use thiserror::Error;

use crate::huffman::{HuffmanError, HuffmanTree};
use crate::rng::{domain, stream_rng};
use crate::walk::Corpus;

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum TrainMode {
    /// Predict the center token from the mean of its context vectors.
    ContextAverage,
    /// Predict each context token from the center vector.
    SkipGram,
}

#[derive(Clone, Debug)]
pub struct TrainConfig {
    pub dim: usize,
    pub window: usize,
    pub epochs: usize,
    pub alpha0: f64,
    pub alpha_min: f64,
    pub seed: u64,
    pub mode: TrainMode,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            dim: 128,
            window: 10,
            epochs: 1,
            alpha0: 0.025,
            alpha_min: 1e-4,
            seed: 42,
            mode: TrainMode::ContextAverage,
        }
    }
}

#[derive(Error, Debug)]
pub enum EmbeddingError {
    #[error(transparent)]
    Huffman(#[from] HuffmanError),
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("corpus vocabulary ({vocab}) does not match label table ({labels})")]
    LabelMismatch { vocab: usize, labels: usize },
    #[error("non-finite training loss at position {position}; aborting")]
    NonFiniteLoss { position: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("vocabulary mismatch: {0}")]
    Vocabulary(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Per-node feature vectors, row `i` holding the vector of token `i`.
#[derive(Clone, Debug)]
pub struct EmbeddingMatrix {
    vectors: Vec<f64>,
    dim: usize,
    labels: Vec<String>,
}

impl EmbeddingMatrix {
    pub fn new(vectors: Vec<f64>, dim: usize, labels: Vec<String>) -> EmbeddingMatrix {
        assert_eq!(vectors.len(), dim * labels.len());
        EmbeddingMatrix {
            vectors,
            dim,
            labels,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vector(&self, row: usize) -> &[f64] {
        &self.vectors[row * self.dim..(row + 1) * self.dim]
    }

    pub fn by_label(&self, label: &str) -> Option<&[f64]> {
        let row = self.labels.iter().position(|l| l == label)?;
        Some(self.vector(row))
    }

    /// Reorders rows to match `labels` (typically a graph's node order), so
    /// row `i` afterwards is the vector of node `i`.
    pub fn aligned_to(&self, labels: &[String]) -> Result<EmbeddingMatrix, EmbeddingError> {
        let index: HashMap<&str, usize> = self
            .labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let mut vectors = Vec::with_capacity(labels.len() * self.dim);
        for label in labels {
            let row = index.get(label.as_str()).ok_or_else(|| {
                EmbeddingError::Vocabulary(format!("node '{label}' missing from embedding"))
            })?;
            vectors.extend_from_slice(self.vector(*row));
        }
        Ok(EmbeddingMatrix::new(vectors, self.dim, labels.to_vec()))
    }

    /// Text format: header `<vocab> <dim>`, then one `<label> <v1> .. <vd>`
    /// row per token. Values round-trip exactly.
    pub fn save<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{} {}", self.labels.len(), self.dim)?;
        for (i, label) in self.labels.iter().enumerate() {
            write!(w, "{label}")?;
            for v in self.vector(i) {
                write!(w, " {v}")?;
            }
            writeln!(w)?;
        }
        Ok(())
    }

    pub fn save_file<P: AsRef<Path>>(&self, path: P) -> std::io::Result<()> {
        self.save(File::create(path)?)
    }

    pub fn load<R: Read>(reader: R) -> Result<EmbeddingMatrix, EmbeddingError> {
        let mut lines = BufReader::new(reader).lines();
        let header = lines.next().ok_or(EmbeddingError::Parse {
            line: 1,
            message: "missing header".into(),
        })??;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(EmbeddingError::Parse {
                line: 1,
                message: format!("header must be '<vocab> <dim>', got '{header}'"),
            });
        }
        let parse_usize = |s: &str| {
            s.parse::<usize>().map_err(|_| EmbeddingError::Parse {
                line: 1,
                message: format!("invalid header number '{s}'"),
            })
        };
        let vocab = parse_usize(parts[0])?;
        let dim = parse_usize(parts[1])?;

        let mut labels = Vec::with_capacity(vocab);
        let mut vectors = Vec::with_capacity(vocab * dim);
        for (lineno, line) in lines.enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let label = tokens.next().unwrap().to_string();
            let values: Result<Vec<f64>, _> = tokens.map(str::parse::<f64>).collect();
            let values = values.map_err(|e| EmbeddingError::Parse {
                line: lineno + 2,
                message: format!("bad float: {e}"),
            })?;
            if values.len() != dim {
                return Err(EmbeddingError::Parse {
                    line: lineno + 2,
                    message: format!("expected {dim} values, got {}", values.len()),
                });
            }
            labels.push(label);
            vectors.extend(values);
        }
        if labels.len() != vocab {
            return Err(EmbeddingError::Parse {
                line: labels.len() + 1,
                message: format!("header promised {vocab} rows, found {}", labels.len()),
            });
        }
        Ok(EmbeddingMatrix::new(vectors, dim, labels))
    }

    pub fn load_file<P: AsRef<Path>>(path: P) -> Result<EmbeddingMatrix, EmbeddingError> {
        EmbeddingMatrix::load(File::open(path)?)
    }
}

pub fn cosine(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        0.0
    } else {
        dot / (na * nb)
    }
}

fn sigmoid(z: f64) -> f64 {
    1.0 / (1.0 + (-z).exp())
}

/// 1024-entry sigmoid lookup over [-6, 6]; arguments outside are clipped to
/// the boundary, bounding every gradient step.
struct SigmoidTable {
    table: Vec<f64>,
}

const SIGMOID_TABLE_SIZE: usize = 1024;
const SIGMOID_MAX_ARG: f64 = 6.0;

impl SigmoidTable {
    fn new() -> SigmoidTable {
        let table = (0..SIGMOID_TABLE_SIZE)
            .map(|i| {
                let z = (i as f64 / (SIGMOID_TABLE_SIZE - 1) as f64 * 2.0 - 1.0) * SIGMOID_MAX_ARG;
                sigmoid(z)
            })
            .collect();
        SigmoidTable { table }
    }

    fn get(&self, z: f64) -> f64 {
        let clipped = z.clamp(-SIGMOID_MAX_ARG, SIGMOID_MAX_ARG);
        let pos = (clipped / SIGMOID_MAX_ARG + 1.0) / 2.0 * (SIGMOID_TABLE_SIZE - 1) as f64;
        self.table[pos.round() as usize]
    }
}

/// Huffman-structured output layer. The probability of a token is the
/// product of sigmoid branch decisions along its root-to-leaf path, so leaf
/// probabilities sum to one by construction.
pub struct HierarchicalSoftmax {
    tree: HuffmanTree,
    weights: Vec<f64>,
    dim: usize,
}

impl HierarchicalSoftmax {
    pub fn new(tree: HuffmanTree, dim: usize) -> HierarchicalSoftmax {
        let weights = vec![0.0; tree.internal_count() * dim];
        HierarchicalSoftmax { tree, weights, dim }
    }

    pub fn from_weights(tree: HuffmanTree, dim: usize, weights: Vec<f64>) -> HierarchicalSoftmax {
        assert_eq!(weights.len(), tree.internal_count() * dim);
        HierarchicalSoftmax { tree, weights, dim }
    }

    pub fn tree(&self) -> &HuffmanTree {
        &self.tree
    }

    fn weight(&self, node: usize) -> &[f64] {
        &self.weights[node * self.dim..(node + 1) * self.dim]
    }

    /// Exact log-probability of `token` given input vector `x`.
    pub fn log_prob(&self, token: usize, x: &[f64]) -> f64 {
        self.tree
            .code(token)
            .iter()
            .zip(self.tree.path(token))
            .map(|(&bit, &node)| {
                let z: f64 = x
                    .iter()
                    .zip(self.weight(node as usize))
                    .map(|(a, b)| a * b)
                    .sum();
                let signed = if bit { -z } else { z };
                sigmoid(signed).ln()
            })
            .sum()
    }

    /// Gradients of `-log P(token | x)`: with respect to `x`, and sparsely
    /// with respect to each internal vector on the path.
    pub fn neg_log_prob_grad(&self, token: usize, x: &[f64]) -> (Vec<f64>, Vec<(usize, Vec<f64>)>) {
        let mut grad_x = vec![0.0; self.dim];
        let mut grad_w = Vec::with_capacity(self.tree.path(token).len());
        for (&bit, &node) in self.tree.code(token).iter().zip(self.tree.path(token)) {
            let node = node as usize;
            let w = self.weight(node);
            let z: f64 = x.iter().zip(w).map(|(a, b)| a * b).sum();
            // d(-ln σ((1-2b)z))/dz = σ(z) - (1 - b)
            let target = if bit { 0.0 } else { 1.0 };
            let coeff = sigmoid(z) - target;
            for (gx, wi) in grad_x.iter_mut().zip(w) {
                *gx += coeff * wi;
            }
            grad_w.push((node, x.iter().map(|xi| coeff * xi).collect()));
        }
        (grad_x, grad_w)
    }
}

pub struct TrainedEmbedding {
    pub embedding: EmbeddingMatrix,
    /// `-log P` recorded at every trained position, in processing order.
    pub position_losses: Vec<f64>,
}

/// Trains token vectors on the corpus. Deterministic in `(corpus, cfg)`;
/// rows of the result are indexed by token id and labeled by `labels`.
pub fn train(
    corpus: &Corpus,
    labels: &[String],
    cfg: &TrainConfig,
) -> Result<TrainedEmbedding, EmbeddingError> {
    if corpus.total_tokens() == 0 {
        return Err(EmbeddingError::EmptyCorpus);
    }
    if labels.len() != corpus.vocab_size {
        return Err(EmbeddingError::LabelMismatch {
            vocab: corpus.vocab_size,
            labels: labels.len(),
        });
    }
    let vocab = corpus.vocab_size;
    let dim = cfg.dim;
    let tree = HuffmanTree::build(&corpus.frequencies)?;

    let mut rng = stream_rng(cfg.seed, domain::EMBED_INIT, 0, 0);
    let mut input: Vec<f64> = (0..vocab * dim)
        .map(|_| (rng.gen::<f64>() - 0.5) / dim as f64)
        .collect();
    let mut hs = HierarchicalSoftmax::new(tree, dim);
    let table = SigmoidTable::new();

    let total_positions = cfg.epochs as u64 * corpus.total_tokens();
    let mut processed = 0u64;
    let mut losses = Vec::with_capacity(total_positions as usize);

    let mut x = vec![0.0; dim];
    let mut accum = vec![0.0; dim];

    for _epoch in 0..cfg.epochs {
        for walk in &corpus.sequences {
            for i in 0..walk.len() {
                let alpha = (cfg.alpha0
                    - (cfg.alpha0 - cfg.alpha_min) * processed as f64 / total_positions as f64)
                    .max(cfg.alpha_min);
                processed += 1;

                let lo = i.saturating_sub(cfg.window);
                let hi = (i + cfg.window + 1).min(walk.len());
                let loss = match cfg.mode {
                    TrainMode::ContextAverage => train_position_cbow(
                        walk, i, lo, hi, &mut input, &mut hs, &table, alpha, dim, &mut x,
                        &mut accum,
                    ),
                    TrainMode::SkipGram => train_position_skipgram(
                        walk, i, lo, hi, &mut input, &mut hs, &table, alpha, dim, &mut accum,
                    ),
                };
                if let Some(loss) = loss {
                    if !loss.is_finite() {
                        return Err(EmbeddingError::NonFiniteLoss {
                            position: processed as usize - 1,
                        });
                    }
                    losses.push(loss);
                }
            }
        }
    }

    Ok(TrainedEmbedding {
        embedding: EmbeddingMatrix::new(input, dim, labels.to_vec()),
        position_losses: losses,
    })
}

/// One descent step along the Huffman path of `token` with input `x`.
/// Accumulates the input-side update into `accum` and returns `-log P`.
fn hs_step(
    hs: &mut HierarchicalSoftmax,
    table: &SigmoidTable,
    token: usize,
    x: &[f64],
    alpha: f64,
    accum: &mut [f64],
) -> f64 {
    let mut loss = 0.0;
    let dim = hs.dim;
    for (&bit, &node) in hs.tree.code(token).iter().zip(hs.tree.path(token)) {
        let node = node as usize;
        let row = node * dim..(node + 1) * dim;
        let z: f64 = x.iter().zip(&hs.weights[row.clone()]).map(|(a, b)| a * b).sum();
        let f = table.get(z);
        let target = if bit { 0.0 } else { 1.0 };
        loss -= if bit { 1.0 - f } else { f }.ln();
        let g = (target - f) * alpha;
        let w = &mut hs.weights[row];
        for ((a, wi), xi) in accum.iter_mut().zip(w.iter_mut()).zip(x) {
            *a += g * *wi;
            *wi += g * xi;
        }
    }
    loss
}

#[allow(clippy::too_many_arguments)]
fn train_position_cbow(
    walk: &[u32],
    i: usize,
    lo: usize,
    hi: usize,
    input: &mut [f64],
    hs: &mut HierarchicalSoftmax,
    table: &SigmoidTable,
    alpha: f64,
    dim: usize,
    x: &mut [f64],
    accum: &mut [f64],
) -> Option<f64> {
    let context: Vec<usize> = (lo..hi)
        .filter(|&j| j != i)
        .map(|j| walk[j] as usize)
        .collect();
    if context.is_empty() {
        return None;
    }
    x.fill(0.0);
    for &c in &context {
        for (xv, iv) in x.iter_mut().zip(&input[c * dim..(c + 1) * dim]) {
            *xv += iv;
        }
    }
    let count = context.len() as f64;
    for xv in x.iter_mut() {
        *xv /= count;
    }

    accum.fill(0.0);
    let loss = hs_step(hs, table, walk[i] as usize, x, alpha, accum);

    // dL/d(context vector) = (1/count) * dL/dx
    for &c in &context {
        for (iv, a) in input[c * dim..(c + 1) * dim].iter_mut().zip(accum.iter()) {
            *iv += a / count;
        }
    }
    Some(loss)
}

#[allow(clippy::too_many_arguments)]
fn train_position_skipgram(
    walk: &[u32],
    i: usize,
    lo: usize,
    hi: usize,
    input: &mut [f64],
    hs: &mut HierarchicalSoftmax,
    table: &SigmoidTable,
    alpha: f64,
    dim: usize,
    accum: &mut [f64],
) -> Option<f64> {
    let center = walk[i] as usize;
    let mut loss = 0.0;
    let mut pairs = 0;
    for j in lo..hi {
        if j == i {
            continue;
        }
        accum.fill(0.0);
        let x: Vec<f64> = input[center * dim..(center + 1) * dim].to_vec();
        loss += hs_step(hs, table, walk[j] as usize, &x, alpha, accum);
        for (iv, a) in input[center * dim..(center + 1) * dim]
            .iter_mut()
            .zip(accum.iter())
        {
            *iv += a;
        }
        pairs += 1;
    }
    if pairs == 0 {
        None
    } else {
        Some(loss / pairs as f64)
    }
}
