//! Random-walk corpora: the "documents" the embedding trainer consumes.
//!
//! Uniform first-order walks by default; second-order biased walks for the
//! return/in-out sampling baseline. Walk streams are derived from
//! `(seed, pass, root)` so generation order never changes the output.

use std::collections::HashMap;
use std::io::Write;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::graph::{Graph, NodeId};
use crate::rng::{domain, stream_rng};

#[derive(Copy, Clone, PartialEq, Debug)]
pub struct WalkBias {
    /// Return parameter p: weight 1/p for stepping back to the previous node.
    pub return_p: f64,
    /// In-out parameter q: weight 1/q for stepping to a node not adjacent to
    /// the previous one.
    pub inout_q: f64,
}

#[derive(Copy, Clone, Debug)]
pub struct WalkConfig {
    pub walks_per_node: usize,
    pub walk_length: usize,
    pub seed: u64,
    pub bias: Option<WalkBias>,
}

impl Default for WalkConfig {
    fn default() -> Self {
        WalkConfig {
            walks_per_node: 10,
            walk_length: 80,
            seed: 42,
            bias: None,
        }
    }
}

/// Token sequences plus per-token occurrence counts. Tokens are node indices
/// for node corpora and canonical edge indices for edge corpora.
#[derive(Clone, Debug, PartialEq)]
pub struct Corpus {
    pub sequences: Vec<Vec<u32>>,
    pub vocab_size: usize,
    pub frequencies: Vec<u64>,
}

impl Corpus {
    fn from_sequences(sequences: Vec<Vec<u32>>, vocab_size: usize) -> Corpus {
        let mut frequencies = vec![0u64; vocab_size];
        for seq in &sequences {
            for &t in seq {
                frequencies[t as usize] += 1;
            }
        }
        Corpus {
            sequences,
            vocab_size,
            frequencies,
        }
    }

    pub fn total_tokens(&self) -> u64 {
        self.frequencies.iter().sum()
    }

    /// One walk per line, tokens rendered through `labels`.
    pub fn write_text<W: Write>(&self, labels: &[String], mut w: W) -> std::io::Result<()> {
        for seq in &self.sequences {
            let line: Vec<&str> = seq.iter().map(|&t| labels[t as usize].as_str()).collect();
            writeln!(w, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Error, Debug)]
pub enum WalkError {
    #[error("corpus corrupt: consecutive tokens {0} and {1} are not adjacent in the graph")]
    NonAdjacentStep(String, String),
    #[error("biased walk requires bias parameters")]
    MissingBias,
    #[error("uniform walk must not carry bias parameters")]
    UnexpectedBias,
}

/// Uniform random walks: `walks_per_node` passes over a seeded shuffle of the
/// nodes, each walk taking up to `walk_length` nodes and stopping early only
/// at an isolated node.
pub fn random_walks(g: &Graph, cfg: &WalkConfig) -> Result<Corpus, WalkError> {
    if cfg.bias.is_some() {
        return Err(WalkError::UnexpectedBias);
    }
    Ok(walk_corpus(g, cfg, None))
}

/// Second-order biased walks. From current node `v` with previous node `t`,
/// candidate `x` gets unnormalized weight `1/p` if `x = t`, `1` if `x` is
/// adjacent to `t`, and `1/q` otherwise. `p = q = 1` matches
/// [`random_walks`] in distribution.
pub fn biased_walks(g: &Graph, cfg: &WalkConfig) -> Result<Corpus, WalkError> {
    let bias = cfg.bias.ok_or(WalkError::MissingBias)?;
    Ok(walk_corpus(g, cfg, Some(bias)))
}

fn walk_corpus(g: &Graph, cfg: &WalkConfig, bias: Option<WalkBias>) -> Corpus {
    let mut sequences = Vec::with_capacity(cfg.walks_per_node * g.node_count());
    for pass in 0..cfg.walks_per_node {
        let mut order: Vec<NodeId> = g.nodes().collect();
        order.shuffle(&mut stream_rng(cfg.seed, domain::WALK_ORDER, pass as u64, 0));
        for root in order {
            let mut rng = stream_rng(cfg.seed, domain::WALK_STEP, pass as u64, root.index() as u64);
            let walk = match bias {
                None => uniform_walk(g, root, cfg.walk_length, &mut rng),
                Some(b) => biased_walk(g, root, cfg.walk_length, b, &mut rng),
            };
            sequences.push(walk);
        }
    }
    Corpus::from_sequences(sequences, g.node_count())
}

fn uniform_walk<R: Rng>(g: &Graph, root: NodeId, length: usize, rng: &mut R) -> Vec<u32> {
    let mut walk = Vec::with_capacity(length);
    let mut current = root;
    walk.push(current.index() as u32);
    while walk.len() < length {
        let nbrs = g.neighbors(current);
        if nbrs.is_empty() {
            break;
        }
        current = nbrs[rng.gen_range(0..nbrs.len())];
        walk.push(current.index() as u32);
    }
    walk
}

fn biased_walk<R: Rng>(
    g: &Graph,
    root: NodeId,
    length: usize,
    bias: WalkBias,
    rng: &mut R,
) -> Vec<u32> {
    let mut walk = Vec::with_capacity(length);
    walk.push(root.index() as u32);
    if length == 1 {
        return walk;
    }
    let first = g.neighbors(root);
    if first.is_empty() {
        return walk;
    }
    let mut prev = root;
    let mut current = first[rng.gen_range(0..first.len())];
    walk.push(current.index() as u32);
    while walk.len() < length {
        let nbrs = g.neighbors(current);
        if nbrs.is_empty() {
            break;
        }
        let weights = step_weights(g, prev, current, bias);
        let next = nbrs[sample_weighted(&weights, rng)];
        prev = current;
        current = next;
        walk.push(current.index() as u32);
    }
    walk
}

/// Unnormalized transition weights from `current`, given the step arrived
/// from `prev`. Indexed like `g.neighbors(current)`.
fn step_weights(g: &Graph, prev: NodeId, current: NodeId, bias: WalkBias) -> Vec<f64> {
    g.neighbors(current)
        .iter()
        .map(|&x| {
            if x == prev {
                1.0 / bias.return_p
            } else if g.has_edge(x, prev) {
                1.0
            } else {
                1.0 / bias.inout_q
            }
        })
        .collect()
}

fn sample_weighted<R: Rng>(weights: &[f64], rng: &mut R) -> usize {
    let total: f64 = weights.iter().sum();
    let mut draw = rng.gen_range(0.0..total);
    for (i, w) in weights.iter().enumerate() {
        if draw < *w {
            return i;
        }
        draw -= w;
    }
    weights.len() - 1
}

/// Maps each node sequence `[v1..vm]` to the edge-token sequence
/// `[e(v1,v2)..e(vm-1,vm)]` where tokens index the graph's canonical edge
/// list. The companion label table comes from [`edge_labels`].
pub fn derive_edge_sequences(corpus: &Corpus, g: &Graph) -> Result<Corpus, WalkError> {
    let index: HashMap<(NodeId, NodeId), u32> = g
        .edges()
        .enumerate()
        .map(|(i, e)| (e, i as u32))
        .collect();
    let mut sequences = Vec::with_capacity(corpus.sequences.len());
    for seq in &corpus.sequences {
        let mut edges = Vec::with_capacity(seq.len().saturating_sub(1));
        for pair in seq.windows(2) {
            let (a, b) = (NodeId::new(pair[0] as usize), NodeId::new(pair[1] as usize));
            let key = if a < b { (a, b) } else { (b, a) };
            match index.get(&key) {
                Some(&token) => edges.push(token),
                None => {
                    return Err(WalkError::NonAdjacentStep(
                        g.label(a).to_string(),
                        g.label(b).to_string(),
                    ))
                }
            }
        }
        sequences.push(edges);
    }
    Ok(Corpus::from_sequences(sequences, g.edge_count()))
}

/// Labels for edge tokens: `minlabel-maxlabel`, aligned with the canonical
/// edge order used by [`derive_edge_sequences`].
pub fn edge_labels(g: &Graph) -> Vec<String> {
    g.edges()
        .map(|(u, v)| {
            let (a, b) = (g.label(u), g.label(v));
            if a <= b {
                format!("{a}-{b}")
            } else {
                format!("{b}-{a}")
            }
        })
        .collect()
}
