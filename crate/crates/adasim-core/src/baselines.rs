//! Comparison predictors: six neighborhood heuristics, the five binary edge
//! operators, and a from-scratch logistic-regression edge classifier.
//!
//! Heuristics are always scored on the residual subgraph, never on the
//! original graph, so held-out edges cannot leak into the scores.

use thiserror::Error;

use crate::embedding::EmbeddingMatrix;
use crate::eval::auc_scores;
use crate::graph::{Graph, GraphError, NodeId};
use crate::split::LabeledPair;

#[derive(Copy, Clone, PartialEq, Debug)]
pub enum HeuristicIndex {
    /// |Γ(u) ∩ Γ(v)|
    CommonNeighbors,
    /// Σ 1/k_z over common neighbors z
    ResourceAllocation,
    /// k_u · k_v
    PreferentialAttachment,
    /// |Γ(u) ∩ Γ(v)| / √(k_u k_v)
    Salton,
    /// Σ t_z / (k_z(k_z-1)/2) over common neighbors with k_z ≥ 2
    ClusteringCoefficient,
    /// |k_u - k_v|^alpha, with 0^alpha defined as 0
    Heterogeneity { alpha: f64 },
}

impl HeuristicIndex {
    pub fn name(&self) -> &'static str {
        match self {
            HeuristicIndex::CommonNeighbors => "CN",
            HeuristicIndex::ResourceAllocation => "RA",
            HeuristicIndex::PreferentialAttachment => "PA",
            HeuristicIndex::Salton => "SI",
            HeuristicIndex::ClusteringCoefficient => "CCLP",
            HeuristicIndex::Heterogeneity { .. } => "HEI",
        }
    }
}

#[derive(Error, Debug)]
pub enum BaselineError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("feature dimension mismatch: expected {expected}, sample {sample} has {got}")]
    DimensionMismatch {
        expected: usize,
        sample: usize,
        got: usize,
    },
    #[error("training needs at least one sample per class")]
    SingleClass,
    #[error("correlation undefined: {0} sequence has zero variance")]
    ZeroVariance(&'static str),
    #[error("sequences must have equal length >= 2 (got {0} and {1})")]
    BadLength(usize, usize),
}

/// Scores a node pair with one heuristic index on `g` (the residual
/// subgraph).
pub fn heuristic_score(
    g: &Graph,
    index: HeuristicIndex,
    u: NodeId,
    v: NodeId,
) -> Result<f64, BaselineError> {
    let score = match index {
        HeuristicIndex::CommonNeighbors => g.common_neighbor_count(u, v)? as f64,
        HeuristicIndex::ResourceAllocation => g
            .common_neighbors(u, v)?
            .iter()
            .map(|&z| 1.0 / g.degree(z) as f64)
            .sum(),
        HeuristicIndex::PreferentialAttachment => (g.degree(u) * g.degree(v)) as f64,
        HeuristicIndex::Salton => {
            let product = (g.degree(u) * g.degree(v)) as f64;
            if product == 0.0 {
                0.0
            } else {
                g.common_neighbor_count(u, v)? as f64 / product.sqrt()
            }
        }
        HeuristicIndex::ClusteringCoefficient => {
            let mut total = 0.0;
            for z in g.common_neighbors(u, v)? {
                let k = g.degree(z);
                if k < 2 {
                    continue;
                }
                let triangles = g.triangles_through(z)? as f64;
                total += triangles / (k as f64 * (k as f64 - 1.0) / 2.0);
            }
            total
        }
        HeuristicIndex::Heterogeneity { alpha } => {
            let gap = (g.degree(u) as f64 - g.degree(v) as f64).abs();
            if gap == 0.0 {
                0.0
            } else {
                gap.powf(alpha)
            }
        }
    };
    Ok(score)
}

/// Grid values for the heterogeneity exponent: [-2, 2] in steps of 0.1.
pub fn hei_alpha_grid() -> Vec<f64> {
    (-20..=20).map(|i| i as f64 / 10.0).collect()
}

/// Picks the heterogeneity exponent maximizing AUC on the training pairs.
/// Ties go to the smallest |alpha|, then the smaller alpha.
pub fn tune_hei_alpha(g: &Graph, train_pairs: &[LabeledPair]) -> Result<f64, BaselineError> {
    let mut best = (f64::NEG_INFINITY, f64::INFINITY, 0.0);
    for alpha in hei_alpha_grid() {
        let mut scored = Vec::with_capacity(train_pairs.len());
        for p in train_pairs {
            let s = heuristic_score(g, HeuristicIndex::Heterogeneity { alpha }, p.u, p.v)?;
            scored.push((s, p.label));
        }
        let auc = auc_scores(&scored).unwrap_or(0.5);
        let key = (auc, -alpha.abs(), -alpha);
        if key > (best.0, -best.1, -best.2) {
            best = (auc, alpha.abs(), alpha);
        }
    }
    Ok(best.2)
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum EdgeOperator {
    Hadamard,
    Average,
    Division,
    WeightedL1,
    WeightedL2,
}

impl EdgeOperator {
    pub const ALL: [EdgeOperator; 5] = [
        EdgeOperator::Hadamard,
        EdgeOperator::Average,
        EdgeOperator::Division,
        EdgeOperator::WeightedL1,
        EdgeOperator::WeightedL2,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            EdgeOperator::Hadamard => "hadamard",
            EdgeOperator::Average => "average",
            EdgeOperator::Division => "division",
            EdgeOperator::WeightedL1 => "weighted-l1",
            EdgeOperator::WeightedL2 => "weighted-l2",
        }
    }

    pub fn parse(s: &str) -> Option<EdgeOperator> {
        EdgeOperator::ALL
            .into_iter()
            .find(|op| op.name() == s.to_lowercase())
    }
}

/// Per-dimension pair features built from two node vectors.
#[derive(Clone, Debug)]
pub struct EdgeFeatureVector {
    pub values: Vec<f64>,
    pub operator: EdgeOperator,
    /// Set when the division guard substituted a signed epsilon denominator.
    pub epsilon_substituted: bool,
}

const DIV_EPSILON: f64 = 1e-12;

pub fn edge_features(
    emb: &EmbeddingMatrix,
    u: NodeId,
    v: NodeId,
    operator: EdgeOperator,
) -> EdgeFeatureVector {
    let a = emb.vector(u.index());
    let b = emb.vector(v.index());
    let mut epsilon_substituted = false;
    let values = a
        .iter()
        .zip(b)
        .map(|(&x, &y)| match operator {
            EdgeOperator::Hadamard => x * y,
            EdgeOperator::Average => (x + y) / 2.0,
            EdgeOperator::Division => {
                let denom = if y.abs() < DIV_EPSILON {
                    epsilon_substituted = true;
                    DIV_EPSILON.copysign(y)
                } else {
                    y
                };
                x / denom
            }
            EdgeOperator::WeightedL1 => (x - y).abs(),
            EdgeOperator::WeightedL2 => (x - y) * (x - y),
        })
        .collect();
    EdgeFeatureVector {
        values,
        operator,
        epsilon_substituted,
    }
}

#[derive(Clone, Debug)]
pub struct LogRegConfig {
    pub learning_rate: f64,
    pub epochs: usize,
    pub l2: f64,
}

impl Default for LogRegConfig {
    fn default() -> Self {
        LogRegConfig {
            learning_rate: 0.5,
            epochs: 300,
            l2: 1e-4,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LogRegModel {
    pub weights: Vec<f64>,
    pub bias: f64,
}

impl LogRegModel {
    pub fn predict_prob(&self, x: &[f64]) -> f64 {
        let z: f64 = self.weights.iter().zip(x).map(|(w, v)| w * v).sum::<f64>() + self.bias;
        1.0 / (1.0 + (-z).exp())
    }
}

/// L2-regularized logistic regression by full-batch gradient descent from
/// zero initialization; deterministic without any seed.
pub fn train_logreg(
    features: &[Vec<f64>],
    labels: &[bool],
    cfg: &LogRegConfig,
) -> Result<LogRegModel, BaselineError> {
    assert_eq!(features.len(), labels.len());
    let positives = labels.iter().filter(|&&y| y).count();
    if positives == 0 || positives == labels.len() {
        return Err(BaselineError::SingleClass);
    }
    let dim = features[0].len();
    for (i, f) in features.iter().enumerate() {
        if f.len() != dim {
            return Err(BaselineError::DimensionMismatch {
                expected: dim,
                sample: i,
                got: f.len(),
            });
        }
    }

    let n = features.len() as f64;
    let mut weights = vec![0.0; dim];
    let mut bias = 0.0;
    let mut grad = vec![0.0; dim];
    for _ in 0..cfg.epochs {
        grad.fill(0.0);
        let mut grad_bias = 0.0;
        for (x, &y) in features.iter().zip(labels) {
            let z: f64 = weights.iter().zip(x).map(|(w, v)| w * v).sum::<f64>() + bias;
            let err = 1.0 / (1.0 + (-z).exp()) - if y { 1.0 } else { 0.0 };
            for (g, v) in grad.iter_mut().zip(x) {
                *g += err * v;
            }
            grad_bias += err;
        }
        for (w, g) in weights.iter_mut().zip(&grad) {
            *w -= cfg.learning_rate * (*g / n + cfg.l2 * *w);
        }
        bias -= cfg.learning_rate * grad_bias / n;
    }
    Ok(LogRegModel { weights, bias })
}

/// Gradient of the regularized cross-entropy at `(weights, bias)`; exposed
/// for finite-difference verification.
pub fn logreg_gradient(
    features: &[Vec<f64>],
    labels: &[bool],
    weights: &[f64],
    bias: f64,
    l2: f64,
) -> (Vec<f64>, f64) {
    let n = features.len() as f64;
    let mut grad = vec![0.0; weights.len()];
    let mut grad_bias = 0.0;
    for (x, &y) in features.iter().zip(labels) {
        let z: f64 = weights.iter().zip(x).map(|(w, v)| w * v).sum::<f64>() + bias;
        let err = 1.0 / (1.0 + (-z).exp()) - if y { 1.0 } else { 0.0 };
        for (g, v) in grad.iter_mut().zip(x) {
            *g += err * v / n;
        }
        grad_bias += err / n;
    }
    for (g, w) in grad.iter_mut().zip(weights) {
        *g += l2 * w;
    }
    (grad, grad_bias)
}

pub fn logreg_loss(
    features: &[Vec<f64>],
    labels: &[bool],
    weights: &[f64],
    bias: f64,
    l2: f64,
) -> f64 {
    let n = features.len() as f64;
    let mut total = 0.0;
    for (x, &y) in features.iter().zip(labels) {
        let z: f64 = weights.iter().zip(x).map(|(w, v)| w * v).sum::<f64>() + bias;
        let p = (1.0 / (1.0 + (-z).exp())).clamp(1e-12, 1.0 - 1e-12);
        total -= if y { p.ln() } else { (1.0 - p).ln() };
    }
    total / n + l2 / 2.0 * weights.iter().map(|w| w * w).sum::<f64>()
}

/// Sample Pearson correlation coefficient.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64, BaselineError> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(BaselineError::BadLength(x.len(), y.len()));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut vx = 0.0;
    let mut vy = 0.0;
    for (a, b) in x.iter().zip(y) {
        cov += (a - mx) * (b - my);
        vx += (a - mx) * (a - mx);
        vy += (b - my) * (b - my);
    }
    if vx == 0.0 {
        return Err(BaselineError::ZeroVariance("first"));
    }
    if vy == 0.0 {
        return Err(BaselineError::ZeroVariance("second"));
    }
    Ok(cov / (vx.sqrt() * vy.sqrt()))
}
