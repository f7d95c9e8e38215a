//! Adaptive similarity: `K(u, v) = (u·v + p) / (‖u‖‖v‖)`.
//!
//! With `p = 0` this is exactly cosine similarity. The scalar penalty `p` is
//! learned by full-batch gradient descent on the cross-entropy of
//! `logistic(K)` against pair labels, shifting scores up or down to match how
//! links actually form in the network at hand.

use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use thiserror::Error;

use crate::embedding::EmbeddingMatrix;
use crate::graph::NodeId;

/// Dot product and norm product of a node pair's vectors; everything the
/// similarity needs to score the pair.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct PairFeatures {
    pub dot: f64,
    pub norm_product: f64,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum ZeroNormPolicy {
    /// Zero-norm vectors are an error.
    Reject,
    /// Substitute norm 1e-12 for zero-norm vectors.
    Epsilon,
}

#[derive(Error, Debug)]
pub enum ModelError {
    #[error("node {0} has a zero-norm vector")]
    DegenerateVector(String),
    #[error("penalty training needs at least one pair of each label")]
    SingleClass,
    #[error("non-finite loss at epoch {epoch} (p = {penalty}); aborting")]
    NonFiniteLoss { epoch: usize, penalty: f64 },
    #[error("model file: {0}")]
    ParseModel(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

const NORM_EPSILON: f64 = 1e-12;
const PROB_CLAMP: f64 = 1e-12;

/// Exact dot product and norm product for a node pair. Rows of `emb` must be
/// in node-id order (as produced by the trainer or [`EmbeddingMatrix::aligned_to`]).
pub fn pair_features(
    emb: &EmbeddingMatrix,
    u: NodeId,
    v: NodeId,
    policy: ZeroNormPolicy,
) -> Result<PairFeatures, ModelError> {
    let a = emb.vector(u.index());
    let b = emb.vector(v.index());
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    let (na, nb) = match policy {
        ZeroNormPolicy::Reject => {
            if na == 0.0 {
                return Err(ModelError::DegenerateVector(emb.labels()[u.index()].clone()));
            }
            if nb == 0.0 {
                return Err(ModelError::DegenerateVector(emb.labels()[v.index()].clone()));
            }
            (na, nb)
        }
        ZeroNormPolicy::Epsilon => (na.max(NORM_EPSILON), nb.max(NORM_EPSILON)),
    };
    Ok(PairFeatures {
        dot,
        norm_product: na * nb,
    })
}

/// `(a + p) / b`: cosine similarity shifted by the penalty.
pub fn score(penalty: f64, pf: &PairFeatures) -> f64 {
    (pf.dot + penalty) / pf.norm_product
}

/// `logistic(score)`, the predicted link probability in (0, 1).
pub fn predict_prob(penalty: f64, pf: &PairFeatures) -> f64 {
    logistic(score(penalty, pf))
}

fn logistic(z: f64) -> f64 {
    1.0 / (1.0 + (-z).exp())
}

/// Mean cross-entropy of `logistic((a + p)/b)` against the labels,
/// probabilities clamped to `[1e-12, 1 - 1e-12]`.
pub fn loss(pairs: &[(PairFeatures, bool)], penalty: f64) -> f64 {
    let mut total = 0.0;
    for (pf, label) in pairs {
        let prob = predict_prob(penalty, pf).clamp(PROB_CLAMP, 1.0 - PROB_CLAMP);
        total -= if *label { prob.ln() } else { (1.0 - prob).ln() };
    }
    total / pairs.len() as f64
}

/// `dC/dp = (1/N) Σ (ŷ_i - y_i) / b_i`.
pub fn loss_gradient(pairs: &[(PairFeatures, bool)], penalty: f64) -> f64 {
    let mut total = 0.0;
    for (pf, label) in pairs {
        let y = if *label { 1.0 } else { 0.0 };
        total += (predict_prob(penalty, pf) - y) / pf.norm_product;
    }
    total / pairs.len() as f64
}

#[derive(Copy, Clone, Debug)]
pub struct SgdConfig {
    pub learning_rate: f64,
    pub epochs: usize,
    /// Stop once `|Δp|` falls below this.
    pub tolerance: f64,
}

impl Default for SgdConfig {
    fn default() -> Self {
        SgdConfig {
            learning_rate: 0.1,
            epochs: 500,
            tolerance: 1e-8,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct TrainTrace {
    pub epoch_losses: Vec<f64>,
    pub final_penalty: f64,
}

/// The learned penalty plus how it got there.
#[derive(Clone, Debug)]
pub struct AdaSimModel {
    pub penalty: f64,
    pub trace: TrainTrace,
    pub config: SgdConfig,
}

impl AdaSimModel {
    /// Untrained model: plain cosine similarity.
    pub fn cosine() -> AdaSimModel {
        AdaSimModel {
            penalty: 0.0,
            trace: TrainTrace::default(),
            config: SgdConfig::default(),
        }
    }

    pub fn score(&self, pf: &PairFeatures) -> f64 {
        score(self.penalty, pf)
    }

    pub fn predict_prob(&self, pf: &PairFeatures) -> f64 {
        predict_prob(self.penalty, pf)
    }

    /// One-record text format: `p=<value>` plus metadata lines.
    pub fn save<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "p={}", self.penalty)?;
        writeln!(w, "learning_rate={}", self.config.learning_rate)?;
        writeln!(w, "epochs_run={}", self.trace.epoch_losses.len())?;
        if let Some(last) = self.trace.epoch_losses.last() {
            writeln!(w, "final_loss={last}")?;
        }
        Ok(())
    }

    pub fn save_file<P: AsRef<Path>>(&self, path: P) -> std::io::Result<()> {
        self.save(File::create(path)?)
    }

    pub fn load<R: Read>(reader: R) -> Result<AdaSimModel, ModelError> {
        let mut penalty = None;
        for line in BufReader::new(reader).lines() {
            let line = line?;
            if let Some(value) = line.strip_prefix("p=") {
                penalty = Some(value.trim().parse::<f64>().map_err(|e| {
                    ModelError::ParseModel(format!("invalid penalty '{value}': {e}"))
                })?);
            }
        }
        let penalty = penalty.ok_or_else(|| ModelError::ParseModel("missing 'p=' line".into()))?;
        Ok(AdaSimModel {
            penalty,
            trace: TrainTrace {
                epoch_losses: Vec::new(),
                final_penalty: penalty,
            },
            config: SgdConfig::default(),
        })
    }

    pub fn load_file<P: AsRef<Path>>(path: P) -> Result<AdaSimModel, ModelError> {
        AdaSimModel::load(File::open(path)?)
    }

    pub fn write_trace_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "epoch,loss")?;
        for (epoch, loss) in self.trace.epoch_losses.iter().enumerate() {
            writeln!(w, "{epoch},{loss}")?;
        }
        Ok(())
    }
}

/// Learns the penalty by full-batch gradient descent from `p = 0`. The
/// objective is convex in `p`; each epoch starts from the configured step
/// size and halves it until the step actually decreases the loss (Armijo
/// backtracking), so descent stays monotone whatever the scale of the norm
/// products. Stops early once `|Δp|` drops below the tolerance.
pub fn train_penalty(
    pairs: &[(PairFeatures, bool)],
    cfg: &SgdConfig,
) -> Result<AdaSimModel, ModelError> {
    let positives = pairs.iter().filter(|(_, y)| *y).count();
    if positives == 0 || positives == pairs.len() {
        return Err(ModelError::SingleClass);
    }

    const ARMIJO_C1: f64 = 1e-4;
    const MAX_HALVINGS: u32 = 100;

    let mut penalty = 0.0;
    let mut current = loss(pairs, penalty);
    let mut epoch_losses = Vec::new();
    for epoch in 0..cfg.epochs {
        if !current.is_finite() {
            return Err(ModelError::NonFiniteLoss { epoch, penalty });
        }
        epoch_losses.push(current);
        let gradient = loss_gradient(pairs, penalty);
        let mut step = cfg.learning_rate;
        let mut candidate;
        let mut next;
        let mut halvings = 0;
        loop {
            candidate = penalty - step * gradient;
            next = loss(pairs, candidate);
            if next <= current - ARMIJO_C1 * step * gradient * gradient
                || halvings >= MAX_HALVINGS
            {
                break;
            }
            step *= 0.5;
            halvings += 1;
        }
        let moved = (candidate - penalty).abs();
        penalty = candidate;
        current = next;
        if moved < cfg.tolerance {
            break;
        }
    }

    Ok(AdaSimModel {
        penalty,
        trace: TrainTrace {
            epoch_losses,
            final_penalty: penalty,
        },
        config: *cfg,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream_rng;
    use rand::Rng;

    fn pf(dot: f64, norm_product: f64) -> PairFeatures {
        PairFeatures { dot, norm_product }
    }

    #[test]
    fn pair_features_unit_vectors() {
        let emb = EmbeddingMatrix::new(
            vec![1.0, 0.0, 1.0, 0.0, 0.0, 1.0],
            2,
            vec!["u".into(), "same".into(), "orth".into()],
        );
        let f = pair_features(&emb, NodeId::new(0), NodeId::new(1), ZeroNormPolicy::Reject)
            .unwrap();
        assert_eq!(f.dot, 1.0);
        assert_eq!(f.norm_product, 1.0);
        let f = pair_features(&emb, NodeId::new(0), NodeId::new(2), ZeroNormPolicy::Reject)
            .unwrap();
        assert_eq!(f.dot, 0.0);
        assert_eq!(f.norm_product, 1.0);
    }

    #[test]
    fn pair_features_matches_scalar_loop() {
        let mut rng = stream_rng(5, 50, 0, 0);
        let d = 5;
        let a: Vec<f64> = (0..d).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect();
        let b: Vec<f64> = (0..d).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect();
        let mut vectors = a.clone();
        vectors.extend(&b);
        let emb = EmbeddingMatrix::new(vectors, d, vec!["a".into(), "b".into()]);
        let f = pair_features(&emb, NodeId::new(0), NodeId::new(1), ZeroNormPolicy::Reject)
            .unwrap();
        let mut dot = 0.0;
        let (mut na, mut nb) = (0.0, 0.0);
        for i in 0..d {
            dot += a[i] * b[i];
            na += a[i] * a[i];
            nb += b[i] * b[i];
        }
        assert!((f.dot - dot).abs() < 1e-12);
        assert!((f.norm_product - na.sqrt() * nb.sqrt()).abs() < 1e-12);
        assert!(f.dot.abs() <= f.norm_product + 1e-12); // Cauchy-Schwarz
    }

    #[test]
    fn zero_norm_policies() {
        let emb = EmbeddingMatrix::new(
            vec![0.0, 0.0, 1.0, 0.0],
            2,
            vec!["zero".into(), "unit".into()],
        );
        assert!(matches!(
            pair_features(&emb, NodeId::new(0), NodeId::new(1), ZeroNormPolicy::Reject),
            Err(ModelError::DegenerateVector(_))
        ));
        let f = pair_features(&emb, NodeId::new(0), NodeId::new(1), ZeroNormPolicy::Epsilon)
            .unwrap();
        assert_eq!(f.norm_product, 1e-12);
    }

    #[test]
    fn score_special_cases() {
        assert_eq!(score(0.0, &pf(1.0, 1.0)), 1.0);
        assert_eq!(score(2.0, &pf(0.0, 1.0)), 2.0);
        assert_eq!(score(-0.75, &pf(0.75, 3.0)), 0.0);
    }

    #[test]
    fn predict_prob_special_cases() {
        assert_eq!(predict_prob(0.0, &pf(0.0, 1.0)), 0.5);
        assert!(predict_prob(1e6, &pf(0.0, 1.0)) > 1.0 - 1e-9);
        assert!(predict_prob(-1e6, &pf(0.0, 1.0)) < 1e-9);
        let p = predict_prob(0.0, &pf(1.0, 2.0));
        assert!((p - 1.0 / (1.0 + (-0.5f64).exp())).abs() < 1e-12);
        assert!((p - 0.62246).abs() < 1e-5);
    }

    #[test]
    fn score_monotone_in_dot_and_penalty() {
        let base = pf(0.3, 1.7);
        assert!(score(0.5, &base) > score(0.2, &base));
        assert!(score(0.5, &pf(0.4, 1.7)) > score(0.5, &base));
    }

    #[test]
    fn loss_special_cases() {
        // confident correct predictions
        let pairs = vec![(pf(1e3, 1.0), true), (pf(-1e3, 1.0), false)];
        assert!(loss(&pairs, 0.0) <= 1e-10);
        // coin-flip predictions
        let pairs = vec![(pf(0.0, 1.0), true), (pf(0.0, 1.0), false)];
        assert!((loss(&pairs, 0.0) - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn loss_matches_naive_summation() {
        let mut rng = stream_rng(6, 51, 0, 0);
        let pairs: Vec<(PairFeatures, bool)> = (0..100)
            .map(|_| {
                let b = rng.gen::<f64>() * 1.5 + 0.5;
                let cos = rng.gen::<f64>() * 2.0 - 1.0;
                (pf(cos * b, b), rng.gen::<bool>())
            })
            .collect();
        let p = 0.37;
        let mut naive = 0.0;
        for (f, y) in &pairs {
            let yh = (1.0 / (1.0 + (-(f.dot + p) / f.norm_product).exp()))
                .clamp(1e-12, 1.0 - 1e-12);
            naive -= if *y { yh.ln() } else { (1.0 - yh).ln() };
        }
        naive /= pairs.len() as f64;
        assert!((loss(&pairs, p) - naive).abs() < 1e-12);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let mut rng = stream_rng(7, 52, 0, 0);
        let h = 1e-6;
        for _ in 0..100 {
            let pairs: Vec<(PairFeatures, bool)> = (0..60)
                .map(|_| {
                    let b = rng.gen::<f64>() * 1.5 + 0.5;
                    let cos = rng.gen::<f64>() * 2.0 - 1.0;
                    (pf(cos * b, b), rng.gen::<bool>())
                })
                .collect();
            let p = rng.gen::<f64>() * 4.0 - 2.0;
            let analytic = loss_gradient(&pairs, p);
            let fd = (loss(&pairs, p + h) - loss(&pairs, p - h)) / (2.0 * h);
            let denom = analytic.abs().max(fd.abs()).max(1e-10);
            assert!(
                ((analytic - fd) / denom).abs() < 1e-6,
                "analytic {analytic} vs fd {fd}"
            );
        }
    }

    #[test]
    fn all_positive_labels_push_penalty_up() {
        let pairs = vec![
            (pf(0.0, 1.0), true),
            (pf(0.0, 1.0), true),
            (pf(0.0, 1.0), false),
        ];
        // gradient at p=0: mean(0.5 - y) < 0 for mostly-positive labels
        assert!(loss_gradient(&pairs, 0.0) < 0.0);
        let model = train_penalty(&pairs, &SgdConfig::default()).unwrap();
        assert!(model.penalty > 0.0);
    }

    #[test]
    fn symmetric_dataset_keeps_penalty_zero() {
        let c = 0.6;
        let pairs = vec![(pf(c, 1.0), true), (pf(-c, 1.0), false)];
        let model = train_penalty(&pairs, &SgdConfig::default()).unwrap();
        assert!(
            model.penalty.abs() < 1e-8,
            "penalty {} should be 0 by symmetry",
            model.penalty
        );
    }

    #[test]
    fn single_class_rejected() {
        let pairs = vec![(pf(0.1, 1.0), true), (pf(0.2, 1.0), true)];
        assert!(matches!(
            train_penalty(&pairs, &SgdConfig::default()),
            Err(ModelError::SingleClass)
        ));
    }

    /// Golden-section scan of the convex loss over [-100, 100].
    fn golden_section(pairs: &[(PairFeatures, bool)]) -> f64 {
        let phi = (5f64.sqrt() - 1.0) / 2.0;
        let (mut lo, mut hi) = (-100.0, 100.0);
        let mut c = hi - (hi - lo) * phi;
        let mut d = lo + (hi - lo) * phi;
        let (mut fc, mut fd) = (loss(pairs, c), loss(pairs, d));
        while hi - lo > 1e-10 {
            if fc < fd {
                hi = d;
                d = c;
                fd = fc;
                c = hi - (hi - lo) * phi;
                fc = loss(pairs, c);
            } else {
                lo = c;
                c = d;
                fc = fd;
                d = lo + (hi - lo) * phi;
                fd = loss(pairs, d);
            }
        }
        (lo + hi) / 2.0
    }

    fn random_dataset(seed: u64, n: usize) -> Vec<(PairFeatures, bool)> {
        let mut rng = stream_rng(seed, 53, 0, 0);
        loop {
            let pairs: Vec<(PairFeatures, bool)> = (0..n)
                .map(|_| {
                    let b = rng.gen::<f64>() * 1.5 + 0.5;
                    let cos = rng.gen::<f64>() * 2.0 - 1.0;
                    let y = rng.gen::<f64>() < logistic(2.0 * cos + 0.3);
                    (pf(cos * b, b), y)
                })
                .collect();
            let positives = pairs.iter().filter(|(_, y)| *y).count();
            if positives > 0 && positives < n {
                return pairs;
            }
        }
    }

    #[test]
    fn descent_matches_scan_oracle() {
        for seed in 0..10 {
            let pairs = random_dataset(seed, 200);
            let model = train_penalty(&pairs, &SgdConfig::default()).unwrap();
            let scan = golden_section(&pairs);
            assert!(
                (model.penalty - scan).abs() < 1e-4,
                "seed {seed}: descent {} vs scan {scan}",
                model.penalty
            );
            assert!(loss(&pairs, model.penalty) - loss(&pairs, scan) < 1e-3);
        }
    }

    #[test]
    fn model_save_load_round_trip() {
        let pairs = random_dataset(3, 80);
        let model = train_penalty(&pairs, &SgdConfig::default()).unwrap();
        let mut buf = Vec::new();
        model.save(&mut buf).unwrap();
        let loaded = AdaSimModel::load(buf.as_slice()).unwrap();
        assert_eq!(loaded.penalty, model.penalty);

        let mut trace = Vec::new();
        model.write_trace_csv(&mut trace).unwrap();
        let text = String::from_utf8(trace).unwrap();
        assert!(text.starts_with("epoch,loss\n"));
        assert_eq!(text.lines().count(), model.trace.epoch_losses.len() + 1);
    }
}
