//! Exact AUC, the cross-validated method driver, and the sweep/study
//! operations behind the figure-style CSV outputs.

use std::collections::HashMap;
use std::io::Write;

use serde::Serialize;
use thiserror::Error;

use crate::baselines::{
    edge_features, heuristic_score, train_logreg, tune_hei_alpha, BaselineError, EdgeOperator,
    HeuristicIndex, LogRegConfig,
};
use crate::embedding::{train, EmbeddingError, EmbeddingMatrix, TrainConfig, TrainMode};
use crate::graph::{Graph, GraphError, NodeId};
use crate::model::{
    pair_features, score, train_penalty, ModelError, PairFeatures, SgdConfig, ZeroNormPolicy,
};
use crate::split::{generate_split, k_fold, sparsify, FoldPlan, LabeledPair, SplitError};
use crate::walk::{
    biased_walks, derive_edge_sequences, edge_labels, random_walks, WalkBias, WalkConfig,
    WalkError,
};

#[derive(Copy, Clone, Debug)]
pub struct ScoredPair {
    pub u: NodeId,
    pub v: NodeId,
    pub label: bool,
    pub score: f64,
}

#[derive(Error, Debug)]
pub enum EvalError {
    #[error("AUC needs at least one positive and one negative")]
    SingleClass,
    #[error("score for pair ({0}, {1}) is not finite")]
    NonFiniteScore(String, String),
    #[error("method {0} requires a trained embedding")]
    MissingEmbedding(&'static str),
    #[error("walk corpus never visited edge {0}; increase walks per node or walk length")]
    UncoveredEdge(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Split(#[from] SplitError),
    #[error(transparent)]
    Walk(#[from] WalkError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Baseline(#[from] BaselineError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Exact AUC by average ranks; tied scores contribute one half. Equals the
/// probability that a random positive outscores a random negative.
pub fn auc(scored: &[ScoredPair]) -> Result<f64, EvalError> {
    for s in scored {
        if !s.score.is_finite() {
            return Err(EvalError::NonFiniteScore(s.u.to_string(), s.v.to_string()));
        }
    }
    auc_scores(
        &scored
            .iter()
            .map(|s| (s.score, s.label))
            .collect::<Vec<_>>(),
    )
}

/// Rank-based AUC over `(score, label)` pairs.
pub fn auc_scores(scored: &[(f64, bool)]) -> Result<f64, EvalError> {
    let n_pos = scored.iter().filter(|(_, y)| *y).count();
    let n_neg = scored.len() - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return Err(EvalError::SingleClass);
    }
    let mut order: Vec<usize> = (0..scored.len()).collect();
    order.sort_by(|&a, &b| scored[a].0.total_cmp(&scored[b].0));

    let mut positive_rank_sum = 0.0;
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && scored[order[end]].0 == scored[order[start]].0 {
            end += 1;
        }
        // ranks are 1-based: positions start..end share rank (start+end+1)/2
        let avg_rank = (start + end + 1) as f64 / 2.0;
        let positives_in_run = order[start..end]
            .iter()
            .filter(|&&i| scored[i].1)
            .count();
        positive_rank_sum += avg_rank * positives_in_run as f64;
        start = end;
    }
    let n_pos = n_pos as f64;
    Ok((positive_rank_sum - n_pos * (n_pos + 1.0) / 2.0) / (n_pos * n_neg as f64))
}

/// One prediction method of the comparison. Heuristic variants score the
/// residual subgraph directly; the rest train per fold.
#[derive(Copy, Clone, PartialEq, Debug)]
pub enum Method {
    /// Learned-penalty similarity on node embeddings.
    AdaSim,
    /// The same embeddings scored with penalty fixed at zero.
    Cosine,
    CommonNeighbors,
    ResourceAllocation,
    PreferentialAttachment,
    Salton,
    ClusteringCoefficient,
    /// Degree-gap index with the exponent tuned per training fold.
    Heterogeneity,
    /// Logistic regression on operator-built edge features.
    EdgeClassifier {
        operator: EdgeOperator,
        /// Biased-walk parameters for the embedding; `None` = uniform walks.
        bias: Option<WalkBias>,
    },
}

impl Method {
    pub fn name(&self) -> String {
        match self {
            Method::AdaSim => "AdaSim".into(),
            Method::Cosine => "Cosine".into(),
            Method::CommonNeighbors => "CN".into(),
            Method::ResourceAllocation => "RA".into(),
            Method::PreferentialAttachment => "PA".into(),
            Method::Salton => "SI".into(),
            Method::ClusteringCoefficient => "CCLP".into(),
            Method::Heterogeneity => "HEI".into(),
            Method::EdgeClassifier { operator, bias } => {
                let family = if bias.is_some() { "Node2vec" } else { "DeepWalk" };
                format!("{family}[{}]", operator.name())
            }
        }
    }

    pub fn needs_embedding(&self) -> bool {
        matches!(
            self,
            Method::AdaSim | Method::Cosine | Method::EdgeClassifier { .. }
        )
    }

    fn heuristic(&self) -> Option<HeuristicIndex> {
        match self {
            Method::CommonNeighbors => Some(HeuristicIndex::CommonNeighbors),
            Method::ResourceAllocation => Some(HeuristicIndex::ResourceAllocation),
            Method::PreferentialAttachment => Some(HeuristicIndex::PreferentialAttachment),
            Method::Salton => Some(HeuristicIndex::Salton),
            Method::ClusteringCoefficient => Some(HeuristicIndex::ClusteringCoefficient),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EvaluationReport {
    pub method: String,
    pub fold_aucs: Vec<f64>,
    pub mean_auc: f64,
    pub std_auc: f64,
}

impl EvaluationReport {
    fn from_fold_aucs(method: String, fold_aucs: Vec<f64>) -> EvaluationReport {
        let mean = mean(&fold_aucs);
        let std = std_dev(&fold_aucs, mean);
        EvaluationReport {
            method,
            fold_aucs,
            mean_auc: mean,
            std_auc: std,
        }
    }
}

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

pub fn std_dev(values: &[f64], mean: f64) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (values.len() - 1) as f64)
        .sqrt()
}

/// Everything [`run_method`] needs besides the method itself.
pub struct MethodContext<'a> {
    pub subgraph: &'a Graph,
    pub pairs: &'a [LabeledPair],
    pub folds: &'a FoldPlan,
    /// Node vectors in node-id order; required by embedding-based methods.
    pub embedding: Option<&'a EmbeddingMatrix>,
    pub sgd: SgdConfig,
    pub logreg: LogRegConfig,
}

/// Evaluates one method. Supervised methods train on k-1 folds and score the
/// held-out fold; training-free heuristics score every pair once, so their
/// report does not depend on the fold assignment.
pub fn run_method(ctx: &MethodContext, method: Method) -> Result<EvaluationReport, EvalError> {
    let name = method.name();
    if let Some(index) = method.heuristic() {
        let mut scored = Vec::with_capacity(ctx.pairs.len());
        for p in ctx.pairs {
            scored.push((heuristic_score(ctx.subgraph, index, p.u, p.v)?, p.label));
        }
        let global = auc_scores(&scored)?;
        return Ok(EvaluationReport::from_fold_aucs(name, vec![global]));
    }

    match method {
        Method::Cosine => {
            let emb = ctx
                .embedding
                .ok_or(EvalError::MissingEmbedding("Cosine"))?;
            let mut scored = Vec::with_capacity(ctx.pairs.len());
            for p in ctx.pairs {
                let pf = pair_features(emb, p.u, p.v, ZeroNormPolicy::Epsilon)?;
                scored.push((score(0.0, &pf), p.label));
            }
            let global = auc_scores(&scored)?;
            Ok(EvaluationReport::from_fold_aucs(name, vec![global]))
        }
        Method::AdaSim => {
            let emb = ctx
                .embedding
                .ok_or(EvalError::MissingEmbedding("AdaSim"))?;
            let features: Vec<(PairFeatures, bool)> = ctx
                .pairs
                .iter()
                .map(|p| {
                    pair_features(emb, p.u, p.v, ZeroNormPolicy::Epsilon)
                        .map(|pf| (pf, p.label))
                })
                .collect::<Result<_, _>>()?;
            let fold_aucs = per_fold(ctx.folds, |train_idx, test_idx| {
                let train_set: Vec<(PairFeatures, bool)> =
                    train_idx.iter().map(|&i| features[i]).collect();
                let model = train_penalty(&train_set, &ctx.sgd)?;
                let scored: Vec<(f64, bool)> = test_idx
                    .iter()
                    .map(|&i| (model.score(&features[i].0), features[i].1))
                    .collect();
                auc_scores(&scored)
            })?;
            Ok(EvaluationReport::from_fold_aucs(name, fold_aucs))
        }
        Method::Heterogeneity => {
            let fold_aucs = per_fold(ctx.folds, |train_idx, test_idx| {
                let train_pairs: Vec<LabeledPair> =
                    train_idx.iter().map(|&i| ctx.pairs[i]).collect();
                let alpha = tune_hei_alpha(ctx.subgraph, &train_pairs)?;
                let index = HeuristicIndex::Heterogeneity { alpha };
                let mut scored = Vec::with_capacity(test_idx.len());
                for &i in test_idx {
                    let p = ctx.pairs[i];
                    scored.push((heuristic_score(ctx.subgraph, index, p.u, p.v)?, p.label));
                }
                auc_scores(&scored)
            })?;
            Ok(EvaluationReport::from_fold_aucs(name, fold_aucs))
        }
        Method::EdgeClassifier { operator, .. } => {
            let emb = ctx
                .embedding
                .ok_or(EvalError::MissingEmbedding("EdgeClassifier"))?;
            let features: Vec<Vec<f64>> = ctx
                .pairs
                .iter()
                .map(|p| edge_features(emb, p.u, p.v, operator).values)
                .collect();
            let labels: Vec<bool> = ctx.pairs.iter().map(|p| p.label).collect();
            let fold_aucs = per_fold(ctx.folds, |train_idx, test_idx| {
                let train_x: Vec<Vec<f64>> =
                    train_idx.iter().map(|&i| features[i].clone()).collect();
                let train_y: Vec<bool> = train_idx.iter().map(|&i| labels[i]).collect();
                let model = train_logreg(&train_x, &train_y, &ctx.logreg)?;
                let scored: Vec<(f64, bool)> = test_idx
                    .iter()
                    .map(|&i| (model.predict_prob(&features[i]), labels[i]))
                    .collect();
                auc_scores(&scored)
            })?;
            Ok(EvaluationReport::from_fold_aucs(name, fold_aucs))
        }
        _ => unreachable!("heuristics handled above"),
    }
}

fn per_fold<F>(folds: &FoldPlan, mut eval: F) -> Result<Vec<f64>, EvalError>
where
    F: FnMut(&[usize], &[usize]) -> Result<f64, EvalError>,
{
    let mut fold_aucs = Vec::with_capacity(folds.k);
    for fold in 0..folds.k {
        let (mut train_idx, mut test_idx) = (Vec::new(), Vec::new());
        for (i, &a) in folds.assignments.iter().enumerate() {
            if a == fold {
                test_idx.push(i);
            } else {
                train_idx.push(i);
            }
        }
        fold_aucs.push(eval(&train_idx, &test_idx)?);
    }
    Ok(fold_aucs)
}

/// Shared knobs for pipeline-style evaluation and the sweeps.
#[derive(Clone, Debug)]
pub struct PipelineParams {
    pub ratio: f64,
    pub folds: usize,
    pub walk: WalkConfig,
    pub train: TrainConfig,
    pub sgd: SgdConfig,
    pub logreg: LogRegConfig,
}

impl Default for PipelineParams {
    fn default() -> Self {
        PipelineParams {
            ratio: 0.5,
            folds: 10,
            walk: WalkConfig::default(),
            train: TrainConfig::default(),
            sgd: SgdConfig::default(),
            logreg: LogRegConfig::default(),
        }
    }
}

/// Splits, embeds and evaluates every requested method on one seed.
/// Embeddings are trained once per required corpus kind and shared across
/// methods; penalty-style methods use the context-average objective, edge
/// classifiers the skip-gram one.
pub fn evaluate_methods(
    g: &Graph,
    methods: &[Method],
    params: &PipelineParams,
    seed: u64,
) -> Result<Vec<EvaluationReport>, EvalError> {
    let split = generate_split(g, params.ratio, seed)?;
    let pairs = split.pairs();
    let folds = k_fold(&pairs, params.folds, seed)?;
    let mut evaluator = SplitEvaluator::new(&split.subgraph, &pairs, &folds, params, seed);
    methods.iter().map(|&m| evaluator.run(m)).collect()
}

/// As [`evaluate_methods`] but on an existing split.
pub fn evaluate_methods_on_split(
    subgraph: &Graph,
    pairs: &[LabeledPair],
    folds: &FoldPlan,
    methods: &[Method],
    params: &PipelineParams,
    seed: u64,
) -> Result<Vec<EvaluationReport>, EvalError> {
    let mut evaluator = SplitEvaluator::new(subgraph, pairs, folds, params, seed);
    methods.iter().map(|&m| evaluator.run(m)).collect()
}

/// Runs methods against one split, training each embedding flavor at most
/// once.
pub struct SplitEvaluator<'a> {
    subgraph: &'a Graph,
    pairs: &'a [LabeledPair],
    folds: &'a FoldPlan,
    params: &'a PipelineParams,
    seed: u64,
    cache: Vec<(EmbeddingKind, EmbeddingMatrix)>,
}

impl<'a> SplitEvaluator<'a> {
    pub fn new(
        subgraph: &'a Graph,
        pairs: &'a [LabeledPair],
        folds: &'a FoldPlan,
        params: &'a PipelineParams,
        seed: u64,
    ) -> SplitEvaluator<'a> {
        SplitEvaluator {
            subgraph,
            pairs,
            folds,
            params,
            seed,
            cache: Vec::new(),
        }
    }

    pub fn run(&mut self, method: Method) -> Result<EvaluationReport, EvalError> {
        let slot = match embedding_kind(&method) {
            None => None,
            Some(kind) => Some(self.ensure_embedding(kind)?),
        };
        let ctx = MethodContext {
            subgraph: self.subgraph,
            pairs: self.pairs,
            folds: self.folds,
            embedding: slot.map(|i| &self.cache[i].1),
            sgd: self.params.sgd,
            logreg: self.params.logreg.clone(),
        };
        run_method(&ctx, method)
    }

    /// The context-average embedding shared by the penalty and cosine
    /// methods; trained on first use.
    pub fn penalty_embedding(&mut self) -> Result<&EmbeddingMatrix, EvalError> {
        let slot = self.ensure_embedding(EmbeddingKind::ContextAverage)?;
        Ok(&self.cache[slot].1)
    }

    fn ensure_embedding(&mut self, kind: EmbeddingKind) -> Result<usize, EvalError> {
        if let Some(i) = self.cache.iter().position(|(k, _)| *k == kind) {
            return Ok(i);
        }
        let emb = train_embedding(self.subgraph, kind, self.params, self.seed)?;
        self.cache.push((kind, emb));
        Ok(self.cache.len() - 1)
    }
}

#[derive(Copy, Clone, PartialEq, Debug)]
enum EmbeddingKind {
    ContextAverage,
    SkipGram { bias: Option<(f64, f64)> },
}

fn embedding_kind(method: &Method) -> Option<EmbeddingKind> {
    match method {
        Method::AdaSim | Method::Cosine => Some(EmbeddingKind::ContextAverage),
        Method::EdgeClassifier { bias, .. } => Some(EmbeddingKind::SkipGram {
            bias: bias.map(|b| (b.return_p, b.inout_q)),
        }),
        _ => None,
    }
}

fn train_embedding(
    subgraph: &Graph,
    kind: EmbeddingKind,
    params: &PipelineParams,
    seed: u64,
) -> Result<EmbeddingMatrix, EvalError> {
    let mut walk_cfg = params.walk;
    walk_cfg.seed = seed;
    let mut train_cfg = params.train.clone();
    train_cfg.seed = seed;
    let corpus = match kind {
        EmbeddingKind::ContextAverage => {
            walk_cfg.bias = None;
            train_cfg.mode = TrainMode::ContextAverage;
            random_walks(subgraph, &walk_cfg)?
        }
        EmbeddingKind::SkipGram { bias } => {
            train_cfg.mode = TrainMode::SkipGram;
            match bias {
                None => {
                    walk_cfg.bias = None;
                    random_walks(subgraph, &walk_cfg)?
                }
                Some((p, q)) => {
                    walk_cfg.bias = Some(WalkBias {
                        return_p: p,
                        inout_q: q,
                    });
                    biased_walks(subgraph, &walk_cfg)?
                }
            }
        }
    };
    Ok(train(&corpus, subgraph.labels(), &train_cfg)?.embedding)
}

/// AUC of `(a + p)/b` at every grid point; the grid always contains `p = 0`
/// (the plain-cosine reference).
pub fn penalty_sweep(
    emb: &EmbeddingMatrix,
    pairs: &[LabeledPair],
    p_min: f64,
    p_max: f64,
    step: f64,
) -> Result<Vec<(f64, f64)>, EvalError> {
    assert!(p_min < p_max && step > 0.0);
    let features: Vec<(PairFeatures, bool)> = pairs
        .iter()
        .map(|p| pair_features(emb, p.u, p.v, ZeroNormPolicy::Epsilon).map(|pf| (pf, p.label)))
        .collect::<Result<_, _>>()?;
    let points = ((p_max - p_min) / step).floor() as usize + 1;
    let mut grid: Vec<f64> = (0..points).map(|i| p_min + i as f64 * step).collect();
    if p_min <= 0.0 && p_max >= 0.0 && !grid.iter().any(|p| p.abs() < 1e-12) {
        grid.push(0.0);
        grid.sort_by(f64::total_cmp);
    }
    let mut rows = Vec::with_capacity(grid.len());
    for p in grid {
        let scored: Vec<(f64, bool)> = features
            .iter()
            .map(|(pf, y)| (score(p, pf), *y))
            .collect();
        rows.push((p, auc_scores(&scored)?));
    }
    Ok(rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct SparsityRow {
    pub fraction: f64,
    pub method: String,
    /// `None` when the fraction was infeasible and the row skipped.
    pub auc: Option<f64>,
}

/// Full pipeline per removal fraction; all methods see the same seeds within
/// a fraction so the comparison is paired.
pub fn sparsity_sweep(
    g: &Graph,
    fractions: &[f64],
    methods: &[Method],
    params: &PipelineParams,
    seed: u64,
) -> Result<Vec<SparsityRow>, EvalError> {
    let mut rows = Vec::new();
    for &fraction in fractions {
        let thinned = match sparsify(g, fraction, seed) {
            Ok(t) => t,
            Err(SplitError::InfeasibleRatio { .. }) => {
                for method in methods {
                    rows.push(SparsityRow {
                        fraction,
                        method: method.name(),
                        auc: None,
                    });
                }
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        match evaluate_methods(&thinned, methods, params, seed) {
            Ok(reports) => {
                for report in reports {
                    rows.push(SparsityRow {
                        fraction,
                        method: report.method,
                        auc: Some(report.mean_auc),
                    });
                }
            }
            Err(EvalError::Split(SplitError::InfeasibleRatio { .. })) => {
                for method in methods {
                    rows.push(SparsityRow {
                        fraction,
                        method: method.name(),
                        auc: None,
                    });
                }
            }
            Err(e) => return Err(e),
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct SensitivityRow {
    pub param: String,
    pub dim: usize,
    pub walk_length: usize,
    pub walks_per_node: usize,
    pub auc: f64,
}

/// One-factor-at-a-time sweeps of dimension, walk length and walks per node;
/// every other parameter stays at its default. Reports the penalty-model AUC.
pub fn sensitivity_sweep(
    g: &Graph,
    dims: &[usize],
    lengths: &[usize],
    walk_counts: &[usize],
    params: &PipelineParams,
    seed: u64,
) -> Result<Vec<SensitivityRow>, EvalError> {
    let mut rows = Vec::new();
    let run = |param: &str, p: PipelineParams| -> Result<SensitivityRow, EvalError> {
        let reports = evaluate_methods(g, &[Method::AdaSim], &p, seed)?;
        Ok(SensitivityRow {
            param: param.to_string(),
            dim: p.train.dim,
            walk_length: p.walk.walk_length,
            walks_per_node: p.walk.walks_per_node,
            auc: reports[0].mean_auc,
        })
    };
    for &d in dims {
        let mut p = params.clone();
        p.train.dim = d;
        rows.push(run("d", p)?);
    }
    for &l in lengths {
        let mut p = params.clone();
        p.walk.walk_length = l;
        rows.push(run("l", p)?);
    }
    for &k in walk_counts {
        let mut p = params.clone();
        p.walk.walks_per_node = k;
        rows.push(run("k", p)?);
    }
    Ok(rows)
}

/// Fraction of positive pairs at each geodesic distance in the residual
/// subgraph. Unreachable pairs land in the `None` bucket; fractions sum to 1.
pub fn distance_histogram(
    g_s: &Graph,
    positives: &[LabeledPair],
) -> Result<Vec<(Option<u32>, f64)>, EvalError> {
    let mut by_source: HashMap<NodeId, Vec<NodeId>> = HashMap::new();
    for p in positives {
        by_source.entry(p.u).or_default().push(p.v);
    }
    let mut counts: HashMap<Option<u32>, usize> = HashMap::new();
    for (source, targets) in by_source {
        let dist = g_s.bfs_distances(source)?;
        for v in targets {
            *counts.entry(dist[v.index()]).or_insert(0) += 1;
        }
    }
    let total = positives.len() as f64;
    let mut rows: Vec<(Option<u32>, f64)> = counts
        .into_iter()
        .map(|(d, c)| (d, c as f64 / total))
        .collect();
    // finite distances ascending, then the unreachable bucket
    rows.sort_by_key(|(d, _)| match d {
        Some(d) => *d as i64,
        None => i64::MAX,
    });
    Ok(rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct CorrelationRow {
    pub edge: String,
    pub operator: String,
    /// `None` marks an undefined (zero-variance) correlation.
    pub pearson: Option<f64>,
}

/// The operator-consistency study: trains node and edge embeddings from one
/// walk corpus, then correlates each operator-built edge vector with the
/// directly learned one. Designed for small graphs.
pub fn edge_feature_correlation(
    g: &Graph,
    walk_cfg: &WalkConfig,
    train_cfg: &TrainConfig,
) -> Result<Vec<CorrelationRow>, EvalError> {
    let corpus = random_walks(g, walk_cfg)?;
    let node_emb = train(&corpus, g.labels(), train_cfg)?.embedding;

    let edge_corpus = derive_edge_sequences(&corpus, g)?;
    let labels = edge_labels(g);
    if let Some(uncovered) = edge_corpus.frequencies.iter().position(|&f| f == 0) {
        return Err(EvalError::UncoveredEdge(labels[uncovered].clone()));
    }
    let edge_emb = train(&edge_corpus, &labels, train_cfg)?.embedding;

    let mut rows = Vec::with_capacity(g.edge_count() * EdgeOperator::ALL.len());
    for (idx, (u, v)) in g.edges().enumerate() {
        let learned = edge_emb.vector(idx);
        for op in EdgeOperator::ALL {
            let heuristic = edge_features(&node_emb, u, v, op).values;
            let pearson = match crate::baselines::pearson(&heuristic, learned) {
                Ok(r) => Some(r),
                Err(BaselineError::ZeroVariance(_)) => None,
                Err(e) => return Err(e.into()),
            };
            rows.push(CorrelationRow {
                edge: labels[idx].clone(),
                operator: op.name().to_string(),
                pearson,
            });
        }
    }
    Ok(rows)
}

// ---------------------------------------------------------------------------
// CSV writers
// ---------------------------------------------------------------------------

pub fn write_scored_csv<W: Write>(
    g: &Graph,
    scored: &[ScoredPair],
    mut w: W,
) -> std::io::Result<()> {
    writeln!(w, "u,v,label,score")?;
    for s in scored {
        writeln!(
            w,
            "{},{},{},{}",
            g.label(s.u),
            g.label(s.v),
            if s.label { 1 } else { 0 },
            s.score
        )?;
    }
    Ok(())
}

pub fn write_penalty_csv<W: Write>(rows: &[(f64, f64)], mut w: W) -> std::io::Result<()> {
    writeln!(w, "p,auc")?;
    for (p, auc) in rows {
        writeln!(w, "{p},{auc}")?;
    }
    Ok(())
}

pub fn write_sparsity_csv<W: Write>(rows: &[SparsityRow], mut w: W) -> std::io::Result<()> {
    writeln!(w, "fraction,method,auc")?;
    for row in rows {
        match row.auc {
            Some(auc) => writeln!(w, "{},{},{}", row.fraction, row.method, auc)?,
            None => writeln!(w, "{},{},NA", row.fraction, row.method)?,
        }
    }
    Ok(())
}

pub fn write_sensitivity_csv<W: Write>(rows: &[SensitivityRow], mut w: W) -> std::io::Result<()> {
    writeln!(w, "param,d,walk_length,walks_per_node,auc")?;
    for row in rows {
        writeln!(
            w,
            "{},{},{},{},{}",
            row.param, row.dim, row.walk_length, row.walks_per_node, row.auc
        )?;
    }
    Ok(())
}

pub fn write_distance_csv<W: Write>(
    rows: &[(Option<u32>, f64)],
    mut w: W,
) -> std::io::Result<()> {
    writeln!(w, "s,probability")?;
    for (d, p) in rows {
        match d {
            Some(d) => writeln!(w, "{d},{p}")?,
            None => writeln!(w, "inf,{p}")?,
        }
    }
    Ok(())
}

pub fn write_correlation_csv<W: Write>(rows: &[CorrelationRow], mut w: W) -> std::io::Result<()> {
    writeln!(w, "edge,operator,pearson")?;
    for row in rows {
        match row.pearson {
            Some(r) => writeln!(w, "{},{},{}", row.edge, row.operator, r)?,
            None => writeln!(w, "{},{},NA", row.edge, row.operator)?,
        }
    }
    Ok(())
}
