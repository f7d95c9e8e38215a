//! Link prediction on undirected simple graphs.
//!
//! The pipeline: remove a seeded fraction of edges as positive samples while
//! keeping each component connected, learn node vectors from random walks on
//! the residual graph, then score candidate pairs with an adaptive similarity
//! `(u·v + p) / (‖u‖‖v‖)` whose single penalty parameter is fit to the data.
//! Six neighborhood heuristics and operator-based edge classifiers provide
//! the comparison baselines; everything is evaluated with exact rank-based
//! AUC under stratified cross-validation.

pub mod baselines;
pub mod embedding;
pub mod eval;
pub mod graph;
pub mod huffman;
pub mod model;
pub(crate) mod rng;
pub mod split;
pub mod walk;

pub use baselines::{
    edge_features, heuristic_score, pearson, train_logreg, tune_hei_alpha, EdgeFeatureVector,
    EdgeOperator, HeuristicIndex, LogRegConfig, LogRegModel,
};
pub use embedding::{
    cosine, train, EmbeddingMatrix, HierarchicalSoftmax, TrainConfig, TrainMode, TrainedEmbedding,
};
pub use eval::{
    auc, auc_scores, distance_histogram, edge_feature_correlation, evaluate_methods,
    evaluate_methods_on_split, penalty_sweep, run_method, sensitivity_sweep, sparsity_sweep,
    EvaluationReport, Method, MethodContext, PipelineParams, ScoredPair, SplitEvaluator,
};
pub use graph::{krackhardt_kite, Graph, GraphError, NodeId, TopologyReport, UnionFind};
pub use huffman::HuffmanTree;
pub use model::{
    loss, pair_features, predict_prob, score, train_penalty, AdaSimModel, PairFeatures, SgdConfig,
    TrainTrace, ZeroNormPolicy,
};
pub use split::{
    generate_split, generate_split_with, k_fold, read_pairs_csv, sample_negatives, sparsify,
    write_pairs_csv, FoldPlan, LabeledPair, SplitError, SplitResult,
};
pub use walk::{
    biased_walks, derive_edge_sequences, edge_labels, random_walks, Corpus, WalkBias, WalkConfig,
    WalkError,
};
