//! Positive/negative sample construction for link prediction.
//!
//! Positives are edges removed from the graph; the spanning forest is
//! protected so every component of the original graph stays connected in the
//! residual subgraph. Negatives are uniformly sampled non-edges, one per
//! positive.

use std::collections::HashSet;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::graph::{Graph, GraphError, NodeId};
use crate::rng::{domain, stream_rng};

/// Node pair with a binary label: `true` for a removed edge (positive),
/// `false` for a sampled non-edge (negative). Stored with `u < v`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct LabeledPair {
    pub u: NodeId,
    pub v: NodeId,
    pub label: bool,
}

impl LabeledPair {
    pub fn new(u: NodeId, v: NodeId, label: bool) -> LabeledPair {
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        LabeledPair { u, v, label }
    }
}

/// Residual subgraph plus the labeled sample sets drawn from a graph.
#[derive(Clone, Debug)]
pub struct SplitResult {
    pub subgraph: Graph,
    pub positives: Vec<LabeledPair>,
    pub negatives: Vec<LabeledPair>,
    pub seed: u64,
    pub ratio: f64,
}

impl SplitResult {
    pub fn pairs(&self) -> Vec<LabeledPair> {
        let mut all = self.positives.clone();
        all.extend_from_slice(&self.negatives);
        all
    }
}

/// Stratified fold assignment, aligned index-for-index with the pair slice it
/// was built from.
#[derive(Clone, Debug)]
pub struct FoldPlan {
    pub k: usize,
    pub assignments: Vec<usize>,
}

#[derive(Error, Debug)]
pub enum SplitError {
    #[error(
        "ratio {requested} infeasible: only {removable} of {edges} edges are outside the \
         spanning forest (max feasible ratio {max_ratio:.4})"
    )]
    InfeasibleRatio {
        requested: f64,
        removable: usize,
        edges: usize,
        max_ratio: f64,
    },
    #[error("cannot sample {requested} negatives: graph has only {available} non-edges")]
    NotEnoughNonEdges { requested: usize, available: usize },
    #[error("negative sampling exhausted {draws} draws for {requested} samples")]
    SamplingExhausted { draws: usize, requested: usize },
    #[error("k-fold requires k >= 2 and at least k pairs per label class (k={k}, positives={positives}, negatives={negatives})")]
    FoldTooSmall {
        k: usize,
        positives: usize,
        negatives: usize,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{path}:{line}: {message}")]
    PairFile {
        path: String,
        line: usize,
        message: String,
    },
}

/// Removes `floor(|E| * ratio)` non-forest edges as positives and samples an
/// equal number of non-edges as negatives. Deterministic in `(g, ratio, seed)`.
pub fn generate_split(g: &Graph, ratio: f64, seed: u64) -> Result<SplitResult, SplitError> {
    generate_split_with(g, ratio, seed, true)
}

/// As [`generate_split`], optionally dropping forest protection; every edge is
/// then removable and the subgraph may disconnect (used for the all-links
/// protocol on tiny sparse graphs).
pub fn generate_split_with(
    g: &Graph,
    ratio: f64,
    seed: u64,
    protect_forest: bool,
) -> Result<SplitResult, SplitError> {
    let n = (g.edge_count() as f64 * ratio).floor() as usize;
    let mut removable = removable_edges(g, protect_forest);
    if n > removable.len() {
        return Err(SplitError::InfeasibleRatio {
            requested: ratio,
            removable: removable.len(),
            edges: g.edge_count(),
            max_ratio: removable.len() as f64 / g.edge_count() as f64,
        });
    }

    let mut rng = stream_rng(seed, domain::SPLIT, 0, 0);
    removable.shuffle(&mut rng);
    removable.truncate(n);
    let positives: Vec<LabeledPair> = removable
        .iter()
        .map(|&(u, v)| LabeledPair::new(u, v, true))
        .collect();

    let mut neg_rng = stream_rng(seed, domain::NEGATIVE, 0, 0);
    let negatives = sample_negatives_with(g, n, &mut neg_rng)?;

    let subgraph = g.without_edges(&removable);
    Ok(SplitResult {
        subgraph,
        positives,
        negatives,
        seed,
        ratio,
    })
}

fn removable_edges(g: &Graph, protect_forest: bool) -> Vec<(NodeId, NodeId)> {
    if !protect_forest {
        return g.edges().collect();
    }
    let forest: HashSet<(NodeId, NodeId)> = g.spanning_forest().into_iter().collect();
    g.edges().filter(|e| !forest.contains(e)).collect()
}

/// Uniformly samples `count` distinct non-adjacent pairs by rejection, giving
/// up after `100 * count` draws.
pub fn sample_negatives(
    g: &Graph,
    count: usize,
    seed: u64,
) -> Result<Vec<LabeledPair>, SplitError> {
    let mut rng = stream_rng(seed, domain::NEGATIVE, 0, 0);
    sample_negatives_with(g, count, &mut rng)
}

fn sample_negatives_with<R: Rng>(
    g: &Graph,
    count: usize,
    rng: &mut R,
) -> Result<Vec<LabeledPair>, SplitError> {
    let n = g.node_count();
    let available = n * (n - 1) / 2 - g.edge_count();
    if count > available {
        return Err(SplitError::NotEnoughNonEdges {
            requested: count,
            available,
        });
    }
    let budget = 100usize.saturating_mul(count);
    let mut seen: HashSet<(NodeId, NodeId)> = HashSet::with_capacity(count);
    let mut out = Vec::with_capacity(count);
    let mut draws = 0;
    while out.len() < count {
        if draws >= budget {
            return Err(SplitError::SamplingExhausted {
                draws,
                requested: count,
            });
        }
        draws += 1;
        let u = NodeId::new(rng.gen_range(0..n));
        let v = NodeId::new(rng.gen_range(0..n));
        if u == v {
            continue;
        }
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        if g.has_edge(u, v) || !seen.insert((u, v)) {
            continue;
        }
        out.push(LabeledPair::new(u, v, false));
    }
    Ok(out)
}

/// Stratified k-fold assignment: within each label class the fold sizes
/// differ by at most one.
pub fn k_fold(pairs: &[LabeledPair], k: usize, seed: u64) -> Result<FoldPlan, SplitError> {
    let positives: Vec<usize> = (0..pairs.len()).filter(|&i| pairs[i].label).collect();
    let negatives: Vec<usize> = (0..pairs.len()).filter(|&i| !pairs[i].label).collect();
    if k < 2 || positives.len() < k || negatives.len() < k {
        return Err(SplitError::FoldTooSmall {
            k,
            positives: positives.len(),
            negatives: negatives.len(),
        });
    }
    let mut assignments = vec![0usize; pairs.len()];
    let mut rng = stream_rng(seed, domain::FOLD, 0, 0);
    for class in [positives, negatives] {
        let mut order = class;
        order.shuffle(&mut rng);
        for (slot, idx) in order.into_iter().enumerate() {
            assignments[idx] = slot % k;
        }
    }
    Ok(FoldPlan { k, assignments })
}

/// Removes `floor(|E| * fraction)` non-forest edges, preserving per-component
/// connectivity. Used by the sparsity sweep.
pub fn sparsify(g: &Graph, fraction: f64, seed: u64) -> Result<Graph, SplitError> {
    let n = (g.edge_count() as f64 * fraction).floor() as usize;
    let mut removable = removable_edges(g, true);
    if n > removable.len() {
        return Err(SplitError::InfeasibleRatio {
            requested: fraction,
            removable: removable.len(),
            edges: g.edge_count(),
            max_ratio: removable.len() as f64 / g.edge_count() as f64,
        });
    }
    let mut rng = stream_rng(seed, domain::SPARSIFY, 0, 0);
    removable.shuffle(&mut rng);
    removable.truncate(n);
    Ok(g.without_edges(&removable))
}

impl SplitResult {
    /// Writes `subgraph.edgelist`, `positives.csv` and `negatives.csv`
    /// (header `u,v,label`, original labels) into `dir`.
    pub fn write_dir<P: AsRef<Path>>(&self, g: &Graph, dir: P) -> Result<(), SplitError> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir)?;
        let mut f = fs::File::create(dir.join("subgraph.edgelist"))?;
        self.subgraph.write_edge_list(&mut f)?;
        write_pairs_csv(&self.positives, g, dir.join("positives.csv"))?;
        write_pairs_csv(&self.negatives, g, dir.join("negatives.csv"))?;
        Ok(())
    }
}

pub fn write_pairs_csv<P: AsRef<Path>>(
    pairs: &[LabeledPair],
    g: &Graph,
    path: P,
) -> Result<(), SplitError> {
    let mut f = fs::File::create(path)?;
    writeln!(f, "u,v,label")?;
    for p in pairs {
        writeln!(
            f,
            "{},{},{}",
            g.label(p.u),
            g.label(p.v),
            if p.label { 1 } else { 0 }
        )?;
    }
    Ok(())
}

/// Reads a `u,v,label` CSV back against the graph's label table.
pub fn read_pairs_csv<P: AsRef<Path>>(g: &Graph, path: P) -> Result<Vec<LabeledPair>, SplitError> {
    let path = path.as_ref();
    let display = path.display().to_string();
    let file = fs::File::open(path)?;
    let mut pairs = Vec::new();
    for (lineno, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if lineno == 0 {
            if line.trim() != "u,v,label" {
                return Err(SplitError::PairFile {
                    path: display,
                    line: 1,
                    message: format!("expected header 'u,v,label', got '{}'", line.trim()),
                });
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.trim().split(',').collect();
        if fields.len() != 3 {
            return Err(SplitError::PairFile {
                path: display,
                line: lineno + 1,
                message: format!("expected 3 fields, got {}", fields.len()),
            });
        }
        let resolve = |label: &str| {
            g.node_by_label(label).ok_or_else(|| SplitError::PairFile {
                path: display.clone(),
                line: lineno + 1,
                message: format!("unknown node label '{label}'"),
            })
        };
        let u = resolve(fields[0])?;
        let v = resolve(fields[1])?;
        let label = match fields[2] {
            "1" => true,
            "0" => false,
            other => {
                return Err(SplitError::PairFile {
                    path: display,
                    line: lineno + 1,
                    message: format!("label must be 0 or 1, got '{other}'"),
                })
            }
        };
        pairs.push(LabeledPair::new(u, v, label));
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::krackhardt_kite;

    #[test]
    fn tree_input_has_no_removable_edges() {
        let g = Graph::from_labeled_edges([("a", "b"), ("b", "c"), ("c", "d")]).unwrap();
        let err = generate_split(&g, 0.5, 42).unwrap_err();
        assert!(matches!(err, SplitError::InfeasibleRatio { .. }));
    }

    #[test]
    fn split_invariants_on_kite() {
        let g = krackhardt_kite();
        let split = generate_split(&g, 0.4, 7).unwrap();
        assert_eq!(split.positives.len(), 7); // floor(18 * 0.4)
        assert_eq!(split.negatives.len(), split.positives.len());
        for p in &split.positives {
            assert!(g.has_edge(p.u, p.v));
            assert!(!split.subgraph.has_edge(p.u, p.v));
        }
        for n in &split.negatives {
            assert!(!g.has_edge(n.u, n.v));
        }
        // per-component connectivity preserved (kite is connected)
        let (components, _) = split.subgraph.connected_components();
        assert_eq!(components, 1);
    }

    #[test]
    fn split_is_deterministic() {
        let g = krackhardt_kite();
        let a = generate_split(&g, 0.3, 99).unwrap();
        let b = generate_split(&g, 0.3, 99).unwrap();
        assert_eq!(a.positives, b.positives);
        assert_eq!(a.negatives, b.negatives);
        let c = generate_split(&g, 0.3, 100).unwrap();
        assert!(a.positives != c.positives || a.negatives != c.negatives);
    }

    #[test]
    fn unprotected_split_can_take_everything() {
        let g = krackhardt_kite();
        let split = generate_split_with(&g, 1.0, 5, false).unwrap();
        assert_eq!(split.positives.len(), 18);
        assert_eq!(split.subgraph.edge_count(), 0);
    }

    #[test]
    fn negatives_on_complete_graph_fail() {
        let g = Graph::from_labeled_edges([("a", "b"), ("a", "c"), ("b", "c")]).unwrap();
        assert!(matches!(
            sample_negatives(&g, 1, 0),
            Err(SplitError::NotEnoughNonEdges { .. })
        ));
        assert!(sample_negatives(&g, 0, 0).unwrap().is_empty());
    }

    #[test]
    fn negatives_are_non_edges_and_distinct() {
        let g = krackhardt_kite();
        // kite: 45 pairs, 18 edges -> 27 non-edges
        let negs = sample_negatives(&g, 27, 3).unwrap();
        assert_eq!(negs.len(), 27);
        let distinct: HashSet<_> = negs.iter().map(|p| (p.u, p.v)).collect();
        assert_eq!(distinct.len(), 27);
        for p in &negs {
            assert!(!g.has_edge(p.u, p.v), "sampled an edge {:?}", p);
            assert!(p.u < p.v);
        }
    }

    #[test]
    fn fold_stratification() {
        let mut pairs = Vec::new();
        for i in 0..10 {
            pairs.push(LabeledPair::new(NodeId::new(0), NodeId::new(i + 1), true));
            pairs.push(LabeledPair::new(NodeId::new(20), NodeId::new(i + 21), false));
        }
        let plan = k_fold(&pairs, 10, 1).unwrap();
        for fold in 0..10 {
            let members: Vec<_> = pairs
                .iter()
                .zip(&plan.assignments)
                .filter(|(_, &a)| a == fold)
                .map(|(p, _)| p)
                .collect();
            assert_eq!(members.len(), 2);
            assert_eq!(members.iter().filter(|p| p.label).count(), 1);
        }
    }

    #[test]
    fn folds_partition_input() {
        let g = krackhardt_kite();
        let split = generate_split(&g, 0.4, 11).unwrap();
        let pairs = split.pairs();
        let plan = k_fold(&pairs, 2, 11).unwrap();
        assert_eq!(plan.assignments.len(), pairs.len());
        let per_fold: Vec<usize> = (0..2)
            .map(|f| plan.assignments.iter().filter(|&&a| a == f).count())
            .collect();
        assert_eq!(per_fold.iter().sum::<usize>(), pairs.len());
        assert!((per_fold[0] as i64 - per_fold[1] as i64).abs() <= 2);
    }

    #[test]
    fn fold_preconditions() {
        let pairs = vec![
            LabeledPair::new(NodeId::new(0), NodeId::new(1), true),
            LabeledPair::new(NodeId::new(0), NodeId::new(2), false),
        ];
        assert!(k_fold(&pairs, 2, 0).is_err()); // only 1 per class
        assert!(k_fold(&pairs, 1, 0).is_err());
    }

    #[test]
    fn sparsify_zero_is_identity() {
        let g = krackhardt_kite();
        let s = sparsify(&g, 0.0, 4).unwrap();
        assert_eq!(s.edge_count(), g.edge_count());
    }

    #[test]
    fn sparsify_preserves_connectivity() {
        let g = krackhardt_kite();
        let s = sparsify(&g, 0.5, 4).unwrap();
        assert_eq!(s.edge_count(), 9);
        let (components, _) = s.connected_components();
        assert_eq!(components, 1);
    }

    #[test]
    fn csv_round_trip() {
        let g = krackhardt_kite();
        let split = generate_split(&g, 0.4, 21).unwrap();
        let dir = tempfile::tempdir().unwrap();
        split.write_dir(&g, dir.path()).unwrap();
        let pos = read_pairs_csv(&g, dir.path().join("positives.csv")).unwrap();
        let neg = read_pairs_csv(&g, dir.path().join("negatives.csv")).unwrap();
        assert_eq!(pos, split.positives);
        assert_eq!(neg, split.negatives);
        let sub = Graph::read_edge_list(dir.path().join("subgraph.edgelist")).unwrap();
        assert_eq!(sub.edge_count(), split.subgraph.edge_count());
    }
}
