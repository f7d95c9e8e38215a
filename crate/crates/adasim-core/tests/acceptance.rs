//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Criteria 4 and 5 need the public C.elegans and Power datasets in `data/`
//! (or `$ADASIM_DATA_DIR`); run `python3 scripts/fetch_datasets.py` first.
//! Run with `cargo test -p adasim-core --test acceptance -- --nocapture`.

use std::path::{Path, PathBuf};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use adasim_core::baselines::HeuristicIndex;
use adasim_core::embedding::{TrainConfig, EmbeddingMatrix};
use adasim_core::eval::{
    auc_scores, distance_histogram, edge_feature_correlation, evaluate_methods, Method,
    PipelineParams,
};
use adasim_core::graph::{krackhardt_kite, Graph, NodeId, UnionFind};
use adasim_core::huffman::HuffmanTree;
use adasim_core::model::{
    loss, loss_gradient, pair_features, score, train_penalty, PairFeatures, SgdConfig,
    ZeroNormPolicy,
};
use adasim_core::split::generate_split;
use adasim_core::walk::WalkConfig;
use adasim_core::HierarchicalSoftmax;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn pass(line: &str) {
    println!("[PASS] {line}");
}

/// Connected random graph: path backbone plus `extra` random chords.
fn random_graph(n: usize, extra: usize, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut pairs: Vec<(String, String)> = (0..n - 1)
        .map(|i| (i.to_string(), (i + 1).to_string()))
        .collect();
    for _ in 0..extra {
        let a = r.gen_range(0..n);
        let b = r.gen_range(0..n);
        if a != b {
            pairs.push((a.to_string(), b.to_string()));
        }
    }
    Graph::from_labeled_edges(pairs).unwrap()
}

/// Two-component variant, for the per-component connectivity checks.
fn random_two_component_graph(n: usize, extra: usize, seed: u64) -> Graph {
    let mut r = rng(seed);
    let half = n / 2;
    let mut pairs = Vec::new();
    for (lo, hi) in [(0, half), (half, n)] {
        for i in lo..hi - 1 {
            pairs.push((i.to_string(), (i + 1).to_string()));
        }
        for _ in 0..extra / 2 {
            let a = r.gen_range(lo..hi);
            let b = r.gen_range(lo..hi);
            if a != b {
                pairs.push((a.to_string(), b.to_string()));
            }
        }
    }
    Graph::from_labeled_edges(pairs).unwrap()
}

// ---------------------------------------------------------------------------
// Criterion 1: exactness suite
// ---------------------------------------------------------------------------

#[test]
fn criterion_1a_zero_penalty_equals_cosine() {
    let mut r = rng(101);
    let dim = 24;
    for _ in 0..10_000 {
        let a: Vec<f64> = (0..dim).map(|_| r.gen::<f64>() * 4.0 - 2.0).collect();
        let b: Vec<f64> = (0..dim).map(|_| r.gen::<f64>() * 4.0 - 2.0).collect();
        let mut vectors = a.clone();
        vectors.extend(&b);
        let emb = EmbeddingMatrix::new(vectors, dim, vec!["a".into(), "b".into()]);
        let pf = pair_features(&emb, NodeId::new(0), NodeId::new(1), ZeroNormPolicy::Reject)
            .unwrap();
        // independent cosine
        let dot: f64 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
        let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
        let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
        let cosine = dot / (na * nb);
        assert!(
            (score(0.0, &pf) - cosine).abs() < 1e-12,
            "p=0 score {} vs cosine {cosine}",
            score(0.0, &pf)
        );
    }
    pass("criterion 1a: p=0 equals cosine within 1e-12 on 10^4 random pairs");
}

#[test]
fn criterion_1b_penalty_gradient_matches_finite_differences() {
    let mut r = rng(102);
    let h = 1e-6;
    for _ in 0..100 {
        let n = r.gen_range(20..200);
        let pairs: Vec<(PairFeatures, bool)> = (0..n)
            .map(|_| {
                let b = r.gen::<f64>() * 1.5 + 0.5;
                let cos = r.gen::<f64>() * 2.0 - 1.0;
                (
                    PairFeatures {
                        dot: cos * b,
                        norm_product: b,
                    },
                    r.gen(),
                )
            })
            .collect();
        let p = r.gen::<f64>() * 6.0 - 3.0;
        let analytic = loss_gradient(&pairs, p);
        let fd = (loss(&pairs, p + h) - loss(&pairs, p - h)) / (2.0 * h);
        let denom = analytic.abs().max(fd.abs()).max(1e-10);
        assert!(
            ((analytic - fd) / denom).abs() < 1e-6,
            "analytic {analytic} vs fd {fd}"
        );
    }
    pass("criterion 1b: dC/dp matches central differences within 1e-6 relative on 100 datasets");
}

#[test]
fn criterion_1c_auc_matches_pairwise_oracle() {
    let mut r = rng(103);
    let mut checked = 0;
    while checked < 500 {
        let n = r.gen_range(4..80);
        let quantized = r.gen::<bool>();
        let scored: Vec<(f64, bool)> = (0..n)
            .map(|_| {
                let s = if quantized {
                    (r.gen_range(0..6) as f64) / 3.0
                } else {
                    r.gen::<f64>()
                };
                (s, r.gen())
            })
            .collect();
        let n_pos = scored.iter().filter(|(_, y)| *y).count();
        if n_pos == 0 || n_pos == scored.len() {
            continue;
        }
        checked += 1;
        // O(n^2) oracle: wins plus half-ties
        let mut num = 0.0;
        for (sp, yp) in scored.iter().filter(|(_, y)| *y) {
            for (sn, yn) in scored.iter().filter(|(_, y)| !y) {
                let _ = (yp, yn);
                if sp > sn {
                    num += 1.0;
                } else if sp == sn {
                    num += 0.5;
                }
            }
        }
        let oracle = num / (n_pos as f64 * (scored.len() - n_pos) as f64);
        let fast = auc_scores(&scored).unwrap();
        assert_eq!(fast, oracle, "rank AUC differs from pairwise oracle");
    }
    pass("criterion 1c: rank AUC equals the O(n^2) oracle exactly on 500 score sets");
}

#[test]
fn criterion_1d_leaf_probabilities_normalize() {
    let mut r = rng(104);
    for _ in 0..40 {
        let vocab = r.gen_range(2..=16);
        let freqs: Vec<u64> = (0..vocab).map(|_| r.gen_range(1..50)).collect();
        let tree = HuffmanTree::build(&freqs).unwrap();
        let dim = r.gen_range(2..8);
        let weights: Vec<f64> = (0..tree.internal_count() * dim)
            .map(|_| r.gen::<f64>() * 6.0 - 3.0)
            .collect();
        let hs = HierarchicalSoftmax::from_weights(tree, dim, weights);
        let x: Vec<f64> = (0..dim).map(|_| r.gen::<f64>() * 6.0 - 3.0).collect();
        let total: f64 = (0..vocab).map(|t| hs.log_prob(t, &x).exp()).sum();
        assert!((total - 1.0).abs() < 1e-10, "leaves sum to {total}");
    }
    pass("criterion 1d: hierarchical-softmax leaves sum to 1 within 1e-10 on vocab <= 16");
}

#[test]
fn criterion_1e_split_invariants_on_random_graphs() {
    for trial in 0..50 {
        let g = if trial % 3 == 0 {
            random_two_component_graph(40 + trial, 60, 500 + trial as u64)
        } else {
            random_graph(30 + trial, 50, 500 + trial as u64)
        };

        // spanning forest: acyclic, spans every component
        let forest = g.spanning_forest();
        let mut uf = UnionFind::new(g.node_count());
        for (u, v) in &forest {
            assert!(uf.union(u.index(), v.index()), "forest has a cycle");
        }
        let (components, labels) = g.connected_components();
        assert_eq!(forest.len(), g.node_count() - components);
        for (u, v) in g.edges() {
            assert!(uf.connected(u.index(), v.index()), "forest misses an edge's span");
        }

        let ratio = 0.25;
        let split = generate_split(&g, ratio, 900 + trial as u64).unwrap();
        assert_eq!(split.positives.len(), split.negatives.len());
        for p in &split.positives {
            assert!(g.has_edge(p.u, p.v), "positive not an original edge");
            assert!(
                !split.subgraph.has_edge(p.u, p.v),
                "positive still present in subgraph"
            );
        }
        for n in &split.negatives {
            assert!(!g.has_edge(n.u, n.v), "negative is an original edge");
        }
        // per-component connectivity preserved
        let (sub_components, sub_labels) = split.subgraph.connected_components();
        assert_eq!(components, sub_components);
        for a in 0..g.node_count() {
            for b in (a + 1)..g.node_count() {
                if labels[a] == labels[b] {
                    assert_eq!(
                        sub_labels[a], sub_labels[b],
                        "component split apart by edge removal"
                    );
                }
            }
        }
    }
    pass("criterion 1e: forest and split invariants hold on 50 random graphs");
}

// ---------------------------------------------------------------------------
// Criterion 2: heuristic oracle equivalence
// ---------------------------------------------------------------------------

/// Naive reference recomputing every index from raw adjacency.
fn naive_heuristic(g: &Graph, index: HeuristicIndex, u: NodeId, v: NodeId) -> f64 {
    let nbrs = |n: NodeId| g.neighbors(n).to_vec();
    let deg = |n: NodeId| g.neighbors(n).len() as f64;
    let common: Vec<NodeId> = nbrs(u)
        .into_iter()
        .filter(|z| nbrs(v).contains(z))
        .collect();
    match index {
        HeuristicIndex::CommonNeighbors => common.len() as f64,
        HeuristicIndex::ResourceAllocation => common.iter().map(|&z| 1.0 / deg(z)).sum(),
        HeuristicIndex::PreferentialAttachment => deg(u) * deg(v),
        HeuristicIndex::Salton => {
            if deg(u) == 0.0 || deg(v) == 0.0 {
                0.0
            } else {
                common.len() as f64 / (deg(u) * deg(v)).sqrt()
            }
        }
        HeuristicIndex::ClusteringCoefficient => {
            let mut total = 0.0;
            for &z in &common {
                let k = deg(z);
                if k < 2.0 {
                    continue;
                }
                let zn = nbrs(z);
                let mut triangles = 0.0;
                for (i, &a) in zn.iter().enumerate() {
                    for &b in &zn[i + 1..] {
                        if nbrs(a).contains(&b) {
                            triangles += 1.0;
                        }
                    }
                }
                total += triangles / (k * (k - 1.0) / 2.0);
            }
            total
        }
        HeuristicIndex::Heterogeneity { alpha } => {
            let gap = (deg(u) - deg(v)).abs();
            if gap == 0.0 {
                0.0
            } else {
                gap.powf(alpha)
            }
        }
    }
}

#[test]
fn criterion_2_heuristics_match_naive_reference() {
    let indices = [
        HeuristicIndex::CommonNeighbors,
        HeuristicIndex::ResourceAllocation,
        HeuristicIndex::PreferentialAttachment,
        HeuristicIndex::Salton,
        HeuristicIndex::ClusteringCoefficient,
        HeuristicIndex::Heterogeneity { alpha: 1.0 },
        HeuristicIndex::Heterogeneity { alpha: -0.5 },
    ];
    let mut graphs = vec![krackhardt_kite()];
    for trial in 0..20 {
        graphs.push(random_graph(50, 120, 2000 + trial));
    }
    for (gi, g) in graphs.iter().enumerate() {
        for u in g.nodes() {
            for v in g.nodes() {
                if u >= v || g.has_edge(u, v) {
                    continue;
                }
                for index in indices {
                    let fast = adasim_core::baselines::heuristic_score(g, index, u, v).unwrap();
                    let slow = naive_heuristic(g, index, u, v);
                    assert_eq!(
                        fast,
                        slow,
                        "graph {gi}: {} disagrees on non-edge ({u}, {v})",
                        index.name()
                    );
                }
            }
        }
    }
    pass("criterion 2: all six indices match the naive reference exactly on 21 graphs");
}

// ---------------------------------------------------------------------------
// Criterion 3: convex optimum
// ---------------------------------------------------------------------------

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

#[test]
fn criterion_3_descent_matches_scan() {
    let mut r = rng(300);
    let mut done = 0;
    while done < 50 {
        let n = 200;
        let pairs: Vec<(PairFeatures, bool)> = (0..n)
            .map(|_| {
                let b = r.gen::<f64>() * 1.5 + 0.5;
                let cos = r.gen::<f64>() * 2.0 - 1.0;
                let y = r.gen::<f64>() < 1.0 / (1.0 + (-(2.0 * cos + 0.3)).exp());
                (
                    PairFeatures {
                        dot: cos * b,
                        norm_product: b,
                    },
                    y,
                )
            })
            .collect();
        let positives = pairs.iter().filter(|(_, y)| *y).count();
        if positives == 0 || positives == n {
            continue;
        }
        done += 1;
        let model = train_penalty(&pairs, &SgdConfig::default()).unwrap();
        let scan = golden_section(&pairs);
        let gap = loss(&pairs, model.penalty) - loss(&pairs, scan);
        assert!(
            gap < 1e-3,
            "loss gap {gap} (descent p {} vs scan p {scan})",
            model.penalty
        );
    }
    pass("criterion 3: trained penalty within 1e-3 loss of the scan oracle on 50 datasets");
}

// ---------------------------------------------------------------------------
// Criteria 4 and 5: desk-scale reproduction on the public datasets
// ---------------------------------------------------------------------------

fn dataset_path(name: &str) -> PathBuf {
    match std::env::var_os("ADASIM_DATA_DIR") {
        Some(dir) => PathBuf::from(dir).join(name),
        None => Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("../../data")
            .join(name),
    }
}

fn require_dataset(name: &str) -> Graph {
    let path = dataset_path(name);
    if !path.exists() {
        panic!(
            "[FAIL] dataset '{name}' not found at {} — the desk-scale reproduction needs the \
             public datasets; run `python3 scripts/fetch_datasets.py` (network required) or set \
             ADASIM_DATA_DIR. See README.",
            path.display()
        );
    }
    Graph::read_edge_list(&path).expect("dataset parses")
}

fn paper_defaults(folds: usize) -> PipelineParams {
    PipelineParams {
        ratio: 0.5,
        folds,
        walk: WalkConfig {
            walks_per_node: 10,
            walk_length: 80,
            seed: 42,
            bias: None,
        },
        train: TrainConfig::default(), // d=128, window 10, 1 epoch
        sgd: SgdConfig::default(),
        logreg: Default::default(),
    }
}

/// Mean AUC per method over `repeats` re-drawn splits, repeats running two at
/// a time.
fn repeat_means(g: &Graph, methods: &[Method], repeats: u64) -> Vec<f64> {
    let params = paper_defaults(10);
    let all: Vec<Vec<f64>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..repeats)
            .map(|rep| {
                let params = &params;
                scope.spawn(move || {
                    evaluate_methods(g, methods, params, 42 + rep)
                        .expect("repeat evaluates")
                        .iter()
                        .map(|rep| rep.mean_auc)
                        .collect::<Vec<f64>>()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    (0..methods.len())
        .map(|m| all.iter().map(|rep| rep[m]).sum::<f64>() / repeats as f64)
        .collect()
}

#[test]
fn criterion_4_desk_scale_reproduction() {
    // C.elegans: 297 nodes, 2148 edges after undirected simplification
    let celegans = require_dataset("celegans.edgelist");
    assert_eq!(celegans.node_count(), 297, "C.elegans node count");
    assert_eq!(celegans.edge_count(), 2148, "C.elegans edge count");
    let report = celegans.topology_report(false);
    assert!((report.avg_degree - 14.47).abs() < 0.01, "avg degree {}", report.avg_degree);
    assert!(
        (report.density - 4.89e-2).abs() / 4.89e-2 < 0.01,
        "density {}",
        report.density
    );
    assert!(
        (report.avg_clustering - 0.2924).abs() < 5e-5,
        "avg clustering {}",
        report.avg_clustering
    );

    let methods = [
        Method::AdaSim,
        Method::Cosine,
        Method::PreferentialAttachment,
    ];
    let means = repeat_means(&celegans, &methods, 10);
    let (adasim, cosine, pa) = (means[0], means[1], means[2]);
    println!(
        "criterion 4 (C.elegans): AdaSim {adasim:.4}, Cosine {cosine:.4}, PA {pa:.4}"
    );
    assert!(
        (adasim - 0.7758).abs() <= 0.04,
        "C.elegans AdaSim mean AUC {adasim} outside 0.7758 +/- 0.04"
    );
    assert!(
        adasim > cosine,
        "AdaSim {adasim} not above plain cosine {cosine}"
    );
    assert!(
        (pa - 0.7214).abs() <= 0.03,
        "C.elegans PA mean AUC {pa} outside 0.7214 +/- 0.03"
    );

    // Power grid: 4941 nodes, 6594 edges
    let power = require_dataset("power.edgelist");
    assert_eq!(power.node_count(), 4941, "Power node count");
    assert_eq!(power.edge_count(), 6594, "Power edge count");
    let report = power.topology_report(false);
    assert!(
        (report.avg_clustering - 0.0801).abs() < 5e-5,
        "Power avg clustering {}",
        report.avg_clustering
    );

    let methods = [
        Method::AdaSim,
        Method::CommonNeighbors,
        Method::ResourceAllocation,
        Method::PreferentialAttachment,
        Method::Salton,
        Method::ClusteringCoefficient,
        Method::Heterogeneity,
    ];
    let means = repeat_means(&power, &methods, 10);
    let adasim = means[0];
    println!(
        "criterion 4 (Power): AdaSim {adasim:.4}, heuristics {:?}",
        &means[1..]
    );
    assert!(
        (adasim - 0.7675).abs() <= 0.05,
        "Power AdaSim mean AUC {adasim} outside 0.7675 +/- 0.05"
    );
    for (m, mean) in methods.iter().zip(&means).skip(1) {
        assert!(
            adasim > *mean,
            "Power AdaSim {adasim} not above {} {mean}",
            m.name()
        );
    }
    pass("criterion 4: desk-scale AUC reproduction on C.elegans and Power");
}

#[test]
fn criterion_5_distance_pattern() {
    let celegans = require_dataset("celegans.edgelist");
    let mut mass_leq_3 = Vec::new();
    for rep in 0..10u64 {
        let split = generate_split(&celegans, 0.5, 42 + rep).unwrap();
        let rows = distance_histogram(&split.subgraph, &split.positives).unwrap();
        let mass: f64 = rows
            .iter()
            .filter(|(d, _)| matches!(d, Some(d) if *d <= 3))
            .map(|(_, p)| p)
            .sum();
        mass_leq_3.push(mass);
    }
    let mean = mass_leq_3.iter().sum::<f64>() / mass_leq_3.len() as f64;
    println!("criterion 5: mean positive-pair mass at distance <= 3: {mean:.4}");
    assert!(
        mean >= 0.95,
        "only {mean:.4} of positive mass within distance 3 (need >= 0.95)"
    );
    pass("criterion 5: >= 95% of positive-pair mass at geodesic distance <= 3 on C.elegans");
}

// ---------------------------------------------------------------------------
// Criterion 6: operator-correlation study
// ---------------------------------------------------------------------------

#[test]
fn criterion_6_weak_operator_correlations() {
    let g = krackhardt_kite();
    let mut fractions = Vec::new();
    for seed in 0..5u64 {
        let rows = edge_feature_correlation(
            &g,
            &WalkConfig {
                walks_per_node: 10,
                walk_length: 80,
                seed,
                bias: None,
            },
            &TrainConfig {
                seed,
                ..TrainConfig::default()
            },
        )
        .unwrap();
        assert_eq!(rows.len(), 90);
        let weak = rows
            .iter()
            .filter(|r| matches!(r.pearson, Some(p) if p.abs() < 0.5))
            .count();
        fractions.push(weak as f64 / rows.len() as f64);
    }
    let mean = fractions.iter().sum::<f64>() / fractions.len() as f64;
    println!("criterion 6: mean fraction of |pearson| < 0.5: {mean:.3} {fractions:?}");
    assert!(
        mean >= 0.60,
        "only {mean:.3} of correlations are weak (need >= 0.60)"
    );
    pass("criterion 6: >= 60% of operator correlations weak, averaged over 5 seeds");
}

// ---------------------------------------------------------------------------
// Criterion 7: the full-scale recipe runs unmodified on any edge list
// ---------------------------------------------------------------------------

#[test]
fn criterion_7_pipeline_recipe_runs_on_provided_graphs() {
    // Full-scale values on the large networks are out of scope at desk scale;
    // this exercises the identical pipeline code path on a synthetic
    // stand-in of a few hundred nodes.
    let mut pairs = Vec::new();
    let name = |c: usize, i: usize| format!("c{c}n{i}");
    for c in 0..30 {
        for i in 0..10 {
            for j in i + 1..10 {
                if (i + j + c) % 3 != 0 {
                    pairs.push((name(c, i), name(c, j)));
                }
            }
        }
        pairs.push((name(c, 0), name((c + 1) % 30, 1)));
    }
    let g = Graph::from_labeled_edges(pairs).unwrap();
    assert!(g.node_count() == 300);

    let reports = evaluate_methods(
        &g,
        &[Method::AdaSim, Method::Cosine, Method::PreferentialAttachment],
        &paper_defaults(10),
        42,
    )
    .unwrap();
    for report in &reports {
        assert!(
            report.fold_aucs.iter().all(|a| (0.0..=1.0).contains(a)),
            "{}: AUC out of range",
            report.method
        );
    }
    assert!(
        reports[0].mean_auc > 0.5,
        "pipeline found no signal on a structured graph"
    );
    pass("criterion 7: pipeline recipe runs unmodified on a provided edge list");
}
