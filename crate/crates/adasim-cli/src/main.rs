//! `adasim` — link prediction experiments from the shell.
//!
//! Every subcommand honors `--seed`; omitting it falls back to the
//! documented default (42) and says so on stderr.

mod pipeline;

use std::fs::{self, File};
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use adasim_core::baselines::EdgeOperator;
use adasim_core::embedding::{EmbeddingMatrix, TrainConfig, TrainMode};
use adasim_core::eval::{
    self, distance_histogram, edge_feature_correlation, penalty_sweep, Method, ScoredPair,
};
use adasim_core::graph::Graph;
use adasim_core::model::{
    pair_features, train_penalty, AdaSimModel, PairFeatures, SgdConfig, ZeroNormPolicy,
};
use adasim_core::split::{generate_split_with, k_fold, read_pairs_csv};
use adasim_core::walk::{biased_walks, random_walks, Corpus, WalkBias, WalkConfig};

pub const DEFAULT_SEED: u64 = 42;

#[derive(Parser)]
#[command(name = "adasim", version, about = "Link prediction with an adaptive similarity function")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct WalkArgs {
    /// Walks started per node per pass
    #[arg(long, default_value_t = 10)]
    walks_per_node: usize,
    /// Nodes per walk
    #[arg(long, default_value_t = 80)]
    walk_length: usize,
}

#[derive(Args, Clone)]
struct EmbedArgs {
    /// Embedding dimension
    #[arg(long, default_value_t = 128)]
    dim: usize,
    /// Context window on each side
    #[arg(long, default_value_t = 10)]
    window: usize,
    /// Training epochs over the corpus
    #[arg(long, default_value_t = 1)]
    epochs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Topology summary of an edge-list graph
    Stats {
        graph: PathBuf,
        /// Compute the exact diameter (all-pairs BFS; slow on large graphs)
        #[arg(long)]
        diameter: bool,
        #[arg(long)]
        json: bool,
    },
    /// Remove a seeded fraction of edges as positives and sample negatives
    Split {
        graph: PathBuf,
        /// Fraction of edges removed as positives
        #[arg(long, default_value_t = 0.5)]
        ratio: f64,
        #[arg(long)]
        seed: Option<u64>,
        /// Allow removing spanning-forest edges (subgraph may disconnect)
        #[arg(long)]
        no_forest_protection: bool,
        /// Output directory for subgraph.edgelist, positives.csv, negatives.csv
        #[arg(long)]
        out: PathBuf,
    },
    /// Write a random-walk corpus (one walk per line, node labels)
    Walk {
        graph: PathBuf,
        #[command(flatten)]
        walk: WalkArgs,
        /// Return parameter for biased walks
        #[arg(long)]
        p: Option<f64>,
        /// In-out parameter for biased walks
        #[arg(long)]
        q: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Train node embeddings from a walk corpus
    Embed {
        /// Walk corpus produced by `walk`
        walks: PathBuf,
        #[command(flatten)]
        embed: EmbedArgs,
        /// context-average or skip-gram
        #[arg(long, default_value = "context-average")]
        mode: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Learn the similarity penalty from a split's labeled pairs
    Train {
        graph: PathBuf,
        /// Directory written by `split`
        #[arg(long)]
        split_dir: PathBuf,
        #[arg(long)]
        embeddings: PathBuf,
        /// Fraction of pairs used for training; the rest is scored and reported
        #[arg(long, default_value_t = 1.0)]
        train_fraction: f64,
        #[arg(long, default_value_t = 0.1)]
        learning_rate: f64,
        #[arg(long, default_value_t = 500)]
        epochs: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Model file (penalty + metadata)
        #[arg(long)]
        out: PathBuf,
        /// Optional epoch,loss trace CSV
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Score labeled pairs with a trained model
    Score {
        graph: PathBuf,
        #[arg(long)]
        embeddings: PathBuf,
        #[arg(long)]
        model: PathBuf,
        /// u,v,label CSV
        #[arg(long)]
        pairs: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// AUC of a scored CSV (u,v,label,score)
    Eval {
        scored: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Full experiment: split, embed, learn, cross-validate every method
    Pipeline(pipeline::PipelineArgs),
    /// Parameter studies writing CSV grids
    Sweep {
        #[command(subcommand)]
        kind: SweepCommand,
    },
    /// Study CSVs: operator correlations and positive-pair distances
    Figure {
        #[command(subcommand)]
        kind: FigureCommand,
    },
}

#[derive(Subcommand)]
enum SweepCommand {
    /// AUC as a function of the penalty over a fixed grid
    Penalty {
        graph: PathBuf,
        #[arg(long, default_value_t = -50.0, allow_hyphen_values = true)]
        min: f64,
        #[arg(long, default_value_t = 50.0, allow_hyphen_values = true)]
        max: f64,
        #[arg(long, default_value_t = 1.0)]
        step: f64,
        #[arg(long, default_value_t = 0.5)]
        ratio: f64,
        #[command(flatten)]
        walk: WalkArgs,
        #[command(flatten)]
        embed: EmbedArgs,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Method AUC under increasing edge removal
    Sparsity {
        graph: PathBuf,
        /// Comma-separated removal fractions, e.g. 0.5,0.6,0.7,0.8
        #[arg(long, value_delimiter = ',')]
        fractions: Vec<f64>,
        /// Comma-separated methods (see `pipeline --help`)
        #[arg(long, default_value = "adasim,pa,ra")]
        methods: String,
        #[arg(long, default_value_t = 0.5)]
        ratio: f64,
        #[arg(long, default_value_t = 10)]
        folds: usize,
        #[command(flatten)]
        walk: WalkArgs,
        #[command(flatten)]
        embed: EmbedArgs,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// One-factor-at-a-time sensitivity of the penalty model
    Sensitivity {
        graph: PathBuf,
        /// Swept parameter: d, l or k
        #[arg(long)]
        param: String,
        /// Comma-separated grid values
        #[arg(long, value_delimiter = ',')]
        grid: Vec<usize>,
        #[arg(long, default_value_t = 0.5)]
        ratio: f64,
        #[arg(long, default_value_t = 10)]
        folds: usize,
        #[command(flatten)]
        walk: WalkArgs,
        #[command(flatten)]
        embed: EmbedArgs,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum FigureCommand {
    /// Pearson correlation between operator-built and learned edge vectors
    Correlation {
        graph: PathBuf,
        #[command(flatten)]
        walk: WalkArgs,
        #[command(flatten)]
        embed: EmbedArgs,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Geodesic-distance distribution of positive pairs in the subgraph
    Distances {
        graph: PathBuf,
        #[arg(long, default_value_t = 0.5)]
        ratio: f64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
}

pub fn resolve_seed(seed: Option<u64>) -> u64 {
    match seed {
        Some(s) => s,
        None => {
            eprintln!("no --seed given; using default {DEFAULT_SEED}");
            DEFAULT_SEED
        }
    }
}

fn load_graph(path: &Path) -> Result<Graph> {
    Graph::read_edge_list(path).with_context(|| format!("loading graph {}", path.display()))
}

fn load_aligned_embeddings(path: &Path, g: &Graph) -> Result<EmbeddingMatrix> {
    let emb = EmbeddingMatrix::load_file(path)
        .with_context(|| format!("loading embeddings {}", path.display()))?;
    emb.aligned_to(g.labels())
        .context("aligning embeddings to graph nodes")
}

fn parse_mode(s: &str) -> Result<TrainMode> {
    match s {
        "context-average" | "cbow" => Ok(TrainMode::ContextAverage),
        "skip-gram" | "skipgram" | "sg" => Ok(TrainMode::SkipGram),
        other => bail!("unknown mode '{other}' (use context-average or skip-gram)"),
    }
}

/// Expands a comma-separated method list. `deepwalk` and `node2vec` expand to
/// one classifier per binary operator.
pub fn parse_methods(spec: &str, p: f64, q: f64) -> Result<Vec<Method>> {
    let mut methods = Vec::new();
    for token in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match token.to_lowercase().as_str() {
            "adasim" => methods.push(Method::AdaSim),
            "cosine" => methods.push(Method::Cosine),
            "cn" => methods.push(Method::CommonNeighbors),
            "ra" => methods.push(Method::ResourceAllocation),
            "pa" => methods.push(Method::PreferentialAttachment),
            "si" => methods.push(Method::Salton),
            "cclp" => methods.push(Method::ClusteringCoefficient),
            "hei" => methods.push(Method::Heterogeneity),
            "heuristics" => methods.extend([
                Method::CommonNeighbors,
                Method::ResourceAllocation,
                Method::PreferentialAttachment,
                Method::Salton,
                Method::ClusteringCoefficient,
                Method::Heterogeneity,
            ]),
            "deepwalk" => {
                for operator in EdgeOperator::ALL {
                    methods.push(Method::EdgeClassifier {
                        operator,
                        bias: None,
                    });
                }
            }
            "node2vec" => {
                for operator in EdgeOperator::ALL {
                    methods.push(Method::EdgeClassifier {
                        operator,
                        bias: Some(WalkBias {
                            return_p: p,
                            inout_q: q,
                        }),
                    });
                }
            }
            "all" => {
                return parse_methods("adasim,cosine,heuristics,deepwalk,node2vec", p, q);
            }
            other => bail!(
                "unknown method '{other}' (known: adasim, cosine, cn, ra, pa, si, cclp, hei, \
                 heuristics, deepwalk, node2vec, all)"
            ),
        }
    }
    if methods.is_empty() {
        bail!("method list is empty");
    }
    Ok(methods)
}

fn read_walk_corpus(path: &Path) -> Result<(Corpus, Vec<String>)> {
    let file = File::open(path).with_context(|| format!("opening walks {}", path.display()))?;
    let mut labels: Vec<String> = Vec::new();
    let mut index: std::collections::HashMap<String, u32> = std::collections::HashMap::new();
    let mut sequences = Vec::new();
    for line in BufReader::new(file).lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let seq: Vec<u32> = line
            .split_whitespace()
            .map(|token| {
                *index.entry(token.to_string()).or_insert_with(|| {
                    labels.push(token.to_string());
                    (labels.len() - 1) as u32
                })
            })
            .collect();
        sequences.push(seq);
    }
    if sequences.is_empty() {
        bail!("walk corpus {} is empty", path.display());
    }
    let vocab = labels.len();
    let mut frequencies = vec![0u64; vocab];
    for seq in &sequences {
        for &t in seq {
            frequencies[t as usize] += 1;
        }
    }
    Ok((
        Corpus {
            sequences,
            vocab_size: vocab,
            frequencies,
        },
        labels,
    ))
}

fn read_scored_csv(path: &Path) -> Result<Vec<(f64, bool)>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let mut rows = Vec::new();
    for (lineno, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if lineno == 0 {
            if line.trim() != "u,v,label,score" {
                bail!("{}: expected header u,v,label,score", path.display());
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.trim().split(',').collect();
        if fields.len() != 4 {
            bail!("{}:{}: expected 4 fields", path.display(), lineno + 1);
        }
        let label = match fields[2] {
            "1" => true,
            "0" => false,
            other => bail!("{}:{}: bad label '{other}'", path.display(), lineno + 1),
        };
        let score: f64 = fields[3]
            .parse()
            .with_context(|| format!("{}:{}: bad score", path.display(), lineno + 1))?;
        rows.push((score, label));
    }
    Ok(rows)
}

fn create_out_file(path: &Path) -> Result<File> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    File::create(path).with_context(|| format!("creating {}", path.display()))
}

fn main() {
    if let Err(err) = run() {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}

fn run() -> Result<()> {
    match Cli::parse().command {
        Command::Stats {
            graph,
            diameter,
            json,
        } => cmd_stats(&graph, diameter, json),
        Command::Split {
            graph,
            ratio,
            seed,
            no_forest_protection,
            out,
        } => cmd_split(&graph, ratio, seed, no_forest_protection, &out),
        Command::Walk {
            graph,
            walk,
            p,
            q,
            seed,
            out,
        } => cmd_walk(&graph, &walk, p, q, seed, &out),
        Command::Embed {
            walks,
            embed,
            mode,
            seed,
            out,
        } => cmd_embed(&walks, &embed, &mode, seed, &out),
        Command::Train {
            graph,
            split_dir,
            embeddings,
            train_fraction,
            learning_rate,
            epochs,
            seed,
            out,
            trace,
        } => cmd_train(
            &graph,
            &split_dir,
            &embeddings,
            train_fraction,
            learning_rate,
            epochs,
            seed,
            &out,
            trace.as_deref(),
        ),
        Command::Score {
            graph,
            embeddings,
            model,
            pairs,
            out,
        } => cmd_score(&graph, &embeddings, &model, &pairs, &out),
        Command::Eval { scored, json } => cmd_eval(&scored, json),
        Command::Pipeline(args) => pipeline::cmd_pipeline(args),
        Command::Sweep { kind } => match kind {
            SweepCommand::Penalty {
                graph,
                min,
                max,
                step,
                ratio,
                walk,
                embed,
                seed,
                out,
            } => cmd_sweep_penalty(&graph, min, max, step, ratio, &walk, &embed, seed, &out),
            SweepCommand::Sparsity {
                graph,
                fractions,
                methods,
                ratio,
                folds,
                walk,
                embed,
                seed,
                out,
            } => pipeline::cmd_sweep_sparsity(
                &graph, &fractions, &methods, ratio, folds, &walk, &embed, seed, &out,
            ),
            SweepCommand::Sensitivity {
                graph,
                param,
                grid,
                ratio,
                folds,
                walk,
                embed,
                seed,
                out,
            } => pipeline::cmd_sweep_sensitivity(
                &graph, &param, &grid, ratio, folds, &walk, &embed, seed, &out,
            ),
        },
        Command::Figure { kind } => match kind {
            FigureCommand::Correlation {
                graph,
                walk,
                embed,
                seed,
                out,
            } => cmd_figure_correlation(&graph, &walk, &embed, seed, &out),
            FigureCommand::Distances {
                graph,
                ratio,
                seed,
                out,
            } => cmd_figure_distances(&graph, ratio, seed, &out),
        },
    }
}

fn cmd_stats(graph: &Path, diameter: bool, json: bool) -> Result<()> {
    let g = load_graph(graph)?;
    let report = g.topology_report(diameter);
    if json {
        println!("{}", serde_json::to_string_pretty(&report)?);
        return Ok(());
    }
    println!("{:<18} {}", "nodes", report.node_count);
    println!("{:<18} {}", "edges", report.edge_count);
    println!("{:<18} {:.4}", "avg degree", report.avg_degree);
    println!("{:<18} {:.4}", "avg clustering", report.avg_clustering);
    println!("{:<18} {:.4e}", "density", report.density);
    match report.diameter {
        Some(d) => println!("{:<18} {}", "diameter", d),
        None if diameter => println!("{:<18} inf (disconnected)", "diameter"),
        None => println!("{:<18} (skipped; pass --diameter)", "diameter"),
    }
    Ok(())
}

fn cmd_split(
    graph: &Path,
    ratio: f64,
    seed: Option<u64>,
    no_forest_protection: bool,
    out: &Path,
) -> Result<()> {
    let g = load_graph(graph)?;
    let seed = resolve_seed(seed);
    let split = generate_split_with(&g, ratio, seed, !no_forest_protection)
        .context("stage split failed")?;
    split.write_dir(&g, out)?;
    println!(
        "split: {} positives, {} negatives, subgraph {} edges -> {}",
        split.positives.len(),
        split.negatives.len(),
        split.subgraph.edge_count(),
        out.display()
    );
    Ok(())
}

fn cmd_walk(
    graph: &Path,
    walk: &WalkArgs,
    p: Option<f64>,
    q: Option<f64>,
    seed: Option<u64>,
    out: &Path,
) -> Result<()> {
    let g = load_graph(graph)?;
    let seed = resolve_seed(seed);
    let bias = match (p, q) {
        (None, None) => None,
        (p, q) => Some(WalkBias {
            return_p: p.unwrap_or(1.0),
            inout_q: q.unwrap_or(1.0),
        }),
    };
    let cfg = WalkConfig {
        walks_per_node: walk.walks_per_node,
        walk_length: walk.walk_length,
        seed,
        bias,
    };
    let corpus = if bias.is_some() {
        biased_walks(&g, &cfg)
    } else {
        random_walks(&g, &cfg)
    }
    .context("stage walk failed")?;
    let mut file = create_out_file(out)?;
    corpus.write_text(g.labels(), &mut file)?;
    println!(
        "walks: {} sequences, {} tokens -> {}",
        corpus.sequences.len(),
        corpus.total_tokens(),
        out.display()
    );
    Ok(())
}

fn cmd_embed(
    walks: &Path,
    embed: &EmbedArgs,
    mode: &str,
    seed: Option<u64>,
    out: &Path,
) -> Result<()> {
    let (corpus, labels) = read_walk_corpus(walks)?;
    let cfg = TrainConfig {
        dim: embed.dim,
        window: embed.window,
        epochs: embed.epochs,
        seed: resolve_seed(seed),
        mode: parse_mode(mode)?,
        ..TrainConfig::default()
    };
    let trained = adasim_core::embedding::train(&corpus, &labels, &cfg)
        .context("stage embed failed")?;
    let mut file = create_out_file(out)?;
    trained.embedding.save(&mut file)?;
    let n = trained.position_losses.len();
    let tail_mean: f64 =
        trained.position_losses[n.saturating_sub(n / 10)..].iter().sum::<f64>() / (n / 10) as f64;
    println!(
        "embeddings: {} x {} (final mean loss {:.4}) -> {}",
        trained.embedding.len(),
        trained.embedding.dim(),
        tail_mean,
        out.display()
    );
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_train(
    graph: &Path,
    split_dir: &Path,
    embeddings: &Path,
    train_fraction: f64,
    learning_rate: f64,
    epochs: usize,
    seed: Option<u64>,
    out: &Path,
    trace: Option<&Path>,
) -> Result<()> {
    if !(0.0 < train_fraction && train_fraction <= 1.0) {
        bail!("--train-fraction must be in (0, 1]");
    }
    let g = load_graph(graph)?;
    let seed = resolve_seed(seed);
    let emb = load_aligned_embeddings(embeddings, &g)?;
    let mut pairs = read_pairs_csv(&g, split_dir.join("positives.csv"))?;
    pairs.extend(read_pairs_csv(&g, split_dir.join("negatives.csv"))?);

    let features: Vec<(PairFeatures, bool)> = pairs
        .iter()
        .map(|p| {
            pair_features(&emb, p.u, p.v, ZeroNormPolicy::Epsilon).map(|pf| (pf, p.label))
        })
        .collect::<Result<_, _>>()?;

    let cfg = SgdConfig {
        learning_rate,
        epochs,
        ..SgdConfig::default()
    };
    let (train_set, held_out) = if train_fraction < 1.0 {
        // stratified two-way split via the fold machinery
        let k = (1.0 / (1.0 - train_fraction)).round().max(2.0) as usize;
        let folds = k_fold(&pairs, k, seed).context("holdout split failed")?;
        let mut train_set = Vec::new();
        let mut held = Vec::new();
        for (i, f) in features.iter().enumerate() {
            if folds.assignments[i] == 0 {
                held.push(*f);
            } else {
                train_set.push(*f);
            }
        }
        (train_set, held)
    } else {
        (features.clone(), Vec::new())
    };

    let model = train_penalty(&train_set, &cfg).context("stage train failed")?;
    model.save_file(out)?;
    if let Some(trace_path) = trace {
        let file = create_out_file(trace_path)?;
        model.write_trace_csv(file)?;
    }
    println!(
        "penalty p = {:.6} after {} epochs -> {}",
        model.penalty,
        model.trace.epoch_losses.len(),
        out.display()
    );
    if !held_out.is_empty() {
        let scored: Vec<(f64, bool)> = held_out
            .iter()
            .map(|(pf, y)| (model.score(pf), *y))
            .collect();
        let auc = adasim_core::eval::auc_scores(&scored)?;
        println!("held-out AUC ({} pairs): {:.4}", held_out.len(), auc);
    }
    Ok(())
}

fn cmd_score(
    graph: &Path,
    embeddings: &Path,
    model: &Path,
    pairs: &Path,
    out: &Path,
) -> Result<()> {
    let g = load_graph(graph)?;
    let emb = load_aligned_embeddings(embeddings, &g)?;
    let model = AdaSimModel::load_file(model)?;
    let pairs = read_pairs_csv(&g, pairs)?;
    let mut scored = Vec::with_capacity(pairs.len());
    for p in &pairs {
        let pf = pair_features(&emb, p.u, p.v, ZeroNormPolicy::Epsilon)?;
        scored.push(ScoredPair {
            u: p.u,
            v: p.v,
            label: p.label,
            score: model.score(&pf),
        });
    }
    let file = create_out_file(out)?;
    eval::write_scored_csv(&g, &scored, file)?;
    println!("scored {} pairs -> {}", scored.len(), out.display());
    Ok(())
}

fn cmd_eval(scored: &Path, json: bool) -> Result<()> {
    let rows = read_scored_csv(scored)?;
    let auc = adasim_core::eval::auc_scores(&rows).context("stage eval failed")?;
    if json {
        println!("{}", serde_json::json!({ "pairs": rows.len(), "auc": auc }));
    } else {
        println!("AUC over {} pairs: {:.4}", rows.len(), auc);
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep_penalty(
    graph: &Path,
    min: f64,
    max: f64,
    step: f64,
    ratio: f64,
    walk: &WalkArgs,
    embed: &EmbedArgs,
    seed: Option<u64>,
    out: &Path,
) -> Result<()> {
    if min >= max || step <= 0.0 {
        bail!("penalty sweep needs --min < --max and --step > 0");
    }
    let g = load_graph(graph)?;
    let seed = resolve_seed(seed);
    let split = adasim_core::split::generate_split(&g, ratio, seed).context("stage split failed")?;
    let corpus = random_walks(
        &split.subgraph,
        &WalkConfig {
            walks_per_node: walk.walks_per_node,
            walk_length: walk.walk_length,
            seed,
            bias: None,
        },
    )?;
    let trained = adasim_core::embedding::train(
        &corpus,
        split.subgraph.labels(),
        &TrainConfig {
            dim: embed.dim,
            window: embed.window,
            epochs: embed.epochs,
            seed,
            ..TrainConfig::default()
        },
    )
    .context("stage embed failed")?;
    let pairs = split.pairs();
    let rows =
        penalty_sweep(&trained.embedding, &pairs, min, max, step).context("stage sweep failed")?;
    let file = create_out_file(out)?;
    eval::write_penalty_csv(&rows, file)?;
    println!("penalty sweep: {} grid points -> {}", rows.len(), out.display());
    Ok(())
}

fn cmd_figure_correlation(
    graph: &Path,
    walk: &WalkArgs,
    embed: &EmbedArgs,
    seed: Option<u64>,
    out: &Path,
) -> Result<()> {
    let g = load_graph(graph)?;
    let seed = resolve_seed(seed);
    let rows = edge_feature_correlation(
        &g,
        &WalkConfig {
            walks_per_node: walk.walks_per_node,
            walk_length: walk.walk_length,
            seed,
            bias: None,
        },
        &TrainConfig {
            dim: embed.dim,
            window: embed.window,
            epochs: embed.epochs,
            seed,
            ..TrainConfig::default()
        },
    )
    .context("stage figure failed")?;
    let file = create_out_file(out)?;
    eval::write_correlation_csv(&rows, file)?;
    println!("correlation study: {} rows -> {}", rows.len(), out.display());
    Ok(())
}

fn cmd_figure_distances(graph: &Path, ratio: f64, seed: Option<u64>, out: &Path) -> Result<()> {
    let g = load_graph(graph)?;
    let seed = resolve_seed(seed);
    let split = adasim_core::split::generate_split(&g, ratio, seed).context("stage split failed")?;
    let rows = distance_histogram(&split.subgraph, &split.positives)
        .context("stage figure failed")?;
    let file = create_out_file(out)?;
    eval::write_distance_csv(&rows, file)?;
    println!("distance histogram: {} buckets -> {}", rows.len(), out.display());
    Ok(())
}
