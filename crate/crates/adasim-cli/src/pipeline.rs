//! The `pipeline` subcommand and the resumable sweep drivers.
//!
//! A pipeline run re-draws the split `repeats` times with seed
//! `master_seed + repeat`, evaluates every method per repeat under
//! stratified k-fold cross-validation, and writes split artifacts,
//! embeddings, the trained model, a report CSV and a `run.json` manifest
//! into the output directory.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::Args;
use serde::{Deserialize, Serialize};

use adasim_core::embedding::{EmbeddingMatrix, TrainConfig};
use adasim_core::eval::{
    self, sensitivity_sweep, sparsity_sweep, EvaluationReport, Method, PipelineParams,
    SplitEvaluator,
};
use adasim_core::graph::Graph;
use adasim_core::model::{
    pair_features, train_penalty, AdaSimModel, PairFeatures, SgdConfig, ZeroNormPolicy,
};
use adasim_core::split::{generate_split, k_fold, SplitResult};
use adasim_core::walk::WalkConfig;

use crate::{create_out_file, parse_methods, resolve_seed, EmbedArgs, WalkArgs, DEFAULT_SEED};

#[derive(Args)]
pub struct PipelineArgs {
    pub graph: PathBuf,
    /// Comma-separated methods; `all` = adasim, cosine, the six heuristics
    /// and both classifier families
    #[arg(long, default_value = "adasim,cosine,heuristics")]
    pub methods: String,
    /// Optional JSON config file; command-line flags override its values
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub ratio: Option<f64>,
    #[arg(long)]
    pub folds: Option<usize>,
    #[arg(long)]
    pub repeats: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub walks_per_node: Option<usize>,
    #[arg(long)]
    pub walk_length: Option<usize>,
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long)]
    pub window: Option<usize>,
    #[arg(long)]
    pub epochs: Option<usize>,
    /// Return parameter for the biased-walk classifier family
    #[arg(long, default_value_t = 1.0)]
    pub p: f64,
    /// In-out parameter for the biased-walk classifier family
    #[arg(long, default_value_t = 1.0)]
    pub q: f64,
    /// Worker threads across repeats (1 = fully sequential)
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long)]
    pub out: PathBuf,
}

/// Values a `--config` file may provide; flags take precedence, built-in
/// defaults fill the rest.
#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    ratio: Option<f64>,
    folds: Option<usize>,
    repeats: Option<usize>,
    seed: Option<u64>,
    walks_per_node: Option<usize>,
    walk_length: Option<usize>,
    dim: Option<usize>,
    window: Option<usize>,
    epochs: Option<usize>,
    methods: Option<String>,
}

#[derive(Serialize, Clone)]
struct ResolvedConfig {
    dataset: String,
    methods: String,
    ratio: f64,
    folds: usize,
    repeats: usize,
    seed: u64,
    walks_per_node: usize,
    walk_length: usize,
    dim: usize,
    window: usize,
    epochs: usize,
    p: f64,
    q: f64,
    jobs: usize,
}

#[derive(Serialize)]
struct MethodSummary {
    method: String,
    mean_auc: f64,
    std_auc: f64,
    repeat_mean_aucs: Vec<f64>,
    fold_aucs: Vec<Vec<f64>>,
    wall_clock_secs: f64,
}

#[derive(Serialize)]
struct RunSummary {
    config: ResolvedConfig,
    repeat_seeds: Vec<u64>,
    results: Vec<MethodSummary>,
    total_secs: f64,
}

pub fn cmd_pipeline(args: PipelineArgs) -> Result<()> {
    let file_cfg: FileConfig = match &args.config {
        Some(path) => serde_json::from_str(
            &fs::read_to_string(path)
                .with_context(|| format!("reading config {}", path.display()))?,
        )
        .with_context(|| format!("parsing config {}", path.display()))?,
        None => FileConfig::default(),
    };

    let methods_spec = if args.methods != "adasim,cosine,heuristics" {
        args.methods.clone()
    } else {
        file_cfg.methods.unwrap_or_else(|| args.methods.clone())
    };
    let seed = match args.seed.or(file_cfg.seed) {
        Some(s) => s,
        None => resolve_seed(None),
    };
    let config = ResolvedConfig {
        dataset: args.graph.display().to_string(),
        methods: methods_spec.clone(),
        ratio: args.ratio.or(file_cfg.ratio).unwrap_or(0.5),
        folds: args.folds.or(file_cfg.folds).unwrap_or(10),
        repeats: args.repeats.or(file_cfg.repeats).unwrap_or(10),
        seed,
        walks_per_node: args.walks_per_node.or(file_cfg.walks_per_node).unwrap_or(10),
        walk_length: args.walk_length.or(file_cfg.walk_length).unwrap_or(80),
        dim: args.dim.or(file_cfg.dim).unwrap_or(128),
        window: args.window.or(file_cfg.window).unwrap_or(10),
        epochs: args.epochs.or(file_cfg.epochs).unwrap_or(1),
        p: args.p,
        q: args.q,
        jobs: args.jobs.max(1),
    };
    let methods = parse_methods(&methods_spec, config.p, config.q)?;

    let g = Graph::read_edge_list(&args.graph)
        .with_context(|| format!("loading graph {}", args.graph.display()))?;
    let params = params_from(&config);

    let started = Instant::now();
    let outcome = run_repeats(&g, &methods, &params, &config)?;
    let total_secs = started.elapsed().as_secs_f64();

    fs::create_dir_all(&args.out)?;
    write_artifacts(&g, &outcome, &args.out)?;

    let results = aggregate(&methods, &outcome);
    print_table(&results, config.repeats);

    let summary = RunSummary {
        repeat_seeds: (0..config.repeats as u64).map(|r| config.seed + r).collect(),
        config,
        results,
        total_secs,
    };
    let manifest = args.out.join("run.json");
    fs::write(&manifest, serde_json::to_string_pretty(&summary)?)?;
    println!("manifest -> {}", manifest.display());
    Ok(())
}

fn params_from(config: &ResolvedConfig) -> PipelineParams {
    PipelineParams {
        ratio: config.ratio,
        folds: config.folds,
        walk: WalkConfig {
            walks_per_node: config.walks_per_node,
            walk_length: config.walk_length,
            seed: config.seed,
            bias: None,
        },
        train: TrainConfig {
            dim: config.dim,
            window: config.window,
            epochs: config.epochs,
            seed: config.seed,
            ..TrainConfig::default()
        },
        sgd: SgdConfig::default(),
        logreg: Default::default(),
    }
}

struct RepeatResult {
    reports: Vec<(EvaluationReport, f64)>,
    artifacts: Option<Artifacts>,
}

/// Representative artifacts from the first repeat.
struct Artifacts {
    split: SplitResult,
    embedding: Option<EmbeddingMatrix>,
    model: Option<AdaSimModel>,
}

struct Outcome {
    repeats: Vec<RepeatResult>,
}

fn run_repeats(
    g: &Graph,
    methods: &[Method],
    params: &PipelineParams,
    config: &ResolvedConfig,
) -> Result<Outcome> {
    let indices: Vec<usize> = (0..config.repeats).collect();
    let jobs = config.jobs.min(config.repeats.max(1));
    let mut slots: Vec<Option<Result<RepeatResult>>> = Vec::new();
    slots.resize_with(config.repeats, || None);

    if jobs <= 1 {
        for &r in &indices {
            slots[r] = Some(run_single_repeat(g, methods, params, config.seed + r as u64, r == 0));
        }
    } else {
        let next = std::sync::atomic::AtomicUsize::new(0);
        let results = std::sync::Mutex::new(&mut slots);
        std::thread::scope(|scope| {
            for _ in 0..jobs {
                scope.spawn(|| loop {
                    let r = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                    if r >= config.repeats {
                        break;
                    }
                    let out = run_single_repeat(g, methods, params, config.seed + r as u64, r == 0);
                    results.lock().unwrap()[r] = Some(out);
                });
            }
        });
    }

    let mut repeats = Vec::with_capacity(config.repeats);
    for (r, slot) in slots.into_iter().enumerate() {
        repeats.push(slot.expect("repeat slot filled").with_context(|| format!("repeat {r}"))?);
    }
    Ok(Outcome { repeats })
}

fn run_single_repeat(
    g: &Graph,
    methods: &[Method],
    params: &PipelineParams,
    seed: u64,
    keep_artifacts: bool,
) -> Result<RepeatResult> {
    let split = generate_split(g, params.ratio, seed).context("stage split failed")?;
    let pairs = split.pairs();
    let folds = k_fold(&pairs, params.folds, seed).context("stage fold failed")?;
    let mut evaluator = SplitEvaluator::new(&split.subgraph, &pairs, &folds, params, seed);

    let mut reports = Vec::with_capacity(methods.len());
    for &method in methods {
        let started = Instant::now();
        let report = evaluator
            .run(method)
            .with_context(|| format!("stage evaluate({}) failed", method.name()))?;
        reports.push((report, started.elapsed().as_secs_f64()));
    }

    let artifacts = if keep_artifacts {
        let wants_embedding = methods
            .iter()
            .any(|m| matches!(m, Method::AdaSim | Method::Cosine));
        let (embedding, model) = if wants_embedding {
            let emb = evaluator
                .penalty_embedding()
                .context("stage embed failed")?
                .clone();
            let features: Vec<(PairFeatures, bool)> = pairs
                .iter()
                .map(|p| {
                    pair_features(&emb, p.u, p.v, ZeroNormPolicy::Epsilon)
                        .map(|pf| (pf, p.label))
                })
                .collect::<Result<_, _>>()
                .context("stage features failed")?;
            let model = train_penalty(&features, &params.sgd).context("stage train failed")?;
            (Some(emb), Some(model))
        } else {
            (None, None)
        };
        Some(Artifacts {
            split,
            embedding,
            model,
        })
    } else {
        None
    };

    Ok(RepeatResult { reports, artifacts })
}

fn write_artifacts(g: &Graph, outcome: &Outcome, out: &Path) -> Result<()> {
    let artifacts = outcome.repeats[0]
        .artifacts
        .as_ref()
        .expect("first repeat keeps artifacts");
    artifacts
        .split
        .write_dir(g, out.join("split"))
        .context("writing split artifacts")?;
    if let Some(emb) = &artifacts.embedding {
        emb.save_file(out.join("embeddings.txt"))?;
    }
    if let Some(model) = &artifacts.model {
        model.save_file(out.join("model.txt"))?;
        let trace = create_out_file(&out.join("trace.csv"))?;
        model.write_trace_csv(trace)?;
    }
    Ok(())
}

fn aggregate(methods: &[Method], outcome: &Outcome) -> Vec<MethodSummary> {
    let mut results = Vec::with_capacity(methods.len());
    for (m, method) in methods.iter().enumerate() {
        let repeat_means: Vec<f64> = outcome
            .repeats
            .iter()
            .map(|r| r.reports[m].0.mean_auc)
            .collect();
        let fold_aucs: Vec<Vec<f64>> = outcome
            .repeats
            .iter()
            .map(|r| r.reports[m].0.fold_aucs.clone())
            .collect();
        let secs: f64 = outcome.repeats.iter().map(|r| r.reports[m].1).sum();
        let mean = eval::mean(&repeat_means);
        results.push(MethodSummary {
            method: method.name(),
            mean_auc: mean,
            std_auc: eval::std_dev(&repeat_means, mean),
            repeat_mean_aucs: repeat_means,
            fold_aucs,
            wall_clock_secs: secs,
        });
    }
    // best row per classifier family, mirroring how those baselines are
    // usually reported
    for family in ["DeepWalk", "Node2vec"] {
        let best = results
            .iter()
            .filter(|r| r.method.starts_with(&format!("{family}[")))
            .max_by(|a, b| a.mean_auc.total_cmp(&b.mean_auc));
        if let Some(best) = best {
            results.push(MethodSummary {
                method: format!("{family}(best)"),
                mean_auc: best.mean_auc,
                std_auc: best.std_auc,
                repeat_mean_aucs: best.repeat_mean_aucs.clone(),
                fold_aucs: best.fold_aucs.clone(),
                wall_clock_secs: best.wall_clock_secs,
            });
        }
    }
    results
}

fn print_table(results: &[MethodSummary], repeats: usize) {
    println!(
        "{:<22} {:>8} {:>8} {:>10}   (over {repeats} repeats)",
        "method", "auc", "std", "secs"
    );
    for r in results {
        println!(
            "{:<22} {:>8.4} {:>8.4} {:>10.2}",
            r.method, r.mean_auc, r.std_auc, r.wall_clock_secs
        );
    }
}

#[derive(Serialize)]
struct SweepManifest<'a> {
    kind: &'a str,
    dataset: String,
    seed: u64,
    ratio: f64,
    folds: usize,
    walks_per_node: usize,
    walk_length: usize,
    dim: usize,
    window: usize,
    epochs: usize,
}

fn sweep_params(ratio: f64, folds: usize, walk: &WalkArgs, embed: &EmbedArgs) -> PipelineParams {
    PipelineParams {
        ratio,
        folds,
        walk: WalkConfig {
            walks_per_node: walk.walks_per_node,
            walk_length: walk.walk_length,
            seed: DEFAULT_SEED,
            bias: None,
        },
        train: TrainConfig {
            dim: embed.dim,
            window: embed.window,
            epochs: embed.epochs,
            ..TrainConfig::default()
        },
        sgd: SgdConfig::default(),
        logreg: Default::default(),
    }
}

fn write_sweep_manifest(out: &Path, manifest: &SweepManifest) -> Result<()> {
    let path = out.with_extension("run.json");
    fs::write(&path, serde_json::to_string_pretty(manifest)?)?;
    Ok(())
}

/// Lines of an existing sweep CSV, used to skip completed grid points on
/// resume.
fn completed_keys(path: &Path, key_fields: usize) -> HashSet<String> {
    let mut keys = HashSet::new();
    if let Ok(text) = fs::read_to_string(path) {
        for line in text.lines().skip(1) {
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() > key_fields {
                keys.insert(fields[..key_fields].join(","));
            }
        }
    }
    keys
}

fn read_sensitivity_rows(path: &Path) -> Vec<adasim_core::eval::SensitivityRow> {
    let mut rows = Vec::new();
    if let Ok(text) = fs::read_to_string(path) {
        for line in text.lines().skip(1) {
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() == 5 {
                rows.push(adasim_core::eval::SensitivityRow {
                    param: fields[0].to_string(),
                    dim: fields[1].parse().unwrap_or(0),
                    walk_length: fields[2].parse().unwrap_or(0),
                    walks_per_node: fields[3].parse().unwrap_or(0),
                    auc: fields[4].parse().unwrap_or(f64::NAN),
                });
            }
        }
    }
    rows
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_sweep_sparsity(
    graph: &Path,
    fractions: &[f64],
    methods: &str,
    ratio: f64,
    folds: usize,
    walk: &WalkArgs,
    embed: &EmbedArgs,
    seed: Option<u64>,
    out: &Path,
) -> Result<()> {
    if fractions.is_empty() {
        bail!("--fractions is empty");
    }
    let g = Graph::read_edge_list(graph)
        .with_context(|| format!("loading graph {}", graph.display()))?;
    let seed = resolve_seed(seed);
    let methods = parse_methods(methods, 1.0, 1.0)?;
    let params = sweep_params(ratio, folds, walk, embed);

    let done = completed_keys(out, 2);
    let todo: Vec<f64> = fractions
        .iter()
        .copied()
        .filter(|f| {
            !methods
                .iter()
                .all(|m| done.contains(&format!("{f},{}", m.name())))
        })
        .collect();
    if todo.len() < fractions.len() {
        println!(
            "resuming: {} of {} fractions already complete",
            fractions.len() - todo.len(),
            fractions.len()
        );
    }

    let mut rows = sparsity_sweep(&g, &todo, &methods, &params, seed)
        .context("stage sweep failed")?;
    // merge with any previously completed rows, keeping fraction order
    if !done.is_empty() {
        let text = fs::read_to_string(out)?;
        for line in text.lines().skip(1) {
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() == 3 && !todo.iter().any(|f| f.to_string() == fields[0]) {
                rows.push(adasim_core::eval::SparsityRow {
                    fraction: fields[0].parse().unwrap_or(f64::NAN),
                    method: fields[1].to_string(),
                    auc: fields[2].parse().ok(),
                });
            }
        }
        rows.sort_by(|a, b| a.fraction.total_cmp(&b.fraction));
    }

    let file = create_out_file(out)?;
    eval::write_sparsity_csv(&rows, file)?;
    write_sweep_manifest(
        out,
        &SweepManifest {
            kind: "sparsity",
            dataset: graph.display().to_string(),
            seed,
            ratio,
            folds,
            walks_per_node: walk.walks_per_node,
            walk_length: walk.walk_length,
            dim: embed.dim,
            window: embed.window,
            epochs: embed.epochs,
        },
    )?;
    println!("sparsity sweep: {} rows -> {}", rows.len(), out.display());
    Ok(())
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_sweep_sensitivity(
    graph: &Path,
    param: &str,
    grid: &[usize],
    ratio: f64,
    folds: usize,
    walk: &WalkArgs,
    embed: &EmbedArgs,
    seed: Option<u64>,
    out: &Path,
) -> Result<()> {
    if grid.is_empty() {
        bail!("--grid is empty");
    }
    if !["d", "l", "k"].contains(&param) {
        bail!("unknown sweep parameter '{param}' (use d, l or k)");
    }
    let g = Graph::read_edge_list(graph)
        .with_context(|| format!("loading graph {}", graph.display()))?;
    let seed = resolve_seed(seed);
    let params = sweep_params(ratio, folds, walk, embed);

    // previously written rows survive a resume untouched
    let mut rows = read_sensitivity_rows(out);
    let swept_value = |r: &adasim_core::eval::SensitivityRow| match r.param.as_str() {
        "d" => r.dim,
        "l" => r.walk_length,
        _ => r.walks_per_node,
    };
    let done: HashSet<usize> = rows
        .iter()
        .filter(|r| r.param == param)
        .map(&swept_value)
        .collect();
    let todo: Vec<usize> = grid.iter().copied().filter(|v| !done.contains(v)).collect();
    if todo.len() < grid.len() {
        println!(
            "resuming: {} of {} grid points already complete",
            grid.len() - todo.len(),
            grid.len()
        );
    }

    let (dims, lengths, counts): (Vec<usize>, Vec<usize>, Vec<usize>) = match param {
        "d" => (todo, vec![], vec![]),
        "l" => (vec![], todo, vec![]),
        _ => (vec![], vec![], todo),
    };
    rows.extend(
        sensitivity_sweep(&g, &dims, &lengths, &counts, &params, seed)
            .context("stage sweep failed")?,
    );

    let file = create_out_file(out)?;
    eval::write_sensitivity_csv(&rows, file)?;
    write_sweep_manifest(
        out,
        &SweepManifest {
            kind: "sensitivity",
            dataset: graph.display().to_string(),
            seed,
            ratio,
            folds,
            walks_per_node: walk.walks_per_node,
            walk_length: walk.walk_length,
            dim: embed.dim,
            window: embed.window,
            epochs: embed.epochs,
        },
    )?;
    println!("sensitivity sweep: {} rows -> {}", rows.len(), out.display());
    Ok(())
}
