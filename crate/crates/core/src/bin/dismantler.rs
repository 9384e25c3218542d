use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dismantler::centrality::CentralityParams;
use dismantler::dismantle::{minimal_prefix_tas, write_curve_csv};
use dismantler::experiment::{self, read_scores_csv, ExperimentConfig, Method, NetworkSpec};
use dismantler::graph::write_edge_list;
use dismantler::model::{Ablation, DcrsConfig};
use dismantler::{Error, Result};

#[derive(Parser)]
#[command(name = "dismantler", version, about = "One-pass network dismantling")]
struct Cli {
    /// Default seed for generators, training and random rankings.
    #[arg(long, global = true, env = "DISMANTLER_SEED", default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a synthetic network as an edge list.
    Generate(GenerateArgs),
    /// Score every node with one method.
    Rank(RankArgs),
    /// Minimal attack set for one threshold.
    Dismantle(DismantleArgs),
    /// Methods x seeds x thresholds over one or more networks.
    Experiment(ExperimentArgs),
    /// Full model against its two single-branch variants.
    Ablate(AblateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Er,
    Ba,
    Ws,
    Plc,
}

#[derive(Args)]
struct GenerateArgs {
    kind: Kind,
    #[arg(long)]
    n: usize,
    /// Mean degree (er).
    #[arg(long)]
    k: Option<f64>,
    /// Edges per new node (ba, plc) or lattice degree (ws).
    #[arg(long)]
    m: Option<usize>,
    /// Rewiring (ws) or triangle (plc) probability.
    #[arg(long)]
    p: Option<f64>,
    /// Output file; stdout when omitted.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args, Default)]
struct DcrsArgs {
    #[arg(long)]
    hidden_dim: Option<usize>,
    #[arg(long)]
    gdn_layers: Option<usize>,
    #[arg(long)]
    gcn_layers: Option<usize>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    role_k: Option<usize>,
    #[arg(long)]
    epochs: Option<usize>,
    #[arg(long)]
    lr: Option<f64>,
    /// full | no_rs | no_dc
    #[arg(long)]
    ablation: Option<Ablation>,
}

impl DcrsArgs {
    fn apply(&self, mut cfg: DcrsConfig) -> DcrsConfig {
        macro_rules! set {
            ($($f:ident),*) => { $( if let Some(v) = self.$f { cfg.$f = v; } )* };
        }
        set!(hidden_dim, gdn_layers, gcn_layers, gamma, role_k, epochs, lr);
        if let Some(l) = self.lambda {
            cfg = cfg.with_lambda(l);
        }
        if let Some(a) = self.ablation {
            cfg = cfg.with_ablation(a);
        }
        cfg
    }
}

#[derive(Args)]
struct RankArgs {
    /// Edge-list path or generator spec such as `ba:n=1000,m=4`.
    #[arg(long, short)]
    input: NetworkSpec,
    #[arg(long)]
    method: Method,
    #[command(flatten)]
    dcrs: DcrsArgs,
    /// Score CSV; stdout when omitted.
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Also save trained parameters (dcrs only).
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Also save the role model JSON (dcrs only).
    #[arg(long)]
    roles: Option<PathBuf>,
}

#[derive(Args)]
struct DismantleArgs {
    #[arg(long, short)]
    input: NetworkSpec,
    /// Score CSV with `node_id` and `s_dis` or `score` columns.
    #[arg(long, conflicts_with = "method", required_unless_present = "method")]
    scores: Option<PathBuf>,
    #[arg(long)]
    method: Option<Method>,
    #[arg(long, default_value_t = 0.01)]
    theta: f64,
    #[command(flatten)]
    dcrs: DcrsArgs,
    /// Directory for report.json and curve.csv; the report goes to stdout
    /// when omitted.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// JSON config; flags below override its fields.
    #[arg(long, short)]
    config: Option<PathBuf>,
    /// Repeat for several networks.
    #[arg(long, short)]
    input: Vec<NetworkSpec>,
    #[arg(long, value_delimiter = ',')]
    methods: Vec<Method>,
    #[arg(long, value_delimiter = ',')]
    thetas: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    seeds: Vec<u64>,
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Worker threads; 0 means one per core.
    #[arg(long)]
    jobs: Option<usize>,
    #[command(flatten)]
    dcrs: DcrsArgs,
}

#[derive(Args)]
struct AblateArgs {
    /// Repeat for several networks.
    #[arg(long, short, required = true)]
    input: Vec<NetworkSpec>,
    #[arg(long, value_delimiter = ',', default_value = "0.01")]
    thetas: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    seeds: Vec<u64>,
    #[arg(long, short, default_value = "ablation")]
    out: PathBuf,
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[command(flatten)]
    dcrs: DcrsArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = cli.seed;
    let result = match cli.command {
        Command::Generate(a) => generate(a, seed),
        Command::Rank(a) => rank(a, seed),
        Command::Dismantle(a) => dismantle(a, seed),
        Command::Experiment(a) => run_batch(experiment_config(a, seed)),
        Command::Ablate(a) => run_batch(ablate_config(a, seed)),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
            }
            Box::new(BufWriter::new(File::create(p).map_err(|e| Error::io(p, e))?))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn missing(flag: &str) -> Error {
    Error::InvalidParameter(format!("--{flag} is required for this generator"))
}

fn generate(a: GenerateArgs, seed: u64) -> Result<bool> {
    let spec = match a.kind {
        Kind::Er => NetworkSpec::Er { n: a.n, k: a.k.ok_or_else(|| missing("k"))? },
        Kind::Ba => NetworkSpec::Ba { n: a.n, m: a.m.ok_or_else(|| missing("m"))? },
        Kind::Ws => NetworkSpec::Ws {
            n: a.n,
            m: a.m.ok_or_else(|| missing("m"))?,
            p: a.p.ok_or_else(|| missing("p"))?,
        },
        Kind::Plc => NetworkSpec::Plc {
            n: a.n,
            m: a.m.ok_or_else(|| missing("m"))?,
            p: a.p.ok_or_else(|| missing("p"))?,
        },
    };
    let g = spec.build(seed)?.graph;
    let mut out = output(a.out.as_deref())?;
    let path = a.out.clone().unwrap_or_else(|| "<stdout>".into());
    write_edge_list(&g, None, &mut out).map_err(|e| Error::io(&path, e))?;
    out.flush().map_err(|e| Error::io(&path, e))?;
    Ok(true)
}

fn rank(a: RankArgs, seed: u64) -> Result<bool> {
    let lg = a.input.build(seed)?;
    let dcrs = a.dcrs.apply(DcrsConfig::default());
    let ranked = experiment::rank(&lg.graph, a.method, seed, &dcrs, &CentralityParams::default())?;
    let mut out = output(a.out.as_deref())?;
    ranked.write_csv(&lg.labels, &mut out)?;
    out.flush().map_err(|e| Error::io("<scores>", e))?;
    if let Some(p) = &ranked.pipeline {
        if let Some(path) = &a.checkpoint {
            p.model.params.save_json(path)?;
        }
        if let Some(path) = &a.roles {
            let file = File::create(path).map_err(|e| Error::io(path, e))?;
            p.roles.write_json(BufWriter::new(file))?;
        }
    }
    Ok(true)
}

fn dismantle(a: DismantleArgs, seed: u64) -> Result<bool> {
    let lg = a.input.build(seed)?;
    let (scores, method) = match (&a.scores, a.method) {
        (Some(path), _) => (read_scores_csv(path, &lg)?, "scores".to_owned()),
        (None, Some(m)) => {
            let dcrs = a.dcrs.apply(DcrsConfig::default());
            let ranked = experiment::rank(&lg.graph, m, seed, &dcrs, &CentralityParams::default())?;
            (ranked.scores, m.name())
        }
        (None, None) => unreachable!("clap requires one of --scores/--method"),
    };
    let report = minimal_prefix_tas(&lg.graph, &scores, a.theta)?;
    let summary = report.summary(&method);
    match &a.out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
            let mut w = output(Some(&dir.join("report.json")))?;
            serde_json::to_writer_pretty(&mut w, &summary)?;
            w.flush().map_err(|e| Error::io(dir, e))?;
            write_curve_csv(&report.ngcc_curve, output(Some(&dir.join("curve.csv")))?)?;
        }
        None => println!("{}", serde_json::to_string_pretty(&summary)?),
    }
    Ok(true)
}

fn experiment_config(a: ExperimentArgs, seed: u64) -> Result<ExperimentConfig> {
    let mut cfg = match &a.config {
        Some(path) => ExperimentConfig::load_json(path)?,
        None => ExperimentConfig {
            seeds: vec![seed],
            ..ExperimentConfig::default()
        },
    };
    if !a.input.is_empty() {
        cfg.inputs = a.input;
    }
    if !a.methods.is_empty() {
        cfg.methods = a.methods;
    }
    if !a.thetas.is_empty() {
        cfg.thetas = a.thetas;
    }
    if !a.seeds.is_empty() {
        cfg.seeds = a.seeds;
    }
    if let Some(out) = a.out {
        cfg.out_dir = out;
    }
    if let Some(j) = a.jobs {
        cfg.jobs = j;
    }
    cfg.dcrs = a.dcrs.apply(cfg.dcrs);
    Ok(cfg)
}

fn ablate_config(a: AblateArgs, seed: u64) -> Result<ExperimentConfig> {
    Ok(ExperimentConfig {
        inputs: a.input,
        methods: Ablation::ALL.into_iter().map(Method::Dcrs).collect(),
        thetas: a.thetas,
        seeds: if a.seeds.is_empty() { vec![seed] } else { a.seeds },
        dcrs: a.dcrs.apply(DcrsConfig::default()),
        out_dir: a.out,
        jobs: a.jobs,
        ..ExperimentConfig::default()
    })
}

fn run_batch(cfg: Result<ExperimentConfig>) -> Result<bool> {
    let cfg = cfg?;
    let outcome = experiment::run_experiment(&cfg)?;
    let mut stdout = io::stdout().lock();
    for s in &outcome.summary {
        let _ = writeln!(
            stdout,
            "{:<28} {:<12} theta={:<6} rho={:.4} +- {:.4} (n={})",
            s.network, s.method, s.theta, s.rho_mean, s.rho_std, s.runs
        );
    }
    for e in &outcome.errors {
        eprintln!("failed: {} seed {} {}: {}", e.network, e.seed, e.method, e.error);
    }
    Ok(outcome.is_success())
}
