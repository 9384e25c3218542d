//! Batch driver: network specs, ranking methods, and the
//! methods x seeds x thresholds cross product with on-disk reports.

use std::collections::HashMap;
use std::fmt;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::centrality::{Centrality, CentralityParams, ScoreVector};
use crate::dismantle::{random_scores, report_for_ranking, write_curve_csv, DismantleReport};
use crate::error::{Error, Result};
use crate::graph::{self, LabeledGraph};
use crate::model::{run_pipeline, Ablation, DcrsConfig, Pipeline};

/// A graph source: a synthetic generator with its parameters, or a file.
#[derive(Debug, Clone, PartialEq)]
pub enum NetworkSpec {
    Er { n: usize, k: f64 },
    Ba { n: usize, m: usize },
    Ws { n: usize, m: usize, p: f64 },
    Plc { n: usize, m: usize, p: f64 },
    File(PathBuf),
}

impl NetworkSpec {
    pub fn is_generator(&self) -> bool {
        !matches!(self, NetworkSpec::File(_))
    }

    pub fn build(&self, seed: u64) -> Result<LabeledGraph> {
        let g = match *self {
            NetworkSpec::Er { n, k } => graph::erdos_renyi(n, k, seed)?,
            NetworkSpec::Ba { n, m } => graph::barabasi_albert(n, m, seed)?,
            NetworkSpec::Ws { n, m, p } => graph::watts_strogatz(n, m, p, seed)?,
            NetworkSpec::Plc { n, m, p } => graph::powerlaw_cluster(n, m, p, seed)?,
            NetworkSpec::File(ref path) => return graph::load_edge_list(path),
        };
        Ok(LabeledGraph::from_graph(g))
    }

    /// File-system friendly name, e.g. `er_n1000_k6` or the file stem.
    pub fn slug(&self) -> String {
        match self {
            NetworkSpec::Er { n, k } => format!("er_n{n}_k{k}"),
            NetworkSpec::Ba { n, m } => format!("ba_n{n}_m{m}"),
            NetworkSpec::Ws { n, m, p } => format!("ws_n{n}_m{m}_p{p}"),
            NetworkSpec::Plc { n, m, p } => format!("plc_n{n}_m{m}_p{p}"),
            NetworkSpec::File(path) => path
                .file_stem()
                .map_or_else(|| "input".to_owned(), |s| s.to_string_lossy().into_owned()),
        }
    }
}

impl fmt::Display for NetworkSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NetworkSpec::Er { n, k } => write!(f, "er:n={n},k={k}"),
            NetworkSpec::Ba { n, m } => write!(f, "ba:n={n},m={m}"),
            NetworkSpec::Ws { n, m, p } => write!(f, "ws:n={n},m={m},p={p}"),
            NetworkSpec::Plc { n, m, p } => write!(f, "plc:n={n},m={m},p={p}"),
            NetworkSpec::File(path) => write!(f, "{}", path.display()),
        }
    }
}

/// `er:n=1000,k=6`, `ba:n=1000,m=4`, `ws:n=1000,m=6,p=0.1`,
/// `plc:n=1000,m=4,p=0.5`; anything without a known `kind:` prefix is a
/// file path.
impl FromStr for NetworkSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let Some((kind, rest)) = s.split_once(':') else {
            return Ok(NetworkSpec::File(PathBuf::from(s)));
        };
        if !matches!(kind, "er" | "ba" | "ws" | "plc") {
            return Ok(NetworkSpec::File(PathBuf::from(s)));
        }
        let mut kv = HashMap::new();
        for part in rest.split(',').filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::invalid(format!("expected key=value in '{s}', got '{part}'")))?;
            kv.insert(k.trim(), v.trim());
        }
        let get = |key: &str| -> Result<&str> {
            kv.get(key)
                .copied()
                .ok_or_else(|| Error::invalid(format!("'{s}' is missing '{key}'")))
        };
        let int = |key: &str| -> Result<usize> {
            get(key)?
                .parse()
                .map_err(|_| Error::invalid(format!("'{key}' in '{s}' is not a count")))
        };
        let real = |key: &str| -> Result<f64> {
            get(key)?
                .parse()
                .map_err(|_| Error::invalid(format!("'{key}' in '{s}' is not a number")))
        };
        let allowed: &[&str] = match kind {
            "er" => &["n", "k"],
            "ba" => &["n", "m"],
            _ => &["n", "m", "p"],
        };
        if let Some(extra) = kv.keys().find(|k| !allowed.contains(k)) {
            return Err(Error::invalid(format!("unknown parameter '{extra}' in '{s}'")));
        }
        Ok(match kind {
            "er" => NetworkSpec::Er { n: int("n")?, k: real("k")? },
            "ba" => NetworkSpec::Ba { n: int("n")?, m: int("m")? },
            "ws" => NetworkSpec::Ws { n: int("n")?, m: int("m")?, p: real("p")? },
            _ => NetworkSpec::Plc { n: int("n")?, m: int("m")?, p: real("p")? },
        })
    }
}

impl Serialize for NetworkSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for NetworkSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A node-ranking method: a classical centrality, the trained model (with
/// an optional ablation), or a seeded random order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Centrality(Centrality),
    Dcrs(Ablation),
    Random,
}

impl Method {
    pub fn name(&self) -> String {
        match self {
            Method::Centrality(c) => c.name().to_owned(),
            Method::Dcrs(Ablation::Full) => "dcrs".to_owned(),
            Method::Dcrs(a) => format!("dcrs_{a}"),
            Method::Random => "random".to_owned(),
        }
    }

    /// Whether the result depends on the seed for a fixed graph.
    pub fn is_seeded(&self) -> bool {
        !matches!(self, Method::Centrality(_))
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        match s.as_str() {
            "random" => Ok(Method::Random),
            "dcrs" => Ok(Method::Dcrs(Ablation::Full)),
            _ => {
                if let Some(a) = s.strip_prefix("dcrs_") {
                    return Ok(Method::Dcrs(a.parse()?));
                }
                s.parse::<Centrality>().map(Method::Centrality).map_err(|_| {
                    Error::invalid(format!(
                        "unknown method '{s}' (dc|bc|cc|ec|hc|ci|pr|dcrs|dcrs_no_rs|dcrs_no_dc|random)"
                    ))
                })
            }
        }
    }
}

impl Serialize for Method {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Method {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Scores from one method, plus the trained pipeline when the method is
/// the model.
#[derive(Debug, Clone)]
pub struct Ranked {
    pub scores: ScoreVector,
    pub pipeline: Option<Pipeline>,
}

impl Ranked {
    /// `node_id,s_dc,s_rs,s_dis` for the model, `node_id,score` otherwise.
    pub fn write_csv<W: Write>(&self, labels: &[String], out: W) -> Result<()> {
        match &self.pipeline {
            Some(p) => p.output.write_csv(labels, out),
            None => self.scores.write_csv(labels, out),
        }
    }
}

pub fn rank(
    g: &graph::Graph,
    method: Method,
    seed: u64,
    dcrs: &DcrsConfig,
    centrality: &CentralityParams,
) -> Result<Ranked> {
    Ok(match method {
        Method::Centrality(c) => Ranked {
            scores: c.compute(g, centrality)?,
            pipeline: None,
        },
        Method::Random => Ranked {
            scores: random_scores(g.num_nodes(), seed),
            pipeline: None,
        },
        Method::Dcrs(ablation) => {
            let base = DcrsConfig { seed, ..*dcrs };
            // The full model takes its tag from lambda, so `lambda = 1` is `no_rs`.
            let cfg = match ablation {
                Ablation::Full => base.with_lambda(dcrs.lambda),
                other => base.with_ablation(other),
            };
            let p = run_pipeline(g, &cfg)?;
            Ranked {
                scores: p.output.scores(),
                pipeline: Some(p),
            }
        }
    })
}

/// Reads a score CSV with a `node_id` column and an `s_dis` or `score`
/// column, mapping labels onto the node ids of `graph`.
pub fn read_scores_csv(path: impl AsRef<Path>, graph: &LabeledGraph) -> Result<ScoreVector> {
    let path = path.as_ref();
    let mut rdr = csv::Reader::from_path(path)?;
    let headers = rdr.headers()?.clone();
    let col = |name: &str| headers.iter().position(|h| h.trim() == name);
    let id_col = col("node_id").ok_or_else(|| Error::invalid(format!("{}: no node_id column", path.display())))?;
    let score_col = col("s_dis")
        .or_else(|| col("score"))
        .ok_or_else(|| Error::invalid(format!("{}: no s_dis or score column", path.display())))?;
    let index: HashMap<&str, usize> = graph.labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let n = graph.graph.num_nodes();
    let mut values = vec![None; n];
    for (line, record) in rdr.records().enumerate() {
        let record = record?;
        let label = record.get(id_col).unwrap_or("").trim();
        let node = *index.get(label).ok_or_else(|| Error::Parse {
            line: line + 2,
            message: format!("unknown node '{label}'"),
        })?;
        let value: f64 = record
            .get(score_col)
            .unwrap_or("")
            .trim()
            .parse()
            .map_err(|_| Error::Parse {
                line: line + 2,
                message: "score is not a number".to_owned(),
            })?;
        values[node] = Some(value);
    }
    let missing = values.iter().filter(|v| v.is_none()).count();
    if missing > 0 {
        return Err(Error::invalid(format!("{}: {missing} nodes have no score", path.display())));
    }
    Ok(ScoreVector::new(values.into_iter().map(Option::unwrap).collect()))
}

/// Everything an `experiment` run needs. Deserializes from JSON with every
/// field optional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub inputs: Vec<NetworkSpec>,
    pub methods: Vec<Method>,
    pub thetas: Vec<f64>,
    pub seeds: Vec<u64>,
    pub dcrs: DcrsConfig,
    pub centrality: CentralityParams,
    pub out_dir: PathBuf,
    /// Worker threads; 0 means one per core.
    pub jobs: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            inputs: Vec::new(),
            methods: vec![Method::Centrality(Centrality::Dc), Method::Dcrs(Ablation::Full)],
            thetas: vec![0.01],
            seeds: vec![0],
            dcrs: DcrsConfig::default(),
            centrality: CentralityParams::default(),
            out_dir: PathBuf::from("results"),
            jobs: 0,
        }
    }
}

impl ExperimentConfig {
    pub fn load_json(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.inputs.is_empty() {
            return Err(Error::invalid("no input networks"));
        }
        if self.methods.is_empty() {
            return Err(Error::invalid("no methods"));
        }
        if self.thetas.is_empty() {
            return Err(Error::invalid("no thresholds"));
        }
        if let Some(t) = self.thetas.iter().find(|&&t| !(t > 0.0 && t <= 1.0)) {
            return Err(Error::invalid(format!("theta {t} outside (0, 1]")));
        }
        if self.seeds.is_empty() {
            return Err(Error::invalid("no seeds"));
        }
        self.dcrs.validate()
    }
}

/// One (network, seed, method, theta) outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub network: String,
    pub seed: u64,
    pub method: String,
    pub theta: f64,
    pub num_nodes: usize,
    pub tas_size: usize,
    pub rho: f64,
    pub auc: f64,
    pub seconds: f64,
}

/// Mean and sample standard deviation over seeds for one
/// (network, method, theta).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub network: String,
    pub method: String,
    pub theta: f64,
    pub runs: usize,
    pub rho_mean: f64,
    pub rho_std: f64,
    pub auc_mean: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunError {
    pub network: String,
    pub seed: u64,
    pub method: String,
    pub error: String,
}

#[derive(Debug, Clone, Default)]
pub struct ExperimentOutcome {
    pub rows: Vec<ResultRow>,
    pub summary: Vec<SummaryRow>,
    pub errors: Vec<RunError>,
}

impl ExperimentOutcome {
    pub fn is_success(&self) -> bool {
        self.errors.is_empty()
    }
}

struct Job<'a> {
    spec: &'a NetworkSpec,
    seed: u64,
    method: Method,
}

/// Runs every (network, seed, method) combination, sweeping all thresholds
/// per run, and writes per-run reports plus `results.csv`, `summary.csv`
/// and (when any run failed) `errors.json` under `out_dir`. A failed run is
/// recorded and the rest continue.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutcome> {
    cfg.validate()?;
    fs::create_dir_all(&cfg.out_dir).map_err(|e| Error::io(&cfg.out_dir, e))?;
    let jobs: Vec<Job> = cfg
        .inputs
        .iter()
        .flat_map(|spec| {
            cfg.seeds.iter().flat_map(move |&seed| {
                cfg.methods.iter().map(move |&method| Job { spec, seed, method })
            })
        })
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
    let results: Vec<std::result::Result<Vec<ResultRow>, RunError>> =
        pool.install(|| jobs.par_iter().map(|job| run_job(cfg, job)).collect());

    let mut outcome = ExperimentOutcome::default();
    for r in results {
        match r {
            Ok(rows) => outcome.rows.extend(rows),
            Err(e) => outcome.errors.push(e),
        }
    }
    outcome.summary = summarize(&outcome.rows);
    write_csv_rows(&cfg.out_dir.join("results.csv"), &outcome.rows)?;
    write_csv_rows(&cfg.out_dir.join("summary.csv"), &outcome.summary)?;
    let err_path = cfg.out_dir.join("errors.json");
    if outcome.errors.is_empty() {
        if err_path.exists() {
            fs::remove_file(&err_path).map_err(|e| Error::io(&err_path, e))?;
        }
    } else {
        let file = File::create(&err_path).map_err(|e| Error::io(&err_path, e))?;
        serde_json::to_writer_pretty(BufWriter::new(file), &outcome.errors)?;
    }
    Ok(outcome)
}

fn run_job(cfg: &ExperimentConfig, job: &Job) -> std::result::Result<Vec<ResultRow>, RunError> {
    let fail = |e: Error| RunError {
        network: job.spec.to_string(),
        seed: job.seed,
        method: job.method.name(),
        error: e.to_string(),
    };
    let start = std::time::Instant::now();
    let lg = job.spec.build(job.seed).map_err(fail)?;
    let ranked = rank(&lg.graph, job.method, job.seed, &cfg.dcrs, &cfg.centrality).map_err(fail)?;
    let ranking = ranked.scores.ranking();
    let reports: Vec<DismantleReport> = cfg
        .thetas
        .iter()
        .map(|&t| report_for_ranking(&lg.graph, ranking.clone(), t))
        .collect::<Result<_>>()
        .map_err(fail)?;
    let seconds = start.elapsed().as_secs_f64();

    let dir = cfg
        .out_dir
        .join(format!("{}_seed{}", job.spec.slug(), job.seed))
        .join(job.method.name());
    write_run_files(&dir, &lg, &ranked, &reports, &job.method.name()).map_err(fail)?;

    Ok(reports
        .iter()
        .map(|r| ResultRow {
            network: job.spec.to_string(),
            seed: job.seed,
            method: job.method.name(),
            theta: r.theta,
            num_nodes: lg.graph.num_nodes(),
            tas_size: r.tas_size,
            rho: r.rho,
            auc: r.auc,
            seconds,
        })
        .collect())
}

/// `report.json` (array of summaries, one per theta), `curve.csv` for the
/// longest attack set, and `scores.csv`.
fn write_run_files(
    dir: &Path,
    lg: &LabeledGraph,
    ranked: &Ranked,
    reports: &[DismantleReport],
    method: &str,
) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let summaries: Vec<_> = reports.iter().map(|r| r.summary(method)).collect();
    let path = dir.join("report.json");
    let file = File::create(&path).map_err(|e| Error::io(&path, e))?;
    serde_json::to_writer_pretty(BufWriter::new(file), &summaries)?;

    let longest = reports.iter().max_by_key(|r| r.tas_size).expect("at least one theta");
    let path = dir.join("curve.csv");
    let file = File::create(&path).map_err(|e| Error::io(&path, e))?;
    write_curve_csv(&longest.ngcc_curve, BufWriter::new(file))?;

    let path = dir.join("scores.csv");
    let file = File::create(&path).map_err(|e| Error::io(&path, e))?;
    ranked.write_csv(&lg.labels, BufWriter::new(file))
}

/// Groups rows by (network, method, theta) in first-seen order.
pub fn summarize(rows: &[ResultRow]) -> Vec<SummaryRow> {
    let mut order: Vec<(String, String, u64)> = Vec::new();
    let mut groups: HashMap<(String, String, u64), Vec<&ResultRow>> = HashMap::new();
    for r in rows {
        let key = (r.network.clone(), r.method.clone(), r.theta.to_bits());
        groups.entry(key.clone()).or_insert_with(|| {
            order.push(key.clone());
            Vec::new()
        });
        groups.get_mut(&key).expect("inserted").push(r);
    }
    order
        .into_iter()
        .map(|key| {
            let g = &groups[&key];
            let k = g.len() as f64;
            let mean = g.iter().map(|r| r.rho).sum::<f64>() / k;
            let var = if g.len() > 1 {
                g.iter().map(|r| (r.rho - mean).powi(2)).sum::<f64>() / (k - 1.0)
            } else {
                0.0
            };
            SummaryRow {
                network: key.0,
                method: key.1,
                theta: f64::from_bits(key.2),
                runs: g.len(),
                rho_mean: mean,
                rho_std: var.sqrt(),
                auc_mean: g.iter().map(|r| r.auc).sum::<f64>() / k,
            }
        })
        .collect()
}

fn write_csv_rows<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = csv::Writer::from_writer(BufWriter::new(file));
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| Error::io(path, e))?;
    Ok(())
}
