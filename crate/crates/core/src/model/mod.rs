//! The fused dismantling-score network and its unsupervised training loop.
//!
//! A diffusion encoder runs on the input graph, a graph convolution runs on
//! the role graph, and two affine heads are mixed by a sigmoid gate:
//! `s_dis = sigmoid(lambda * s_dc + (1 - lambda) * s_rs)`. Training
//! minimizes the expected number of uninfluenced nodes plus `gamma` times
//! the expected attack-set size.

mod network;

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use network::{
    dismantling_loss, forward, gcn_forward, gdn_forward, init_params, loss_on_tape, score_and_fuse, Forward,
    GraphContext,
};

use crate::autograd::{Adam, ParamStore, Tape, Tensor};
use crate::centrality::ScoreVector;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::roles::{discover_roles, RoleConfig, RoleDiscovery};

/// Which encoder branches feed the fusion gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ablation {
    #[default]
    Full,
    /// Role branch dropped, `lambda = 1`.
    NoRs,
    /// Diffusion branch dropped, `lambda = 0`.
    NoDc,
}

impl Ablation {
    pub const ALL: [Ablation; 3] = [Ablation::Full, Ablation::NoRs, Ablation::NoDc];

    pub fn name(self) -> &'static str {
        match self {
            Ablation::Full => "full",
            Ablation::NoRs => "no_rs",
            Ablation::NoDc => "no_dc",
        }
    }
}

impl fmt::Display for Ablation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Ablation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ablation::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown ablation '{s}' (full|no_rs|no_dc)")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DcrsConfig {
    pub hidden_dim: usize,
    pub gdn_layers: usize,
    pub gcn_layers: usize,
    pub lambda: f64,
    pub gamma: f64,
    pub role_k: usize,
    pub epochs: usize,
    pub lr: f64,
    pub seed: u64,
    pub ablation: Ablation,
    pub leaky_slope: f64,
}

impl Default for DcrsConfig {
    fn default() -> Self {
        DcrsConfig {
            hidden_dim: 32,
            gdn_layers: 2,
            gcn_layers: 2,
            lambda: 0.5,
            gamma: 0.1,
            role_k: 10,
            epochs: 500,
            lr: 0.01,
            seed: 0,
            ablation: Ablation::Full,
            leaky_slope: 0.2,
        }
    }
}

impl DcrsConfig {
    /// Sets `lambda` and the ablation tag that goes with it.
    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self.ablation = if lambda == 1.0 {
            Ablation::NoRs
        } else if lambda == 0.0 {
            Ablation::NoDc
        } else {
            Ablation::Full
        };
        self
    }

    /// Sets the ablation and the `lambda` it implies. `Full` keeps the
    /// current `lambda` unless it sits on an endpoint, in which case the
    /// default is restored.
    pub fn with_ablation(mut self, ablation: Ablation) -> Self {
        self.ablation = ablation;
        self.lambda = match ablation {
            Ablation::NoRs => 1.0,
            Ablation::NoDc => 0.0,
            Ablation::Full if self.lambda == 0.0 || self.lambda == 1.0 => DcrsConfig::default().lambda,
            Ablation::Full => self.lambda,
        };
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.lambda) {
            return Err(Error::invalid(format!("lambda {} outside [0, 1]", self.lambda)));
        }
        let expected = self.with_lambda(self.lambda).ablation;
        if expected != self.ablation {
            return Err(Error::invalid(format!(
                "ablation {} inconsistent with lambda {}",
                self.ablation, self.lambda
            )));
        }
        if self.gamma.is_nan() || self.gamma < 0.0 {
            return Err(Error::invalid("gamma must be >= 0"));
        }
        if self.hidden_dim == 0 || self.gdn_layers == 0 || self.gcn_layers == 0 {
            return Err(Error::invalid("hidden_dim and layer counts must be >= 1"));
        }
        if self.role_k == 0 {
            return Err(Error::invalid("role_k must be >= 1"));
        }
        if self.lr.is_nan() || self.lr <= 0.0 {
            return Err(Error::invalid("learning rate must be positive"));
        }
        Ok(())
    }
}

/// Scores and embeddings after training.
#[derive(Debug, Clone)]
pub struct DcrsOutput {
    pub s_dc: Vec<f64>,
    pub s_rs: Vec<f64>,
    pub s_dis: Vec<f64>,
    /// Pre-sigmoid fused score. Same order as `s_dis` but without the
    /// saturation ties the sigmoid produces for large arguments.
    pub logit: Vec<f64>,
    pub h: Tensor,
    pub z: Tensor,
    /// Loss at the start of every epoch, before that epoch's update.
    pub loss_history: Vec<f64>,
    /// Loss of the returned scores.
    pub final_loss: f64,
}

impl DcrsOutput {
    /// Ranking scores; see [`DcrsOutput::logit`].
    pub fn scores(&self) -> ScoreVector {
        ScoreVector::new(self.logit.clone())
    }

    /// CSV with header `node_id,s_dc,s_rs,s_dis`.
    pub fn write_csv<W: Write>(&self, labels: &[String], out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["node_id", "s_dc", "s_rs", "s_dis"])?;
        for (i, label) in labels.iter().enumerate().take(self.s_dis.len()) {
            w.write_record([
                label.clone(),
                self.s_dc[i].to_string(),
                self.s_rs[i].to_string(),
                self.s_dis[i].to_string(),
            ])?;
        }
        w.flush().map_err(|e| Error::io("<csv>", e))?;
        Ok(())
    }
}

/// A trained (or freshly initialized) network with its configuration.
#[derive(Debug, Clone)]
pub struct DcrsModel {
    pub config: DcrsConfig,
    pub params: ParamStore,
}

impl DcrsModel {
    pub fn new(config: DcrsConfig) -> Result<Self> {
        config.validate()?;
        Ok(DcrsModel {
            params: init_params(&config)?,
            config,
        })
    }

    /// Current scores and embeddings without any update.
    pub fn evaluate(&self, ctx: &GraphContext) -> Result<DcrsOutput> {
        let mut tape = Tape::new();
        let f = forward(&mut tape, &self.params, ctx, &self.config)?;
        let loss = loss_on_tape(&mut tape, ctx, f.s_dis, self.config.gamma)?;
        let col = |v| tape.value(v).data().to_vec();
        let (s_dc, s_rs) = (col(f.s_dc), col(f.s_rs));
        let lambda = self.config.lambda;
        let logit = s_dc.iter().zip(&s_rs).map(|(a, b)| a * lambda + b * (1.0 - lambda)).collect();
        Ok(DcrsOutput {
            s_dc,
            s_rs,
            s_dis: col(f.s_dis),
            logit,
            h: tape.value(f.h).clone(),
            z: tape.value(f.z).clone(),
            loss_history: Vec::new(),
            final_loss: tape.value(loss).item(),
        })
    }

    /// Runs `config.epochs` Adam steps on the loss and returns the final
    /// scores. A non-finite value anywhere aborts with the epoch index.
    pub fn fit(&mut self, ctx: &GraphContext) -> Result<DcrsOutput> {
        let cfg = self.config;
        let mut adam = Adam::with_lr(cfg.lr);
        let mut history = Vec::with_capacity(cfg.epochs);
        for epoch in 0..cfg.epochs {
            let mut tape = Tape::new();
            let step = forward(&mut tape, &self.params, ctx, &cfg)
                .and_then(|f| loss_on_tape(&mut tape, ctx, f.s_dis, cfg.gamma))
                .and_then(|loss| {
                    let value = tape.value(loss).item();
                    tape.backward(loss, &mut self.params)?;
                    Ok(value)
                });
            match step {
                Ok(value) => history.push(value),
                Err(Error::NonFinite { .. }) => return Err(Error::Diverged { epoch }),
                Err(e) => return Err(e),
            }
            adam.step(&mut self.params);
        }
        let mut out = self.evaluate(ctx).map_err(|e| match e {
            Error::NonFinite { .. } => Error::Diverged { epoch: cfg.epochs },
            e => e,
        })?;
        out.loss_history = history;
        Ok(out)
    }
}

/// Trains a fresh model on `g` with the given role graph.
pub fn train(g: &Graph, role_graph: &Graph, config: &DcrsConfig) -> Result<DcrsOutput> {
    let ctx = GraphContext::new(g, role_graph)?;
    DcrsModel::new(*config)?.fit(&ctx)
}

/// Role configuration used by [`run_pipeline`] for a given model config.
pub fn role_config_for(config: &DcrsConfig) -> RoleConfig {
    RoleConfig {
        k: config.role_k,
        seed: config.seed,
        ..RoleConfig::default()
    }
}

/// Result of [`run_pipeline`].
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub roles: RoleDiscovery,
    pub model: DcrsModel,
    pub output: DcrsOutput,
}

/// Role discovery, role graph, then training, all on `g`.
pub fn run_pipeline(g: &Graph, config: &DcrsConfig) -> Result<Pipeline> {
    config.validate()?;
    let roles = discover_roles(g, &role_config_for(config))?;
    let ctx = GraphContext::new(g, &roles.role_graph.graph)?;
    let mut model = DcrsModel::new(*config)?;
    let output = model.fit(&ctx)?;
    Ok(Pipeline { roles, model, output })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> DcrsConfig {
        DcrsConfig {
            hidden_dim: 8,
            epochs: 30,
            ..DcrsConfig::default()
        }
    }

    #[test]
    fn ablation_lambda_coupling() {
        let c = DcrsConfig::default().with_ablation(Ablation::NoRs);
        assert_eq!(c.lambda, 1.0);
        let c = c.with_ablation(Ablation::Full);
        assert_eq!(c.lambda, 0.5);
        assert_eq!(DcrsConfig::default().with_lambda(0.0).ablation, Ablation::NoDc);
        let bad = DcrsConfig {
            lambda: 1.0,
            ..DcrsConfig::default()
        };
        assert!(bad.validate().is_err());
        assert!(DcrsConfig::default().with_lambda(1.5).validate().is_err());
        assert_eq!("no_dc".parse::<Ablation>().unwrap(), Ablation::NoDc);
        assert!("none".parse::<Ablation>().is_err());
    }

    #[test]
    fn output_invariants_and_determinism() {
        let g = crate::graph::barabasi_albert(60, 2, 3).unwrap();
        let a = run_pipeline(&g, &small()).unwrap().output;
        let b = run_pipeline(&g, &small()).unwrap().output;
        assert_eq!(a.s_dis, b.s_dis);
        assert_eq!(a.loss_history.len(), 30);
        assert!(a.s_dc.iter().chain(&a.s_rs).all(|&v| v >= 0.0));
        assert!(a.s_dis.iter().all(|&v| (0.5..1.0).contains(&v)));
        let direct = dismantling_loss(&g, &a.s_dis, small().gamma).unwrap();
        assert!((direct - a.final_loss).abs() < 1e-9);
    }

    #[test]
    fn no_dc_equals_lambda_zero() {
        let g = crate::graph::erdos_renyi(40, 4.0, 2).unwrap();
        let a = run_pipeline(&g, &small().with_ablation(Ablation::NoDc)).unwrap().output;
        let b = run_pipeline(&g, &small().with_lambda(0.0)).unwrap().output;
        assert_eq!(a.s_dis, b.s_dis);
    }

    #[test]
    fn lambda_one_ignores_role_graph() {
        let g = crate::graph::barabasi_albert(40, 2, 9).unwrap();
        let cfg = small().with_lambda(1.0);
        let a = train(&g, &Graph::empty(40), &cfg).unwrap();
        let b = train(&g, &Graph::complete(40), &cfg).unwrap();
        assert_eq!(a.s_dis, b.s_dis);
    }

    #[test]
    fn csv_header() {
        let g = Graph::path(3);
        let out = train(&g, &g, &DcrsConfig { epochs: 2, ..small() }).unwrap();
        let mut buf = Vec::new();
        let labels: Vec<String> = (0..3).map(|i| i.to_string()).collect();
        out.write_csv(&labels, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("node_id,s_dc,s_rs,s_dis\n"));
        assert_eq!(text.lines().count(), 4);
    }
}
