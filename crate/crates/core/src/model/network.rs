//! Parameters and forward pass of the fused scoring network.

use std::sync::Arc;

use super::DcrsConfig;
use crate::autograd::{Index, ParamStore, Tape, Tensor, Var};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Precomputed index structures for one (graph, role graph) pair.
#[derive(Debug, Clone)]
pub struct GraphContext {
    pub num_nodes: usize,
    /// Directed arcs of the input graph, grouped by source.
    pub src: Index,
    pub dst: Index,
    /// Arcs of the role graph plus one self-loop per node.
    pub role_src: Index,
    pub role_dst: Index,
    /// `1 / sqrt(d_u d_v)` per role arc, degrees counting the self-loop.
    pub role_coef: Tensor,
}

impl GraphContext {
    pub fn new(g: &Graph, role_graph: &Graph) -> Result<Self> {
        let n = g.num_nodes();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        if role_graph.num_nodes() != n {
            return Err(Error::invalid(format!(
                "role graph has {} nodes, graph has {n}",
                role_graph.num_nodes()
            )));
        }
        let (src, dst) = g.arcs();
        let (mut rs, mut rd) = role_graph.arcs();
        rs.extend(0..n);
        rd.extend(0..n);
        let deg: Vec<f64> = (0..n).map(|v| (role_graph.degree(v) + 1) as f64).collect();
        let coef: Vec<f64> = rs.iter().zip(&rd).map(|(&u, &v)| 1.0 / (deg[u] * deg[v]).sqrt()).collect();
        Ok(GraphContext {
            num_nodes: n,
            src: Arc::from(src),
            dst: Arc::from(dst),
            role_coef: Tensor::column(&coef),
            role_src: Arc::from(rs),
            role_dst: Arc::from(rd),
        })
    }
}

pub const HEAD_BIAS: f64 = 0.01;

/// Registers every parameter of the network, Glorot weights and zero biases.
///
/// The score heads start at zero weight and a small positive bias, so every
/// node begins at the neutral score `sigmoid(HEAD_BIAS)` with its ReLU active.
/// A head whose pre-activation starts negative for every node would never
/// receive a gradient.
pub fn init_params(cfg: &DcrsConfig) -> Result<ParamStore> {
    let d = cfg.hidden_dim;
    let mut store = ParamStore::new(cfg.seed);
    for l in 0..cfg.gdn_layers {
        store.add_glorot(&format!("gdn{l}.w1"), d, d)?;
        store.add_glorot(&format!("gdn{l}.w2"), d, d)?;
        store.add_glorot(&format!("gdn{l}.beta"), d, 1)?;
        store.add_glorot(&format!("gdn{l}.w3"), d, d)?;
        store.add_zeros(&format!("gdn{l}.b3"), 1, d)?;
    }
    for l in 0..cfg.gcn_layers {
        store.add_glorot(&format!("gcn{l}.w"), d, d)?;
    }
    for (w, b) in [("score.w4", "score.b4"), ("score.w5", "score.b5")] {
        store.add_zeros(w, d, 1)?;
        store.insert(b, Tensor::scalar(HEAD_BIAS))?;
    }
    Ok(store)
}

/// Tape handles of one forward pass.
#[derive(Debug, Clone, Copy)]
pub struct Forward {
    pub h: Var,
    pub z: Var,
    pub s_dc: Var,
    pub s_rs: Var,
    pub s_dis: Var,
}

/// Diffusion encoder over the input graph. Each layer scores every arc
/// `i -> j` with `LeakyReLU(h_i W1 + h_j W2) beta`, normalizes the scores
/// over the out-arcs of `i`, and node `j` then sums `w_ij h_i` over its
/// in-arcs before the affine map and ReLU.
pub fn gdn_forward(tape: &mut Tape, store: &ParamStore, ctx: &GraphContext, cfg: &DcrsConfig) -> Result<Var> {
    let n = ctx.num_nodes;
    let d = cfg.hidden_dim;
    let mut h = tape.constant(Tensor::ones(n, d));
    for l in 0..cfg.gdn_layers {
        let w1 = tape.param(store, &format!("gdn{l}.w1"))?;
        let w2 = tape.param(store, &format!("gdn{l}.w2"))?;
        let beta = tape.param(store, &format!("gdn{l}.beta"))?;
        let w3 = tape.param(store, &format!("gdn{l}.w3"))?;
        let b3 = tape.param(store, &format!("gdn{l}.b3"))?;
        let m = if ctx.src.is_empty() {
            tape.constant(Tensor::zeros(n, d))
        } else {
            let p = tape.matmul(h, w1)?;
            let q = tape.matmul(h, w2)?;
            let ps = tape.row_gather(p, &ctx.src)?;
            let qd = tape.row_gather(q, &ctx.dst)?;
            let pre = tape.add(ps, qd)?;
            let act = tape.leaky_relu(pre, cfg.leaky_slope)?;
            let alpha = tape.matmul(act, beta)?;
            let w = tape.segment_softmax(alpha, &ctx.src)?;
            let hs = tape.row_gather(h, &ctx.src)?;
            let msg = tape.mul(hs, w)?;
            tape.segment_sum(msg, &ctx.dst, n)?
        };
        let lin = tape.matmul(m, w3)?;
        let lin = tape.add_bias(lin, b3)?;
        h = tape.relu(lin)?;
    }
    Ok(h)
}

/// Symmetric-normalized graph convolution over the role graph with self-loops.
pub fn gcn_forward(tape: &mut Tape, store: &ParamStore, ctx: &GraphContext, cfg: &DcrsConfig) -> Result<Var> {
    let n = ctx.num_nodes;
    let coef = tape.constant(ctx.role_coef.clone());
    let mut z = tape.constant(Tensor::ones(n, cfg.hidden_dim));
    for l in 0..cfg.gcn_layers {
        let w = tape.param(store, &format!("gcn{l}.w"))?;
        let zs = tape.row_gather(z, &ctx.role_src)?;
        let weighted = tape.mul(zs, coef)?;
        let prop = tape.segment_sum(weighted, &ctx.role_dst, n)?;
        let lin = tape.matmul(prop, w)?;
        z = tape.relu(lin)?;
    }
    Ok(z)
}

/// Two affine+ReLU heads and the sigmoid fusion gate.
pub fn score_and_fuse(tape: &mut Tape, store: &ParamStore, h: Var, z: Var, lambda: f64) -> Result<(Var, Var, Var)> {
    let head = |tape: &mut Tape, x: Var, w: &str, b: &str| -> Result<Var> {
        let w = tape.param(store, w)?;
        let b = tape.param(store, b)?;
        let lin = tape.matmul(x, w)?;
        let lin = tape.add_bias(lin, b)?;
        tape.relu(lin)
    };
    let s_dc = head(tape, h, "score.w4", "score.b4")?;
    let s_rs = head(tape, z, "score.w5", "score.b5")?;
    let a = tape.scale(s_dc, lambda)?;
    let b = tape.scale(s_rs, 1.0 - lambda)?;
    let mix = tape.add(a, b)?;
    let s_dis = tape.sigmoid(mix)?;
    Ok((s_dc, s_rs, s_dis))
}

pub fn forward(tape: &mut Tape, store: &ParamStore, ctx: &GraphContext, cfg: &DcrsConfig) -> Result<Forward> {
    let h = gdn_forward(tape, store, ctx, cfg)?;
    let z = gcn_forward(tape, store, ctx, cfg)?;
    let (s_dc, s_rs, s_dis) = score_and_fuse(tape, store, h, z, cfg.lambda)?;
    Ok(Forward { h, z, s_dc, s_rs, s_dis })
}

/// `sum_i prod_{j in N(i)} 1 / (1 + s_j) + gamma * sum_i s_i` on the tape.
/// `s` is an `N x 1` column.
pub fn loss_on_tape(tape: &mut Tape, ctx: &GraphContext, s: Var, gamma: f64) -> Result<Var> {
    let n = ctx.num_nodes;
    let uninfluenced = if ctx.src.is_empty() {
        tape.constant(Tensor::scalar(n as f64))
    } else {
        let sd = tape.row_gather(s, &ctx.dst)?;
        let inv = tape.reciprocal_1p(sd)?;
        let prod = tape.segment_prod(inv, &ctx.src, n)?;
        tape.reduce_sum(prod)?
    };
    let total = tape.reduce_sum(s)?;
    let cost = tape.scale(total, gamma)?;
    tape.add(uninfluenced, cost)
}

/// Plain evaluation of the same loss.
pub fn dismantling_loss(g: &Graph, s: &[f64], gamma: f64) -> Result<f64> {
    if s.len() != g.num_nodes() {
        return Err(Error::invalid(format!("{} scores for {} nodes", s.len(), g.num_nodes())));
    }
    let first: f64 = (0..g.num_nodes())
        .map(|i| g.neighbors(i).iter().map(|&j| 1.0 / (1.0 + s[j])).product::<f64>())
        .sum();
    Ok(first + gamma * s.iter().sum::<f64>())
}
