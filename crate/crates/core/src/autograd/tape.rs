//! Reverse-mode tape over dense matrices.
//!
//! Every operation appends a node holding its forward value and the handles
//! of its inputs. [`Tape::gradients`] walks the nodes backwards from a scalar
//! loss. Segment operations take a per-row segment id, which is how sparse
//! neighborhoods are expressed over dense edge arrays.

use std::sync::Arc;

use super::params::ParamStore;
use super::tensor::Tensor;
use crate::error::{Error, Result};

/// Handle to a node on a [`Tape`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Var(usize);

/// Shared row-index array for gather and segment operations.
pub type Index = Arc<[usize]>;

#[derive(Debug, Clone)]
enum Op {
    Leaf,
    MatMul(Var, Var),
    AddBias(Var, Var),
    Add(Var, Var),
    Mul(Var, Var),
    Scale(Var, f64),
    LeakyRelu(Var, f64),
    Relu(Var),
    Sigmoid(Var),
    Reciprocal1p(Var),
    Log(Var),
    Exp(Var),
    SegmentSoftmax(Var, Index),
    SegmentSum(Var, Index),
    SegmentProd(Var, Index),
    ReduceSum(Var),
    RowGather(Var, Index),
}

#[derive(Debug)]
struct Node {
    value: Tensor,
    op: Op,
    requires_grad: bool,
    param: Option<usize>,
}

#[derive(Debug, Default)]
pub struct Tape {
    nodes: Vec<Node>,
}

/// Gradients of one backward pass, indexed by [`Var`].
#[derive(Debug)]
pub struct Gradients(Vec<Option<Tensor>>);

impl Gradients {
    pub fn get(&self, var: Var) -> Option<&Tensor> {
        self.0[var.0].as_ref()
    }
}

fn shape_err(op: &'static str, detail: String) -> Error {
    Error::Shape { op, detail }
}

impl Tape {
    pub fn new() -> Self {
        Tape::default()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn value(&self, var: Var) -> &Tensor {
        &self.nodes[var.0].value
    }

    fn push(&mut self, op: &'static str, value: Tensor, kind: Op) -> Result<Var> {
        if !value.is_finite() {
            return Err(Error::NonFinite { op });
        }
        let requires_grad = match &kind {
            Op::Leaf => false,
            Op::MatMul(a, b) | Op::AddBias(a, b) | Op::Add(a, b) | Op::Mul(a, b) => {
                self.requires(*a) || self.requires(*b)
            }
            Op::Scale(a, _)
            | Op::LeakyRelu(a, _)
            | Op::Relu(a)
            | Op::Sigmoid(a)
            | Op::Reciprocal1p(a)
            | Op::Log(a)
            | Op::Exp(a)
            | Op::SegmentSoftmax(a, _)
            | Op::SegmentSum(a, _)
            | Op::SegmentProd(a, _)
            | Op::ReduceSum(a)
            | Op::RowGather(a, _) => self.requires(*a),
        };
        self.nodes.push(Node {
            value,
            op: kind,
            requires_grad,
            param: None,
        });
        Ok(Var(self.nodes.len() - 1))
    }

    fn requires(&self, v: Var) -> bool {
        self.nodes[v.0].requires_grad
    }

    /// A value that receives no gradient.
    pub fn constant(&mut self, value: Tensor) -> Var {
        self.nodes.push(Node {
            value,
            op: Op::Leaf,
            requires_grad: false,
            param: None,
        });
        Var(self.nodes.len() - 1)
    }

    /// A differentiable input not backed by a parameter store.
    pub fn leaf(&mut self, value: Tensor) -> Var {
        self.nodes.push(Node {
            value,
            op: Op::Leaf,
            requires_grad: true,
            param: None,
        });
        Var(self.nodes.len() - 1)
    }

    /// Binds a named parameter; its gradient flows back into `store` on
    /// [`Tape::backward`].
    pub fn param(&mut self, store: &ParamStore, name: &str) -> Result<Var> {
        let idx = store
            .index_of(name)
            .ok_or_else(|| Error::invalid(format!("unknown parameter '{name}'")))?;
        self.nodes.push(Node {
            value: store.value_at(idx).clone(),
            op: Op::Leaf,
            requires_grad: true,
            param: Some(idx),
        });
        Ok(Var(self.nodes.len() - 1))
    }

    pub fn matmul(&mut self, a: Var, b: Var) -> Result<Var> {
        let (va, vb) = (self.value(a), self.value(b));
        if va.cols() != vb.rows() {
            return Err(shape_err("matmul", format!("{:?} x {:?}", va.shape(), vb.shape())));
        }
        let out = va.matmul(vb);
        self.push("matmul", out, Op::MatMul(a, b))
    }

    /// `x + 1 bias` for an `n x d` input and a `1 x d` bias row.
    pub fn add_bias(&mut self, x: Var, bias: Var) -> Result<Var> {
        let (vx, vb) = (self.value(x), self.value(bias));
        if vb.rows() != 1 || vb.cols() != vx.cols() {
            return Err(shape_err("add_bias", format!("{:?} + {:?}", vx.shape(), vb.shape())));
        }
        let mut out = vx.clone();
        let d = vx.cols();
        for (i, v) in out.data_mut().iter_mut().enumerate() {
            *v += vb.data()[i % d];
        }
        self.push("add_bias", out, Op::AddBias(x, bias))
    }

    pub fn add(&mut self, a: Var, b: Var) -> Result<Var> {
        let (va, vb) = (self.value(a), self.value(b));
        if va.shape() != vb.shape() {
            return Err(shape_err("add", format!("{:?} + {:?}", va.shape(), vb.shape())));
        }
        let mut out = va.clone();
        out.add_assign(vb);
        self.push("add", out, Op::Add(a, b))
    }

    /// Elementwise product. `b` may also be an `n x 1` column, broadcast
    /// across the columns of `a`.
    pub fn mul(&mut self, a: Var, b: Var) -> Result<Var> {
        let (va, vb) = (self.value(a), self.value(b));
        let out = if va.shape() == vb.shape() {
            let data = va.data().iter().zip(vb.data()).map(|(x, y)| x * y).collect();
            Tensor::from_vec(va.rows(), va.cols(), data)?
        } else if vb.cols() == 1 && vb.rows() == va.rows() {
            let d = va.cols();
            let data = va
                .data()
                .iter()
                .enumerate()
                .map(|(i, x)| x * vb.data()[i / d])
                .collect();
            Tensor::from_vec(va.rows(), d, data)?
        } else {
            return Err(shape_err("mul", format!("{:?} * {:?}", va.shape(), vb.shape())));
        };
        self.push("mul", out, Op::Mul(a, b))
    }

    pub fn scale(&mut self, x: Var, factor: f64) -> Result<Var> {
        let out = self.value(x).map(|v| v * factor);
        self.push("scale", out, Op::Scale(x, factor))
    }

    pub fn leaky_relu(&mut self, x: Var, slope: f64) -> Result<Var> {
        let out = self.value(x).map(|v| if v > 0.0 { v } else { slope * v });
        self.push("leaky_relu", out, Op::LeakyRelu(x, slope))
    }

    pub fn relu(&mut self, x: Var) -> Result<Var> {
        let out = self.value(x).map(|v| v.max(0.0));
        self.push("relu", out, Op::Relu(x))
    }

    pub fn sigmoid(&mut self, x: Var) -> Result<Var> {
        let out = self.value(x).map(sigmoid);
        self.push("sigmoid", out, Op::Sigmoid(x))
    }

    /// `x -> 1 / (1 + x)`.
    pub fn reciprocal_1p(&mut self, x: Var) -> Result<Var> {
        let out = self.value(x).map(|v| 1.0 / (1.0 + v));
        self.push("reciprocal_1p", out, Op::Reciprocal1p(x))
    }

    pub fn log(&mut self, x: Var) -> Result<Var> {
        let out = self.value(x).map(f64::ln);
        self.push("log", out, Op::Log(x))
    }

    pub fn exp(&mut self, x: Var) -> Result<Var> {
        let out = self.value(x).map(f64::exp);
        self.push("exp", out, Op::Exp(x))
    }

    /// Softmax over the rows sharing a segment id, independently per column.
    pub fn segment_softmax(&mut self, x: Var, segments: &Index) -> Result<Var> {
        let vx = self.value(x);
        check_segments("segment_softmax", vx, segments)?;
        if vx.rows() == 0 {
            return Err(Error::EmptySegment);
        }
        let d = vx.cols();
        let num_segments = segments.iter().max().map_or(0, |m| m + 1);
        let mut max = vec![f64::NEG_INFINITY; num_segments * d];
        for (r, &s) in segments.iter().enumerate() {
            for c in 0..d {
                let m = &mut max[s * d + c];
                *m = m.max(vx.get(r, c));
            }
        }
        let mut out = Tensor::zeros(vx.rows(), d);
        let mut sum = vec![0.0; num_segments * d];
        for (r, &s) in segments.iter().enumerate() {
            for c in 0..d {
                let e = (vx.get(r, c) - max[s * d + c]).exp();
                out.data_mut()[r * d + c] = e;
                sum[s * d + c] += e;
            }
        }
        for (r, &s) in segments.iter().enumerate() {
            for c in 0..d {
                out.data_mut()[r * d + c] /= sum[s * d + c];
            }
        }
        self.push("segment_softmax", out, Op::SegmentSoftmax(x, segments.clone()))
    }

    /// Row sums per segment; empty segments give zero rows.
    pub fn segment_sum(&mut self, x: Var, segments: &Index, num_segments: usize) -> Result<Var> {
        let vx = self.value(x);
        check_segments("segment_sum", vx, segments)?;
        check_segment_range("segment_sum", segments, num_segments)?;
        let d = vx.cols();
        let mut out = Tensor::zeros(num_segments, d);
        for (r, &s) in segments.iter().enumerate() {
            for c in 0..d {
                out.data_mut()[s * d + c] += vx.get(r, c);
            }
        }
        self.push("segment_sum", out, Op::SegmentSum(x, segments.clone()))
    }

    /// Row products per segment; empty segments give rows of ones.
    pub fn segment_prod(&mut self, x: Var, segments: &Index, num_segments: usize) -> Result<Var> {
        let vx = self.value(x);
        check_segments("segment_prod", vx, segments)?;
        check_segment_range("segment_prod", segments, num_segments)?;
        let d = vx.cols();
        let mut out = Tensor::ones(num_segments, d);
        for (r, &s) in segments.iter().enumerate() {
            for c in 0..d {
                out.data_mut()[s * d + c] *= vx.get(r, c);
            }
        }
        self.push("segment_prod", out, Op::SegmentProd(x, segments.clone()))
    }

    pub fn reduce_sum(&mut self, x: Var) -> Result<Var> {
        let total = self.value(x).data().iter().sum();
        self.push("reduce_sum", Tensor::scalar(total), Op::ReduceSum(x))
    }

    /// Output row `k` is input row `index[k]`.
    pub fn row_gather(&mut self, x: Var, index: &Index) -> Result<Var> {
        let vx = self.value(x);
        if let Some(&bad) = index.iter().find(|&&i| i >= vx.rows()) {
            return Err(shape_err("row_gather", format!("row {bad} of {}", vx.rows())));
        }
        let d = vx.cols();
        let mut data = Vec::with_capacity(index.len() * d);
        for &i in index.iter() {
            data.extend_from_slice(vx.row(i));
        }
        let out = Tensor::from_vec(index.len(), d, data)?;
        self.push("row_gather", out, Op::RowGather(x, index.clone()))
    }

    /// Gradients of the scalar `loss` with respect to every node.
    pub fn gradients(&self, loss: Var) -> Result<Gradients> {
        Ok(Gradients(self.walk(loss, true)?))
    }

    /// Backpropagates `loss` and adds parameter gradients into `store`.
    /// Repeated calls accumulate until [`ParamStore::zero_grad`].
    pub fn backward(&self, loss: Var, store: &mut ParamStore) -> Result<()> {
        let grads = self.walk(loss, false)?;
        for (node, grad) in self.nodes.iter().zip(&grads) {
            if let (Some(idx), Some(g)) = (node.param, grad) {
                store.grad_at_mut(idx).add_assign(g);
            }
        }
        Ok(())
    }

    /// Reverse sweep. Unless `keep_all`, only leaf gradients survive; the
    /// rest are dropped as soon as they have been propagated.
    fn walk(&self, loss: Var, keep_all: bool) -> Result<Vec<Option<Tensor>>> {
        let lv = self.value(loss);
        if lv.shape() != (1, 1) {
            return Err(shape_err("backward", format!("loss has shape {:?}", lv.shape())));
        }
        let mut grads: Vec<Option<Tensor>> = vec![None; self.nodes.len()];
        grads[loss.0] = Some(Tensor::scalar(1.0));

        for i in (0..=loss.0).rev() {
            let node = &self.nodes[i];
            if !node.requires_grad {
                continue;
            }
            let Some(dy) = grads[i].take() else { continue };
            self.backprop(node, &dy, &mut grads);
            if keep_all || matches!(node.op, Op::Leaf) {
                grads[i] = Some(dy);
            }
        }
        Ok(grads)
    }

    fn backprop(&self, node: &Node, dy: &Tensor, grads: &mut [Option<Tensor>]) {
        let mut send = |var: Var, g: Tensor| {
            if !self.nodes[var.0].requires_grad {
                return;
            }
            match &mut grads[var.0] {
                Some(acc) => acc.add_assign(&g),
                slot @ None => *slot = Some(g),
            }
        };
        let y = &node.value;
        match &node.op {
            Op::Leaf => {}
            Op::MatMul(a, b) => {
                let (va, vb) = (self.value(*a), self.value(*b));
                if self.requires(*a) {
                    send(*a, dy.matmul(&vb.transpose()));
                }
                if self.requires(*b) {
                    send(*b, va.transpose().matmul(dy));
                }
            }
            Op::AddBias(x, bias) => {
                send(*x, dy.clone());
                let d = dy.cols();
                let mut gb = Tensor::zeros(1, d);
                for (i, v) in dy.data().iter().enumerate() {
                    gb.data_mut()[i % d] += v;
                }
                send(*bias, gb);
            }
            Op::Add(a, b) => {
                send(*a, dy.clone());
                send(*b, dy.clone());
            }
            Op::Mul(a, b) => {
                let (va, vb) = (self.value(*a), self.value(*b));
                if va.shape() == vb.shape() {
                    let ga = dy.data().iter().zip(vb.data()).map(|(g, v)| g * v).collect();
                    let gb = dy.data().iter().zip(va.data()).map(|(g, v)| g * v).collect();
                    send(*a, Tensor::from_vec(va.rows(), va.cols(), ga).unwrap());
                    send(*b, Tensor::from_vec(vb.rows(), vb.cols(), gb).unwrap());
                } else {
                    let d = va.cols();
                    let ga = dy
                        .data()
                        .iter()
                        .enumerate()
                        .map(|(i, g)| g * vb.data()[i / d])
                        .collect();
                    let mut gb = Tensor::zeros(vb.rows(), 1);
                    for (i, (g, v)) in dy.data().iter().zip(va.data()).enumerate() {
                        gb.data_mut()[i / d] += g * v;
                    }
                    send(*a, Tensor::from_vec(va.rows(), d, ga).unwrap());
                    send(*b, gb);
                }
            }
            Op::Scale(x, f) => send(*x, dy.map(|g| g * f)),
            Op::LeakyRelu(x, slope) => {
                let vx = self.value(*x);
                send(*x, zip_map(dy, vx, |g, v| if v > 0.0 { g } else { g * slope }));
            }
            Op::Relu(x) => {
                let vx = self.value(*x);
                send(*x, zip_map(dy, vx, |g, v| if v > 0.0 { g } else { 0.0 }));
            }
            Op::Sigmoid(x) => send(*x, zip_map(dy, y, |g, s| g * s * (1.0 - s))),
            Op::Reciprocal1p(x) => send(*x, zip_map(dy, y, |g, r| -g * r * r)),
            Op::Log(x) => {
                let vx = self.value(*x);
                send(*x, zip_map(dy, vx, |g, v| g / v));
            }
            Op::Exp(x) => send(*x, zip_map(dy, y, |g, e| g * e)),
            Op::SegmentSoftmax(x, segments) => {
                let d = y.cols();
                let num_segments = segments.iter().max().map_or(0, |m| m + 1);
                let mut dot = vec![0.0; num_segments * d];
                for (r, &s) in segments.iter().enumerate() {
                    for c in 0..d {
                        dot[s * d + c] += y.get(r, c) * dy.get(r, c);
                    }
                }
                let mut gx = Tensor::zeros(y.rows(), d);
                for (r, &s) in segments.iter().enumerate() {
                    for c in 0..d {
                        gx.data_mut()[r * d + c] = y.get(r, c) * (dy.get(r, c) - dot[s * d + c]);
                    }
                }
                send(*x, gx);
            }
            Op::SegmentSum(x, segments) => {
                let d = dy.cols();
                let mut gx = Tensor::zeros(segments.len(), d);
                for (r, &s) in segments.iter().enumerate() {
                    gx.data_mut()[r * d..(r + 1) * d].copy_from_slice(dy.row(s));
                }
                send(*x, gx);
            }
            Op::SegmentProd(x, segments) => {
                let vx = self.value(*x);
                send(*x, segment_prod_grad(vx, segments, dy));
            }
            Op::ReduceSum(x) => {
                let (r, c) = self.value(*x).shape();
                send(*x, Tensor::filled(r, c, dy.item()));
            }
            Op::RowGather(x, index) => {
                let (r, d) = self.value(*x).shape();
                let mut gx = Tensor::zeros(r, d);
                for (k, &i) in index.iter().enumerate() {
                    for (o, g) in gx.data_mut()[i * d..(i + 1) * d].iter_mut().zip(dy.row(k)) {
                        *o += g;
                    }
                }
                send(*x, gx);
            }
        }
    }
}

/// Largest f64 below one; keeps `sigmoid` strictly under 1 for big inputs.
const BELOW_ONE: f64 = 1.0 - f64::EPSILON / 2.0;

pub(crate) fn sigmoid(v: f64) -> f64 {
    if v >= 0.0 {
        (1.0 / (1.0 + (-v).exp())).min(BELOW_ONE)
    } else {
        let e = v.exp();
        e / (1.0 + e)
    }
}

fn zip_map(a: &Tensor, b: &Tensor, f: impl Fn(f64, f64) -> f64) -> Tensor {
    let data = a.data().iter().zip(b.data()).map(|(&x, &y)| f(x, y)).collect();
    Tensor::from_vec(a.rows(), a.cols(), data).unwrap()
}

fn check_segments(op: &'static str, x: &Tensor, segments: &Index) -> Result<()> {
    if segments.len() != x.rows() {
        return Err(shape_err(op, format!("{} segment ids for {} rows", segments.len(), x.rows())));
    }
    Ok(())
}

fn check_segment_range(op: &'static str, segments: &Index, num_segments: usize) -> Result<()> {
    if let Some(&bad) = segments.iter().find(|&&s| s >= num_segments) {
        return Err(shape_err(op, format!("segment id {bad} >= {num_segments}")));
    }
    Ok(())
}

/// Product of all other rows in the segment, via prefix and suffix products
/// so zero entries need no division.
fn segment_prod_grad(x: &Tensor, segments: &Index, dy: &Tensor) -> Tensor {
    let d = x.cols();
    let num_segments = dy.rows();
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); num_segments];
    for (r, &s) in segments.iter().enumerate() {
        members[s].push(r);
    }
    let mut gx = Tensor::zeros(x.rows(), d);
    let mut prefix = Vec::new();
    for (s, rows) in members.iter().enumerate() {
        for c in 0..d {
            prefix.clear();
            let mut acc = 1.0;
            for &r in rows {
                prefix.push(acc);
                acc *= x.get(r, c);
            }
            let mut suffix = 1.0;
            for (k, &r) in rows.iter().enumerate().rev() {
                gx.data_mut()[r * d + c] = dy.get(s, c) * prefix[k] * suffix;
                suffix *= x.get(r, c);
            }
        }
    }
    gx
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(v: &[usize]) -> Index {
        Arc::from(v)
    }

    #[test]
    fn softmax_of_equal_values_is_uniform() {
        let mut tape = Tape::new();
        let x = tape.constant(Tensor::column(&[0.7, 0.7, 0.7]));
        let y = tape.segment_softmax(x, &idx(&[0, 0, 0])).unwrap();
        for &v in tape.value(y).data() {
            assert!((v - 1.0 / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn softmax_segments_normalize_independently() {
        let mut tape = Tape::new();
        let x = tape.constant(Tensor::column(&[1.0, 2.0, -3.0, 0.5, 4.0]));
        let y = tape.segment_softmax(x, &idx(&[1, 0, 1, 0, 2])).unwrap();
        let v = tape.value(y).data();
        assert!((v[0] + v[2] - 1.0).abs() < 1e-12);
        assert!((v[1] + v[3] - 1.0).abs() < 1e-12);
        assert_eq!(v[4], 1.0);
        assert!(v.iter().all(|&p| p > 0.0));
    }

    #[test]
    fn softmax_rejects_empty_input() {
        let mut tape = Tape::new();
        let x = tape.constant(Tensor::zeros(0, 1));
        assert!(matches!(tape.segment_softmax(x, &idx(&[])), Err(Error::EmptySegment)));
    }

    #[test]
    fn reciprocal_1p_at_zero() {
        let mut tape = Tape::new();
        let x = tape.constant(Tensor::scalar(0.0));
        let y = tape.reciprocal_1p(x).unwrap();
        assert_eq!(tape.value(y).item(), 1.0);
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let mut tape = Tape::new();
        let a = tape.constant(Tensor::zeros(2, 3));
        let b = tape.constant(Tensor::zeros(2, 3));
        assert!(matches!(tape.matmul(a, b), Err(Error::Shape { op: "matmul", .. })));
        let c = tape.constant(Tensor::zeros(3, 1));
        assert!(tape.mul(a, c).is_err());
        assert!(tape.add_bias(a, c).is_err());
        assert!(tape.row_gather(a, &idx(&[0, 2])).is_err());
        assert!(tape.segment_sum(a, &idx(&[0, 1]), 1).is_err());
    }

    #[test]
    fn non_finite_values_are_rejected() {
        let mut tape = Tape::new();
        let x = tape.constant(Tensor::scalar(-1.0));
        assert!(matches!(tape.log(x), Err(Error::NonFinite { op: "log" })));
        assert!(matches!(tape.reciprocal_1p(x), Err(Error::NonFinite { .. })));
    }

    #[test]
    fn empty_segments_give_identity_rows() {
        let mut tape = Tape::new();
        let x = tape.constant(Tensor::column(&[2.0, 3.0]));
        let s = tape.segment_sum(x, &idx(&[0, 0]), 2).unwrap();
        let p = tape.segment_prod(x, &idx(&[0, 0]), 2).unwrap();
        assert_eq!(tape.value(s).data(), &[5.0, 0.0]);
        assert_eq!(tape.value(p).data(), &[6.0, 1.0]);
    }

    #[test]
    fn gradient_of_sum_is_ones() {
        let mut tape = Tape::new();
        let w = tape.leaf(Tensor::from_vec(2, 2, vec![1.0, -2.0, 3.5, 0.0]).unwrap());
        let loss = tape.reduce_sum(w).unwrap();
        let grads = tape.gradients(loss).unwrap();
        assert_eq!(grads.get(w).unwrap().data(), &[1.0; 4]);
    }

    #[test]
    fn gradient_of_sigmoid_at_zero() {
        let mut tape = Tape::new();
        let w = tape.leaf(Tensor::zeros(3, 2));
        let s = tape.sigmoid(w).unwrap();
        let loss = tape.reduce_sum(s).unwrap();
        let grads = tape.gradients(loss).unwrap();
        assert_eq!(grads.get(w).unwrap().data(), &[0.25; 6]);
    }

    #[test]
    fn backward_requires_scalar() {
        let mut tape = Tape::new();
        let w = tape.leaf(Tensor::zeros(2, 1));
        assert!(tape.gradients(w).is_err());
    }

    #[test]
    fn segment_prod_gradient_with_zero_entry() {
        let mut tape = Tape::new();
        let x = tape.leaf(Tensor::column(&[0.0, 2.0, 3.0]));
        let p = tape.segment_prod(x, &idx(&[0, 0, 0]), 1).unwrap();
        let loss = tape.reduce_sum(p).unwrap();
        let g = tape.gradients(loss).unwrap();
        assert_eq!(g.get(x).unwrap().data(), &[6.0, 0.0, 0.0]);
    }

    #[test]
    fn constants_get_no_gradient() {
        let mut tape = Tape::new();
        let c = tape.constant(Tensor::ones(2, 2));
        let w = tape.leaf(Tensor::ones(2, 2));
        let y = tape.mul(c, w).unwrap();
        let loss = tape.reduce_sum(y).unwrap();
        let g = tape.gradients(loss).unwrap();
        assert!(g.get(c).is_none());
        assert!(g.get(w).is_some());
    }
}
