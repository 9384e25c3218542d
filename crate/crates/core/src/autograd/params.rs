use std::collections::HashMap;
use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::tensor::Tensor;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Param {
    pub name: String,
    pub value: Tensor,
    pub grad: Tensor,
}

/// Named trainable tensors with their gradient accumulators, in
/// registration order.
#[derive(Debug, Clone)]
pub struct ParamStore {
    params: Vec<Param>,
    index: HashMap<String, usize>,
    seed: u64,
    rng: ChaCha8Rng,
}

impl ParamStore {
    pub fn new(seed: u64) -> Self {
        ParamStore {
            params: Vec::new(),
            index: HashMap::new(),
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn insert(&mut self, name: &str, value: Tensor) -> Result<()> {
        if self.index.contains_key(name) {
            return Err(Error::invalid(format!("duplicate parameter '{name}'")));
        }
        let (r, c) = value.shape();
        self.index.insert(name.to_owned(), self.params.len());
        self.params.push(Param {
            name: name.to_owned(),
            value,
            grad: Tensor::zeros(r, c),
        });
        Ok(())
    }

    /// Glorot-uniform weights, `U(-a, a)` with `a = sqrt(6 / (rows + cols))`.
    pub fn add_glorot(&mut self, name: &str, rows: usize, cols: usize) -> Result<()> {
        let limit = (6.0 / (rows + cols) as f64).sqrt();
        let data = (0..rows * cols)
            .map(|_| self.rng.gen_range(-limit..limit))
            .collect();
        self.insert(name, Tensor::from_vec(rows, cols, data)?)
    }

    pub fn add_zeros(&mut self, name: &str, rows: usize, cols: usize) -> Result<()> {
        self.insert(name, Tensor::zeros(rows, cols))
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub(crate) fn value_at(&self, idx: usize) -> &Tensor {
        &self.params[idx].value
    }

    pub(crate) fn grad_at_mut(&mut self, idx: usize) -> &mut Tensor {
        &mut self.params[idx].grad
    }

    pub fn get(&self, name: &str) -> Option<&Tensor> {
        self.index_of(name).map(|i| &self.params[i].value)
    }

    pub fn grad(&self, name: &str) -> Option<&Tensor> {
        self.index_of(name).map(|i| &self.params[i].grad)
    }

    /// Replaces a parameter value; the shape must not change.
    pub fn set(&mut self, name: &str, value: Tensor) -> Result<()> {
        let idx = self
            .index_of(name)
            .ok_or_else(|| Error::invalid(format!("unknown parameter '{name}'")))?;
        let p = &mut self.params[idx];
        if p.value.shape() != value.shape() {
            return Err(Error::Shape {
                op: "set",
                detail: format!("{name}: {:?} -> {:?}", p.value.shape(), value.shape()),
            });
        }
        p.value = value;
        Ok(())
    }

    pub(crate) fn value_mut(&mut self, idx: usize) -> &mut Tensor {
        &mut self.params[idx].value
    }

    pub fn iter(&self) -> impl Iterator<Item = &Param> {
        self.params.iter()
    }

    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }

    /// Total number of scalar parameters.
    pub fn num_scalars(&self) -> usize {
        self.params.iter().map(|p| p.value.len()).sum()
    }

    pub fn zero_grad(&mut self) {
        for p in &mut self.params {
            p.grad.data_mut().fill(0.0);
        }
    }

    pub fn to_checkpoint(&self) -> Checkpoint {
        Checkpoint {
            seed: self.seed,
            params: self
                .params
                .iter()
                .map(|p| CheckpointEntry {
                    name: p.name.clone(),
                    shape: [p.value.rows(), p.value.cols()],
                    values: p.value.data().to_vec(),
                })
                .collect(),
        }
    }

    pub fn from_checkpoint(ckpt: &Checkpoint) -> Result<Self> {
        let mut store = ParamStore::new(ckpt.seed);
        for e in &ckpt.params {
            store.insert(&e.name, Tensor::from_vec(e.shape[0], e.shape[1], e.values.clone())?)?;
        }
        Ok(store)
    }

    pub fn save_json(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        serde_json::to_writer(BufWriter::new(file), &self.to_checkpoint())?;
        Ok(())
    }

    pub fn load_json(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        let ckpt: Checkpoint = serde_json::from_reader(BufReader::new(file))?;
        Self::from_checkpoint(&ckpt)
    }
}

/// Serialized parameter values: name, shape and row-major values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub seed: u64,
    pub params: Vec<CheckpointEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckpointEntry {
    pub name: String,
    pub shape: [usize; 2],
    pub values: Vec<f64>,
}

/// Adam with bias correction. Each [`Adam::step`] consumes and zeroes the
/// accumulated gradients.
#[derive(Debug, Clone)]
pub struct Adam {
    pub lr: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
    t: i32,
    m: Vec<Vec<f64>>,
    v: Vec<Vec<f64>>,
}

impl Adam {
    pub fn new(lr: f64, beta1: f64, beta2: f64, eps: f64) -> Self {
        Adam {
            lr,
            beta1,
            beta2,
            eps,
            t: 0,
            m: Vec::new(),
            v: Vec::new(),
        }
    }

    pub fn with_lr(lr: f64) -> Self {
        Self::new(lr, 0.9, 0.999, 1e-8)
    }

    pub fn steps(&self) -> i32 {
        self.t
    }

    pub fn step(&mut self, store: &mut ParamStore) {
        if self.m.len() != store.len() {
            self.m = store.iter().map(|p| vec![0.0; p.value.len()]).collect();
            self.v = self.m.clone();
        }
        self.t += 1;
        let bc1 = 1.0 - self.beta1.powi(self.t);
        let bc2 = 1.0 - self.beta2.powi(self.t);
        for idx in 0..store.len() {
            let grad = store.params[idx].grad.data().to_vec();
            let (m, v) = (&mut self.m[idx], &mut self.v[idx]);
            let value = store.value_mut(idx).data_mut();
            for k in 0..grad.len() {
                let g = grad[k];
                m[k] = self.beta1 * m[k] + (1.0 - self.beta1) * g;
                v[k] = self.beta2 * v[k] + (1.0 - self.beta2) * g * g;
                let m_hat = m[k] / bc1;
                let v_hat = v[k] / bc2;
                value[k] -= self.lr * m_hat / (v_hat.sqrt() + self.eps);
            }
        }
        store.zero_grad();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autograd::Tape;

    #[test]
    fn duplicate_names_rejected() {
        let mut s = ParamStore::new(0);
        s.add_zeros("w", 2, 2).unwrap();
        assert!(s.add_zeros("w", 1, 1).is_err());
    }

    #[test]
    fn glorot_within_limit_and_seeded() {
        let mut a = ParamStore::new(9);
        let mut b = ParamStore::new(9);
        a.add_glorot("w", 16, 8).unwrap();
        b.add_glorot("w", 16, 8).unwrap();
        assert_eq!(a.get("w"), b.get("w"));
        let limit = (6.0f64 / 24.0).sqrt();
        assert!(a.get("w").unwrap().data().iter().all(|v| v.abs() < limit));
    }

    #[test]
    fn set_checks_shape() {
        let mut s = ParamStore::new(0);
        s.add_zeros("b", 1, 3).unwrap();
        assert!(s.set("b", Tensor::zeros(3, 1)).is_err());
        assert!(s.set("missing", Tensor::zeros(1, 3)).is_err());
        s.set("b", Tensor::ones(1, 3)).unwrap();
        assert_eq!(s.get("b").unwrap().data(), &[1.0; 3]);
    }

    #[test]
    fn zero_gradient_leaves_parameters() {
        let mut s = ParamStore::new(1);
        s.add_glorot("w", 3, 3).unwrap();
        let before = s.get("w").unwrap().clone();
        let mut adam = Adam::with_lr(0.1);
        adam.step(&mut s);
        assert_eq!(s.get("w").unwrap(), &before);
    }

    #[test]
    fn backward_accumulates_until_zeroed() {
        let mut s = ParamStore::new(0);
        s.insert("w", Tensor::ones(2, 1)).unwrap();
        for expected in [1.0, 2.0] {
            let mut tape = Tape::new();
            let w = tape.param(&s, "w").unwrap();
            let loss = tape.reduce_sum(w).unwrap();
            tape.backward(loss, &mut s).unwrap();
            assert_eq!(s.grad("w").unwrap().data(), &[expected; 2]);
        }
        s.zero_grad();
        assert_eq!(s.grad("w").unwrap().data(), &[0.0; 2]);
    }

    #[test]
    fn adam_minimizes_quadratic() {
        let mut s = ParamStore::new(0);
        s.insert("x", Tensor::scalar(0.0)).unwrap();
        let mut adam = Adam::with_lr(0.1);
        for _ in 0..500 {
            let mut tape = Tape::new();
            let x = tape.param(&s, "x").unwrap();
            let shift = tape.constant(Tensor::scalar(-3.0));
            let d = tape.add(x, shift).unwrap();
            let sq = tape.mul(d, d).unwrap();
            let loss = tape.reduce_sum(sq).unwrap();
            tape.backward(loss, &mut s).unwrap();
            adam.step(&mut s);
        }
        let x = s.get("x").unwrap().item();
        assert!((x - 3.0).abs() < 1e-2, "x = {x}");
    }

    #[test]
    fn checkpoint_round_trip() {
        let mut s = ParamStore::new(4);
        s.add_glorot("a", 2, 3).unwrap();
        s.add_zeros("b", 1, 3).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ckpt.json");
        s.save_json(&path).unwrap();
        let back = ParamStore::load_json(&path).unwrap();
        assert_eq!(back.to_checkpoint(), s.to_checkpoint());
    }
}
