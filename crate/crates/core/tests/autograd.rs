mod common;

use std::sync::Arc;

use common::*;
use dismantler::autograd::{Adam, Index, ParamStore, Tape, Tensor, Var};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const H: f64 = 1e-5;
const TRIALS: u64 = 50;

type Build = dyn Fn(&mut Tape, &[Var]) -> Var;

fn tensor(rng: &mut ChaCha8Rng, rows: usize, cols: usize, lo: f64, hi: f64) -> Tensor {
    Tensor::from_vec(rows, cols, (0..rows * cols).map(|_| rng.gen_range(lo..hi)).collect()).unwrap()
}

/// Loss `sum(op(inputs) * weights)` with fixed random weights so that every
/// output entry carries a distinct sensitivity.
fn loss(inputs: &[Tensor], build: &Build, weights: Option<&Tensor>) -> (Tape, Vec<Var>, Var, Tensor) {
    let mut tape = Tape::new();
    let vars: Vec<Var> = inputs.iter().map(|t| tape.leaf(t.clone())).collect();
    let out = build(&mut tape, &vars);
    let shape = tape.value(out).shape();
    let w = weights.cloned().unwrap_or_else(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(shape.0 as u64 * 31 + shape.1 as u64);
        tensor(&mut rng, shape.0, shape.1, -1.0, 1.0)
    });
    let wv = tape.constant(w.clone());
    let prod = tape.mul(out, wv).unwrap();
    let l = tape.reduce_sum(prod).unwrap();
    (tape, vars, l, w)
}

fn max_rel_error(inputs: Vec<Tensor>, build: &Build) -> f64 {
    let (tape, vars, l, w) = loss(&inputs, build, None);
    let grads = tape.gradients(l).unwrap();
    let mut worst: f64 = 0.0;
    for (k, var) in vars.iter().enumerate() {
        let analytic = grads.get(*var).map(|g| g.data().to_vec()).unwrap_or(vec![0.0; inputs[k].len()]);
        let numeric = numeric_gradient(inputs[k].data(), H, |x| {
            let mut probe = inputs.clone();
            probe[k] = Tensor::from_vec(inputs[k].rows(), inputs[k].cols(), x.to_vec()).unwrap();
            let (tape, _, l, _) = loss(&probe, build, Some(&w));
            tape.value(l).item()
        });
        for (a, n) in analytic.iter().zip(&numeric) {
            worst = worst.max((a - n).abs() / a.abs().max(n.abs()).max(1e-6));
        }
    }
    worst
}

fn check(name: &str, mut make: impl FnMut(&mut ChaCha8Rng) -> Vec<Tensor>, build: &Build) {
    for trial in 0..TRIALS {
        let mut rng = ChaCha8Rng::seed_from_u64(trial);
        let err = max_rel_error(make(&mut rng), build);
        assert!(err < 1e-4, "{name} trial {trial}: relative error {err:e}");
    }
}

/// Values bounded away from the kink at zero.
fn away_from_zero(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Tensor {
    let t = tensor(rng, rows, cols, 0.1, 2.0);
    let signs: Vec<f64> = t.data().iter().map(|v| if rng.gen_bool(0.5) { *v } else { -*v }).collect();
    Tensor::from_vec(rows, cols, signs).unwrap()
}

fn segments(rng: &mut ChaCha8Rng, rows: usize, num: usize) -> Index {
    // Every segment non-empty, remaining rows assigned at random.
    let mut ids: Vec<usize> = (0..num).collect();
    ids.extend((num..rows).map(|_| rng.gen_range(0..num)));
    Arc::from(ids)
}

#[test]
fn matmul_gradient_tight() {
    for trial in 0..TRIALS {
        let mut rng = ChaCha8Rng::seed_from_u64(trial);
        let inputs = vec![tensor(&mut rng, 4, 3, -1.0, 1.0), tensor(&mut rng, 3, 2, -1.0, 1.0)];
        let err = max_rel_error(inputs, &|t, v| t.matmul(v[0], v[1]).unwrap());
        assert!(err < 1e-6, "trial {trial}: {err:e}");
    }
}

#[test]
fn elementwise_ops() {
    check("add_bias", |r| vec![tensor(r, 5, 3, -1.0, 1.0), tensor(r, 1, 3, -1.0, 1.0)], &|t, v| {
        t.add_bias(v[0], v[1]).unwrap()
    });
    check("add", |r| vec![tensor(r, 4, 3, -1.0, 1.0), tensor(r, 4, 3, -1.0, 1.0)], &|t, v| {
        t.add(v[0], v[1]).unwrap()
    });
    check("mul", |r| vec![tensor(r, 4, 3, -1.0, 1.0), tensor(r, 4, 3, -1.0, 1.0)], &|t, v| {
        t.mul(v[0], v[1]).unwrap()
    });
    check("mul_column", |r| vec![tensor(r, 4, 3, -1.0, 1.0), tensor(r, 4, 1, -1.0, 1.0)], &|t, v| {
        t.mul(v[0], v[1]).unwrap()
    });
    check("scale", |r| vec![tensor(r, 3, 3, -1.0, 1.0)], &|t, v| t.scale(v[0], -1.7).unwrap());
    check("leaky_relu", |r| vec![away_from_zero(r, 4, 3)], &|t, v| t.leaky_relu(v[0], 0.2).unwrap());
    check("relu", |r| vec![away_from_zero(r, 4, 3)], &|t, v| t.relu(v[0]).unwrap());
    check("sigmoid", |r| vec![tensor(r, 4, 3, -4.0, 4.0)], &|t, v| t.sigmoid(v[0]).unwrap());
    check("reciprocal_1p", |r| vec![tensor(r, 4, 3, 0.0, 3.0)], &|t, v| t.reciprocal_1p(v[0]).unwrap());
    check("log", |r| vec![tensor(r, 4, 3, 0.2, 3.0)], &|t, v| t.log(v[0]).unwrap());
    check("exp", |r| vec![tensor(r, 4, 3, -2.0, 2.0)], &|t, v| t.exp(v[0]).unwrap());
}

#[test]
fn reductions_and_segments() {
    check("reduce_sum", |r| vec![tensor(r, 4, 3, -1.0, 1.0)], &|t, v| t.reduce_sum(v[0]).unwrap());
    for trial in 0..TRIALS {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + trial);
        let seg = segments(&mut rng, 9, 4);
        let gather: Index = Arc::from((0..7).map(|_| rng.gen_range(0..5)).collect::<Vec<_>>());
        let x = tensor(&mut rng, 9, 2, -2.0, 2.0);
        let pos = tensor(&mut rng, 9, 2, 0.3, 1.5);
        let table = tensor(&mut rng, 5, 3, -1.0, 1.0);
        let cases: Vec<(&str, Tensor, Box<Build>)> = vec![
            ("segment_softmax", x.clone(), Box::new({
                let s = seg.clone();
                move |t: &mut Tape, v: &[Var]| t.segment_softmax(v[0], &s).unwrap()
            })),
            ("segment_sum", x.clone(), Box::new({
                let s = seg.clone();
                move |t: &mut Tape, v: &[Var]| t.segment_sum(v[0], &s, 5).unwrap()
            })),
            ("segment_prod", pos, Box::new({
                let s = seg.clone();
                move |t: &mut Tape, v: &[Var]| t.segment_prod(v[0], &s, 5).unwrap()
            })),
            ("row_gather", table, Box::new({
                let g = gather.clone();
                move |t: &mut Tape, v: &[Var]| t.row_gather(v[0], &g).unwrap()
            })),
        ];
        for (name, input, build) in cases {
            let err = max_rel_error(vec![input], build.as_ref());
            assert!(err < 1e-4, "{name} trial {trial}: {err:e}");
        }
    }
}

#[test]
fn composed_chain() {
    // A small attention-like pipeline exercising gradient accumulation
    // through a variable used several times.
    check(
        "chain",
        |r| vec![tensor(r, 5, 3, -1.0, 1.0), tensor(r, 3, 3, -1.0, 1.0), tensor(r, 3, 1, -1.0, 1.0)],
        &|t, v| {
            let src: Index = Arc::from(vec![0, 0, 1, 2, 2, 3, 4, 4]);
            let dst: Index = Arc::from(vec![1, 2, 0, 0, 4, 4, 2, 3]);
            let hw = t.matmul(v[0], v[1]).unwrap();
            let a = t.row_gather(hw, &src).unwrap();
            let b = t.row_gather(hw, &dst).unwrap();
            let e = t.add(a, b).unwrap();
            let e = t.leaky_relu(e, 0.2).unwrap();
            let logits = t.matmul(e, v[2]).unwrap();
            let w = t.segment_softmax(logits, &src).unwrap();
            let msg = t.row_gather(v[0], &src).unwrap();
            let msg = t.mul(msg, w).unwrap();
            let agg = t.segment_sum(msg, &dst, 5).unwrap();
            t.sigmoid(agg).unwrap()
        },
    );
}

#[test]
fn adam_is_deterministic_and_converges() {
    let run = || {
        let mut store = ParamStore::new(0);
        store.insert("x", Tensor::scalar(0.0)).unwrap();
        let mut adam = Adam::new(0.1, 0.9, 0.999, 1e-8);
        let mut traj = Vec::new();
        for _ in 0..500 {
            let mut tape = Tape::new();
            let x = tape.param(&store, "x").unwrap();
            let c = tape.constant(Tensor::scalar(-3.0));
            let d = tape.add(x, c).unwrap();
            let sq = tape.mul(d, d).unwrap();
            let l = tape.reduce_sum(sq).unwrap();
            tape.backward(l, &mut store).unwrap();
            adam.step(&mut store);
            traj.push(store.get("x").unwrap().item());
        }
        traj
    };
    let a = run();
    assert_eq!(a, run());
    assert!((a.last().unwrap() - 3.0).abs() < 1e-2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn softmax_segments_are_distributions(
        values in prop::collection::vec(-30.0f64..30.0, 1..40),
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let num = rng.gen_range(1..=values.len());
        let seg = segments(&mut rng, values.len(), num);
        let mut tape = Tape::new();
        let x = tape.leaf(Tensor::column(&values));
        let y = tape.segment_softmax(x, &seg).unwrap();
        let out = tape.value(y).data();
        let mut sums = vec![0.0; num];
        for (r, &s) in seg.iter().enumerate() {
            prop_assert!(out[r] > 0.0);
            sums[s] += out[r];
        }
        prop_assert!(sums.iter().all(|s| (s - 1.0).abs() < 1e-6));
    }
}
