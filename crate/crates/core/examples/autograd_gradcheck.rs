//! The reverse-mode tape on its own: a tiny message-passing expression,
//! its gradients, and a finite-difference comparison.
//!
//! ```text
//! cargo run --release --example autograd_gradcheck
//! ```

use std::sync::Arc;

use dismantler::autograd::{Index, Tape, Tensor};
use dismantler::Result;

/// `sum(sigmoid(segment_sum(softmax_by_src(x w) * x[src], dst)))` on a
/// 4-cycle.
fn build(tape: &mut Tape, x: Tensor, w: Tensor) -> Result<(dismantler::autograd::Var, dismantler::autograd::Var, dismantler::autograd::Var)> {
    let src: Index = Arc::from(vec![0, 0, 1, 1, 2, 2, 3, 3]);
    let dst: Index = Arc::from(vec![1, 3, 0, 2, 1, 3, 0, 2]);
    let x = tape.leaf(x);
    let w = tape.leaf(w);
    let logits = tape.matmul(x, w)?;
    let logits = tape.row_gather(logits, &dst)?;
    let att = tape.segment_softmax(logits, &src)?;
    let msg = tape.row_gather(x, &src)?;
    let msg = tape.mul(msg, att)?;
    let agg = tape.segment_sum(msg, &dst, 4)?;
    let out = tape.sigmoid(agg)?;
    let loss = tape.reduce_sum(out)?;
    Ok((x, w, loss))
}

fn main() -> Result<()> {
    let x = Tensor::from_vec(4, 2, vec![0.3, -0.2, 1.1, 0.4, -0.7, 0.9, 0.2, 0.5])?;
    let w = Tensor::from_vec(2, 1, vec![0.8, -1.3])?;

    let mut tape = Tape::new();
    let (xv, wv, loss) = build(&mut tape, x.clone(), w.clone())?;
    let grads = tape.gradients(loss)?;
    println!("loss {:.6} over {} tape nodes", tape.value(loss).item(), tape.len());

    let h = 1e-5;
    let value = |x: &Tensor, w: &Tensor| -> Result<f64> {
        let mut t = Tape::new();
        let (_, _, l) = build(&mut t, x.clone(), w.clone())?;
        Ok(t.value(l).item())
    };
    for (name, var, base, is_x) in [("x", xv, &x, true), ("w", wv, &w, false)] {
        let analytic = grads.get(var).expect("leaf gradient");
        let mut worst: f64 = 0.0;
        for i in 0..base.len() {
            let mut up = base.clone();
            let mut down = base.clone();
            up.data_mut()[i] += h;
            down.data_mut()[i] -= h;
            let (fu, fd) = if is_x {
                (value(&up, &w)?, value(&down, &w)?)
            } else {
                (value(&x, &up)?, value(&x, &down)?)
            };
            let numeric = (fu - fd) / (2.0 * h);
            let a = analytic.data()[i];
            worst = worst.max((a - numeric).abs() / a.abs().max(numeric.abs()).max(1e-8));
        }
        println!("d loss / d {name}: {:?}", analytic.data());
        println!("  worst relative error vs central differences: {worst:.2e}");
    }
    Ok(())
}
