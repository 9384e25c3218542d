//! Power-iteration measures.

use super::ScoreVector;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone)]
pub struct Eigenvector {
    pub scores: ScoreVector,
    pub converged: bool,
    pub iterations: usize,
}

/// Eigenvector centrality by power iteration from the all-ones vector.
///
/// Iterates with `A + I`, which has the same eigenvectors as `A` but a
/// strictly dominant top eigenvalue, so bipartite graphs do not oscillate.
/// Each iterate is L2-normalized; iteration stops once the max-norm change
/// drops below `tol`. Disconnected graphs are not normalized per component.
pub fn eigenvector(g: &Graph, max_iter: usize, tol: f64) -> Eigenvector {
    let n = g.num_nodes();
    if n == 0 {
        return Eigenvector {
            scores: ScoreVector::new(Vec::new()),
            converged: true,
            iterations: 0,
        };
    }
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut next = vec![0.0; n];
    for iter in 1..=max_iter {
        for (i, out) in next.iter_mut().enumerate() {
            *out = x[i] + g.neighbors(i).iter().map(|&j| x[j]).sum::<f64>();
        }
        let norm = next.iter().map(|v| v * v).sum::<f64>().sqrt();
        for v in next.iter_mut() {
            *v /= norm;
        }
        let change = x
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        std::mem::swap(&mut x, &mut next);
        if change < tol {
            return Eigenvector {
                scores: ScoreVector::new(x),
                converged: true,
                iterations: iter,
            };
        }
    }
    Eigenvector {
        scores: ScoreVector::new(x),
        converged: false,
        iterations: max_iter,
    }
}

/// PageRank with uniform teleport; isolated nodes spread their mass
/// uniformly. Stops when the L1 change falls below `tol`.
pub fn pagerank(g: &Graph, damping: f64, max_iter: usize, tol: f64) -> Result<ScoreVector> {
    if !(damping > 0.0 && damping < 1.0) {
        return Err(Error::invalid(format!("damping must lie in (0, 1), got {damping}")));
    }
    let n = g.num_nodes();
    if n == 0 {
        return Ok(ScoreVector::new(Vec::new()));
    }
    let nf = n as f64;
    let mut rank = vec![1.0 / nf; n];
    let mut next = vec![0.0; n];
    for _ in 0..max_iter {
        let dangling: f64 = (0..n).filter(|&i| g.degree(i) == 0).map(|i| rank[i]).sum();
        let base = (1.0 - damping) / nf + damping * dangling / nf;
        for (i, out) in next.iter_mut().enumerate() {
            let inflow: f64 = g
                .neighbors(i)
                .iter()
                .map(|&j| rank[j] / g.degree(j) as f64)
                .sum();
            *out = base + damping * inflow;
        }
        let change: f64 = rank.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut rank, &mut next);
        if change < tol {
            break;
        }
    }
    Ok(ScoreVector::new(rank))
}
