use std::cmp::Ordering;

use rayon::prelude::*;

use crate::autograd::Tensor;
use crate::graph::Graph;

/// Cosine similarity of rows `i` and `j`; 0 when either row is all zero.
pub fn role_similarity(roles: &Tensor, i: usize, j: usize) -> f64 {
    cosine(roles.row(i), roles.row(j))
}

fn cosine(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        0.0
    } else {
        dot / (na * nb)
    }
}

/// Graph linking every node to its `k` most role-similar nodes.
#[derive(Debug, Clone)]
pub struct RoleGraph {
    pub graph: Graph,
    pub k: usize,
}

/// Each node proposes edges to its `min(k, N - 1)` most similar other
/// nodes (ties to the smaller id); the union of all proposals, made
/// undirected, is the role graph.
pub fn build_role_graph(roles: &Tensor, k: usize) -> RoleGraph {
    let n = roles.rows();
    let take = k.min(n.saturating_sub(1));
    let proposals: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let row = roles.row(i);
            let mut cands: Vec<(f64, usize)> = (0..n)
                .filter(|&j| j != i)
                .map(|j| (cosine(row, roles.row(j)), j))
                .collect();
            let by_rank = |a: &(f64, usize), b: &(f64, usize)| match b.0.total_cmp(&a.0) {
                Ordering::Equal => a.1.cmp(&b.1),
                other => other,
            };
            if take < cands.len() && take > 0 {
                cands.select_nth_unstable_by(take - 1, by_rank);
            }
            cands.truncate(take);
            cands.into_iter().map(|(_, j)| j).collect()
        })
        .collect();
    let edges = proposals
        .iter()
        .enumerate()
        .flat_map(|(i, js)| js.iter().map(move |&j| (i, j)));
    RoleGraph {
        graph: Graph::from_edges(n, edges).expect("ids in range"),
        k,
    }
}
