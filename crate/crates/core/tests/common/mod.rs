//! Independent reference implementations used as test oracles. Everything
//! here works on dense matrices or plain BFS and shares no code with the
//! library beyond `Graph` accessors.
#![allow(dead_code)]

use std::collections::VecDeque;

use dismantler::Graph;
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const INF: usize = usize::MAX;

/// G(n, p) with `n` and `p` drawn from the seed; isolated nodes allowed.
pub fn random_graph(seed: u64, max_n: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_n);
    let p: f64 = rng.gen_range(0.05..0.6);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn random_permutation(n: usize, seed: u64) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    perm
}

pub fn adjacency(g: &Graph) -> DMatrix<f64> {
    let n = g.num_nodes();
    let mut a = DMatrix::zeros(n, n);
    for (u, v) in g.edges() {
        a[(u, v)] = 1.0;
        a[(v, u)] = 1.0;
    }
    a
}

/// All-pairs hop distances by Floyd–Warshall.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.num_nodes();
    let mut d = vec![vec![INF; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for (u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            if d[i][k] == INF {
                continue;
            }
            for j in 0..n {
                if d[k][j] != INF && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Number of shortest paths between every pair, counted by dynamic
/// programming over the distance matrix: sigma(s, t) sums sigma(s, u) over
/// neighbours u of t one hop closer to s.
pub fn path_counts(g: &Graph, d: &[Vec<usize>]) -> Vec<Vec<f64>> {
    let n = g.num_nodes();
    let mut sigma = vec![vec![0.0; n]; n];
    for s in 0..n {
        let mut order: Vec<usize> = (0..n).filter(|&t| d[s][t] != INF).collect();
        order.sort_by_key(|&t| d[s][t]);
        sigma[s][s] = 1.0;
        for &t in &order[1..] {
            sigma[s][t] = g
                .neighbors(t)
                .iter()
                .filter(|&&u| d[s][u] != INF && d[s][u] + 1 == d[s][t])
                .map(|&u| sigma[s][u])
                .sum();
        }
    }
    sigma
}

/// Betweenness from the pair definition: for every unordered pair (s, t),
/// node v gains sigma(s,v) sigma(v,t) / sigma(s,t) when it lies on a
/// shortest s-t path.
pub fn brute_force_betweenness(g: &Graph) -> Vec<f64> {
    let n = g.num_nodes();
    let d = floyd_warshall(g);
    let sigma = path_counts(g, &d);
    let mut bc = vec![0.0; n];
    for s in 0..n {
        for t in s + 1..n {
            if d[s][t] == INF {
                continue;
            }
            for v in 0..n {
                if v == s || v == t || d[s][v] == INF || d[v][t] == INF {
                    continue;
                }
                if d[s][v] + d[v][t] == d[s][t] {
                    bc[v] += sigma[s][v] * sigma[v][t] / sigma[s][t];
                }
            }
        }
    }
    bc
}

pub fn brute_force_closeness(g: &Graph) -> Vec<f64> {
    let d = floyd_warshall(g);
    d.iter()
        .map(|row| {
            let reach: Vec<usize> = row.iter().copied().filter(|&x| x != INF && x > 0).collect();
            let total: usize = reach.iter().sum();
            if total == 0 {
                0.0
            } else {
                reach.len() as f64 / total as f64
            }
        })
        .collect()
}

pub fn brute_force_harmonic(g: &Graph) -> Vec<f64> {
    floyd_warshall(g)
        .iter()
        .map(|row| row.iter().filter(|&&x| x != INF && x > 0).map(|&x| 1.0 / x as f64).sum())
        .collect()
}

/// Solves `(I - d M) x = (1 - d) / N` where `M` is the column-stochastic
/// walk matrix with isolated nodes jumping uniformly.
pub fn dense_pagerank(g: &Graph, damping: f64) -> Vec<f64> {
    let n = g.num_nodes();
    let nf = n as f64;
    let mut m = DMatrix::zeros(n, n);
    for j in 0..n {
        let deg = g.degree(j);
        for i in 0..n {
            m[(i, j)] = if deg == 0 {
                1.0 / nf
            } else if g.has_edge(i, j) {
                1.0 / deg as f64
            } else {
                0.0
            };
        }
    }
    let lhs = DMatrix::identity(n, n) - m * damping;
    let rhs = DVector::from_element(n, (1.0 - damping) / nf);
    lhs.lu().solve(&rhs).unwrap().iter().copied().collect()
}

/// The limit of power iteration on `A + I` started from all-ones: the
/// projection of the start vector onto the top eigenspace, L2-normalized.
pub fn dense_eigenvector(g: &Graph) -> Vec<f64> {
    let n = g.num_nodes();
    let eig = SymmetricEigen::new(adjacency(g) + DMatrix::identity(n, n));
    let top = eig.eigenvalues.max();
    let ones = DVector::from_element(n, 1.0);
    let mut x = DVector::zeros(n);
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        if (top - lambda).abs() < 1e-9 {
            let v = eig.eigenvectors.column(k);
            x += v * v.dot(&ones);
        }
    }
    let norm = x.norm();
    x.iter().map(|v| v / norm).collect()
}

/// Largest component by BFS over the nodes not in `removed`.
pub fn bfs_gcc(g: &Graph, removed: &[bool]) -> usize {
    let n = g.num_nodes();
    let mut seen = removed.to_vec();
    let mut best = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut size = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            size += 1;
            for &v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        best = best.max(size);
    }
    best
}

/// GCC size after removing every prefix of `ranking`, recomputed from
/// scratch at each step: entry `t` is the size after `t` removals.
pub fn naive_trajectory(g: &Graph, ranking: &[usize]) -> Vec<usize> {
    let mut removed = vec![false; g.num_nodes()];
    let mut out = vec![bfs_gcc(g, &removed)];
    for &v in ranking {
        removed[v] = true;
        out.push(bfs_gcc(g, &removed));
    }
    out
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-8)
}

/// Central difference of `f` at `x` along every coordinate.
pub fn numeric_gradient(x: &[f64], h: f64, mut f: impl FnMut(&[f64]) -> f64) -> Vec<f64> {
    let mut probe = x.to_vec();
    (0..x.len())
        .map(|i| {
            probe[i] = x[i] + h;
            let up = f(&probe);
            probe[i] = x[i] - h;
            let down = f(&probe);
            probe[i] = x[i];
            (up - down) / (2.0 * h)
        })
        .collect()
}
