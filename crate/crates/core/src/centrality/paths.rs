//! Shortest-path based measures.

use std::collections::VecDeque;

use rayon::prelude::*;

use super::ScoreVector;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Sources per work unit for Brandes. Partial sums are reduced in chunk
/// order, so the result does not depend on the thread schedule.
const BRANDES_CHUNK: usize = 32;

/// Unnormalized betweenness (Brandes), each unordered pair counted once.
pub fn betweenness(g: &Graph) -> ScoreVector {
    let n = g.num_nodes();
    let sources: Vec<usize> = (0..n).collect();
    let partials: Vec<Vec<f64>> = sources
        .par_chunks(BRANDES_CHUNK)
        .map(|chunk| {
            let mut acc = vec![0.0; n];
            let mut state = BrandesState::new(n);
            for &s in chunk {
                state.accumulate(g, s, &mut acc);
            }
            acc
        })
        .collect();
    let mut total = vec![0.0; n];
    for part in partials {
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
    }
    for t in total.iter_mut() {
        *t /= 2.0;
    }
    ScoreVector::new(total)
}

struct BrandesState {
    sigma: Vec<f64>,
    dist: Vec<usize>,
    delta: Vec<f64>,
    stack: Vec<usize>,
    queue: VecDeque<usize>,
}

impl BrandesState {
    fn new(n: usize) -> Self {
        BrandesState {
            sigma: vec![0.0; n],
            dist: vec![usize::MAX; n],
            delta: vec![0.0; n],
            stack: Vec::with_capacity(n),
            queue: VecDeque::with_capacity(n),
        }
    }

    fn accumulate(&mut self, g: &Graph, s: usize, acc: &mut [f64]) {
        self.sigma.fill(0.0);
        self.dist.fill(usize::MAX);
        self.delta.fill(0.0);
        self.stack.clear();

        self.sigma[s] = 1.0;
        self.dist[s] = 0;
        self.queue.push_back(s);
        while let Some(v) = self.queue.pop_front() {
            self.stack.push(v);
            for &w in g.neighbors(v) {
                if self.dist[w] == usize::MAX {
                    self.dist[w] = self.dist[v] + 1;
                    self.queue.push_back(w);
                }
                if self.dist[w] == self.dist[v] + 1 {
                    self.sigma[w] += self.sigma[v];
                }
            }
        }
        // Predecessors are the neighbors one level closer to s.
        while let Some(w) = self.stack.pop() {
            let coeff = (1.0 + self.delta[w]) / self.sigma[w];
            for &v in g.neighbors(w) {
                if self.dist[v] != usize::MAX && self.dist[v] + 1 == self.dist[w] {
                    self.delta[v] += self.sigma[v] * coeff;
                }
            }
            if w != s {
                acc[w] += self.delta[w];
            }
        }
    }
}

/// Distances from every source, evaluated in parallel and folded per node.
fn per_source<F>(g: &Graph, f: F) -> Vec<f64>
where
    F: Fn(usize, &[usize]) -> f64 + Sync,
{
    (0..g.num_nodes())
        .into_par_iter()
        .map(|s| f(s, &g.bfs_distances(s)))
        .collect()
}

/// `(|C| - 1) / sum of distances` within the node's own component; 0 for
/// isolated nodes.
pub fn closeness(g: &Graph) -> ScoreVector {
    ScoreVector::new(per_source(g, |_, dist| {
        let (reached, total) = dist
            .iter()
            .filter(|&&d| d != usize::MAX)
            .fold((0usize, 0usize), |(c, t), &d| (c + 1, t + d));
        if total == 0 {
            0.0
        } else {
            (reached - 1) as f64 / total as f64
        }
    }))
}

/// Sum of reciprocal distances to every other node (`1/inf = 0`).
pub fn harmonic(g: &Graph) -> ScoreVector {
    ScoreVector::new(per_source(g, |_, dist| {
        dist.iter()
            .filter(|&&d| d != usize::MAX && d > 0)
            .map(|&d| 1.0 / d as f64)
            .sum()
    }))
}

/// Collective influence `(k_i - 1) * sum over the radius-ell frontier of (k_j - 1)`.
pub fn collective_influence(g: &Graph, radius: usize) -> Result<ScoreVector> {
    if radius == 0 {
        return Err(Error::invalid("collective influence radius must be >= 1"));
    }
    let n = g.num_nodes();
    let scores = (0..n)
        .into_par_iter()
        .map_init(
            || (vec![usize::MAX; n], Vec::new(), Vec::new()),
            |(dist, frontier, next), i| {
                let ki = g.degree(i);
                if ki <= 1 {
                    return 0.0;
                }
                frontier.clear();
                frontier.push(i);
                dist[i] = 0;
                let mut touched = vec![i];
                for level in 1..=radius {
                    next.clear();
                    for &u in frontier.iter() {
                        for &v in g.neighbors(u) {
                            if dist[v] == usize::MAX {
                                dist[v] = level;
                                next.push(v);
                                touched.push(v);
                            }
                        }
                    }
                    std::mem::swap(frontier, next);
                    if frontier.is_empty() {
                        break;
                    }
                }
                let boundary: usize = frontier
                    .iter()
                    .filter(|&&j| dist[j] == radius)
                    .map(|&j| g.degree(j) - 1)
                    .sum();
                for t in touched {
                    dist[t] = usize::MAX;
                }
                ((ki - 1) * boundary) as f64
            },
        )
        .collect();
    Ok(ScoreVector::new(scores))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn betweenness_path_and_star() {
        assert_eq!(betweenness(&Graph::path(3)).values(), &[0.0, 1.0, 0.0]);
        let star = betweenness(&Graph::star(4));
        assert_eq!(star.values()[0], 6.0);
        assert!(star.values()[1..].iter().all(|&v| v == 0.0));
    }

    #[test]
    fn betweenness_splits_parallel_paths() {
        // Square 0-1-2-3-0: each opposite pair has two shortest paths.
        let g = Graph::cycle(4);
        assert_eq!(betweenness(&g).values(), &[0.5, 0.5, 0.5, 0.5]);
    }

    #[test]
    fn closeness_path() {
        let c = closeness(&Graph::path(3));
        assert_eq!(c.values()[1], 1.0);
        assert!((c.values()[0] - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn closeness_isolated_is_zero() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(closeness(&g).values(), &[1.0, 1.0, 0.0]);
    }

    #[test]
    fn harmonic_disjoint_edges() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(harmonic(&g).values(), &[1.0; 4]);
    }

    #[test]
    fn ci_examples() {
        let ci = collective_influence(&Graph::path(5), 1).unwrap();
        assert_eq!(ci.values()[2], 2.0);
        assert_eq!(ci.values()[0], 0.0);
        let star = collective_influence(&Graph::star(4), 2).unwrap();
        assert_eq!(star.values()[0], 0.0);
        for ell in 1..4 {
            let ci = collective_influence(&Graph::path(6), ell).unwrap();
            assert_eq!(ci.values()[0], 0.0);
            assert_eq!(ci.values()[5], 0.0);
        }
    }

    #[test]
    fn ci_radius_two_on_path() {
        // Node 2 of 0-1-2-3-4-5: frontier at distance 2 is {0, 4}, degrees 1 and 2.
        let ci = collective_influence(&Graph::path(6), 2).unwrap();
        assert_eq!(ci.values()[2], 1.0);
    }

    #[test]
    fn ci_rejects_zero_radius() {
        assert!(collective_influence(&Graph::path(3), 0).is_err());
    }
}
