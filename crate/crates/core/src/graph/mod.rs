//! Undirected simple graphs in compressed adjacency form.

mod generators;
mod io;
mod union_find;

use std::collections::VecDeque;

pub use generators::{barabasi_albert, erdos_renyi, powerlaw_cluster, watts_strogatz};
pub use io::{load_edge_list, parse_edge_list, write_edge_list, LabeledGraph};
pub use union_find::UnionFind;

use crate::error::{Error, Result};

/// Immutable undirected simple graph over dense node ids `0..n`.
///
/// Neighbor lists are sorted and stored back to back; `offsets[i]..offsets[i + 1]`
/// indexes the neighbors of node `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<usize>,
    num_edges: usize,
}

/// An induced subgraph together with the id each of its nodes had in the parent.
#[derive(Debug, Clone)]
pub struct Subgraph {
    pub graph: Graph,
    pub original_ids: Vec<usize>,
}

impl Graph {
    /// Builds a graph from an edge iterator. Self-loops are dropped and
    /// parallel edges collapsed; an endpoint `>= num_nodes` is an error.
    pub fn from_edges<I>(num_nodes: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); num_nodes];
        for (u, v) in edges {
            if u >= num_nodes || v >= num_nodes {
                return Err(Error::invalid(format!(
                    "edge ({u}, {v}) out of range for {num_nodes} nodes"
                )));
            }
            if u == v {
                continue;
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        Ok(Self::from_adjacency(adjacency))
    }

    fn from_adjacency(mut adjacency: Vec<Vec<usize>>) -> Self {
        let mut offsets = Vec::with_capacity(adjacency.len() + 1);
        offsets.push(0);
        let mut neighbors = Vec::new();
        for list in adjacency.iter_mut() {
            list.sort_unstable();
            list.dedup();
            neighbors.extend_from_slice(list);
            offsets.push(neighbors.len());
        }
        let num_edges = neighbors.len() / 2;
        Graph {
            offsets,
            neighbors,
            num_edges,
        }
    }

    pub fn empty(num_nodes: usize) -> Self {
        Graph {
            offsets: vec![0; num_nodes + 1],
            neighbors: Vec::new(),
            num_edges: 0,
        }
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("ids in range")
    }

    pub fn cycle(n: usize) -> Self {
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("ids in range")
    }

    /// Star with node 0 at the center and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Self::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("ids in range")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        Self::from_edges(n, edges).expect("ids in range")
    }

    #[inline]
    pub fn num_nodes(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    #[inline]
    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.neighbors[self.offsets[node]..self.offsets[node + 1]]
    }

    #[inline]
    pub fn degree(&self, node: usize) -> usize {
        self.offsets[node + 1] - self.offsets[node]
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.num_nodes()).map(|i| self.degree(i)).collect()
    }

    pub fn average_degree(&self) -> f64 {
        if self.num_nodes() == 0 {
            0.0
        } else {
            2.0 * self.num_edges as f64 / self.num_nodes() as f64
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Undirected edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.num_nodes()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Both orientations of every edge, grouped by source node.
    pub fn arcs(&self) -> (Vec<usize>, Vec<usize>) {
        let mut src = Vec::with_capacity(self.neighbors.len());
        for u in 0..self.num_nodes() {
            src.extend(std::iter::repeat_n(u, self.degree(u)));
        }
        (src, self.neighbors.clone())
    }

    /// Checks every structural invariant: sorted, loop-free, duplicate-free
    /// and symmetric adjacency, with a consistent edge count.
    pub fn validate(&self) -> Result<()> {
        let n = self.num_nodes();
        if self.offsets[0] != 0 || *self.offsets.last().unwrap() != self.neighbors.len() {
            return Err(Error::invalid("offsets do not span the neighbor array"));
        }
        if self.neighbors.len() != 2 * self.num_edges {
            return Err(Error::invalid("neighbor count is not twice the edge count"));
        }
        for u in 0..n {
            let list = self.neighbors(u);
            for w in list.windows(2) {
                if w[0] >= w[1] {
                    return Err(Error::invalid(format!("node {u}: unsorted or duplicate neighbor")));
                }
            }
            for &v in list {
                if v >= n {
                    return Err(Error::invalid(format!("node {u}: neighbor {v} out of range")));
                }
                if v == u {
                    return Err(Error::invalid(format!("node {u}: self-loop")));
                }
                if !self.has_edge(v, u) {
                    return Err(Error::invalid(format!("edge {u}-{v} is not symmetric")));
                }
            }
        }
        Ok(())
    }

    /// Induced subgraph on the nodes not in `victims`; survivors keep their
    /// relative order.
    pub fn remove_nodes(&self, victims: &[usize]) -> Subgraph {
        let n = self.num_nodes();
        let mut removed = vec![false; n];
        for &v in victims {
            removed[v] = true;
        }
        let mut new_id = vec![usize::MAX; n];
        let mut original_ids = Vec::with_capacity(n);
        for u in (0..n).filter(|&u| !removed[u]) {
            new_id[u] = original_ids.len();
            original_ids.push(u);
        }
        let adjacency = original_ids
            .iter()
            .map(|&u| {
                self.neighbors(u)
                    .iter()
                    .filter(|&&v| !removed[v])
                    .map(|&v| new_id[v])
                    .collect()
            })
            .collect();
        Subgraph {
            graph: Self::from_adjacency(adjacency),
            original_ids,
        }
    }

    /// Relabels node `i` as `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.num_nodes(), "permutation length");
        let mut adjacency = vec![Vec::new(); self.num_nodes()];
        for u in 0..self.num_nodes() {
            adjacency[perm[u]] = self.neighbors(u).iter().map(|&v| perm[v]).collect();
        }
        Self::from_adjacency(adjacency)
    }

    /// Size of the largest connected component (0 for the empty graph).
    pub fn gcc_size(&self) -> usize {
        let mut uf = UnionFind::new(self.num_nodes());
        for (u, v) in self.edges() {
            uf.union(u, v);
        }
        uf.max_component()
    }

    /// Component label per node, numbered in order of first appearance, via BFS.
    pub fn components(&self) -> Vec<usize> {
        let n = self.num_nodes();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &v in self.neighbors(u) {
                    if label[v] == usize::MAX {
                        label[v] = next;
                        queue.push_back(v);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// Largest component size computed by breadth-first search.
    pub fn gcc_size_bfs(&self) -> usize {
        let labels = self.components();
        let mut sizes = vec![0usize; self.num_nodes()];
        for l in labels {
            sizes[l] += 1;
        }
        sizes.into_iter().max().unwrap_or(0)
    }

    /// Unweighted shortest-path distances from `source`; `usize::MAX` marks
    /// unreachable nodes.
    pub fn bfs_distances(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.num_nodes()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &v in self.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }
}
