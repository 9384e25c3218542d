//! Seeded synthetic network models.
//!
//! Every generator draws from a `ChaCha8Rng` seeded with the caller's 64-bit
//! seed, so output is reproducible across platforms and releases.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::error::{Error, Result};

/// Erdős–Rényi `G(n, p)` with `p = avg_degree / (n - 1)`.
pub fn erdos_renyi(n: usize, avg_degree: f64, seed: u64) -> Result<Graph> {
    if n < 2 {
        return Err(Error::invalid(format!("ER needs n >= 2, got {n}")));
    }
    if !(avg_degree > 0.0 && avg_degree <= (n - 1) as f64) {
        return Err(Error::invalid(format!(
            "ER average degree must lie in (0, {}], got {avg_degree}",
            n - 1
        )));
    }
    let p = avg_degree / (n - 1) as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

fn check_attachment(model: &str, n: usize, m: usize) -> Result<()> {
    if m < 1 || m >= n {
        return Err(Error::invalid(format!("{model} needs 1 <= m < n, got m={m}, n={n}")));
    }
    Ok(())
}

fn check_probability(model: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("{model} probability must lie in [0, 1], got {p}")));
    }
    Ok(())
}

/// Degree-proportional pick from the endpoint multiset, skipping nodes in `taken`.
fn preferential_pick(rng: &mut ChaCha8Rng, endpoints: &[usize], taken: &[usize]) -> usize {
    loop {
        let t = endpoints[rng.gen_range(0..endpoints.len())];
        if !taken.contains(&t) {
            return t;
        }
    }
}

/// Seed star on nodes `0..=m` (center 0), shared by BA and PLC.
fn seed_star(m: usize, edges: &mut Vec<(usize, usize)>, endpoints: &mut Vec<usize>) {
    for leaf in 1..=m {
        edges.push((0, leaf));
        endpoints.extend([0, leaf]);
    }
}

/// Barabási–Albert preferential attachment.
///
/// Starts from a star on `m + 1` nodes; every later node attaches to `m`
/// distinct existing nodes chosen with probability proportional to degree.
/// The result has exactly `m * (n - m)` edges.
pub fn barabasi_albert(n: usize, m: usize, seed: u64) -> Result<Graph> {
    powerlaw_cluster(n, m, 0.0, seed).map_err(|e| match e {
        Error::InvalidParameter(msg) => Error::InvalidParameter(msg.replacen("PLC", "BA", 1)),
        other => other,
    })
}

/// Holme–Kim powerlaw-cluster model: preferential attachment where each
/// edge after the first is, with probability `p`, a triangle-closing edge to
/// a random neighbor of the last preferentially chosen target.
///
/// With `p = 0` no triangle coin is drawn, so the output equals
/// [`barabasi_albert`] for the same seed.
pub fn powerlaw_cluster(n: usize, m: usize, p: f64, seed: u64) -> Result<Graph> {
    check_attachment("PLC", n, m)?;
    check_probability("PLC", p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(m * (n - m));
    let mut endpoints = Vec::with_capacity(2 * m * (n - m));
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
    seed_star(m, &mut edges, &mut endpoints);
    for leaf in 1..=m {
        adjacency[0].push(leaf);
        adjacency[leaf].push(0);
    }

    let mut targets = Vec::with_capacity(m);
    for v in m + 1..n {
        targets.clear();
        let mut anchor = preferential_pick(&mut rng, &endpoints, &targets);
        targets.push(anchor);
        while targets.len() < m {
            if p > 0.0 && rng.gen::<f64>() < p {
                let candidates: Vec<usize> = adjacency[anchor]
                    .iter()
                    .copied()
                    .filter(|w| !targets.contains(w))
                    .collect();
                if !candidates.is_empty() {
                    targets.push(candidates[rng.gen_range(0..candidates.len())]);
                    continue;
                }
            }
            anchor = preferential_pick(&mut rng, &endpoints, &targets);
            targets.push(anchor);
        }
        for &t in &targets {
            edges.push((v, t));
            endpoints.extend([v, t]);
            adjacency[v].push(t);
            adjacency[t].push(v);
        }
    }
    Graph::from_edges(n, edges)
}

/// Watts–Strogatz small world. `m` is the total ring-lattice degree (`m / 2`
/// neighbors per side); each lattice edge `(i, i + j)` is rewired to
/// `(i, w)` with probability `p`, with `w` drawn uniformly among nodes that
/// create neither a self-loop nor a duplicate.
pub fn watts_strogatz(n: usize, m: usize, p: f64, seed: u64) -> Result<Graph> {
    if n < 1 {
        return Err(Error::invalid("WS needs n >= 1"));
    }
    if !m.is_multiple_of(2) || m >= n {
        return Err(Error::invalid(format!("WS needs an even lattice degree m < n, got m={m}, n={n}")));
    }
    check_probability("WS", p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adjacency: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    let half = m / 2;
    for i in 0..n {
        for j in 1..=half {
            let k = (i + j) % n;
            adjacency[i].insert(k);
            adjacency[k].insert(i);
        }
    }
    for j in 1..=half {
        for i in 0..n {
            let k = (i + j) % n;
            if rng.gen::<f64>() >= p {
                continue;
            }
            if !adjacency[i].contains(&k) || adjacency[i].len() >= n - 1 {
                continue;
            }
            let w = loop {
                let w = rng.gen_range(0..n);
                if w != i && !adjacency[i].contains(&w) {
                    break w;
                }
            };
            adjacency[i].remove(&k);
            adjacency[k].remove(&i);
            adjacency[i].insert(w);
            adjacency[w].insert(i);
        }
    }
    let edges = adjacency
        .iter()
        .enumerate()
        .flat_map(|(u, set)| set.iter().filter(move |&&v| u < v).map(move |&v| (u, v)));
    Graph::from_edges(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn er_two_nodes_forced_edge() {
        let g = erdos_renyi(2, 1.0, 3).unwrap();
        assert_eq!(g.num_edges(), 1);
    }

    #[test]
    fn er_rejects_bad_parameters() {
        assert!(erdos_renyi(1, 0.5, 0).is_err());
        assert!(erdos_renyi(10, 0.0, 0).is_err());
        assert!(erdos_renyi(10, 9.5, 0).is_err());
    }

    #[test]
    fn er_is_deterministic() {
        assert_eq!(erdos_renyi(300, 6.0, 11).unwrap(), erdos_renyi(300, 6.0, 11).unwrap());
        assert_ne!(erdos_renyi(300, 6.0, 11).unwrap(), erdos_renyi(300, 6.0, 12).unwrap());
    }

    #[test]
    fn er_mean_degree_concentrates() {
        for seed in 0..20 {
            let g = erdos_renyi(1000, 6.0, seed).unwrap();
            let k = g.average_degree();
            assert!((5.4..=6.6).contains(&k), "seed {seed}: <k> = {k}");
        }
    }

    #[test]
    fn ba_edge_count() {
        let g = barabasi_albert(1000, 4, 7).unwrap();
        assert_eq!(g.num_edges(), 4 * 996);
        assert!((3984..=3990).contains(&g.num_edges()));
        g.validate().unwrap();
        assert!(g.degrees().into_iter().all(|d| d >= 1));
    }

    #[test]
    fn ba_rejects_bad_m() {
        assert!(barabasi_albert(5, 0, 0).is_err());
        assert!(barabasi_albert(5, 5, 0).is_err());
        let msg = barabasi_albert(5, 5, 0).unwrap_err().to_string();
        assert!(msg.contains("BA"), "{msg}");
    }

    #[test]
    fn ws_without_rewiring_is_regular() {
        let g = watts_strogatz(10, 4, 0.0, 1).unwrap();
        assert_eq!(g.num_edges(), 20);
        assert!(g.degrees().into_iter().all(|d| d == 4));
    }

    #[test]
    fn ws_rewiring_keeps_edge_count() {
        let g = watts_strogatz(200, 8, 0.8, 5).unwrap();
        assert_eq!(g.num_edges(), 800);
        g.validate().unwrap();
    }

    #[test]
    fn ws_rejects_odd_degree() {
        assert!(watts_strogatz(10, 3, 0.1, 0).is_err());
        assert!(watts_strogatz(10, 4, 1.5, 0).is_err());
    }

    #[test]
    fn plc_without_triangles_is_ba() {
        for seed in 0..5 {
            assert_eq!(
                powerlaw_cluster(1000, 3, 0.0, seed).unwrap(),
                barabasi_albert(1000, 3, seed).unwrap()
            );
        }
    }

    #[test]
    fn plc_closes_triangles() {
        let g = powerlaw_cluster(500, 3, 0.9, 2).unwrap();
        assert_eq!(g.num_edges(), 3 * 497);
        let ba = barabasi_albert(500, 3, 2).unwrap();
        assert!(triangles(&g) > 3 * triangles(&ba));
    }

    fn triangles(g: &Graph) -> usize {
        g.edges()
            .map(|(u, v)| g.neighbors(u).iter().filter(|w| g.has_edge(v, **w)).count())
            .sum::<usize>()
            / 3
    }
}
