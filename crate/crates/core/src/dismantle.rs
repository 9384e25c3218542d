//! One-pass dismantling: attack sets from score rankings, GCC trajectories
//! and NGCC curves.

use std::io::Write;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::centrality::ScoreVector;
use crate::error::{Error, Result};
use crate::graph::{Graph, UnionFind};

/// Largest-component size after removing each prefix of `ranking`:
/// entry `t` is the GCC size once `ranking[..t]` is gone, for `t = 0..=N`.
///
/// Nodes are re-inserted from the back of the ranking into a union-find,
/// so the whole trajectory costs one pass over the edges.
pub fn gcc_trajectory(g: &Graph, ranking: &[usize]) -> Result<Vec<usize>> {
    let n = g.num_nodes();
    check_ranking(ranking, n)?;
    let mut present = vec![false; n];
    let mut uf = UnionFind::new(n);
    let mut out = vec![0; n + 1];
    for t in (0..n).rev() {
        let v = ranking[t];
        present[v] = true;
        for &u in g.neighbors(v) {
            if present[u] {
                uf.union(u, v);
            }
        }
        out[t] = uf.max_component();
    }
    Ok(out)
}

fn check_ranking(ranking: &[usize], n: usize) -> Result<()> {
    if ranking.len() != n {
        return Err(Error::invalid(format!("ranking has {} entries for {n} nodes", ranking.len())));
    }
    let mut seen = vec![false; n];
    for &v in ranking {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(Error::invalid(format!("ranking is not a permutation (node {v})")));
        }
    }
    Ok(())
}

fn check_theta(theta: f64) -> Result<()> {
    if theta > 0.0 && theta <= 1.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("theta {theta} outside (0, 1]")))
    }
}

/// Smallest `K` with `trajectory[K] / N <= theta`.
fn first_crossing(trajectory: &[usize], n: usize, theta: f64) -> usize {
    trajectory
        .iter()
        .position(|&s| s as f64 <= theta * n as f64)
        .expect("the empty graph meets every positive threshold")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DismantleReport {
    /// Nodes by descending score, ties by ascending id.
    pub ranking: Vec<usize>,
    pub theta: f64,
    /// Length of the shortest ranking prefix whose removal leaves
    /// `|GCC| / N <= theta`.
    pub tas_size: usize,
    pub rho: f64,
    /// `|GCC| / N` after each of the first `tas_size` removals.
    pub ngcc_curve: Vec<f64>,
    pub auc: f64,
}

impl DismantleReport {
    pub fn attack_set(&self) -> &[usize] {
        &self.ranking[..self.tas_size]
    }

    pub fn summary(&self, method: &str) -> ReportSummary {
        ReportSummary {
            method: method.to_owned(),
            theta: self.theta,
            tas_size: self.tas_size,
            rho: self.rho,
            auc: self.auc,
        }
    }
}

/// The serialized form of a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportSummary {
    pub method: String,
    pub theta: f64,
    pub tas_size: usize,
    pub rho: f64,
    pub auc: f64,
}

/// Ranks by `scores` and returns the minimal dismantling prefix at `theta`.
/// If the intact graph already meets the threshold the attack set is empty
/// and `rho = 0`.
pub fn minimal_prefix_tas(g: &Graph, scores: &ScoreVector, theta: f64) -> Result<DismantleReport> {
    if scores.len() != g.num_nodes() {
        return Err(Error::invalid(format!(
            "{} scores for {} nodes",
            scores.len(),
            g.num_nodes()
        )));
    }
    report_for_ranking(g, scores.ranking(), theta)
}

pub fn report_for_ranking(g: &Graph, ranking: Vec<usize>, theta: f64) -> Result<DismantleReport> {
    check_theta(theta)?;
    let n = g.num_nodes();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let traj = gcc_trajectory(g, &ranking)?;
    let k = first_crossing(&traj, n, theta);
    let (ngcc_curve, auc) = curve_from_trajectory(&traj, n, k);
    Ok(DismantleReport {
        ranking,
        theta,
        tas_size: k,
        rho: k as f64 / n as f64,
        ngcc_curve,
        auc,
    })
}

fn curve_from_trajectory(traj: &[usize], n: usize, k: usize) -> (Vec<f64>, f64) {
    let curve: Vec<f64> = traj[1..=k].iter().map(|&s| s as f64 / n as f64).collect();
    let auc = curve.iter().sum();
    (curve, auc)
}

/// NGCC after each of the first `k` removals of `ranking`, and their sum.
pub fn ngcc_curve_and_auc(g: &Graph, ranking: &[usize], k: usize) -> Result<(Vec<f64>, f64)> {
    let n = g.num_nodes();
    if k > n {
        return Err(Error::invalid(format!("k = {k} exceeds N = {n}")));
    }
    let traj = gcc_trajectory(g, ranking)?;
    Ok(curve_from_trajectory(&traj, n, k))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub theta: f64,
    pub tas_size: usize,
    pub rho: f64,
}

/// `rho` at every threshold from one shared trajectory.
pub fn threshold_sweep(g: &Graph, scores: &ScoreVector, thetas: &[f64]) -> Result<Vec<SweepPoint>> {
    let n = g.num_nodes();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if scores.len() != n {
        return Err(Error::invalid(format!("{} scores for {n} nodes", scores.len())));
    }
    let traj = gcc_trajectory(g, &scores.ranking())?;
    thetas
        .iter()
        .map(|&theta| {
            check_theta(theta)?;
            let k = first_crossing(&traj, n, theta);
            Ok(SweepPoint {
                theta,
                tas_size: k,
                rho: k as f64 / n as f64,
            })
        })
        .collect()
}

/// Scores of a uniformly random ranking: a seeded shuffle of `0..n`.
pub fn random_scores(n: usize, seed: u64) -> ScoreVector {
    let mut values: Vec<f64> = (0..n).map(|i| i as f64).collect();
    values.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    ScoreVector::new(values)
}

/// `step,ngcc` rows, steps counted from 1.
pub fn write_curve_csv<W: Write>(curve: &[f64], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["step", "ngcc"])?;
    for (t, v) in curve.iter().enumerate() {
        w.write_record([(t + 1).to_string(), v.to_string()])?;
    }
    w.flush().map_err(|e| Error::io("<curve csv>", e))?;
    Ok(())
}
