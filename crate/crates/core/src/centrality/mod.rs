//! One-pass centrality baselines.
//!
//! Every measure returns a [`ScoreVector`] over the intact graph; attack
//! order is the descending score with ties broken by ascending node id.

mod paths;
mod spectral;

use std::cmp::Ordering;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use paths::{betweenness, closeness, collective_influence, harmonic};
pub use spectral::{eigenvector, pagerank, Eigenvector};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Per-node real scores.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreVector(Vec<f64>);

impl ScoreVector {
    pub fn new(values: Vec<f64>) -> Self {
        ScoreVector(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Node ids ordered by descending score, ties by ascending id.
    pub fn ranking(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.0.len()).collect();
        order.sort_by(|&a, &b| match self.0[b].total_cmp(&self.0[a]) {
            Ordering::Equal => a.cmp(&b),
            other => other,
        });
        order
    }

    /// Writes `node_id,score` rows using `labels` for the node column.
    pub fn write_csv<W: Write>(&self, labels: &[String], out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["node_id", "score"])?;
        for (label, score) in labels.iter().zip(&self.0) {
            w.write_record([label.as_str(), &score.to_string()])?;
        }
        w.flush().map_err(|e| Error::io("<scores csv>", e))?;
        Ok(())
    }
}

impl From<Vec<f64>> for ScoreVector {
    fn from(values: Vec<f64>) -> Self {
        ScoreVector(values)
    }
}

pub fn degree(g: &Graph) -> ScoreVector {
    ScoreVector((0..g.num_nodes()).map(|i| g.degree(i) as f64).collect())
}

/// The classical baselines by their usual two-letter tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Centrality {
    Dc,
    Bc,
    Cc,
    Ec,
    Hc,
    Ci,
    Pr,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CentralityParams {
    pub ci_radius: usize,
    pub damping: f64,
    pub pagerank_max_iter: usize,
    pub pagerank_tol: f64,
    pub eigen_max_iter: usize,
    pub eigen_tol: f64,
}

impl Default for CentralityParams {
    fn default() -> Self {
        CentralityParams {
            ci_radius: 2,
            damping: 0.85,
            pagerank_max_iter: 200,
            pagerank_tol: 1e-8,
            eigen_max_iter: 1000,
            eigen_tol: 1e-9,
        }
    }
}

impl Centrality {
    pub const ALL: [Centrality; 7] = [
        Centrality::Dc,
        Centrality::Bc,
        Centrality::Cc,
        Centrality::Ec,
        Centrality::Hc,
        Centrality::Ci,
        Centrality::Pr,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Centrality::Dc => "dc",
            Centrality::Bc => "bc",
            Centrality::Cc => "cc",
            Centrality::Ec => "ec",
            Centrality::Hc => "hc",
            Centrality::Ci => "ci",
            Centrality::Pr => "pr",
        }
    }

    pub fn compute(self, g: &Graph, params: &CentralityParams) -> Result<ScoreVector> {
        Ok(match self {
            Centrality::Dc => degree(g),
            Centrality::Bc => betweenness(g),
            Centrality::Cc => closeness(g),
            Centrality::Ec => eigenvector(g, params.eigen_max_iter, params.eigen_tol).scores,
            Centrality::Hc => harmonic(g),
            Centrality::Ci => collective_influence(g, params.ci_radius)?,
            Centrality::Pr => pagerank(g, params.damping, params.pagerank_max_iter, params.pagerank_tol)?,
        })
    }
}

impl FromStr for Centrality {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Centrality::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::invalid(format!("unknown centrality '{s}'")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_of_star_and_triangle() {
        assert_eq!(degree(&Graph::star(4)).values(), &[4.0, 1.0, 1.0, 1.0, 1.0]);
        assert_eq!(degree(&Graph::complete(3)).values(), &[2.0, 2.0, 2.0]);
    }

    #[test]
    fn ranking_breaks_ties_by_id() {
        let s = ScoreVector::new(vec![1.0, 3.0, 1.0, 3.0, 2.0]);
        assert_eq!(s.ranking(), vec![1, 3, 4, 0, 2]);
    }

    #[test]
    fn csv_uses_labels() {
        let s = ScoreVector::new(vec![2.0, 0.5]);
        let mut buf = Vec::new();
        s.write_csv(&["a".into(), "b".into()], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "node_id,score\na,2\nb,0.5\n");
    }

    #[test]
    fn parse_tags() {
        assert_eq!("PR".parse::<Centrality>().unwrap(), Centrality::Pr);
        assert!("katz".parse::<Centrality>().is_err());
    }
}
