//! Structural role discovery and the role-similarity graph.
//!
//! Pipeline: egonet features, recursive neighbor aggregation with
//! correlation pruning, per-column min-max scaling, NMF at the rank chosen
//! by minimum description length, then a top-k cosine graph over the role
//! memberships.

mod features;
mod nmf;
mod role_graph;

use std::io::Write;

use serde::{Deserialize, Serialize};

pub use features::{
    correlation, egonet_features, normalize_columns, recursive_aggregate, FeatureMatrix, BASE_FEATURES,
    PRUNE_CORRELATION,
};
pub use nmf::{frobenius_error, mdl_cost, nmf, select_rank_mdl, MdlSelection, NmfOptions, RoleModel};
pub use role_graph::{build_role_graph, role_similarity, RoleGraph};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RoleConfig {
    pub levels: usize,
    pub r_min: usize,
    pub r_max: usize,
    pub mdl_bits: f64,
    pub nmf_max_iter: usize,
    pub nmf_tol: f64,
    pub k: usize,
    pub seed: u64,
}

impl Default for RoleConfig {
    fn default() -> Self {
        RoleConfig {
            levels: 1,
            r_min: 2,
            r_max: 8,
            mdl_bits: 4.0,
            nmf_max_iter: 1000,
            nmf_tol: 1e-7,
            k: 10,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RoleDiscovery {
    pub features: FeatureMatrix,
    pub selection: MdlSelection,
    pub role_graph: RoleGraph,
}

impl RoleDiscovery {
    pub fn model(&self) -> &RoleModel {
        &self.selection.model
    }

    /// `{r, R, M, feature_names, mdl_cost}` with `R` and `M` as row-major
    /// nested arrays.
    pub fn write_json<W: Write>(&self, out: W) -> Result<()> {
        let m = self.model();
        let rows = |t: &crate::autograd::Tensor| (0..t.rows()).map(|r| t.row(r).to_vec()).collect();
        let doc = RoleModelDoc {
            r: m.rank,
            roles: rows(&m.roles),
            contributions: rows(&m.contributions),
            feature_names: self.features.names.clone(),
            mdl_cost: m.mdl_cost,
        };
        serde_json::to_writer_pretty(out, &doc)?;
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RoleModelDoc {
    pub r: usize,
    #[serde(rename = "R")]
    pub roles: Vec<Vec<f64>>,
    #[serde(rename = "M")]
    pub contributions: Vec<Vec<f64>>,
    pub feature_names: Vec<String>,
    pub mdl_cost: Option<f64>,
}

/// Runs the full role pipeline on `g`.
pub fn discover_roles(g: &Graph, cfg: &RoleConfig) -> Result<RoleDiscovery> {
    if g.num_nodes() == 0 {
        return Err(Error::EmptyGraph);
    }
    if cfg.k == 0 {
        return Err(Error::invalid("role graph k must be >= 1"));
    }
    let features = recursive_aggregate(&egonet_features(g), g, cfg.levels);
    let scaled = normalize_columns(&features.values);
    let cap = g.num_nodes().min(features.num_features());
    let r_max = cfg.r_max.min(cap);
    let r_min = cfg.r_min.min(r_max).max(1);
    let opts = NmfOptions {
        max_iter: cfg.nmf_max_iter,
        tol: cfg.nmf_tol,
        seed: cfg.seed,
    };
    let selection = select_rank_mdl(&scaled, r_min, r_max, cfg.mdl_bits, &opts)?;
    let role_graph = build_role_graph(&selection.model.roles, cfg.k);
    Ok(RoleDiscovery {
        features,
        selection,
        role_graph,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pipeline_on_ba() {
        let g = crate::graph::barabasi_albert(300, 3, 4).unwrap();
        let d = discover_roles(&g, &RoleConfig::default()).unwrap();
        let m = d.model();
        assert!((2..=8).contains(&m.rank));
        assert_eq!(m.roles.shape(), (300, m.rank));
        assert_eq!(d.role_graph.graph.num_nodes(), 300);
        d.role_graph.graph.validate().unwrap();
        assert!(d.role_graph.graph.degrees().into_iter().all(|k| k >= 10));
    }

    #[test]
    fn json_document_shape() {
        let g = crate::graph::barabasi_albert(50, 2, 1).unwrap();
        let d = discover_roles(&g, &RoleConfig::default()).unwrap();
        let mut buf = Vec::new();
        d.write_json(&mut buf).unwrap();
        let doc: RoleModelDoc = serde_json::from_slice(&buf).unwrap();
        assert_eq!(doc.r, d.model().rank);
        assert_eq!(doc.roles.len(), 50);
        assert_eq!(doc.contributions.len(), doc.r);
        assert_eq!(doc.contributions[0].len(), doc.feature_names.len());
    }

    #[test]
    fn tiny_graph_clamps_rank_range() {
        let g = Graph::path(2);
        let d = discover_roles(&g, &RoleConfig::default()).unwrap();
        assert!(d.model().rank <= 2);
    }
}
