//! Egonet features and their recursive neighbor aggregates.

use rayon::prelude::*;

use crate::autograd::Tensor;
use crate::graph::Graph;

/// Dense non-negative `N x f` feature matrix with a name per column.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    pub values: Tensor,
    pub names: Vec<String>,
}

impl FeatureMatrix {
    pub fn num_nodes(&self) -> usize {
        self.values.rows()
    }

    pub fn num_features(&self) -> usize {
        self.values.cols()
    }

    pub fn column(&self, c: usize) -> Vec<f64> {
        (0..self.values.rows()).map(|r| self.values.get(r, c)).collect()
    }

    fn from_columns(columns: Vec<Vec<f64>>, names: Vec<String>, n: usize) -> Self {
        let f = columns.len();
        let mut data = vec![0.0; n * f];
        for (c, col) in columns.iter().enumerate() {
            for (r, &v) in col.iter().enumerate() {
                data[r * f + c] = v;
            }
        }
        FeatureMatrix {
            values: Tensor::from_vec(n, f, data).expect("column lengths match"),
            names,
        }
    }
}

pub const BASE_FEATURES: [&str; 4] = ["degree", "clustering", "egonet_degree_sum", "egonet_edge_ratio"];

/// Per node: degree, local clustering coefficient, the degree sum over the
/// egonet (node included), and `edges inside the egonet / (1 + edges leaving it)`.
pub fn egonet_features(g: &Graph) -> FeatureMatrix {
    let rows: Vec<[f64; 4]> = (0..g.num_nodes())
        .into_par_iter()
        .map(|i| {
            let nbrs = g.neighbors(i);
            let k = nbrs.len();
            if k == 0 {
                return [0.0; 4];
            }
            let triangles = nbrs
                .iter()
                .map(|&j| sorted_intersection(nbrs, g.neighbors(j)))
                .sum::<usize>()
                / 2;
            let clustering = if k < 2 {
                0.0
            } else {
                2.0 * triangles as f64 / (k * (k - 1)) as f64
            };
            let degree_sum = k + nbrs.iter().map(|&j| g.degree(j)).sum::<usize>();
            let within = k + triangles;
            let leaving = degree_sum - 2 * within;
            [
                k as f64,
                clustering,
                degree_sum as f64,
                within as f64 / (1 + leaving) as f64,
            ]
        })
        .collect();
    let columns = (0..4).map(|c| rows.iter().map(|r| r[c]).collect()).collect();
    FeatureMatrix::from_columns(
        columns,
        BASE_FEATURES.iter().map(|s| s.to_string()).collect(),
        g.num_nodes(),
    )
}

fn sorted_intersection(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Columns correlated above this with an earlier retained column are dropped.
pub const PRUNE_CORRELATION: f64 = 0.99;

#[derive(Clone, Copy)]
enum Aggregator {
    Mean,
    Sum,
}

impl Aggregator {
    fn name(self) -> &'static str {
        match self {
            Aggregator::Mean => "mean",
            Aggregator::Sum => "sum",
        }
    }

    fn apply(self, g: &Graph, column: &[f64]) -> Vec<f64> {
        (0..g.num_nodes())
            .map(|i| {
                let nbrs = g.neighbors(i);
                if nbrs.is_empty() {
                    return 0.0;
                }
                let s: f64 = nbrs.iter().map(|&j| column[j]).sum();
                match self {
                    Aggregator::Mean => s / nbrs.len() as f64,
                    Aggregator::Sum => s,
                }
            })
            .collect()
    }
}

/// Appends `levels` rounds of neighbor-mean and neighbor-sum aggregates.
///
/// Each aggregator recurses on its own previous level, so level `l` holds
/// `mean^l(x)` and `sum^l(x)` for every input column `x`, giving
/// `f * (1 + 2 * levels)` columns before pruning. Pruning then drops any
/// column whose Pearson correlation with an earlier retained column exceeds
/// [`PRUNE_CORRELATION`].
pub fn recursive_aggregate(feat: &FeatureMatrix, g: &Graph, levels: usize) -> FeatureMatrix {
    if levels == 0 {
        return feat.clone();
    }
    let base: Vec<Vec<f64>> = (0..feat.num_features()).map(|c| feat.column(c)).collect();
    let mut columns = base.clone();
    let mut names = feat.names.clone();
    let mut chains: Vec<(Aggregator, Vec<Vec<f64>>, Vec<String>)> = [Aggregator::Mean, Aggregator::Sum]
        .into_iter()
        .map(|a| (a, base.clone(), feat.names.clone()))
        .collect();
    for _ in 0..levels {
        for (agg, prev, prev_names) in chains.iter_mut() {
            let next: Vec<Vec<f64>> = prev.iter().map(|col| agg.apply(g, col)).collect();
            let next_names: Vec<String> = prev_names
                .iter()
                .map(|n| format!("{}({n})", agg.name()))
                .collect();
            columns.extend(next.iter().cloned());
            names.extend(next_names.iter().cloned());
            *prev = next;
            *prev_names = next_names;
        }
    }
    prune_correlated(columns, names, feat.num_nodes())
}

fn prune_correlated(columns: Vec<Vec<f64>>, names: Vec<String>, n: usize) -> FeatureMatrix {
    let mut kept: Vec<Vec<f64>> = Vec::new();
    let mut kept_names = Vec::new();
    for (col, name) in columns.into_iter().zip(names) {
        if kept.iter().all(|k| correlation(k, &col) <= PRUNE_CORRELATION) {
            kept.push(col);
            kept_names.push(name);
        }
    }
    FeatureMatrix::from_columns(kept, kept_names, n)
}

/// Pearson correlation; two constant columns count as perfectly correlated,
/// one constant column as uncorrelated.
pub fn correlation(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    if a.is_empty() {
        return 1.0;
    }
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        let (dx, dy) = (x - ma, y - mb);
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    let scale_a = a.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
    let scale_b = b.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
    let const_a = saa <= 1e-24 * scale_a * scale_a * n;
    let const_b = sbb <= 1e-24 * scale_b * scale_b * n;
    match (const_a, const_b) {
        (true, true) => 1.0,
        (true, false) | (false, true) => 0.0,
        (false, false) => sab / (saa.sqrt() * sbb.sqrt()),
    }
}

/// Min-max scales each column into `[0, 1]`; constant columns become 0.
pub fn normalize_columns(values: &Tensor) -> Tensor {
    let (n, f) = values.shape();
    let mut out = values.clone();
    for c in 0..f {
        let (lo, hi) = (0..n).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
            let v = values.get(r, c);
            (lo.min(v), hi.max(v))
        });
        let span = hi - lo;
        for r in 0..n {
            out.data_mut()[r * f + c] = if span > 0.0 {
                (values.get(r, c) - lo) / span
            } else {
                0.0
            };
        }
    }
    out
}
