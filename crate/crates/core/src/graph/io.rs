//! Plain-text edge lists.
//!
//! One edge per line, two node tokens separated by any run of spaces, tabs
//! or commas. Lines starting with `#` or `%` are comments. Tokens are opaque
//! labels; nodes are numbered in order of first appearance. A line naming
//! the same token twice declares the node without adding an edge, which is
//! how [`write_edge_list`] preserves isolated nodes.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use super::Graph;
use crate::error::{Error, Result};

/// A graph plus the original token of every dense node id.
#[derive(Debug, Clone)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labels: Vec<String>,
}

impl LabeledGraph {
    /// Labels a graph with its own integer ids.
    pub fn from_graph(graph: Graph) -> Self {
        let labels = (0..graph.num_nodes()).map(|i| i.to_string()).collect();
        LabeledGraph { graph, labels }
    }

    pub fn label(&self, node: usize) -> &str {
        &self.labels[node]
    }
}

pub fn load_edge_list(path: impl AsRef<Path>) -> Result<LabeledGraph> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_edge_list(BufReader::new(file)).map_err(|e| match e {
        Error::Io { source, .. } => Error::io(path, source),
        other => other,
    })
}

pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<LabeledGraph> {
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges = Vec::new();

    let mut intern = |token: &str| -> usize {
        if let Some(&id) = ids.get(token) {
            return id;
        }
        let id = labels.len();
        ids.insert(token.to_owned(), id);
        labels.push(token.to_owned());
        id
    };

    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io("<edge list>", e))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let tokens: Vec<&str> = trimmed
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line: idx + 1,
                message: format!("expected 2 node tokens, found {}", tokens.len()),
            });
        }
        let u = intern(tokens[0]);
        let v = intern(tokens[1]);
        edges.push((u, v));
    }

    if labels.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let graph = Graph::from_edges(labels.len(), edges)?;
    Ok(LabeledGraph { graph, labels })
}

/// Writes `u v` lines for every edge (ascending), then `x x` for each
/// isolated node so the node count survives a round trip.
pub fn write_edge_list<W: Write>(graph: &Graph, labels: Option<&[String]>, mut out: W) -> std::io::Result<()> {
    let name = |i: usize| -> String {
        match labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    };
    for (u, v) in graph.edges() {
        writeln!(out, "{} {}", name(u), name(v))?;
    }
    for u in (0..graph.num_nodes()).filter(|&u| graph.degree(u) == 0) {
        let l = name(u);
        writeln!(out, "{l} {l}")?;
    }
    out.flush()
}
