//! Network dismantling toolkit.
//!
//! Nodes are scored by fusing two learned encodings, a graph diffusion
//! network over the input graph (diffusion competence) and a graph
//! convolution over a role-similarity graph (role significance). The scores
//! feed a one-pass dismantling evaluator that removes the top-ranked nodes
//! and tracks the collapse of the giant connected component.
//!
//! The crate is organised bottom-up:
//!
//! - [`graph`]: compressed undirected graphs, edge-list I/O, synthetic
//!   generators, union-find and connectivity.
//! - [`centrality`]: classical one-pass baselines (degree, betweenness,
//!   closeness, harmonic, eigenvector, collective influence, PageRank).
//! - [`roles`]: egonet features, recursive aggregation, NMF with MDL rank
//!   selection, and the top-k role graph.
//! - [`autograd`]: a small dense reverse-mode tape with segment operations
//!   and an Adam optimizer.
//! - [`model`]: the fused scoring network, its unsupervised loss and the
//!   training loop.
//! - [`dismantle`]: attack-set selection, NGCC curves and threshold sweeps.
//! - [`experiment`]: the batch driver used by the `dismantler` binary.
//!
//! Runnable walkthroughs for each capability live in `examples/`.

/// Training allocates and frees many short-lived multi-megabyte buffers per
/// epoch; the system allocator hands those back to the kernel every time.
/// Disable the default `mimalloc` feature to install your own allocator.
#[cfg(feature = "mimalloc")]
#[global_allocator]
static GLOBAL: mimalloc::MiMalloc = mimalloc::MiMalloc;

pub mod autograd;
pub mod centrality;
pub mod dismantle;
mod error;
pub mod experiment;
pub mod graph;
pub mod model;
pub mod roles;

pub use centrality::ScoreVector;
pub use dismantle::DismantleReport;
pub use error::{Error, Result};
pub use graph::{Graph, LabeledGraph, UnionFind};
pub use model::{DcrsConfig, DcrsOutput};
