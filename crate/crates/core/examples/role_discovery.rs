//! Structural roles of a clustered scale-free graph: features, the MDL
//! rank search, and the resulting role graph.
//!
//! ```text
//! cargo run --release --example role_discovery -- [n] [k]
//! ```

use dismantler::graph::powerlaw_cluster;
use dismantler::roles::{discover_roles, RoleConfig};
use dismantler::Result;

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(500, |s| s.parse().expect("node count"));
    let k: usize = args.next().map_or(10, |s| s.parse().expect("neighbours per node"));
    let g = powerlaw_cluster(n, 3, 0.6, 7)?;
    let found = discover_roles(&g, &RoleConfig { k, ..RoleConfig::default() })?;

    println!("{} features kept after pruning:", found.features.names.len());
    for name in &found.features.names {
        println!("  {name}");
    }
    println!("description length by rank:");
    for (r, cost) in &found.selection.costs {
        let mark = if *r == found.selection.rank { " <- chosen" } else { "" };
        println!("  r={r}: {cost:.1} bits{mark}");
    }

    // Dominant role per node against its degree.
    let roles = &found.model().roles;
    let mut by_role = vec![(0usize, 0usize); roles.cols()];
    for v in 0..g.num_nodes() {
        let row = roles.row(v);
        let best = (0..row.len()).max_by(|&a, &b| row[a].total_cmp(&row[b])).unwrap();
        by_role[best].0 += 1;
        by_role[best].1 += g.degree(v);
    }
    for (r, (count, deg)) in by_role.iter().enumerate() {
        if *count > 0 {
            println!("role {r}: {count} nodes, mean degree {:.1}", *deg as f64 / *count as f64);
        }
    }

    let rg = &found.role_graph.graph;
    println!(
        "role graph: {} edges, degree {}..{}",
        rg.num_edges(),
        rg.degrees().into_iter().min().unwrap_or(0),
        rg.degrees().into_iter().max().unwrap_or(0)
    );
    let mut json = Vec::new();
    found.write_json(&mut json)?;
    println!("role model document: {} bytes of JSON", json.len());
    Ok(())
}
