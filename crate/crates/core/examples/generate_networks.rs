//! The four synthetic families, their basic statistics, and an edge-list
//! round trip.
//!
//! ```text
//! cargo run --release --example generate_networks -- [n] [seed]
//! ```

use dismantler::graph::{barabasi_albert, erdos_renyi, parse_edge_list, powerlaw_cluster, watts_strogatz, write_edge_list};
use dismantler::{Graph, Result};

fn clustering(g: &Graph) -> f64 {
    let mut total = 0.0;
    for v in 0..g.num_nodes() {
        let nb = g.neighbors(v);
        if nb.len() < 2 {
            continue;
        }
        let mut links = 0;
        for (i, &a) in nb.iter().enumerate() {
            links += nb[i + 1..].iter().filter(|&&b| g.has_edge(a, b)).count();
        }
        total += 2.0 * links as f64 / (nb.len() * (nb.len() - 1)) as f64;
    }
    total / g.num_nodes() as f64
}

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(1000, |s| s.parse().expect("node count"));
    let seed: u64 = args.next().map_or(1, |s| s.parse().expect("seed"));

    let nets = [
        ("er k=6", erdos_renyi(n, 6.0, seed)?),
        ("ba m=4", barabasi_albert(n, 4, seed)?),
        ("ws m=8 p=0.1", watts_strogatz(n, 8, 0.1, seed)?),
        ("plc m=4 p=0.5", powerlaw_cluster(n, 4, 0.5, seed)?),
    ];
    println!("{:<14} {:>6} {:>7} {:>7} {:>8} {:>7}", "network", "nodes", "edges", "<k>", "max deg", "C");
    for (name, g) in &nets {
        println!(
            "{name:<14} {:>6} {:>7} {:>7.2} {:>8} {:>7.3}",
            g.num_nodes(),
            g.num_edges(),
            g.average_degree(),
            g.degrees().into_iter().max().unwrap_or(0),
            clustering(g)
        );
    }

    // Written lists parse back to the same graph.
    let g = &nets[1].1;
    let mut buf = Vec::new();
    write_edge_list(g, None, &mut buf).expect("in-memory write");
    let back = parse_edge_list(buf.as_slice())?;
    println!(
        "round trip: {} lines, {} nodes, {} edges",
        buf.split(|&b| b == b'\n').filter(|l| !l.is_empty()).count(),
        back.graph.num_nodes(),
        back.graph.num_edges()
    );
    Ok(())
}
