//! Every classical centrality as a one-pass dismantling ranking.
//!
//! ```text
//! cargo run --release --example centrality_baselines -- [n] [seeds]
//! ```

use dismantler::centrality::{Centrality, CentralityParams};
use dismantler::dismantle::{minimal_prefix_tas, random_scores};
use dismantler::graph::{barabasi_albert, erdos_renyi};
use dismantler::Result;

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(1000, |s| s.parse().expect("node count"));
    let seeds: u64 = args.next().map_or(5, |s| s.parse().expect("seed count"));
    let params = CentralityParams::default();
    for (name, ba) in [("ba m=4", true), ("er k=6", false)] {
        let mut sums = vec![0.0; Centrality::ALL.len() + 1];
        for seed in 0..seeds {
            let g = if ba { barabasi_albert(n, 4, seed)? } else { erdos_renyi(n, 6.0, seed)? };
            for (i, c) in Centrality::ALL.iter().enumerate() {
                sums[i] += minimal_prefix_tas(&g, &c.compute(&g, &params)?, 0.01)?.rho;
            }
            sums[Centrality::ALL.len()] += minimal_prefix_tas(&g, &random_scores(n, seed), 0.01)?.rho;
        }
        print!("{name}:");
        for (i, c) in Centrality::ALL.iter().enumerate() {
            print!(" {}={:.3}", c.name(), sums[i] / seeds as f64);
        }
        println!(" random={:.3}", sums[Centrality::ALL.len()] / seeds as f64);
    }
    Ok(())
}
