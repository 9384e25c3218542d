//! The full model against each single-branch variant on a few networks.
//!
//! ```text
//! cargo run --release --example ablation -- [seeds]
//! ```

use dismantler::dismantle::minimal_prefix_tas;
use dismantler::experiment::NetworkSpec;
use dismantler::model::{run_pipeline, Ablation, DcrsConfig};
use dismantler::Result;

fn main() -> Result<()> {
    let seeds: u64 = std::env::args().nth(1).map_or(2, |s| s.parse().expect("seed count"));
    let nets = ["ba:n=1000,m=4", "er:n=1000,k=6", "plc:n=1000,m=4,p=0.5"];
    println!("{:<22} {:>8} {:>8} {:>8}", "network", "full", "no_rs", "no_dc");
    for spec in nets {
        let spec: NetworkSpec = spec.parse()?;
        let mut rho = [0.0; 3];
        for seed in 0..seeds {
            let g = spec.build(seed)?.graph;
            for (i, a) in Ablation::ALL.into_iter().enumerate() {
                let cfg = DcrsConfig { seed, ..DcrsConfig::default() }.with_ablation(a);
                let out = run_pipeline(&g, &cfg)?.output;
                rho[i] += minimal_prefix_tas(&g, &out.scores(), 0.01)?.rho / seeds as f64;
            }
        }
        println!("{:<22} {:>8.3} {:>8.3} {:>8.3}", spec.to_string(), rho[0], rho[1], rho[2]);
    }
    Ok(())
}
