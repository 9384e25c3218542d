//! A small batch run through the library driver: methods x seeds x
//! thresholds, with reports on disk and a summary table.
//!
//! ```text
//! cargo run --release --example batch_experiment -- [out_dir]
//! ```

use dismantler::experiment::{run_experiment, ExperimentConfig};
use dismantler::model::DcrsConfig;
use dismantler::Result;

fn main() -> Result<()> {
    let out_dir = std::env::args()
        .nth(1)
        .map_or_else(|| std::env::temp_dir().join("dismantler_batch"), Into::into);
    let cfg = ExperimentConfig {
        inputs: vec!["ba:n=500,m=3".parse()?, "ws:n=500,m=6,p=0.2".parse()?],
        methods: ["dc", "bc", "ci", "random", "dcrs"].iter().map(|m| m.parse()).collect::<Result<_>>()?,
        thetas: vec![0.01, 0.1],
        seeds: vec![1, 2, 3],
        dcrs: DcrsConfig { epochs: 300, ..DcrsConfig::default() },
        out_dir: out_dir.clone(),
        ..ExperimentConfig::default()
    };
    let outcome = run_experiment(&cfg)?;
    for s in &outcome.summary {
        println!(
            "{:<20} {:<7} theta {:<5} rho {:.3} +- {:.3}",
            s.network, s.method, s.theta, s.rho_mean, s.rho_std
        );
    }
    println!("{} runs, {} failures, reports under {}", outcome.rows.len() / cfg.thetas.len(), outcome.errors.len(), out_dir.display());
    Ok(())
}
