//! Attack-set size against the dismantling threshold, plus the NGCC curve
//! of one ranking written as CSV.
//!
//! ```text
//! cargo run --release --example threshold_sweep -- [curve.csv]
//! ```

use std::fs::File;

use dismantler::centrality::{Centrality, CentralityParams};
use dismantler::dismantle::{ngcc_curve_and_auc, random_scores, threshold_sweep, write_curve_csv};
use dismantler::graph::barabasi_albert;
use dismantler::model::{run_pipeline, DcrsConfig};
use dismantler::{Error, Result, ScoreVector};

fn main() -> Result<()> {
    let curve_path = std::env::args().nth(1);
    let g = barabasi_albert(1000, 4, 2)?;
    let thetas = [0.01, 0.05, 0.1, 0.2, 0.3, 0.5];
    let params = CentralityParams::default();

    let mut methods: Vec<(String, ScoreVector)> = [Centrality::Dc, Centrality::Ci, Centrality::Pr]
        .into_iter()
        .map(|c| Ok((c.name().to_owned(), c.compute(&g, &params)?)))
        .collect::<Result<_>>()?;
    methods.push(("random".into(), random_scores(g.num_nodes(), 2)));
    let trained = run_pipeline(&g, &DcrsConfig { seed: 2, ..DcrsConfig::default() })?;
    methods.push(("dcrs".into(), trained.output.scores()));

    print!("{:<8}", "theta");
    for t in thetas {
        print!("{t:>8}");
    }
    println!("{:>10}", "auc");
    for (name, scores) in &methods {
        print!("{name:<8}");
        for p in threshold_sweep(&g, scores, &thetas)? {
            print!("{:>8.3}", p.rho);
        }
        let (_, auc) = ngcc_curve_and_auc(&g, &scores.ranking(), 200)?;
        println!("{auc:>10.2}");
    }

    if let Some(path) = curve_path {
        let (curve, _) = ngcc_curve_and_auc(&g, &methods.last().unwrap().1.ranking(), g.num_nodes())?;
        write_curve_csv(&curve, File::create(&path).map_err(|e| Error::io(&path, e))?)?;
        println!("full model curve written to {path}");
    }
    Ok(())
}
