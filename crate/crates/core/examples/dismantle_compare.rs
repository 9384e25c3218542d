//! Compare attack-set sizes of DCRS, degree and a random ranking on
//! synthetic networks.
//!
//! ```text
//! cargo run --release --example dismantle_compare -- [seeds] [epochs] [gamma]
//! ```

use dismantler::centrality::degree;
use dismantler::dismantle::{minimal_prefix_tas, random_scores};
use dismantler::graph::{barabasi_albert, erdos_renyi};
use dismantler::model::{run_pipeline, DcrsConfig};
use dismantler::{Graph, Result};

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let seeds: u64 = args.next().map_or(3, |s| s.parse().expect("seed count"));
    let epochs: usize = args.next().map_or(500, |s| s.parse().expect("epochs"));
    let gamma: f64 = args.next().map_or(DcrsConfig::default().gamma, |s| s.parse().expect("gamma"));
    let theta = 0.01;

    type Gen = fn(u64) -> Result<Graph>;
    let nets: [(&str, Gen); 2] = [
        ("ba(1000,4)", |s| barabasi_albert(1000, 4, s)),
        ("er(1000,6)", |s| erdos_renyi(1000, 6.0, s)),
    ];
    for (name, make) in nets {
        let (mut dcrs, mut dc, mut rnd) = (0.0, 0.0, 0.0);
        for seed in 0..seeds {
            let g = make(seed)?;
            let cfg = DcrsConfig { epochs, seed, gamma, ..DcrsConfig::default() };
            let out = run_pipeline(&g, &cfg)?.output;
            let r = minimal_prefix_tas(&g, &out.scores(), theta)?.rho;
            let d = minimal_prefix_tas(&g, &degree(&g), theta)?.rho;
            let x = minimal_prefix_tas(&g, &random_scores(g.num_nodes(), seed), theta)?.rho;
            let first = out.loss_history.first().copied().unwrap_or(out.final_loss);
            println!(
                "{name} seed {seed}: dcrs {r:.3} dc {d:.3} random {x:.3}  loss {first:.1} -> {:.1}",
                out.final_loss
            );
            dcrs += r;
            dc += d;
            rnd += x;
        }
        let k = seeds as f64;
        println!("{name} mean: dcrs {:.4} dc {:.4} random {:.4}", dcrs / k, dc / k, rnd / k);
    }
    Ok(())
}
