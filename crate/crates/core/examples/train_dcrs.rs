//! Train the scoring network on one graph, watch the loss, save a
//! checkpoint and reload it.
//!
//! ```text
//! cargo run --release --example train_dcrs -- [n] [epochs] [checkpoint.json]
//! ```

use dismantler::autograd::ParamStore;
use dismantler::dismantle::minimal_prefix_tas;
use dismantler::graph::barabasi_albert;
use dismantler::model::{DcrsConfig, DcrsModel, GraphContext};
use dismantler::roles::discover_roles;
use dismantler::Result;

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(1000, |s| s.parse().expect("node count"));
    let epochs: usize = args.next().map_or(500, |s| s.parse().expect("epochs"));
    let ckpt = args.next().unwrap_or_else(|| std::env::temp_dir().join("dcrs_ckpt.json").display().to_string());

    let g = barabasi_albert(n, 4, 1)?;
    let cfg = DcrsConfig { epochs, seed: 1, ..DcrsConfig::default() };
    let roles = discover_roles(&g, &dismantler::model::role_config_for(&cfg))?;
    let ctx = GraphContext::new(&g, &roles.role_graph.graph)?;

    let mut model = DcrsModel::new(cfg)?;
    println!("{} trainable scalars, role rank {}", model.params.num_scalars(), roles.selection.rank);
    let start = std::time::Instant::now();
    let out = model.fit(&ctx)?;
    for (epoch, loss) in out.loss_history.iter().enumerate().step_by((epochs / 10).max(1)) {
        println!("epoch {epoch:>4}  loss {loss:.3}");
    }
    println!("final loss {:.3} after {:.1}s", out.final_loss, start.elapsed().as_secs_f64());

    let mean = out.s_dis.iter().sum::<f64>() / n as f64;
    let rho = minimal_prefix_tas(&g, &out.scores(), 0.01)?.rho;
    println!("mean score {mean:.4}, attack set at theta 0.01: {rho:.3} of nodes");

    model.params.save_json(&ckpt)?;
    let reloaded = DcrsModel { config: cfg, params: ParamStore::load_json(&ckpt)? };
    assert_eq!(reloaded.evaluate(&ctx)?.s_dis, out.s_dis);
    println!("checkpoint written to {ckpt} and verified");
    Ok(())
}
