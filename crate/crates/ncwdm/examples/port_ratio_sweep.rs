//! Sensitivity of coding gains to the coded-port power: sweeps the port
//! ratio r = (Px + Pt)/(Pp + Pt) and finds where each coding mode stops
//! beating conventional routing.
//!
//!     cargo run --example port_ratio_sweep

use ncwdm::cli::{cmd_sweep_r, RunConfig, TopologySpec};
use ncwdm::power::NcMode;

fn main() {
    let out = std::env::temp_dir().join("ncwdm_sweep");
    let mut cfg = RunConfig::new(TopologySpec::Nsfnet, out);
    cfg.modes = vec![NcMode::ZeroPad, NcMode::Partition];
    cfg.seeds = vec![1, 2, 3];

    let sweep = cmd_sweep_r(&cfg, 1.0, 2.2, 25).expect("sweep");
    println!("    r   conventional W   zero-pad W   partition W");
    for (i, &r) in sweep.r_values.iter().enumerate() {
        println!(
            "{r:>5.2}   {:>14.0}   {:>10.0}   {:>11.0}",
            sweep.conventional_w,
            sweep.nc_w[&NcMode::ZeroPad][i],
            sweep.nc_w[&NcMode::Partition][i]
        );
    }
    println!();
    for (mode, crossing) in &sweep.crossover {
        match crossing {
            Some(r) => println!("{} matches conventional at r = {r:.3}", mode.name()),
            None => println!("{} never crosses in the swept range", mode.name()),
        }
    }
}
