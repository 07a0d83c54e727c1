//! Full-day power comparison on the NSFNET backbone: conventional routing
//! versus XOR coding at intermediate nodes, zero-padding and partitioning.
//!
//!     cargo run --example daily_savings

use ncwdm::cli::{cmd_daily, RunConfig, TopologySpec};
use ncwdm::power::{Layer, NcMode, Scheme};

fn main() {
    let out = std::env::temp_dir().join("ncwdm_daily");
    let mut cfg = RunConfig::new(TopologySpec::Nsfnet, out);
    cfg.modes = vec![NcMode::ZeroPad, NcMode::Partition];

    let summary = cmd_daily(&cfg).expect("daily run");
    println!("hour  conventional W   coded zero-pad W   coded partition W   savings");
    for &hour in &cfg.hours {
        let conv = summary.hourly_total_w[&(hour, Scheme::Conventional, Layer::NonBypass, None)];
        let zp =
            summary.hourly_total_w[&(hour, Scheme::Nc, Layer::NonBypass, Some(NcMode::ZeroPad))];
        let pt =
            summary.hourly_total_w[&(hour, Scheme::Nc, Layer::NonBypass, Some(NcMode::Partition))];
        println!(
            "{hour:>4}  {conv:>14.0}   {zp:>16.0}   {pt:>17.0}   {:>6.2}%",
            100.0 * (1.0 - zp / conv)
        );
    }
    println!();
    for (&(layer, mode), &s) in &summary.mean_savings {
        println!("daily mean savings ({} / {}): {:.2}%", layer.name(), mode.name(), 100.0 * s);
    }
    for path in &summary.files {
        println!("wrote {}", path.display());
    }
}
