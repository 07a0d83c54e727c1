//! Analytic lower/upper bounds around the coded network's router-plus-
//! transponder power, evaluated over a day of random demand matrices.
//!
//!     cargo run --example analytic_bounds

use ncwdm::analytics::{bounds_partition, bounds_zero_pad, reduced_nc};
use ncwdm::net_model::nsfnet;
use ncwdm::power::{DeviceParams, NcMode};
use ncwdm::routing::route_all;
use ncwdm::traffic::generate_matrix;

fn main() {
    let t = nsfnet();
    let p = DeviceParams::table4();
    let r = p.port_ratio();

    for mode in [NcMode::ZeroPad, NcMode::Partition] {
        println!("== {} ==", mode.name());
        println!("hour  lower(mesh)  lower(equal)      model   upper(traf)  upper(hop)  upper(joint)");
        for hour in (0..=22).step_by(2) {
            let dm = generate_matrix(&t, hour, 1);
            let plan = route_all(&t, &dm).unwrap();
            let bounds = match mode {
                NcMode::ZeroPad => bounds_zero_pad(&t, &dm, &p, r).unwrap(),
                NcMode::Partition => bounds_partition(&t, &dm, &p, r).unwrap(),
            };
            let value = reduced_nc(&plan.pairs, &p, r, mode);
            println!(
                "{hour:>4}  {:>11.0}  {:>12.0}  {:>9.0}   {:>11.0}  {:>10.0}  {:>12.0}{}",
                bounds.lower_full_mesh_w,
                bounds.lower_equal_traffic_w,
                value,
                bounds.upper_max_traffic_w,
                bounds.upper_max_hop_w,
                bounds.upper_joint_w,
                if bounds.sandwiches(value) { "" } else { "  <- VIOLATION" }
            );
        }
        println!();
    }
}
