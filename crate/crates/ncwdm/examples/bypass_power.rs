//! Optical-bypass evaluation on 2020-era equipment: lightpaths skip
//! intermediate IP routers, and coded transponders replace the two
//! conventional terminations of a bidirectional wavelength.
//!
//!     cargo run --example bypass_power

use ncwdm::net_model::nsfnet;
use ncwdm::power::{network_power, DeviceParams, Layer, NcMode, Scheme};
use ncwdm::routing::route_all;
use ncwdm::traffic::equal_matrix;

fn main() {
    let t = nsfnet();
    let p = DeviceParams::table5_greentouch();
    // equal bidirectional demands at ten times the base hourly profile,
    // matching the capacity jump to 400 Gbps wavelengths
    let dm = equal_matrix(14, 1200.0);
    let plan = route_all(&t, &dm).expect("routing");

    let non_bypass =
        network_power(&t, &plan, &p, Scheme::Conventional, Layer::NonBypass, NcMode::ZeroPad)
            .unwrap();
    let bypass =
        network_power(&t, &plan, &p, Scheme::Conventional, Layer::Bypass, NcMode::ZeroPad)
            .unwrap();
    println!("conventional non-bypass: {:>9.0} W", non_bypass.total_w);
    println!("conventional bypass:     {:>9.0} W", bypass.total_w);

    println!("\ncoded transponder W   coded-bypass total W   vs non-bypass");
    for px in [330.0, 360.0, 420.0, 500.0, 580.0, 660.0, 740.0] {
        let mut q = p;
        q.nc_port_w = px;
        let coded =
            network_power(&t, &plan, &q, Scheme::Nc, Layer::Bypass, NcMode::ZeroPad).unwrap();
        println!(
            "{px:>19.0}   {:>20.0}   {:>11.2}%",
            coded.total_w,
            100.0 * (1.0 - coded.total_w / non_bypass.total_w)
        );
    }
    println!(
        "\nthe coded scheme matches conventional bypass once the coded\n\
         transponder costs twice a conventional one ({} W here)",
        2.0 * p.transponder_w
    );
}
