//! Closed-form power and savings expressions: per-Gbps slopes on the 14-node
//! backbone, exact hop-count formulas, and how the savings approach their
//! asymptotic limits as regular networks grow.
//!
//!     cargo run --example closed_forms

use ncwdm::analytics::{
    asymptotic_savings, avg_hop_formula, conventional_power_closed, nc_power_equal_closed,
    savings_equal,
};
use ncwdm::net_model::RegularKind;
use ncwdm::power::DeviceParams;

fn main() {
    let p = DeviceParams::table4();
    println!(
        "equal-demand power per Gbps, 14 nodes at 2.17 average hops:\n\
         conventional {:.4} W/Gbps, coded (r = 1.1) {:.4} W/Gbps\n",
        conventional_power_closed(14, 2.17, &p, 1.0),
        nc_power_equal_closed(14, 2.17, &p, 1.0, 1.1)
    );

    println!("exact average hop counts:");
    for kind in [RegularKind::Line, RegularKind::Ring, RegularKind::Star, RegularKind::FullMesh] {
        print!("  {:<9}", kind.name());
        for n in [4u32, 8, 14, 24] {
            let h = avg_hop_formula(kind, n);
            print!("  n={n}: {h} ({:.3})", h.to_f64());
        }
        println!();
    }

    println!("\ncoding savings vs network size (r = 1.1):");
    println!("{:>6}  {:>7}  {:>7}  {:>7}", "n", "line", "ring", "star");
    for n in [4u32, 8, 14, 30, 100, 1000, 1_000_000] {
        print!("{n:>6}");
        for kind in [RegularKind::Line, RegularKind::Ring, RegularKind::Star] {
            let s = savings_equal(avg_hop_formula(kind, n).to_f64(), 1.1);
            print!("  {:>6.2}%", 100.0 * s);
        }
        println!();
    }
    println!("{:>6}  {:>6.2}%  {:>6.2}%  {:>6.2}%", "limit",
        100.0 * asymptotic_savings(RegularKind::Line, 1.1),
        100.0 * asymptotic_savings(RegularKind::Ring, 1.1),
        100.0 * asymptotic_savings(RegularKind::Star, 1.1));
}
