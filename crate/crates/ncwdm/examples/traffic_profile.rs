//! The time-of-day demand profile and the reproducible per-pair generator:
//! zone series shifted by time-zone offsets, demand ranges, and ensemble
//! calibration against the profile.
//!
//!     cargo run --example traffic_profile

use ncwdm::net_model::{nsfnet, Zone};
use ncwdm::traffic::{generate_matrix, zone_profile};

fn main() {
    let profile = zone_profile();
    println!("average demand per node pair (Gbps) by hour:");
    print!("hour ");
    for h in 0..24 {
        print!("{h:>4}");
    }
    println!();
    for zone in Zone::ALL {
        print!("{zone:<4} ");
        for h in 0..24 {
            print!("{:>4.0}", profile.gbps(zone, h));
        }
        println!();
    }

    let t = nsfnet();
    let dm = generate_matrix(&t, 22, 7);
    println!(
        "\nNSFNET hour 22, seed 7: {} pairs, {:.1} Gbps total, range {:.1}..{:.1}",
        t.node_count() * (t.node_count() - 1),
        dm.total_gbps(),
        dm.iter().map(|(_, _, v)| v).fold(f64::INFINITY, f64::min),
        dm.max_gbps()
    );

    // empirical zone means converge to the profile across seeds
    println!("\nEST-source mean at hour 22 (profile: 120 Gbps):");
    for seeds in [1u64, 10, 100, 1000] {
        let mut sum = 0.0;
        let mut count = 0usize;
        for seed in 0..seeds {
            let dm = generate_matrix(&t, 22, seed);
            for (s, d) in t.ordered_pairs() {
                if t.zone(s) == Zone::Est {
                    sum += dm.gbps(s, d);
                    count += 1;
                }
            }
        }
        println!("  over {seeds:>4} seeds: {:.2} Gbps", sum / count as f64);
    }
}
