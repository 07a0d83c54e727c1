//! Builds the optimization model for a tiny ring, exports it as an LP file,
//! verifies the minimum-hop plan as a solution, and compares it against the
//! exhaustive routing oracle.
//!
//!     cargo run --example milp_roundtrip

use ncwdm::milp::{
    brute_force_optimum, build_model, export_model, import_solution, plan_to_assignment,
    solution_text, ModelMode,
};
use ncwdm::power::{DeviceParams, Layer};
use ncwdm::routing::route_all;
use ncwdm::traffic::bidirectional_matrix;

fn main() {
    let t = ncwdm::net_model::build_regular(ncwdm::net_model::RegularKind::Ring, 5, 478.0, None)
        .expect("ring");
    let dm = bidirectional_matrix(5, 0.05, 42);
    let p = DeviceParams::table4();
    let dir = std::env::temp_dir().join("ncwdm_milp");
    std::fs::create_dir_all(&dir).expect("temp dir");

    for mode in [ModelMode::Conventional, ModelMode::NcZeroPad, ModelMode::NcPartition] {
        let ir = build_model(&t, &dm, &p, mode, Layer::NonBypass).expect("model");
        let lp_path = dir.join(format!("ring5_{}.lp", mode.name()));
        export_model(&ir, &lp_path).expect("export");

        // the minimum-hop plan, converted to a variable assignment, must
        // satisfy every constraint
        let plan = route_all(&t, &dm).expect("routing");
        let values = plan_to_assignment(&ir, &t, &dm, &plan, &p, mode);
        let sol_path = dir.join(format!("ring5_{}.sol", mode.name()));
        std::fs::write(&sol_path, solution_text(&ir, &values)).expect("write solution");
        let verified = import_solution(&ir, &sol_path).expect("heuristic plan is feasible");

        let oracle = brute_force_optimum(&t, &dm, &p, mode).expect("oracle");
        println!(
            "{:<13} {} vars, {} constraints | heuristic {:>9.1} W | optimum {:>9.1} W | gap {:.3}%",
            mode.name(),
            ir.variables.len(),
            ir.constraints.len(),
            verified.recomputed_objective,
            oracle.best_power_w,
            100.0 * (verified.recomputed_objective / oracle.best_power_w - 1.0),
        );
        println!("  model {} / solution {}", lp_path.display(), sol_path.display());
    }
}
