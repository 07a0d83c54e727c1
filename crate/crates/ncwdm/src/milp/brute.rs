//! Exhaustive routing oracle for tiny instances.
//!
//! Enumerates one simple path per bidirectional pair (the reverse direction
//! pinned to the same path), evaluates total power through the power module,
//! and returns the global minimum. Guards against blow-up by bounding the
//! number of path combinations.

use std::collections::BTreeMap;

use super::ModelMode;
use crate::net_model::Topology;
use crate::power::{network_power, DeviceParams, Layer};
use crate::routing::plan_from_pair_paths;
use crate::traffic::DemandMatrix;
use crate::{Error, Result};

const COMBINATION_GUARD: u128 = 1_000_000;

/// All simple paths from `s` to `d`, in lexicographic node-sequence order.
pub fn all_simple_paths(t: &Topology, s: u32, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut stack = vec![s];
    let mut visited = vec![false; t.node_count()];
    visited[(s - 1) as usize] = true;
    dfs(t, d, &mut stack, &mut visited, &mut out);
    out
}

fn dfs(t: &Topology, d: u32, stack: &mut Vec<u32>, visited: &mut Vec<bool>, out: &mut Vec<Vec<u32>>) {
    let cur = *stack.last().unwrap();
    if cur == d {
        out.push(stack.clone());
        return;
    }
    for &(nb, _) in t.neighbors(cur) {
        if !visited[(nb - 1) as usize] {
            visited[(nb - 1) as usize] = true;
            stack.push(nb);
            dfs(t, d, stack, visited, out);
            stack.pop();
            visited[(nb - 1) as usize] = false;
        }
    }
}

/// Outcome of the exhaustive search.
#[derive(Debug, Clone)]
pub struct BruteForceResult {
    pub best_power_w: f64,
    /// chosen path per unordered pair (s < d)
    pub best_paths: BTreeMap<(u32, u32), Vec<u32>>,
    /// number of routing combinations evaluated
    pub evaluated: u64,
}

/// Globally optimal single-path routing for one regime, by exhaustive
/// enumeration. Fails when the combination count exceeds 10^6.
pub fn brute_force_optimum(
    t: &Topology,
    dm: &DemandMatrix,
    p: &DeviceParams,
    mode: ModelMode,
) -> Result<BruteForceResult> {
    let n = t.node_count() as u32;
    let mut pair_paths: Vec<((u32, u32), Vec<Vec<u32>>)> = Vec::new();
    let mut combinations: u128 = 1;
    for s in 1..=n {
        for d in (s + 1)..=n {
            let paths = all_simple_paths(t, s, d);
            if paths.is_empty() {
                return Err(Error::Connectivity(format!("no path between {s} and {d}")));
            }
            combinations = combinations.saturating_mul(paths.len() as u128);
            if combinations > COMBINATION_GUARD {
                return Err(Error::InstanceTooLarge(format!(
                    "more than {COMBINATION_GUARD} path combinations"
                )));
            }
            pair_paths.push(((s, d), paths));
        }
    }
    let (scheme, nc_mode) = mode.regime();

    let mut choice = vec![0usize; pair_paths.len()];
    let mut best: Option<(f64, BTreeMap<(u32, u32), Vec<u32>>)> = None;
    let mut evaluated = 0u64;
    loop {
        let lookup: BTreeMap<(u32, u32), &Vec<u32>> = pair_paths
            .iter()
            .zip(&choice)
            .map(|((pair, paths), &i)| (*pair, &paths[i]))
            .collect();
        let plan = plan_from_pair_paths(t, dm, |s, d| Ok(lookup[&(s, d)].clone()))?;
        let total = network_power(t, &plan, p, scheme, Layer::NonBypass, nc_mode)?.total_w;
        evaluated += 1;
        // strict improvement keeps the lexicographically first optimum
        if best.as_ref().map_or(true, |(w, _)| total < *w - 1e-9) {
            let chosen = pair_paths
                .iter()
                .zip(&choice)
                .map(|((pair, paths), &i)| (*pair, paths[i].clone()))
                .collect();
            best = Some((total, chosen));
        }
        // odometer increment
        let mut pos = pair_paths.len();
        loop {
            if pos == 0 {
                let (best_power_w, best_paths) = best.unwrap();
                return Ok(BruteForceResult { best_power_w, best_paths, evaluated });
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < pair_paths[pos].1.len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net_model::{build_regular, RegularKind};
    use crate::routing::route_all;
    use crate::traffic::equal_matrix;

    #[test]
    fn simple_path_enumeration_counts() {
        let mesh = build_regular(RegularKind::FullMesh, 4, 478.0, None).unwrap();
        assert_eq!(all_simple_paths(&mesh, 1, 2).len(), 5);
        let line = build_regular(RegularKind::Line, 4, 478.0, None).unwrap();
        assert_eq!(all_simple_paths(&line, 1, 4).len(), 1);
        let ring = build_regular(RegularKind::Ring, 5, 478.0, None).unwrap();
        assert_eq!(all_simple_paths(&ring, 1, 3).len(), 2);
    }

    #[test]
    fn full_mesh_optimum_is_direct_routing() {
        let t = build_regular(RegularKind::FullMesh, 4, 478.0, None).unwrap();
        let dm = equal_matrix(4, 60.0);
        let p = DeviceParams::table4();
        let conv = brute_force_optimum(&t, &dm, &p, ModelMode::Conventional).unwrap();
        let nc = brute_force_optimum(&t, &dm, &p, ModelMode::NcZeroPad).unwrap();
        assert!((conv.best_power_w - nc.best_power_w).abs() < 1e-6);
        for ((s, d), path) in &conv.best_paths {
            assert_eq!(path, &vec![*s, *d]);
        }
    }

    #[test]
    fn line_optimum_equals_heuristic() {
        let t = build_regular(RegularKind::Line, 4, 478.0, None).unwrap();
        let dm = equal_matrix(4, 80.0);
        let p = DeviceParams::table4();
        for mode in [ModelMode::Conventional, ModelMode::NcZeroPad, ModelMode::NcPartition] {
            let oracle = brute_force_optimum(&t, &dm, &p, mode).unwrap();
            let plan = route_all(&t, &dm).unwrap();
            let (scheme, nc_mode) = mode.regime();
            let heuristic =
                network_power(&t, &plan, &p, scheme, Layer::NonBypass, nc_mode).unwrap().total_w;
            assert!((oracle.best_power_w - heuristic).abs() < 1e-9);
        }
    }

    #[test]
    fn ring_heuristic_is_near_optimal() {
        let t = build_regular(RegularKind::Ring, 5, 478.0, None).unwrap();
        let p = DeviceParams::table4();
        for seed in 0..10u64 {
            let dm = crate::traffic::bidirectional_matrix(5, 0.05, seed);
            let oracle = brute_force_optimum(&t, &dm, &p, ModelMode::NcZeroPad).unwrap();
            let plan = route_all(&t, &dm).unwrap();
            let heuristic = network_power(
                &t,
                &plan,
                &p,
                crate::power::Scheme::Nc,
                Layer::NonBypass,
                crate::power::NcMode::ZeroPad,
            )
            .unwrap()
            .total_w;
            assert!(oracle.best_power_w <= heuristic + 1e-9);
            assert!(heuristic / oracle.best_power_w <= 1.02, "ratio {}", heuristic / oracle.best_power_w);
        }
    }

    #[test]
    fn guard_rejects_large_instances() {
        let t = build_regular(RegularKind::FullMesh, 6, 478.0, None).unwrap();
        let dm = equal_matrix(6, 40.0);
        let p = DeviceParams::table4();
        let err = brute_force_optimum(&t, &dm, &p, ModelMode::Conventional).unwrap_err();
        assert!(matches!(err, Error::InstanceTooLarge(_)));
    }
}
