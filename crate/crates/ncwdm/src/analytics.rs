//! Closed-form power expressions, savings formulas, asymptotic limits, and
//! power bounds for the coded network.
//!
//! Everything here uses the reduced accounting that keeps only the dominant
//! devices, router ports and transponders, with one transponder paired to
//! each port unit. Totals from the full evaluator therefore sit above these
//! values by the EDFA/switch/mux terms; the comparison helpers strip those
//! before any sandwich check.

use crate::net_model::{hop_metrics, RegularKind, Topology};
use crate::power::{DeviceParams, NcMode};
use crate::routing::PairFlow;
use crate::traffic::DemandMatrix;
use crate::Result;

/// Exact rational number for hop-count formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    num: i128,
    den: i128,
}

impl Ratio {
    pub fn new(num: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i128;
        let sign = if den < 0 { -1 } else { 1 };
        Ratio { num: sign * num / g, den: sign * den / g }
    }

    pub fn num(&self) -> i128 {
        self.num
    }

    pub fn den(&self) -> i128 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl std::fmt::Display for Ratio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    if a == 0 {
        1
    } else {
        a
    }
}

/// Single-hop power of a demand: (Pp + Pt) * lambda / B.
pub fn single_hop_power(p: &DeviceParams, lambda_gbps: f64) -> f64 {
    (p.router_port_w + p.transponder_w) * lambda_gbps / p.wavelength_gbps
}

/// Conventional network power under equal demands: P_lambda * h * N(N-1).
pub fn conventional_power_closed(n: u32, avg_hops: f64, p: &DeviceParams, lambda_gbps: f64) -> f64 {
    single_hop_power(p, lambda_gbps) * avg_hops * (n as f64) * (n as f64 - 1.0)
}

/// Coded network power under equal demands:
/// P_lambda * N(N-1) * (1 + r(h-1)/2).
pub fn nc_power_equal_closed(
    n: u32,
    avg_hops: f64,
    p: &DeviceParams,
    lambda_gbps: f64,
    r: f64,
) -> f64 {
    single_hop_power(p, lambda_gbps)
        * (n as f64)
        * (n as f64 - 1.0)
        * (1.0 + r * (avg_hops - 1.0) / 2.0)
}

/// Fractional power saving of coding under equal demands:
/// 1 - (1 + 0.5 r (h-1)) / h.
pub fn savings_equal(avg_hops: f64, r: f64) -> f64 {
    1.0 - (1.0 + 0.5 * r * (avg_hops - 1.0)) / avg_hops
}

/// Exact average hop count of a regular topology with `n` nodes.
pub fn avg_hop_formula(kind: RegularKind, n: u32) -> Ratio {
    let n = n as i128;
    match kind {
        RegularKind::FullMesh => Ratio::new(1, 1),
        RegularKind::Star => Ratio::new(2 * (n - 1), n),
        RegularKind::Line => Ratio::new(n + 1, 3),
        RegularKind::Ring => {
            if n % 2 == 1 {
                Ratio::new(n + 1, 4)
            } else {
                Ratio::new(n * n, 4 * (n - 1))
            }
        }
    }
}

/// Limit of `savings_equal(avg_hop_formula(kind, n), r)` as n grows.
pub fn asymptotic_savings(kind: RegularKind, r: f64) -> f64 {
    match kind {
        RegularKind::FullMesh => 0.0,
        RegularKind::Star => (1.0 - r / 2.0) / 2.0,
        RegularKind::Ring | RegularKind::Line => 1.0 - r / 2.0,
    }
}

/// Reduced (router + transponder) conventional power for routed pairs.
pub fn reduced_conventional(pairs: &[PairFlow], p: &DeviceParams) -> f64 {
    let unit = (p.router_port_w + p.transponder_w) / p.wavelength_gbps;
    unit * pairs
        .iter()
        .map(|f| (f.fwd_gbps + f.rev_gbps) * f.hops as f64)
        .sum::<f64>()
}

/// Reduced (router + transponder) coded power for routed pairs.
///
/// Zero padding charges the larger flow of every pair at both ends and at
/// every intermediate node; partitioning codes the smaller flow and routes
/// the difference conventionally.
pub fn reduced_nc(pairs: &[PairFlow], p: &DeviceParams, r: f64, mode: NcMode) -> f64 {
    let unit = (p.router_port_w + p.transponder_w) / p.wavelength_gbps;
    unit * pairs
        .iter()
        .map(|f| {
            let max = f.fwd_gbps.max(f.rev_gbps);
            let min = f.fwd_gbps.min(f.rev_gbps);
            let interior = f.hops as f64 - 1.0;
            match mode {
                NcMode::ZeroPad => 2.0 * max + r * max * interior,
                NcMode::Partition => {
                    (f.fwd_gbps + f.rev_gbps) + interior * (max + (r - 1.0) * min)
                }
            }
        })
        .sum::<f64>()
}

/// Analytic lower/upper bounds on the reduced coded power.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundSet {
    pub lower_full_mesh_w: f64,
    pub lower_equal_traffic_w: f64,
    pub upper_max_traffic_w: f64,
    pub upper_max_hop_w: f64,
    pub upper_joint_w: f64,
}

impl BoundSet {
    /// Internal ordering that must hold for every input.
    pub fn is_consistent(&self) -> bool {
        self.lower_full_mesh_w <= self.lower_equal_traffic_w + 1e-9
            && self.lower_equal_traffic_w <= self.upper_max_hop_w + 1e-9
            && self.upper_max_hop_w <= self.upper_joint_w + 1e-9
            && self.upper_max_traffic_w <= self.upper_joint_w + 1e-9
    }

    /// True when `value` lies between every lower and upper bound.
    pub fn sandwiches(&self, value: f64) -> bool {
        let tol = 1e-9 * value.abs().max(1.0);
        self.lower_full_mesh_w <= value + tol
            && self.lower_equal_traffic_w <= value + tol
            && value <= self.upper_max_traffic_w + tol
            && value <= self.upper_max_hop_w + tol
            && value <= self.upper_joint_w + tol
    }
}

struct BoundInputs {
    n: f64,
    avg_hops: f64,
    max_hops: f64,
    mean: f64,
    max: f64,
    unit: f64,
}

fn bound_inputs(t: &Topology, dm: &DemandMatrix, p: &DeviceParams) -> Result<BoundInputs> {
    let metrics = hop_metrics(t)?;
    Ok(BoundInputs {
        n: t.node_count() as f64,
        avg_hops: metrics.avg(),
        max_hops: metrics.max() as f64,
        mean: dm.mean_gbps(),
        max: dm.max_gbps(),
        unit: (p.router_port_w + p.transponder_w) / p.wavelength_gbps,
    })
}

/// Bounds for the zero-padding scheme.
pub fn bounds_zero_pad(
    t: &Topology,
    dm: &DemandMatrix,
    p: &DeviceParams,
    r: f64,
) -> Result<BoundSet> {
    let b = bound_inputs(t, dm, p)?;
    let pairs_n = b.n * (b.n - 1.0);
    // g_z: worst deviation above the network mean per unordered pair
    let mut gz_sum = 0.0;
    for s in 1..=t.node_count() as u32 {
        for d in (s + 1)..=t.node_count() as u32 {
            gz_sum += (dm.gbps(s, d) - b.mean).max(dm.gbps(d, s) - b.mean);
        }
    }
    let weight_avg = 1.0 + r * (b.avg_hops - 1.0) / 2.0;
    let weight_max = 1.0 + r * (b.max_hops - 1.0) / 2.0;
    Ok(BoundSet {
        lower_full_mesh_w: b.unit * b.mean * pairs_n,
        lower_equal_traffic_w: b.unit * b.mean * pairs_n * weight_avg,
        upper_max_traffic_w: b.unit * b.max * pairs_n * weight_avg,
        upper_max_hop_w: b.unit * b.mean * pairs_n * weight_avg
            + 2.0 * b.unit * weight_max * gz_sum,
        upper_joint_w: b.unit * b.max * pairs_n * weight_max,
    })
}

/// Bounds for the partitioning scheme.
pub fn bounds_partition(
    t: &Topology,
    dm: &DemandMatrix,
    p: &DeviceParams,
    r: f64,
) -> Result<BoundSet> {
    let b = bound_inputs(t, dm, p)?;
    let pairs_n = b.n * (b.n - 1.0);
    // g_p: traffic imbalance cost per unordered pair
    let mut gp_sum = 0.0;
    for s in 1..=t.node_count() as u32 {
        for d in (s + 1)..=t.node_count() as u32 {
            let (fwd, rev) = (dm.gbps(s, d), dm.gbps(d, s));
            gp_sum += fwd.max(rev) + (r - 1.0) * fwd.min(rev);
        }
    }
    let flat = b.unit * b.mean * pairs_n;
    Ok(BoundSet {
        lower_full_mesh_w: flat,
        lower_equal_traffic_w: flat * (1.0 + r * (b.avg_hops - 1.0) / 2.0),
        upper_max_traffic_w: b.unit
            * pairs_n
            * (b.mean + r * b.max * (b.avg_hops - 1.0) / 2.0),
        upper_max_hop_w: flat + b.unit * (b.max_hops - 1.0) * gp_sum,
        upper_joint_w: b.unit * pairs_n * (b.mean + r * b.max * (b.max_hops - 1.0) / 2.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net_model::{build_regular, nsfnet, usnet};
    use crate::routing::route_all;
    use crate::traffic::{equal_matrix, generate_matrix};

    #[test]
    fn single_hop_values() {
        let p = DeviceParams::table4();
        assert!((single_hop_power(&p, 40.0) - 1073.0).abs() < 1e-12);
        assert_eq!(single_hop_power(&p, 0.0), 0.0);
        assert!((single_hop_power(&p, 1.0) - 26.825).abs() < 1e-12);
    }

    #[test]
    fn nsfnet_closed_form_slopes() {
        let p = DeviceParams::table4();
        let conv = conventional_power_closed(14, 2.17, &p, 1.0);
        assert!((conv - 10594.2655).abs() < 0.5, "conventional slope {conv}");
        let nc = nc_power_equal_closed(14, 2.17, &p, 1.0, 1.1);
        assert!((nc - 8023.8135).abs() < 0.5, "nc slope {nc}");
        assert!((conventional_power_closed(14, 2.17, &p, 120.0) - 1_271_312.0).abs() < 60.0);
        // degenerate cases
        assert!((conventional_power_closed(2, 1.0, &p, 40.0) - 2.0 * 1073.0).abs() < 1e-9);
        assert!(
            (nc_power_equal_closed(14, 1.0, &p, 40.0, 1.1)
                - conventional_power_closed(14, 1.0, &p, 40.0))
            .abs()
                < 1e-9
        );
        let free_coding = nc_power_equal_closed(14, 3.0, &p, 40.0, 0.0);
        assert!((free_coding - single_hop_power(&p, 40.0) * 182.0).abs() < 1e-9);
    }

    #[test]
    fn savings_formula_points() {
        assert!((savings_equal(2.0, 1.1) - 0.225).abs() < 1e-12);
        assert_eq!(savings_equal(1.0, 1.7), 0.0);
        assert!((savings_equal(5.0, 1.1) - 0.36).abs() < 1e-12);
    }

    #[test]
    fn hop_formula_values() {
        assert_eq!(avg_hop_formula(RegularKind::Star, 14), Ratio::new(13, 7));
        assert_eq!(avg_hop_formula(RegularKind::Line, 14), Ratio::new(5, 1));
        assert_eq!(avg_hop_formula(RegularKind::Ring, 14), Ratio::new(49, 13));
        assert!((avg_hop_formula(RegularKind::Ring, 14).to_f64() - 3.769).abs() < 1e-3);
    }

    #[test]
    fn asymptotic_limits() {
        assert!((asymptotic_savings(RegularKind::Star, 1.1) - 0.225).abs() < 1e-12);
        assert!((asymptotic_savings(RegularKind::Line, 1.1) - 0.45).abs() < 1e-12);
        assert!((asymptotic_savings(RegularKind::Ring, 1.0) - 0.5).abs() < 1e-12);
        assert!((asymptotic_savings(RegularKind::Star, 1.0) - 0.25).abs() < 1e-12);
        // approached by the finite formulas
        for kind in [RegularKind::Ring, RegularKind::Line, RegularKind::Star] {
            for r in [1.0, 1.1] {
                let finite = savings_equal(avg_hop_formula(kind, 10_000_000).to_f64(), r);
                assert!((finite - asymptotic_savings(kind, r)).abs() < 1e-4);
            }
        }
    }

    #[test]
    fn savings_monotonicity() {
        for r in [1.0, 1.3, 1.9] {
            let mut prev = savings_equal(1.0, r);
            for k in 1..40 {
                let h = 1.0 + k as f64 * 0.25;
                let s = savings_equal(h, r);
                assert!(s > prev, "not increasing in h at h={h}, r={r}");
                prev = s;
            }
        }
        let mut prev = savings_equal(3.0, 0.5);
        for k in 1..30 {
            let r = 0.5 + k as f64 * 0.05;
            let s = savings_equal(3.0, r);
            assert!(s < prev, "not decreasing in r at r={r}");
            prev = s;
        }
    }

    #[test]
    fn equal_matrix_collapses_bounds_to_closed_form() {
        let t = nsfnet();
        let p = DeviceParams::table4();
        let dm = equal_matrix(14, 80.0);
        let h = crate::net_model::hop_metrics(&t).unwrap().avg();
        let closed = nc_power_equal_closed(14, h, &p, 80.0, 1.1);
        let zp = bounds_zero_pad(&t, &dm, &p, 1.1).unwrap();
        assert!((zp.lower_equal_traffic_w - closed).abs() < 1e-6);
        assert!((zp.upper_max_hop_w - closed).abs() < 1e-6);
        assert!((zp.upper_max_traffic_w - closed).abs() < 1e-6);
        let pt = bounds_partition(&t, &dm, &p, 1.1).unwrap();
        assert!((pt.lower_equal_traffic_w - closed).abs() < 1e-6);
        assert!((pt.upper_max_traffic_w - closed).abs() < 1e-6);
        // reduced evaluators agree with the closed form on equal traffic
        let plan = route_all(&t, &dm).unwrap();
        for mode in [NcMode::ZeroPad, NcMode::Partition] {
            let reduced = reduced_nc(&plan.pairs, &p, 1.1, mode);
            assert!((reduced - closed).abs() < 1e-6);
        }
        let conv = reduced_conventional(&plan.pairs, &p);
        assert!((conv - conventional_power_closed(14, h, &p, 80.0)).abs() <  1e-6);
    }

    #[test]
    fn sandwich_on_random_matrices() {
        let p = DeviceParams::table4();
        for t in [nsfnet(), usnet()] {
            for seed in 0..20u64 {
                let hour = (seed % 12) as u8 * 2;
                let dm = generate_matrix(&t, hour, seed);
                let plan = route_all(&t, &dm).unwrap();
                for (mode, bounds) in [
                    (NcMode::ZeroPad, bounds_zero_pad(&t, &dm, &p, 1.1).unwrap()),
                    (NcMode::Partition, bounds_partition(&t, &dm, &p, 1.1).unwrap()),
                ] {
                    assert!(bounds.is_consistent());
                    let value = reduced_nc(&plan.pairs, &p, 1.1, mode);
                    assert!(
                        bounds.sandwiches(value),
                        "{} {:?} value {value} bounds {bounds:?}",
                        mode.name(),
                        t.node_count()
                    );
                }
            }
        }
    }

    #[test]
    fn fully_asymmetric_partition_matches_conventional() {
        let t = build_regular(RegularKind::Line, 4, 478.0, None).unwrap();
        let mut entries = std::collections::BTreeMap::new();
        for (s, d) in t.ordered_pairs() {
            entries.insert((s, d), if s < d { 150.0 } else { 0.0 });
        }
        let dm = crate::traffic::DemandMatrix::from_entries(4, &entries).unwrap();
        let plan = route_all(&t, &dm).unwrap();
        let p = DeviceParams::table4();
        let nc = reduced_nc(&plan.pairs, &p, 1.1, NcMode::Partition);
        let conv = reduced_conventional(&plan.pairs, &p);
        assert!((nc - conv).abs() < 1e-9);
    }

    #[test]
    fn ratio_arithmetic() {
        let r = Ratio::new(196, 52);
        assert_eq!((r.num(), r.den()), (49, 13));
        assert_eq!(Ratio::new(-6, -4), Ratio::new(3, 2));
        assert_eq!(Ratio::new(5, -10), Ratio::new(-1, 2));
        assert_eq!(format!("{}", Ratio::new(5, 1)), "5");
        assert_eq!(format!("{}", Ratio::new(49, 13)), "49/13");
    }
}
