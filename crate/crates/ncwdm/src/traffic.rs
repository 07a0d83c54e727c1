//! Time-of-day traffic profile and reproducible demand-matrix generation.
//!
//! Each zone follows the same 24-hour series, delayed by the zone's offset
//! from Eastern time (CST +1, MST +2, PST +3 hours). Per-pair demands are
//! drawn from a uniform law centred on the source zone's hourly average so
//! that ensemble means match the profile exactly while every draw stays in
//! the 10..=230 Gbps range.

use std::collections::BTreeMap;

use crate::net_model::{Topology, Zone};
use crate::{Error, Result};

/// Eastern-zone average demand per node pair (Gbps) for hours 0..23.
const EST_SERIES: [f64; 24] = [
    40.0, 35.0, 30.0, 30.0, 35.0, 25.0, 20.0, 30.0, 40.0, 80.0, 110.0, 100.0, 90.0, 90.0, 90.0,
    100.0, 110.0, 105.0, 100.0, 90.0, 80.0, 95.0, 120.0, 80.0,
];

fn zone_offset(zone: Zone) -> u8 {
    match zone {
        Zone::Est => 0,
        Zone::Cst => 1,
        Zone::Mst => 2,
        Zone::Pst => 3,
    }
}

/// 24-point average-demand series per zone.
#[derive(Debug, Clone, Copy)]
pub struct ZoneProfile;

impl ZoneProfile {
    /// Average demand per node pair for `zone` at `hour` (0..=23), in Gbps.
    pub fn gbps(&self, zone: Zone, hour: u8) -> f64 {
        assert!(hour < 24, "hour {hour} outside 0..=23");
        let shifted = (hour as usize + 24 - zone_offset(zone) as usize) % 24;
        EST_SERIES[shifted]
    }

    /// The full series for one zone.
    pub fn series(&self, zone: Zone) -> [f64; 24] {
        let mut out = [0.0; 24];
        for (h, slot) in out.iter_mut().enumerate() {
            *slot = self.gbps(zone, h as u8);
        }
        out
    }
}

/// The plotted average-traffic profile.
pub fn zone_profile() -> ZoneProfile {
    ZoneProfile
}

/// Ordered-pair traffic volumes (Gbps) for one time point.
#[derive(Debug, Clone)]
pub struct DemandMatrix {
    n: usize,
    /// lambda[(s-1)*n + (d-1)], 0.0 on the diagonal
    lambda: Vec<f64>,
    pub hour: u8,
    pub seed: u64,
}

impl DemandMatrix {
    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Demand volume from `s` to `d` in Gbps.
    pub fn gbps(&self, s: u32, d: u32) -> f64 {
        debug_assert!(s != d);
        self.lambda[(s as usize - 1) * self.n + (d as usize - 1)]
    }

    /// Total offered traffic over all ordered pairs.
    pub fn total_gbps(&self) -> f64 {
        self.lambda.iter().sum()
    }

    /// Mean over the N(N-1) ordered pairs.
    pub fn mean_gbps(&self) -> f64 {
        self.total_gbps() / (self.n * (self.n - 1)) as f64
    }

    /// Largest single entry.
    pub fn max_gbps(&self) -> f64 {
        self.lambda.iter().copied().fold(0.0, f64::max)
    }

    /// Every entry multiplied by `factor`; used to project the hourly profile
    /// onto higher-capacity equipment generations.
    pub fn scaled(&self, factor: f64) -> DemandMatrix {
        assert!(factor > 0.0, "scale factor {factor} must be positive");
        DemandMatrix {
            n: self.n,
            lambda: self.lambda.iter().map(|v| v * factor).collect(),
            hour: self.hour,
            seed: self.seed,
        }
    }

    /// Ordered pairs with their volumes, in (s, d) order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32, f64)> + '_ {
        let n = self.n as u32;
        (1..=n).flat_map(move |s| {
            (1..=n)
                .filter(move |&d| d != s)
                .map(move |d| (s, d, self.gbps(s, d)))
        })
    }

    /// Builds a matrix from explicit entries; every ordered pair must appear.
    pub fn from_entries(n: usize, entries: &BTreeMap<(u32, u32), f64>) -> Result<Self> {
        let mut lambda = vec![0.0; n * n];
        let mut count = 0usize;
        for (&(s, d), &v) in entries {
            if s == d || s < 1 || d < 1 || s as usize > n || d as usize > n {
                return Err(Error::Parameter(format!("bad demand pair ({s}, {d})")));
            }
            if !v.is_finite() || v < 0.0 {
                return Err(Error::Parameter(format!("bad demand volume {v} for ({s}, {d})")));
            }
            lambda[(s as usize - 1) * n + (d as usize - 1)] = v;
            count += 1;
        }
        if count != n * (n - 1) {
            return Err(Error::Parameter(format!(
                "demand matrix incomplete: {count} of {} ordered pairs",
                n * (n - 1)
            )));
        }
        Ok(DemandMatrix { n, lambda, hour: 0, seed: 0 })
    }

    /// CSV with header `s,d,gbps`, one row per ordered pair.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("s,d,gbps\n");
        for (s, d, v) in self.iter() {
            out.push_str(&format!("{s},{d},{v:.6}\n"));
        }
        out
    }

    /// Parses the demand CSV, validating completeness and value ranges.
    pub fn from_csv(text: &str, n: usize) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (i == 0 && line.eq_ignore_ascii_case("s,d,gbps")) {
                continue;
            }
            let mut cols = line.split(',');
            let parse = |c: Option<&str>| -> Result<f64> {
                c.and_then(|v| v.trim().parse::<f64>().ok())
                    .ok_or_else(|| Error::Io(format!("demand csv line {}: {line}", i + 1)))
            };
            let s = parse(cols.next())? as u32;
            let d = parse(cols.next())? as u32;
            let v = parse(cols.next())?;
            if entries.insert((s, d), v).is_some() {
                return Err(Error::Io(format!("demand csv line {}: duplicate pair", i + 1)));
            }
        }
        Self::from_entries(n, &entries)
    }
}

/// splitmix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// One uniform draw in [0, 1) keyed by (seed, s, d, hour); independent of
/// evaluation order and thread count.
fn keyed_uniform(seed: u64, s: u32, d: u32, hour: u8) -> f64 {
    let mut h = mix(seed ^ 0x6e63_7764_6d31_u64);
    h = mix(h ^ (s as u64));
    h = mix(h ^ ((d as u64) << 20));
    h = mix(h ^ ((hour as u64) << 40));
    (h >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Draws a demand matrix for one hour.
///
/// Each entry is uniform on [max(10, 2u-230), min(230, 2u-10)] where u is the
/// source zone's profile value, so the mean equals the profile exactly.
pub fn generate_matrix(t: &Topology, hour: u8, seed: u64) -> DemandMatrix {
    assert!(hour < 24, "hour {hour} outside 0..=23");
    let profile = zone_profile();
    let n = t.node_count();
    let mut lambda = vec![0.0; n * n];
    for (s, d) in t.ordered_pairs() {
        let mu = profile.gbps(t.zone(s), hour);
        let lo = (2.0 * mu - 230.0).max(10.0);
        let hi = (2.0 * mu - 10.0).min(230.0);
        let u = keyed_uniform(seed, s, d, hour);
        lambda[(s as usize - 1) * n + (d as usize - 1)] = lo + u * (hi - lo);
    }
    DemandMatrix { n, lambda, hour, seed }
}

/// Draws one bidirectional volume per unordered pair, uniform on
/// [10, 230] Gbps, with the reverse direction scaled by a factor uniform in
/// [1 - imbalance, 1 + imbalance] and clamped back into range.
///
/// With `imbalance = 0` the matrix is symmetric, matching the analysis that
/// treats a demand as a single bidirectional triple (s, d, volume).
pub fn bidirectional_matrix(n: usize, imbalance: f64, seed: u64) -> DemandMatrix {
    assert!((0.0..1.0).contains(&imbalance), "imbalance {imbalance} outside [0, 1)");
    let mut lambda = vec![0.0; n * n];
    for s in 1..=n as u32 {
        for d in (s + 1)..=n as u32 {
            let base = 10.0 + 220.0 * keyed_uniform(seed, s, d, 24);
            let jitter = 1.0 + imbalance * (2.0 * keyed_uniform(seed, s, d, 25) - 1.0);
            lambda[(s as usize - 1) * n + (d as usize - 1)] = base;
            lambda[(d as usize - 1) * n + (s as usize - 1)] =
                (base * jitter).clamp(10.0, 230.0);
        }
    }
    DemandMatrix { n, lambda, hour: 0, seed }
}

/// All ordered pairs carry the same volume.
pub fn equal_matrix(n: usize, gbps: f64) -> DemandMatrix {
    assert!(gbps >= 0.0, "negative demand {gbps}");
    let mut lambda = vec![gbps; n * n];
    for i in 0..n {
        lambda[i * n + i] = 0.0;
    }
    DemandMatrix { n, lambda, hour: 0, seed: 0 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net_model::nsfnet;

    #[test]
    fn profile_plotted_points() {
        let p = zone_profile();
        assert_eq!(p.gbps(Zone::Est, 22), 120.0);
        assert_eq!(p.gbps(Zone::Est, 6), 20.0);
        assert_eq!(p.gbps(Zone::Pst, 1), 120.0);
        assert_eq!(p.gbps(Zone::Cst, 23), 120.0);
        assert_eq!(p.gbps(Zone::Mst, 0), 120.0);
    }

    #[test]
    fn profile_is_delayed_est_series() {
        let p = zone_profile();
        for h in 0..24u8 {
            assert_eq!(p.gbps(Zone::Cst, h), p.gbps(Zone::Est, (h + 23) % 24));
            assert_eq!(p.gbps(Zone::Mst, h), p.gbps(Zone::Est, (h + 22) % 24));
            assert_eq!(p.gbps(Zone::Pst, h), p.gbps(Zone::Est, (h + 21) % 24));
            for z in Zone::ALL {
                let v = p.gbps(z, h);
                assert!((20.0..=120.0).contains(&v));
            }
        }
    }

    #[test]
    fn generator_is_deterministic_and_in_range() {
        let t = nsfnet();
        let a = generate_matrix(&t, 22, 7);
        let b = generate_matrix(&t, 22, 7);
        for (s, d) in t.ordered_pairs() {
            assert_eq!(a.gbps(s, d), b.gbps(s, d));
            assert!(a.gbps(s, d) >= 10.0 && a.gbps(s, d) <= 230.0);
        }
        let c = generate_matrix(&t, 22, 8);
        assert!(t.ordered_pairs().any(|(s, d)| a.gbps(s, d) != c.gbps(s, d)));
    }

    #[test]
    fn ensemble_means_track_profile() {
        let t = nsfnet();
        // EST-source pairs at hour 22 average 120 Gbps over many seeds
        let mut sum = 0.0;
        let mut count = 0usize;
        for seed in 0..1000u64 {
            let dm = generate_matrix(&t, 22, seed);
            for (s, d) in t.ordered_pairs() {
                if t.zone(s) == Zone::Est {
                    sum += dm.gbps(s, d);
                    count += 1;
                }
            }
        }
        let mean = sum / count as f64;
        assert!((mean - 120.0).abs() <= 120.0 * 0.02, "EST mean {mean}");
    }

    #[test]
    fn equal_matrix_totals() {
        let m = equal_matrix(3, 40.0);
        assert_eq!(m.total_gbps(), 240.0);
        let zero = equal_matrix(14, 0.0);
        assert_eq!(zero.total_gbps(), 0.0);
        let full = equal_matrix(14, 120.0);
        assert!((full.total_gbps() - 21840.0).abs() < 1e-9);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            /// Every generated entry stays in the 10..=230 Gbps band and the
            /// draw depends only on (seed, s, d, hour).
            #[test]
            fn generated_entries_in_range(seed in any::<u64>(), hour in 0u8..24) {
                let t = nsfnet();
                let dm = generate_matrix(&t, hour, seed);
                let again = generate_matrix(&t, hour, seed);
                for (s, d) in t.ordered_pairs() {
                    let v = dm.gbps(s, d);
                    prop_assert!((10.0..=230.0).contains(&v));
                    prop_assert_eq!(v, again.gbps(s, d));
                }
            }
        }
    }

    #[test]
    fn csv_round_trip() {
        let t = nsfnet();
        let dm = generate_matrix(&t, 10, 3);
        let text = dm.to_csv();
        let back = DemandMatrix::from_csv(&text, 14).unwrap();
        for (s, d) in t.ordered_pairs() {
            assert!((dm.gbps(s, d) - back.gbps(s, d)).abs() < 1e-5);
        }
        // incomplete file rejected
        let partial = "s,d,gbps\n1,2,50.0\n";
        assert!(DemandMatrix::from_csv(partial, 14).is_err());
    }
}
