//! Batch pipeline commands: topology -> traffic -> routing -> power /
//! analytics / optimization model, emitting CSV and JSON artifacts.
//!
//! The `ncwdm` binary parses flags and dispatches here; library users and the
//! crate examples call these functions directly.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::analytics::{
    self, avg_hop_formula, bounds_partition, bounds_zero_pad, reduced_nc, savings_equal,
};
use crate::milp::{self, ModelMode};
use crate::net_model::{self, build_regular, hop_metrics, RegularKind, Topology};
use crate::power::{network_power, DeviceParams, Layer, NcMode, Scheme};
use crate::routing::{check_flow_conservation, route_all, simulate_coded_exchange};
use crate::traffic::{generate_matrix, zone_profile};
use crate::{Error, Result};

/// Where the topology comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum TopologySpec {
    Nsfnet,
    Usnet,
    NsfnetRing,
    NsfnetLine,
    NsfnetStar,
    NsfnetMesh,
    Regular { kind: RegularKind, n: u32, center: Option<u32> },
    File(PathBuf),
}

impl TopologySpec {
    /// Parses `nsfnet`, `usnet`, `nsfnet-ring|line|star|mesh`,
    /// `ring:N`, `line:N`, `star:N:CENTER`, `mesh:N`, or a JSON file path.
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "nsfnet" => return Ok(TopologySpec::Nsfnet),
            "usnet" => return Ok(TopologySpec::Usnet),
            "nsfnet-ring" => return Ok(TopologySpec::NsfnetRing),
            "nsfnet-line" => return Ok(TopologySpec::NsfnetLine),
            "nsfnet-star" => return Ok(TopologySpec::NsfnetStar),
            "nsfnet-mesh" => return Ok(TopologySpec::NsfnetMesh),
            _ => {}
        }
        let mut parts = text.split(':');
        let head = parts.next().unwrap_or_default();
        let kind = match head {
            "ring" => Some(RegularKind::Ring),
            "line" => Some(RegularKind::Line),
            "star" => Some(RegularKind::Star),
            "mesh" | "full_mesh" => Some(RegularKind::FullMesh),
            _ => None,
        };
        if let Some(kind) = kind {
            let n: u32 = parts
                .next()
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::Parameter(format!("'{text}': expected {head}:N")))?;
            let center = match parts.next() {
                Some(v) => Some(
                    v.parse()
                        .map_err(|_| Error::Parameter(format!("'{text}': bad center")))?,
                ),
                None => None,
            };
            return Ok(TopologySpec::Regular { kind, n, center });
        }
        if text.ends_with(".json") {
            return Ok(TopologySpec::File(PathBuf::from(text)));
        }
        Err(Error::Parameter(format!("unknown topology '{text}'")))
    }

    pub fn build(&self) -> Result<Topology> {
        match self {
            TopologySpec::Nsfnet => Ok(net_model::nsfnet()),
            TopologySpec::Usnet => Ok(net_model::usnet()),
            TopologySpec::NsfnetRing => Ok(net_model::nsfnet_ring()),
            TopologySpec::NsfnetLine => Ok(net_model::nsfnet_line()),
            TopologySpec::NsfnetStar => Ok(net_model::nsfnet_star()),
            TopologySpec::NsfnetMesh => Ok(net_model::nsfnet_full_mesh()),
            TopologySpec::Regular { kind, n, center } => {
                let center = if *kind == RegularKind::Star {
                    Some(center.unwrap_or(1))
                } else {
                    *center
                };
                build_regular(*kind, *n, net_model::DEFAULT_REGULAR_LINK_KM, center)
            }
            TopologySpec::File(path) => Topology::from_path(path),
        }
    }
}

/// Device-parameter preset selection.
pub fn parse_params(text: &str) -> Result<DeviceParams> {
    match text {
        "table4" => Ok(DeviceParams::table4()),
        "table5_greentouch" => Ok(DeviceParams::table5_greentouch()),
        path if path.ends_with(".json") => {
            let body = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
            DeviceParams::from_json_str(&body)
        }
        other => Err(Error::Parameter(format!("unknown params preset '{other}'"))),
    }
}

pub fn parse_scheme(text: &str) -> Result<Scheme> {
    match text {
        "conventional" => Ok(Scheme::Conventional),
        "nc" => Ok(Scheme::Nc),
        other => Err(Error::Parameter(format!("unknown scheme '{other}'"))),
    }
}

pub fn parse_layer(text: &str) -> Result<Layer> {
    match text {
        "non_bypass" => Ok(Layer::NonBypass),
        "bypass" => Ok(Layer::Bypass),
        other => Err(Error::Parameter(format!("unknown layer '{other}'"))),
    }
}

pub fn parse_mode(text: &str) -> Result<NcMode> {
    match text {
        "zero_pad" => Ok(NcMode::ZeroPad),
        "partition" => Ok(NcMode::Partition),
        other => Err(Error::Parameter(format!("unknown mode '{other}'"))),
    }
}

/// Parses `0,2,4`, `0..22`, or `0..22:2`.
pub fn parse_range_list(text: &str) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for piece in text.split(',') {
        let piece = piece.trim();
        if piece.is_empty() {
            continue;
        }
        if let Some((range, step)) = split_range(piece)? {
            let mut v = range.0;
            while v <= range.1 {
                out.push(v);
                v += step;
            }
        } else {
            out.push(
                piece
                    .parse()
                    .map_err(|_| Error::Parameter(format!("bad number '{piece}'")))?,
            );
        }
    }
    if out.is_empty() {
        return Err(Error::Parameter(format!("empty list '{text}'")));
    }
    Ok(out)
}

fn split_range(piece: &str) -> Result<Option<((u64, u64), u64)>> {
    let Some((lo, rest)) = piece.split_once("..") else { return Ok(None) };
    let (hi, step) = match rest.split_once(':') {
        Some((hi, step)) => (hi, step.parse().map_err(|_| bad(piece))?),
        None => (rest, 1),
    };
    let lo: u64 = lo.parse().map_err(|_| bad(piece))?;
    let hi: u64 = hi.parse().map_err(|_| bad(piece))?;
    if step == 0 || hi < lo {
        return Err(bad(piece));
    }
    Ok(Some(((lo, hi), step)))
}

fn bad(piece: &str) -> Error {
    Error::Parameter(format!("bad range '{piece}'"))
}

/// Full run description for the batch commands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub topology: TopologySpec,
    pub hours: Vec<u8>,
    pub seeds: Vec<u64>,
    pub params: DeviceParams,
    pub schemes: Vec<Scheme>,
    pub layers: Vec<Layer>,
    pub modes: Vec<NcMode>,
    /// multiplies every generated demand; >1 projects the profile onto
    /// higher-capacity equipment generations
    pub demand_scale: f64,
    pub out_dir: PathBuf,
}

impl RunConfig {
    pub fn new(topology: TopologySpec, out_dir: PathBuf) -> Self {
        RunConfig {
            topology,
            hours: (0u8..=22).step_by(2).collect(),
            seeds: (1u64..=5).collect(),
            params: DeviceParams::table4(),
            schemes: vec![Scheme::Conventional, Scheme::Nc],
            layers: vec![Layer::NonBypass],
            modes: vec![NcMode::ZeroPad],
            demand_scale: 1.0,
            out_dir,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.hours.is_empty() || self.hours.iter().any(|&h| h > 23) {
            return Err(Error::Parameter("hours must be a nonempty subset of 0..=23".into()));
        }
        if self.seeds.is_empty() {
            return Err(Error::Parameter("at least one seed".into()));
        }
        if self.schemes.is_empty() || self.layers.is_empty() || self.modes.is_empty() {
            return Err(Error::Parameter("at least one scheme, layer, and mode".into()));
        }
        if !(self.demand_scale > 0.0) {
            return Err(Error::Parameter("demand scale must be positive".into()));
        }
        Ok(())
    }

    fn matrix(&self, t: &Topology, hour: u8, seed: u64) -> crate::traffic::DemandMatrix {
        let dm = generate_matrix(t, hour, seed);
        if self.demand_scale == 1.0 {
            dm
        } else {
            dm.scaled(self.demand_scale)
        }
    }

    fn regimes(&self) -> Vec<(Scheme, Layer, Option<NcMode>)> {
        let mut out = Vec::new();
        for &layer in &self.layers {
            for &scheme in &self.schemes {
                match scheme {
                    Scheme::Conventional => out.push((scheme, layer, None)),
                    Scheme::Nc => {
                        for &mode in &self.modes {
                            out.push((scheme, layer, Some(mode)));
                        }
                    }
                }
            }
        }
        out
    }
}

fn write_file(dir: &Path, name: &str, body: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, body).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(path)
}

fn mode_label(mode: Option<NcMode>) -> &'static str {
    mode.map(|m| m.name()).unwrap_or("-")
}

/// Daily pipeline results.
#[derive(Debug, Clone)]
pub struct DailySummary {
    /// seed-averaged total watts per (hour, regime)
    pub hourly_total_w: BTreeMap<(u8, Scheme, Layer, Option<NcMode>), f64>,
    /// daily mean of per-hour savings of each coded regime against the
    /// conventional regime of the same layer
    pub mean_savings: BTreeMap<(Layer, NcMode), f64>,
    pub files: Vec<PathBuf>,
}

impl DailySummary {
    pub fn mean_total_w(&self, scheme: Scheme, layer: Layer, mode: Option<NcMode>) -> f64 {
        let mut sum = 0.0;
        let mut count = 0usize;
        for (&(_, s, l, m), &w) in &self.hourly_total_w {
            if s == scheme && l == layer && m == mode {
                sum += w;
                count += 1;
            }
        }
        sum / count.max(1) as f64
    }
}

/// Runs the full day: per-hour seed-averaged power for every selected regime,
/// plus savings columns and a summary.
pub fn cmd_daily(cfg: &RunConfig) -> Result<DailySummary> {
    cfg.validate()?;
    let t = cfg.topology.build()?;
    let regimes = cfg.regimes();
    let mut hourly: BTreeMap<(u8, Scheme, Layer, Option<NcMode>), f64> = BTreeMap::new();
    let mut power_csv = String::from(crate::power::PowerBreakdown::CSV_HEADER);
    power_csv.push('\n');

    for &hour in &cfg.hours {
        let mut acc: BTreeMap<(Scheme, Layer, Option<NcMode>), [f64; 7]> =
            regimes.iter().map(|&k| (k, [0.0; 7])).collect();
        for &seed in &cfg.seeds {
            let dm = cfg.matrix(&t, hour, seed);
            let plan = route_all(&t, &dm)?;
            for &(scheme, layer, mode) in &regimes {
                let bd = network_power(
                    &t,
                    &plan,
                    &cfg.params,
                    scheme,
                    layer,
                    mode.unwrap_or(NcMode::ZeroPad),
                )?;
                let slots = acc.get_mut(&(scheme, layer, mode)).expect("regime present");
                for (slot, v) in slots.iter_mut().zip([
                    bd.router_ports_w,
                    bd.nc_ports_w,
                    bd.transponders_w,
                    bd.edfas_w,
                    bd.switches_w,
                    bd.muxdemux_w,
                    bd.total_w,
                ]) {
                    *slot += v;
                }
            }
        }
        let k = cfg.seeds.len() as f64;
        for &(scheme, layer, mode) in &regimes {
            let sums = acc[&(scheme, layer, mode)];
            hourly.insert((hour, scheme, layer, mode), sums[6] / k);
            power_csv.push_str(&format!(
                "{hour},{},{},{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}\n",
                scheme.name(),
                layer.name(),
                mode_label(mode),
                sums[0] / k,
                sums[1] / k,
                sums[2] / k,
                sums[3] / k,
                sums[4] / k,
                sums[5] / k,
                sums[6] / k,
            ));
        }
    }

    // savings per hour and daily means
    let mut savings_csv = String::from("hour,layer,mode,conventional_W,nc_W,savings\n");
    let mut mean_savings = BTreeMap::new();
    for &layer in &cfg.layers {
        if !cfg.schemes.contains(&Scheme::Conventional) || !cfg.schemes.contains(&Scheme::Nc) {
            continue;
        }
        for &mode in &cfg.modes {
            let mut day = 0.0;
            for &hour in &cfg.hours {
                let conv = hourly[&(hour, Scheme::Conventional, layer, None)];
                let nc = hourly[&(hour, Scheme::Nc, layer, Some(mode))];
                let saving = 1.0 - nc / conv;
                day += saving;
                savings_csv.push_str(&format!(
                    "{hour},{},{},{:.6},{:.6},{:.6}\n",
                    layer.name(),
                    mode.name(),
                    conv,
                    nc,
                    saving
                ));
            }
            mean_savings.insert((layer, mode), day / cfg.hours.len() as f64);
        }
    }
    let mut summary_csv = String::from("layer,mode,mean_savings\n");
    for (&(layer, mode), &s) in &mean_savings {
        summary_csv.push_str(&format!("{},{},{:.6}\n", layer.name(), mode.name(), s));
    }

    let files = vec![
        write_file(&cfg.out_dir, "daily_power.csv", &power_csv)?,
        write_file(&cfg.out_dir, "daily_savings.csv", &savings_csv)?,
        write_file(&cfg.out_dir, "daily_summary.csv", &summary_csv)?,
    ];
    Ok(DailySummary { hourly_total_w: hourly, mean_savings, files })
}

/// Port-ratio sweep results.
#[derive(Debug, Clone)]
pub struct SweepSummary {
    pub r_values: Vec<f64>,
    /// ensemble-mean reduced power per mode per r
    pub nc_w: BTreeMap<NcMode, Vec<f64>>,
    pub conventional_w: f64,
    /// interpolated r where each coded curve meets the conventional line
    pub crossover: BTreeMap<NcMode, Option<f64>>,
    pub files: Vec<PathBuf>,
}

/// Sweeps the port ratio r over the traffic ensemble, on the reduced
/// router-plus-transponder accounting of the closed-form analysis.
pub fn cmd_sweep_r(cfg: &RunConfig, r_min: f64, r_max: f64, steps: usize) -> Result<SweepSummary> {
    cfg.validate()?;
    if !(r_min >= 0.0 && r_max > r_min && steps >= 2) {
        return Err(Error::Parameter("need 0 <= r_min < r_max and steps >= 2".into()));
    }
    let t = cfg.topology.build()?;
    let r_values: Vec<f64> = (0..steps)
        .map(|i| r_min + (r_max - r_min) * i as f64 / (steps - 1) as f64)
        .collect();
    let mut nc_w: BTreeMap<NcMode, Vec<f64>> = cfg
        .modes
        .iter()
        .map(|&m| (m, vec![0.0; r_values.len()]))
        .collect();
    let mut conventional_w = 0.0;
    let mut runs = 0usize;
    for &hour in &cfg.hours {
        for &seed in &cfg.seeds {
            let dm = cfg.matrix(&t, hour, seed);
            let plan = route_all(&t, &dm)?;
            conventional_w += analytics::reduced_conventional(&plan.pairs, &cfg.params);
            for &mode in &cfg.modes {
                let points =
                    crate::power::sweep_port_ratio(&plan, &cfg.params, mode, &r_values);
                let acc = nc_w.get_mut(&mode).expect("mode present");
                for (slot, pt) in acc.iter_mut().zip(&points) {
                    *slot += pt.nc_w;
                }
            }
            runs += 1;
        }
    }
    conventional_w /= runs as f64;
    for acc in nc_w.values_mut() {
        for v in acc.iter_mut() {
            *v /= runs as f64;
        }
    }

    let mut crossover = BTreeMap::new();
    for (&mode, series) in &nc_w {
        let mut found = None;
        for i in 1..series.len() {
            let (a, b) = (series[i - 1] - conventional_w, series[i] - conventional_w);
            if a <= 0.0 && b >= 0.0 && b != a {
                found = Some(r_values[i - 1] + (r_values[i] - r_values[i - 1]) * (-a) / (b - a));
                break;
            }
        }
        crossover.insert(mode, found);
    }

    let mut csv = String::from("r,conventional_W");
    for &mode in &cfg.modes {
        csv.push_str(&format!(",nc_{}_W", mode.name()));
    }
    csv.push('\n');
    for (i, &r) in r_values.iter().enumerate() {
        csv.push_str(&format!("{r:.6},{conventional_w:.6}"));
        for &mode in &cfg.modes {
            csv.push_str(&format!(",{:.6}", nc_w[&mode][i]));
        }
        csv.push('\n');
    }
    let files = vec![write_file(&cfg.out_dir, "sweep_r.csv", &csv)?];
    Ok(SweepSummary { r_values, nc_w, conventional_w, crossover, files })
}

/// Bound evaluation results.
#[derive(Debug, Clone)]
pub struct BoundsSummary {
    pub rows: usize,
    pub sandwich_violations: usize,
    pub files: Vec<PathBuf>,
}

/// Evaluates the analytic bounds and the reduced model total for every
/// (hour, seed) point and both coding modes.
pub fn cmd_bounds(cfg: &RunConfig) -> Result<BoundsSummary> {
    cfg.validate()?;
    let t = cfg.topology.build()?;
    let r = cfg.params.port_ratio();
    let mut csv = String::from("hour,seed,mode,bound_name,watts\n");
    let mut rows = 0usize;
    let mut violations = 0usize;
    for &hour in &cfg.hours {
        for &seed in &cfg.seeds {
            let dm = cfg.matrix(&t, hour, seed);
            let plan = route_all(&t, &dm)?;
            for &mode in &cfg.modes {
                let bounds = match mode {
                    NcMode::ZeroPad => bounds_zero_pad(&t, &dm, &cfg.params, r)?,
                    NcMode::Partition => bounds_partition(&t, &dm, &cfg.params, r)?,
                };
                let value = reduced_nc(&plan.pairs, &cfg.params, r, mode);
                if !bounds.sandwiches(value) {
                    violations += 1;
                }
                for (name, watts) in [
                    ("lower_full_mesh", bounds.lower_full_mesh_w),
                    ("lower_equal_traffic", bounds.lower_equal_traffic_w),
                    ("model_reduced", value),
                    ("upper_max_traffic", bounds.upper_max_traffic_w),
                    ("upper_max_hop", bounds.upper_max_hop_w),
                    ("upper_joint", bounds.upper_joint_w),
                ] {
                    csv.push_str(&format!(
                        "{hour},{seed},{},{name},{watts:.6}\n",
                        mode.name()
                    ));
                    rows += 1;
                }
            }
        }
    }
    let files = vec![write_file(&cfg.out_dir, "bounds.csv", &csv)?];
    Ok(BoundsSummary { rows, sandwich_violations: violations, files })
}

/// Writes the LP model for the first (hour, seed) of the config.
pub fn cmd_milp_export(cfg: &RunConfig, mode: ModelMode, out: &Path) -> Result<()> {
    cfg.validate()?;
    let t = cfg.topology.build()?;
    let dm = cfg.matrix(&t, cfg.hours[0], cfg.seeds[0]);
    let ir = milp::build_model(&t, &dm, &cfg.params, mode, Layer::NonBypass)?;
    milp::export_model(&ir, out)
}

/// Verification report for an external solver's solution.
#[derive(Debug, Clone)]
pub struct MilpCheckReport {
    pub recomputed_objective: f64,
    pub reported_objective: Option<f64>,
    pub heuristic_w: f64,
    pub brute_force_w: Option<f64>,
    /// |solution - oracle| / oracle, when the oracle is tractable
    pub oracle_gap: Option<f64>,
}

/// Re-imports a solution file against the same model and compares it with the
/// minimum-hop heuristic and, on tiny instances, the exhaustive oracle.
pub fn cmd_milp_check(cfg: &RunConfig, mode: ModelMode, solution: &Path) -> Result<MilpCheckReport> {
    cfg.validate()?;
    let t = cfg.topology.build()?;
    let dm = cfg.matrix(&t, cfg.hours[0], cfg.seeds[0]);
    let ir = milp::build_model(&t, &dm, &cfg.params, mode, Layer::NonBypass)?;
    let report = milp::import_solution(&ir, solution)?;
    let plan = route_all(&t, &dm)?;
    let (scheme, nc_mode) = mode.regime();
    let heuristic_w =
        network_power(&t, &plan, &cfg.params, scheme, Layer::NonBypass, nc_mode)?.total_w;
    let brute = match milp::brute_force_optimum(&t, &dm, &cfg.params, mode) {
        Ok(b) => Some(b.best_power_w),
        Err(Error::InstanceTooLarge(_)) => None,
        Err(e) => return Err(e),
    };
    let oracle_gap = brute.map(|w| (report.recomputed_objective - w).abs() / w);
    Ok(MilpCheckReport {
        recomputed_objective: report.recomputed_objective,
        reported_objective: report.reported_objective,
        heuristic_w,
        brute_force_w: brute,
        oracle_gap,
    })
}

/// One validation check outcome.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

/// Full property-suite report.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{} {} ({})\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            ));
        }
        out.push_str(if self.all_pass() { "all checks passed\n" } else { "FAILURES present\n" });
        out
    }
}

fn lcg_bytes(state: &mut u64, len: usize) -> Vec<u8> {
    (0..len)
        .map(|_| {
            *state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (*state >> 33) as u8
        })
        .collect()
}

/// Runs the whole invariant suite: flow conservation, mode dominance, bound
/// sandwiches, closed-form agreement, XOR relay losslessness, and traffic
/// generator calibration.
pub fn cmd_validate() -> ValidationReport {
    let mut checks = Vec::new();
    let p = DeviceParams::table4();
    let r = p.port_ratio();

    // flow conservation on 1000 random plans
    {
        let topologies: Vec<Topology> = vec![
            net_model::nsfnet(),
            net_model::usnet(),
            build_regular(RegularKind::Ring, 8, 478.0, None).unwrap(),
            build_regular(RegularKind::Line, 10, 478.0, None).unwrap(),
            build_regular(RegularKind::Star, 9, 478.0, Some(4)).unwrap(),
        ];
        let mut plans = 0usize;
        let mut failures = 0usize;
        'outer: for seed in 0..200u64 {
            for t in &topologies {
                let dm = generate_matrix(t, (seed % 24) as u8, seed);
                match route_all(t, &dm).and_then(|plan| check_flow_conservation(t, &dm, &plan)) {
                    Ok(()) => {}
                    Err(_) => failures += 1,
                }
                plans += 1;
                if plans >= 1000 {
                    break 'outer;
                }
            }
        }
        checks.push(CheckResult {
            name: "flow_conservation",
            pass: failures == 0,
            detail: format!("{plans} plans, {failures} failures"),
        });
    }

    // partitioning never costs more than zero padding for r >= 1
    {
        let t = net_model::nsfnet();
        let mut failures = 0usize;
        let mut cases = 0usize;
        for seed in 0..25u64 {
            let dm = generate_matrix(&t, ((seed * 2) % 24) as u8, seed);
            let plan = route_all(&t, &dm).unwrap();
            for ratio in [1.0, 1.1, 1.5, 2.0] {
                let pr = p.with_port_ratio(ratio);
                let zp = network_power(&t, &plan, &pr, Scheme::Nc, Layer::NonBypass, NcMode::ZeroPad)
                    .unwrap()
                    .total_w;
                let pt =
                    network_power(&t, &plan, &pr, Scheme::Nc, Layer::NonBypass, NcMode::Partition)
                        .unwrap()
                        .total_w;
                cases += 1;
                if pt > zp + 1e-9 {
                    failures += 1;
                }
            }
        }
        checks.push(CheckResult {
            name: "partition_dominates_zero_pad",
            pass: failures == 0,
            detail: format!("{cases} cases, {failures} failures"),
        });
    }

    // bound sandwiches on 100 matrices per mode
    {
        let t = net_model::nsfnet();
        let mut failures = 0usize;
        for seed in 0..100u64 {
            let hour = ((seed * 5) % 24) as u8;
            let dm = generate_matrix(&t, hour, seed);
            let plan = route_all(&t, &dm).unwrap();
            for mode in [NcMode::ZeroPad, NcMode::Partition] {
                let bounds = match mode {
                    NcMode::ZeroPad => bounds_zero_pad(&t, &dm, &p, r).unwrap(),
                    NcMode::Partition => bounds_partition(&t, &dm, &p, r).unwrap(),
                };
                let value = reduced_nc(&plan.pairs, &p, r, mode);
                if !bounds.is_consistent() || !bounds.sandwiches(value) {
                    failures += 1;
                }
            }
        }
        checks.push(CheckResult {
            name: "bound_sandwiches",
            pass: failures == 0,
            detail: format!("200 cases, {failures} failures"),
        });
    }

    // closed-form hop averages against BFS
    {
        let mut failures = 0usize;
        for n in 3..=30u32 {
            for kind in [RegularKind::Ring, RegularKind::Line, RegularKind::Star, RegularKind::FullMesh] {
                let t = build_regular(kind, n, 478.0, Some(1)).unwrap();
                let h = hop_metrics(&t).unwrap();
                let formula = avg_hop_formula(kind, n);
                if !h.avg_equals_ratio(formula.num(), formula.den()) {
                    failures += 1;
                }
            }
        }
        checks.push(CheckResult {
            name: "hop_count_closed_forms",
            pass: failures == 0,
            detail: format!("4 kinds x n in 3..=30, {failures} failures"),
        });
    }

    // coded relay losslessness on random stream pairs
    {
        let mut state = 0x5eed_u64;
        let mut failures = 0usize;
        for case in 0..100usize {
            let hops = 2 + (case % 4) as u32;
            let len_a = (case * 13) % 600;
            let len_b = (case * 29 + 7) % 600;
            let a = lcg_bytes(&mut state, len_a);
            let b = lcg_bytes(&mut state, len_b);
            match simulate_coded_exchange(&a, &b, hops) {
                Ok(out) if out.recovered_a == a && out.recovered_b == b => {}
                _ => failures += 1,
            }
        }
        checks.push(CheckResult {
            name: "xor_relay_lossless",
            pass: failures == 0,
            detail: format!("100 stream pairs, hops 2..=5, {failures} failures"),
        });
    }

    // traffic generator calibration: zone means within 2% over 1000 seeds
    {
        let t = net_model::nsfnet();
        let profile = zone_profile();
        let mut worst: f64 = 0.0;
        for (zone, hour) in [
            (crate::net_model::Zone::Est, 22u8),
            (crate::net_model::Zone::Pst, 1),
            (crate::net_model::Zone::Cst, 10),
            (crate::net_model::Zone::Mst, 6),
        ] {
            let mut sum = 0.0;
            let mut count = 0usize;
            for seed in 0..1000u64 {
                let dm = generate_matrix(&t, hour, seed);
                for (s, d) in t.ordered_pairs() {
                    if t.zone(s) == zone {
                        sum += dm.gbps(s, d);
                        count += 1;
                    }
                }
            }
            let mean = sum / count as f64;
            let target = profile.gbps(zone, hour);
            worst = worst.max((mean - target).abs() / target);
        }
        checks.push(CheckResult {
            name: "traffic_zone_means",
            pass: worst <= 0.02,
            detail: format!("worst relative deviation {worst:.4}"),
        });
    }

    // savings formula agrees with direct evaluation on equal traffic
    {
        let t = net_model::nsfnet();
        let dm = crate::traffic::equal_matrix(14, 80.0);
        let plan = route_all(&t, &dm).unwrap();
        let h = hop_metrics(&t).unwrap().avg();
        let conv = analytics::reduced_conventional(&plan.pairs, &p);
        let nc = reduced_nc(&plan.pairs, &p, r, NcMode::ZeroPad);
        let direct = 1.0 - nc / conv;
        let formula = savings_equal(h, r);
        let pass = (direct - formula).abs() < 1e-9;
        checks.push(CheckResult {
            name: "equal_traffic_savings_formula",
            pass,
            detail: format!("direct {direct:.6} vs formula {formula:.6}"),
        });
    }

    ValidationReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn topology_spec_parsing() {
        assert_eq!(TopologySpec::parse("nsfnet").unwrap(), TopologySpec::Nsfnet);
        assert!(matches!(
            TopologySpec::parse("ring:8").unwrap(),
            TopologySpec::Regular { kind: RegularKind::Ring, n: 8, center: None }
        ));
        assert!(matches!(
            TopologySpec::parse("star:9:4").unwrap(),
            TopologySpec::Regular { kind: RegularKind::Star, n: 9, center: Some(4) }
        ));
        assert!(TopologySpec::parse("pentagon").is_err());
    }

    #[test]
    fn range_list_parsing() {
        assert_eq!(parse_range_list("0..6:2").unwrap(), vec![0, 2, 4, 6]);
        assert_eq!(parse_range_list("1,5,9").unwrap(), vec![1, 5, 9]);
        assert_eq!(parse_range_list("3..5").unwrap(), vec![3, 4, 5]);
        assert!(parse_range_list("5..1").is_err());
        assert!(parse_range_list("").is_err());
    }

    #[test]
    fn config_validation() {
        let mut cfg = RunConfig::new(TopologySpec::Nsfnet, std::env::temp_dir());
        cfg.validate().unwrap();
        cfg.hours = vec![33];
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn full_mesh_daily_savings_are_zero() {
        let dir = std::env::temp_dir().join("ncwdm_test_mesh_daily");
        let mut cfg = RunConfig::new(TopologySpec::NsfnetMesh, dir);
        cfg.hours = vec![6, 22];
        cfg.seeds = vec![1];
        let summary = cmd_daily(&cfg).unwrap();
        let s = summary.mean_savings[&(Layer::NonBypass, NcMode::ZeroPad)];
        assert!(s.abs() < 1e-9, "mesh savings {s}");
    }

    #[test]
    fn validate_suite_passes() {
        let report = cmd_validate();
        assert!(report.all_pass(), "{}", report.render());
    }
}
