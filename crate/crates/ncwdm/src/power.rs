//! Port/transponder accounting and total network power.
//!
//! The non-bypass evaluator follows the optimization objective term by term:
//! router ports (conventional and coded), transponders proportional to
//! directed link traffic, EDFAs per fiber, and per-node optical switch and
//! mux/demux overheads. The bypass evaluator keeps IP ports at demand
//! endpoints and charges intermediate nodes per-wavelength transponder
//! terminations, which the coded scheme replaces with a single coded
//! transponder.

use serde::{Deserialize, Serialize};

use crate::net_model::{edfa_count, Topology};
use crate::routing::RoutePlan;
use crate::{Error, Result};

/// Routing/port scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Scheme {
    Conventional,
    Nc,
}

impl Scheme {
    pub fn name(&self) -> &'static str {
        match self {
            Scheme::Conventional => "conventional",
            Scheme::Nc => "nc",
        }
    }
}

/// Which layer processes transit traffic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Layer {
    NonBypass,
    Bypass,
}

impl Layer {
    pub fn name(&self) -> &'static str {
        match self {
            Layer::NonBypass => "non_bypass",
            Layer::Bypass => "bypass",
        }
    }
}

/// How mismatched bidirectional flows are prepared for coding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum NcMode {
    ZeroPad,
    Partition,
}

impl NcMode {
    pub fn name(&self) -> &'static str {
        match self {
            NcMode::ZeroPad => "zero_pad",
            NcMode::Partition => "partition",
        }
    }
}

/// Device power values and optical-layer dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeviceParams {
    /// conventional router port (W)
    pub router_port_w: f64,
    /// network-coding router port / coded transponder (W)
    pub nc_port_w: f64,
    /// transponder (W)
    pub transponder_w: f64,
    /// inline EDFA (W)
    pub edfa_w: f64,
    /// optical switch per node (W)
    pub switch_w: f64,
    /// mux/demux pair per node (W)
    pub mux_w: f64,
    /// wavelengths per fiber
    pub wavelengths: u32,
    /// capacity of one wavelength (Gbps)
    pub wavelength_gbps: f64,
    /// EDFA spacing (km)
    pub edfa_span_km: f64,
}

impl DeviceParams {
    /// 2010-era equipment values (40 Gbps wavelengths, 1 kW router ports).
    pub fn table4() -> Self {
        DeviceParams {
            router_port_w: 1000.0,
            nc_port_w: 1100.0,
            transponder_w: 73.0,
            edfa_w: 8.0,
            switch_w: 85.0,
            mux_w: 16.0,
            wavelengths: 16,
            wavelength_gbps: 40.0,
            edfa_span_km: 80.0,
        }
    }

    /// GreenTouch 2020 projections used for the bypass study (400 Gbps
    /// wavelengths, router ports far cheaper than transponders).
    pub fn table5_greentouch() -> Self {
        DeviceParams {
            router_port_w: 46.7,
            nc_port_w: 360.0,
            transponder_w: 332.6,
            edfa_w: 15.3,
            switch_w: 8.5,
            mux_w: 0.0,
            wavelengths: 32,
            wavelength_gbps: 400.0,
            edfa_span_km: 80.0,
        }
    }

    /// Port ratio r = (Px + Pt) / (Pp + Pt).
    pub fn port_ratio(&self) -> f64 {
        (self.nc_port_w + self.transponder_w) / (self.router_port_w + self.transponder_w)
    }

    /// Same parameters with the coded-port power set so that the port ratio
    /// equals `r`.
    pub fn with_port_ratio(&self, r: f64) -> Self {
        let mut out = *self;
        out.nc_port_w = r * (self.router_port_w + self.transponder_w) - self.transponder_w;
        out
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Io(format!("device params json: {e}")))
    }
}

/// Conventional router port counts: the larger of the two directed volumes on
/// every (node, neighbor) interface, in fractional port units.
#[derive(Debug, Clone)]
pub struct ConventionalPorts {
    /// (m, n) -> max(out, in) / B
    pub per_interface: std::collections::BTreeMap<(u32, u32), f64>,
    /// Y_m, indexed by node id - 1
    pub per_node: Vec<f64>,
}

pub fn port_counts_conventional(plan: &RoutePlan, wavelength_gbps: f64) -> ConventionalPorts {
    let mut per_interface = std::collections::BTreeMap::new();
    let mut per_node = vec![0.0; plan.node_count];
    for (&(m, n), &out) in &plan.link_load {
        let inbound = plan.load(n, m);
        let units = out.max(inbound) / wavelength_gbps;
        per_interface.insert((m, n), units);
        per_node[(m - 1) as usize] += units;
    }
    ConventionalPorts { per_interface, per_node }
}

/// Port counts for the network-coded scheme, split into coded ports at
/// intermediate nodes, residual conventional ports (partitioning only), and
/// conventional ports at demand endpoints.
#[derive(Debug, Clone)]
pub struct NcPorts {
    /// X_m, coded port units per node
    pub coded: Vec<f64>,
    /// leftover conventional port units at intermediate nodes
    pub residual: Vec<f64>,
    /// conventional port units at sources/destinations
    pub end: Vec<f64>,
}

pub fn nc_port_counts(plan: &RoutePlan, wavelength_gbps: f64, mode: NcMode) -> NcPorts {
    let b = wavelength_gbps;
    let n = plan.node_count;
    let mut coded = vec![0.0; n];
    let mut residual = vec![0.0; n];
    let mut end = vec![0.0; n];
    for tr in &plan.coding_triples {
        let i = (tr.m - 1) as usize;
        match mode {
            NcMode::ZeroPad => {
                coded[i] += tr.fwd_gbps.max(tr.rev_gbps) / b;
            }
            NcMode::Partition => {
                coded[i] += tr.fwd_gbps.min(tr.rev_gbps) / b;
                residual[i] += (tr.fwd_gbps - tr.rev_gbps).abs() / b;
            }
        }
    }
    match mode {
        NcMode::ZeroPad => {
            // max of traffic originating vs terminating per end interface
            for (&(m, nb), &out) in &plan.origin_out {
                let inbound = plan.term_in.get(&(m, nb)).copied().unwrap_or(0.0);
                end[(m - 1) as usize] += out.max(inbound) / b;
            }
            for (&(m, nb), &inbound) in &plan.term_in {
                if !plan.origin_out.contains_key(&(m, nb)) {
                    end[(m - 1) as usize] += inbound / b;
                }
            }
        }
        NcMode::Partition => {
            // partitioning removes end asymmetry: each demand counts once,
            // half a unit at its source and half at its destination
            for p in &plan.pairs {
                let both = (p.fwd_gbps + p.rev_gbps) / (2.0 * b);
                end[(p.s - 1) as usize] += both;
                end[(p.d - 1) as usize] += both;
            }
        }
    }
    NcPorts { coded, residual, end }
}

/// Per-device-class wattage totals plus per-node port units.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerBreakdown {
    pub router_ports_w: f64,
    pub nc_ports_w: f64,
    pub transponders_w: f64,
    pub edfas_w: f64,
    pub switches_w: f64,
    pub muxdemux_w: f64,
    pub total_w: f64,
    /// conventional port units Y_m per node
    pub node_conventional_ports: Vec<f64>,
    /// coded port units X_m per node
    pub node_nc_ports: Vec<f64>,
}

impl PowerBreakdown {
    pub fn csv_row(&self, hour: u8, scheme: Scheme, layer: Layer, mode: NcMode) -> String {
        format!(
            "{hour},{},{},{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}",
            scheme.name(),
            layer.name(),
            mode.name(),
            self.router_ports_w,
            self.nc_ports_w,
            self.transponders_w,
            self.edfas_w,
            self.switches_w,
            self.muxdemux_w,
            self.total_w
        )
    }

    pub const CSV_HEADER: &'static str =
        "hour,scheme,layer,mode,router_W,nc_W,transponder_W,edfa_W,switch_W,mux_W,total_W";
}

/// Number of fibers per directed link: ceil((load/B)/W).
pub fn fiber_count(load_gbps: f64, p: &DeviceParams) -> u32 {
    if load_gbps <= 1e-9 {
        return 0;
    }
    let fibers = ((load_gbps / p.wavelength_gbps) / p.wavelengths as f64 - 1e-9).ceil();
    (fibers as u32).max(1)
}

/// Total network power for one regime.
pub fn network_power(
    t: &Topology,
    plan: &RoutePlan,
    p: &DeviceParams,
    scheme: Scheme,
    layer: Layer,
    mode: NcMode,
) -> Result<PowerBreakdown> {
    let b = p.wavelength_gbps;
    let n = t.node_count();

    // optical layer shared by every regime: EDFAs per fiber per directed
    // link, plus per-node switch and mux/demux
    let mut edfas_w = 0.0;
    for (&(m, nb), &load) in &plan.link_load {
        let km = t
            .link_length(m, nb)
            .ok_or_else(|| Error::Capacity(format!("load on missing link ({m}, {nb})")))?;
        let fibers = fiber_count(load, p);
        if load > p.wavelengths as f64 * b * fibers as f64 + 1e-6 {
            return Err(Error::Capacity(format!(
                "link ({m}, {nb}) carries {load} Gbps over {fibers} fibers"
            )));
        }
        edfas_w += p.edfa_w * edfa_count(km, p.edfa_span_km) as f64 * fibers as f64;
    }
    let switches_w = p.switch_w * n as f64;
    let muxdemux_w = p.mux_w * n as f64;

    let breakdown = match layer {
        Layer::NonBypass => {
            let transponders_w =
                p.transponder_w * plan.link_load.values().sum::<f64>() / b;
            match scheme {
                Scheme::Conventional => {
                    let ports = port_counts_conventional(plan, b);
                    let router_ports_w = p.router_port_w * ports.per_node.iter().sum::<f64>();
                    PowerBreakdown {
                        router_ports_w,
                        nc_ports_w: 0.0,
                        transponders_w,
                        edfas_w,
                        switches_w,
                        muxdemux_w,
                        total_w: 0.0,
                        node_conventional_ports: ports.per_node,
                        node_nc_ports: vec![0.0; n],
                    }
                }
                Scheme::Nc => {
                    let ports = nc_port_counts(plan, b, mode);
                    let conventional: Vec<f64> = ports
                        .end
                        .iter()
                        .zip(&ports.residual)
                        .map(|(e, r)| e + r)
                        .collect();
                    PowerBreakdown {
                        router_ports_w: p.router_port_w * conventional.iter().sum::<f64>(),
                        nc_ports_w: p.nc_port_w * ports.coded.iter().sum::<f64>(),
                        transponders_w,
                        edfas_w,
                        switches_w,
                        muxdemux_w,
                        total_w: 0.0,
                        node_conventional_ports: conventional,
                        node_nc_ports: ports.coded,
                    }
                }
            }
        }
        Layer::Bypass => {
            // IP ports only where traffic is added/dropped
            let mut add = vec![0.0; n];
            let mut drop = vec![0.0; n];
            for (&(m, _), &v) in &plan.origin_out {
                add[(m - 1) as usize] += v;
            }
            for (&(m, _), &v) in &plan.term_in {
                drop[(m - 1) as usize] += v;
            }
            let node_ports: Vec<f64> =
                add.iter().zip(&drop).map(|(a, d)| a.max(*d) / b).collect();
            let router_ports_w = p.router_port_w * node_ports.iter().sum::<f64>();

            // one transponder termination at each lightpath end
            let mut transponders_w = p.transponder_w
                * plan.pairs.iter().map(|f| f.fwd_gbps + f.rev_gbps).sum::<f64>()
                / b;
            let mut nc_ports_w = 0.0;
            for f in &plan.pairs {
                let interior = (f.hops.saturating_sub(1)) as f64;
                let max = f.fwd_gbps.max(f.rev_gbps) / b;
                let min = f.fwd_gbps.min(f.rev_gbps) / b;
                match scheme {
                    Scheme::Conventional => {
                        // two directional terminations per bidirectional
                        // wavelength at every intermediate node
                        transponders_w += 2.0 * p.transponder_w * max * interior;
                    }
                    Scheme::Nc => match mode {
                        NcMode::ZeroPad => {
                            nc_ports_w += p.nc_port_w * max * interior;
                        }
                        NcMode::Partition => {
                            nc_ports_w += p.nc_port_w * min * interior;
                            transponders_w += 2.0 * p.transponder_w * (max - min) * interior;
                        }
                    },
                }
            }
            PowerBreakdown {
                router_ports_w,
                nc_ports_w,
                transponders_w,
                edfas_w,
                switches_w,
                muxdemux_w,
                total_w: 0.0,
                node_conventional_ports: node_ports,
                node_nc_ports: vec![0.0; n],
            }
        }
    };

    let mut out = breakdown;
    out.total_w = out.router_ports_w
        + out.nc_ports_w
        + out.transponders_w
        + out.edfas_w
        + out.switches_w
        + out.muxdemux_w;
    Ok(out)
}

/// One point of a port-ratio sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub r: f64,
    pub nc_w: f64,
    pub conventional_w: f64,
}

/// Power versus port ratio r = (Px + Pt)/(Pp + Pt), evaluated on the reduced
/// router-plus-transponder accounting (one transponder per port unit) that
/// the closed-form analysis uses. For each r the coded-port power is set so
/// the ratio holds exactly.
pub fn sweep_port_ratio(
    plan: &RoutePlan,
    p: &DeviceParams,
    mode: NcMode,
    r_values: &[f64],
) -> Vec<SweepPoint> {
    let unit = (p.router_port_w + p.transponder_w) / p.wavelength_gbps;
    let end_volume: f64 = plan.pairs.iter().map(|f| f.fwd_gbps + f.rev_gbps).sum();
    let conventional: f64 = unit
        * plan
            .pairs
            .iter()
            .map(|f| (f.fwd_gbps + f.rev_gbps) * f.hops as f64)
            .sum::<f64>();
    let coded_volume: f64 = plan
        .coding_triples
        .iter()
        .map(|tr| match mode {
            NcMode::ZeroPad => tr.fwd_gbps.max(tr.rev_gbps),
            NcMode::Partition => tr.fwd_gbps.min(tr.rev_gbps),
        })
        .sum();
    let residual_volume: f64 = match mode {
        NcMode::ZeroPad => 0.0,
        NcMode::Partition => plan
            .coding_triples
            .iter()
            .map(|tr| (tr.fwd_gbps - tr.rev_gbps).abs())
            .sum(),
    };
    r_values
        .iter()
        .map(|&r| SweepPoint {
            r,
            nc_w: unit * (end_volume + residual_volume + r * coded_volume),
            conventional_w: conventional,
        })
        .collect()
}
