//! Solver-agnostic construction of the network optimization model, LP-format
//! export, solution re-import with verification, and an exhaustive oracle for
//! tiny instances.
//!
//! The builder emits the full constraint system: flow conservation, link
//! capacity sizing, conventional port counting with the max(out, in) rule,
//! the path-adjacency product linearized through `c` variables, and the
//! coded-port max/min selection linearized with big-M indicator variables.
//! No solver is linked; models go out as LP files and solutions come back as
//! `name value` text.

mod brute;
mod lp;

pub use brute::{all_simple_paths, brute_force_optimum, BruteForceResult};
pub use lp::{export_model, export_model_string, import_solution, import_solution_str, parse_solution_text, solution_text, SolutionReport};

use std::collections::HashMap;

use crate::net_model::{edfa_count, Topology};
use crate::power::{fiber_count, DeviceParams, Layer, NcMode, Scheme};
use crate::routing::RoutePlan;
use crate::traffic::DemandMatrix;
use crate::{Error, Result};

/// Which scheme the model optimizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelMode {
    Conventional,
    NcZeroPad,
    NcPartition,
}

impl ModelMode {
    pub fn name(&self) -> &'static str {
        match self {
            ModelMode::Conventional => "conventional",
            ModelMode::NcZeroPad => "nc_zero_pad",
            ModelMode::NcPartition => "nc_partition",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "conventional" => Ok(ModelMode::Conventional),
            "nc_zero_pad" => Ok(ModelMode::NcZeroPad),
            "nc_partition" => Ok(ModelMode::NcPartition),
            other => Err(Error::Parameter(format!("unknown model mode '{other}'"))),
        }
    }

    /// The matching evaluation regime of the power module.
    pub fn regime(&self) -> (Scheme, NcMode) {
        match self {
            ModelMode::Conventional => (Scheme::Conventional, NcMode::ZeroPad),
            ModelMode::NcZeroPad => (Scheme::Nc, NcMode::ZeroPad),
            ModelMode::NcPartition => (Scheme::Nc, NcMode::Partition),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarKind {
    Binary,
    Integer,
    Continuous,
}

#[derive(Debug, Clone)]
pub struct Variable {
    pub name: String,
    pub kind: VarKind,
    /// None = unbounded below
    pub lower: Option<f64>,
    /// None = unbounded above
    pub upper: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintSense {
    Le,
    Eq,
    Ge,
}

/// One linear constraint: sum of terms (variable index, coefficient)
/// compared against `rhs`.
#[derive(Debug, Clone)]
pub struct Constraint {
    pub name: String,
    pub terms: Vec<(usize, f64)>,
    pub sense: ConstraintSense,
    pub rhs: f64,
}

/// Solver-agnostic linear model.
#[derive(Debug, Clone)]
pub struct ModelIR {
    pub name: String,
    pub variables: Vec<Variable>,
    pub constraints: Vec<Constraint>,
    /// minimized linear objective: (variable index, coefficient)
    pub objective: Vec<(usize, f64)>,
    pub objective_constant: f64,
    index: HashMap<String, usize>,
}

impl ModelIR {
    fn new(name: String) -> Self {
        ModelIR {
            name,
            variables: Vec::new(),
            constraints: Vec::new(),
            objective: Vec::new(),
            objective_constant: 0.0,
            index: HashMap::new(),
        }
    }

    fn add_var(&mut self, name: String, kind: VarKind, lower: Option<f64>, upper: Option<f64>) -> usize {
        debug_assert!(!self.index.contains_key(&name), "duplicate variable {name}");
        let idx = self.variables.len();
        self.index.insert(name.clone(), idx);
        self.variables.push(Variable { name, kind, lower, upper });
        idx
    }

    fn constrain(&mut self, name: String, terms: Vec<(usize, f64)>, sense: ConstraintSense, rhs: f64) {
        self.constraints.push(Constraint { name, terms, sense, rhs });
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn recompute_objective(&self, values: &[f64]) -> f64 {
        self.objective_constant
            + self
                .objective
                .iter()
                .map(|&(i, coef)| coef * values[i])
                .sum::<f64>()
    }

    /// Absolute violation of one constraint under `values` (0 when satisfied).
    pub fn violation(&self, c: &Constraint, values: &[f64]) -> f64 {
        let lhs: f64 = c.terms.iter().map(|&(i, coef)| coef * values[i]).sum();
        match c.sense {
            ConstraintSense::Le => (lhs - c.rhs).max(0.0),
            ConstraintSense::Ge => (c.rhs - lhs).max(0.0),
            ConstraintSense::Eq => (lhs - c.rhs).abs(),
        }
    }
}

fn bname(s: u32, d: u32, m: u32, n: u32) -> String {
    format!("b_{s}_{d}_{m}_{n}")
}

fn wname(s: u32, d: u32, m: u32, n: u32) -> String {
    format!("w_{s}_{d}_{m}_{n}")
}

fn cname(s: u32, d: u32, n: u32, m: u32, k: u32) -> String {
    format!("c_{s}_{d}_{n}_{m}_{k}")
}

/// Builds the minimization model for one scheme on a non-bypass network.
pub fn build_model(
    t: &Topology,
    dm: &DemandMatrix,
    p: &DeviceParams,
    mode: ModelMode,
    layer: Layer,
) -> Result<ModelIR> {
    if layer != Layer::NonBypass {
        return Err(Error::Parameter(
            "the optimization model covers the non-bypass layer only".into(),
        ));
    }
    let n = t.node_count() as u32;
    if dm.node_count() != n as usize {
        return Err(Error::Parameter("demand matrix size differs from topology".into()));
    }
    let b_gbps = p.wavelength_gbps;
    let capacity = p.wavelengths as f64 * b_gbps;
    // big-M: the total offered traffic bounds any flow difference
    let big_m = dm.total_gbps().max(1.0);

    let mut ir = ModelIR::new(format!("ncwdm_{}_{}nodes", mode.name(), n));

    let demands: Vec<(u32, u32)> = (1..=n)
        .flat_map(|s| (1..=n).filter(move |&d| d != s).map(move |d| (s, d)))
        .collect();
    let dlinks: Vec<(u32, u32)> = {
        let mut v = Vec::new();
        for l in t.links() {
            v.push((l.a, l.b));
            v.push((l.b, l.a));
        }
        v.sort();
        v
    };

    // routing and flow variables
    for &(s, d) in &demands {
        for &(m, nn) in &dlinks {
            ir.add_var(bname(s, d, m, nn), VarKind::Binary, Some(0.0), Some(1.0));
            ir.add_var(wname(s, d, m, nn), VarKind::Continuous, Some(0.0), None);
        }
    }
    for &(m, nn) in &dlinks {
        ir.add_var(format!("wl_{m}_{nn}"), VarKind::Continuous, Some(0.0), None);
        ir.add_var(format!("f_{m}_{nn}"), VarKind::Integer, Some(0.0), None);
        if mode != ModelMode::NcPartition {
            ir.add_var(format!("Npo_{m}_{nn}"), VarKind::Continuous, Some(0.0), None);
            ir.add_var(format!("Npi_{m}_{nn}"), VarKind::Continuous, Some(0.0), None);
            ir.add_var(format!("Np_{m}_{nn}"), VarKind::Continuous, Some(0.0), None);
        }
    }
    for m in 1..=n {
        ir.add_var(format!("Y_{m}"), VarKind::Continuous, Some(0.0), None);
    }

    let coded = mode != ModelMode::Conventional;
    // interior triple index set: every node with two distinct neighbors
    let mut triples: Vec<(u32, u32, u32)> = Vec::new(); // (m, n, k) ordered n != k
    let mut triple_pairs: Vec<(u32, u32, u32)> = Vec::new(); // n < k
    if coded {
        for m in 1..=n {
            let nbrs: Vec<u32> = t.neighbors(m).iter().map(|&(v, _)| v).collect();
            for &a in &nbrs {
                for &b in &nbrs {
                    if a != b {
                        triples.push((m, a, b));
                    }
                }
            }
            for (i, &a) in nbrs.iter().enumerate() {
                for &b in &nbrs[i + 1..] {
                    triple_pairs.push((m, a, b));
                }
            }
        }
        for &(s, d) in &demands {
            for &(m, a, b) in &triples {
                ir.add_var(cname(s, d, a, m, b), VarKind::Binary, Some(0.0), Some(1.0));
            }
        }
        for &(m, a, b) in &triples {
            ir.add_var(format!("wp_{m}_{a}_{b}"), VarKind::Continuous, Some(0.0), None);
        }
        for &(m, a, b) in &triple_pairs {
            ir.add_var(format!("D_{m}_{a}_{b}"), VarKind::Continuous, None, None);
            ir.add_var(format!("Dp_{m}_{a}_{b}"), VarKind::Binary, Some(0.0), Some(1.0));
            ir.add_var(format!("Dm_{m}_{a}_{b}"), VarKind::Binary, Some(0.0), Some(1.0));
            ir.add_var(format!("X_{m}_{a}_{b}"), VarKind::Continuous, Some(0.0), None);
            if mode == ModelMode::NcPartition {
                ir.add_var(format!("Yr_{m}_{a}_{b}"), VarKind::Continuous, Some(0.0), None);
            }
        }
        for m in 1..=n {
            ir.add_var(format!("X_{m}"), VarKind::Continuous, Some(0.0), None);
        }
    }

    let var = |ir: &ModelIR, name: &str| -> usize {
        ir.index_of(name).unwrap_or_else(|| panic!("missing variable {name}"))
    };

    // both directions of a demand pair ride the same path, so opposite flows
    // meet at every intermediate node
    for &(s, d) in &demands {
        if s < d {
            for &(m, nn) in &dlinks {
                let terms = vec![
                    (var(&ir, &bname(s, d, m, nn)), 1.0),
                    (var(&ir, &bname(d, s, nn, m)), -1.0),
                ];
                ir.constrain(format!("pin_{s}_{d}_{m}_{nn}"), terms, ConstraintSense::Eq, 0.0);
            }
        }
    }

    // flow conservation at every node for every demand
    for &(s, d) in &demands {
        for m in 1..=n {
            let mut terms = Vec::new();
            for &(nb, _) in t.neighbors(m) {
                terms.push((var(&ir, &bname(s, d, m, nb)), 1.0));
                terms.push((var(&ir, &bname(s, d, nb, m)), -1.0));
            }
            let rhs = if m == s {
                1.0
            } else if m == d {
                -1.0
            } else {
                0.0
            };
            ir.constrain(format!("flow_{s}_{d}_{m}"), terms, ConstraintSense::Eq, rhs);
        }
        // per-link flow bound to the routing decision
        for &(m, nn) in &dlinks {
            let terms = vec![
                (var(&ir, &wname(s, d, m, nn)), 1.0),
                (var(&ir, &bname(s, d, m, nn)), -dm.gbps(s, d)),
            ];
            ir.constrain(format!("wdef_{s}_{d}_{m}_{nn}"), terms, ConstraintSense::Eq, 0.0);
        }
    }

    // aggregate flows and fiber capacity per directed link
    for &(m, nn) in &dlinks {
        let mut terms = vec![(var(&ir, &format!("wl_{m}_{nn}")), 1.0)];
        for &(s, d) in &demands {
            terms.push((var(&ir, &wname(s, d, m, nn)), -1.0));
        }
        ir.constrain(format!("agg_{m}_{nn}"), terms, ConstraintSense::Eq, 0.0);
        let terms = vec![
            (var(&ir, &format!("wl_{m}_{nn}")), 1.0),
            (var(&ir, &format!("f_{m}_{nn}")), -capacity),
        ];
        ir.constrain(format!("cap_{m}_{nn}"), terms, ConstraintSense::Le, 0.0);
    }

    // conventional port counting
    if mode == ModelMode::NcPartition {
        // partitioning removes end asymmetry: Y covers each demand once at
        // its source and once at its destination, plus the coding residue
        for m in 1..=n {
            let mut terms = vec![(var(&ir, &format!("Y_{m}")), 1.0)];
            let mut ends = 0.0;
            for &(s, d) in &demands {
                if s == m || d == m {
                    ends += dm.gbps(s, d) / (2.0 * b_gbps);
                }
            }
            for &(mm, a, b) in &triple_pairs {
                if mm == m {
                    terms.push((var(&ir, &format!("Yr_{m}_{a}_{b}")), -1.0));
                }
            }
            ir.constrain(format!("ysum_{m}"), terms, ConstraintSense::Eq, ends);
        }
    } else {
        for &(m, nn) in &dlinks {
            let mut out_terms = vec![(var(&ir, &format!("Npo_{m}_{nn}")), 1.0)];
            let mut in_terms = vec![(var(&ir, &format!("Npi_{m}_{nn}")), 1.0)];
            if mode == ModelMode::Conventional {
                // every wavelength on the link terminates in a port
                out_terms.push((var(&ir, &format!("wl_{m}_{nn}")), -1.0 / b_gbps));
                in_terms.push((var(&ir, &format!("wl_{nn}_{m}")), -1.0 / b_gbps));
            } else {
                // coded scheme: conventional ports only where traffic
                // originates or terminates
                for &(s, d) in &demands {
                    if s == m {
                        out_terms.push((var(&ir, &wname(s, d, m, nn)), -1.0 / b_gbps));
                    }
                    if d == m {
                        in_terms.push((var(&ir, &wname(s, d, nn, m)), -1.0 / b_gbps));
                    }
                }
            }
            ir.constrain(format!("npo_{m}_{nn}"), out_terms, ConstraintSense::Eq, 0.0);
            ir.constrain(format!("npi_{m}_{nn}"), in_terms, ConstraintSense::Eq, 0.0);
            // Np := max(Npo, Npi), tight under minimization
            ir.constrain(
                format!("npmaxo_{m}_{nn}"),
                vec![
                    (var(&ir, &format!("Np_{m}_{nn}")), 1.0),
                    (var(&ir, &format!("Npo_{m}_{nn}")), -1.0),
                ],
                ConstraintSense::Ge,
                0.0,
            );
            ir.constrain(
                format!("npmaxi_{m}_{nn}"),
                vec![
                    (var(&ir, &format!("Np_{m}_{nn}")), 1.0),
                    (var(&ir, &format!("Npi_{m}_{nn}")), -1.0),
                ],
                ConstraintSense::Ge,
                0.0,
            );
        }
        for m in 1..=n {
            let mut terms = vec![(var(&ir, &format!("Y_{m}")), 1.0)];
            for &(nb, _) in t.neighbors(m) {
                terms.push((var(&ir, &format!("Np_{m}_{nb}")), -1.0));
            }
            ir.constrain(format!("ysum_{m}"), terms, ConstraintSense::Eq, 0.0);
        }
    }

    if coded {
        // c = b(n,m) AND b(m,k), kept linear with the three standard cuts
        for &(s, d) in &demands {
            for &(m, a, b) in &triples {
                let c = var(&ir, &cname(s, d, a, m, b));
                let b_in = var(&ir, &bname(s, d, a, m));
                let b_out = var(&ir, &bname(s, d, m, b));
                ir.constrain(
                    format!("cub1_{s}_{d}_{a}_{m}_{b}"),
                    vec![(c, 1.0), (b_in, -1.0)],
                    ConstraintSense::Le,
                    0.0,
                );
                ir.constrain(
                    format!("cub2_{s}_{d}_{a}_{m}_{b}"),
                    vec![(c, 1.0), (b_out, -1.0)],
                    ConstraintSense::Le,
                    0.0,
                );
                ir.constrain(
                    format!("clb_{s}_{d}_{a}_{m}_{b}"),
                    vec![(c, 1.0), (b_in, -1.0), (b_out, -1.0)],
                    ConstraintSense::Ge,
                    -1.0,
                );
            }
        }
        // aggregate pass-through flow per (intermediate, neighbor pair)
        for &(m, a, b) in &triples {
            let mut terms = vec![(var(&ir, &format!("wp_{m}_{a}_{b}")), 1.0)];
            for &(s, d) in &demands {
                terms.push((var(&ir, &cname(s, d, a, m, b)), -dm.gbps(s, d)));
            }
            ir.constrain(format!("wpdef_{m}_{a}_{b}"), terms, ConstraintSense::Eq, 0.0);
        }
        // flow difference with sign indicators
        for &(m, a, b) in &triple_pairs {
            let d_var = var(&ir, &format!("D_{m}_{a}_{b}"));
            let dp = var(&ir, &format!("Dp_{m}_{a}_{b}"));
            let dmi = var(&ir, &format!("Dm_{m}_{a}_{b}"));
            let wp_ab = var(&ir, &format!("wp_{m}_{a}_{b}"));
            let wp_ba = var(&ir, &format!("wp_{m}_{b}_{a}"));
            let x = var(&ir, &format!("X_{m}_{a}_{b}"));
            ir.constrain(
                format!("ddef_{m}_{a}_{b}"),
                vec![(d_var, 1.0), (wp_ab, -1.0), (wp_ba, 1.0)],
                ConstraintSense::Eq,
                0.0,
            );
            ir.constrain(
                format!("bigmp_{m}_{a}_{b}"),
                vec![(d_var, 1.0), (dp, -big_m)],
                ConstraintSense::Le,
                0.0,
            );
            ir.constrain(
                format!("bigmm_{m}_{a}_{b}"),
                vec![(d_var, 1.0), (dmi, big_m)],
                ConstraintSense::Ge,
                0.0,
            );
            ir.constrain(
                format!("dex_{m}_{a}_{b}"),
                vec![(dp, 1.0), (dmi, 1.0)],
                ConstraintSense::Le,
                1.0,
            );
            let mb = big_m / b_gbps;
            match mode {
                ModelMode::NcZeroPad => {
                    // X selects the larger of the two opposite flows
                    ir.constrain(
                        format!("xlb1_{m}_{a}_{b}"),
                        vec![(x, 1.0), (wp_ab, -1.0 / b_gbps)],
                        ConstraintSense::Ge,
                        0.0,
                    );
                    ir.constrain(
                        format!("xlb2_{m}_{a}_{b}"),
                        vec![(x, 1.0), (wp_ba, -1.0 / b_gbps)],
                        ConstraintSense::Ge,
                        0.0,
                    );
                    ir.constrain(
                        format!("xub1_{m}_{a}_{b}"),
                        vec![(x, 1.0), (wp_ab, -1.0 / b_gbps), (dmi, -mb)],
                        ConstraintSense::Le,
                        0.0,
                    );
                    ir.constrain(
                        format!("xub2_{m}_{a}_{b}"),
                        vec![(x, 1.0), (wp_ba, -1.0 / b_gbps), (dp, -mb)],
                        ConstraintSense::Le,
                        0.0,
                    );
                }
                ModelMode::NcPartition => {
                    // X selects the smaller flow; the residue goes to Yr
                    ir.constrain(
                        format!("xub1_{m}_{a}_{b}"),
                        vec![(x, 1.0), (wp_ab, -1.0 / b_gbps)],
                        ConstraintSense::Le,
                        0.0,
                    );
                    ir.constrain(
                        format!("xub2_{m}_{a}_{b}"),
                        vec![(x, 1.0), (wp_ba, -1.0 / b_gbps)],
                        ConstraintSense::Le,
                        0.0,
                    );
                    ir.constrain(
                        format!("xlb1_{m}_{a}_{b}"),
                        vec![(x, 1.0), (wp_ab, -1.0 / b_gbps), (dmi, -mb)],
                        ConstraintSense::Ge,
                        -mb,
                    );
                    ir.constrain(
                        format!("xlb2_{m}_{a}_{b}"),
                        vec![(x, 1.0), (wp_ba, -1.0 / b_gbps), (dmi, mb)],
                        ConstraintSense::Ge,
                        0.0,
                    );
                    let yr = var(&ir, &format!("Yr_{m}_{a}_{b}"));
                    ir.constrain(
                        format!("yr1_{m}_{a}_{b}"),
                        vec![(yr, 1.0), (d_var, -1.0 / b_gbps)],
                        ConstraintSense::Ge,
                        0.0,
                    );
                    ir.constrain(
                        format!("yr2_{m}_{a}_{b}"),
                        vec![(yr, 1.0), (d_var, 1.0 / b_gbps)],
                        ConstraintSense::Ge,
                        0.0,
                    );
                }
                ModelMode::Conventional => unreachable!(),
            }
        }
        // coded ports per node
        for m in 1..=n {
            let mut terms = vec![(var(&ir, &format!("X_{m}")), 1.0)];
            for &(mm, a, b) in &triple_pairs {
                if mm == m {
                    terms.push((var(&ir, &format!("X_{m}_{a}_{b}")), -1.0));
                }
            }
            ir.constrain(format!("xsum_{m}"), terms, ConstraintSense::Eq, 0.0);
        }
    }

    // objective: ports + transponders + amplifiers, plus constant per-node
    // switch and mux/demux terms
    let mut objective = Vec::new();
    for m in 1..=n {
        objective.push((var(&ir, &format!("Y_{m}")), p.router_port_w));
        if coded {
            objective.push((var(&ir, &format!("X_{m}")), p.nc_port_w));
        }
    }
    for &(m, nn) in &dlinks {
        objective.push((var(&ir, &format!("wl_{m}_{nn}")), p.transponder_w / b_gbps));
        let km = t.link_length(m, nn).expect("directed link exists");
        let amps = edfa_count(km, p.edfa_span_km) as f64;
        if amps > 0.0 {
            objective.push((var(&ir, &format!("f_{m}_{nn}")), p.edfa_w * amps));
        }
    }
    ir.objective = objective;
    ir.objective_constant = n as f64 * (p.switch_w + p.mux_w);
    Ok(ir)
}

/// Converts a route plan into a full variable assignment for `ir`, using the
/// same formulas the constraints encode. The result is feasible whenever the
/// plan is a valid single-path routing with pinned reverse paths.
pub fn plan_to_assignment(
    ir: &ModelIR,
    t: &Topology,
    dm: &DemandMatrix,
    plan: &RoutePlan,
    p: &DeviceParams,
    mode: ModelMode,
) -> Vec<f64> {
    let mut values = vec![0.0; ir.variables.len()];
    let mut set = |name: String, v: f64| {
        if let Some(i) = ir.index_of(&name) {
            values[i] = v;
        }
    };
    let b_gbps = p.wavelength_gbps;

    for (&(s, d), path) in &plan.paths {
        let volume = dm.gbps(s, d);
        for w in path.windows(2) {
            set(bname(s, d, w[0], w[1]), 1.0);
            set(wname(s, d, w[0], w[1]), volume);
        }
        for w in path.windows(3) {
            set(cname(s, d, w[0], w[1], w[2]), 1.0);
        }
    }
    for (&(m, nn), &load) in &plan.link_load {
        set(format!("wl_{m}_{nn}"), load);
        set(format!("f_{m}_{nn}"), fiber_count(load, p) as f64);
    }

    match mode {
        ModelMode::Conventional => {
            for l in t.links() {
                for (m, nn) in [(l.a, l.b), (l.b, l.a)] {
                    let out = plan.load(m, nn) / b_gbps;
                    let inbound = plan.load(nn, m) / b_gbps;
                    set(format!("Npo_{m}_{nn}"), out);
                    set(format!("Npi_{m}_{nn}"), inbound);
                    set(format!("Np_{m}_{nn}"), out.max(inbound));
                }
            }
            for m in 1..=t.node_count() as u32 {
                let y: f64 = t
                    .neighbors(m)
                    .iter()
                    .map(|&(nb, _)| (plan.load(m, nb).max(plan.load(nb, m))) / b_gbps)
                    .sum();
                set(format!("Y_{m}"), y);
            }
        }
        ModelMode::NcZeroPad => {
            for l in t.links() {
                for (m, nn) in [(l.a, l.b), (l.b, l.a)] {
                    let out = plan.origin_out.get(&(m, nn)).copied().unwrap_or(0.0) / b_gbps;
                    let inbound = plan.term_in.get(&(m, nn)).copied().unwrap_or(0.0) / b_gbps;
                    set(format!("Npo_{m}_{nn}"), out);
                    set(format!("Npi_{m}_{nn}"), inbound);
                    set(format!("Np_{m}_{nn}"), out.max(inbound));
                }
            }
            for m in 1..=t.node_count() as u32 {
                let y: f64 = t
                    .neighbors(m)
                    .iter()
                    .map(|&(nb, _)| {
                        let out = plan.origin_out.get(&(m, nb)).copied().unwrap_or(0.0);
                        let inbound = plan.term_in.get(&(m, nb)).copied().unwrap_or(0.0);
                        out.max(inbound) / b_gbps
                    })
                    .sum();
                set(format!("Y_{m}"), y);
            }
        }
        ModelMode::NcPartition => {
            let mut y = vec![0.0; t.node_count()];
            for (s, d, v) in dm.iter() {
                y[(s - 1) as usize] += v / (2.0 * b_gbps);
                y[(d - 1) as usize] += v / (2.0 * b_gbps);
            }
            for tr in &plan.coding_triples {
                y[(tr.m - 1) as usize] += (tr.fwd_gbps - tr.rev_gbps).abs() / b_gbps;
            }
            for m in 1..=t.node_count() as u32 {
                set(format!("Y_{m}"), y[(m - 1) as usize]);
            }
        }
    }

    if mode != ModelMode::Conventional {
        let mut x_node = vec![0.0; t.node_count()];
        for tr in &plan.coding_triples {
            set(format!("wp_{}_{}_{}", tr.m, tr.n, tr.k), tr.fwd_gbps);
            set(format!("wp_{}_{}_{}", tr.m, tr.k, tr.n), tr.rev_gbps);
            let delta = tr.fwd_gbps - tr.rev_gbps;
            set(format!("D_{}_{}_{}", tr.m, tr.n, tr.k), delta);
            if delta > 1e-9 {
                set(format!("Dp_{}_{}_{}", tr.m, tr.n, tr.k), 1.0);
            } else if delta < -1e-9 {
                set(format!("Dm_{}_{}_{}", tr.m, tr.n, tr.k), 1.0);
            }
            let x = match mode {
                ModelMode::NcZeroPad => tr.fwd_gbps.max(tr.rev_gbps) / b_gbps,
                _ => tr.fwd_gbps.min(tr.rev_gbps) / b_gbps,
            };
            set(format!("X_{}_{}_{}", tr.m, tr.n, tr.k), x);
            if mode == ModelMode::NcPartition {
                set(format!("Yr_{}_{}_{}", tr.m, tr.n, tr.k), delta.abs() / b_gbps);
            }
            x_node[(tr.m - 1) as usize] += x;
        }
        for m in 1..=t.node_count() as u32 {
            set(format!("X_{m}"), x_node[(m - 1) as usize]);
        }
    }
    values
}
