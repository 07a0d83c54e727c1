//! Minimum-hop routing, bidirectional route plans, coding-opportunity
//! extraction, and a discrete-time XOR relay simulator.
//!
//! Both directions of a demand pair are pinned to the same node path so that
//! opposite flows meet at every intermediate node and can be coded there.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::net_model::Topology;
use crate::traffic::DemandMatrix;
use crate::{Error, Result};

const KM_EPS: f64 = 1e-6;

/// An intermediate node `m` where opposite flows between its path neighbors
/// `n` and `k` (n < k) can be XOR-combined, with aggregated volumes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CodingTriple {
    pub n: u32,
    pub m: u32,
    pub k: u32,
    /// aggregate Gbps flowing n -> m -> k
    pub fwd_gbps: f64,
    /// aggregate Gbps flowing k -> m -> n
    pub rev_gbps: f64,
}

/// One bidirectional demand pair (s < d) with its pinned path length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairFlow {
    pub s: u32,
    pub d: u32,
    /// Gbps s -> d
    pub fwd_gbps: f64,
    /// Gbps d -> s
    pub rev_gbps: f64,
    pub hops: u32,
}

/// Routing result: per-demand paths, directed link loads, coding triples,
/// and per-pair volumes.
#[derive(Debug, Clone)]
pub struct RoutePlan {
    pub node_count: usize,
    /// ordered (s, d) -> node sequence [s, ..., d]
    pub paths: BTreeMap<(u32, u32), Vec<u32>>,
    /// directed (m, n) -> aggregate Gbps
    pub link_load: BTreeMap<(u32, u32), f64>,
    pub coding_triples: Vec<CodingTriple>,
    /// one entry per unordered pair, s < d
    pub pairs: Vec<PairFlow>,
    /// (m, n) -> Gbps originating at m and leaving over link (m, n)
    pub origin_out: BTreeMap<(u32, u32), f64>,
    /// (m, n) -> Gbps terminating at m and arriving over link (n, m)
    pub term_in: BTreeMap<(u32, u32), f64>,
}

#[derive(Serialize)]
struct PlanExport<'a> {
    paths: Vec<PathExport<'a>>,
    link_loads: Vec<LoadExport>,
    coding_triples: &'a [CodingTriple],
}

#[derive(Serialize)]
struct PathExport<'a> {
    s: u32,
    d: u32,
    nodes: &'a [u32],
}

#[derive(Serialize)]
struct LoadExport {
    m: u32,
    n: u32,
    gbps: f64,
}

impl RoutePlan {
    pub fn path(&self, s: u32, d: u32) -> &[u32] {
        &self.paths[&(s, d)]
    }

    pub fn load(&self, m: u32, n: u32) -> f64 {
        self.link_load.get(&(m, n)).copied().unwrap_or(0.0)
    }

    /// Sum of directed link loads, equal to sum over demands of volume x hops.
    pub fn total_link_gbps(&self) -> f64 {
        self.link_load.values().sum()
    }

    /// JSON export with `paths`, `link_loads` and `coding_triples` arrays.
    pub fn to_json_string(&self) -> String {
        let export = PlanExport {
            paths: self
                .paths
                .iter()
                .map(|(&(s, d), nodes)| PathExport { s, d, nodes })
                .collect(),
            link_loads: self
                .link_load
                .iter()
                .map(|(&(m, n), &gbps)| LoadExport { m, n, gbps })
                .collect(),
            coding_triples: &self.coding_triples,
        };
        serde_json::to_string_pretty(&export).expect("plan serializes")
    }
}

/// Minimum-hop path from `s` to `d`; among minimum-hop paths the one with the
/// smallest total km, remaining ties broken by lexicographically smallest
/// node sequence.
pub fn min_hop_path(t: &Topology, s: u32, d: u32) -> Result<Vec<u32>> {
    if s == d {
        return Err(Error::Parameter(format!("path endpoints coincide at {s}")));
    }
    let n = t.node_count();
    // BFS levels toward d
    let mut hops = vec![u32::MAX; n];
    hops[(d - 1) as usize] = 0;
    let mut queue = VecDeque::from([d]);
    while let Some(u) = queue.pop_front() {
        for &(v, _) in t.neighbors(u) {
            if hops[(v - 1) as usize] == u32::MAX {
                hops[(v - 1) as usize] = hops[(u - 1) as usize] + 1;
                queue.push_back(v);
            }
        }
    }
    if hops[(s - 1) as usize] == u32::MAX {
        return Err(Error::Connectivity(format!("node {d} unreachable from {s}")));
    }
    // min km toward d over the BFS level DAG, filled in level order
    let mut order: Vec<u32> = (1..=n as u32).filter(|&v| hops[(v - 1) as usize] != u32::MAX).collect();
    order.sort_by_key(|&v| hops[(v - 1) as usize]);
    let mut km = vec![f64::INFINITY; n];
    km[(d - 1) as usize] = 0.0;
    for &v in &order {
        if v == d {
            continue;
        }
        let hv = hops[(v - 1) as usize];
        let mut best = f64::INFINITY;
        for &(u, len) in t.neighbors(v) {
            if hops[(u - 1) as usize] + 1 == hv {
                let cand = len + km[(u - 1) as usize];
                if cand < best {
                    best = cand;
                }
            }
        }
        km[(v - 1) as usize] = best;
    }
    // greedy construction: smallest next node that stays on an optimal path
    let mut path = vec![s];
    let mut cur = s;
    while cur != d {
        let hc = hops[(cur - 1) as usize];
        let kc = km[(cur - 1) as usize];
        let mut next = None;
        for &(v, len) in t.neighbors(cur) {
            if hops[(v - 1) as usize] + 1 == hc && len + km[(v - 1) as usize] <= kc + KM_EPS {
                next = Some(v);
                break; // neighbors sorted by id, first hit is lexicographic min
            }
        }
        cur = next.expect("optimal successor exists");
        path.push(cur);
    }
    Ok(path)
}

/// Builds a route plan from one chosen path per unordered pair; the reverse
/// direction is pinned to the reversed path. Used by both the minimum-hop
/// heuristic and the brute-force oracle.
pub fn plan_from_pair_paths(
    t: &Topology,
    dm: &DemandMatrix,
    mut path_of: impl FnMut(u32, u32) -> Result<Vec<u32>>,
) -> Result<RoutePlan> {
    let n = t.node_count();
    debug_assert_eq!(n, dm.node_count());
    let mut paths = BTreeMap::new();
    let mut link_load: BTreeMap<(u32, u32), f64> = BTreeMap::new();
    let mut origin_out: BTreeMap<(u32, u32), f64> = BTreeMap::new();
    let mut term_in: BTreeMap<(u32, u32), f64> = BTreeMap::new();
    let mut triples: BTreeMap<(u32, u32, u32), (f64, f64)> = BTreeMap::new();
    let mut pairs = Vec::with_capacity(n * (n - 1) / 2);

    for s in 1..=n as u32 {
        for d in (s + 1)..=n as u32 {
            let fwd = path_of(s, d)?;
            debug_assert!(fwd.first() == Some(&s) && fwd.last() == Some(&d));
            let lf = dm.gbps(s, d);
            let lr = dm.gbps(d, s);
            for w in fwd.windows(2) {
                *link_load.entry((w[0], w[1])).or_default() += lf;
                *link_load.entry((w[1], w[0])).or_default() += lr;
            }
            *origin_out.entry((s, fwd[1])).or_default() += lf;
            *term_in.entry((d, fwd[fwd.len() - 2])).or_default() += lf;
            *origin_out.entry((d, fwd[fwd.len() - 2])).or_default() += lr;
            *term_in.entry((s, fwd[1])).or_default() += lr;
            for w in fwd.windows(3) {
                let (prev, m, next) = (w[0], w[1], w[2]);
                let key = (m, prev.min(next), prev.max(next));
                let entry = triples.entry(key).or_insert((0.0, 0.0));
                if prev < next {
                    entry.0 += lf;
                    entry.1 += lr;
                } else {
                    entry.0 += lr;
                    entry.1 += lf;
                }
            }
            pairs.push(PairFlow { s, d, fwd_gbps: lf, rev_gbps: lr, hops: (fwd.len() - 1) as u32 });
            let mut rev = fwd.clone();
            rev.reverse();
            paths.insert((s, d), fwd);
            paths.insert((d, s), rev);
        }
    }

    let coding_triples = triples
        .into_iter()
        .map(|((m, a, b), (fwd_gbps, rev_gbps))| CodingTriple { n: a, m, k: b, fwd_gbps, rev_gbps })
        .collect();
    Ok(RoutePlan {
        node_count: n,
        paths,
        link_load,
        coding_triples,
        pairs,
        origin_out,
        term_in,
    })
}

/// Routes every demand on its minimum-hop path with the reverse direction
/// pinned, and extracts coding triples.
pub fn route_all(t: &Topology, dm: &DemandMatrix) -> Result<RoutePlan> {
    plan_from_pair_paths(t, dm, |s, d| min_hop_path(t, s, d))
}

/// Recomputes coding triples by scanning every stored path's interior nodes.
/// Independent of the aggregation done in `plan_from_pair_paths`.
pub fn coding_opportunities(plan: &RoutePlan) -> Vec<CodingTriple> {
    let volumes: HashMap<(u32, u32), (f64, f64)> = plan
        .pairs
        .iter()
        .map(|p| ((p.s, p.d), (p.fwd_gbps, p.rev_gbps)))
        .collect();
    let mut triples: BTreeMap<(u32, u32, u32), (f64, f64)> = BTreeMap::new();
    for (&(s, d), path) in &plan.paths {
        if s > d {
            continue; // reverse paths mirror the forward scan
        }
        let (lf, lr) = volumes[&(s, d)];
        for w in path.windows(3) {
            let key = (w[1], w[0].min(w[2]), w[0].max(w[2]));
            let entry = triples.entry(key).or_insert((0.0, 0.0));
            if w[0] < w[2] {
                entry.0 += lf;
                entry.1 += lr;
            } else {
                entry.0 += lr;
                entry.1 += lf;
            }
        }
    }
    triples
        .into_iter()
        .map(|((m, a, b), (fwd_gbps, rev_gbps))| CodingTriple { n: a, m, k: b, fwd_gbps, rev_gbps })
        .collect()
}

/// Checks flow conservation for every demand at every node and the aggregate
/// relation sum(link loads) == sum(volume x hops).
pub fn check_flow_conservation(t: &Topology, dm: &DemandMatrix, plan: &RoutePlan) -> Result<()> {
    let n = t.node_count() as u32;
    for (s, d) in t.ordered_pairs() {
        let path = plan.path(s, d);
        if path.first() != Some(&s) || path.last() != Some(&d) {
            return Err(Error::Validation(format!("path ({s},{d}) has wrong endpoints")));
        }
        let distinct: BTreeSet<u32> = path.iter().copied().collect();
        if distinct.len() != path.len() {
            return Err(Error::Validation(format!("path ({s},{d}) is not simple")));
        }
        for w in path.windows(2) {
            if t.link_length(w[0], w[1]).is_none() {
                return Err(Error::Validation(format!(
                    "path ({s},{d}) uses missing link ({}, {})",
                    w[0], w[1]
                )));
            }
        }
        let volume = dm.gbps(s, d);
        for m in 1..=n {
            let mut net = 0.0;
            for w in path.windows(2) {
                if w[0] == m {
                    net += volume;
                }
                if w[1] == m {
                    net -= volume;
                }
            }
            let expect = if m == s {
                volume
            } else if m == d {
                -volume
            } else {
                0.0
            };
            if (net - expect).abs() > 1e-9 {
                return Err(Error::Validation(format!(
                    "flow conservation broken for ({s},{d}) at node {m}"
                )));
            }
        }
        // bidirectional symmetry
        let rev = plan.path(d, s);
        if !rev.iter().rev().eq(path.iter()) {
            return Err(Error::Validation(format!("path ({d},{s}) is not the reverse of ({s},{d})")));
        }
    }
    let hop_weighted: f64 = plan
        .pairs
        .iter()
        .map(|p| (p.fwd_gbps + p.rev_gbps) * p.hops as f64)
        .sum();
    if (plan.total_link_gbps() - hop_weighted).abs() > 1e-6 * hop_weighted.max(1.0) {
        return Err(Error::Validation("link loads disagree with volume x hops".into()));
    }
    Ok(())
}

/// Outcome of the time-slotted XOR relay exchange.
#[derive(Debug, Clone, PartialEq)]
pub struct Exchanged {
    pub recovered_a: Vec<u8>,
    pub recovered_b: Vec<u8>,
    /// slots until both ends finished decoding
    pub slots: usize,
}

/// In-flight packet: payload byte plus the set of original packets XORed in.
/// Tags are (stream, index) with stream 0 = A-side, 1 = B-side.
#[derive(Debug, Clone, Default)]
struct Packet {
    tags: BTreeSet<(u8, u32)>,
    payload: u8,
}

impl Packet {
    fn xor(mut self, other: &Packet) -> Packet {
        self.payload ^= other.payload;
        for tag in &other.tags {
            if !self.tags.remove(tag) {
                self.tags.insert(*tag);
            }
        }
        self
    }
}

/// Decoder state of an end node: known original packets plus undecodable
/// residue kept for later.
#[derive(Debug, Default)]
struct EndNode {
    known: HashMap<(u8, u32), u8>,
    pending: Vec<Packet>,
    recovered: BTreeMap<u32, u8>,
    want_stream: u8,
}

impl EndNode {
    fn receive(&mut self, pkt: Packet) {
        self.pending.push(pkt);
        loop {
            let mut progressed = false;
            let mut i = 0;
            while i < self.pending.len() {
                let mut pkt = self.pending[i].clone();
                let mut reduced = Packet { tags: BTreeSet::new(), payload: pkt.payload };
                pkt.tags.retain(|tag| match self.known.get(tag) {
                    Some(&byte) => {
                        reduced.payload ^= byte;
                        false
                    }
                    None => true,
                });
                match pkt.tags.len() {
                    0 => {
                        self.pending.swap_remove(i);
                        progressed = true;
                    }
                    1 => {
                        let tag = *pkt.tags.iter().next().unwrap();
                        self.known.insert(tag, reduced.payload);
                        if tag.0 == self.want_stream {
                            self.recovered.insert(tag.1, reduced.payload);
                        }
                        self.pending.swap_remove(i);
                        progressed = true;
                    }
                    _ => i += 1,
                }
            }
            if !progressed {
                break;
            }
        }
    }
}

/// Relays two opposite byte streams over a chain with `hops` links, XOR-coding
/// at every intermediate node, and returns the byte-exact recovered streams.
///
/// Each byte is one packet per slot; the shorter stream is zero-padded so that
/// the relay stays synchronized. Intermediates store-and-forward: a packet
/// arriving alone is forwarded unchanged, packets arriving from both sides in
/// the same slot are XORed and multicast back both ways.
pub fn simulate_coded_exchange(stream_a: &[u8], stream_b: &[u8], hops: u32) -> Result<Exchanged> {
    if hops < 2 {
        return Err(Error::Parameter(format!("need at least 2 hops, got {hops}")));
    }
    let len = stream_a.len().max(stream_b.len());
    if len == 0 {
        return Ok(Exchanged { recovered_a: Vec::new(), recovered_b: Vec::new(), slots: 0 });
    }
    let padded_a: Vec<u8> = (0..len).map(|i| stream_a.get(i).copied().unwrap_or(0)).collect();
    let padded_b: Vec<u8> = (0..len).map(|i| stream_b.get(i).copied().unwrap_or(0)).collect();

    let nodes = hops as usize + 1;
    // left end (index 0) sends A rightward and wants B; right end vice versa
    let mut left = EndNode { want_stream: 1, ..Default::default() };
    let mut right = EndNode { want_stream: 0, ..Default::default() };
    for i in 0..len as u32 {
        left.known.insert((0, i), padded_a[i as usize]);
        right.known.insert((1, i), padded_b[i as usize]);
    }

    // in-flight packets per directed hop, delivered next slot
    let mut rightward: Vec<Option<Packet>> = vec![None; nodes]; // [i] -> node i receives from i-1
    let mut leftward: Vec<Option<Packet>> = vec![None; nodes]; // [i] -> node i receives from i+1
    let mut slots = 0usize;
    let guard = 4 * (len + nodes) + 16;

    for slot in 1..=guard {
        let mut next_right: Vec<Option<Packet>> = vec![None; nodes];
        let mut next_left: Vec<Option<Packet>> = vec![None; nodes];

        // end nodes emit one fresh packet per slot while the stream lasts
        if slot <= len {
            let idx = (slot - 1) as u32;
            next_right[1] = Some(Packet {
                tags: BTreeSet::from([(0u8, idx)]),
                payload: padded_a[slot - 1],
            });
            next_left[nodes - 2] = Some(Packet {
                tags: BTreeSet::from([(1u8, idx)]),
                payload: padded_b[slot - 1],
            });
        }

        for node in 0..nodes {
            let from_left = rightward[node].take();
            let from_right = leftward[node].take();
            if node == 0 {
                if let Some(p) = from_right {
                    left.receive(p);
                }
                continue;
            }
            if node == nodes - 1 {
                if let Some(p) = from_left {
                    right.receive(p);
                }
                continue;
            }
            match (from_left, from_right) {
                (Some(a), Some(b)) => {
                    // synchronized opposite packets: encode and multicast
                    let coded = a.xor(&b);
                    put(&mut next_left[node - 1], coded.clone());
                    put(&mut next_right[node + 1], coded);
                }
                (Some(a), None) => {
                    put(&mut next_right[node + 1], a);
                }
                (None, Some(b)) => {
                    put(&mut next_left[node - 1], b);
                }
                (None, None) => {}
            }
        }
        rightward = next_right;
        leftward = next_left;
        if left.recovered.len() == len && right.recovered.len() == len {
            slots = slot;
            break;
        }
    }
    if left.recovered.len() != len || right.recovered.len() != len {
        return Err(Error::Validation("relay failed to deliver both streams".into()));
    }
    let collect = |end: &EndNode, keep: usize| -> Vec<u8> {
        (0..keep as u32).map(|i| end.recovered[&i]).collect()
    };
    Ok(Exchanged {
        recovered_a: collect(&right, stream_a.len()),
        recovered_b: collect(&left, stream_b.len()),
        slots,
    })
}

/// Each directed hop carries at most one packet per slot.
fn put(slot: &mut Option<Packet>, pkt: Packet) {
    debug_assert!(slot.is_none(), "two packets on one directed hop in one slot");
    *slot = Some(pkt);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net_model::{build_regular, nsfnet, RegularKind};
    use crate::traffic::{equal_matrix, generate_matrix};
    use std::collections::BTreeMap as Map;

    #[test]
    fn nsfnet_direct_and_distance_tiebreak() {
        let t = nsfnet();
        assert_eq!(min_hop_path(&t, 1, 4).unwrap(), vec![1, 4]);
        assert_eq!(min_hop_path(&t, 1, 5).unwrap(), vec![1, 4, 5]);
    }

    #[test]
    fn ring_lexicographic_tiebreak() {
        let t = build_regular(RegularKind::Ring, 4, 100.0, None).unwrap();
        assert_eq!(min_hop_path(&t, 1, 3).unwrap(), vec![1, 2, 3]);
    }

    #[test]
    fn full_mesh_plan_has_no_triples() {
        let t = build_regular(RegularKind::FullMesh, 6, 100.0, None).unwrap();
        let dm = generate_matrix(&t, 12, 1);
        let plan = route_all(&t, &dm).unwrap();
        assert!(plan.coding_triples.is_empty());
        assert!(plan.paths.values().all(|p| p.len() == 2));
    }

    #[test]
    fn line3_single_triple() {
        let t = build_regular(RegularKind::Line, 3, 80.0, None).unwrap();
        let mut entries = Map::new();
        entries.insert((1u32, 3u32), 40.0);
        entries.insert((3u32, 1u32), 40.0);
        entries.insert((1u32, 2u32), 0.0);
        entries.insert((2u32, 1u32), 0.0);
        entries.insert((2u32, 3u32), 0.0);
        entries.insert((3u32, 2u32), 0.0);
        let dm = crate::traffic::DemandMatrix::from_entries(3, &entries).unwrap();
        let plan = route_all(&t, &dm).unwrap();
        assert_eq!(plan.coding_triples.len(), 1);
        let tr = plan.coding_triples[0];
        assert_eq!((tr.n, tr.m, tr.k), (1, 2, 3));
        assert_eq!((tr.fwd_gbps, tr.rev_gbps), (40.0, 40.0));
    }

    #[test]
    fn line4_end_to_end_triples() {
        let t = build_regular(RegularKind::Line, 4, 80.0, None).unwrap();
        let mut entries = Map::new();
        for (s, d) in t.ordered_pairs() {
            entries.insert((s, d), 0.0);
        }
        entries.insert((1, 4), 40.0);
        entries.insert((4, 1), 40.0);
        let dm = crate::traffic::DemandMatrix::from_entries(4, &entries).unwrap();
        let plan = route_all(&t, &dm).unwrap();
        assert_eq!(plan.coding_triples.len(), 2);
        for tr in &plan.coding_triples {
            assert_eq!(tr.fwd_gbps, 40.0);
            assert_eq!(tr.rev_gbps, 40.0);
        }
    }

    #[test]
    fn aggregate_load_matches_hop_weighted_volume() {
        let t = nsfnet();
        let dm = equal_matrix(14, 100.0);
        let plan = route_all(&t, &dm).unwrap();
        check_flow_conservation(&t, &dm, &plan).unwrap();
        let h = crate::net_model::hop_metrics(&t).unwrap();
        let expect: f64 = 100.0 * h.total() as f64;
        assert!((plan.total_link_gbps() - expect).abs() < 1e-6);
        for p in &plan.pairs {
            assert_eq!(p.hops, h.hop(p.s, p.d));
        }
    }

    #[test]
    fn independent_triple_recount_matches() {
        let t = nsfnet();
        let dm = generate_matrix(&t, 22, 7);
        let plan = route_all(&t, &dm).unwrap();
        let recount = coding_opportunities(&plan);
        assert_eq!(plan.coding_triples.len(), recount.len());
        for (a, b) in plan.coding_triples.iter().zip(&recount) {
            assert_eq!((a.n, a.m, a.k), (b.n, b.m, b.k));
            assert!((a.fwd_gbps - b.fwd_gbps).abs() < 1e-9);
            assert!((a.rev_gbps - b.rev_gbps).abs() < 1e-9);
        }
    }

    #[test]
    fn adjacent_only_demands_leave_no_triples() {
        let t = nsfnet();
        let mut entries = Map::new();
        for (s, d) in t.ordered_pairs() {
            let v = if t.link_length(s, d).is_some() { 40.0 } else { 0.0 };
            entries.insert((s, d), v);
        }
        let dm = crate::traffic::DemandMatrix::from_entries(14, &entries).unwrap();
        let plan = route_all(&t, &dm).unwrap();
        assert!(plan
            .coding_triples
            .iter()
            .all(|tr| tr.fwd_gbps == 0.0 && tr.rev_gbps == 0.0));
    }

    #[test]
    fn relay_matches_figure_walkthrough() {
        let out = simulate_coded_exchange(&[1, 2, 3], &[0xA, 0xB, 0xC], 3).unwrap();
        assert_eq!(out.recovered_a, vec![1, 2, 3]);
        assert_eq!(out.recovered_b, vec![0xA, 0xB, 0xC]);
        assert_eq!(out.slots, 6);
    }

    #[test]
    fn relay_one_empty_stream() {
        let out = simulate_coded_exchange(&[7, 8, 9], &[], 2).unwrap();
        assert_eq!(out.recovered_a, vec![7, 8, 9]);
        assert!(out.recovered_b.is_empty());
    }

    #[test]
    fn relay_rejects_single_hop() {
        assert!(simulate_coded_exchange(&[1], &[2], 1).is_err());
    }

    #[test]
    fn relay_mismatched_lengths() {
        let a = vec![5u8; 17];
        let b = vec![9u8; 3];
        for hops in 2..=5 {
            let out = simulate_coded_exchange(&a, &b, hops).unwrap();
            assert_eq!(out.recovered_a, a);
            assert_eq!(out.recovered_b, b);
        }
    }

    #[test]
    fn plan_json_export_shape() {
        let t = build_regular(RegularKind::Line, 3, 80.0, None).unwrap();
        let dm = equal_matrix(3, 40.0);
        let plan = route_all(&t, &dm).unwrap();
        let json: serde_json::Value = serde_json::from_str(&plan.to_json_string()).unwrap();
        assert_eq!(json["paths"].as_array().unwrap().len(), 6);
        assert_eq!(json["link_loads"].as_array().unwrap().len(), 4);
        let triples = json["coding_triples"].as_array().unwrap();
        assert_eq!(triples.len(), 1);
        assert_eq!(triples[0]["m"], 2);
        assert_eq!(triples[0]["fwd_gbps"], 40.0);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            /// Exact recovery for arbitrary stream contents, lengths, and
            /// chain depths.
            #[test]
            fn relay_is_lossless(
                a in proptest::collection::vec(any::<u8>(), 0..200),
                b in proptest::collection::vec(any::<u8>(), 0..200),
                hops in 2u32..6,
            ) {
                let out = simulate_coded_exchange(&a, &b, hops).unwrap();
                prop_assert_eq!(out.recovered_a, a);
                prop_assert_eq!(out.recovered_b, b);
            }

            /// Triples always aggregate exactly the interior crossings of
            /// the stored paths, whatever the demand pattern.
            #[test]
            fn triples_match_path_scan(seed in any::<u64>(), hour in 0u8..24) {
                let t = nsfnet();
                let dm = generate_matrix(&t, hour, seed);
                let plan = route_all(&t, &dm).unwrap();
                let recount = coding_opportunities(&plan);
                prop_assert_eq!(plan.coding_triples.len(), recount.len());
                for (a, b) in plan.coding_triples.iter().zip(&recount) {
                    prop_assert!((a.fwd_gbps - b.fwd_gbps).abs() < 1e-9);
                    prop_assert!((a.rev_gbps - b.rev_gbps).abs() < 1e-9);
                }
            }
        }
    }
}
