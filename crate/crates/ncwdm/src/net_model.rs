//! Topology representation and builders.
//!
//! Nodes carry a US time zone used by the traffic generator. Links are
//! undirected with lengths in km; all routing and power accounting treats the
//! two directions of a link separately.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Default link length (km) for regular topologies, the mean NSFNET link
/// distance used when a regular shape has no published per-link distances.
pub const DEFAULT_REGULAR_LINK_KM: f64 = 478.0;

/// US time zone of a core node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Zone {
    #[serde(rename = "PST")]
    Pst,
    #[serde(rename = "MST")]
    Mst,
    #[serde(rename = "CST")]
    Cst,
    #[serde(rename = "EST")]
    Est,
}

impl Zone {
    pub const ALL: [Zone; 4] = [Zone::Pst, Zone::Mst, Zone::Cst, Zone::Est];

    pub fn name(&self) -> &'static str {
        match self {
            Zone::Pst => "PST",
            Zone::Mst => "MST",
            Zone::Cst => "CST",
            Zone::Est => "EST",
        }
    }
}

impl std::fmt::Display for Zone {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A core node: 1-based id plus its time zone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Node {
    pub id: u32,
    pub zone: Zone,
}

/// An undirected fiber link between two nodes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Link {
    pub a: u32,
    pub b: u32,
    #[serde(rename = "km")]
    pub length_km: f64,
}

/// Undirected weighted graph of core nodes. Immutable after construction.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "TopologyFile", into = "TopologyFile")]
pub struct Topology {
    nodes: Vec<Node>,
    links: Vec<Link>,
    /// adjacency[id-1] = (neighbor id, length km), sorted by neighbor id
    adj: Vec<Vec<(u32, f64)>>,
}

#[derive(Serialize, Deserialize)]
struct TopologyFile {
    nodes: Vec<Node>,
    links: Vec<Link>,
}

impl TryFrom<TopologyFile> for Topology {
    type Error = Error;
    fn try_from(f: TopologyFile) -> Result<Self> {
        Topology::new(f.nodes, f.links)
    }
}

impl From<Topology> for TopologyFile {
    fn from(t: Topology) -> Self {
        TopologyFile { nodes: t.nodes, links: t.links }
    }
}

impl Topology {
    /// Builds a topology and checks all invariants: dense unique 1..N ids,
    /// no self loops, no duplicate undirected links, connected graph,
    /// positive link lengths. The first violation is reported with the
    /// offending node/link index.
    pub fn new(nodes: Vec<Node>, links: Vec<Link>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::Topology("no nodes".into()));
        }
        let n = nodes.len() as u32;
        let mut seen = HashSet::new();
        for (i, node) in nodes.iter().enumerate() {
            if node.id < 1 || node.id > n {
                return Err(Error::Topology(format!(
                    "node index {i}: id {} outside dense range 1..={n}",
                    node.id
                )));
            }
            if !seen.insert(node.id) {
                return Err(Error::Topology(format!("node index {i}: duplicate id {}", node.id)));
            }
        }
        let mut pairs = HashSet::new();
        for (i, link) in links.iter().enumerate() {
            if link.a == link.b {
                return Err(Error::Topology(format!("link index {i}: self loop at node {}", link.a)));
            }
            if link.a < 1 || link.a > n || link.b < 1 || link.b > n {
                return Err(Error::Topology(format!(
                    "link index {i}: endpoint outside 1..={n}"
                )));
            }
            if !(link.length_km > 0.0) {
                return Err(Error::Topology(format!(
                    "link index {i}: non-positive length {}",
                    link.length_km
                )));
            }
            let key = (link.a.min(link.b), link.a.max(link.b));
            if !pairs.insert(key) {
                return Err(Error::Topology(format!(
                    "link index {i}: duplicate undirected link ({}, {})",
                    key.0, key.1
                )));
            }
        }
        let mut nodes = nodes;
        nodes.sort_by_key(|nd| nd.id);
        let mut adj = vec![Vec::new(); n as usize];
        for link in &links {
            adj[(link.a - 1) as usize].push((link.b, link.length_km));
            adj[(link.b - 1) as usize].push((link.a, link.length_km));
        }
        for list in &mut adj {
            list.sort_by_key(|&(id, _)| id);
        }
        let t = Topology { nodes, links, adj };
        // connectivity: BFS from node 1 must reach everything
        let mut reached = vec![false; n as usize];
        let mut queue = VecDeque::from([1u32]);
        reached[0] = true;
        while let Some(u) = queue.pop_front() {
            for &(v, _) in t.neighbors(u) {
                if !reached[(v - 1) as usize] {
                    reached[(v - 1) as usize] = true;
                    queue.push_back(v);
                }
            }
        }
        if let Some(i) = reached.iter().position(|r| !r) {
            return Err(Error::Connectivity(format!(
                "graph is disconnected: node {} unreachable from node 1",
                i + 1
            )));
        }
        Ok(t)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn zone(&self, id: u32) -> Zone {
        self.nodes[(id - 1) as usize].zone
    }

    /// Neighbors of `id` with link lengths, sorted by neighbor id.
    pub fn neighbors(&self, id: u32) -> &[(u32, f64)] {
        &self.adj[(id - 1) as usize]
    }

    pub fn degree(&self, id: u32) -> usize {
        self.adj[(id - 1) as usize].len()
    }

    pub fn link_length(&self, a: u32, b: u32) -> Option<f64> {
        self.adj[(a - 1) as usize]
            .iter()
            .find(|&&(v, _)| v == b)
            .map(|&(_, km)| km)
    }

    /// Ordered node pairs (s, d) with s != d.
    pub fn ordered_pairs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        let n = self.node_count() as u32;
        (1..=n).flat_map(move |s| (1..=n).filter(move |&d| d != s).map(move |d| (s, d)))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("topology serializes")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: TopologyFile =
            serde_json::from_str(text).map_err(|e| Error::Io(format!("topology json: {e}")))?;
        Topology::new(file.nodes, file.links)
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }
}

/// Shape of a regular topology.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegularKind {
    Ring,
    Line,
    Star,
    FullMesh,
}

impl RegularKind {
    pub fn name(&self) -> &'static str {
        match self {
            RegularKind::Ring => "ring",
            RegularKind::Line => "line",
            RegularKind::Star => "star",
            RegularKind::FullMesh => "full_mesh",
        }
    }
}

/// Zones for generic regular builders: four contiguous west-to-east quarters.
fn quarter_zones(n: u32) -> Vec<Node> {
    (1..=n)
        .map(|id| {
            let q = ((id - 1) * 4 / n) as usize;
            Node { id, zone: Zone::ALL[q] }
        })
        .collect()
}

/// Builds a regular topology with uniform link lengths.
///
/// `center` is required for stars and ignored otherwise. Rings need n >= 3,
/// every other kind n >= 2.
pub fn build_regular(
    kind: RegularKind,
    n: u32,
    link_km: f64,
    center: Option<u32>,
) -> Result<Topology> {
    if n < 2 {
        return Err(Error::Parameter(format!("{} needs at least 2 nodes", kind.name())));
    }
    if kind == RegularKind::Ring && n < 3 {
        return Err(Error::Parameter("ring needs at least 3 nodes".into()));
    }
    if !(link_km > 0.0) {
        return Err(Error::Parameter(format!("link length must be positive, got {link_km}")));
    }
    let mut links = Vec::new();
    match kind {
        RegularKind::Ring => {
            for i in 1..n {
                links.push(Link { a: i, b: i + 1, length_km: link_km });
            }
            links.push(Link { a: n, b: 1, length_km: link_km });
        }
        RegularKind::Line => {
            for i in 1..n {
                links.push(Link { a: i, b: i + 1, length_km: link_km });
            }
        }
        RegularKind::Star => {
            let c = center.ok_or_else(|| Error::Parameter("star requires a center node".into()))?;
            if c < 1 || c > n {
                return Err(Error::Parameter(format!("star center {c} outside 1..={n}")));
            }
            for i in 1..=n {
                if i != c {
                    links.push(Link { a: c, b: i, length_km: link_km });
                }
            }
        }
        RegularKind::FullMesh => {
            for a in 1..=n {
                for b in (a + 1)..=n {
                    links.push(Link { a, b, length_km: link_km });
                }
            }
        }
    }
    Topology::new(quarter_zones(n), links)
}

const NSFNET_LINKS: [(u32, u32, f64); 21] = [
    (1, 2, 260.0),
    (1, 3, 252.0),
    (1, 4, 324.0),
    (2, 3, 380.0),
    (2, 7, 868.0),
    (3, 6, 416.0),
    (4, 5, 248.0),
    (4, 11, 1140.0),
    (5, 6, 272.0),
    (5, 7, 292.0),
    (6, 10, 704.0),
    (6, 13, 1036.0),
    (7, 8, 212.0),
    (8, 9, 224.0),
    (9, 10, 752.0),
    (9, 12, 536.0),
    (9, 14, 668.0),
    (11, 12, 408.0),
    (11, 14, 684.0),
    (12, 13, 664.0),
    (13, 14, 353.0),
];

fn nsfnet_nodes() -> Vec<Node> {
    let zone_of = |id: u32| match id {
        1..=3 => Zone::Pst,
        4..=6 => Zone::Mst,
        7 | 8 | 10 => Zone::Cst,
        _ => Zone::Est,
    };
    (1..=14).map(|id| Node { id, zone: zone_of(id) }).collect()
}

/// The 14-node, 21-link NSFNET backbone with per-link distances in km.
pub fn nsfnet() -> Topology {
    let links = NSFNET_LINKS
        .iter()
        .map(|&(a, b, km)| Link { a, b, length_km: km })
        .collect();
    Topology::new(nsfnet_nodes(), links).expect("nsfnet is valid")
}

/// The 24-node, 43-link USNET backbone.
///
/// Two links have no published distance; they get the mean of the 41 labeled
/// distances rounded to the nearest km (309).
pub fn usnet() -> Topology {
    const M: f64 = 309.0; // mean of the 41 labeled distances, rounded
    let raw: [(u32, u32, f64); 43] = [
        (1, 2, 252.0),
        (1, 6, 364.0),
        (2, 3, 216.0),
        (2, 6, 360.0),
        (3, 4, M),
        (3, 5, 432.0),
        (3, 7, 304.0),
        (4, 5, 220.0),
        (4, 7, 280.0),
        (5, 8, 368.0),
        (6, 7, 262.0),
        (6, 9, 360.0),
        (6, 11, 572.0),
        (7, 8, 464.0),
        (7, 9, 328.0),
        (8, 10, 272.0),
        (9, 10, 440.0),
        (9, 11, 364.0),
        (9, 12, 320.0),
        (10, 13, 320.0),
        (10, 14, 268.0),
        (11, 12, 288.0),
        (11, 15, 344.0),
        (11, 19, 648.0),
        (12, 13, 236.0),
        (12, 16, 280.0),
        (13, 14, 244.0),
        (13, 17, 332.0),
        (14, 18, 368.0),
        (15, 16, M),
        (15, 20, 272.0),
        (16, 17, 224.0),
        (16, 21, 288.0),
        (16, 22, 272.0),
        (17, 18, 280.0),
        (17, 22, 168.0),
        (17, 23, 364.0),
        (18, 24, 280.0),
        (19, 20, 188.0),
        (20, 21, 216.0),
        (21, 22, 164.0),
        (22, 23, 260.0),
        (23, 24, 180.0),
    ];
    let zone_of = |id: u32| match id {
        1..=5 => Zone::Pst,
        6..=8 => Zone::Mst,
        9..=14 | 17 | 18 => Zone::Cst,
        _ => Zone::Est,
    };
    let nodes = (1..=24).map(|id| Node { id, zone: zone_of(id) }).collect();
    let links = raw.iter().map(|&(a, b, km)| Link { a, b, length_km: km }).collect();
    Topology::new(nodes, links).expect("usnet is valid")
}

/// NSFNET nodes rewired as a bidirectional ring, distances estimated from
/// node locations.
pub fn nsfnet_ring() -> Topology {
    let seq: [(u32, u32, f64); 14] = [
        (1, 2, 260.0),
        (2, 4, 300.0),
        (4, 5, 248.0),
        (5, 7, 292.0),
        (7, 8, 212.0),
        (8, 9, 224.0),
        (9, 11, 540.0),
        (11, 12, 408.0),
        (12, 14, 480.0),
        (14, 13, 352.0),
        (13, 10, 500.0),
        (10, 6, 704.0),
        (6, 3, 416.0),
        (3, 1, 252.0),
    ];
    let links = seq.iter().map(|&(a, b, km)| Link { a, b, length_km: km }).collect();
    Topology::new(nsfnet_nodes(), links).expect("nsfnet ring is valid")
}

/// The NSFNET ring with link (12, 14) removed, giving a 13-link line.
pub fn nsfnet_line() -> Topology {
    let ring = nsfnet_ring();
    let links = ring
        .links()
        .iter()
        .copied()
        .filter(|l| !(l.a.min(l.b) == 12 && l.a.max(l.b) == 14))
        .collect();
    Topology::new(nsfnet_nodes(), links).expect("nsfnet line is valid")
}

/// NSFNET nodes rewired as a star centred at node 5.
///
/// The two spokes without published distances use the shortest NSFNET
/// distance between the same node pair.
pub fn nsfnet_star() -> Topology {
    let spokes: [(u32, f64); 13] = [
        (1, 572.0),
        (2, 500.0),
        (3, 420.0),
        (4, 248.0),
        (6, 272.0),
        (7, 292.0),   // direct NSFNET link 5-7
        (8, 504.0),
        (9, 728.0),
        (10, 800.0),
        (11, 1388.0), // NSFNET shortest path 5-4-11
        (12, 1260.0),
        (13, 1050.0),
        (14, 1330.0),
    ];
    let links = spokes.iter().map(|&(b, km)| Link { a: 5, b, length_km: km }).collect();
    Topology::new(nsfnet_nodes(), links).expect("nsfnet star is valid")
}

/// NSFNET nodes connected in a full mesh with uniform link length.
pub fn nsfnet_full_mesh() -> Topology {
    let mut links = Vec::new();
    for a in 1..=14u32 {
        for b in (a + 1)..=14 {
            links.push(Link { a, b, length_km: DEFAULT_REGULAR_LINK_KM });
        }
    }
    Topology::new(nsfnet_nodes(), links).expect("nsfnet mesh is valid")
}

/// Unweighted shortest-path hop counts for every ordered node pair.
#[derive(Debug, Clone)]
pub struct HopMetrics {
    n: usize,
    /// hops[(s-1)*n + (d-1)], 0 on the diagonal
    hops: Vec<u32>,
    total: u64,
    max: u32,
}

impl HopMetrics {
    pub fn hop(&self, s: u32, d: u32) -> u32 {
        self.hops[(s as usize - 1) * self.n + (d as usize - 1)]
    }

    /// Network average hop count over the N(N-1) ordered pairs.
    pub fn avg(&self) -> f64 {
        self.total as f64 / (self.n * (self.n - 1)) as f64
    }

    pub fn max(&self) -> u32 {
        self.max
    }

    /// Sum of hop counts over all ordered pairs.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Exact test of avg == num/den in integer arithmetic.
    pub fn avg_equals_ratio(&self, num: i128, den: i128) -> bool {
        den != 0
            && (self.total as i128) * den == num * (self.n as i128) * (self.n as i128 - 1)
    }
}

/// All-pairs BFS hop counts. Fails on disconnected graphs.
pub fn hop_metrics(t: &Topology) -> Result<HopMetrics> {
    let n = t.node_count();
    let mut hops = vec![0u32; n * n];
    let mut total = 0u64;
    let mut max = 0u32;
    for s in 1..=n as u32 {
        let mut dist = vec![u32::MAX; n];
        dist[(s - 1) as usize] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let du = dist[(u - 1) as usize];
            for &(v, _) in t.neighbors(u) {
                if dist[(v - 1) as usize] == u32::MAX {
                    dist[(v - 1) as usize] = du + 1;
                    queue.push_back(v);
                }
            }
        }
        for d in 1..=n as u32 {
            if d == s {
                continue;
            }
            let h = dist[(d - 1) as usize];
            if h == u32::MAX {
                return Err(Error::Connectivity(format!("node {d} unreachable from {s}")));
            }
            hops[(s - 1) as usize * n + (d - 1) as usize] = h;
            total += h as u64;
            max = max.max(h);
        }
    }
    Ok(HopMetrics { n, hops, total, max })
}

/// Number of inline EDFAs on a link: floor(length/span - 1), clamped at 0.
pub fn edfa_count(length_km: f64, span_km: f64) -> u32 {
    debug_assert!(span_km > 0.0);
    let raw = (length_km / span_km - 1.0 + 1e-9).floor();
    if raw < 0.0 {
        0
    } else {
        raw as u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_link_counts() {
        assert_eq!(build_regular(RegularKind::Ring, 14, 500.0, None).unwrap().links().len(), 14);
        assert_eq!(
            build_regular(RegularKind::FullMesh, 14, 500.0, None).unwrap().links().len(),
            91
        );
        let line = build_regular(RegularKind::Line, 14, 500.0, None).unwrap();
        assert_eq!(line.links().len(), 13);
        let mut degs: Vec<usize> = (1..=14).map(|i| line.degree(i)).collect();
        degs.sort();
        assert_eq!(degs[0], 1);
        assert_eq!(degs[1], 1);
        assert!(degs[2..].iter().all(|&d| d == 2));
    }

    #[test]
    fn regular_parameter_errors() {
        assert!(build_regular(RegularKind::Ring, 2, 500.0, None).is_err());
        assert!(build_regular(RegularKind::Star, 5, 500.0, None).is_err());
        assert!(build_regular(RegularKind::Star, 5, 500.0, Some(9)).is_err());
        assert!(build_regular(RegularKind::Line, 1, 500.0, None).is_err());
    }

    #[test]
    fn nsfnet_shape() {
        let t = nsfnet();
        assert_eq!(t.node_count(), 14);
        assert_eq!(t.links().len(), 21);
        assert_eq!(t.link_length(1, 2), Some(260.0));
        assert_eq!(t.link_length(4, 11), Some(1140.0));
        let h = hop_metrics(&t).unwrap();
        assert!((h.avg() - 2.17).abs() <= 0.01, "nsfnet avg hops {}", h.avg());
    }

    #[test]
    fn usnet_shape() {
        let t = usnet();
        assert_eq!(t.node_count(), 24);
        assert_eq!(t.links().len(), 43);
        assert_eq!(t.link_length(1, 2), Some(252.0));
        let h = hop_metrics(&t).unwrap();
        assert!((h.avg() - 3.0).abs() <= 0.05, "usnet avg hops {}", h.avg());
    }

    #[test]
    fn nsfnet_reconfigurations() {
        assert_eq!(nsfnet_ring().links().len(), 14);
        assert_eq!(nsfnet_line().links().len(), 13);
        let star = nsfnet_star();
        assert_eq!(star.links().len(), 13);
        assert_eq!(star.degree(5), 13);
        // line keeps the line hop-count profile of a 14-node path
        let h = hop_metrics(&nsfnet_line()).unwrap();
        assert!(h.avg_equals_ratio(15, 3));
    }

    #[test]
    fn hop_metrics_closed_forms() {
        let mesh = build_regular(RegularKind::FullMesh, 14, 500.0, None).unwrap();
        assert_eq!(hop_metrics(&mesh).unwrap().avg(), 1.0);
        let line = build_regular(RegularKind::Line, 14, 500.0, None).unwrap();
        assert_eq!(hop_metrics(&line).unwrap().avg(), 5.0);
        let star = build_regular(RegularKind::Star, 14, 500.0, Some(1)).unwrap();
        let h = hop_metrics(&star).unwrap();
        assert!(h.avg_equals_ratio(2 * 13, 14));
    }

    /// Floyd-Warshall as an independent oracle for the BFS hop counts.
    #[test]
    fn bfs_matches_floyd_warshall_on_nsfnet() {
        let t = nsfnet();
        let n = t.node_count();
        let inf = u32::MAX / 4;
        let mut dist = vec![inf; n * n];
        for i in 0..n {
            dist[i * n + i] = 0;
        }
        for l in t.links() {
            dist[(l.a as usize - 1) * n + (l.b as usize - 1)] = 1;
            dist[(l.b as usize - 1) * n + (l.a as usize - 1)] = 1;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let via = dist[i * n + k] + dist[k * n + j];
                    if via < dist[i * n + j] {
                        dist[i * n + j] = via;
                    }
                }
            }
        }
        let h = hop_metrics(&t).unwrap();
        for s in 1..=n as u32 {
            for d in 1..=n as u32 {
                if s != d {
                    assert_eq!(h.hop(s, d), dist[(s as usize - 1) * n + (d as usize - 1)]);
                }
            }
        }
    }

    #[test]
    fn edfa_count_formula() {
        assert_eq!(edfa_count(80.0, 80.0), 0);
        assert_eq!(edfa_count(260.0, 80.0), 2);
        assert_eq!(edfa_count(60.0, 80.0), 0);
        assert_eq!(edfa_count(1140.0, 80.0), 13);
        // monotone nondecreasing in length
        let mut prev = 0;
        for km in (10..2000).step_by(7) {
            let c = edfa_count(km as f64, 80.0);
            assert!(c >= prev);
            prev = c;
        }
    }

    #[test]
    fn json_round_trip_and_validation() {
        let t = nsfnet();
        let text = t.to_json_string();
        let back = Topology::from_json_str(&text).unwrap();
        assert_eq!(back.node_count(), 14);
        assert_eq!(back.link_length(13, 14), Some(353.0));

        let bad = r#"{"nodes":[{"id":1,"zone":"PST"},{"id":2,"zone":"EST"}],
                      "links":[{"a":1,"b":1,"km":10.0}]}"#;
        let err = Topology::from_json_str(bad).unwrap_err();
        assert!(err.to_string().contains("self loop"));

        let dup = r#"{"nodes":[{"id":1,"zone":"PST"},{"id":2,"zone":"EST"}],
                      "links":[{"a":1,"b":2,"km":10.0},{"a":2,"b":1,"km":11.0}]}"#;
        assert!(Topology::from_json_str(dup).is_err());

        let disconnected = r#"{"nodes":[{"id":1,"zone":"PST"},{"id":2,"zone":"EST"},
                                {"id":3,"zone":"EST"}],
                      "links":[{"a":1,"b":2,"km":10.0}]}"#;
        let err = Topology::from_json_str(disconnected).unwrap_err();
        assert!(matches!(err, Error::Connectivity(_)));
    }
}
