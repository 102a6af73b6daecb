//! Permutation-invariant partitioning schemes.
//!
//! Every scheme assigns each vertex a [`PartitionIndex`] that is the value of
//! a structural property (degree, coreness, ...), not a dense renumbering.
//! Indices therefore line up across different graphs: index `(2, 0)` under
//! [`SchemeId::Degree`] is "the degree-2 vertices" in every graph.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeId {
    Trivial,
    Degree,
    Core,
    CoreDegree,
    CoreOnion,
    Triangle,
}

impl SchemeId {
    pub const ALL: [SchemeId; 6] = [
        SchemeId::Trivial,
        SchemeId::Degree,
        SchemeId::Core,
        SchemeId::CoreDegree,
        SchemeId::CoreOnion,
        SchemeId::Triangle,
    ];

    /// The five non-trivial schemes.
    pub const PRACTICAL: [SchemeId; 5] = [
        SchemeId::Core,
        SchemeId::CoreDegree,
        SchemeId::CoreOnion,
        SchemeId::Degree,
        SchemeId::Triangle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SchemeId::Trivial => "trivial",
            SchemeId::Degree => "degree",
            SchemeId::Core => "core",
            SchemeId::CoreDegree => "core-degree",
            SchemeId::CoreOnion => "core-onion",
            SchemeId::Triangle => "triangle",
        }
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchemeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SchemeId::ALL
            .into_iter()
            .find(|id| id.name() == s || id.name().replace('-', "_") == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown scheme `{s}`")))
    }
}

/// Canonical partition index: the property value a scheme assigns.
///
/// | scheme      | major       | minor                                   |
/// |-------------|-------------|-----------------------------------------|
/// | trivial     | 0           | 0                                       |
/// | degree      | degree      | 0                                       |
/// | core        | coreness    | 0                                       |
/// | core-degree | coreness    | 1 if the in-shell degree equals coreness |
/// | core-onion  | coreness    | onion layer within the shell (from 1)    |
/// | triangle    | triangles   | 0                                       |
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PartitionIndex(pub u32, pub u32);

impl fmt::Display for PartitionIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionLabeling {
    pub scheme: SchemeId,
    pub labels: Vec<PartitionIndex>,
}

impl PartitionLabeling {
    /// Vertex sets per nonempty partition, keyed by index.
    pub fn classes(&self) -> BTreeMap<PartitionIndex, Vec<usize>> {
        let mut out: BTreeMap<PartitionIndex, Vec<usize>> = BTreeMap::new();
        for (v, &l) in self.labels.iter().enumerate() {
            out.entry(l).or_default().push(v);
        }
        out
    }

    pub fn histogram(&self) -> BTreeMap<PartitionIndex, usize> {
        let mut out = BTreeMap::new();
        for &l in &self.labels {
            *out.entry(l).or_insert(0) += 1;
        }
        out
    }

    pub fn partition_count(&self) -> usize {
        self.histogram().len()
    }
}

pub fn partition(g: &Graph, scheme: SchemeId) -> PartitionLabeling {
    let n = g.vertex_count();
    let labels = match scheme {
        SchemeId::Trivial => vec![PartitionIndex(0, 0); n],
        SchemeId::Degree => (0..n).map(|v| PartitionIndex(g.degree(v) as u32, 0)).collect(),
        SchemeId::Core => core_decomposition(g)
            .into_iter()
            .map(|c| PartitionIndex(c, 0))
            .collect(),
        SchemeId::CoreDegree => core_degree_labels(g)
            .into_iter()
            .map(|(c, flag)| PartitionIndex(c, flag as u32))
            .collect(),
        SchemeId::CoreOnion => onion_decomposition(g)
            .into_iter()
            .map(|(c, layer)| PartitionIndex(c, layer))
            .collect(),
        SchemeId::Triangle => g
            .triangle_counts()
            .into_iter()
            .map(|t| PartitionIndex(t as u32, 0))
            .collect(),
    };
    PartitionLabeling { scheme, labels }
}

/// Coreness of every vertex by bucket peeling, O(n + m).
pub fn core_decomposition(g: &Graph) -> Vec<u32> {
    let n = g.vertex_count();
    if n == 0 {
        return Vec::new();
    }
    let mut deg = g.degrees();
    let max_deg = deg.iter().copied().max().unwrap_or(0);

    // bin[d] = first position in `vert` of a vertex with current degree d
    let mut bin = vec![0usize; max_deg + 1];
    for &d in &deg {
        bin[d] += 1;
    }
    let mut start = 0;
    for b in bin.iter_mut() {
        let count = *b;
        *b = start;
        start += count;
    }
    let mut pos = vec![0usize; n];
    let mut vert = vec![0usize; n];
    for v in 0..n {
        pos[v] = bin[deg[v]];
        vert[pos[v]] = v;
        bin[deg[v]] += 1;
    }
    for d in (1..=max_deg).rev() {
        bin[d] = bin[d - 1];
    }
    bin[0] = 0;

    for i in 0..n {
        let v = vert[i];
        for &u in g.neighbors(v) {
            if deg[u] > deg[v] {
                let du = deg[u];
                let pu = pos[u];
                let pw = bin[du];
                let w = vert[pw];
                if u != w {
                    pos[u] = pw;
                    vert[pu] = w;
                    pos[w] = pu;
                    vert[pw] = u;
                }
                bin[du] += 1;
                deg[u] -= 1;
            }
        }
    }
    deg.into_iter().map(|d| d as u32).collect()
}

/// Onion decomposition: per-vertex `(coreness, layer)`.
///
/// Each round removes, simultaneously, every remaining vertex whose current
/// degree is at most the current shell value `k`. When a round finds nothing
/// to remove, `k` rises to the minimum remaining degree and layer numbering
/// restarts at 1.
pub fn onion_decomposition(g: &Graph) -> Vec<(u32, u32)> {
    let n = g.vertex_count();
    let mut out = vec![(0u32, 0u32); n];
    if n == 0 {
        return out;
    }
    let mut deg = g.degrees();
    let max_deg = deg.iter().copied().max().unwrap_or(0);
    let mut removed = vec![false; n];

    // Lazy buckets: an entry is live iff the vertex is present and its
    // current degree still equals the bucket index.
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max_deg + 1];
    for v in 0..n {
        buckets[deg[v]].push(v);
    }

    let mut remaining = n;
    let mut shell: usize = 0;
    let mut layer: u32 = 0;
    let mut scan_from = 0usize;
    let mut frontier: Vec<usize> = Vec::new();
    let mut next: Vec<usize> = Vec::new();

    while remaining > 0 {
        if frontier.is_empty() {
            // every remaining vertex has degree > shell here
            let mut d = scan_from;
            loop {
                let bucket = &mut buckets[d];
                bucket.retain(|&v| !removed[v] && deg[v] == d);
                if !bucket.is_empty() {
                    break;
                }
                d += 1;
            }
            shell = d;
            scan_from = d;
            layer = 0;
            frontier = std::mem::take(&mut buckets[d]);
        }
        layer += 1;
        for &v in &frontier {
            removed[v] = true;
            out[v] = (shell as u32, layer);
        }
        remaining -= frontier.len();
        for &v in &frontier {
            for &u in g.neighbors(v) {
                if removed[u] {
                    continue;
                }
                deg[u] -= 1;
                if deg[u] == shell {
                    next.push(u);
                } else if deg[u] > shell {
                    buckets[deg[u]].push(u);
                }
            }
        }
        std::mem::swap(&mut frontier, &mut next);
        next.clear();
    }
    out
}

/// Per-vertex `(coreness, flag)` where the flag says whether the vertex's
/// degree inside its own shell equals the shell value.
pub fn core_degree_labels(g: &Graph) -> Vec<(u32, bool)> {
    let core = core_decomposition(g);
    (0..g.vertex_count())
        .map(|v| {
            let within = g
                .neighbors(v)
                .iter()
                .filter(|&&u| core[u] == core[v])
                .count();
            (core[v], within == core[v] as usize)
        })
        .collect()
}

/// Edge and vertex statistics of one labeling.
///
/// `intra_edges` counts edges joining different partitions and
/// `inter_edges` counts edges inside one partition, following the naming of
/// the interaction tags (`c_a` and `c_e` respectively).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartitionStats {
    pub scheme: SchemeId,
    pub vertices: usize,
    pub edges: usize,
    pub partitions: usize,
    pub intra_edges: usize,
    pub inter_edges: usize,
    /// Percentages of cross- and same-partition edges, rounded, summing to 100
    /// (both 0 for an edgeless graph).
    pub intra_inter_ratio: (u32, u32),
    pub distribution: Vec<PartitionShare>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartitionShare {
    pub index: PartitionIndex,
    pub vertices: usize,
    pub percent: f64,
}

pub fn partition_stats(g: &Graph, labeling: &PartitionLabeling) -> PartitionStats {
    let labels = &labeling.labels;
    let cross = g
        .edges()
        .iter()
        .filter(|&&(u, v)| labels[u] != labels[v])
        .count();
    let m = g.edge_count();
    let ratio = if m == 0 {
        (0, 0)
    } else {
        let pct = ((cross as f64) * 100.0 / m as f64).round() as u32;
        (pct, 100 - pct)
    };
    let n = g.vertex_count();
    let distribution = labeling
        .histogram()
        .into_iter()
        .map(|(index, count)| PartitionShare {
            index,
            vertices: count,
            percent: 100.0 * count as f64 / n as f64,
        })
        .collect::<Vec<_>>();
    PartitionStats {
        scheme: labeling.scheme,
        vertices: n,
        edges: m,
        partitions: distribution.len(),
        intra_edges: cross,
        inter_edges: m - cross,
        intra_inter_ratio: ratio,
        distribution,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edge_list(n, edges).unwrap()
    }
    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        g(n, &e)
    }
    fn k4() -> Graph {
        g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }
    fn star3() -> Graph {
        g(4, &[(0, 1), (0, 2), (0, 3)])
    }
    fn p3() -> Graph {
        g(3, &[(0, 1), (1, 2)])
    }
    fn two_triangles() -> Graph {
        g(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    }

    #[test]
    fn trivial_and_degree() {
        let c6 = cycle(6);
        assert!(partition(&c6, SchemeId::Trivial)
            .labels
            .iter()
            .all(|&l| l == PartitionIndex(0, 0)));
        assert!(partition(&c6, SchemeId::Degree)
            .labels
            .iter()
            .all(|&l| l == PartitionIndex(2, 0)));
        let star = partition(&star3(), SchemeId::Degree);
        assert_eq!(star.labels[0], PartitionIndex(3, 0));
        assert!(star.labels[1..].iter().all(|&l| l == PartitionIndex(1, 0)));
    }

    #[test]
    fn coreness() {
        assert_eq!(core_decomposition(&k4()), vec![3; 4]);
        assert_eq!(core_decomposition(&g(4, &[(0, 1), (1, 2), (2, 3)])), vec![1; 4]);
        let bowtie = g(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]);
        assert_eq!(core_decomposition(&bowtie), vec![2; 5]);
        // triangle with a pendant path and an isolated vertex
        let mixed = g(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]);
        assert_eq!(core_decomposition(&mixed), vec![2, 2, 2, 1, 1, 0]);
    }

    #[test]
    fn onion_layers() {
        assert_eq!(onion_decomposition(&cycle(6)), vec![(2, 1); 6]);
        assert_eq!(onion_decomposition(&p3()), vec![(1, 1), (1, 2), (1, 1)]);
        assert_eq!(onion_decomposition(&k4()), vec![(3, 1); 4]);
        // path on 5 vertices peels from both ends inward
        let p5 = g(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        assert_eq!(
            onion_decomposition(&p5),
            vec![(1, 1), (1, 2), (1, 3), (1, 2), (1, 1)]
        );
        let mixed = g(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]);
        assert_eq!(
            onion_decomposition(&mixed),
            vec![(2, 1), (2, 1), (2, 1), (1, 2), (1, 1), (0, 1)]
        );
    }

    #[test]
    fn core_degree() {
        assert_eq!(core_degree_labels(&cycle(6)), vec![(2, true); 6]);
        assert_eq!(
            core_degree_labels(&p3()),
            vec![(1, true), (1, false), (1, true)]
        );
        assert_eq!(core_degree_labels(&k4()), vec![(3, true); 4]);
    }

    #[test]
    fn stats() {
        let s = partition_stats(&cycle(6), &partition(&cycle(6), SchemeId::Degree));
        assert_eq!((s.partitions, s.intra_edges, s.inter_edges), (1, 0, 6));
        let s = partition_stats(&star3(), &partition(&star3(), SchemeId::Degree));
        assert_eq!((s.partitions, s.intra_edges, s.inter_edges), (2, 3, 0));
        assert_eq!(s.intra_inter_ratio, (100, 0));
        assert_eq!(s.distribution[0].vertices, 3);
        assert!((s.distribution[0].percent - 75.0).abs() < 1e-12);
        let tt = two_triangles();
        let s = partition_stats(&tt, &partition(&tt, SchemeId::Triangle));
        assert_eq!((s.partitions, s.intra_edges, s.inter_edges), (1, 0, 6));
    }

    #[test]
    fn scheme_names_round_trip() {
        for id in SchemeId::ALL {
            assert_eq!(id.name().parse::<SchemeId>().unwrap(), id);
        }
        assert!("nope".parse::<SchemeId>().is_err());
    }
}
