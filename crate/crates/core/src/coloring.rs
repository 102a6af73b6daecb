//! Partition colorings: vertex colors from partition membership, pair colors
//! tagged by interaction type, colored neighborhoods and the tracked pair
//! sets of the three interaction variants.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::{partition, PartitionIndex, PartitionLabeling, SchemeId};

/// Interning table from canonical partition indices to vertex colors.
///
/// Scoped to one comparison: every graph of the comparison must be colored
/// through the same table so equal indices get equal colors.
#[derive(Debug, Clone, Default)]
pub struct ColorTable {
    ids: BTreeMap<PartitionIndex, u32>,
    by_id: Vec<PartitionIndex>,
}

impl ColorTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// A table seeded with every index of `labelings`, numbered in sorted
    /// index order.
    pub fn from_labelings(labelings: &[&PartitionLabeling]) -> Self {
        let mut table = ColorTable::new();
        let mut all: Vec<PartitionIndex> = labelings
            .iter()
            .flat_map(|l| l.labels.iter().copied())
            .collect();
        all.sort_unstable();
        all.dedup();
        for idx in all {
            table.intern(idx);
        }
        table
    }

    /// Color of `idx`, allocating the next identifier on first sight.
    pub fn intern(&mut self, idx: PartitionIndex) -> u32 {
        if let Some(&id) = self.ids.get(&idx) {
            return id;
        }
        let id = self.by_id.len() as u32;
        self.ids.insert(idx, id);
        self.by_id.push(idx);
        id
    }

    pub fn index_of(&self, color: u32) -> Option<PartitionIndex> {
        self.by_id.get(color as usize).copied()
    }

    pub fn len(&self) -> usize {
        self.by_id.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_id.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionColoring {
    pub scheme: SchemeId,
    pub labels: Vec<PartitionIndex>,
    pub colors: Vec<u32>,
}

impl PartitionColoring {
    #[inline]
    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }
}

pub fn build_coloring(
    _g: &Graph,
    labeling: &PartitionLabeling,
    table: &mut ColorTable,
) -> PartitionColoring {
    let mut fresh: Vec<PartitionIndex> = labeling.labels.clone();
    fresh.sort_unstable();
    fresh.dedup();
    for idx in fresh {
        table.intern(idx);
    }
    let colors = labeling.labels.iter().map(|&l| table.intern(l)).collect();
    PartitionColoring {
        scheme: labeling.scheme,
        labels: labeling.labels.clone(),
        colors,
    }
}

/// Colorings of several graphs under one scheme and one shared table.
pub fn build_colorings(graphs: &[&Graph], scheme: SchemeId) -> (ColorTable, Vec<PartitionColoring>) {
    let labelings: Vec<PartitionLabeling> = graphs.iter().map(|g| partition(g, scheme)).collect();
    let mut table = ColorTable::from_labelings(&labelings.iter().collect::<Vec<_>>());
    let colorings = graphs
        .iter()
        .zip(&labelings)
        .map(|(g, l)| build_coloring(g, l, &mut table))
        .collect();
    (table, colorings)
}

/// Interaction type of a vertex pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairTag {
    /// Edge inside one partition (`c_e`, an "inter-interaction").
    SamePartitionEdge,
    /// Edge between partitions (`c_a`, an "intra-interaction").
    CrossPartitionEdge,
    /// Non-adjacent distinct vertices (`c_n`).
    NonEdge,
    /// The pair `(v, v)`.
    SelfPair,
}

/// Static pair color: the sorted vertex colors plus the interaction tag.
/// The derived ordering makes the tuple itself an injective identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PairColor {
    pub lo: u32,
    pub hi: u32,
    pub tag: PairTag,
}

pub fn pair_color(coloring: &PartitionColoring, g: &Graph, v: usize, u: usize) -> PairColor {
    let (cv, cu) = (coloring.color(v), coloring.color(u));
    let tag = if v == u {
        PairTag::SelfPair
    } else if g.has_edge(v, u) {
        if cv == cu {
            PairTag::SamePartitionEdge
        } else {
            PairTag::CrossPartitionEdge
        }
    } else {
        PairTag::NonEdge
    };
    PairColor {
        lo: cv.min(cu),
        hi: cv.max(cu),
        tag,
    }
}

/// The closed `d`-hop neighborhood of `v` split by vertex color.
pub fn colored_neighborhood(
    g: &Graph,
    coloring: &PartitionColoring,
    v: usize,
    d: usize,
) -> Result<BTreeMap<u32, Vec<usize>>> {
    let ball = g.neighborhood_d(v, d, true)?;
    let mut parts: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for u in ball {
        parts.entry(coloring.color(u)).or_default().push(u);
    }
    Ok(parts)
}

/// Which ordered pairs carry an evolving interaction color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InteractionVariant {
    /// Edges joining different partitions.
    Star,
    /// All edges.
    Diamond,
    /// All distinct pairs, non-edges included.
    Dagger,
}

impl InteractionVariant {
    pub const ALL: [InteractionVariant; 3] = [
        InteractionVariant::Star,
        InteractionVariant::Diamond,
        InteractionVariant::Dagger,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InteractionVariant::Star => "star",
            InteractionVariant::Diamond => "diamond",
            InteractionVariant::Dagger => "dagger",
        }
    }
}

impl fmt::Display for InteractionVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InteractionVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        InteractionVariant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown variant `{s}`")))
    }
}

/// Whether the ordered distinct pair `(v, u)` is tracked under `variant`.
#[inline]
pub fn is_tracked(
    g: &Graph,
    coloring: &PartitionColoring,
    variant: InteractionVariant,
    v: usize,
    u: usize,
) -> bool {
    match variant {
        InteractionVariant::Star => g.has_edge(v, u) && coloring.color(v) != coloring.color(u),
        InteractionVariant::Diamond => g.has_edge(v, u),
        InteractionVariant::Dagger => v != u,
    }
}

/// Tracked ordered pairs, sorted.
pub fn tracked_pairs(
    g: &Graph,
    coloring: &PartitionColoring,
    variant: InteractionVariant,
) -> Vec<(usize, usize)> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for v in 0..n {
        match variant {
            InteractionVariant::Dagger => out.extend((0..n).filter(|&u| u != v).map(|u| (v, u))),
            _ => out.extend(
                g.neighbors(v)
                    .iter()
                    .filter(|&&u| is_tracked(g, coloring, variant, v, u))
                    .map(|&u| (v, u)),
            ),
        }
    }
    out
}

/// Whether `g` and `h` are indistinguishable by the partition coloring of
/// `scheme`: equal vertex-color histograms and equal pair-color histograms
/// over all unordered distinct pairs.
pub fn lambda_equivalent(g: &Graph, h: &Graph, scheme: SchemeId) -> bool {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return false;
    }
    let (_, colorings) = build_colorings(&[g, h], scheme);
    let vertex_hist = |c: &PartitionColoring| {
        let mut hist: BTreeMap<u32, usize> = BTreeMap::new();
        for &x in &c.colors {
            *hist.entry(x).or_insert(0) += 1;
        }
        hist
    };
    if vertex_hist(&colorings[0]) != vertex_hist(&colorings[1]) {
        return false;
    }
    // With equal vertex histograms the number of non-edges of each color
    // pair is fixed by the edge counts, so comparing edge colors suffices.
    let edge_hist = |graph: &Graph, c: &PartitionColoring| {
        let mut hist: BTreeMap<PairColor, usize> = BTreeMap::new();
        for &(u, v) in graph.edges() {
            *hist.entry(pair_color(c, graph, u, v)).or_insert(0) += 1;
        }
        hist
    };
    edge_hist(g, &colorings[0]) == edge_hist(h, &colorings[1])
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
    fn star3() -> Graph {
        g(4, &[(0, 1), (0, 2), (0, 3)])
    }
    fn two_triangles() -> Graph {
        g(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    }
    fn single(graph: &Graph, scheme: SchemeId) -> PartitionColoring {
        build_colorings(&[graph], scheme).1.remove(0)
    }

    /// Histogram over every unordered distinct pair, non-edges included.
    fn all_pairs_histogram(graph: &Graph, c: &PartitionColoring) -> BTreeMap<PairColor, usize> {
        let mut hist = BTreeMap::new();
        for v in 0..graph.vertex_count() {
            for u in v + 1..graph.vertex_count() {
                *hist.entry(pair_color(c, graph, v, u)).or_insert(0) += 1;
            }
        }
        hist
    }

    #[test]
    fn vertex_colors() {
        let c = single(&cycle(6), SchemeId::Degree);
        assert!(c.colors.iter().all(|&x| x == c.colors[0]));
        let c = single(&star3(), SchemeId::Degree);
        assert_ne!(c.colors[0], c.colors[1]);
        assert!(c.colors[1..].iter().all(|&x| x == c.colors[1]));

        let (_, both) = build_colorings(&[&cycle(6), &two_triangles()], SchemeId::Trivial);
        assert_eq!(both[0].colors, both[1].colors);
    }

    #[test]
    fn shared_table_aligns_indices() {
        let mut table = ColorTable::new();
        let a = build_coloring(&star3(), &partition(&star3(), SchemeId::Degree), &mut table);
        let b = build_coloring(&cycle(6), &partition(&cycle(6), SchemeId::Degree), &mut table);
        let p4 = g(4, &[(0, 1), (1, 2), (2, 3)]);
        let c = build_coloring(&p4, &partition(&p4, SchemeId::Degree), &mut table);
        // leaves of the star and ends of the path are both degree 1
        assert_eq!(a.colors[1], c.colors[0]);
        // path interior and cycle vertices are both degree 2
        assert_eq!(b.colors[0], c.colors[1]);
        assert_eq!(table.index_of(b.colors[0]), Some(PartitionIndex(2, 0)));
    }

    #[test]
    fn pair_tags() {
        let c6 = cycle(6);
        let c = single(&c6, SchemeId::Degree);
        assert_eq!(pair_color(&c, &c6, 0, 1).tag, PairTag::SamePartitionEdge);
        assert_eq!(pair_color(&c, &c6, 0, 3).tag, PairTag::NonEdge);
        assert_eq!(pair_color(&c, &c6, 2, 2).tag, PairTag::SelfPair);
        let s = star3();
        let c = single(&s, SchemeId::Degree);
        assert_eq!(pair_color(&c, &s, 0, 1).tag, PairTag::CrossPartitionEdge);
        assert_eq!(pair_color(&c, &s, 0, 1), pair_color(&c, &s, 1, 0));
    }

    #[test]
    fn colored_neighborhoods() {
        let s = star3();
        let c = single(&s, SchemeId::Degree);
        let parts = colored_neighborhood(&s, &c, 0, 1).unwrap();
        assert_eq!(parts[&c.colors[1]], vec![1, 2, 3]);
        assert_eq!(parts[&c.colors[0]], vec![0]);

        let c6 = cycle(6);
        let c = single(&c6, SchemeId::Degree);
        let parts = colored_neighborhood(&c6, &c, 0, 1).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[&c.colors[0]], vec![0, 1, 5]);

        let e = Graph::empty(3);
        let c = single(&e, SchemeId::Degree);
        let parts = colored_neighborhood(&e, &c, 0, 1).unwrap();
        assert_eq!(parts.into_iter().collect::<Vec<_>>(), vec![(c.colors[0], vec![0])]);
    }

    #[test]
    fn tracked_pair_sets() {
        let c6 = cycle(6);
        let c = single(&c6, SchemeId::Trivial);
        assert!(tracked_pairs(&c6, &c, InteractionVariant::Star).is_empty());
        assert_eq!(tracked_pairs(&c6, &c, InteractionVariant::Diamond).len(), 12);
        assert_eq!(tracked_pairs(&c6, &c, InteractionVariant::Dagger).len(), 30);

        let s = star3();
        let c = single(&s, SchemeId::Degree);
        assert_eq!(tracked_pairs(&s, &c, InteractionVariant::Star).len(), 6);

        let p4 = g(4, &[(0, 1), (1, 2), (2, 3)]);
        let c = single(&p4, SchemeId::Degree);
        assert_eq!(tracked_pairs(&p4, &c, InteractionVariant::Dagger).len(), 12);
    }

    #[test]
    fn lambda_equivalence() {
        assert!(lambda_equivalent(&cycle(6), &two_triangles(), SchemeId::Degree));
        assert!(!lambda_equivalent(&cycle(6), &two_triangles(), SchemeId::Triangle));
        assert!(!lambda_equivalent(&cycle(6), &cycle(5), SchemeId::Trivial));
    }

    #[test]
    fn lambda_equivalence_matches_all_pairs_count() {
        let (_, cs) = build_colorings(&[&cycle(6), &two_triangles()], SchemeId::Degree);
        let a = all_pairs_histogram(&cycle(6), &cs[0]);
        let b = all_pairs_histogram(&two_triangles(), &cs[1]);
        assert_eq!(a, b);
        let counts: Vec<usize> = a.values().copied().collect();
        assert_eq!(counts, vec![6, 9]);
    }
}
