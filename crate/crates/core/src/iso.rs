//! Exact isomorphism for small graphs, canonical forms, and the
//! partition-level isomorphism notions built on them.

use serde::Serialize;

use crate::graph::{Graph, Permutation};
use crate::interning::histogram;
use crate::partition::{partition, PartitionIndex, PartitionLabeling, SchemeId};
use crate::wl::wl1_stable_colors;

/// An isomorphism `g -> h`, when one exists.
pub type IsoWitness = Option<Permutation>;

/// Dense adjacency lookup for the backtracking search.
struct AdjMatrix {
    n: usize,
    bits: Vec<bool>,
}

impl AdjMatrix {
    fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let mut bits = vec![false; n * n];
        for &(u, v) in g.edges() {
            bits[u * n + v] = true;
            bits[v * n + u] = true;
        }
        AdjMatrix { n, bits }
    }

    #[inline]
    fn get(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.n + v]
    }
}

/// Exact test by backtracking over vertex maps that respect the joint
/// stable 1-WL coloring. Intended for graphs up to a few dozen vertices.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> (bool, IsoWitness) {
    let n = g.vertex_count();
    if n != h.vertex_count()
        || g.edge_count() != h.edge_count()
        || g.degree_sequence() != h.degree_sequence()
    {
        return (false, None);
    }
    let colors = wl1_stable_colors(&[g, h], &[vec![0; n], vec![0; n]]);
    if histogram(&colors[0]) != histogram(&colors[1]) {
        return (false, None);
    }
    let order = search_order(g, &colors[0]);
    let (ag, ah) = (AdjMatrix::new(g), AdjMatrix::new(h));
    let mut candidates: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (v, &c) in colors[1].iter().enumerate() {
        candidates[c as usize].push(v);
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let search = Search {
        order: &order,
        gcolors: &colors[0],
        candidates: &candidates,
        ag: &ag,
        ah: &ah,
    };
    if search.extend(0, &mut map, &mut used) {
        let witness = Permutation::new(map).expect("search builds a bijection");
        (true, Some(witness))
    } else {
        (false, None)
    }
}

struct Search<'s> {
    order: &'s [usize],
    gcolors: &'s [u32],
    candidates: &'s [Vec<usize>],
    ag: &'s AdjMatrix,
    ah: &'s AdjMatrix,
}

impl Search<'_> {
    fn extend(&self, depth: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        for &c in &self.candidates[self.gcolors[v] as usize] {
            if used[c] {
                continue;
            }
            let consistent = self.order[..depth]
                .iter()
                .all(|&x| self.ag.get(v, x) == self.ah.get(c, map[x]));
            if !consistent {
                continue;
            }
            map[v] = c;
            used[c] = true;
            if self.extend(depth + 1, map, used) {
                return true;
            }
            used[c] = false;
            map[v] = usize::MAX;
        }
        false
    }
}

/// Visit order: repeatedly take the unplaced vertex with the most placed
/// neighbors, breaking ties by smaller color class, then by identifier.
fn search_order(g: &Graph, colors: &[u32]) -> Vec<usize> {
    let n = g.vertex_count();
    let hist = histogram(colors);
    let class_size = |v: usize| {
        hist.binary_search_by_key(&colors[v], |&(c, _)| c)
            .map(|i| hist[i].1)
            .unwrap_or(0)
    };
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| (std::cmp::Reverse(links[v]), class_size(v), v))
            .expect("unplaced vertex remains");
        placed[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            links[u] += 1;
        }
    }
    order
}

/// Canonical form: vertex count plus the upper triangle of the adjacency
/// matrix (row-major, packed most significant bit first), minimized over
/// every leaf of the individualization-refinement tree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalForm {
    pub n: usize,
    pub bits: Vec<u8>,
}

impl CanonicalForm {
    pub fn to_hex(&self) -> String {
        self.bits.iter().map(|b| format!("{b:02x}")).collect()
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let n = g.vertex_count();
    let adj = AdjMatrix::new(g);
    let start = wl1_stable_colors(&[g], &[vec![0; n]]).remove(0);
    let mut best: Option<Vec<u8>> = None;
    ir_search(g, &adj, start, &mut best);
    CanonicalForm {
        n,
        bits: best.unwrap_or_default(),
    }
}

fn ir_search(g: &Graph, adj: &AdjMatrix, colors: Vec<u32>, best: &mut Option<Vec<u8>>) {
    let n = g.vertex_count();
    let hist = histogram(&colors);
    if hist.len() == n {
        let mut order = vec![0usize; n];
        for (v, &c) in colors.iter().enumerate() {
            order[c as usize] = v;
        }
        let code = encode(adj, &order);
        if best.as_ref().map_or(true, |b| code < *b) {
            *best = Some(code);
        }
        return;
    }
    let target = hist
        .iter()
        .find(|&&(_, count)| count > 1)
        .map(|&(c, _)| c)
        .expect("a non-singleton cell exists");
    for v in (0..n).filter(|&v| colors[v] == target) {
        let individualized: Vec<u32> = colors
            .iter()
            .enumerate()
            .map(|(x, &c)| if x == v { 2 * c } else { 2 * c + 1 })
            .collect();
        let refined = wl1_stable_colors(&[g], &[individualized]).remove(0);
        ir_search(g, adj, refined, best);
    }
}

fn encode(adj: &AdjMatrix, order: &[usize]) -> Vec<u8> {
    let n = order.len();
    let total = n * n.saturating_sub(1) / 2;
    let mut bytes = vec![0u8; total.div_ceil(8)];
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if adj.get(order[i], order[j]) {
                bytes[k / 8] |= 0x80 >> (k % 8);
            }
            k += 1;
        }
    }
    bytes
}

/// Vertices incident to at least one edge joining different partitions.
pub fn border_vertices(g: &Graph, labeling: &PartitionLabeling) -> Vec<usize> {
    let l = &labeling.labels;
    (0..g.vertex_count())
        .filter(|&v| g.neighbors(v).iter().any(|&u| l[u] != l[v]))
        .collect()
}

/// Border vertices with every edge of `g` between two of them.
pub fn boundary_subgraph(g: &Graph, labeling: &PartitionLabeling) -> Graph {
    let border = border_vertices(g, labeling);
    g.induced_subgraph(&border)
        .expect("border vertices are in range")
        .0
}

/// Index-aligned isomorphism of all partitioned subgraphs.
pub fn partition_isomorphic(g: &Graph, h: &Graph, scheme: SchemeId) -> bool {
    let (cg, ch) = (partition(g, scheme).classes(), partition(h, scheme).classes());
    if cg.len() != ch.len() {
        return false;
    }
    cg.iter().zip(&ch).all(|((ig, vg), (ih, vh))| {
        ig == ih
            && vg.len() == vh.len()
            && are_isomorphic(
                &g.induced_subgraph(vg).expect("in range").0,
                &h.induced_subgraph(vh).expect("in range").0,
            )
            .0
    })
}

pub fn interaction_isomorphic(g: &Graph, h: &Graph, scheme: SchemeId) -> bool {
    partition_isomorphic(g, h, scheme)
        && are_isomorphic(
            &boundary_subgraph(g, &partition(g, scheme)),
            &boundary_subgraph(h, &partition(h, scheme)),
        )
        .0
}

/// Canonical forms of every partitioned subgraph and of the boundary
/// subgraph. Two graphs are partition-isomorphic iff their `parts` agree and
/// interaction-isomorphic iff, additionally, their `boundary` agrees.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartitionProfile {
    pub parts: Vec<(PartitionIndex, CanonicalForm)>,
    pub boundary: CanonicalForm,
}

pub fn partition_profile(g: &Graph, scheme: SchemeId) -> PartitionProfile {
    let labeling = partition(g, scheme);
    let parts = labeling
        .classes()
        .into_iter()
        .map(|(idx, members)| {
            let sub = g.induced_subgraph(&members).expect("in range").0;
            (idx, canonical_form(&sub))
        })
        .collect();
    PartitionProfile {
        parts,
        boundary: canonical_form(&boundary_subgraph(g, &labeling)),
    }
}
