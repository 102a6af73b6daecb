//! Undirected simple graphs on dense vertex identifiers `0..n`.
//!
//! A [`Graph`] is immutable once built. Adjacency is stored in compressed
//! sparse rows with every neighbor list sorted, so membership tests are a
//! binary search and neighbor iteration is a slice walk. The edge list is kept
//! in the order (and orientation) in which edges were first supplied, which
//! lets edge-list files round-trip exactly.

use std::collections::VecDeque;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

/// A bijection on `0..n`; `map(v)` is the image of `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &x in &mapping {
            if x >= n || seen[x] {
                return Err(Error::NotAPermutation(n));
            }
            seen[x] = true;
        }
        Ok(Permutation(mapping))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn map(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (v, &image) in self.0.iter().enumerate() {
            inv[image] = v;
        }
        Permutation(inv)
    }

    /// Uniformly random permutation drawn from `rng`.
    pub fn random<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        use rand::seq::SliceRandom;
        let mut mapping: Vec<usize> = (0..n).collect();
        mapping.shuffle(rng);
        Permutation(mapping)
    }
}

impl Graph {
    /// Builds a graph from unordered vertex pairs. Repeated pairs (in either
    /// orientation) are collapsed onto their first occurrence.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
        }

        let mut degree = vec![0usize; n];
        for &(u, v) in edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0usize; offsets[n]];
        for &(u, v) in edges {
            targets[fill[u]] = v;
            fill[u] += 1;
            targets[fill[v]] = u;
            fill[v] += 1;
        }

        // Sort and dedup each row, then compact.
        let mut compact_offsets = Vec::with_capacity(n + 1);
        compact_offsets.push(0);
        let mut write = 0;
        for v in 0..n {
            let row = &mut targets[offsets[v]..offsets[v + 1]];
            row.sort_unstable();
            let mut last = usize::MAX;
            for i in offsets[v]..offsets[v + 1] {
                let t = targets[i];
                if t != last {
                    targets[write] = t;
                    write += 1;
                    last = t;
                }
            }
            compact_offsets.push(write);
        }
        targets.truncate(write);

        let mut graph = Graph {
            n,
            edges: Vec::with_capacity(write / 2),
            offsets: compact_offsets,
            targets,
        };
        if graph.targets.len() == 2 * edges.len() {
            graph.edges = edges.to_vec();
        } else {
            let mut seen = std::collections::HashSet::with_capacity(write / 2);
            for &(u, v) in edges {
                if seen.insert((u.min(v), u.max(v))) {
                    graph.edges.push((u, v));
                }
            }
        }
        Ok(graph)
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            offsets: vec![0; n + 1],
            targets: Vec::new(),
        }
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in first-seen order and orientation.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Vertices at shortest-path distance `1..=d` from `v`, plus `v` itself
    /// when `include_self` is set. Sorted ascending.
    pub fn neighborhood_d(&self, v: usize, d: usize, include_self: bool) -> Result<Vec<usize>> {
        self.check_vertex(v)?;
        if d == 0 {
            return Err(Error::InvalidRadius);
        }
        Ok(self.ball(v, d, include_self))
    }

    /// Unchecked bounded BFS used by the refinement code.
    pub(crate) fn ball(&self, v: usize, d: usize, include_self: bool) -> Vec<usize> {
        if d == 1 {
            let mut out = self.neighbors(v).to_vec();
            if include_self {
                let pos = out.binary_search(&v).unwrap_err();
                out.insert(pos, v);
            }
            return out;
        }
        let mut dist: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
        dist.insert(v, 0);
        let mut queue = VecDeque::from([v]);
        while let Some(x) = queue.pop_front() {
            let dx = dist[&x];
            if dx == d {
                continue;
            }
            for &y in self.neighbors(x) {
                if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(y) {
                    e.insert(dx + 1);
                    queue.push_back(y);
                }
            }
        }
        let mut out: Vec<usize> = dist
            .into_keys()
            .filter(|&x| include_self || x != v)
            .collect();
        out.sort_unstable();
        out
    }

    /// Induced subgraph on `members`. The returned mapping sends new vertex
    /// `i` to its original identifier and is increasing.
    pub fn induced_subgraph(&self, members: &[usize]) -> Result<(Graph, Vec<usize>)> {
        for &v in members {
            self.check_vertex(v)?;
        }
        let mut mapping = members.to_vec();
        mapping.sort_unstable();
        mapping.dedup();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in mapping.iter().enumerate() {
            index[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in mapping.iter().enumerate() {
            for &u in self.neighbors(v) {
                let j = index[u];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        let sub = Graph::from_edge_list(mapping.len(), &edges)?;
        Ok((sub, mapping))
    }

    /// The graph whose edges are `(pi(u), pi(v))` for every edge `(u, v)`.
    pub fn apply_permutation(&self, pi: &Permutation) -> Result<Graph> {
        if pi.len() != self.n {
            return Err(Error::PermutationLength {
                expected: self.n,
                got: pi.len(),
            });
        }
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(u, v)| (pi.map(u), pi.map(v)))
            .collect();
        Graph::from_edge_list(self.n, &edges)
    }

    /// Component count and per-vertex labels, numbered in order of the
    /// smallest vertex of each component.
    pub fn connected_components(&self) -> (usize, Vec<usize>) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            stack.push(s);
            while let Some(x) = stack.pop() {
                for &y in self.neighbors(x) {
                    if label[y] == usize::MAX {
                        label[y] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    /// Number of triangles through `v`.
    pub fn triangle_count(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.triangles_at(v))
    }

    fn triangles_at(&self, v: usize) -> usize {
        let nv = self.neighbors(v);
        let mut count = 0;
        for (i, &u) in nv.iter().enumerate() {
            count += sorted_intersection_count(&nv[i + 1..], self.neighbors(u));
        }
        count
    }

    pub fn triangle_counts(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.triangles_at(v)).collect()
    }

    /// Whether `other` has the same vertex count and the same edge set.
    pub fn same_edge_set(&self, other: &Graph) -> bool {
        self.n == other.n && self.offsets == other.offsets && self.targets == other.targets
    }

    /// Degree sequence sorted ascending.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable();
        d
    }
}

fn sorted_intersection_count(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        Graph::from_edge_list(n, &edges).unwrap()
    }

    fn bowtie() -> Graph {
        Graph::from_edge_list(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap()
    }

    #[test]
    fn builds_cycle_and_collapses_duplicates() {
        let c4 = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(c4.edge_count(), 4);
        assert!(c4.degrees().iter().all(|&d| d == 2));

        let empty = Graph::from_edge_list(3, &[]).unwrap();
        assert_eq!(empty.edge_count(), 0);

        let dup = Graph::from_edge_list(3, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(dup.edge_count(), 1);
        assert_eq!(dup.edges(), &[(0, 1)]);
        assert_eq!(dup.neighbors(0), &[1]);
    }

    #[test]
    fn rejects_self_loops_and_out_of_range() {
        assert_eq!(Graph::from_edge_list(3, &[(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(
            Graph::from_edge_list(3, &[(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn neighborhoods() {
        let c6 = cycle(6);
        assert_eq!(c6.neighborhood_d(0, 1, true).unwrap(), vec![0, 1, 5]);
        assert_eq!(c6.neighborhood_d(0, 2, false).unwrap(), vec![1, 2, 4, 5]);
        assert_eq!(c6.neighborhood_d(0, 3, true).unwrap(), (0..6).collect::<Vec<_>>());
        let e3 = Graph::empty(3);
        assert!(e3.neighborhood_d(0, 3, false).unwrap().is_empty());
        assert!(c6.neighborhood_d(6, 1, false).is_err());
        assert_eq!(c6.neighborhood_d(0, 0, false), Err(Error::InvalidRadius));
    }

    #[test]
    fn induced_subgraphs() {
        let (k3, map) = complete(4).induced_subgraph(&[0, 1, 2]).unwrap();
        assert_eq!((k3.vertex_count(), k3.edge_count()), (3, 3));
        assert_eq!(map, vec![0, 1, 2]);

        let (ind, map) = cycle(6).induced_subgraph(&[4, 2, 0]).unwrap();
        assert_eq!((ind.vertex_count(), ind.edge_count()), (3, 0));
        assert_eq!(map, vec![0, 2, 4]);

        let c6 = cycle(6);
        let (whole, map) = c6.induced_subgraph(&(0..6).collect::<Vec<_>>()).unwrap();
        assert!(whole.same_edge_set(&c6));
        assert_eq!(map, (0..6).collect::<Vec<_>>());

        assert!(c6.induced_subgraph(&[7]).is_err());
    }

    #[test]
    fn permutations() {
        let c4 = cycle(4);
        let rot = Permutation::new(vec![1, 2, 3, 0]).unwrap();
        assert!(c4.apply_permutation(&rot).unwrap().same_edge_set(&c4));
        assert!(c4
            .apply_permutation(&Permutation::identity(4))
            .unwrap()
            .same_edge_set(&c4));

        let p3 = Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        let swap = Permutation::new(vec![2, 1, 0]).unwrap();
        assert!(p3.apply_permutation(&swap).unwrap().same_edge_set(&p3));

        assert_eq!(Permutation::new(vec![0, 0, 1]), Err(Error::NotAPermutation(3)));
        assert!(c4.apply_permutation(&Permutation::identity(3)).is_err());
    }

    #[test]
    fn components() {
        let two_triangles =
            Graph::from_edge_list(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(two_triangles.connected_components().0, 2);
        assert_eq!(cycle(6).connected_components().0, 1);
        let (count, labels) = Graph::empty(5).connected_components();
        assert_eq!(count, 5);
        assert_eq!(labels, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn triangles() {
        assert!((0..4).all(|v| complete(4).triangle_count(v).unwrap() == 3));
        assert!((0..6).all(|v| cycle(6).triangle_count(v).unwrap() == 0));
        assert_eq!(bowtie().triangle_counts(), vec![2, 1, 1, 1, 1]);
        assert!(cycle(6).triangle_count(9).is_err());
    }
}
