//! Exhaustive enumeration of small graphs up to isomorphism.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::iso::{canonical_form, CanonicalForm};

pub const MAX_ENUMERATION_ORDER: usize = 7;

/// One representative per isomorphism class of graphs on `n` vertices,
/// ordered by edge count and then canonical form.
///
/// Every graph on `n` vertices is a graph on `n - 1` vertices plus one vertex
/// joined to some subset of the others, so classes are grown one vertex at a
/// time and deduplicated by canonical form.
pub fn enumerate_all(n: usize) -> Result<Vec<Graph>> {
    if n > MAX_ENUMERATION_ORDER {
        return Err(Error::InvalidParameter(format!(
            "exhaustive enumeration supports n <= {MAX_ENUMERATION_ORDER}, got {n}"
        )));
    }
    let mut level: Vec<Graph> = vec![Graph::empty(0)];
    for k in 1..=n {
        let mut classes: BTreeMap<(usize, CanonicalForm), Graph> = BTreeMap::new();
        for base in &level {
            for mask in 0u32..(1 << (k - 1)) {
                let mut edges = base.edges().to_vec();
                edges.extend((0..k - 1).filter(|&u| mask & (1 << u) != 0).map(|u| (u, k - 1)));
                let g = Graph::from_edge_list(k, &edges)?;
                classes
                    .entry((g.edge_count(), canonical_form(&g)))
                    .or_insert(g);
            }
        }
        level = classes.into_values().collect();
    }
    Ok(level)
}

/// All classes with `1..=n_max` vertices, grouped by vertex count.
pub fn corpus(n_max: usize) -> Result<Vec<Vec<Graph>>> {
    (1..=n_max).map(enumerate_all).collect()
}
