//! Reference 1-WL and 2-FWL distinguishability oracles.
//!
//! Both graphs of a test are refined in lockstep with synchronized interning
//! (see [`crate::interning`]), so colors are comparable between them at every
//! iteration. A test stops early as soon as the color histograms differ;
//! refinement never merges classes, so such a difference is final.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::interning::{histogram, rank_jointly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Distinguished,
    Equivalent,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Outcome::Distinguished => "distinguished",
            Outcome::Equivalent => "equivalent",
        })
    }
}

/// Result of a pairwise test.
///
/// For `Distinguished`, `iteration` is the first iteration whose histograms
/// differ (0 = initial coloring). For `Equivalent`, it is the iteration at
/// which the joint coloring was found stable (or the cap).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub iteration: usize,
    pub histogram_g: Vec<(u32, usize)>,
    pub histogram_h: Vec<(u32, usize)>,
}

impl Verdict {
    pub fn is_distinguished(&self) -> bool {
        self.outcome == Outcome::Distinguished
    }

    pub(crate) fn new(outcome: Outcome, iteration: usize, g: &[u32], h: &[u32]) -> Self {
        Verdict {
            outcome,
            iteration,
            histogram_g: histogram(g),
            histogram_h: histogram(h),
        }
    }
}

/// 1-WL test. `init_g` / `init_h` are initial vertex colors drawn from one
/// shared table; pass all zeros for plain 1-WL.
pub fn wl1_compare(g: &Graph, h: &Graph, init_g: &[u32], init_h: &[u32]) -> Result<Verdict> {
    check_len(g, init_g)?;
    check_len(h, init_h)?;
    let (ranked, mut classes) = rank_jointly(&[init_g.to_vec(), init_h.to_vec()]);
    let mut colors: [Vec<u32>; 2] = ranked.try_into().expect("two groups");
    let graphs = [g, h];
    if histogram(&colors[0]) != histogram(&colors[1]) {
        return Ok(Verdict::new(Outcome::Distinguished, 0, &colors[0], &colors[1]));
    }
    let cap = g.vertex_count() + h.vertex_count();
    for t in 1..=cap.max(1) {
        let sigs: Vec<Vec<(u32, Vec<u32>)>> = graphs
            .iter()
            .zip(&colors)
            .map(|(graph, c)| wl1_signatures(graph, c))
            .collect();
        let (ranked, count) = rank_jointly(&sigs);
        colors = ranked.try_into().expect("two groups");
        if histogram(&colors[0]) != histogram(&colors[1]) {
            return Ok(Verdict::new(Outcome::Distinguished, t, &colors[0], &colors[1]));
        }
        if count == classes {
            return Ok(Verdict::new(Outcome::Equivalent, t, &colors[0], &colors[1]));
        }
        classes = count;
    }
    Ok(Verdict::new(Outcome::Equivalent, cap, &colors[0], &colors[1]))
}

/// Plain 1-WL from the uniform coloring.
pub fn wl1_compare_plain(g: &Graph, h: &Graph) -> Verdict {
    wl1_compare(g, h, &vec![0; g.vertex_count()], &vec![0; h.vertex_count()])
        .expect("uniform colors have the right length")
}

fn wl1_signatures(g: &Graph, colors: &[u32]) -> Vec<(u32, Vec<u32>)> {
    (0..g.vertex_count())
        .map(|v| {
            let mut ms: Vec<u32> = g.neighbors(v).iter().map(|&u| colors[u]).collect();
            ms.sort_unstable();
            (colors[v], ms)
        })
        .collect()
}

/// Stable 1-WL coloring of several graphs refined jointly, with no early
/// exit. Colors are ranks of signatures, hence isomorphism invariant.
pub fn wl1_stable_colors(graphs: &[&Graph], init: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let (mut colors, mut classes) = rank_jointly(init);
    loop {
        let sigs: Vec<_> = graphs
            .iter()
            .zip(&colors)
            .map(|(graph, c)| wl1_signatures(graph, c))
            .collect();
        let (ranked, count) = rank_jointly(&sigs);
        colors = ranked;
        if count == classes {
            return colors;
        }
        classes = count;
    }
}

/// 2-FWL test (equivalent in power to 3-WL). Optional initial vertex colors
/// are folded into the initial pair colors.
pub fn fwl2_compare(g: &Graph, h: &Graph, init: Option<(&[u32], &[u32])>) -> Result<Verdict> {
    if let Some((a, b)) = init {
        check_len(g, a)?;
        check_len(h, b)?;
    }
    let graphs = [g, h];
    let initial: Vec<Vec<(u8, u32, u32)>> = graphs
        .iter()
        .enumerate()
        .map(|(i, graph)| {
            let vc = init.map(|(a, b)| if i == 0 { a } else { b });
            fwl2_initial(graph, vc)
        })
        .collect();
    let (ranked, mut classes) = rank_jointly(&initial);
    let mut colors: [Vec<u32>; 2] = ranked.try_into().expect("two groups");
    if histogram(&colors[0]) != histogram(&colors[1]) {
        return Ok(Verdict::new(Outcome::Distinguished, 0, &colors[0], &colors[1]));
    }
    let (ng, nh) = (g.vertex_count(), h.vertex_count());
    let cap = (ng * ng + nh * nh).max(1);
    for t in 1..=cap {
        let sigs: Vec<Vec<(u32, Vec<(u32, u32)>)>> = graphs
            .iter()
            .zip(&colors)
            .map(|(graph, c)| fwl2_signatures(graph.vertex_count(), c))
            .collect();
        let (ranked, count) = rank_jointly(&sigs);
        colors = ranked.try_into().expect("two groups");
        if histogram(&colors[0]) != histogram(&colors[1]) {
            return Ok(Verdict::new(Outcome::Distinguished, t, &colors[0], &colors[1]));
        }
        if count == classes {
            return Ok(Verdict::new(Outcome::Equivalent, t, &colors[0], &colors[1]));
        }
        classes = count;
    }
    Ok(Verdict::new(Outcome::Equivalent, cap, &colors[0], &colors[1]))
}

fn fwl2_initial(g: &Graph, vertex_colors: Option<&[u32]>) -> Vec<(u8, u32, u32)> {
    let n = g.vertex_count();
    let mut out = Vec::with_capacity(n * n);
    for v in 0..n {
        for u in 0..n {
            let kind = if u == v {
                0
            } else if g.has_edge(v, u) {
                1
            } else {
                2
            };
            let (cv, cu) = vertex_colors.map_or((0, 0), |c| (c[v], c[u]));
            out.push((kind, cv, cu));
        }
    }
    out
}

fn fwl2_signatures(n: usize, colors: &[u32]) -> Vec<(u32, Vec<(u32, u32)>)> {
    let mut out = Vec::with_capacity(n * n);
    for v in 0..n {
        for u in 0..n {
            let mut ms: Vec<(u32, u32)> = (0..n)
                .map(|w| (colors[v * n + w], colors[u * n + w]))
                .collect();
            ms.sort_unstable();
            out.push((colors[v * n + u], ms));
        }
    }
    out
}

fn check_len(g: &Graph, colors: &[u32]) -> Result<()> {
    if colors.len() != g.vertex_count() {
        return Err(Error::InvalidParameter(format!(
            "expected {} initial colors, got {}",
            g.vertex_count(),
            colors.len()
        )));
    }
    Ok(())
}
