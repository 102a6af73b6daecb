//! Combinatorial GPNN refinement.
//!
//! Every learned function of a GPNN layer is replaced by injective interning,
//! which turns the layer into a color refinement with three kinds of color:
//!
//! * `beta`  (per vertex): own `gamma` plus the multiset of neighbor `gamma`s;
//! * `alpha` (per tracked ordered pair `(v, u)`): own `alpha` plus the
//!   multiset of `(a(v, w), a(u, w))` over the closed `d`-hop ball of `v`;
//! * `gamma` (per vertex): for each partition index `j`, the multiset of
//!   `(beta(u), a(v, u))` over the part of the closed ball of `v` with index
//!   `j`, combined in index order.
//!
//! Here `a(x, y)` is `alpha(x, y)` for tracked pairs, the static pair color
//! for untracked distinct pairs and a dedicated self color for `x == y`.
//! Which pairs are tracked is set by the [`InteractionVariant`].

use serde::Serialize;

use crate::coloring::{
    build_colorings, is_tracked, pair_color, InteractionVariant, PairColor, PartitionColoring,
};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::interning::{histogram, rank_jointly};
use crate::partition::{PartitionIndex, SchemeId};
use crate::wl::{Outcome, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GpnnConfig {
    pub scheme: SchemeId,
    pub variant: InteractionVariant,
    /// Hop radius `d` of the interaction and combination neighborhoods.
    pub hops: usize,
    /// Layer cap. `None` runs until the joint state is stable, which is
    /// guaranteed to happen within a bounded number of layers.
    pub max_layers: Option<usize>,
    /// Aggregate pair updates over the union of both endpoints' balls
    /// instead of the first endpoint's ball only.
    pub symmetric_pairs: bool,
}

impl GpnnConfig {
    pub fn new(scheme: SchemeId, variant: InteractionVariant) -> Self {
        GpnnConfig {
            scheme,
            variant,
            hops: 1,
            max_layers: None,
            symmetric_pairs: false,
        }
    }

    pub fn with_hops(mut self, hops: usize) -> Self {
        self.hops = hops;
        self
    }

    pub fn with_max_layers(mut self, layers: usize) -> Self {
        self.max_layers = Some(layers);
        self
    }

    fn validate(&self) -> Result<()> {
        if self.hops == 0 {
            return Err(Error::InvalidRadius);
        }
        if self.max_layers == Some(0) {
            return Err(Error::InvalidParameter("max_layers must be at least 1".into()));
        }
        Ok(())
    }
}

/// Color of an ordered pair as seen by the refinement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PairRef {
    SelfPair,
    Static(PairColor),
    Tracked(u32),
}

/// Colors of one graph after `layer` refinement steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinementState {
    pub beta: Vec<u32>,
    pub gamma: Vec<u32>,
    /// Indexed like [`GraphRun::tracked`].
    pub alpha: Vec<u32>,
    pub layer: usize,
}

/// Static structure and evolving state of one graph in a run.
#[derive(Debug, Clone)]
pub struct GraphRun<'a> {
    graph: &'a Graph,
    coloring: PartitionColoring,
    balls: Vec<Vec<usize>>,
    tracked: Vec<(usize, usize)>,
    /// Per vertex, sorted `(partner, index into tracked)`.
    partners: Vec<Vec<(usize, usize)>>,
    state: RefinementState,
}

impl<'a> GraphRun<'a> {
    fn new(graph: &'a Graph, coloring: PartitionColoring, config: &GpnnConfig) -> Self {
        let n = graph.vertex_count();
        let balls: Vec<Vec<usize>> = (0..n).map(|v| graph.ball(v, config.hops, true)).collect();
        let mut tracked = Vec::new();
        let mut partners = vec![Vec::new(); n];
        for v in 0..n {
            let candidates: Box<dyn Iterator<Item = usize>> = match config.variant {
                InteractionVariant::Dagger => Box::new(0..n),
                _ => Box::new(graph.neighbors(v).iter().copied()),
            };
            for u in candidates {
                if u != v && is_tracked(graph, &coloring, config.variant, v, u) {
                    partners[v].push((u, tracked.len()));
                    tracked.push((v, u));
                }
            }
        }
        let state = RefinementState {
            beta: coloring.colors.clone(),
            gamma: coloring.colors.clone(),
            alpha: vec![0; tracked.len()],
            layer: 0,
        };
        GraphRun {
            graph,
            coloring,
            balls,
            tracked,
            partners,
            state,
        }
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn coloring(&self) -> &PartitionColoring {
        &self.coloring
    }

    pub fn state(&self) -> &RefinementState {
        &self.state
    }

    /// Tracked ordered pairs; `state().alpha[i]` is the color of `tracked()[i]`.
    pub fn tracked(&self) -> &[(usize, usize)] {
        &self.tracked
    }

    /// Closed `d`-hop ball of `v`.
    pub fn ball(&self, v: usize) -> &[usize] {
        &self.balls[v]
    }

    pub fn tracked_index(&self, v: usize, u: usize) -> Option<usize> {
        let row = &self.partners[v];
        row.binary_search_by_key(&u, |&(p, _)| p)
            .ok()
            .map(|i| row[i].1)
    }

    /// `a(v, u)` under the given alpha colors.
    fn pair_ref(&self, alpha: &[u32], v: usize, u: usize) -> PairRef {
        if v == u {
            return PairRef::SelfPair;
        }
        match self.tracked_index(v, u) {
            Some(i) => PairRef::Tracked(alpha[i]),
            None => PairRef::Static(pair_color(&self.coloring, self.graph, v, u)),
        }
    }

    fn beta_signatures(&self) -> Vec<(u32, Vec<u32>)> {
        let gamma = &self.state.gamma;
        (0..self.graph.vertex_count())
            .map(|v| {
                let mut ms: Vec<u32> = self.graph.neighbors(v).iter().map(|&u| gamma[u]).collect();
                ms.sort_unstable();
                (gamma[v], ms)
            })
            .collect()
    }

    fn alpha_signatures(&self, symmetric: bool) -> Vec<(u32, Vec<(PairRef, PairRef)>)> {
        let alpha = &self.state.alpha;
        self.tracked
            .iter()
            .enumerate()
            .map(|(i, &(v, u))| {
                let witnesses: Vec<usize> = if symmetric {
                    merge_sorted(&self.balls[v], &self.balls[u])
                } else {
                    self.balls[v].clone()
                };
                let mut ms: Vec<(PairRef, PairRef)> = witnesses
                    .into_iter()
                    .map(|w| (self.pair_ref(alpha, v, w), self.pair_ref(alpha, u, w)))
                    .collect();
                ms.sort_unstable();
                (alpha[i], ms)
            })
            .collect()
    }

    fn gamma_signatures(&self, beta: &[u32], alpha: &[u32]) -> Vec<Vec<(PartitionIndex, u32, PairRef)>> {
        (0..self.graph.vertex_count())
            .map(|v| {
                let mut parts: Vec<(PartitionIndex, u32, PairRef)> = self.balls[v]
                    .iter()
                    .map(|&u| (self.coloring.labels[u], beta[u], self.pair_ref(alpha, v, u)))
                    .collect();
                // Sorting by index first lays the per-part multisets out in
                // canonical index order.
                parts.sort_unstable();
                parts
            })
            .collect()
    }
}

fn merge_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    out.extend_from_slice(a);
    out.extend_from_slice(b);
    out.sort_unstable();
    out.dedup();
    out
}

/// Class counts of the three color kinds, pooled over all graphs of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct ClassCounts {
    beta: usize,
    alpha: usize,
    gamma: usize,
}

/// Lockstep refinement of one or more graphs under a shared interning table.
#[derive(Debug, Clone)]
pub struct GpnnRun<'a> {
    config: GpnnConfig,
    runs: Vec<GraphRun<'a>>,
    counts: ClassCounts,
}

impl<'a> GpnnRun<'a> {
    pub fn new(graphs: &[&'a Graph], config: GpnnConfig) -> Result<Self> {
        config.validate()?;
        let (_, colorings) = build_colorings(graphs, config.scheme);
        let mut runs: Vec<GraphRun<'a>> = graphs
            .iter()
            .zip(colorings)
            .map(|(g, c)| GraphRun::new(g, c, &config))
            .collect();

        let initial_pairs: Vec<Vec<PairColor>> = runs
            .iter()
            .map(|r| {
                r.tracked
                    .iter()
                    .map(|&(v, u)| pair_color(&r.coloring, r.graph, v, u))
                    .collect()
            })
            .collect();
        let (alpha0, alpha_classes) = rank_jointly(&initial_pairs);
        for (run, alpha) in runs.iter_mut().zip(alpha0) {
            run.state.alpha = alpha;
        }
        let vertex_classes = {
            let colors: Vec<Vec<u32>> = runs.iter().map(|r| r.state.gamma.clone()).collect();
            rank_jointly(&colors).1
        };
        Ok(GpnnRun {
            config,
            runs,
            counts: ClassCounts {
                beta: vertex_classes,
                alpha: alpha_classes,
                gamma: vertex_classes,
            },
        })
    }

    pub fn config(&self) -> &GpnnConfig {
        &self.config
    }

    pub fn graph_run(&self, i: usize) -> &GraphRun<'a> {
        &self.runs[i]
    }

    pub fn layer(&self) -> usize {
        self.runs.first().map_or(0, |r| r.state.layer)
    }

    /// One refinement layer on every graph. Returns `true` when no color
    /// class of any kind was split, i.e. the joint state is stable.
    pub fn step(&mut self) -> bool {
        let beta_sigs: Vec<_> = self.runs.iter().map(GraphRun::beta_signatures).collect();
        let (beta, beta_classes) = rank_jointly(&beta_sigs);

        let symmetric = self.config.symmetric_pairs;
        let alpha_sigs: Vec<_> = self
            .runs
            .iter()
            .map(|r| r.alpha_signatures(symmetric))
            .collect();
        let (alpha, alpha_classes) = rank_jointly(&alpha_sigs);

        let gamma_sigs: Vec<_> = self
            .runs
            .iter()
            .zip(beta.iter().zip(&alpha))
            .map(|(r, (b, a))| r.gamma_signatures(b, a))
            .collect();
        let (gamma, gamma_classes) = rank_jointly(&gamma_sigs);

        for (run, ((b, a), c)) in self.runs.iter_mut().zip(beta.into_iter().zip(alpha).zip(gamma)) {
            run.state.beta = b;
            run.state.alpha = a;
            run.state.gamma = c;
            run.state.layer += 1;
        }
        let counts = ClassCounts {
            beta: beta_classes,
            alpha: alpha_classes,
            gamma: gamma_classes,
        };
        let stable = counts == self.counts;
        self.counts = counts;
        stable
    }

    /// Runs exactly `layers` steps.
    pub fn run_layers(&mut self, layers: usize) {
        for _ in 0..layers {
            self.step();
        }
    }

    /// Number of layers after which the joint state is certainly stable:
    /// every unstable layer adds at least one class, and the class total is
    /// bounded by the number of colored items.
    fn stability_bound(&self) -> usize {
        self.runs
            .iter()
            .map(|r| 2 * r.graph.vertex_count() + r.tracked.len())
            .sum::<usize>()
            + 1
    }

    fn gamma_histograms_differ(&self) -> bool {
        let first = histogram(&self.runs[0].state.gamma);
        self.runs[1..]
            .iter()
            .any(|r| histogram(&r.state.gamma) != first)
    }
}

/// Pairwise distinguishability test of `config`'s GPNN variant.
pub fn gpnn_compare(g: &Graph, h: &Graph, config: GpnnConfig) -> Result<Verdict> {
    let mut run = GpnnRun::new(&[g, h], config)?;
    let verdict = |run: &GpnnRun, outcome, t| {
        Verdict::new(outcome, t, &run.runs[0].state.gamma, &run.runs[1].state.gamma)
    };
    if g.vertex_count() != h.vertex_count() || run.gamma_histograms_differ() {
        return Ok(verdict(&run, Outcome::Distinguished, 0));
    }
    let cap = config.max_layers.unwrap_or_else(|| run.stability_bound());
    for t in 1..=cap {
        let stable = run.step();
        if run.gamma_histograms_differ() {
            return Ok(verdict(&run, Outcome::Distinguished, t));
        }
        if stable {
            return Ok(verdict(&run, Outcome::Equivalent, t));
        }
    }
    Ok(verdict(&run, Outcome::Equivalent, cap))
}

/// `(|E^delta|, q)`: the number of tracked ordered pairs and the largest
/// closed `d`-hop neighborhood.
pub fn interaction_cost(
    g: &Graph,
    coloring: &PartitionColoring,
    variant: InteractionVariant,
    hops: usize,
) -> Result<(usize, usize)> {
    if hops == 0 {
        return Err(Error::InvalidRadius);
    }
    let n = g.vertex_count();
    let tracked = match variant {
        InteractionVariant::Dagger => n * n.saturating_sub(1),
        InteractionVariant::Diamond => 2 * g.edge_count(),
        InteractionVariant::Star => 2 * g
            .edges()
            .iter()
            .filter(|&&(u, v)| coloring.color(u) != coloring.color(v))
            .count(),
    };
    let q = (0..n).map(|v| g.ball(v, hops, true).len()).max().unwrap_or(0);
    Ok((tracked, q))
}
