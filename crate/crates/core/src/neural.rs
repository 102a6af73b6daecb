//! Forward-only numeric GPNN with fixed seeded weights.
//!
//! One layer computes
//!
//! ```text
//! beta_v     = mlp_theta((1 + eps) gamma_v + sum_{u in N(v)} gamma_u)
//! alpha_vu   = mlp_psi((1 + mu) alpha_vu + sum_{w in N_d[v]} (alpha_vw + alpha_uw))
//! gamma_v,j  = omega_j * (sum_{u in N_d[v], slot(u) = j} [beta_u | alpha_vu | p_j]) W_j
//! gamma_v    = sum_j gamma_v,j
//! ```
//!
//! where `alpha` evolves only on tracked pairs and every other pair reads a
//! fixed embedding of its static color. Sums run in ascending vertex order
//! with Neumaier compensation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coloring::{build_colorings, tracked_pairs, InteractionVariant, PairTag, PartitionColoring};
use crate::error::{Error, Result};
use crate::gpnn::{GpnnConfig, GpnnRun};
use crate::graph::{Graph, Permutation};
use crate::partition::{PartitionIndex, SchemeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NeuralConfig {
    /// Hidden width `f`.
    pub width: usize,
    pub layers: usize,
    /// Partition slots `k`.
    pub slots: usize,
    pub hops: usize,
    pub seed: u64,
    /// Concatenate a GIN-style base embedding to every vertex output.
    pub plugin: bool,
}

impl NeuralConfig {
    pub fn new(width: usize, layers: usize, slots: usize) -> Self {
        NeuralConfig {
            width,
            layers,
            slots,
            hops: 1,
            seed: 0,
            plugin: false,
        }
    }

    pub fn with_hops(mut self, hops: usize) -> Self {
        self.hops = hops;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_plugin(mut self, plugin: bool) -> Self {
        self.plugin = plugin;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.width == 0 || self.layers == 0 || self.slots == 0 {
            return Err(Error::InvalidParameter(
                "width, layers and slots must all be at least 1".into(),
            ));
        }
        if self.hops == 0 {
            return Err(Error::InvalidRadius);
        }
        Ok(())
    }

    /// Length of a vertex output.
    pub fn vertex_width(&self) -> usize {
        if self.plugin {
            2 * self.width
        } else {
            self.width
        }
    }
}

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl Matrix {
    fn uniform(rows: usize, cols: usize, scale: f64, rng: &mut ChaCha8Rng) -> Self {
        let data = (0..rows * cols).map(|_| rng.gen_range(-scale..=scale)).collect();
        Matrix { rows, cols, data }
    }

    /// Row vector times matrix.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.rows);
        let mut out = vec![0.0; self.cols];
        for (r, &xr) in x.iter().enumerate() {
            if xr == 0.0 {
                continue;
            }
            let row = &self.data[r * self.cols..(r + 1) * self.cols];
            for (o, &w) in out.iter_mut().zip(row) {
                *o += xr * w;
            }
        }
        out
    }
}

/// Two affine maps with a rectifier between them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Mlp {
    pub w1: Matrix,
    pub b1: Vec<f64>,
    pub w2: Matrix,
    pub b2: Vec<f64>,
}

impl Mlp {
    fn uniform(f: usize, scale: f64, rng: &mut ChaCha8Rng) -> Self {
        let w1 = Matrix::uniform(f, f, scale, rng);
        let b1 = (0..f).map(|_| rng.gen_range(-scale..=scale)).collect();
        let w2 = Matrix::uniform(f, f, scale, rng);
        let b2 = (0..f).map(|_| rng.gen_range(-scale..=scale)).collect();
        Mlp { w1, b1, w2, b2 }
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut h = self.w1.apply(x);
        for (v, b) in h.iter_mut().zip(&self.b1) {
            *v = (*v + b).max(0.0);
        }
        let mut y = self.w2.apply(&h);
        for (v, b) in y.iter_mut().zip(&self.b2) {
            *v += b;
        }
        y
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LayerParams {
    pub epsilon: f64,
    pub mu: f64,
    pub theta: Mlp,
    pub psi: Mlp,
    /// Base GNN layer used only when the plugin output is requested.
    pub gin: Mlp,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Parameters {
    pub config: NeuralConfig,
    pub layers: Vec<LayerParams>,
    pub omega: Vec<f64>,
    /// `W_j`, each `(2f + k) x f`.
    pub w: Vec<Matrix>,
}

pub fn init_params(config: NeuralConfig) -> Result<Parameters> {
    config.validate()?;
    let f = config.width;
    let scale = (1.0 / f as f64).sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let layers = (0..config.layers)
        .map(|_| LayerParams {
            epsilon: 1.0,
            mu: 1.0,
            theta: Mlp::uniform(f, scale, &mut rng),
            psi: Mlp::uniform(f, scale, &mut rng),
            gin: Mlp::uniform(f, scale, &mut rng),
        })
        .collect();
    let w = (0..config.slots)
        .map(|_| Matrix::uniform(2 * f + config.slots, f, scale, &mut rng))
        .collect();
    Ok(Parameters {
        config,
        layers,
        omega: vec![1.0; config.slots],
        w,
    })
}

/// Canonical color value an embedding is keyed by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ColorKey {
    Vertex(PartitionIndex),
    Pair {
        lo: PartitionIndex,
        hi: PartitionIndex,
        tag: PairTag,
    },
}

impl ColorKey {
    fn words(self) -> [u64; 6] {
        match self {
            ColorKey::Vertex(PartitionIndex(a, b)) => [0, a as u64, b as u64, 0, 0, 0],
            ColorKey::Pair { lo, hi, tag } => [
                1,
                lo.0 as u64,
                lo.1 as u64,
                hi.0 as u64,
                hi.1 as u64,
                tag as u64,
            ],
        }
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl Parameters {
    /// Pseudo-random unit vector for `key`, independent of any graph.
    pub fn color_embedding(&self, key: ColorKey) -> Vec<f64> {
        let mut state = self.config.seed ^ 0x243f_6a88_85a3_08d3;
        for w in key.words() {
            let mut s = state ^ w;
            state = splitmix64(&mut s);
        }
        let mut v: Vec<f64> = (0..self.config.width)
            .map(|_| (splitmix64(&mut state) >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0)
            .collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            v.iter_mut().for_each(|x| *x /= norm);
        } else {
            v[0] = 1.0;
        }
        v
    }
}

/// Neumaier-compensated running sum of vectors.
struct CompensatedSum {
    sum: Vec<f64>,
    comp: Vec<f64>,
}

impl CompensatedSum {
    fn new(len: usize) -> Self {
        CompensatedSum {
            sum: vec![0.0; len],
            comp: vec![0.0; len],
        }
    }

    fn add_scaled(&mut self, x: &[f64], scale: f64) {
        for ((s, c), &xi) in self.sum.iter_mut().zip(&mut self.comp).zip(x) {
            let xi = xi * scale;
            let t = *s + xi;
            if s.abs() >= xi.abs() {
                *c += (*s - t) + xi;
            } else {
                *c += (xi - t) + *s;
            }
            *s = t;
        }
    }

    fn add(&mut self, x: &[f64]) {
        self.add_scaled(x, 1.0);
    }

    fn finish(self) -> Vec<f64> {
        self.sum.into_iter().zip(self.comp).map(|(s, c)| s + c).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NeuralOutput {
    /// Per-vertex embeddings, each of [`NeuralConfig::vertex_width`].
    pub vertices: Vec<Vec<f64>>,
    /// Sum of vertex embeddings followed by the connected-component count.
    pub graph: Vec<f64>,
}

fn pair_key(labels: &[PartitionIndex], g: &Graph, v: usize, u: usize) -> ColorKey {
    let (a, b) = (labels[v], labels[u]);
    let tag = if v == u {
        PairTag::SelfPair
    } else if g.has_edge(v, u) {
        if a == b {
            PairTag::SamePartitionEdge
        } else {
            PairTag::CrossPartitionEdge
        }
    } else {
        PairTag::NonEdge
    };
    ColorKey::Pair {
        lo: a.min(b),
        hi: a.max(b),
        tag,
    }
}

/// Runs all configured layers on `g`. Slots are assigned to the partition
/// indices present in `g` in ascending order.
pub fn forward(
    g: &Graph,
    coloring: &PartitionColoring,
    variant: InteractionVariant,
    params: &Parameters,
) -> Result<NeuralOutput> {
    let cfg = params.config;
    cfg.validate()?;
    let (n, f, k) = (g.vertex_count(), cfg.width, cfg.slots);
    let labels = &coloring.labels;
    let mut present = labels.clone();
    present.sort_unstable();
    present.dedup();
    if present.len() > k {
        return Err(Error::TooManyPartitions {
            found: present.len(),
            slots: k,
        });
    }
    let slot: Vec<usize> = labels
        .iter()
        .map(|l| present.binary_search(l).expect("label is present"))
        .collect();
    let balls: Vec<Vec<usize>> = (0..n).map(|v| g.ball(v, cfg.hops, true)).collect();
    let tracked = tracked_pairs(g, coloring, variant);
    let tracked_index = |v: usize, u: usize| tracked.binary_search(&(v, u)).ok();
    let static_alpha = |v: usize, u: usize| params.color_embedding(pair_key(labels, g, v, u));

    let mut gamma: Vec<Vec<f64>> = labels
        .iter()
        .map(|&l| params.color_embedding(ColorKey::Vertex(l)))
        .collect();
    let mut base = gamma.clone();
    let mut alpha: Vec<Vec<f64>> = tracked.iter().map(|&(v, u)| static_alpha(v, u)).collect();

    for layer in &params.layers {
        let beta: Vec<Vec<f64>> = (0..n)
            .map(|v| {
                let mut acc = CompensatedSum::new(f);
                acc.add_scaled(&gamma[v], 1.0 + layer.epsilon);
                for &u in g.neighbors(v) {
                    acc.add(&gamma[u]);
                }
                layer.theta.apply(&acc.finish())
            })
            .collect();

        let read = |alpha: &[Vec<f64>], v: usize, u: usize| -> Vec<f64> {
            match tracked_index(v, u) {
                Some(i) => alpha[i].clone(),
                None => static_alpha(v, u),
            }
        };
        let next_alpha: Vec<Vec<f64>> = tracked
            .iter()
            .enumerate()
            .map(|(i, &(v, u))| {
                let mut acc = CompensatedSum::new(f);
                acc.add_scaled(&alpha[i], 1.0 + layer.mu);
                for &w in &balls[v] {
                    acc.add(&read(&alpha, v, w));
                    acc.add(&read(&alpha, u, w));
                }
                layer.psi.apply(&acc.finish())
            })
            .collect();
        alpha = next_alpha;

        gamma = (0..n)
            .map(|v| {
                let mut per_slot: Vec<Option<CompensatedSum>> = (0..k).map(|_| None).collect();
                for &u in &balls[v] {
                    let j = slot[u];
                    let acc = per_slot[j].get_or_insert_with(|| CompensatedSum::new(2 * f + k));
                    let mut x = Vec::with_capacity(2 * f + k);
                    x.extend_from_slice(&beta[u]);
                    x.extend(read(&alpha, v, u));
                    x.extend((0..k).map(|i| if i == j { 1.0 } else { 0.0 }));
                    acc.add(&x);
                }
                let mut total = CompensatedSum::new(f);
                for (j, acc) in per_slot.into_iter().enumerate() {
                    if let Some(acc) = acc {
                        total.add_scaled(&params.w[j].apply(&acc.finish()), params.omega[j]);
                    }
                }
                total.finish()
            })
            .collect();

        if cfg.plugin {
            base = (0..n)
                .map(|v| {
                    let mut acc = CompensatedSum::new(f);
                    acc.add_scaled(&base[v], 1.0 + layer.epsilon);
                    for &u in g.neighbors(v) {
                        acc.add(&base[u]);
                    }
                    layer.gin.apply(&acc.finish())
                })
                .collect();
        }
    }

    let vertices: Vec<Vec<f64>> = if cfg.plugin {
        base.into_iter()
            .zip(gamma)
            .map(|(mut b, c)| {
                b.extend(c);
                b
            })
            .collect()
    } else {
        gamma
    };
    let mut readout = CompensatedSum::new(cfg.vertex_width());
    for h in &vertices {
        readout.add(h);
    }
    let mut graph = readout.finish();
    graph.push(g.connected_components().0 as f64);
    Ok(NeuralOutput { vertices, graph })
}

/// `max |a - b| / max(1, max |a|, max |b|)`.
pub fn relative_deviation(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "vectors differ in length");
    let scale = a
        .iter()
        .chain(b)
        .fold(1.0f64, |m, x| m.max(x.abs()));
    a.iter()
        .zip(b)
        .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
        / scale
}

/// Default tolerance for equivariance and consistency checks.
pub const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Serialize)]
pub struct NeuralCheck {
    pub trials: usize,
    /// Largest deviation between `forward(pi(G))` and `pi` applied to
    /// `forward(G)`, over vertex and graph embeddings.
    pub max_equivariance_deviation: f64,
    /// Largest deviation between embeddings of vertices sharing a discrete
    /// color after the same number of layers.
    pub max_consistency_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Equivariance over `trials` seeded permutations of `g`, plus discrete
/// consistency on `g` itself. `k` is set to the number of partitions of `g`.
pub fn neural_check(
    g: &Graph,
    scheme: SchemeId,
    variant: InteractionVariant,
    config: NeuralConfig,
    trials: usize,
) -> Result<NeuralCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut max_eq = 0.0f64;
    let mut config = config;
    for t in 0..trials.max(1) {
        let pi = Permutation::random(g.vertex_count(), &mut rng);
        let h = g.apply_permutation(&pi)?;
        let (_, colorings) = build_colorings(&[g, &h], scheme);
        if t == 0 {
            let mut present = colorings[0].labels.clone();
            present.sort_unstable();
            present.dedup();
            config.slots = config.slots.max(present.len());
        }
        let params = init_params(config)?;
        let out_g = forward(g, &colorings[0], variant, &params)?;
        let out_h = forward(&h, &colorings[1], variant, &params)?;
        max_eq = max_eq.max(relative_deviation(&out_g.graph, &out_h.graph));
        for v in 0..g.vertex_count() {
            max_eq = max_eq.max(relative_deviation(&out_g.vertices[v], &out_h.vertices[pi.map(v)]));
        }
    }
    let max_cons = consistency_deviation(g, scheme, variant, config)?;
    Ok(NeuralCheck {
        trials: trials.max(1),
        max_equivariance_deviation: max_eq,
        max_consistency_deviation: max_cons,
        tolerance: TOLERANCE,
        passed: max_eq <= TOLERANCE && max_cons <= TOLERANCE,
    })
}

/// Largest deviation between the numeric embeddings of two vertices that the
/// combinatorial refinement colors alike after `config.layers` layers.
pub fn consistency_deviation(
    g: &Graph,
    scheme: SchemeId,
    variant: InteractionVariant,
    config: NeuralConfig,
) -> Result<f64> {
    let config = NeuralConfig {
        plugin: false,
        ..config
    };
    let params = init_params(config)?;
    let (_, colorings) = build_colorings(&[g], scheme);
    let out = forward(g, &colorings[0], variant, &params)?;
    let mut run = GpnnRun::new(&[g], GpnnConfig::new(scheme, variant).with_hops(config.hops))?;
    run.run_layers(config.layers);
    let gamma = &run.graph_run(0).state().gamma;
    let mut worst = 0.0f64;
    let n = g.vertex_count();
    for v in 0..n {
        for u in v + 1..n {
            if gamma[v] == gamma[u] {
                worst = worst.max(relative_deviation(&out.vertices[v], &out.vertices[u]));
            }
        }
    }
    Ok(worst)
}
