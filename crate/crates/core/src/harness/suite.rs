//! Pair suites and the hierarchy report.
//!
//! [`run_suite`] evaluates 1-WL, 2-FWL, lambda-equivalence and every
//! requested GPNN configuration on each pair, then checks the expected
//! relations between the verdicts:
//!
//! * `trivial-star-equals-1wl`: trivial-coloring GPNN with star interactions
//!   agrees with 1-WL;
//! * `variant-monotonicity`: star-distinguished implies diamond-distinguished
//!   implies dagger-distinguished, per scheme;
//! * `scheme-monotonicity`: a pair distinguished under a coarser coloring is
//!   distinguished under any refinement of it, per variant;
//! * `trivial-dagger-below-2fwl`: trivial dagger never separates a pair that
//!   2-FWL leaves equivalent;
//! * `lower-bound`: a pair separated by 1-WL or by the partition coloring
//!   itself is separated by every GPNN variant using that coloring.
//!
//! The first and fourth hold for one-hop neighborhoods and are only checked
//! when `hops == 1`.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::coloring::{lambda_equivalent, InteractionVariant};
use crate::error::{Error, Result};
use crate::gpnn::{gpnn_compare, GpnnConfig};
use crate::graph::{Graph, Permutation};
use crate::harness::enumerate::corpus;
use crate::harness::generate::{generate, rook4x4, shrikhande, GraphKind};
use crate::partition::SchemeId;
use crate::wl::{fwl2_compare, wl1_compare_plain, Outcome};

/// Largest graph order for which 2-FWL is evaluated.
pub const FWL2_MAX_ORDER: usize = 16;

#[derive(Debug, Clone)]
pub struct NamedPair {
    pub name: String,
    pub g1: Graph,
    pub g2: Graph,
    pub note: String,
}

#[derive(Debug, Clone, Default)]
pub struct PairSuite {
    pairs: Vec<NamedPair>,
}

impl PairSuite {
    pub fn new(pairs: Vec<NamedPair>) -> Result<Self> {
        let mut names = HashSet::new();
        for p in &pairs {
            if !names.insert(p.name.as_str()) {
                return Err(Error::Suite(format!("duplicate pair name `{}`", p.name)));
            }
        }
        Ok(PairSuite { pairs })
    }

    pub fn pairs(&self) -> &[NamedPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Concatenation; fails on a name clash.
    pub fn merged(self, other: PairSuite) -> Result<Self> {
        let mut pairs = self.pairs;
        pairs.extend(other.pairs);
        PairSuite::new(pairs)
    }
}

fn pair(name: &str, g1: Graph, g2: Graph, note: &str) -> NamedPair {
    NamedPair {
        name: name.to_string(),
        g1,
        g2,
        note: note.to_string(),
    }
}

/// Classic hard pairs.
pub fn named_pairs() -> PairSuite {
    let gen = |k: GraphKind| generate(&k, 0).expect("fixed generator parameters");
    let k33 = Graph::from_edge_list(
        6,
        &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
    )
    .expect("valid");
    let prism = Graph::from_edge_list(
        6,
        &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
    )
    .expect("valid");
    let decalin = Graph::from_edge_list(
        10,
        &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (5, 6), (6, 7), (7, 8), (8, 9), (9, 0)],
    )
    .expect("valid");
    let bicyclopentyl = Graph::from_edge_list(
        10,
        &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 6), (6, 7), (7, 8), (8, 9), (9, 5), (0, 5)],
    )
    .expect("valid");
    let rook = rook4x4();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let rook_shuffled = rook
        .apply_permutation(&Permutation::random(16, &mut rng))
        .expect("length matches");
    PairSuite::new(vec![
        pair(
            "c6-vs-2c3",
            gen(GraphKind::Cycle { n: 6 }),
            gen(GraphKind::DisjointCycles { n: 3, k: 2 }),
            "2-regular on 6 vertices; equal under 1-WL",
        ),
        pair(
            "c8-vs-2c4",
            gen(GraphKind::Cycle { n: 8 }),
            gen(GraphKind::DisjointCycles { n: 4, k: 2 }),
            "2-regular, triangle-free",
        ),
        pair(
            "c9-vs-3c3",
            gen(GraphKind::Cycle { n: 9 }),
            gen(GraphKind::DisjointCycles { n: 3, k: 3 }),
            "2-regular on 9 vertices",
        ),
        pair("k33-vs-prism", k33, prism, "3-regular on 6 vertices"),
        pair(
            "decalin-vs-bicyclopentyl",
            decalin,
            bicyclopentyl,
            "equal under 1-WL, not regular",
        ),
        pair(
            "shrikhande-vs-rook4x4",
            shrikhande(),
            rook4x4(),
            "srg(16,6,2,2); equal under 2-FWL",
        ),
        pair("rook4x4-vs-relabeled", rook, rook_shuffled, "isomorphic"),
    ])
    .expect("names are unique")
}

/// `count` pairs of random regular graphs with matching parameters.
pub fn random_regular_pairs(count: usize, seed: u64) -> PairSuite {
    const SHAPES: [(usize, usize); 6] = [(8, 3), (10, 3), (12, 3), (10, 4), (12, 4), (14, 3)];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = (0..count)
        .map(|i| {
            let (n, d) = SHAPES[i % SHAPES.len()];
            let kind = GraphKind::RandomRegular { n, d };
            let g1 = generate(&kind, rng.gen()).expect("feasible shape");
            let g2 = generate(&kind, rng.gen()).expect("feasible shape");
            pair(&format!("rr-{i:04}-n{n}-d{d}"), g1, g2, "random regular")
        })
        .collect();
    PairSuite::new(pairs).expect("names are unique")
}

/// `count` pairs `(G, pi(G))` with `G` drawn from G(n, p).
pub fn permuted_pairs(count: usize, seed: u64) -> PairSuite {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = (0..count)
        .map(|i| {
            let n = rng.gen_range(4..=12);
            let p = rng.gen_range(0.15..0.6);
            let g = generate(&GraphKind::Gnp { n, p }, rng.gen()).expect("valid probability");
            let pi = Permutation::random(n, &mut rng);
            let h = g.apply_permutation(&pi).expect("length matches");
            pair(&format!("perm-{i:04}-n{n}"), g, h, "isomorphic by construction")
        })
        .collect();
    PairSuite::new(pairs).expect("names are unique")
}

/// Same vertex count, edge count and degree sequence.
pub fn cheap_invariants_match(g: &Graph, h: &Graph) -> bool {
    g.vertex_count() == h.vertex_count()
        && g.edge_count() == h.edge_count()
        && g.degree_sequence() == h.degree_sequence()
}

/// Pairs of distinct isomorphism classes with equal order and `1..=n_max`
/// vertices that pass `keep`. Names are `n{n}-{i}-{j}` with enumeration
/// indices.
pub fn corpus_pairs<F>(n_max: usize, keep: F) -> Result<PairSuite>
where
    F: Fn(&Graph, &Graph) -> bool + Sync,
{
    let mut pairs = Vec::new();
    for (level, graphs) in corpus(n_max)?.into_iter().enumerate() {
        let n = level + 1;
        let found: Vec<NamedPair> = (0..graphs.len())
            .into_par_iter()
            .flat_map_iter(|i| {
                let graphs = &graphs;
                let keep = &keep;
                (i + 1..graphs.len()).filter_map(move |j| {
                    keep(&graphs[i], &graphs[j]).then(|| {
                        pair(&format!("n{n}-{i}-{j}"), graphs[i].clone(), graphs[j].clone(), "")
                    })
                })
            })
            .collect();
        pairs.extend(found);
    }
    PairSuite::new(pairs)
}

/// Corpus pairs that 1-WL cannot separate.
pub fn wl_equivalent_corpus_pairs(n_max: usize) -> Result<PairSuite> {
    corpus_pairs(n_max, |g, h| {
        cheap_invariants_match(g, h) && !wl1_compare_plain(g, h).is_distinguished()
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct GpnnCell {
    pub scheme: SchemeId,
    pub variant: InteractionVariant,
    pub outcome: Outcome,
    pub iteration: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SchemeEquivalence {
    pub scheme: SchemeId,
    pub equivalent: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairRow {
    pub name: String,
    pub n: usize,
    pub wl1: Outcome,
    /// Absent when either graph exceeds [`FWL2_MAX_ORDER`] vertices.
    pub fwl2: Option<Outcome>,
    pub lambda: Vec<SchemeEquivalence>,
    pub gpnn: Vec<GpnnCell>,
}

impl PairRow {
    pub fn gpnn(&self, scheme: SchemeId, variant: InteractionVariant) -> Option<&GpnnCell> {
        self.gpnn
            .iter()
            .find(|c| c.scheme == scheme && c.variant == variant)
    }

    fn distinguished(&self, scheme: SchemeId, variant: InteractionVariant) -> Option<bool> {
        self.gpnn(scheme, variant)
            .map(|c| c.outcome == Outcome::Distinguished)
    }

    fn lambda_equivalent(&self, scheme: SchemeId) -> Option<bool> {
        self.lambda
            .iter()
            .find(|e| e.scheme == scheme)
            .map(|e| e.equivalent)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub check: String,
    pub pair: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct HierarchyReport {
    pub hops: usize,
    pub schemes: Vec<SchemeId>,
    pub variants: Vec<InteractionVariant>,
    pub rows: Vec<PairRow>,
    pub violations: Vec<Violation>,
}

/// Refinement relations checked by `scheme-monotonicity`: `(finer, coarser)`.
fn refinements(schemes: &[SchemeId]) -> Vec<(SchemeId, SchemeId)> {
    let mut out = Vec::new();
    for &s in schemes {
        if s != SchemeId::Trivial {
            out.push((s, SchemeId::Trivial));
        }
    }
    for fine in [SchemeId::CoreDegree, SchemeId::CoreOnion] {
        if schemes.contains(&fine) && schemes.contains(&SchemeId::Core) {
            out.push((fine, SchemeId::Core));
        }
    }
    out
}

/// Evaluates every pair and collects violations. The trivial scheme is
/// always included. Rows come back sorted by pair name.
pub fn run_suite(
    suite: &PairSuite,
    schemes: &[SchemeId],
    variants: &[InteractionVariant],
    hops: usize,
) -> Result<HierarchyReport> {
    if hops == 0 {
        return Err(Error::InvalidRadius);
    }
    let mut schemes: Vec<SchemeId> = std::iter::once(SchemeId::Trivial)
        .chain(schemes.iter().copied())
        .collect();
    schemes.sort();
    schemes.dedup();
    let mut variants = variants.to_vec();
    variants.sort();
    variants.dedup();

    let mut rows: Vec<PairRow> = suite
        .pairs()
        .par_iter()
        .map(|p| evaluate_pair(p, &schemes, &variants, hops))
        .collect::<Result<_>>()?;
    rows.sort_by(|a, b| a.name.cmp(&b.name));

    let violations = rows
        .iter()
        .flat_map(|row| check_row(row, &schemes, &variants, hops))
        .collect();
    Ok(HierarchyReport {
        hops,
        schemes,
        variants,
        rows,
        violations,
    })
}

fn evaluate_pair(
    p: &NamedPair,
    schemes: &[SchemeId],
    variants: &[InteractionVariant],
    hops: usize,
) -> Result<PairRow> {
    let (g, h) = (&p.g1, &p.g2);
    let wl1 = wl1_compare_plain(g, h).outcome;
    let fwl2 = if g.vertex_count().max(h.vertex_count()) <= FWL2_MAX_ORDER {
        Some(fwl2_compare(g, h, None)?.outcome)
    } else {
        None
    };
    let lambda = schemes
        .iter()
        .map(|&scheme| SchemeEquivalence {
            scheme,
            equivalent: lambda_equivalent(g, h, scheme),
        })
        .collect();
    let mut gpnn = Vec::with_capacity(schemes.len() * variants.len());
    for &scheme in schemes {
        for &variant in variants {
            let verdict = gpnn_compare(g, h, GpnnConfig::new(scheme, variant).with_hops(hops))?;
            gpnn.push(GpnnCell {
                scheme,
                variant,
                outcome: verdict.outcome,
                iteration: verdict.iteration,
            });
        }
    }
    Ok(PairRow {
        name: p.name.clone(),
        n: g.vertex_count(),
        wl1,
        fwl2,
        lambda,
        gpnn,
    })
}

fn check_row(
    row: &PairRow,
    schemes: &[SchemeId],
    variants: &[InteractionVariant],
    hops: usize,
) -> Vec<Violation> {
    use InteractionVariant::{Dagger, Diamond, Star};
    let mut out = Vec::new();
    let mut flag = |check: &str, detail: String| {
        out.push(Violation {
            check: check.to_string(),
            pair: row.name.clone(),
            detail,
        })
    };
    let wl1_dist = row.wl1 == Outcome::Distinguished;

    if hops == 1 {
        if let Some(star) = row.distinguished(SchemeId::Trivial, Star) {
            if star != wl1_dist {
                flag(
                    "trivial-star-equals-1wl",
                    format!("1-WL distinguished={wl1_dist}, trivial/star distinguished={star}"),
                );
            }
        }
        if let (Some(Outcome::Equivalent), Some(true)) =
            (row.fwl2, row.distinguished(SchemeId::Trivial, Dagger))
        {
            flag(
                "trivial-dagger-below-2fwl",
                "trivial/dagger distinguishes a 2-FWL-equivalent pair".into(),
            );
        }
    }

    for &scheme in schemes {
        let chain: Vec<(InteractionVariant, bool)> = [Star, Diamond, Dagger]
            .into_iter()
            .filter_map(|v| row.distinguished(scheme, v).map(|d| (v, d)))
            .collect();
        for w in chain.windows(2) {
            if w[0].1 && !w[1].1 {
                flag(
                    "variant-monotonicity",
                    format!("{scheme}: {} distinguishes but {} does not", w[0].0, w[1].0),
                );
            }
        }
    }

    for (fine, coarse) in refinements(schemes) {
        for &variant in variants {
            if let (Some(true), Some(false)) = (
                row.distinguished(coarse, variant),
                row.distinguished(fine, variant),
            ) {
                flag(
                    "scheme-monotonicity",
                    format!("{variant}: {coarse} distinguishes but {fine} does not"),
                );
            }
        }
    }

    for &scheme in schemes {
        let lambda_dist = row.lambda_equivalent(scheme) == Some(false);
        if !(wl1_dist || lambda_dist) {
            continue;
        }
        for &variant in variants {
            if row.distinguished(scheme, variant) == Some(false) {
                flag(
                    "lower-bound",
                    format!(
                        "{scheme}/{variant} misses a pair separated by {}",
                        if wl1_dist { "1-WL" } else { "the partition coloring" }
                    ),
                );
            }
        }
    }
    out
}
