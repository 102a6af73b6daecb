use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gpnn_core::coloring::{build_colorings, lambda_equivalent, InteractionVariant};
use gpnn_core::gpnn::{gpnn_compare, GpnnConfig, GpnnRun};
use gpnn_core::io::{parse_edge_list, serialize_edge_list};
use gpnn_core::iso::{are_isomorphic, canonical_form};
use gpnn_core::neural::{forward, init_params, relative_deviation, NeuralConfig, TOLERANCE};
use gpnn_core::partition::{core_decomposition, onion_decomposition, partition, SchemeId};
use gpnn_core::wl::{fwl2_compare, wl1_compare_plain};
use gpnn_core::{Graph, Permutation};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let slots = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), slots).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edge_list(n, &edges).unwrap()
        })
    })
}

fn graph_and_permutation(max_n: usize) -> impl Strategy<Value = (Graph, Permutation)> {
    (graph_strategy(max_n), any::<u64>()).prop_map(|(g, seed)| {
        let pi = Permutation::random(g.vertex_count(), &mut ChaCha8Rng::seed_from_u64(seed));
        (g, pi)
    })
}

fn scheme_strategy() -> impl Strategy<Value = SchemeId> {
    proptest::sample::select(SchemeId::ALL.to_vec())
}

fn variant_strategy() -> impl Strategy<Value = InteractionVariant> {
    proptest::sample::select(InteractionVariant::ALL.to_vec())
}

/// Coreness by definition: the largest k whose k-core contains v.
fn naive_coreness(g: &Graph) -> Vec<u32> {
    let n = g.vertex_count();
    let mut core = vec![0u32; n];
    for k in 1..=n {
        let mut alive = vec![true; n];
        loop {
            let doomed: Vec<usize> = (0..n)
                .filter(|&v| alive[v] && g.neighbors(v).iter().filter(|&&u| alive[u]).count() < k)
                .collect();
            if doomed.is_empty() {
                break;
            }
            for v in doomed {
                alive[v] = false;
            }
        }
        for v in (0..n).filter(|&v| alive[v]) {
            core[v] = k as u32;
        }
    }
    core
}

/// Onion layers by direct simulation: each round removes every vertex whose
/// remaining degree is at most the current core level; layers restart at 1
/// whenever the level rises.
fn naive_onion(g: &Graph) -> Vec<(u32, u32)> {
    let n = g.vertex_count();
    let mut alive = vec![true; n];
    let mut out = vec![(0, 0); n];
    let (mut level, mut layer) = (0usize, 0u32);
    let deg = |alive: &[bool], v: usize| g.neighbors(v).iter().filter(|&&u| alive[u]).count();
    while alive.iter().any(|&a| a) {
        let min = (0..n).filter(|&v| alive[v]).map(|v| deg(&alive, v)).min().unwrap();
        if min > level {
            level = min;
            layer = 0;
        }
        layer += 1;
        let peel: Vec<usize> = (0..n).filter(|&v| alive[v] && deg(&alive, v) <= level).collect();
        for &v in &peel {
            out[v] = (level as u32, layer);
        }
        for v in peel {
            alive[v] = false;
        }
    }
    out
}

fn naive_triangles(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    (0..n)
        .map(|v| {
            let mut t = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if g.has_edge(v, a) && g.has_edge(v, b) && g.has_edge(a, b) {
                        t += 1;
                    }
                }
            }
            t
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decompositions_match_naive_oracles(g in graph_strategy(11)) {
        prop_assert_eq!(core_decomposition(&g), naive_coreness(&g));
        prop_assert_eq!(onion_decomposition(&g), naive_onion(&g));
        prop_assert_eq!(g.triangle_counts(), naive_triangles(&g));
    }

    #[test]
    fn partition_labels_follow_permutations((g, pi) in graph_and_permutation(10), s in scheme_strategy()) {
        let h = g.apply_permutation(&pi).unwrap();
        let (lg, lh) = (partition(&g, s), partition(&h, s));
        for v in 0..g.vertex_count() {
            prop_assert_eq!(lg.labels[v], lh.labels[pi.map(v)]);
        }
        prop_assert!(lambda_equivalent(&g, &h, s));
    }

    #[test]
    fn refinement_tests_ignore_relabeling(
        (g, pi) in graph_and_permutation(9),
        s in scheme_strategy(),
        v in variant_strategy(),
        d in 1usize..=2,
    ) {
        let h = g.apply_permutation(&pi).unwrap();
        prop_assert!(!wl1_compare_plain(&g, &h).is_distinguished());
        prop_assert!(!fwl2_compare(&g, &h, None).unwrap().is_distinguished());
        prop_assert!(!gpnn_compare(&g, &h, GpnnConfig::new(s, v).with_hops(d)).unwrap().is_distinguished());
    }

    #[test]
    fn comparisons_are_symmetric(
        g in graph_strategy(7),
        h in graph_strategy(7),
        s in scheme_strategy(),
        v in variant_strategy(),
    ) {
        let cfg = GpnnConfig::new(s, v);
        let (a, b) = (gpnn_compare(&g, &h, cfg).unwrap(), gpnn_compare(&h, &g, cfg).unwrap());
        prop_assert_eq!(a.outcome, b.outcome);
        prop_assert_eq!(a.iteration, b.iteration);
        prop_assert_eq!(wl1_compare_plain(&g, &h).outcome, wl1_compare_plain(&h, &g).outcome);
        prop_assert_eq!(lambda_equivalent(&g, &h, s), lambda_equivalent(&h, &g, s));
    }

    #[test]
    fn hierarchy_on_random_pairs(g in graph_strategy(7), h in graph_strategy(7), s in scheme_strategy()) {
        let wl = wl1_compare_plain(&g, &h).is_distinguished();
        let fwl = fwl2_compare(&g, &h, None).unwrap().is_distinguished();
        prop_assert!(!wl || fwl, "2-FWL must refine 1-WL");
        let lambda = !lambda_equivalent(&g, &h, s);
        let mut prev = false;
        for v in InteractionVariant::ALL {
            let dist = gpnn_compare(&g, &h, GpnnConfig::new(s, v)).unwrap().is_distinguished();
            prop_assert!(!(wl || lambda) || dist, "lower bound fails for {}/{}", s, v);
            prop_assert!(!prev || dist, "variant monotonicity fails at {}", v);
            prev = dist;
        }
        if are_isomorphic(&g, &h).0 {
            prop_assert!(!prev);
        }
    }

    #[test]
    fn gamma_classes_never_merge(g in graph_strategy(9), s in scheme_strategy(), v in variant_strategy()) {
        let mut run = GpnnRun::new(&[&g], GpnnConfig::new(s, v)).unwrap();
        let classes = |run: &GpnnRun| run.graph_run(0).state().gamma.iter().collect::<BTreeSet<_>>().len();
        let mut prev_partition = run.graph_run(0).state().gamma.clone();
        let mut prev = classes(&run);
        for _ in 0..g.vertex_count() + 1 {
            run.step();
            let now = classes(&run);
            prop_assert!(now >= prev);
            let gamma = &run.graph_run(0).state().gamma;
            for a in 0..g.vertex_count() {
                for b in 0..g.vertex_count() {
                    if prev_partition[a] != prev_partition[b] {
                        prop_assert_ne!(gamma[a], gamma[b]);
                    }
                }
            }
            prev_partition = gamma.clone();
            prev = now;
        }
    }

    #[test]
    fn isomorphism_and_canonical_forms((g, pi) in graph_and_permutation(9), h in graph_strategy(7)) {
        let gp = g.apply_permutation(&pi).unwrap();
        let (iso, witness) = are_isomorphic(&g, &gp);
        prop_assert!(iso);
        prop_assert!(g.apply_permutation(&witness.unwrap()).unwrap().same_edge_set(&gp));
        prop_assert_eq!(canonical_form(&g), canonical_form(&gp));
        prop_assert_eq!(are_isomorphic(&g, &h).0, canonical_form(&g) == canonical_form(&h));
    }

    #[test]
    fn edge_lists_round_trip(g in graph_strategy(12)) {
        let back = parse_edge_list(&serialize_edge_list(&g)).unwrap();
        prop_assert_eq!(back.vertex_count(), g.vertex_count());
        prop_assert!(back.same_edge_set(&g));
    }

    #[test]
    fn neural_outputs_are_equivariant(
        (g, pi) in graph_and_permutation(9),
        s in scheme_strategy(),
        v in variant_strategy(),
        seed in any::<u64>(),
    ) {
        let h = g.apply_permutation(&pi).unwrap();
        let (_, cols) = build_colorings(&[&g, &h], s);
        let slots = partition(&g, s).partition_count();
        let params = init_params(NeuralConfig::new(4, 2, slots).with_seed(seed)).unwrap();
        let (a, b) = (forward(&g, &cols[0], v, &params).unwrap(), forward(&h, &cols[1], v, &params).unwrap());
        prop_assert!(relative_deviation(&a.graph, &b.graph) <= TOLERANCE);
        for u in 0..g.vertex_count() {
            prop_assert!(relative_deviation(&a.vertices[u], &b.vertices[pi.map(u)]) <= TOLERANCE);
        }
        prop_assert_eq!(init_params(NeuralConfig::new(4, 2, slots).with_seed(seed)).unwrap(), params);
    }
}
