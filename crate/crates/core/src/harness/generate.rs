//! Deterministic graph generators for fixtures and random corpora.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum GraphKind {
    Cycle { n: usize },
    /// `k` disjoint copies of the cycle on `n` vertices.
    DisjointCycles { n: usize, k: usize },
    Complete { n: usize },
    Path { n: usize },
    Gnp { n: usize, p: f64 },
    RandomRegular { n: usize, d: usize },
    Shrikhande,
    Rook4x4,
}

impl GraphKind {
    /// Parses a generator name and its positional parameters, e.g.
    /// `("gnp", ["10", "0.3"])`.
    pub fn parse(kind: &str, params: &[String]) -> Result<Self> {
        let want = |count: usize| -> Result<()> {
            if params.len() != count {
                return Err(Error::InvalidParameter(format!(
                    "`{kind}` takes {count} parameter(s), got {}",
                    params.len()
                )));
            }
            Ok(())
        };
        let int = |i: usize| -> Result<usize> {
            params[i]
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("`{}` is not a vertex count", params[i])))
        };
        Ok(match kind {
            "cycle" => {
                want(1)?;
                GraphKind::Cycle { n: int(0)? }
            }
            "disjoint-cycles" | "disjoint_cycles" => {
                want(2)?;
                GraphKind::DisjointCycles { n: int(0)?, k: int(1)? }
            }
            "complete" => {
                want(1)?;
                GraphKind::Complete { n: int(0)? }
            }
            "path" => {
                want(1)?;
                GraphKind::Path { n: int(0)? }
            }
            "gnp" => {
                want(2)?;
                let p = params[1]
                    .parse()
                    .map_err(|_| Error::InvalidParameter(format!("`{}` is not a probability", params[1])))?;
                GraphKind::Gnp { n: int(0)?, p }
            }
            "random-regular" | "random_regular" => {
                want(2)?;
                GraphKind::RandomRegular { n: int(0)?, d: int(1)? }
            }
            "shrikhande" => {
                want(0)?;
                GraphKind::Shrikhande
            }
            "rook4x4" => {
                want(0)?;
                GraphKind::Rook4x4
            }
            other => return Err(Error::InvalidParameter(format!("unknown generator `{other}`"))),
        })
    }
}

pub fn generate(kind: &GraphKind, seed: u64) -> Result<Graph> {
    match *kind {
        GraphKind::Cycle { n } => {
            if n < 3 {
                return Err(Error::InvalidParameter("a cycle needs at least 3 vertices".into()));
            }
            Graph::from_edge_list(n, &cycle_edges(n, 0))
        }
        GraphKind::DisjointCycles { n, k } => {
            if n < 3 {
                return Err(Error::InvalidParameter("a cycle needs at least 3 vertices".into()));
            }
            let edges: Vec<_> = (0..k).flat_map(|i| cycle_edges(n, i * n)).collect();
            Graph::from_edge_list(n * k, &edges)
        }
        GraphKind::Complete { n } => {
            let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
            for i in 0..n {
                for j in i + 1..n {
                    edges.push((i, j));
                }
            }
            Graph::from_edge_list(n, &edges)
        }
        GraphKind::Path { n } => {
            let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            Graph::from_edge_list(n, &edges)
        }
        GraphKind::Gnp { n, p } => gnp(n, p, seed),
        GraphKind::RandomRegular { n, d } => random_regular(n, d, seed),
        GraphKind::Shrikhande => Ok(shrikhande()),
        GraphKind::Rook4x4 => Ok(rook4x4()),
    }
}

fn cycle_edges(n: usize, offset: usize) -> Vec<(usize, usize)> {
    (0..n).map(|i| (offset + i, offset + (i + 1) % n)).collect()
}

/// G(n, p) by geometric skipping over the lower triangle, so the cost is
/// proportional to the number of edges produced.
fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("probability {p} outside [0, 1]")));
    }
    let mut edges = Vec::new();
    if p >= 1.0 {
        return generate(&GraphKind::Complete { n }, seed);
    }
    if p > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let log_q = (1.0 - p).ln();
        let mut v: usize = 1;
        let mut w: i64 = -1;
        while v < n {
            let r: f64 = rng.gen();
            w += 1 + ((1.0 - r).ln() / log_q).floor() as i64;
            while w >= v as i64 && v < n {
                w -= v as i64;
                v += 1;
            }
            if v < n {
                edges.push((v, w as usize));
            }
        }
    }
    Graph::from_edge_list(n, &edges)
}

/// Uniform-ish random `d`-regular graph by point pairing, restarting when a
/// pairing gets stuck on loops or repeated edges.
fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if (n * d) % 2 == 1 {
        return Err(Error::InvalidParameter(format!("n*d = {} is odd", n * d)));
    }
    if d >= n && !(n == 0 || d == 0) {
        return Err(Error::InvalidParameter(format!("degree {d} needs more than {n} vertices")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'restart: for _ in 0..10_000 {
        let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat(v).take(d)).collect();
        let mut seen: HashSet<(usize, usize)> = HashSet::new();
        let mut edges = Vec::with_capacity(n * d / 2);
        while !points.is_empty() {
            let mut placed = false;
            for _ in 0..200 {
                let i = rng.gen_range(0..points.len());
                let j = rng.gen_range(0..points.len());
                let (u, v) = (points[i], points[j]);
                if i == j || u == v || seen.contains(&(u.min(v), u.max(v))) {
                    continue;
                }
                seen.insert((u.min(v), u.max(v)));
                edges.push((u, v));
                let (hi, lo) = (i.max(j), i.min(j));
                points.swap_remove(hi);
                points.swap_remove(lo);
                placed = true;
                break;
            }
            if !placed {
                continue 'restart;
            }
        }
        return Graph::from_edge_list(n, &edges);
    }
    Err(Error::InvalidParameter(format!("could not sample a {d}-regular graph on {n} vertices")))
}

/// Cayley graph on Z4 x Z4 with connection set {±(1,0), ±(0,1), ±(1,1)}.
pub fn shrikhande() -> Graph {
    let id = |a: usize, b: usize| 4 * (a % 4) + (b % 4);
    let mut edges = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for (da, db) in [(1, 0), (0, 1), (1, 1)] {
                edges.push((id(a, b), id(a + da, b + db)));
            }
        }
    }
    Graph::from_edge_list(16, &edges).expect("fixed edge list is valid")
}

/// The 4x4 rook's graph: cells adjacent when they share a row or column.
pub fn rook4x4() -> Graph {
    let mut edges = Vec::new();
    for x in 0..16 {
        for y in x + 1..16 {
            if x / 4 == y / 4 || x % 4 == y % 4 {
                edges.push((x, y));
            }
        }
    }
    Graph::from_edge_list(16, &edges).expect("fixed edge list is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force strongly-regular parameter check: `Some((k, lambda, mu))`.
    fn srg_parameters(g: &Graph) -> Option<(usize, usize, usize)> {
        let n = g.vertex_count();
        let k = g.degree(0);
        let (mut lambda, mut mu) = (None, None);
        for u in 0..n {
            if g.degree(u) != k {
                return None;
            }
            for v in u + 1..n {
                let common = (0..n).filter(|&w| g.has_edge(u, w) && g.has_edge(v, w)).count();
                let slot = if g.has_edge(u, v) { &mut lambda } else { &mut mu };
                match *slot {
                    None => *slot = Some(common),
                    Some(c) if c != common => return None,
                    _ => {}
                }
            }
        }
        Some((k, lambda?, mu?))
    }

    #[test]
    fn fixed_families() {
        let c6 = generate(&GraphKind::Cycle { n: 6 }, 0).unwrap();
        assert_eq!(c6.edge_count(), 6);
        assert!(c6.degrees().iter().all(|&d| d == 2));
        let tt = generate(&GraphKind::DisjointCycles { n: 3, k: 2 }, 0).unwrap();
        assert_eq!((tt.vertex_count(), tt.edge_count(), tt.connected_components().0), (6, 6, 2));
        assert_eq!(generate(&GraphKind::Complete { n: 5 }, 0).unwrap().edge_count(), 10);
        assert_eq!(generate(&GraphKind::Path { n: 1 }, 0).unwrap().edge_count(), 0);
        assert!(generate(&GraphKind::Cycle { n: 2 }, 0).is_err());
    }

    #[test]
    fn strongly_regular_pair() {
        let rook = rook4x4();
        assert_eq!((rook.vertex_count(), rook.edge_count()), (16, 48));
        assert_eq!(srg_parameters(&rook), Some((6, 2, 2)));
        let sh = shrikhande();
        assert_eq!((sh.vertex_count(), sh.edge_count()), (16, 48));
        assert_eq!(srg_parameters(&sh), Some((6, 2, 2)));
    }

    #[test]
    fn random_generators_are_deterministic() {
        let a = generate(&GraphKind::Gnp { n: 10, p: 0.3 }, 7).unwrap();
        let b = generate(&GraphKind::Gnp { n: 10, p: 0.3 }, 7).unwrap();
        assert_eq!(a, b);
        let r = generate(&GraphKind::RandomRegular { n: 12, d: 3 }, 5).unwrap();
        assert!(r.degrees().iter().all(|&d| d == 3));
        assert_eq!(r, generate(&GraphKind::RandomRegular { n: 12, d: 3 }, 5).unwrap());
        assert!(generate(&GraphKind::RandomRegular { n: 5, d: 3 }, 0).is_err());
        assert!(generate(&GraphKind::Gnp { n: 5, p: 1.5 }, 0).is_err());
    }

    #[test]
    fn gnp_edge_density() {
        let g = generate(&GraphKind::Gnp { n: 400, p: 0.1 }, 11).unwrap();
        let expected = 0.1 * 400.0 * 399.0 / 2.0;
        let got = g.edge_count() as f64;
        // five standard deviations
        assert!((got - expected).abs() < 5.0 * (expected * 0.9).sqrt(), "{got} vs {expected}");
        assert_eq!(generate(&GraphKind::Gnp { n: 6, p: 1.0 }, 0).unwrap().edge_count(), 15);
        assert_eq!(generate(&GraphKind::Gnp { n: 6, p: 0.0 }, 0).unwrap().edge_count(), 0);
    }

    #[test]
    fn parses_kinds() {
        let p = |k: &str, xs: &[&str]| GraphKind::parse(k, &xs.iter().map(|s| s.to_string()).collect::<Vec<_>>());
        assert_eq!(p("cycle", &["6"]).unwrap(), GraphKind::Cycle { n: 6 });
        assert_eq!(p("gnp", &["10", "0.5"]).unwrap(), GraphKind::Gnp { n: 10, p: 0.5 });
        assert_eq!(p("rook4x4", &[]).unwrap(), GraphKind::Rook4x4);
        assert!(p("cycle", &[]).is_err());
        assert!(p("hypercube", &["3"]).is_err());
    }
}
