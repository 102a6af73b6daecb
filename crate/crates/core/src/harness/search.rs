//! Exhaustive searches for separating pairs over the small-graph corpus.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::coloring::lambda_equivalent;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::harness::enumerate::enumerate_all;
use crate::harness::suite::cheap_invariants_match;
use crate::iso::{partition_profile, PartitionProfile};
use crate::partition::SchemeId;
use crate::wl::{fwl2_compare, wl1_compare_plain};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "predicate", content = "scheme")]
pub enum CounterexamplePredicate {
    /// Partition-isomorphic but not interaction-isomorphic.
    PiNotIi(SchemeId),
    /// Interaction-isomorphic but not isomorphic.
    IiNotGi(SchemeId),
    /// Equal under 1-WL, different triangle-count labelings.
    WlEqTriangleDistinct,
    /// Equal under 1-WL, separated by 2-FWL.
    WlEqFwl2Distinct,
}

impl fmt::Display for CounterexamplePredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::PiNotIi(s) => write!(f, "pi-not-ii:{s}"),
            Self::IiNotGi(s) => write!(f, "ii-not-gi:{s}"),
            Self::WlEqTriangleDistinct => f.write_str("wl-eq-triangle-distinct"),
            Self::WlEqFwl2Distinct => f.write_str("wl-eq-fwl2-distinct"),
        }
    }
}

impl FromStr for CounterexamplePredicate {
    type Err = Error;

    /// Accepts `pi-not-ii:<scheme>`, `ii-not-gi:<scheme>`,
    /// `wl-eq-triangle-distinct` and `wl-eq-fwl2-distinct`.
    fn from_str(s: &str) -> Result<Self> {
        let (head, scheme) = match s.split_once(':') {
            Some((h, t)) => (h, Some(t.parse::<SchemeId>()?)),
            None => (s, None),
        };
        match (head, scheme) {
            ("pi-not-ii", Some(sc)) => Ok(Self::PiNotIi(sc)),
            ("ii-not-gi", Some(sc)) => Ok(Self::IiNotGi(sc)),
            ("wl-eq-triangle-distinct", None) => Ok(Self::WlEqTriangleDistinct),
            ("wl-eq-fwl2-distinct", None) => Ok(Self::WlEqFwl2Distinct),
            _ => Err(Error::InvalidParameter(format!("unknown predicate `{s}`"))),
        }
    }
}

/// A matching pair of corpus graphs, both on `n` vertices. `i` and `j` are
/// positions in `enumerate_all(n)`.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub g1: Graph,
    pub g2: Graph,
}

/// All matches over pairs of distinct classes with at most `n_max` vertices,
/// ordered by `(n, i, j)` and truncated to `cap`.
pub fn search_counterexamples(
    predicate: CounterexamplePredicate,
    n_max: usize,
    cap: usize,
) -> Result<Vec<Counterexample>> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        if out.len() >= cap {
            break;
        }
        let graphs = enumerate_all(n)?;
        let profiles: Option<Vec<PartitionProfile>> = match predicate {
            CounterexamplePredicate::PiNotIi(s) | CounterexamplePredicate::IiNotGi(s) => {
                Some(graphs.par_iter().map(|g| partition_profile(g, s)).collect())
            }
            _ => None,
        };
        let matches = |i: usize, j: usize| -> bool {
            let (g, h) = (&graphs[i], &graphs[j]);
            match predicate {
                CounterexamplePredicate::PiNotIi(_) | CounterexamplePredicate::IiNotGi(_) => {
                    let p = profiles.as_ref().expect("computed above");
                    let pi = p[i].parts == p[j].parts;
                    let ii = pi && p[i].boundary == p[j].boundary;
                    if matches!(predicate, CounterexamplePredicate::PiNotIi(_)) {
                        pi && !ii
                    } else {
                        ii
                    }
                }
                CounterexamplePredicate::WlEqTriangleDistinct => {
                    cheap_invariants_match(g, h)
                        && !wl1_compare_plain(g, h).is_distinguished()
                        && !lambda_equivalent(g, h, SchemeId::Triangle)
                }
                CounterexamplePredicate::WlEqFwl2Distinct => {
                    cheap_invariants_match(g, h)
                        && !wl1_compare_plain(g, h).is_distinguished()
                        && fwl2_compare(g, h, None).map(|v| v.is_distinguished()).unwrap_or(false)
                }
            }
        };
        let found: Vec<(usize, usize)> = (0..graphs.len())
            .into_par_iter()
            .flat_map_iter(|i| {
                let matches = &matches;
                (i + 1..graphs.len()).filter(move |&j| matches(i, j)).map(move |j| (i, j))
            })
            .collect();
        for (i, j) in found.into_iter().take(cap - out.len()) {
            out.push(Counterexample {
                n,
                i,
                j,
                g1: graphs[i].clone(),
                g2: graphs[j].clone(),
            });
        }
    }
    Ok(out)
}
