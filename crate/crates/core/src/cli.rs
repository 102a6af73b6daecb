//! The `gpnn` command line.
//!
//! Exit codes: 0 on success, 1 on usage, parse or input errors, 2 when a
//! suite run reports hierarchy violations or a neural check fails.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::coloring::{build_colorings, InteractionVariant};
use crate::error::{Error, Result};
use crate::gpnn::{gpnn_compare, interaction_cost, GpnnConfig};
use crate::graph::Graph;
use crate::harness::generate::{generate, GraphKind};
use crate::harness::suite::{run_suite, HierarchyReport};
use crate::io::{parse_edge_list, parse_suite, serialize_edge_list, to_json, GraphJson};
use crate::iso::{are_isomorphic, interaction_isomorphic, partition_isomorphic};
use crate::neural::{neural_check, NeuralConfig};
use crate::partition::{partition, partition_stats, SchemeId};
use crate::wl::{fwl2_compare, wl1_compare_plain, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATIONS: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "gpnn", version, about = "Partition-aware refinement and expressivity checks")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TestKind {
    #[value(name = "1wl")]
    Wl1,
    #[value(name = "2fwl")]
    Fwl2,
    Gpnn,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Per-vertex partition labels.
    Partition {
        file: PathBuf,
        #[arg(long)]
        scheme: SchemeId,
    },
    /// Partition statistics.
    Stats {
        file: PathBuf,
        #[arg(long)]
        scheme: SchemeId,
    },
    /// Vertex colors and interaction costs.
    Color {
        file: PathBuf,
        #[arg(long)]
        scheme: SchemeId,
        #[arg(long)]
        variant: Option<InteractionVariant>,
        #[arg(long, default_value_t = 1)]
        d: usize,
    },
    /// Pairwise distinguishability test.
    Compare {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long, value_enum)]
        test: TestKind,
        #[arg(long, default_value = "trivial")]
        scheme: SchemeId,
        #[arg(long, default_value = "star")]
        variant: InteractionVariant,
        #[arg(long, default_value_t = 1)]
        d: usize,
    },
    /// Graph, partition and interaction isomorphism.
    Iso {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long)]
        scheme: SchemeId,
    },
    /// Run a suite file and check the hierarchy.
    Suite {
        file: PathBuf,
        /// Print every pair's verdicts, not only the summary.
        #[arg(long)]
        all: bool,
        #[arg(long, value_delimiter = ',')]
        schemes: Option<Vec<SchemeId>>,
        #[arg(long, value_delimiter = ',')]
        variants: Option<Vec<InteractionVariant>>,
        #[arg(long, default_value_t = 1)]
        d: usize,
    },
    /// Generate a graph as an edge list.
    Gen {
        kind: String,
        params: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Numeric equivariance and discrete-consistency check.
    NeuralCheck {
        file: PathBuf,
        #[arg(long)]
        scheme: SchemeId,
        #[arg(long)]
        variant: InteractionVariant,
        #[arg(long, default_value_t = 8)]
        f: usize,
        #[arg(long, default_value_t = 2)]
        layers: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        /// Concatenate the built-in base GNN embedding.
        #[arg(long)]
        plugin: bool,
    },
}

/// What a command produced: text for standard output and an exit code.
struct Output {
    text: String,
    code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: EXIT_OK }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                EXIT_USAGE
            } else {
                let _ = write!(out, "{}", e.render());
                EXIT_OK
            };
            return code;
        }
    };
    match dispatch(cli) {
        Ok(o) => {
            let _ = out.write_all(o.text.as_bytes());
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidParameter(format!("{}: {e}", path.display())))?;
    parse_edge_list(&text).map_err(|e| Error::InvalidParameter(format!("{}: {e}", path.display())))
}

fn thread_cap() -> Result<Option<usize>> {
    match std::env::var("GPNN_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Error::InvalidParameter(format!(
                "GPNN_THREADS must be a positive integer, got `{v}`"
            ))),
        },
    }
}

#[derive(Serialize)]
struct CompareReport {
    #[serde(flatten)]
    verdict: Verdict,
    test: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    config: Option<GpnnConfig>,
}

#[derive(Serialize)]
struct IsoReport {
    gi: bool,
    pi: bool,
    ii: bool,
}

#[derive(Serialize)]
struct VertexColor {
    vertex: usize,
    index: crate::partition::PartitionIndex,
    color: u32,
}

#[derive(Serialize)]
struct Cost {
    variant: InteractionVariant,
    tracked: usize,
    q: usize,
}

#[derive(Serialize)]
struct ColorReport {
    scheme: SchemeId,
    hops: usize,
    vertices: Vec<VertexColor>,
    costs: Vec<Cost>,
}

fn dispatch(cli: Cli) -> Result<Output> {
    let json = cli.json;
    match cli.command {
        Command::Partition { file, scheme } => {
            let g = read_graph(&file)?;
            let labeling = partition(&g, scheme);
            if json {
                return Ok(Output::ok(to_json(&labeling)));
            }
            let mut s = String::new();
            for (v, l) in labeling.labels.iter().enumerate() {
                writeln!(s, "{v}\t{l}").unwrap();
            }
            Ok(Output::ok(s))
        }
        Command::Stats { file, scheme } => {
            let g = read_graph(&file)?;
            let st = partition_stats(&g, &partition(&g, scheme));
            if json {
                return Ok(Output::ok(to_json(&st)));
            }
            let mut s = String::new();
            writeln!(s, "scheme      {}", st.scheme).unwrap();
            writeln!(s, "vertices    {}", st.vertices).unwrap();
            writeln!(s, "edges       {}", st.edges).unwrap();
            writeln!(s, "partitions  {}", st.partitions).unwrap();
            writeln!(s, "cross edges {}", st.intra_edges).unwrap();
            writeln!(s, "same edges  {}", st.inter_edges).unwrap();
            writeln!(s, "ratio       {}:{}", st.intra_inter_ratio.0, st.intra_inter_ratio.1).unwrap();
            for share in &st.distribution {
                writeln!(s, "  {:<10} {:>6} {:>7.2}%", share.index.to_string(), share.vertices, share.percent).unwrap();
            }
            Ok(Output::ok(s))
        }
        Command::Color { file, scheme, variant, d } => {
            let g = read_graph(&file)?;
            let (_, cols) = build_colorings(&[&g], scheme);
            let coloring = &cols[0];
            let variants: Vec<InteractionVariant> = match variant {
                Some(v) => vec![v],
                None => InteractionVariant::ALL.to_vec(),
            };
            let costs = variants
                .into_iter()
                .map(|v| {
                    interaction_cost(&g, coloring, v, d).map(|(tracked, q)| Cost {
                        variant: v,
                        tracked,
                        q,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let report = ColorReport {
                scheme,
                hops: d,
                vertices: (0..g.vertex_count())
                    .map(|v| VertexColor {
                        vertex: v,
                        index: coloring.labels[v],
                        color: coloring.color(v),
                    })
                    .collect(),
                costs,
            };
            if json {
                return Ok(Output::ok(to_json(&report)));
            }
            let mut s = String::new();
            for vc in &report.vertices {
                writeln!(s, "{}\t{}\t{}", vc.vertex, vc.index, vc.color).unwrap();
            }
            for c in &report.costs {
                writeln!(s, "{}: tracked pairs {}, q {}", c.variant, c.tracked, c.q).unwrap();
            }
            Ok(Output::ok(s))
        }
        Command::Compare {
            file1,
            file2,
            test,
            scheme,
            variant,
            d,
        } => {
            let (g, h) = (read_graph(&file1)?, read_graph(&file2)?);
            let report = match test {
                TestKind::Wl1 => CompareReport {
                    verdict: wl1_compare_plain(&g, &h),
                    test: "1wl",
                    config: None,
                },
                TestKind::Fwl2 => CompareReport {
                    verdict: fwl2_compare(&g, &h, None)?,
                    test: "2fwl",
                    config: None,
                },
                TestKind::Gpnn => {
                    let config = GpnnConfig::new(scheme, variant).with_hops(d);
                    CompareReport {
                        verdict: gpnn_compare(&g, &h, config)?,
                        test: "gpnn",
                        config: Some(config),
                    }
                }
            };
            if json {
                return Ok(Output::ok(to_json(&report)));
            }
            Ok(Output::ok(format!(
                "{} at iteration {}\n",
                report.verdict.outcome, report.verdict.iteration
            )))
        }
        Command::Iso { file1, file2, scheme } => {
            let (g, h) = (read_graph(&file1)?, read_graph(&file2)?);
            let r = IsoReport {
                gi: are_isomorphic(&g, &h).0,
                pi: partition_isomorphic(&g, &h, scheme),
                ii: interaction_isomorphic(&g, &h, scheme),
            };
            if json {
                return Ok(Output::ok(serde_json::to_string(&r).expect("serializable") + "\n"));
            }
            Ok(Output::ok(format!("gi {}\npi {}\nii {}\n", r.gi, r.pi, r.ii)))
        }
        Command::Suite {
            file,
            all,
            schemes,
            variants,
            d,
        } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| Error::InvalidParameter(format!("{}: {e}", file.display())))?;
            let suite = parse_suite(&text)?;
            let schemes = schemes.unwrap_or_else(|| SchemeId::PRACTICAL.to_vec());
            let variants = variants.unwrap_or_else(|| InteractionVariant::ALL.to_vec());
            let go = || run_suite(&suite, &schemes, &variants, d);
            let report = match thread_cap()? {
                Some(n) => rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .map_err(|e| Error::InvalidParameter(e.to_string()))?
                    .install(go)?,
                None => go()?,
            };
            let code = if report.violations.is_empty() {
                EXIT_OK
            } else {
                EXIT_VIOLATIONS
            };
            let text = if json { to_json(&report) } else { render_report(&report, all) };
            Ok(Output { text, code })
        }
        Command::Gen { kind, params, seed } => {
            let g = generate(&GraphKind::parse(&kind, &params)?, seed)?;
            if json {
                return Ok(Output::ok(to_json(&GraphJson::from(&g))));
            }
            Ok(Output::ok(serialize_edge_list(&g)))
        }
        Command::NeuralCheck {
            file,
            scheme,
            variant,
            f,
            layers,
            seed,
            d,
            trials,
            plugin,
        } => {
            let g = read_graph(&file)?;
            let config = NeuralConfig::new(f, layers, 1)
                .with_hops(d)
                .with_seed(seed)
                .with_plugin(plugin);
            let r = neural_check(&g, scheme, variant, config, trials)?;
            let code = if r.passed { EXIT_OK } else { EXIT_VIOLATIONS };
            let text = if json {
                to_json(&r)
            } else {
                format!(
                    "{} max deviation {:.3e} (equivariance {:.3e}, consistency {:.3e}, tolerance {:.0e})\n",
                    if r.passed { "pass" } else { "fail" },
                    r.max_equivariance_deviation.max(r.max_consistency_deviation),
                    r.max_equivariance_deviation,
                    r.max_consistency_deviation,
                    r.tolerance
                )
            };
            Ok(Output { text, code })
        }
    }
}

fn render_report(report: &HierarchyReport, all: bool) -> String {
    let mut s = String::new();
    let names = |xs: &[String]| xs.join(",");
    writeln!(
        s,
        "pairs {}  hops {}  schemes {}  variants {}",
        report.rows.len(),
        report.hops,
        names(&report.schemes.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
        names(&report.variants.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
    )
    .unwrap();
    if all {
        // D = distinguished, = = equivalent, - = not computed.
        let mark = |o: Option<crate::wl::Outcome>| match o {
            Some(crate::wl::Outcome::Distinguished) => 'D',
            Some(crate::wl::Outcome::Equivalent) => '=',
            None => '-',
        };
        let width = report.rows.iter().map(|r| r.name.len()).max().unwrap_or(4).max(4);
        let mut header = format!("{:<width$}  {:>3}  1wl 2fwl", "pair", "n");
        for sc in &report.schemes {
            write!(header, "  {sc}:").unwrap();
            for v in &report.variants {
                header.push(v.name().chars().next().unwrap_or('?'));
            }
        }
        writeln!(s, "{header}").unwrap();
        for row in &report.rows {
            let mut line = format!(
                "{:<width$}  {:>3}  {:>3} {:>4}",
                row.name,
                row.n,
                mark(Some(row.wl1)),
                mark(row.fwl2)
            );
            for sc in &report.schemes {
                write!(line, "  {:pad$}", "", pad = sc.name().len() + 1).unwrap();
                for v in &report.variants {
                    line.push(mark(row.gpnn(*sc, *v).map(|c| c.outcome)));
                }
            }
            writeln!(s, "{line}").unwrap();
        }
    }
    writeln!(s, "violations {}", report.violations.len()).unwrap();
    for v in &report.violations {
        writeln!(s, "  {} {}: {}", v.check, v.pair, v.detail).unwrap();
    }
    s
}
