//! The `misreg` command line.
//!
//! Exit codes: 0 success, 1 verification failure or infeasible request,
//! 2 malformed input, 3 solver budget exhausted.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use misreg_core::gadget::{self, GadgetKind};
use misreg_core::regularize::{self, reduce_to_degree, regularize_planar};
use misreg_core::solve::{self, SolverLimits, Strategy};
use misreg_core::verify::{self, VerifyOptions};
use misreg_core::{Error, Graph};
use serde::Serialize;

use crate::format::{serialize_graph, Format};
use crate::io;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "misreg", version, about = "Degree-regularizing reductions for maximum independent set")]
pub struct Cli {
    /// Graph file format. Inferred from the file extension when omitted
    /// (`.col` is DIMACS, anything else an edge list).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Reserved for randomized features. Every command is deterministic and
    /// currently ignores it.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Attach gadgets to make the graph regular; writes G' and a certificate.
    #[command(group(ArgGroup::new("target").required(true).args(["degree", "planar"])))]
    Regularize {
        input: PathBuf,
        /// Odd target degree, at least the maximum degree of the input.
        #[arg(long)]
        degree: Option<usize>,
        /// Planar pipeline to a 5-regular graph (input must be planar, Δ <= 5).
        #[arg(long)]
        planar: bool,
        /// Reject inputs with even maximum degree instead of adding a parity clique.
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Exact maximum independent set.
    Solve {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[command(flatten)]
        budget: Budget,
    },
    /// Re-verify a reduction against its certificate.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        reduced: PathBuf,
        #[arg(long)]
        cert: PathBuf,
        /// Also run the solver-backed checks.
        #[arg(long)]
        with_oracle: bool,
        /// Maximum independent set of the source graph, for the sandwich check.
        #[arg(long)]
        witness: Option<PathBuf>,
        #[command(flatten)]
        budget: Budget,
    },
    /// Map an independent set of G' back to G.
    Recover {
        #[arg(long)]
        reduced: PathBuf,
        #[arg(long)]
        cert: PathBuf,
        /// Newline-separated 0-indexed vertex ids of G'.
        #[arg(long)]
        solution: PathBuf,
        /// Swap in canonical gadget witnesses before restricting.
        #[arg(long)]
        normalize: bool,
        /// Write the recovered ids here instead of into the JSON summary.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump a gadget with its role map.
    #[command(group(ArgGroup::new("kind").required(true).args(["degree", "planar", "icosa"])))]
    Gadget {
        /// General gadget for this odd degree.
        #[arg(long)]
        degree: Option<usize>,
        /// Planar degree-5 gadget.
        #[arg(long)]
        planar: bool,
        /// The icosahedron-minus-an-edge block.
        #[arg(long)]
        icosa: bool,
        /// Write the graph here instead of into the JSON output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Vertex and edge counts, degree histogram, triangles.
    Stats { input: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Brute,
    Bb,
}

#[derive(Debug, Clone, Args)]
pub struct Budget {
    /// Branch-and-bound node cap.
    #[arg(long)]
    pub budget_nodes: Option<u64>,
    /// Branch-and-bound wall-clock cap in seconds.
    #[arg(long)]
    pub budget_secs: Option<f64>,
    /// Largest graph brute force accepts (at most 64).
    #[arg(long, default_value_t = 26)]
    pub max_brute_n: usize,
}

impl Budget {
    fn limits(&self) -> Result<SolverLimits> {
        let time_budget = match self.budget_secs {
            None => None,
            Some(s) if s.is_finite() && s > 0.0 => Some(Duration::from_secs_f64(s)),
            Some(s) => bail!(Error::InvalidInput(format!("--budget-secs {s} must be positive"))),
        };
        let limits = SolverLimits {
            max_brute_n: self.max_brute_n,
            node_budget: self.budget_nodes,
            time_budget,
        };
        limits.validate()?;
        Ok(limits)
    }
}

/// Exit code for an error returned by [`run`].
pub fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::ResourceLimit { .. }) => EXIT_BUDGET,
        _ => EXIT_INPUT,
    }
}

#[derive(Serialize)]
struct RegularizeSummary {
    vertices: usize,
    edges: usize,
    target_degree: usize,
    gadgets: usize,
    total_offset: usize,
    parity_fix: bool,
    star_pad: bool,
}

#[derive(Serialize)]
struct SolveOutput<'a> {
    alpha: usize,
    witness: &'a [usize],
    nodes: u64,
    millis: u128,
    method: solve::Method,
}

#[derive(Serialize)]
struct RecoverOutput {
    input_size: usize,
    recovered_size: usize,
    total_offset: usize,
    /// `|I'| - total_offset`, the least the recovered set can have.
    bound: usize,
    meets_bound: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    recovered: Option<Vec<usize>>,
}

#[derive(Serialize)]
struct GadgetOutput {
    kind: String,
    vertices: usize,
    edges: usize,
    port: Option<usize>,
    alpha: usize,
    quoted_alpha: usize,
    alpha_discrepancy: bool,
    canonical_witness: Vec<usize>,
    roles: BTreeMap<usize, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    graph: Option<String>,
}

#[derive(Serialize)]
struct Stats {
    vertices: usize,
    edges: usize,
    max_degree: usize,
    min_degree: usize,
    regular: bool,
    degree_histogram: BTreeMap<usize, usize>,
    triangles: usize,
    components: usize,
}

/// Runs one command, writing its JSON output to `out`. Returns the exit code
/// for completed commands; errors map through [`exit_code`].
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<u8> {
    let fmt = cli.format;
    match &cli.command {
        Command::Regularize {
            input,
            degree,
            planar,
            strict,
            out: out_path,
            cert: cert_path,
        } => {
            let g = io::read_graph(input, fmt)?;
            let (gp, cert) = match (degree, planar) {
                (Some(d), false) => reduce_to_degree(&g, *d, *strict)?,
                (None, true) => regularize_planar(&g)?,
                _ => unreachable!("clap enforces exactly one target"),
            };
            io::write_graph(out_path, &gp, fmt)?;
            io::write_json(cert_path, &cert)?;
            let summary = RegularizeSummary {
                vertices: gp.vertex_count(),
                edges: gp.edge_count(),
                target_degree: cert.target_degree,
                gadgets: cert.gadgets.len(),
                total_offset: cert.total_offset,
                parity_fix: cert.steps.iter().any(|s| matches!(s.kind, regularize::StepKind::ParityFix { .. })),
                star_pad: cert.steps.iter().any(|s| matches!(s.kind, regularize::StepKind::StarPad { .. })),
            };
            out.write_all(io::to_json(&summary).as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Solve { input, method, budget } => {
            let g = io::read_graph(input, fmt)?;
            let limits = budget.limits()?;
            let strategy = match method {
                MethodArg::Auto => Strategy::Auto,
                MethodArg::Brute => Strategy::Brute,
                MethodArg::Bb => Strategy::BranchBound,
            };
            let start = Instant::now();
            let result = solve::solve(&g, strategy, &limits)?;
            let output = SolveOutput {
                alpha: result.alpha,
                witness: result.witness.as_slice(),
                nodes: result.nodes_explored,
                millis: start.elapsed().as_millis(),
                method: result.method,
            };
            out.write_all(io::to_json(&output).as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            graph,
            reduced,
            cert,
            with_oracle,
            witness,
            budget,
        } => {
            let g = io::read_graph(graph, fmt)?;
            let gp = io::read_graph(reduced, fmt)?;
            let cert = io::read_certificate(cert)?;
            let witness = witness.as_deref().map(io::read_solution).transpose()?;
            let opts = VerifyOptions {
                with_oracle: *with_oracle,
                witness,
                limits: budget.limits()?,
            };
            let report = verify::verify_all(&g, &gp, &cert, &opts)?;
            out.write_all(io::to_json(&report).as_bytes())?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Recover {
            reduced,
            cert,
            solution,
            normalize,
            out: out_path,
        } => {
            let gp = io::read_graph(reduced, fmt)?;
            let cert = io::read_certificate(cert)?;
            let i_prime = io::read_solution(solution)?;
            let start = if *normalize {
                regularize::normalize(&gp, &i_prime, &cert)?
            } else {
                i_prime.clone()
            };
            let recovered = regularize::recover(&gp, &start, &cert)?;
            let bound = i_prime.len().saturating_sub(cert.total_offset);
            let listed = match out_path {
                Some(p) => {
                    std::fs::write(p, io::serialize_solution(&recovered))
                        .with_context(|| format!("writing {}", p.display()))?;
                    None
                }
                None => Some(recovered.as_slice().to_vec()),
            };
            let output = RecoverOutput {
                input_size: i_prime.len(),
                recovered_size: recovered.len(),
                total_offset: cert.total_offset,
                bound,
                meets_bound: recovered.len() >= bound,
                recovered: listed,
            };
            out.write_all(io::to_json(&output).as_bytes())?;
            Ok(if output.meets_bound { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Gadget {
            degree,
            planar,
            icosa,
            out: out_path,
        } => {
            let kind = match (degree, planar, icosa) {
                (Some(d), false, false) => GadgetKind::general(*d)?,
                (None, true, false) => GadgetKind::Planar5,
                (None, false, true) => GadgetKind::Icosa,
                _ => unreachable!("clap enforces exactly one kind"),
            };
            let (h, layout) = gadget::build(kind)?;
            let discrepancy = gadget::alpha_discrepancy(kind)?;
            let graph = match out_path {
                Some(p) => {
                    io::write_graph(p, &h, fmt)?;
                    None
                }
                None => Some(serialize_graph(&h, fmt.unwrap_or(Format::EdgeList))),
            };
            let output = GadgetOutput {
                kind: kind.name(),
                vertices: h.vertex_count(),
                edges: h.edge_count(),
                port: layout.port,
                alpha: layout.internal_alpha,
                quoted_alpha: discrepancy.quoted,
                alpha_discrepancy: discrepancy.differs(),
                canonical_witness: layout.canonical_witness().as_slice().to_vec(),
                roles: layout.roles.iter().map(|r| r.label()).enumerate().collect(),
                graph,
            };
            out.write_all(io::to_json(&output).as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Stats { input } => {
            let g = io::read_graph(input, fmt)?;
            out.write_all(io::to_json(&stats(&g)).as_bytes())?;
            Ok(EXIT_OK)
        }
    }
}

fn stats(g: &Graph) -> Stats {
    let mut degree_histogram = BTreeMap::new();
    for d in g.degrees() {
        *degree_histogram.entry(d).or_insert(0) += 1;
    }
    let max_degree = g.max_degree();
    Stats {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        max_degree,
        min_degree: g.degrees().min().unwrap_or(0),
        regular: g.is_regular(max_degree),
        degree_histogram,
        triangles: g.triangle_count(),
        components: g.component_count(),
    }
}
