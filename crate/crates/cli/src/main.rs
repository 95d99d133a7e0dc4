use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use selfcentered::canon::canonical_form;
use selfcentered::enumeration::{enumerate_connected, ingest_graph6};
use selfcentered::gcb::{build_gcb, decompose_triangle_free, sample_gcb_spec, GcbError, GcbSpec, Item8Reading};
use selfcentered::harness::{item8_sample_study, verify_all, Source};
use selfcentered::io::{from_edge_list, from_graph6, looks_like_edge_list, to_dot, to_edge_list, to_graph6};
use selfcentered::recognition::{critical_triples, is_edge_maximal, is_edge_minimal, is_two_self_centered};
use selfcentered::reduction::{reduce_to_triangle_free, ReductionError};
use selfcentered::Graph;

const EXAMPLES: &str = "\
Examples:
  selfcentered check Cl                     C4 is 2-self-centered (exit 0)
  selfcentered check --format json Ch       P4 is not (exit 1)
  selfcentered decompose IheA@GUAo | selfcentered build --item8 symmetric
  selfcentered sample --budget 9 --seed 7 --format dot
  selfcentered enumerate --n-max 5 > connected5.g6
  selfcentered verify --n-max 7 --format json";

/// Toolkit for graphs whose every vertex has eccentricity two.
///
/// Graphs are read as graph6 (one record) or as an edge list: the vertex
/// count on the first line, then one `u v` pair per line (`#` comments).
#[derive(Parser, Debug)]
#[command(name = "selfcentered", version, after_help = EXAMPLES)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format; the default depends on the subcommand.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// How to read the pairwise condition of the l = 0 special case.
    #[arg(long, global = true, value_enum, default_value_t = Reading::Printed)]
    item8: Reading,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Recognition verdict with edge-minimal and edge-maximal certificates.
    Check(GraphInput),
    /// Split a triangle-free 2-self-centered graph into a GCB specification.
    Decompose(GraphInput),
    /// Build the graph described by a specification document (JSON).
    Build {
        /// Specification file; stdin when absent.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Run the star procedure until no triangle is left.
    Reduce(GraphInput),
    /// Random GCB graph with exactly `budget` vertices.
    Sample {
        #[arg(long, default_value_t = 8)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Connected graphs up to isomorphism, one graph6 record per line.
    Enumerate {
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        /// Only the graphs on exactly `n_max` vertices.
        #[arg(long)]
        exact: bool,
    },
    /// Run the theorem battery on enumerated graphs or a graph6 file.
    Verify {
        #[arg(long, default_value_t = 7)]
        n_max: usize,
        /// graph6 catalog to check instead of the built-in generator.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Sampled specifications for the item 8 comparison.
        #[arg(long, default_value_t = 1000)]
        samples: u64,
    },
}

#[derive(Args, Debug)]
struct GraphInput {
    /// Inline graph6 record.
    graph: Option<String>,
    /// File holding graph6 or an edge list; stdin when neither is given.
    #[arg(long, conflicts_with = "graph")]
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
    Dot,
    Graph6,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Reading {
    Printed,
    Symmetric,
}

impl From<Reading> for Item8Reading {
    fn from(r: Reading) -> Self {
        match r {
            Reading::Printed => Item8Reading::Printed,
            Reading::Symmetric => Item8Reading::Symmetric,
        }
    }
}

fn read_text(path: Option<&PathBuf>) -> Result<String> {
    match path {
        Some(p) => std::fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display())),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("cannot read stdin")?;
            Ok(s)
        }
    }
}

fn read_graph(input: &GraphInput) -> Result<Graph> {
    if let Some(g6) = &input.graph {
        return Ok(from_graph6(g6.trim())?);
    }
    let text = read_text(input.input.as_ref())?;
    if looks_like_edge_list(&text) {
        return Ok(from_edge_list(&text)?);
    }
    let mut records = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let first = records.next().context("no graph in input")?;
    if records.next().is_some() {
        bail!("expected a single graph6 record");
    }
    Ok(from_graph6(first)?)
}

fn pick(format: Option<Format>, default: Format, allowed: &[Format], command: &str) -> Result<Format> {
    let f = format.unwrap_or(default);
    if !allowed.contains(&f) {
        let name = f
            .to_possible_value()
            .map(|v| v.get_name().to_owned())
            .unwrap_or_default();
        bail!("--format {name} is not available for {command}");
    }
    Ok(f)
}

fn json<T: serde::Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn render_graph(g: &Graph, format: Format) -> Result<String> {
    Ok(match format {
        Format::Graph6 => to_graph6(g) + "\n",
        Format::Json => json(g)?,
        Format::Dot => to_dot(g, None),
        Format::Table => to_edge_list(g),
    })
}

/// `Ok(true)` on success, `Ok(false)` on a property-false verdict.
fn run(cli: &Cli, out: &mut String) -> Result<bool> {
    let reading = Item8Reading::from(cli.item8);
    match &cli.command {
        Command::Check(input) => {
            let format = pick(cli.format, Format::Table, &[Format::Table, Format::Json], "check")?;
            let g = read_graph(input)?;
            let verdict = is_two_self_centered(&g);
            let minimal = is_edge_minimal(&g).ok();
            let maximal = is_edge_maximal(&g).ok();
            let triples = critical_triples(&g).ok();
            if format == Format::Json {
                out.push_str(&json(&serde_json::json!({
                    "graph6": to_graph6(&g),
                    "verdict": verdict,
                    "triangle_free": g.is_triangle_free(),
                    "edge_minimal": minimal,
                    "edge_maximal": maximal,
                    "critical_triples": triples,
                }))?);
            } else {
                writeln!(out, "graph6              {}", to_graph6(&g))?;
                writeln!(out, "2-self-centered     {}", verdict.is_2sc)?;
                if let Some(v) = verdict.violating_vertex {
                    writeln!(out, "violating vertex    {v} (degree {})", g.degree(v))?;
                }
                if let Some(p) = verdict.violating_pair {
                    writeln!(out, "violating pair      {p}")?;
                }
                writeln!(out, "triangle-free       {}", g.is_triangle_free())?;
                if let Some(m) = &minimal {
                    write!(out, "edge-minimal        {}", m.is_edge_minimal)?;
                    match m.removable_edge {
                        Some(e) => writeln!(out, " (removable {e})")?,
                        None => writeln!(out)?,
                    }
                }
                if let Some(m) = &maximal {
                    writeln!(out, "edge-maximal        {}", m.is_edge_maximal)?;
                }
                if let Some(t) = &triples {
                    let shown: Vec<String> = t.iter().map(|c| format!("{}:{}", c.critical, c.pair)).collect();
                    writeln!(out, "critical triples    {}", shown.join(" "))?;
                }
            }
            Ok(verdict.is_2sc)
        }
        Command::Decompose(input) => {
            let format = pick(cli.format, Format::Json, &[Format::Json, Format::Table], "decompose")?;
            let g = read_graph(input)?;
            let d = match decompose_triangle_free(&g) {
                Ok(d) => d,
                Err(e @ (GcbError::NotTwoSelfCentered | GcbError::HasTriangle(_))) => {
                    eprintln!("{e}");
                    return Ok(false);
                }
                Err(e) => return Err(e.into()),
            };
            if format == Format::Json {
                out.push_str(&json(&d.spec)?);
            } else {
                let s = &d.spec;
                writeln!(
                    out,
                    "k = {}, l = {}, r = {}, s = {}, |X| = {}",
                    s.k,
                    s.l,
                    s.r(),
                    s.s(),
                    s.x.n()
                )?;
                for (i, a) in s.witness.a_family.iter().enumerate() {
                    writeln!(out, "A{i} = {a:?}")?;
                }
                for (j, b) in s.witness.b_family.iter().enumerate() {
                    writeln!(out, "B{j} = {b:?}")?;
                }
                for (v, role) in d.roles.iter().enumerate() {
                    writeln!(out, "{v} -> {role:?}")?;
                }
            }
            Ok(true)
        }
        Command::Build { input } => {
            let format = pick(
                cli.format,
                Format::Graph6,
                &[Format::Graph6, Format::Json, Format::Dot, Format::Table],
                "build",
            )?;
            let text = read_text(input.as_ref())?;
            let spec: GcbSpec = serde_json::from_str(&text).context("malformed specification document")?;
            match build_gcb(&spec, reading) {
                Ok(g) => {
                    out.push_str(&render_graph(&g, format)?);
                    Ok(true)
                }
                Err(e @ GcbError::InvalidSpec(_)) => {
                    eprintln!("{e}");
                    Ok(false)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Reduce(input) => {
            let format = pick(
                cli.format,
                Format::Table,
                &[Format::Table, Format::Json, Format::Graph6],
                "reduce",
            )?;
            let g = read_graph(input)?;
            let trace = match reduce_to_triangle_free(&g) {
                Ok(t) => t,
                Err(e @ ReductionError::NotTwoSelfCentered) => {
                    eprintln!("{e}");
                    return Ok(false);
                }
                Err(e) => return Err(e.into()),
            };
            match format {
                Format::Json => out.push_str(&json(&trace)?),
                Format::Graph6 => out.push_str(&(to_graph6(&trace.final_graph) + "\n")),
                _ => {
                    for (i, s) in trace.steps.iter().enumerate() {
                        let added: Vec<String> = s.added_edges.iter().map(ToString::to_string).collect();
                        writeln!(
                            out,
                            "step {i}: remove {}, add {}, triangles {} -> {}{}",
                            s.removed_edge,
                            added.join(" "),
                            s.triangles_before,
                            s.triangles_after,
                            if s.created_triangles.is_empty() {
                                ""
                            } else {
                                " (creates a triangle)"
                            }
                        )?;
                    }
                    writeln!(
                        out,
                        "final {} succeeded {}",
                        to_graph6(&trace.final_graph),
                        trace.succeeded
                    )?;
                }
            }
            Ok(trace.succeeded)
        }
        Command::Sample { budget, seed } => {
            let format = pick(
                cli.format,
                Format::Graph6,
                &[Format::Graph6, Format::Json, Format::Dot, Format::Table],
                "sample",
            )?;
            let spec = sample_gcb_spec(*budget, *seed, reading)?;
            let g = build_gcb(&spec, reading)?;
            if format == Format::Json {
                out.push_str(&json(&serde_json::json!({ "spec": spec, "graph6": to_graph6(&g) }))?);
            } else {
                out.push_str(&render_graph(&g, format)?);
            }
            Ok(true)
        }
        Command::Enumerate { n_max, exact } => {
            pick(cli.format, Format::Graph6, &[Format::Graph6], "enumerate")?;
            let lo = if *exact { *n_max } else { 1 };
            for n in lo..=*n_max {
                for g in enumerate_connected(n)? {
                    out.push_str(&to_graph6(&g));
                    out.push('\n');
                }
            }
            Ok(true)
        }
        Command::Verify { n_max, input, samples } => {
            let format = pick(cli.format, Format::Table, &[Format::Table, Format::Json], "verify")?;
            let source = match input {
                Some(p) => Source::Graphs(ingest_graph6(p)?.iter().map(canonical_form).collect()),
                None => Source::Builtin(*n_max),
            };
            let summary = verify_all(source, reading)?;
            let study = item8_sample_study(*samples);
            if format == Format::Json {
                out.push_str(&json(
                    &serde_json::json!({ "summary": summary, "item8_samples": study }),
                )?);
            } else {
                out.push_str(&summary.to_table());
                writeln!(
                    out,
                    "item 8 over {} sampled specs ({} with l = 0): readings disagree {}, printed accepts unsound {}, symmetric accepts unsound {}",
                    study.samples,
                    study.with_l_zero,
                    study.readings_disagree,
                    study.printed_accepts_unsound.len(),
                    study.symmetric_accepts_unsound.len()
                )?;
            }
            Ok(summary.all_hold())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(&cli, &mut out);
    let _ = std::io::stdout().write_all(out.as_bytes());
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
