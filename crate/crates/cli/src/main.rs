//! `linegroup`: braid monodromy, van Kampen presentations and
//! conjugation-free certification from the command line.
//!
//! Exit status: 0 on success, 2 when the answer is an honest Unknown (no
//! certificate found, hom-count aborted), 1 on errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use linegroup::fixtures;
use linegroup::geom::{compute_lattice, multiple_point_graph, parse_arrangement, Arrangement, IntersectionLattice};
use linegroup::grouptheory::{
    fan_structure, materialize, oka_sakamoto_split, semidirect_fixture, SemidirectVariant, Split,
};
use linegroup::presentations::homcount::DEFAULT_NODE_BUDGET;
use linegroup::presentations::{
    candidate_for, cf_verdict, hom_count, parse_certificate, prove_equivalent, replay, Budget, FiniteGroupTable,
    HomCount, OrderingSpec, Outcome,
};
use linegroup::vankampen::{parse_presentation, presentation, projectivize, Presentation};
use linegroup::wiring::{genericize, parse_pairs, sweep, wiring_svg, PairList, Sweep};

#[derive(Parser)]
#[command(name = "linegroup", version, about = "Fundamental groups of real line arrangement complements")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Io {
    /// Input file.
    #[arg(short, long)]
    input: PathBuf,
    /// Output file; standard output if omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Clone, Copy)]
struct BudgetArgs {
    /// Most steps allowed in a certificate.
    #[arg(long, default_value_t = Budget::default().max_steps as u64, value_parser = clap::value_parser!(u64).range(1..))]
    max_steps: u64,
    /// Longest word allowed in a certificate.
    #[arg(long, default_value_t = Budget::default().max_word_len as u64, value_parser = clap::value_parser!(u64).range(1..))]
    max_word_len: u64,
}

impl BudgetArgs {
    fn budget(self) -> Budget {
        Budget {
            max_steps: self.max_steps as usize,
            max_word_len: self.max_word_len as usize,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Intersection points with their incident lines.
    Lattice(Io),
    /// The graph of multiple points and its first Betti number.
    Graph(Io),
    /// Lefschetz pairs of the right-to-left sweep.
    Pairs(Io),
    /// Wiring diagram as SVG, from an arrangement or a pairs file.
    Svg(Io),
    /// The van Kampen presentation, from an arrangement or a pairs file.
    Present {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Add the relation at infinity and drop the last generator.
        #[arg(long)]
        projective: bool,
    },
    /// The conjugation-free candidate determined by the lattice.
    Candidate {
        #[command(flatten)]
        io: Io,
        /// `natural` or a permutation `g1,g2,...` giving each line's generator.
        #[arg(long, default_value = "natural")]
        ordering: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Searches for a certificate that two presentations agree.
    Prove {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        /// Certificate file; standard output if omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Certifies the pipeline presentation against the candidate for each
    /// selected ordering.
    Verdict {
        #[command(flatten)]
        io: Io,
        /// `natural`, `all`, or a permutation `g1,g2,...`.
        #[arg(long, default_value = "natural")]
        ordering: String,
        /// Groups for hom-count evidence: S3, S4, A4, D4, A5 or a table file.
        #[arg(long)]
        group: Vec<String>,
        /// Where to write the certificate of the first certified ordering.
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
        budget_nodes: u64,
    },
    /// Checks a certificate against two presentation files.
    Replay {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        certificate: PathBuf,
    },
    /// Counts homomorphisms into finite groups.
    Homcount {
        #[command(flatten)]
        io: Io,
        #[arg(long, required = true)]
        group: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
        budget_nodes: u64,
    },
    /// Fan's closed form for arrangements whose graph is a forest.
    Fan {
        #[command(flatten)]
        io: Io,
        /// Print the materialized presentation instead of the descriptor.
        #[arg(long)]
        materialize: bool,
    },
    /// The Oka-Sakamoto splitting into transversal sub-arrangements.
    Split(Io),
    /// Writes a shipped fixture; without a name, lists them.
    Fixture {
        name: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Result of a command that completed without error.
enum Status {
    Done,
    Unknown,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("{}: cannot read", path.display()))
}

fn write(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("{}: cannot write", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn at<T, E: std::fmt::Display>(path: &Path, r: Result<T, E>) -> Result<T> {
    r.map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn is_pairs_file(text: &str) -> bool {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.starts_with("ell="))
}

fn load_arrangement(path: &Path) -> Result<Arrangement> {
    at(path, parse_arrangement(&read(path)?))
}

/// The arrangement, the lattice of its generic shear, and the sweep.
fn load_swept(path: &Path) -> Result<(Arrangement, IntersectionLattice, Sweep)> {
    let arr = load_arrangement(path)?;
    let (generic, t) = at(path, genericize(&arr))?;
    if !t.is_identity() {
        eprintln!("note: sheared by x' = x + ({})·y to make the projection generic", t.t);
    }
    let lat = at(path, compute_lattice(&generic))?;
    let sw = at(path, sweep(&generic))?;
    Ok((arr, lat, sw))
}

fn load_pairs(path: &Path) -> Result<PairList> {
    let text = read(path)?;
    if is_pairs_file(&text) {
        at(path, parse_pairs(&text))
    } else {
        Ok(load_swept(path)?.2.pairs)
    }
}

fn load_presentation(path: &Path) -> Result<Presentation> {
    let text = read(path)?;
    if text.trim_start().starts_with('{') {
        at(path, Presentation::from_json(&text))
    } else {
        at(path, parse_presentation(&text))
    }
}

fn load_group(spec: &str) -> Result<FiniteGroupTable> {
    if let Ok(g) = FiniteGroupTable::named(spec) {
        return Ok(g);
    }
    let path = Path::new(spec);
    if !path.exists() {
        bail!("unknown group `{spec}`: expected S3, S4, A4, D4, A5 or a table file");
    }
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or(spec);
    at(path, FiniteGroupTable::parse(name, &read(path)?))
}

fn parse_permutation(text: &str) -> Result<Vec<usize>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| anyhow!("ordering: malformed index `{t}`")))
        .collect()
}

fn ordering_spec(text: &str) -> Result<OrderingSpec> {
    Ok(match text {
        "natural" => OrderingSpec::Natural,
        "all" => OrderingSpec::All,
        perm => OrderingSpec::Explicit(parse_permutation(perm)?),
    })
}

fn render(p: &Presentation, format: Format) -> String {
    match format {
        Format::Text => p.to_string(),
        Format::Json => p.to_json(),
    }
}

fn lines_1based(ls: &[usize]) -> String {
    ls.iter().map(|l| (l + 1).to_string()).collect::<Vec<_>>().join(" ")
}

fn run(cmd: Cmd) -> Result<Status> {
    match cmd {
        Cmd::Lattice(io) => {
            let arr = load_arrangement(&io.input)?;
            let lat = at(&io.input, compute_lattice(&arr))?;
            let mut out = format!("lines={} points={} multiple={}\n", lat.n, lat.points.len(), lat.p());
            for p in &lat.points {
                out += &format!("{} {} : {}\n", p.x, p.y, lines_1based(&p.incident));
            }
            write(io.output.as_deref(), &out)?;
        }
        Cmd::Graph(io) => {
            let arr = load_arrangement(&io.input)?;
            let lat = at(&io.input, compute_lattice(&arr))?;
            let g = multiple_point_graph(&arr, &lat);
            let mut out = format!("vertices={} edges={} betti={}\n", g.vertices.len(), g.edges.len(), g.betti);
            for &v in &g.vertices {
                let p = &lat.points[v];
                out += &format!("vertex {v} at {} {} : {}\n", p.x, p.y, lines_1based(&p.incident));
            }
            for &(u, v, l) in &g.edges {
                out += &format!("edge {u} {v} line {}\n", l + 1);
            }
            write(io.output.as_deref(), &out)?;
        }
        Cmd::Pairs(io) => {
            let (_, _, sw) = load_swept(&io.input)?;
            write(io.output.as_deref(), &sw.pairs.to_string())?;
        }
        Cmd::Svg(io) => {
            let pl = load_pairs(&io.input)?;
            write(io.output.as_deref(), &wiring_svg(&pl))?;
        }
        Cmd::Present { io, format, projective } => {
            let pl = load_pairs(&io.input)?;
            let mut p = at(&io.input, presentation(&pl))?;
            if projective {
                p = projectivize(&p);
            }
            write(io.output.as_deref(), &render(&p, format))?;
        }
        Cmd::Candidate { io, ordering, format } => {
            let (_, lat, sw) = load_swept(&io.input)?;
            let natural = sw.natural_ordering();
            let ord = match ordering_spec(&ordering)? {
                OrderingSpec::Natural => natural.clone(),
                OrderingSpec::Explicit(o) => o,
                OrderingSpec::All => bail!("candidate takes a single ordering"),
            };
            if ord.len() != lat.n || !linegroup::presentations::candidate::is_permutation(&ord) {
                bail!("ordering is not a permutation of 1..={}", lat.n);
            }
            write(io.output.as_deref(), &render(&candidate_for(&lat, &natural, &ord), format))?;
        }
        Cmd::Prove {
            source,
            target,
            output,
            budget,
        } => {
            let s = load_presentation(&source)?;
            let t = load_presentation(&target)?;
            match prove_equivalent(&s, &t, budget.budget()) {
                Outcome::Certified(cert) => {
                    write(output.as_deref(), &cert.to_string())?;
                    eprintln!("certified ({} steps)", cert.len());
                }
                Outcome::Unknown(why) => {
                    eprintln!("unknown: {why}");
                    return Ok(Status::Unknown);
                }
            }
        }
        Cmd::Verdict {
            io,
            ordering,
            group,
            certificate,
            budget,
            budget_nodes,
        } => {
            let (_, lat, sw) = load_swept(&io.input)?;
            let groups = group.iter().map(|g| load_group(g)).collect::<Result<Vec<_>>>()?;
            let report = cf_verdict(
                &sw.pairs,
                &lat,
                &sw.natural_ordering(),
                &ordering_spec(&ordering)?,
                budget.budget(),
                &groups,
                budget_nodes,
            )?;
            write(io.output.as_deref(), &report.to_string())?;
            let Some(hit) = report.certified() else {
                return Ok(Status::Unknown);
            };
            if let (Some(path), Outcome::Certified(cert)) = (certificate, &hit.outcome) {
                write(Some(&path), &cert.to_string())?;
            }
        }
        Cmd::Replay {
            source,
            target,
            certificate,
        } => {
            let s = load_presentation(&source)?;
            let t = load_presentation(&target)?;
            let cert = at(&certificate, parse_certificate(&read(&certificate)?))?;
            at(&certificate, replay(&s, &t, &cert))?;
            println!("ok ({} steps)", cert.len());
        }
        Cmd::Homcount {
            io,
            group,
            budget_nodes,
        } => {
            let p = load_presentation(&io.input)?;
            let mut out = String::new();
            let mut aborted = false;
            for g in &group {
                let g = load_group(g)?;
                let c = hom_count(&p, &g, budget_nodes);
                aborted |= c == HomCount::Aborted;
                out += &format!("{}: {c}\n", g.name);
            }
            write(io.output.as_deref(), &out)?;
            if aborted {
                return Ok(Status::Unknown);
            }
        }
        Cmd::Fan { io, materialize: mat } => {
            let arr = load_arrangement(&io.input)?;
            let lat = at(&io.input, compute_lattice(&arr))?;
            let g = multiple_point_graph(&arr, &lat);
            let d = at(&io.input, fan_structure(arr.len(), &lat.multiplicities(), g.betti))?;
            let out = if mat { materialize(&d).to_string() } else { format!("{d}\n") };
            write(io.output.as_deref(), &out)?;
        }
        Cmd::Split(io) => {
            let arr = load_arrangement(&io.input)?;
            let out = match at(&io.input, oka_sakamoto_split(&arr))? {
                Split::Parts(parts) => {
                    let ps: Vec<String> = parts.iter().map(|p| lines_1based(p)).collect();
                    format!("{}\n", ps.join(" | "))
                }
                Split::NotApplicable => "not applicable\n".to_string(),
            };
            write(io.output.as_deref(), &out)?;
        }
        Cmd::Fixture { name, output } => {
            let text = match name.as_deref() {
                None => {
                    let mut names: Vec<&str> = fixtures::ALL.iter().map(|(n, _)| *n).collect();
                    names.extend(["semidirect_triangle", "semidirect_ceva"]);
                    names.join("\n") + "\n"
                }
                Some("semidirect_triangle") => semidirect_fixture(SemidirectVariant::Triangle).to_string(),
                Some("semidirect_ceva") => semidirect_fixture(SemidirectVariant::Ceva).to_string(),
                Some(n) => fixtures::ALL
                    .iter()
                    .find(|(m, _)| *m == n)
                    .map(|(_, t)| t.to_string())
                    .ok_or_else(|| anyhow!("unknown fixture `{n}`"))?,
            };
            write(output.as_deref(), &text)?;
        }
    }
    Ok(Status::Done)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(Status::Done) => ExitCode::SUCCESS,
        Ok(Status::Unknown) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
