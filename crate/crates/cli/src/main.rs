//! `hcircle`: command-line front-end for hcircle-core.
//!
//! Exit codes: 0 success or property holds, 1 property violated, 2 usage or
//! input error, 3 exploration budget exceeded.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use hcircle_core::caterpillar::{find_s_k13, hamilton_cycle_of_square, is_caterpillar};
use hcircle_core::corpus::{property_suites, SuiteLimits};
use hcircle_core::fragment::{build_gn, load_tutte_fragment, section5_graph, Section5Graph};
use hcircle_core::graph::json::parse_simple;
use hcircle_core::graph::{is_two_connected, kth_power, Edge, FiniteGraph, Vertex};
use hcircle_core::lazy::{ball, double_ladder, end_report, Budget, DoubleLadder, LazyGraph};
use hcircle_core::minor::{find_minor, outerplanarity_obstruction, Pattern};
use hcircle_core::outerplanar::{cycle_order, disk_layout, two_contractible_edges, unique_hamilton_cycle_outerplanar};
use hcircle_core::unique::{certify_lazy, certify_section5, check_candidate_circle, section5_circle, transfer_table};
use hcircle_core::Error;

#[derive(Parser)]
#[command(name = "hcircle", version, about = "Hamilton cycles and circles in finite and locally finite graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the k-th power of a graph.
    Power {
        graph: PathBuf,
        #[arg(short, long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Test outerplanarity; exits 1 with the obstruction if the graph is not outerplanar.
    Outerplanar {
        graph: PathBuf,
        /// Report the unique Hamilton cycle (needs a 2-connected graph).
        #[arg(long)]
        cycle: bool,
        /// Report the 2-contractible edges (needs a 2-connected graph).
        #[arg(long)]
        contractible: bool,
        /// Write a chord-diagram layout as SVG.
        #[arg(long, value_name = "FILE")]
        layout: Option<PathBuf>,
    },
    /// Recognise a caterpillar; exits 1 with a subdivided claw if it is not one.
    Caterpillar {
        tree: PathBuf,
        /// Report a Hamilton cycle of the square.
        #[arg(long)]
        square_cycle: bool,
    },
    /// Search for a K4 or K2,3 minor; exits 1 if there is none.
    Minor {
        graph: PathBuf,
        #[arg(long, value_enum)]
        pattern: PatternArg,
    },
    /// Validate the fragment's Hamilton path counts.
    TutteVerify,
    /// Build the cubic graph of the given construction level.
    ConstructGn {
        #[arg(long)]
        level: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Deep components beyond a level region and their end-degree bounds.
    Ends {
        #[arg(long, value_enum)]
        generator: Generator,
        #[arg(long)]
        radius: usize,
        /// Also write the distance ball of this radius as a JSON graph.
        #[arg(long, value_name = "FILE")]
        ball_out: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Level verdicts on the number of Hamilton circles; exits 1 unless unique.
    UniqueCircle {
        #[arg(long, value_enum)]
        generator: Generator,
        #[arg(long)]
        levels: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Check a candidate circle at levels 1..=N; exits 1 if any level fails.
    VerifyCircle {
        #[arg(long, value_enum)]
        generator: Generator,
        #[arg(long, value_enum)]
        member: Member,
        #[arg(long)]
        levels: usize,
        /// Toggle membership of one edge, given as `a,b`.
        #[arg(long, value_name = "A,B")]
        flip: Option<String>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Run the exhaustive small-graph property sweeps.
    Corpus {
        /// Cap every sweep at this many vertices.
        #[arg(long)]
        max_n: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PatternArg {
    K4,
    K23,
}

#[derive(Clone, Copy, ValueEnum)]
enum Generator {
    DoubleLadder,
    Section5,
}

#[derive(Clone, Copy, ValueEnum)]
enum Member {
    /// Rail edges of the double ladder.
    Rails,
    /// The circle through every fragment copy of the section5 graph.
    Circle,
}

#[derive(Args, Clone, Copy)]
struct BudgetArgs {
    #[arg(long, default_value_t = Budget::default().max_vertices)]
    max_vertices: usize,
    /// Layers a component must keep growing through to count as infinite.
    #[arg(long, default_value_t = Budget::default().depth)]
    depth: usize,
    #[arg(long, default_value_t = 32)]
    max_radius: usize,
}

impl BudgetArgs {
    fn budget(&self, radius: usize) -> Result<Budget, Error> {
        if radius > self.max_radius {
            return Err(Error::Budget(format!("radius {radius} exceeds --max-radius {}", self.max_radius)));
        }
        Ok(Budget { max_vertices: self.max_vertices, depth: self.depth })
    }
}

/// Outcome of a command: data for standard output and whether the checked
/// property held.
struct Report {
    data: Value,
    holds: bool,
}

fn holds(data: Value) -> Report {
    Report { data, holds: true }
}

fn read_graph(path: &Path) -> Result<FiniteGraph, Error> {
    parse_simple(&std::fs::read_to_string(path)?)
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => Ok(std::fs::write(p, format!("{text}\n"))?),
        None => print_stdout(text),
    }
}

/// Writes a line to stdout, treating a closed pipe as success.
fn print_stdout(text: &str) -> Result<(), Error> {
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn to_json<T: Serialize>(x: &T) -> Result<Value, Error> {
    Ok(serde_json::to_value(x)?)
}

fn edges_json(edges: impl IntoIterator<Item = Edge>) -> Value {
    Value::Array(edges.into_iter().map(|e| json!([e.a(), e.b()])).collect())
}

fn generator(g: Generator) -> Result<Box<dyn LazyGraph>, Error> {
    Ok(match g {
        Generator::DoubleLadder => Box::new(double_ladder()),
        Generator::Section5 => Box::new(section5_graph()?),
    })
}

fn run(cmd: Command) -> Result<Option<Report>, Error> {
    let report = match cmd {
        Command::Power { graph, k, out } => {
            let p = kth_power(&read_graph(&graph)?, k)?;
            write_or_print(out.as_deref(), &serde_json::to_string(&p)?)?;
            return Ok(None);
        }
        Command::Outerplanar { graph, cycle, contractible, layout } => {
            let g = read_graph(&graph)?;
            if let Some(ob) = outerplanarity_obstruction(&g)? {
                Report { data: json!({"outerplanar": false, "reason": ob.to_string(), "obstruction": ob}), holds: false }
            } else {
                let mut data = json!({"outerplanar": true, "two_connected": is_two_connected(&g)});
                if cycle {
                    data["cycle"] = to_json(&cycle_order(&unique_hamilton_cycle_outerplanar(&g)?))?;
                }
                if contractible {
                    data["contractible"] = edges_json(two_contractible_edges(&g)?);
                }
                if let Some(path) = layout {
                    let l = disk_layout(&g)?;
                    std::fs::write(&path, l.to_svg())?;
                    data["layout"] = to_json(&l)?;
                }
                holds(data)
            }
        }
        Command::Caterpillar { tree, square_cycle } => {
            let t = read_graph(&tree)?;
            match is_caterpillar(&t)? {
                Some(spine) => {
                    let mut data = json!({"caterpillar": true, "spine": spine});
                    if square_cycle {
                        data["square_cycle"] = to_json(&cycle_order(&hamilton_cycle_of_square(&t)?))?;
                    }
                    holds(data)
                }
                None => Report { data: json!({"caterpillar": false, "subdivided_claw": find_s_k13(&t)}), holds: false },
            }
        }
        Command::Minor { graph, pattern } => {
            let pattern = match pattern {
                PatternArg::K4 => Pattern::K4,
                PatternArg::K23 => Pattern::K23,
            };
            let w = find_minor(&read_graph(&graph)?, pattern)?;
            Report { holds: w.is_some(), data: json!({"pattern": pattern, "found": w.is_some(), "witness": w}) }
        }
        Command::TutteVerify => holds(to_json(&load_tutte_fragment()?.report())?),
        Command::ConstructGn { level, out } => {
            let (g, tree) = build_gn(level)?;
            eprintln!(
                "level {level}: {} vertices, {} edges, {} marked copies",
                g.vertex_count(),
                g.edge_count(),
                tree.marked().count()
            );
            write_or_print(out.as_deref(), &serde_json::to_string(&g)?)?;
            return Ok(None);
        }
        Command::Ends { generator: which, radius, ball_out, budget } => {
            let b = budget.budget(radius)?;
            let lg = generator(which)?;
            if let Some(path) = ball_out {
                std::fs::write(path, serde_json::to_string(&ball(lg.as_ref(), radius, b)?.graph)?)?;
            }
            let mut data = to_json(&end_report(lg.as_ref(), radius, b)?)?;
            data["budget"] = to_json(&b)?;
            holds(data)
        }
        Command::UniqueCircle { generator: which, levels, budget } => {
            let b = budget.budget(levels)?;
            let report = match which {
                Generator::Section5 => certify_section5(levels, b)?,
                Generator::DoubleLadder => certify_lazy(&double_ladder(), levels, b)?,
            };
            Report { holds: report.is_unique(), data: to_json(&report)? }
        }
        Command::VerifyCircle { generator: which, member, levels, flip, budget } => {
            let b = budget.budget(levels)?;
            let flip = match flip {
                None => None,
                Some(s) => match s.split_once(',') {
                    Some((a, c)) => Some(Edge::new(Vertex::new(a), Vertex::new(c))),
                    None => return Err(Error::Format(format!("--flip expects `a,b`, got {s:?}"))),
                },
            };
            let flipped = |a: &Vertex, c: &Vertex| flip.as_ref().is_some_and(|f| *f == Edge::new(a.clone(), c.clone()));
            let radii: Vec<usize> = (1..=levels).collect();
            let checks = match (which, member) {
                (Generator::DoubleLadder, Member::Rails) => {
                    let m = |a: &Vertex, c: &Vertex| DoubleLadder::is_rail(a, c) != flipped(a, c);
                    check_candidate_circle(&double_ladder(), &m, &radii, b)?
                }
                (Generator::Section5, Member::Circle) => {
                    let lg: Section5Graph = section5_graph()?;
                    let circle = section5_circle(&transfer_table(lg.fragment()))?;
                    let m = |a: &Vertex, c: &Vertex| circle(&lg, a, c) != flipped(a, c);
                    check_candidate_circle(&lg, &m, &radii, b)?
                }
                _ => return Err(Error::Precondition("use --member rails with double-ladder and --member circle with section5".into())),
            };
            let accepted = checks.iter().all(|c| c.ok);
            Report { holds: accepted, data: json!({"accepted": accepted, "levels": checks, "budget": b}) }
        }
        Command::Corpus { max_n } => {
            let limits = max_n.map_or(SuiteLimits::default(), |n| SuiteLimits::default().capped(n));
            let suites = property_suites(limits)?;
            let ok = suites.iter().all(|s| s.failures == 0);
            Report { holds: ok, data: json!({"limits": limits, "suites": suites}) }
        }
    };
    Ok(Some(report))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(report)) => {
            let text = serde_json::to_string_pretty(&report.data).expect("values serialize");
            if let Err(e) = print_stdout(&text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if report.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Budget(_) => 3,
                Error::Consistency(_) => 1,
                _ => 2,
            })
        }
    }
}
