use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use comsem::construct::{realize_graph, RealizationVariant};
use comsem::enumerate::{enumerate, EnumerationBudget};
use comsem::error::Error;
use comsem::explore::{explore, ExploreConfig};
use comsem::graph::{commuting_graph, Graph};
use comsem::knit::shortest_left_path;
use comsem::presentation::Presentation;
use comsem::report::InvariantReport;
use comsem::semigroup::FiniteSemigroup;
use comsem::verify::{run_suite, VerifyOptions};

/// Finite semigroups with zero from presentations: enumeration, commuting
/// graphs, exact invariants, and verification suites.
#[derive(Parser)]
#[command(name = "comsem", version, max_term_width = 100)]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Seed for the randomized subcommands
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,

    /// Longest word tried by the finiteness certificate (default 8); for
    /// explore, the longest relation word in the search space (default 3)
    #[arg(long, global = true, value_name = "N")]
    max_len: Option<usize>,

    /// Largest number of congruence classes the enumerator may build
    #[arg(long, global = true, default_value_t = 1_000_000, value_name = "N")]
    max_classes: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the semigroup presented in FILE and print its elements
    Enumerate {
        file: PathBuf,
        /// Also print the full Cayley table
        #[arg(long)]
        table: bool,
    },
    /// Invariant report for the semigroup presented in FILE
    Analyze {
        file: PathBuf,
        /// Write the commuting graph in DOT format to this path
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Turn the star-free graph in FILE into a presentation whose
    /// commuting graph is that graph
    Realize {
        file: PathBuf,
        /// equational (uv = vu) or monomial (uv = vu = 0)
        #[arg(long, default_value = "equational")]
        variant: String,
        /// Write the presentation here instead of stdout
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Run one verification suite
    Verify {
        /// One of: prop3, prop5, prop6, knit3, rank, nullunion
        suite: String,
        /// Largest family index for the clique-number suites
        #[arg(long, default_value_t = 8, value_name = "N")]
        n_max: usize,
        /// Corpus size for the randomized suites
        #[arg(long, default_value_t = 1000, value_name = "N")]
        samples: usize,
    },
    /// Knit degree of the semigroup presented in FILE, with a witness path
    Knit { file: PathBuf },
    /// Sweep monomial presentation spaces and stream invariant reports
    Explore {
        /// Number of generators
        #[arg(long, default_value_t = 2, value_name = "D")]
        gens: usize,
        /// Number of reports to emit
        #[arg(long, default_value_t = 600, value_name = "N")]
        budget: usize,
        /// connected, girth>=N or diameter>=N; repeatable, conjunctive
        #[arg(long = "filter", value_name = "SPEC")]
        filters: Vec<String>,
    },
}

enum Failure {
    Lib(Error),
    Io(PathBuf, std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Lib(e)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Lib(e) => write!(f, "{e}"),
            Failure::Io(path, e) => write!(f, "{}: {e}", path.display()),
        }
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Lib(Error::Parse { .. }) => 2,
            Failure::Lib(Error::BudgetExceeded(_)) => 3,
            Failure::Lib(_) => 4,
            Failure::Io(..) => 1,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Enumerate { file, table } => cmd_enumerate(cli, file, *table),
        Command::Analyze { file, dot } => cmd_analyze(cli, file, dot.as_deref()),
        Command::Realize { file, variant, out } => cmd_realize(cli, file, variant, out.as_deref()),
        Command::Verify {
            suite,
            n_max,
            samples,
        } => cmd_verify(cli, suite, *n_max, *samples),
        Command::Knit { file } => cmd_knit(cli, file),
        Command::Explore {
            gens,
            budget,
            filters,
        } => cmd_explore(cli, *gens, *budget, filters),
    }
}

fn budget(cli: &Cli) -> EnumerationBudget {
    EnumerationBudget {
        max_word_length: cli.max_len.unwrap_or(8),
        max_classes: cli.max_classes,
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn load_semigroup(cli: &Cli, path: &Path) -> Result<FiniteSemigroup, Failure> {
    let text = read_file(path)?;
    let p = Presentation::parse(&text)?;
    let (s, _) = enumerate(&p, &budget(cli))?;
    Ok(s)
}

fn cmd_enumerate(cli: &Cli, file: &Path, table: bool) -> Result<u8, Failure> {
    let s = load_semigroup(cli, file)?;
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&s).expect("serializable"));
        return Ok(0);
    }
    println!("order: {}", s.order());
    println!("elements: {}", s.element_names().join(", "));
    if table {
        println!("table:");
        for x in 0..s.order() {
            let row: Vec<&str> = (0..s.order())
                .map(|y| s.element_name(s.mul(x, y)))
                .collect();
            println!("{}: {}", s.element_name(x), row.join(" "));
        }
    }
    Ok(0)
}

fn cmd_analyze(cli: &Cli, file: &Path, dot: Option<&Path>) -> Result<u8, Failure> {
    let s = load_semigroup(cli, file)?;
    let report = InvariantReport::for_semigroup(&s)?;
    if let Some(path) = dot {
        write_file(path, &commuting_graph(&s).to_dot())?;
    }
    if cli.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("serializable")
        );
        return Ok(0);
    }
    if report.vacuous {
        println!("commutative semigroup; the commuting graph is empty and its invariants are vacuous");
    }
    println!("order: {}", report.order);
    println!("center size: {}", report.center_size);
    println!("graph order: {}", report.graph.order);
    println!("graph size: {}", report.graph.size);
    println!("clique number: {}", report.graph.clique_number);
    match report.graph.girth {
        Some(g) => println!("girth: {g}"),
        None => println!("girth: infinite"),
    }
    match report.graph.diameter {
        Some(d) => println!("diameter: {d}"),
        None => println!("diameter: disconnected"),
    }
    println!("chromatic number: {}", report.graph.chromatic_number);
    println!("connected: {}", report.graph.is_connected);
    println!("star free: {}", report.graph.is_star_free);
    match report.knit_degree {
        Some(k) => println!("knit degree: {k}"),
        None => println!("knit degree: none"),
    }
    Ok(0)
}

fn cmd_realize(cli: &Cli, file: &Path, variant: &str, out: Option<&Path>) -> Result<u8, Failure> {
    let text = read_file(file)?;
    let g = Graph::parse(&text)?;
    let variant: RealizationVariant = variant.parse()?;
    let p = realize_graph(&g, variant)?;
    let rendered = p.to_string();
    match out {
        Some(path) => write_file(path, &rendered)?,
        None => print!("{rendered}"),
    }
    let _ = cli;
    Ok(0)
}

fn cmd_verify(cli: &Cli, suite: &str, n_max: usize, samples: usize) -> Result<u8, Failure> {
    let opts = VerifyOptions {
        n_max,
        samples,
        seed: cli.seed,
    };
    let result = run_suite(suite, &opts)?;
    if cli.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&result).expect("serializable")
        );
    } else {
        let verdict = if result.passed() { "pass" } else { "FAIL" };
        println!(
            "{}: {}/{} {} ({} ms)",
            result.suite, result.cases_passed, result.cases_run, verdict, result.wall_time_ms
        );
        if let Some(failure) = &result.first_failure {
            println!("first failure: {failure}");
        }
    }
    Ok(if result.passed() { 0 } else { 5 })
}

fn cmd_knit(cli: &Cli, file: &Path) -> Result<u8, Failure> {
    let s = load_semigroup(cli, file)?;
    let path = shortest_left_path(&s);
    if cli.json {
        let value = match &path {
            Some(p) => serde_json::json!({
                "knit_degree": p.length(),
                "witness": p.vertices.iter().map(|&i| s.element_name(i)).collect::<Vec<_>>(),
            }),
            None => serde_json::json!({ "knit_degree": null, "witness": null }),
        };
        println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
        return Ok(0);
    }
    match path {
        Some(p) => {
            println!("knit degree: {}", p.length());
            let names: Vec<&str> = p.vertices.iter().map(|&i| s.element_name(i)).collect();
            println!("witness: {}", names.join(" - "));
        }
        None => println!("knit degree: none"),
    }
    Ok(0)
}

fn cmd_explore(cli: &Cli, gens: usize, budget: usize, filters: &[String]) -> Result<u8, Failure> {
    let mut cfg = ExploreConfig::new(gens, cli.max_len.unwrap_or(3), budget, cli.seed);
    for spec in filters {
        cfg.filter.add_spec(spec)?;
    }
    let (records, summary) = explore(&cfg)?;
    for record in &records {
        println!("{}", serde_json::to_string(record).expect("serializable"));
    }
    if cli.json {
        eprintln!("{}", serde_json::to_string(&summary).expect("serializable"));
    } else {
        eprintln!(
            "attempted {}, certified {}, emitted {}, too large {}, filtered out {}{}",
            summary.attempted,
            summary.certified,
            summary.emitted,
            summary.too_large,
            summary.filtered_out,
            if summary.exhaustive {
                " (exhaustive sweep)"
            } else {
                ""
            }
        );
    }
    Ok(0)
}
