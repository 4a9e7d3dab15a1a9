//! Command-line driver for the graph C*-algebra engine.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ckengine::moves::{block_structure_report, out_split, unitary_group_summary};
use ckengine::parse::{parse_graph, parse_partition_file, parse_unitary_file};
use ckengine::script::{run_script_file, RunOptions};
use ckengine::{CkError, Mode};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CliMode {
    Exact,
    Float,
}

impl From<CliMode> for Mode {
    fn from(m: CliMode) -> Mode {
        match m {
            CliMode::Exact => Mode::Exact,
            CliMode::Float => Mode::Float,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "ckengine",
    version,
    about = "Exact symbolic computation in graph C*-algebras: normal forms, \
             quasi-free endomorphisms, finite-level matrix representations \
             and out-splitting moves."
)]
struct Cli {
    /// Coefficient arithmetic: exact Gaussian rationals or complex doubles.
    #[arg(long, global = true, value_enum, default_value = "exact")]
    mode: CliMode,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification script and write a JSON report.
    Run {
        /// Script file; relative paths inside resolve against its directory.
        script: PathBuf,
        /// Where to write the JSON report.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Seed for the randomized verification statements.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Parse a graph file and print adjacency, block structure and the
    /// standing-assumption report.
    CheckGraph { file: PathBuf },
    /// Run the Theorem-hypothesis check on a unitary over a graph.
    Hyp {
        graph: PathBuf,
        unitary: PathBuf,
    },
    /// Out-split a graph along a partition file and print the result.
    Outsplit {
        graph: PathBuf,
        partition: PathBuf,
        /// Also build the induced generator map and verify it.
        #[arg(long)]
        verify: bool,
    },
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let mode: Mode = cli.mode.into();
    match dispatch(cli.command, mode) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cmd: Command, mode: Mode) -> Result<u8, CkError> {
    match cmd {
        Command::Run {
            script,
            report,
            seed,
        } => {
            let opts = RunOptions {
                mode,
                seed,
                base_dir: PathBuf::from("."),
                report_path: report,
            };
            let (report, exit) = run_script_file(&script, &opts)?;
            for st in &report.statements {
                println!(
                    "[{}] line {}: {} {}",
                    st.status.to_uppercase(),
                    st.line,
                    st.text,
                    if st.detail.is_empty() {
                        String::new()
                    } else {
                        format!("-- {}", st.detail)
                    }
                );
            }
            println!(
                "{} statements: {} passed, {} failed, {} errors",
                report.summary.total,
                report.summary.passed,
                report.summary.failed,
                report.summary.errors
            );
            Ok(exit as u8)
        }
        Command::CheckGraph { file } => {
            let g = parse_graph(&std::fs::read_to_string(file)?)?;
            println!("vertices ({}):", g.vertex_count());
            for v in g.vertices() {
                println!("  {v}");
            }
            println!("edges ({}):", g.edge_count());
            let a = g.adjacency_matrix();
            println!("adjacency (rows = source, canonical vertex order):");
            for row in &a {
                println!(
                    "  [{}]",
                    row.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                );
            }
            println!("blocks of B:");
            for (v, w, n) in block_structure_report(&g) {
                println!("  {v} -> {w}: M_{n}");
            }
            println!("U(B) = {}", unitary_group_summary(&g));
            let rep = g.standing_assumption();
            println!(
                "transitive: {}; all cycles have exits: {}",
                rep.transitive, rep.all_cycles_have_exits
            );
            if !rep.sinks.is_empty() {
                println!("sinks: {}", rep.sinks.join(", "));
            }
            if !rep.sources.is_empty() {
                println!("sources: {}", rep.sources.join(", "));
            }
            Ok(0)
        }
        Command::Hyp { graph, unitary } => {
            let g = parse_graph(&std::fs::read_to_string(graph)?)?;
            let ast = parse_unitary_file(&std::fs::read_to_string(unitary)?)?;
            let u = ast.bind(&g, mode)?;
            let verdict = u.hypothesis_check();
            println!(
                "unitary `{}`: u D^1 u* != D^1 holds: {}",
                ast.name, verdict.holds
            );
            if let Some(w) = verdict.witness {
                println!(
                    "witness: vertex {}, projection over edges {{{}}}",
                    w.vertex,
                    w.edges.join(", ")
                );
            }
            Ok(0)
        }
        Command::Outsplit {
            graph,
            partition,
            verify,
        } => {
            let g = parse_graph(&std::fs::read_to_string(graph)?)?;
            let part = parse_partition_file(&std::fs::read_to_string(partition)?, &g)?;
            let f = out_split(&g, &part)?;
            print!("{}", f.to_text());
            println!("# U(B) of the split graph: {}", unitary_group_summary(&f));
            if verify {
                let mut map = ckengine::moves::induced_images(&g, &f, &part, mode)?;
                let report = map.verify_homomorphism()?;
                let carry = map.verify_diagonal_carry(3)?;
                println!(
                    "# induced map: {} identities checked, all pass: {}; diagonal carry to level 3: {}",
                    report.entries.len(),
                    report.all_pass(),
                    carry
                );
                if !report.all_pass() || !carry {
                    return Ok(1);
                }
            }
            Ok(0)
        }
    }
}
