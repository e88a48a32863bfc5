use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use agroupoid::enumerate::{enumerate, ClassFilter, EnumerationSpec, Strategy};
use agroupoid::lattice::{all_congruences, DEFAULT_LATTICE_BOUND};
use agroupoid::verify::{run_all, VerifyConfig};
use agroupoid::{classify, decompose, derived_groupoid, parse_mag, CompletelyInverse, Error, StrongSemilattice};
use clap::{Parser, Subcommand};

/// Congruences on finite completely inverse AG**-groupoids.
#[derive(Parser)]
#[command(name = "agroupoid", version)]
struct Cli {
    /// Worker threads for parallel stages (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a table against the groupoid laws.
    Check { file: PathBuf },
    /// Print μ, σ, τ and π.
    Analyze { file: PathBuf },
    /// List every congruence with its markers.
    Congruences {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_LATTICE_BOUND)]
        max_order: usize,
    },
    /// Print the congruence lattice with meet and join tables.
    Lattice {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_LATTICE_BOUND)]
        max_order: usize,
    },
    /// Write a completely inverse AG**-groupoid as a strong semilattice.
    Decompose { file: PathBuf },
    /// Read a strong semilattice and write its table.
    Compose { file: PathBuf },
    /// Apply a·b = a⁻¹b to a commutative inverse semigroup.
    Derive { file: PathBuf },
    /// List groupoids of one order and class.
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        class: ClassFilter,
        /// Print only the number of tables.
        #[arg(long)]
        census_only: bool,
        #[arg(long, default_value = "filter")]
        strategy: Strategy,
        /// Every labelled table instead of one per isomorphism class.
        #[arg(long)]
        labeled: bool,
    },
    /// Check the theory on every completely inverse groupoid up to an order.
    Verify {
        #[arg(long)]
        order: usize,
        /// Run a single check by id.
        #[arg(long)]
        only: Option<String>,
    },
}

enum Failure {
    Input(String),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &PathBuf) -> Result<agroupoid::Groupoid, Failure> {
    let text = read_input(path)?;
    parse_mag(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn run(command: Command) -> Result<String, Failure> {
    let mut out = String::new();
    match command {
        Command::Check { file } => {
            let g = load(&file)?;
            write!(out, "{}", classify(&g)).unwrap();
        }
        Command::Analyze { file } => {
            let g = load(&file)?;
            let s = CompletelyInverse::new(&g)?.suite();
            for (name, c) in [("mu", &s.mu), ("sigma", &s.sigma), ("tau", &s.tau), ("pi", &s.pi)] {
                writeln!(out, "{name}: {c}").unwrap();
            }
        }
        Command::Congruences { file, max_order } => {
            let g = load(&file)?;
            let lat = all_congruences(&g, max_order)?;
            for (i, (r, m)) in lat.congruences.iter().zip(&lat.markers).enumerate() {
                let set: Vec<&str> = m.fields().iter().filter(|(_, v)| *v).map(|(n, _)| *n).collect();
                writeln!(out, "{i}: {} [{}]", r.display(g.names()), set.join(" ")).unwrap();
            }
        }
        Command::Lattice { file, max_order } => {
            let g = load(&file)?;
            write!(out, "{}", all_congruences(&g, max_order)?).unwrap();
        }
        Command::Decompose { file } => {
            let g = load(&file)?;
            write!(out, "{}", decompose(&g)?).unwrap();
        }
        Command::Compose { file } => {
            let text = read_input(&file)?;
            let s = StrongSemilattice::parse(&text)
                .map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
            write!(out, "{}", s.compose()?).unwrap();
        }
        Command::Derive { file } => {
            let g = load(&file)?;
            write!(out, "{}", derived_groupoid(&g)?).unwrap();
        }
        Command::Enumerate {
            order,
            class,
            census_only,
            strategy,
            labeled,
        } => {
            let mut spec = EnumerationSpec::new(order, class).with_strategy(strategy);
            if labeled {
                spec = spec.labeled();
            }
            let tables = enumerate(&spec)?;
            if census_only {
                writeln!(out, "{}", tables.len()).unwrap();
            } else {
                let blocks: Vec<String> = tables.iter().map(|g| g.to_string()).collect();
                out.push_str(&blocks.join("\n"));
            }
        }
        Command::Verify { order, only } => {
            let mut config = VerifyConfig::new(order);
            config.only = only;
            let report = run_all(&config)?;
            writeln!(out, "{report}").unwrap();
            if !report.passed() {
                return Err(Failure::Verify(out));
            }
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(out) => {
            let _ = io::stdout().write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(Failure::Verify(out)) => {
            let _ = io::stdout().write_all(out.as_bytes());
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
