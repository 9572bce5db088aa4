//! `bicanon`: batch verification of the built-in families and of
//! user-supplied family/map definition files.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bicanon_core::arith::{admissible_pairs, allowed_orders};
use bicanon_core::report::input::{self, Ingested};
use bicanon_core::report::{verify_fixtures, verify_input, Category, Certificate, Fixtures};
use bicanon_core::Error;
use clap::{Parser, Subcommand, ValueEnum};

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(
    name = "bicanon",
    version,
    about = "Exact verification of non-semi-symplectic Enriques automorphisms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run checks and print one line per record.
    Verify {
        #[arg(long, default_value = "all")]
        family: FamilyArg,
        #[arg(long, default_value = "all")]
        check: CheckArg,
        /// Family/map definition file (JSON). Entries named `family-k` or
        /// `sigmak` replace the built-in fixtures.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Write the certificate as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print admissible (order, index) pairs, allowed orders and the pruning trace.
    Classify,
    /// Write the full certificate.
    Report {
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Write the built-in families and maps as definition files.
    Fixtures {
        #[arg(long)]
        dir: PathBuf,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum FamilyArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
    All,
}

impl FamilyArg {
    fn number(self) -> Option<u32> {
        match self {
            FamilyArg::One => Some(1),
            FamilyArg::Two => Some(2),
            FamilyArg::Three => Some(3),
            FamilyArg::All => None,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum CheckArg {
    Invariance,
    Order,
    Index,
    Cover,
    Moduli,
    Classification,
    Lattice,
    All,
}

impl CheckArg {
    fn category(self) -> Option<Category> {
        match self {
            CheckArg::Invariance => Some(Category::Invariance),
            CheckArg::Order => Some(Category::Order),
            CheckArg::Index => Some(Category::Index),
            CheckArg::Cover => Some(Category::Cover),
            CheckArg::Moduli => Some(Category::Moduli),
            CheckArg::Classification => Some(Category::Classification),
            CheckArg::Lattice => Some(Category::Lattice),
            CheckArg::All => None,
        }
    }
}

fn load(path: &Path) -> Result<Ingested, String> {
    let src = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    input::ingest(&src).map_err(|e| match e {
        Error::Parse { position, message } => {
            format!("{}: parse error at byte {position}: {message}", path.display())
        }
        other => format!("{}: {other}", path.display()),
    })
}

fn certificate(input: Option<&Path>) -> Result<Certificate, String> {
    let Some(path) = input else {
        return Ok(verify_fixtures(&Fixtures::builtin()));
    };
    let ingested = load(path)?;
    let mut cert = verify_fixtures(&Fixtures::overridden_by(&ingested));
    let custom = verify_input(&ingested);
    cert.records.extend(custom.records.into_iter().map(|mut r| {
        r.id = format!("input/{}", r.id);
        r
    }));
    Ok(cert.filtered(None, None))
}

fn write(path: &Path, contents: &str) -> Result<(), String> {
    fs::write(path, contents).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn print_records(cert: &Certificate) {
    for r in &cert.records {
        let detail = r
            .witness
            .as_deref()
            .map_or_else(|| r.value.to_string(), |w| format!("witness: {w}"));
        println!("{}  {}  {}", r.result, r.id, detail);
    }
    println!("{} records, overall {}", cert.records.len(), cert.status);
}

fn status_code(cert: &Certificate) -> ExitCode {
    if cert.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Verify {
            family,
            check,
            input,
            out,
        } => {
            let cert = certificate(input.as_deref())?.filtered(family.number(), check.category());
            print_records(&cert);
            if let Some(out) = out {
                write(&out, &cert.to_json())?;
            }
            Ok(status_code(&cert))
        }
        Command::Classify => {
            let cls = admissible_pairs();
            let pairs: Vec<String> = cls.admissible.iter().map(|(n, i)| format!("({n},{i})")).collect();
            println!("admissible (order, index): {}", pairs.join(" "));
            let orders: Vec<String> = allowed_orders().iter().map(u32::to_string).collect();
            println!("allowed orders: {}", orders.join(" "));
            println!("pruned:");
            for p in &cls.pruned {
                println!(
                    "  ({},{})  {}  [{}]",
                    p.order,
                    p.index,
                    p.rule.id(),
                    p.rule.citation().id
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Report { out, input } => {
            let cert = certificate(input.as_deref())?;
            write(&out, &cert.to_json())?;
            println!("{} records, overall {}", cert.records.len(), cert.status);
            Ok(status_code(&cert))
        }
        Command::Fixtures { dir } => {
            fs::create_dir_all(&dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
            for k in 1..=3 {
                let file = input::builtin_fixture(k).map_err(|e| e.to_string())?;
                write(&dir.join(format!("family-{k}.json")), &input::to_json(&file))?;
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
