use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use complete_ideals::Exponent;
use complete_ideals_cli::{batch, run_text, CliError, Command};

/// Exact computations with complete ideals in two-dimensional regular local rings.
#[derive(Parser)]
#[command(name = "cideal", version)]
struct Args {
    /// Input document; `-` or absent reads standard input.
    #[arg(short, long, global = true)]
    input: Option<PathBuf>,
    /// Add `#` trace lines.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check every statement of the document.
    Validate,
    /// Print the document in canonical form.
    Emit,
    /// Proximity and intersection matrices.
    Matrix {
        name: String,
    },
    /// Canonical divisor of a cluster.
    Canonical {
        name: String,
    },
    /// Least antinef divisor above a divisor.
    Unload {
        name: String,
    },
    /// Factorization into simple ideals.
    Factor {
        name: String,
    },
    Colength {
        name: String,
    },
    Order {
        name: String,
    },
    /// Multiplier ideal at exponent c.
    Mult {
        name: String,
        #[arg(short, value_parser = exponent)]
        c: Exponent,
        /// Compare the result with another ideal; mismatch exits with 3.
        #[arg(long)]
        equals: Option<String>,
    },
    /// Jumping numbers up to `max`.
    Jump {
        name: String,
        #[arg(long, value_parser = exponent)]
        max: Exponent,
    },
    /// Write an ideal as a multiplier ideal.
    Realize {
        name: String,
        /// Exponent to certify instead of the computed one.
        #[arg(long, value_parser = exponent)]
        c: Option<Exponent>,
        /// Chain lengths, one per Rees component.
        #[arg(long, value_delimiter = ',')]
        chains: Option<Vec<u64>>,
        /// Write a re-parseable certificate document here.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Is a simple ideal an adjoint ideal?
    Adjoint {
        name: String,
    },
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Re-check every certificate statement.
    Verify,
    /// Realize every ideal and check every certificate of several documents.
    Batch {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Exhaustive antinef closure compared with unloading.
    Closure { name: String },
    /// Divisorial and Newton-polygon multiplier ideals of a monomial ideal.
    Cross {
        name: String,
        #[arg(short, value_parser = exponent)]
        c: Exponent,
    },
}

fn exponent(s: &str) -> Result<Exponent, String> {
    s.parse::<Exponent>().map_err(|e| e.to_string())
}

fn read_input(path: &Option<PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) if p.as_os_str() != "-" => Ok(std::fs::read_to_string(p)?),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let (cmd, cert_path) = match args.command {
        Cmd::Batch { files } => {
            let (text, code) = batch(&files);
            print!("{text}");
            return ExitCode::from(code as u8);
        }
        Cmd::Validate => (Command::Validate, None),
        Cmd::Emit => (Command::Emit, None),
        Cmd::Matrix { name } => (Command::Matrix(name), None),
        Cmd::Canonical { name } => (Command::Canonical(name), None),
        Cmd::Unload { name } => (Command::Unload(name), None),
        Cmd::Factor { name } => (Command::Factor(name), None),
        Cmd::Colength { name } => (Command::Colength(name), None),
        Cmd::Order { name } => (Command::Order(name), None),
        Cmd::Mult { name, c, equals } => (Command::Mult { name, c, equals }, None),
        Cmd::Jump { name, max } => (Command::Jump { name, max }, None),
        Cmd::Realize { name, c, chains, certificate } => (Command::Realize { name, c, chains }, certificate),
        Cmd::Adjoint { name } => (Command::Adjoint(name), None),
        Cmd::Oracle(OracleCmd::Closure { name }) => (Command::OracleClosure(name), None),
        Cmd::Oracle(OracleCmd::Cross { name, c }) => (Command::OracleCross { name, c }, None),
        Cmd::Verify => (Command::Verify, None),
    };
    let result = read_input(&args.input).and_then(|text| {
        let report = run_text(&cmd, &text, args.verbose)?;
        if let (Some(path), Some(doc)) = (cert_path, &report.certificate) {
            std::fs::write(path, doc.emit())?;
        }
        Ok(report)
    });
    match result {
        Ok(report) => {
            print!("{}", report.text());
            ExitCode::from(report.exit as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
