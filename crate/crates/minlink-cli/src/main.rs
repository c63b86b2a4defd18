//! `minlink` command line: solve, validate, gen, bench.
//!
//! Exit codes: 0 success, 1 invalid or unreadable instance, 2 internal
//! consistency failure, 3 oracle mismatch.

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use minlink_cli::bench::{rows_to_csv, run_sweep, SweepSpec};
use minlink_cli::format::{parse_instance, result_to_json};
use minlink_cli::gen::{generate_instance, GenParams};
use minlink_cli::svg::emit_svg;
use minlink_cli::{solve, SolveError};
use minlink_core::oracle::{compare_ledgers, oracle_reachable_sets, ORACLE_DEFAULT_TURNS};

const EXIT_INVALID: u8 = 1;
const EXIT_INTERNAL: u8 = 2;
const EXIT_ORACLE_MISMATCH: u8 = 3;

#[derive(Parser)]
#[command(name = "minlink", version, about = "Minimum-link tours through ordered segments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file and print the link count.
    Solve {
        /// Path to the instance document.
        file: String,
        /// Write the result document to this path.
        #[arg(long = "emit-json", value_name = "PATH")]
        emit_json: Option<String>,
        /// Write an SVG rendering to this path.
        #[arg(long = "emit-svg", value_name = "PATH")]
        emit_svg_path: Option<String>,
        /// Include the interval families in the result document.
        #[arg(long = "families")]
        families: bool,
        /// Recompute everything with the brute-force oracle and fail on any
        /// divergence.
        #[arg(long = "check-oracle")]
        check_oracle: bool,
    },
    /// Parse and validate an instance file.
    Validate {
        file: String,
    },
    /// Generate a random valid instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long = "c-size", default_value_t = 4)]
        c_size: usize,
        #[arg(long, default_value_t = 50)]
        bound: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the instance here instead of stdout.
        #[arg(long, value_name = "PATH")]
        out: Option<String>,
    },
    /// Run a benchmark sweep and emit CSV.
    Bench {
        /// Comma-separated list of segment counts.
        #[arg(long, value_delimiter = ',')]
        n: Vec<usize>,
        #[arg(long = "c-size", default_value_t = 4)]
        c_size: usize,
        /// Comma-separated list of seeds.
        #[arg(long, value_delimiter = ',', default_value = "0,1,2")]
        seeds: Vec<u64>,
        #[arg(long, default_value_t = 50)]
        bound: i64,
        /// Write the CSV here instead of stdout.
        #[arg(long, value_name = "PATH")]
        out: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn read_file(path: &str) -> Result<String, (u8, String)> {
    fs::read_to_string(path).map_err(|e| (EXIT_INVALID, format!("cannot read {path}: {e}")))
}

fn write_file(path: &str, content: &str) -> Result<(), (u8, String)> {
    fs::write(path, content).map_err(|e| (EXIT_INTERNAL, format!("cannot write {path}: {e}")))
}

fn run(cli: Cli) -> Result<(), (u8, String)> {
    match cli.command {
        Command::Solve {
            file,
            emit_json,
            emit_svg_path,
            families,
            check_oracle,
        } => {
            let text = read_file(&file)?;
            let inst =
                parse_instance(&text).map_err(|e| (EXIT_INVALID, e.to_string()))?;
            let solved = solve(&inst).map_err(|e| match e {
                SolveError::Invalid(msg) => (EXIT_INVALID, msg),
                SolveError::Internal(msg) => (EXIT_INTERNAL, msg),
            })?;
            println!("links: {}", solved.tour.link_count);
            if check_oracle {
                let brute = oracle_reachable_sets(&inst, ORACLE_DEFAULT_TURNS)
                    .map_err(|e| (EXIT_INTERNAL, e.to_string()))?;
                if let Some(diff) = compare_ledgers(&solved.ledger, &brute) {
                    return Err((EXIT_ORACLE_MISMATCH, diff.to_string()));
                }
                if brute.link_count() as usize != solved.tour.link_count {
                    return Err((
                        EXIT_ORACLE_MISMATCH,
                        format!(
                            "oracle link count {} differs from tour link count {}",
                            brute.link_count(),
                            solved.tour.link_count
                        ),
                    ));
                }
                let report = minlink_core::oracle::validate_tour(&inst, &solved.tour);
                if !report.ok() {
                    return Err((EXIT_ORACLE_MISMATCH, report.to_string()));
                }
                println!("oracle: ok");
            }
            if let Some(path) = emit_json {
                let doc = result_to_json(&solved.ledger, &solved.tour, solved.wall_ms, families);
                write_file(&path, &doc)?;
            }
            if let Some(path) = emit_svg_path {
                let svg = emit_svg(&inst, &solved.tour, families.then_some(&solved.ledger));
                write_file(&path, &svg)?;
            }
            Ok(())
        }
        Command::Validate { file } => {
            let text = read_file(&file)?;
            match parse_instance(&text) {
                Ok(inst) => {
                    let report = inst.validate();
                    print!("{report}");
                    if report.ok() {
                        println!("valid");
                        Ok(())
                    } else {
                        Err((EXIT_INVALID, "instance is invalid".to_string()))
                    }
                }
                Err(e) => Err((EXIT_INVALID, e.to_string())),
            }
        }
        Command::Gen {
            n,
            c_size,
            bound,
            seed,
            out,
        } => {
            let (_, text) = generate_instance(&GenParams {
                n,
                c_size,
                bound,
                seed,
            })
            .map_err(|e| (EXIT_INVALID, e.to_string()))?;
            match out {
                Some(path) => write_file(&path, &text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            }
        }
        Command::Bench {
            n,
            c_size,
            seeds,
            bound,
            out,
        } => {
            let spec = SweepSpec {
                ns: n,
                c_size,
                seeds,
                bound,
            };
            let rows = run_sweep(&spec).map_err(|e| (EXIT_INTERNAL, e))?;
            let csv = rows_to_csv(&rows);
            match out {
                Some(path) => write_file(&path, &csv),
                None => {
                    print!("{csv}");
                    Ok(())
                }
            }
        }
    }
}
