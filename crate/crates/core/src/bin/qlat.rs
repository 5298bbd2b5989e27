use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use qlat::buried::{buried3, conjecture_scan, AMaxPolicy};
use qlat::enumerate::{is_isometric, isometry, short_vectors};
use qlat::local::{buried_in_genus_detail, buried_over_qp, buried_over_zp, hilbert, same_genus, Place};
use qlat::paperlab::{all_passed, run_suite, SuiteConfig};
use qlat::represent::{embeds, StageScript};
use qlat::{io, Execution, Lattice, Mat, NamedLattice};

#[derive(Parser)]
#[command(name = "qlat", version, about = "Exact computations with positive definite integral lattices")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

/// Lattice arguments accept a file (JSON or text), a name such as `A2`,
/// `I3`, `L(4)`, or an inline Gram matrix like `[[2,1],[1,2]]`.
#[derive(Subcommand)]
enum Cmd {
    /// Vectors of norm at most the bound.
    Short {
        lattice: String,
        #[arg(long)]
        bound: i128,
    },
    /// Isometry test; prints the transformation when one exists.
    Isometric { first: String, second: String },
    /// Representation of the first lattice by the second (exit 1 if none).
    Embeds { small: String, big: String },
    /// Candidate lattices from one of the shipped case analyses.
    Candidates {
        #[arg(long)]
        script: StageScript,
    },
    /// Local computations.
    Local {
        #[command(subcommand)]
        cmd: LocalCmd,
    },
    /// Whether two binaries are buried in rank 3.
    Buried3 {
        first: String,
        second: String,
        #[arg(long, default_value_t = 4000)]
        amax: i128,
    },
    /// Genus-buried pairs versus rank-3 burial, per determinant.
    ScanConjecture {
        #[arg(long, default_value_t = 1)]
        from: i128,
        #[arg(long)]
        to: i128,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Bound for common values as a multiple of the determinant.
        #[arg(long, default_value_t = 4)]
        amax_factor: i128,
        #[arg(long)]
        resume: Option<PathBuf>,
    },
    /// Reproduces the finite computations check by check.
    VerifyPaper {
        #[arg(long)]
        check: Vec<String>,
        #[arg(long, default_value_t = 2000)]
        bound: i128,
        #[arg(long, default_value_t = 300)]
        conjecture_to: i128,
        /// Gram matrix file for the rank 7 glue lattice.
        #[arg(long)]
        glue: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum LocalCmd {
    /// Hilbert symbol `(a, b)_p`; `p` may be `inf`.
    Hilbert { a: i128, b: i128, p: Place },
    /// Genus equality.
    Genus { first: String, second: String },
    /// Burial in rank `n` over ℤ_p (all relevant primes if `--p` is absent).
    Buried {
        first: String,
        second: String,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        p: Option<i128>,
    },
}

fn lattice_arg(s: &str) -> Result<Lattice, String> {
    if Path::new(s).exists() {
        return io::read_file(Path::new(s)).map_err(|e| e.to_string());
    }
    if let Ok(tag) = s.parse::<NamedLattice>() {
        return Ok(tag.lattice());
    }
    let rows: Vec<Vec<i128>> = serde_json::from_str(s).map_err(|_| format!("not a file, name or Gram matrix: {s}"))?;
    Lattice::new(Mat::from_rows(&rows)).map_err(|e| e.to_string())
}

fn print<T: Serialize>(v: &T) {
    // a closed pipe (`| head`) is not an error worth reporting
    let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::Short { lattice, bound } => {
            let l = lattice_arg(&lattice)?;
            print(&short_vectors(&l, bound));
        }
        Cmd::Isometric { first, second } => {
            let (a, b) = (lattice_arg(&first)?, lattice_arg(&second)?);
            let t = isometry(&a, &b);
            print(&json!({ "isometric": t.is_some(), "transform": t.map(|m| m.to_rows()) }));
            return Ok(if is_isometric(&a, &b) { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Cmd::Embeds { small, big } => {
            let (s, b) = (lattice_arg(&small)?, lattice_arg(&big)?);
            return Ok(match embeds(&s, &b) {
                Some(w) => {
                    print(&w.t.to_rows());
                    ExitCode::SUCCESS
                }
                None => ExitCode::from(1),
            });
        }
        Cmd::Candidates { script } => {
            let set = script.run().map_err(|e| e.to_string())?;
            print(&set);
        }
        Cmd::Local { cmd } => match cmd {
            LocalCmd::Hilbert { a, b, p } => {
                if a == 0 || b == 0 {
                    return Err("Hilbert symbol needs non-zero arguments".into());
                }
                print(&json!({ "a": a, "b": b, "place": p, "symbol": hilbert(a, b, p) }));
            }
            LocalCmd::Genus { first, second } => {
                let (a, b) = (lattice_arg(&first)?, lattice_arg(&second)?);
                print(&json!({ "same_genus": same_genus(&a, &b) }));
            }
            LocalCmd::Buried { first, second, rank, p } => {
                let (a, b) = (lattice_arg(&first)?, lattice_arg(&second)?);
                if a.rank() != b.rank() || rank < a.rank() {
                    return Err("need equal ranks not above --rank".into());
                }
                match p {
                    Some(p) => print(&json!({
                        "p": p,
                        "over_zp": buried_over_zp(&a, &b, rank, p),
                        "over_qp": buried_over_qp(&a, &b, rank, Place::Finite(p)),
                    })),
                    None => print(&buried_in_genus_detail(&a, &b, rank)),
                }
            }
        },
        Cmd::Buried3 { first, second, amax } => {
            let (a, b) = (lattice_arg(&first)?, lattice_arg(&second)?);
            print(&buried3(&a, &b, amax).map_err(|e| e.to_string())?);
        }
        Cmd::ScanConjecture { from, to, jobs, amax_factor, resume } => {
            let reports = conjecture_scan(from, to, AMaxPolicy::Multiple(amax_factor), Execution::jobs(jobs), resume.as_deref());
            let mut out = std::io::stdout().lock();
            let mut bad = false;
            for r in &reports {
                bad |= !r.counterexamples.is_empty();
                writeln!(out, "{}", serde_json::to_string(r).expect("serializable")).map_err(|e| e.to_string())?;
            }
            return Ok(if bad { ExitCode::from(1) } else { ExitCode::SUCCESS });
        }
        Cmd::VerifyPaper { check, bound, conjecture_to, glue, json } => {
            let glue = glue.map(|p| io::read_file(&p)).transpose().map_err(|e| e.to_string())?;
            let cfg = SuiteConfig { bound, conjecture_to, glue };
            let results = run_suite(&check, &cfg, Execution::from_env());
            for r in &results {
                let status = serde_json::to_value(&r.status).expect("serializable");
                eprintln!("{:<40} {}", r.id, status.as_str().unwrap_or_default());
            }
            let report = serde_json::to_string_pretty(&results).expect("serializable");
            match json {
                Some(path) => std::fs::write(&path, report + "\n").map_err(|e| e.to_string())?,
                None => println!("{report}"),
            }
            return Ok(if all_passed(&results) { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
