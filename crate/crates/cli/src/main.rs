use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use quasik_core::group::{FiniteGroup, GSet};
use quasik_core::io::{read_group, read_gset};
use quasik_core::loop_groupoid::lambda_skeleton;
use quasik_core::quasi::{qk_compute, tate_export};
use quasik_core::verify::{builtin_corpus, load_corpus, run_suite, Status, VerifyReport};
use quasik_core::Error;

#[derive(Parser)]
#[command(
    name = "quasik",
    version,
    about = "Quasi-theory rings of finite group actions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Conjugacy classes of a group.
    Classes {
        #[arg(short = 'g', long = "group")]
        group: PathBuf,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Commuting n-tuples up to simultaneous conjugacy.
    Tuples {
        #[arg(short = 'g', long = "group")]
        group: PathBuf,
        #[arg(short = 'n', default_value_t = 1)]
        n: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// The ring QK_{n,G}(X); X defaults to a point.
    Qk {
        #[arg(short = 'g', long = "group")]
        group: PathBuf,
        #[arg(short = 'x', long = "gset")]
        gset: Option<PathBuf>,
        #[arg(short = 'n', default_value_t = 1)]
        n: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Runs a property suite over the built-in corpus or user groups.
    Verify {
        suite: String,
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Tate-curve basis symbols as JSON.
    ExportTate {
        #[arg(short = 'g', long = "group")]
        group: PathBuf,
        #[arg(short = 'x', long = "gset")]
        gset: Option<PathBuf>,
        #[arg(short = 'n', default_value_t = 1)]
        n: usize,
    },
}

const EXIT_VERIFY: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::Input { .. } | Error::Io(_) | Error::Json(_) => EXIT_INPUT,
        _ => EXIT_VERIFY,
    }
}

fn load_group(path: &Path) -> Result<Arc<FiniteGroup>, Error> {
    read_group(path).map(Arc::new).map_err(|e| match e {
        Error::Io(io) => Error::input(path.display().to_string(), io.to_string()),
        other => other,
    })
}

fn load_gset(path: Option<&Path>, group: &Arc<FiniteGroup>) -> Result<GSet, Error> {
    match path {
        None => Ok(GSet::point(group.clone())),
        Some(p) => read_gset(p, group.clone()).map_err(|e| match e {
            Error::Io(io) => Error::input(p.display().to_string(), io.to_string()),
            other => other,
        }),
    }
}

fn positive(n: usize) -> Result<usize, Error> {
    if n == 0 {
        Err(Error::input("n", "must be at least 1"))
    } else {
        Ok(n)
    }
}

fn print_json(v: &impl serde::Serialize) -> Result<(), Error> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn classes(path: &Path, format: Format) -> Result<(), Error> {
    let g = load_group(path)?;
    let rows: Vec<serde_json::Value> = g
        .conjugacy_classes()
        .iter()
        .map(|c| {
            let rep = g.element(c.representative);
            serde_json::json!({
                "representative": rep.images(),
                "cycles": rep.to_string(),
                "size": c.size(),
                "order": g.element_order(c.representative),
            })
        })
        .collect();
    match format {
        Format::Json => print_json(&serde_json::json!({
            "order": g.order(),
            "count": rows.len(),
            "classes": rows,
        })),
        Format::Table => {
            println!(
                "{:>4}  {:<24} {:>6} {:>6}",
                "#", "representative", "size", "order"
            );
            for (i, r) in rows.iter().enumerate() {
                println!(
                    "{:>4}  {:<24} {:>6} {:>6}",
                    i,
                    r["cycles"].as_str().unwrap_or_default(),
                    r["size"].as_u64().unwrap_or_default(),
                    r["order"].as_u64().unwrap_or_default()
                );
            }
            println!("{} classes, |G| = {}", rows.len(), g.order());
            Ok(())
        }
    }
}

fn tuples(path: &Path, n: usize, format: Format) -> Result<(), Error> {
    let g = load_group(path)?;
    let sk = lambda_skeleton(&GSet::point(g.clone()), positive(n)?)?;
    let rows: Vec<serde_json::Value> = sk
        .components()
        .iter()
        .map(|c| {
            let cycles: Vec<String> = c.sigma.entries().iter().map(ToString::to_string).collect();
            serde_json::json!({
                "sigma": c.sigma.images(),
                "cycles": cycles,
                "centralizer_order": c.stabilizer.order(),
                "class_size": g.order() / c.stabilizer.order(),
            })
        })
        .collect();
    match format {
        Format::Json => {
            print_json(&serde_json::json!({"n": n, "count": rows.len(), "tuples": rows}))
        }
        Format::Table => {
            println!(
                "{:>4}  {:<36} {:>10} {:>6}",
                "#", "sigma", "|C(sigma)|", "class"
            );
            for (i, r) in rows.iter().enumerate() {
                let cycles: Vec<&str> = r["cycles"]
                    .as_array()
                    .map(|a| a.iter().filter_map(|v| v.as_str()).collect())
                    .unwrap_or_default();
                println!(
                    "{:>4}  {:<36} {:>10} {:>6}",
                    i,
                    cycles.join(", "),
                    r["centralizer_order"].as_u64().unwrap_or_default(),
                    r["class_size"].as_u64().unwrap_or_default()
                );
            }
            println!("{} classes of commuting {n}-tuples", rows.len());
            Ok(())
        }
    }
}

fn qk(group: &Path, gset: Option<&Path>, n: usize, format: Format) -> Result<(), Error> {
    let g = load_group(group)?;
    let x = load_gset(gset, &g)?;
    let ring = qk_compute(&x, positive(n)?)?;
    match format {
        Format::Json => print_json(&ring.to_json()),
        Format::Table => {
            println!(
                "{:>4}  {:<30} {:>5} {:>6} {:>5}  q-degrees",
                "#", "sigma", "orbit", "|stab|", "rank"
            );
            for (i, c) in ring.components().iter().enumerate() {
                let sigma: Vec<String> =
                    c.sigma.entries().iter().map(ToString::to_string).collect();
                let degrees: Vec<String> = ring
                    .module(i)
                    .basis()
                    .iter()
                    .map(|b| format!("{}:{}", b.char_degree, b.q_degree))
                    .collect();
                println!(
                    "{:>4}  {:<30} {:>5} {:>6} {:>5}  {}",
                    i,
                    sigma.join(", "),
                    c.orbit_rep,
                    c.stabilizer.order(),
                    ring.module(i).rank(),
                    degrees.join(" ")
                );
            }
            println!("total rank {}", ring.rank());
            Ok(())
        }
    }
}

fn print_report(report: &VerifyReport, format: Format) -> Result<(), Error> {
    match format {
        Format::Json => print_json(report),
        Format::Table => {
            for c in &report.checks {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::CapExceeded => "CAP ",
                };
                println!(
                    "{tag} [{}] {}: expected {} actual {}",
                    c.suite, c.name, c.expected, c.actual
                );
            }
            println!(
                "{} checks: {} passed, {} failed, {} over cap",
                report.checks.len(),
                report.count(Status::Pass),
                report.count(Status::Fail),
                report.count(Status::CapExceeded)
            );
            Ok(())
        }
    }
}

fn verify(suite: &str, corpus: Option<&Path>, format: Format) -> Result<u8, Error> {
    let (entries, builtin) = match corpus {
        Some(p) => (
            load_corpus(p).map_err(|e| match e {
                Error::Io(io) => Error::input(p.display().to_string(), io.to_string()),
                other => other,
            })?,
            false,
        ),
        None => (builtin_corpus(), true),
    };
    let report = run_suite(suite, &entries, builtin)?;
    print_report(&report, format)?;
    Ok(if report.cap_exceeded() {
        EXIT_CAP
    } else if report.passed() {
        0
    } else {
        EXIT_VERIFY
    })
}

fn export_tate(group: &Path, gset: Option<&Path>, n: usize) -> Result<(), Error> {
    let g = load_group(group)?;
    let x = load_gset(gset, &g)?;
    print_json(&tate_export(&*qk_compute(&x, positive(n)?)?))
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Classes { group, format } => classes(&group, format).map(|_| 0),
        Command::Tuples { group, n, format } => tuples(&group, n, format).map(|_| 0),
        Command::Qk {
            group,
            gset,
            n,
            format,
        } => qk(&group, gset.as_deref(), n, format).map(|_| 0),
        Command::Verify {
            suite,
            corpus,
            format,
        } => verify(&suite, corpus.as_deref(), format),
        Command::ExportTate { group, gset, n } => {
            export_tate(&group, gset.as_deref(), n).map(|_| 0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
