//! `strickland-lab`: runs verification checks over parameter grids and
//! prints one JSON report per line.

mod checks;
mod enumerate;
mod grid;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use checks::{run_check, skipped, Limits};
use grid::{parse_grid, Job};
use report::{render_table, CheckReport, Params};

const DEFAULT_GRID: &str = include_str!("../grids/default.toml");

#[derive(Parser)]
#[command(name = "strickland-lab", version, about = "Exact checks of finite transchromatic combinatorics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Run checks one at a time, in order, for byte-identical output.
    #[arg(long, global = true)]
    serial: bool,
    /// Largest |A|^n n! for checks inside A wr S_n.
    #[arg(long, global = true)]
    max_order: Option<u64>,
    /// Largest degree for brute force over permutations.
    #[arg(long, global = true)]
    max_degree: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run one check, or every check of a grid file with `all`.
    Verify {
        #[arg(value_enum)]
        check: VerifyCheck,
        /// Grid file for `verify all`; the shipped default grid otherwise.
        #[arg(long)]
        grid: Option<PathBuf>,
        #[command(flatten)]
        params: ParamFlags,
    },
    /// List classes, subgroups or components.
    Enumerate {
        #[arg(value_enum)]
        what: EnumTarget,
        #[command(flatten)]
        params: ParamFlags,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyCheck {
    Rank,
    Height0,
    Norm,
    Diagram,
    Centralizers,
    Transfer,
    Appendix,
    Fibers,
    Components,
    Snf,
    Frobenius,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumTarget {
    Classes,
    Subgroups,
    Components,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args, Default)]
struct ParamFlags {
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    d: Option<u64>,
    /// Base group as cyclic orders, e.g. `2,2`; `1` is the trivial group.
    #[arg(long = "A")]
    a: Option<String>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    h: Option<u64>,
    #[arg(long)]
    l: Option<u64>,
    #[arg(long)]
    m: Option<u64>,
    /// Generator images, `;` between generators and `,` between coordinates.
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    count: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
}

impl ParamFlags {
    fn to_params(&self) -> Params {
        let mut p = Params::new();
        let ints = [
            ("p", self.p),
            ("k", self.k),
            ("d", self.d),
            ("n", self.n),
            ("h", self.h),
            ("l", self.l),
            ("m", self.m),
            ("count", self.count),
            ("seed", self.seed),
        ];
        for (key, v) in ints {
            if let Some(v) = v {
                p.insert(key.into(), Value::from(v));
            }
        }
        if let Some(a) = &self.a {
            p.insert("A".into(), Value::String(a.clone()));
        }
        if let Some(alpha) = &self.alpha {
            p.insert("alpha".into(), Value::String(alpha.clone()));
        }
        p
    }
}

fn check_name(c: VerifyCheck) -> &'static str {
    match c {
        VerifyCheck::Rank => "rank",
        VerifyCheck::Height0 => "height0",
        VerifyCheck::Norm => "norm",
        VerifyCheck::Diagram => "diagram",
        VerifyCheck::Centralizers => "centralizers",
        VerifyCheck::Transfer => "transfer",
        VerifyCheck::Appendix => "appendix",
        VerifyCheck::Fibers => "fibers",
        VerifyCheck::Components => "components",
        VerifyCheck::Snf => "snf",
        VerifyCheck::Frobenius => "frobenius",
        VerifyCheck::All => "all",
    }
}

fn worker_count() -> usize {
    std::env::var("STRICKLAND_LAB_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Runs one job into its reports; errors become a single failed report.
fn execute(job: &Job, limits: &Limits) -> (Vec<CheckReport>, Option<u8>) {
    let start = Instant::now();
    let outcome = run_check(&job.check, &job.params, limits);
    let ms = start.elapsed().as_millis() as u64;
    match outcome {
        Ok(mut reports) => {
            for r in &mut reports {
                r.elapsed_ms = ms;
            }
            (reports, None)
        }
        Err(e) => {
            let mut r = CheckReport::failed(&job.check, &job.params, e.to_string());
            r.elapsed_ms = ms;
            (vec![r], Some(e.exit_code()))
        }
    }
}

struct Summary {
    failed: bool,
    error_code: Option<u8>,
}

fn run_jobs(jobs: Vec<Job>, limits: Limits, serial: bool, format: Format) -> Summary {
    let mut summary = Summary {
        failed: false,
        error_code: None,
    };
    let mut collected: Vec<(usize, Vec<CheckReport>)> = Vec::new();
    let mut record = |idx: usize, reports: Vec<CheckReport>, code: Option<u8>, summary: &mut Summary| {
        summary.failed |= reports.iter().any(|r| !r.pass);
        if let Some(c) = code {
            summary.error_code = Some(summary.error_code.map_or(c, |old| old.max(c)));
        }
        if format == Format::Json {
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            for r in &reports {
                let _ = writeln!(out, "{}", serde_json::to_string(r).expect("serializable"));
            }
            let _ = out.flush();
        } else {
            collected.push((idx, reports));
        }
    };

    let workers = worker_count().min(jobs.len().max(1));
    if serial || workers <= 1 {
        for (i, job) in jobs.iter().enumerate() {
            let (reports, code) = execute(job, &limits);
            record(i, reports, code, &mut summary);
        }
    } else {
        let next = AtomicUsize::new(0);
        let (tx, rx) = mpsc::channel();
        std::thread::scope(|scope| {
            for _ in 0..workers {
                let tx = tx.clone();
                let jobs = &jobs;
                let next = &next;
                scope.spawn(move || loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    let Some(job) = jobs.get(i) else {
                        break;
                    };
                    let (reports, code) = execute(job, &limits);
                    if tx.send((i, reports, code)).is_err() {
                        break;
                    }
                });
            }
            drop(tx);
            for (i, reports, code) in rx {
                record(i, reports, code, &mut summary);
            }
        });
    }
    if format == Format::Table {
        collected.sort_by_key(|(i, _)| *i);
        let all: Vec<CheckReport> = collected.into_iter().flat_map(|(_, r)| r).collect();
        print!("{}", render_table(&all));
    }
    summary
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut limits = Limits::default();
    if let Some(m) = cli.max_order {
        limits.max_order = m as u128;
    }
    if let Some(d) = cli.max_degree {
        limits.max_degree = d;
    }
    match cli.command {
        Command::Verify { check, grid, params } => {
            let jobs = match check {
                VerifyCheck::All => {
                    let text = match &grid {
                        Some(path) => match std::fs::read_to_string(path) {
                            Ok(t) => t,
                            Err(e) => {
                                eprintln!("cannot read {}: {e}", path.display());
                                return ExitCode::from(2);
                            }
                        },
                        None => DEFAULT_GRID.to_string(),
                    };
                    match parse_grid(&text, limits) {
                        Ok(g) => {
                            limits = g.limits;
                            g.jobs.into_iter().filter(|j| !skipped(&j.params)).collect()
                        }
                        Err(e) => {
                            eprintln!("{e}");
                            return ExitCode::from(2);
                        }
                    }
                }
                single => vec![Job {
                    check: check_name(single).to_string(),
                    params: params.to_params(),
                }],
            };
            let summary = run_jobs(jobs, limits, cli.serial, cli.format);
            match (summary.error_code, summary.failed) {
                (Some(code), _) => ExitCode::from(code),
                (None, true) => ExitCode::from(1),
                (None, false) => ExitCode::SUCCESS,
            }
        }
        Command::Enumerate { what, params } => {
            let name = match what {
                EnumTarget::Classes => "classes",
                EnumTarget::Subgroups => "subgroups",
                EnumTarget::Components => "components",
            };
            match enumerate::run_enumeration(name, &params.to_params()) {
                Ok(records) => {
                    let stdout = std::io::stdout();
                    let mut out = stdout.lock();
                    for r in records {
                        let line = match cli.format {
                            Format::Json => serde_json::to_string(&r).expect("serializable"),
                            Format::Table => r["label"].as_str().unwrap_or_default().to_string(),
                        };
                        let _ = writeln!(out, "{line}");
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("{e}");
                    ExitCode::from(e.exit_code())
                }
            }
        }
    }
}
