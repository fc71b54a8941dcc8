use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use frobsig::instance::{parse_instance, TaskKind};
use frobsig::poly::OrderKind;
use frobsig::report::Report;
use frobsig::runner::{run, RunOptions};
use frobsig::Error;

#[derive(Parser)]
#[command(name = "frobsig", version, about = "Frobenius colengths, Hilbert-Kunz functions and truncated F-rational signatures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the task declared in each instance file.
    Run(Common),
    /// Hilbert-Kunz lengths l(R/I^[p^e]) for e = 0..e_max.
    Hk(Common),
    /// Minimum of s^e over all socle ideals, e = 1..e_max.
    Srel(Common),
    /// Minimum of s^e over ideals I0 + (u), e = 1..e_max.
    Srat(Common),
    /// Sampled bounds after adjoining p^level-th roots of transcendentals.
    Gamma(GammaArgs),
    /// Every applicable invariant check; accepts files or directories.
    Verify(Common),
    /// Per-candidate comparison of the Groebner and rank-formula values.
    OracleDiff(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Args, Clone)]
struct Common {
    /// Instance files (or directories of `.frob` files for `verify` and `run`).
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// Ideal to use instead of the one named in the task line.
    #[arg(long)]
    ideal: Option<String>,
    #[arg(long = "e-max")]
    e_max: Option<u32>,
    #[arg(long)]
    order: Option<OrderKind>,
    /// Override the computed Krull dimension.
    #[arg(long)]
    dim: Option<usize>,
    /// Maximum number of candidate subspaces.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long = "rank1-only")]
    rank1_only: bool,
    /// Worker threads for candidate evaluation.
    #[arg(long, default_value_t = 1)]
    parallel: usize,
    /// Output on stdout; with --out, json or csv selects the file format.
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the report to this file (JSON unless --format csv).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include reduced Groebner bases in the report.
    #[arg(long = "emit-gb")]
    emit_gb: bool,
}

#[derive(Args, Clone)]
struct GammaArgs {
    #[command(flatten)]
    common: Common,
    /// Comma-separated transcendentals whose roots are adjoined.
    #[arg(long = "Gamma", value_delimiter = ',')]
    gamma: Option<Vec<String>>,
    #[arg(long, value_delimiter = ',')]
    levels: Option<Vec<u32>>,
    #[arg(long)]
    e: Option<u32>,
}

fn exit_code(err: &Error) -> u8 {
    if err.is_budget() {
        3
    } else if err.is_validation() {
        2
    } else {
        1
    }
}

fn collect_inputs(inputs: &[PathBuf]) -> Result<Vec<PathBuf>, Error> {
    let mut out = Vec::new();
    for p in inputs {
        if p.is_dir() {
            let mut files: Vec<PathBuf> = fs::read_dir(p)
                .map_err(|e| Error::Io(format!("{}: {e}", p.display())))?
                .filter_map(|entry| entry.ok().map(|e| e.path()))
                .filter(|f| f.extension().is_some_and(|x| x == "frob"))
                .collect();
            files.sort();
            out.extend(files);
        } else {
            out.push(p.clone());
        }
    }
    Ok(out)
}

fn instance_name(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
        Format::Table => report.to_table(),
    }
}

fn execute(task: Option<TaskKind>, common: &Common, extra: RunOptions) -> ExitCode {
    let files = match collect_inputs(&common.inputs) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let opts = RunOptions {
        task,
        ideal: common.ideal.clone(),
        e_max: common.e_max,
        order: common.order,
        dim: common.dim,
        budget: common.budget,
        rank1_only: common.rank1_only,
        parallel: common.parallel,
        emit_gb: common.emit_gb,
        ..extra
    };
    // The first failure decides the exit code.
    let mut worst = 0u8;
    let mut reports = Vec::new();
    for path in &files {
        let name = instance_name(path);
        let result = fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
            .and_then(|text| parse_instance(&text))
            .and_then(|inst| run(&inst, &name, &opts));
        match result {
            Ok(outcome) => {
                if let Some(f) = &outcome.failure {
                    eprintln!("{name}: {f}");
                    if worst == 0 {
                        worst = 1;
                    }
                }
                if common.out.is_none() || matches!(common.format, Format::Table) {
                    print!("{}", render(&outcome.report, common.format));
                }
                reports.push(outcome.report);
            }
            Err(e) => {
                eprintln!("{name}: error: {e}");
                if worst == 0 {
                    worst = exit_code(&e);
                }
            }
        }
    }
    if let Some(out) = &common.out {
        let text = match common.format {
            Format::Csv => {
                let mut s = String::new();
                for (i, r) in reports.iter().enumerate() {
                    let csv = r.to_csv();
                    s.push_str(if i == 0 { &csv } else { csv.split_once('\n').map_or("", |x| x.1) });
                }
                s
            }
            _ if reports.len() == 1 => reports[0].to_json(),
            _ => {
                let mut s = serde_json::to_string_pretty(&reports).expect("reports serialize");
                s.push('\n');
                s
            }
        };
        if let Err(e) = fs::write(out, text) {
            eprintln!("error: {}: {e}", out.display());
            return ExitCode::from(1);
        }
    }
    ExitCode::from(worst)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Run(c) => execute(None, c, RunOptions::default()),
        Command::Hk(c) => execute(Some(TaskKind::Hk), c, RunOptions::default()),
        Command::Srel(c) => execute(Some(TaskKind::Srel), c, RunOptions::default()),
        Command::Srat(c) => execute(Some(TaskKind::Srat), c, RunOptions::default()),
        Command::Verify(c) => execute(Some(TaskKind::Verify), c, RunOptions::default()),
        Command::OracleDiff(c) => execute(Some(TaskKind::OracleDiff), c, RunOptions::default()),
        Command::Gamma(g) => execute(
            Some(TaskKind::Gamma),
            &g.common,
            RunOptions {
                gamma: g.gamma.clone(),
                levels: g.levels.clone(),
                e: g.e,
                ..RunOptions::default()
            },
        ),
    }
}
