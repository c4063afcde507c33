use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use schur_core::bounds::{builtin_script, replay_script};
use schur_core::catalog::{
    check_group, emit_report, run_entry, table24, verify_theorem, Catalog, CatalogEntry, MethodChoice, Part, Report,
    ReportFormat, Status,
};

#[derive(Parser)]
#[command(name = "pschur", version, about = "Schur multipliers of finite p-groups")]
struct Cli {
    /// Report format: table or jsonl.
    #[arg(long, global = true, default_value = "table")]
    format: ReportFormat,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Multiplier of one catalog entry (or a .dsl file).
    Compute {
        #[arg(long)]
        group: String,
        #[arg(long)]
        p: u64,
        /// auto, oracle, be, kunneth, tails or ledger.
        #[arg(long, default_value = "auto")]
        method: MethodChoice,
    },
    /// Every entry of one part of the t = 6 classification.
    VerifyTheorem {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        part: Part,
    },
    /// Multipliers of the order p^4 groups.
    Table24 {
        #[arg(long)]
        p: u64,
    },
    /// Replay a bound script (a file, or the name of a shipped script).
    Replay {
        #[arg(long)]
        script: String,
        #[arg(long)]
        p: Option<u64>,
    },
    /// Consistency and structure of one catalog entry.
    Check {
        #[arg(long)]
        group: String,
        #[arg(long)]
        p: u64,
    },
}

fn print_reports(reports: &[Report], format: ReportFormat) -> ExitCode {
    print!("{}", emit_report(reports, format));
    if format == ReportFormat::Table {
        for r in reports.iter().filter(|r| !r.status.is_pass()) {
            for line in &r.trace {
                println!("  {}: {line}", r.group);
            }
        }
        for r in reports.iter().filter(|r| !r.assumed.is_empty()) {
            for a in &r.assumed {
                println!("  {}: assumed \"{a}\"", r.group);
            }
        }
    }
    if reports.iter().any(|r| r.status == Status::Fail) {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::FAILURE
}

fn compute(group: &str, p: u64, method: MethodChoice, format: ReportFormat) -> ExitCode {
    let path = Path::new(group);
    let cat = Catalog::builtin();
    let report = if group.ends_with(".dsl") && path.exists() {
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(group);
        let entry = match std::fs::read_to_string(path) {
            Ok(text) => CatalogEntry::parse(&text, stem),
            Err(e) => return fail(format!("{group}: {e}")),
        };
        match entry {
            Ok(e) => run_entry(cat, &e, p, method),
            Err(e) => return fail(e),
        }
    } else {
        match cat.get(group) {
            Ok(e) => run_entry(cat, e, p, method),
            Err(e) => return fail(e),
        }
    };
    print_reports(&[report], format)
}

fn replay(script: &str, p: Option<u64>, format: ReportFormat) -> ExitCode {
    let text = match std::fs::read_to_string(script) {
        Ok(t) => t,
        Err(e) => match builtin_script(script) {
            Some(t) => t.to_string(),
            None => return fail(format!("{script}: {e}")),
        },
    };
    match replay_script(&text, p) {
        Ok(out) => {
            if format == ReportFormat::Jsonl {
                println!("{}", serde_json::to_string(&out).expect("outcome serializes"));
            } else {
                for line in &out.trace {
                    println!("{line}");
                }
                let c = &out.conclusion;
                let show = |e: Option<u32>| e.map_or("-".to_string(), |e| format!("{}^{e}", out.prime));
                println!(
                    "conclusion {}: lower {}, upper {}, exact {}",
                    c.subject,
                    show(c.lower),
                    show(c.upper),
                    show(c.exact)
                );
                println!("assumed facts: {}", out.assumed.len());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            for line in &e.trace {
                println!("{line}");
            }
            fail(e)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Compute { group, p, method } => compute(&group, p, method, cli.format),
        Cmd::VerifyTheorem { p, part } => match verify_theorem(p, part) {
            Ok(r) => print_reports(&r, cli.format),
            Err(e) => fail(e),
        },
        Cmd::Table24 { p } => match table24(p) {
            Ok(r) => print_reports(&r, cli.format),
            Err(e) => fail(e),
        },
        Cmd::Replay { script, p } => replay(&script, p, cli.format),
        Cmd::Check { group, p } => match check_group(&group, p) {
            Ok(s) => {
                println!("{s}");
                if s.is_pass() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::FAILURE
                }
            }
            Err(e) => fail(e),
        },
    }
}
