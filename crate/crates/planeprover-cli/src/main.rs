//! Command-line front end: theorem listing, proving, JSON reporting and the
//! `.geo` script checker.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use planeprover::script::{fnv1a_digest, parse_script, run_script, Entry, RunReport};
use planeprover::theorems::{
    catalog, numeric_spot_check, prove_all, prove_with, ProofResult, ProveOptions, Verdict,
};

#[derive(Parser)]
#[command(name = "planeprover", version, about = "Exact symbolic prover for plane geometry")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Print intermediate symbolic objects in canonical text form.
    #[arg(long, global = true)]
    trace: bool,
    /// Per-theorem wall-clock budget in seconds.
    #[arg(long, global = true, default_value_t = 300)]
    timeout: u64,
    /// Term-count guardrail for the kernel.
    #[arg(long, global = true)]
    max_terms: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// List the theorem catalog.
    List,
    /// Prove theorems by id, or the whole catalog.
    Prove {
        /// Theorem identifiers.
        #[arg(required_unless_present = "all")]
        ids: Vec<String>,
        /// Prove every catalog entry.
        #[arg(long, conflicts_with = "ids")]
        all: bool,
        /// Run catalog entries across threads.
        #[arg(long, requires = "all")]
        parallel: bool,
    },
    /// Parse and check a `.geo` script.
    Check {
        /// Script file.
        file: std::path::PathBuf,
    },
    /// Run the numeric spot-check oracle for one theorem.
    Oracle {
        /// Theorem identifier.
        id: String,
        /// Oracle seed.
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn options(common: &Common) -> ProveOptions {
    let mut opts = ProveOptions {
        timeout: Duration::from_secs(common.timeout),
        ..ProveOptions::default()
    };
    if let Some(n) = common.max_terms {
        opts.max_terms = n;
    }
    if common.trace {
        opts.trace = Some(Arc::new(|msg: &str| println!("trace: {msg}")));
    }
    opts
}

fn verdict_text(v: Verdict) -> &'static str {
    match v {
        Verdict::Proved => "proved",
        Verdict::Refuted => "refuted",
        Verdict::Certificate => "certificate",
        Verdict::Error => "error",
    }
}

fn exit_for(verdicts: &[Verdict]) -> ExitCode {
    if verdicts.contains(&Verdict::Error) {
        ExitCode::from(2)
    } else if verdicts.contains(&Verdict::Refuted) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn report_from(results: Vec<ProofResult>, digest_input: &str) -> RunReport {
    RunReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        input_digest: fnv1a_digest(digest_input),
        entries: results
            .into_iter()
            .map(|r| Entry {
                id: r.id,
                verdict: r.verdict,
                millis: r.millis,
                degree: r.degree,
                nterms: r.nterms,
                certificate: r.certificate,
                error: r.error,
            })
            .collect(),
    }
}

fn print_report(report: &RunReport, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(report).expect("report serializes"));
        return;
    }
    for e in &report.entries {
        let suffix = match &e.error {
            Some(msg) => format!(" ({msg})"),
            None => String::new(),
        };
        println!("{}: {}{suffix} [{} ms]", e.id, verdict_text(e.verdict), e.millis);
    }
}

fn main() -> ExitCode {
    // Die quietly when the consumer of a pipe goes away (e.g. `list | head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match cli.command {
        Command::List => {
            if cli.common.json {
                let rows: Vec<serde_json::Value> = catalog()
                    .iter()
                    .map(|r| {
                        serde_json::json!({
                            "id": r.id,
                            "kind": r.kind,
                            "title": r.title,
                        })
                    })
                    .collect();
                println!("{}", serde_json::to_string_pretty(&rows).expect("rows serialize"));
            } else {
                for r in catalog() {
                    println!("{:32} {:?}: {}", r.id, r.kind, r.title);
                }
            }
            ExitCode::SUCCESS
        }
        Command::Prove { ids, all, parallel } => {
            let opts = options(&cli.common);
            let results = if all {
                prove_all(parallel, &opts)
            } else {
                ids.iter().map(|id| prove_with(id, &opts)).collect()
            };
            let verdicts: Vec<Verdict> = results.iter().map(|r| r.verdict).collect();
            let digest_input = if all {
                "catalog".to_string()
            } else {
                ids.join(",")
            };
            let report = report_from(results, &digest_input);
            print_report(&report, cli.common.json);
            exit_for(&verdicts)
        }
        Command::Check { file } => {
            let text = match std::fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", file.display());
                    return ExitCode::from(2);
                }
            };
            let script = match parse_script(&text) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let trace: Option<planeprover::kernel::TraceSink> = if cli.common.trace {
                Some(Box::new(|msg: &str| println!("trace: {msg}")))
            } else {
                None
            };
            let report = run_script(&script, trace);
            let verdicts: Vec<Verdict> = report.entries.iter().map(|e| e.verdict).collect();
            print_report(&report, cli.common.json);
            exit_for(&verdicts)
        }
        Command::Oracle { id, seed } => {
            match numeric_spot_check(&id, seed) {
                Ok(holds) => {
                    if cli.common.json {
                        println!(
                            "{}",
                            serde_json::json!({ "id": id, "seed": seed, "holds": holds })
                        );
                    } else {
                        println!("{id}: oracle {} (seed {seed})", if holds { "true" } else { "false" });
                    }
                    if holds {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
    }
}
