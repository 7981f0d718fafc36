use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nambu_forge::limits;
use nambu_forge::Config;
use nambu_forge_cli::document::{definition_to_value, SpecError};
use nambu_forge_cli::{builtins, explain, parse_spec, run, run_checks};

#[derive(Parser)]
#[command(name = "nambu-forge", version, about = "Exact checks for n-Lie and Nambu-Poisson structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Bounds {
    /// Worker threads for the per-tuple checks
    #[arg(long, env = "NAMBU_FORGE_JOBS")]
    jobs: Option<usize>,
    /// Highest monomial degree used as a probe function
    #[arg(long, default_value_t = 2)]
    probe_degree: u32,
    /// Degree bound for polynomial solutions of membership systems
    #[arg(long, default_value_t = 4)]
    degree_bound: u32,
    /// Abort a directive when a polynomial exceeds this many terms
    #[arg(long, default_value_t = limits::DEFAULT_MAX_TERMS)]
    max_terms: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Run every directive of a spec file
    Check {
        file: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
        /// Write the machine-readable report here
        #[arg(long)]
        summary: Option<PathBuf>,
        /// Print the machine-readable report instead of text
        #[arg(long)]
        json: bool,
    },
    /// Print what each directive of a spec file decides
    Explain {
        file: Option<PathBuf>,
        /// Explain a single check by name
        #[arg(long)]
        check: Option<String>,
    },
    /// List builtin examples, or print one as a definition
    Builtin { name: Option<String> },
}

fn read(file: &PathBuf) -> Result<String, ExitCode> {
    std::fs::read_to_string(file).map_err(|e| {
        eprintln!("cannot read {}: {e}", file.display());
        ExitCode::from(2)
    })
}

fn spec_failure(e: SpecError) -> ExitCode {
    eprintln!("{e}");
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Check {
            file,
            bounds,
            summary,
            json,
        } => {
            let text = match read(&file) {
                Ok(t) => t,
                Err(c) => return c,
            };
            let doc = match parse_spec(&text) {
                Ok(d) => d,
                Err(e) => return spec_failure(e),
            };
            if let Some(j) = bounds.jobs {
                // a second initialisation only fails if a pool already exists
                let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
            }
            limits::set_max_terms(bounds.max_terms);
            let cfg = Config {
                probe_degree: bounds.probe_degree,
                degree_bound: bounds.degree_bound,
                ..Config::builtin()
            };
            nambu_forge::config::set_process_default(cfg.clone());
            run::install_panic_hook();
            let report = match run_checks(&doc, &cfg) {
                Ok(r) => r,
                Err(e) => return spec_failure(e),
            };
            if json {
                print!("{}", report.to_json());
            } else {
                print!("{}", run::render_text(&report));
            }
            if let Some(path) = summary {
                if let Err(e) = std::fs::write(&path, report.to_json()) {
                    eprintln!("cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Command::Explain { file, check } => {
            if let Some(c) = check {
                if run::signature(&c).is_none() {
                    eprintln!("unknown check \"{c}\"");
                    return ExitCode::from(2);
                }
                println!("{c}: {}", explain::statement(&c));
                return ExitCode::SUCCESS;
            }
            let Some(file) = file else {
                for (c, sig) in run::CHECKS {
                    let fields: Vec<String> = sig.iter().map(|(f, k)| format!("{f}: {}", k.name())).collect();
                    println!("{c} ({})\n    {}\n", fields.join(", "), explain::statement(c));
                }
                return ExitCode::SUCCESS;
            };
            let text = match read(&file) {
                Ok(t) => t,
                Err(c) => return c,
            };
            let doc = match parse_spec(&text) {
                Ok(d) => d,
                Err(e) => return spec_failure(e),
            };
            for (i, d) in doc.checks.iter().enumerate() {
                println!("[{:>3}] {}\n      {}", i + 1, d.check, explain::statement(&d.check));
            }
            ExitCode::SUCCESS
        }
        Command::Builtin { name: None } => {
            for e in builtins::TABLE {
                let kinds: Vec<&str> = e.kinds.iter().map(|k| k.name()).collect();
                println!("{:<18} {:<28} {}", e.pattern, kinds.join("|"), e.description);
            }
            ExitCode::SUCCESS
        }
        Command::Builtin { name: Some(name) } => {
            let defs = builtins::lookup_any(&name);
            if defs.is_empty() {
                eprintln!("no builtin named \"{name}\"");
                return ExitCode::from(3);
            }
            for d in defs {
                println!("{}", serde_json::to_string_pretty(&definition_to_value(&d)).expect("serializes"));
            }
            ExitCode::SUCCESS
        }
    }
}
