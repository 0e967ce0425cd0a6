use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use cqg_core::calculus::tables::{export, render_text};
use cqg_core::calculus::Calculus;
use cqg_core::dual::Units;
use cqg_core::frt::relations::palette_relations;
use cqg_core::frt::{GroupAlgebra, RewriteSystem};
use cqg_core::report::suite::limit_config;
use cqg_core::report::{run_limits, run_suite, Suite, SuiteConfig};

#[derive(Parser)]
#[command(name = "cqg", version, about = "Exact checks for the coloured quantum group GL(2)")]
struct Cli {
    /// TOML configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Extra exact value of q at which residuals are evaluated (repeatable).
    #[arg(long = "q", global = true)]
    q: Vec<String>,
    /// Colour value override, `name=value` (repeatable).
    #[arg(long = "colour", global = true)]
    colour: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Limit {
    Colourless,
    Monochromatic,
}

#[derive(Clone, Copy, ValueEnum)]
enum DumpTarget {
    Relations,
    Tables,
}

#[derive(Subcommand)]
enum Command {
    /// Run one suite of checks.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, value_enum)]
        limit: Option<Limit>,
    },
    /// Print the rewrite rules or the generated calculus tables.
    Dump {
        #[arg(value_enum)]
        target: DumpTarget,
    },
    /// Re-run every suite at the colourless and monochromatic limits.
    Limits,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

fn load(cli: &Cli) -> Result<SuiteConfig, String> {
    let mut cfg = match &cli.config {
        Some(p) => SuiteConfig::load(p).map_err(|e| e.to_string())?,
        None => SuiteConfig::default(),
    };
    cfg.q_specializations.extend(cli.q.iter().cloned());
    for c in &cli.colour {
        let (name, value) = c.split_once('=').ok_or_else(|| format!("`--colour {c}` must have the form name=value"))?;
        cfg.colours.insert(name.trim().into(), value.trim().into());
    }
    cfg.validate().map_err(|e| e.to_string())?;
    cfg.with_env().map_err(|e| e.to_string())
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    let cfg = load(cli)?;
    match &cli.command {
        Command::Verify { suite, limit } => {
            let cfg = match limit {
                None => cfg,
                Some(Limit::Colourless) => limit_config(&cfg, "0"),
                Some(Limit::Monochromatic) => limit_config(&cfg, "c"),
            };
            let report = run_suite(*suite, &cfg);
            match cli.format {
                Format::Json => emit(&format!("{}\n", report.to_json())),
                Format::Text => emit(&report.to_text()),
            }
            Ok(ExitCode::from(report.exit_code() as u8))
        }
        Command::Limits => {
            let report = run_limits(&cfg);
            match cli.format {
                Format::Json => emit(&format!("{}\n", report.to_json())),
                Format::Text => emit(&report.to_text()),
            }
            Ok(ExitCode::from(report.exit_code() as u8))
        }
        Command::Dump { target } => {
            let alg = Arc::new(GroupAlgebra::new(cfg.palette(), cfg.order));
            match target {
                DumpTarget::Relations => {
                    let rels = palette_relations(&alg);
                    let rs =
                        RewriteSystem::from_relations(alg.clone(), &rels, cfg.budget()).map_err(|e| e.to_string())?;
                    match cli.format {
                        Format::Json => {
                            let rules: Vec<(String, String)> = rs
                                .rules()
                                .iter()
                                .map(|r| (alg.format_word(&r.lead), alg.format_poly(&r.rhs)))
                                .collect();
                            emit(&format!("{}\n", serde_json::to_string_pretty(&rules).map_err(|e| e.to_string())?));
                        }
                        Format::Text => emit(&format!("{}\n", rs.dump())),
                    }
                }
                DumpTarget::Tables => {
                    let calc = Calculus::new((*alg).clone(), &Units::default());
                    match cli.format {
                        Format::Json => {
                            let t = export(&calc, 0).map_err(|e| e.to_string())?;
                            emit(&format!("{}\n", serde_json::to_string_pretty(&t).map_err(|e| e.to_string())?));
                        }
                        Format::Text => emit(&render_text(&calc, 0).map_err(|e| e.to_string())?),
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn emit(s: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(s.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
