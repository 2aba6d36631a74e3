use std::io;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use cqe_core::config::{load_config, load_queries, parse_inline_queries, LoadedConfig};
use cqe_core::repl::{run_repl, Session};
use cqe_core::scenarios::{self, FuzzBounds, ScenarioReport};
use cqe_core::{
    check_all, extend, CensorKind, LFormula, Render, Style, TieBreak, Transcript, ValidationReport,
};

/// Controlled query evaluation: run censors against a knowledge base and
/// check what their answers give away.
#[derive(Parser)]
#[command(name = "cqe", version)]
struct Cli {
    /// Print formulas with logical symbols instead of ASCII.
    #[arg(long, global = true)]
    unicode: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a configuration file.
    Check { file: PathBuf },
    /// Answer a query sequence and check the resulting run.
    Run {
        file: PathBuf,
        #[command(flatten)]
        censor: CensorArgs,
        /// A query file, or queries separated by `;`.
        #[arg(long)]
        queries: String,
    },
    /// Answer queries typed on standard input.
    Repl {
        file: PathBuf,
        #[command(flatten)]
        censor: CensorArgs,
    },
    /// Replay one of the built-in scenarios.
    Demo {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(scenarios::DEMOS))]
        name: String,
    },
    /// Check laws and impossibility results on random instances.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = FuzzBounds::default().instances)]
        instances: usize,
        #[arg(long, default_value_t = FuzzBounds::default().max_atoms)]
        max_atoms: usize,
        #[arg(long, default_value_t = FuzzBounds::default().max_queries)]
        max_queries: usize,
    },
}

#[derive(clap::Args)]
struct CensorArgs {
    /// all-refuse, truthful-min, lying or honest.
    #[arg(long, default_value = "truthful-min")]
    censor: String,
    /// What the lying censor says when both answers leak: honest or lie.
    #[arg(long, default_value = "honest")]
    tie_break: String,
}

impl CensorArgs {
    fn kind(&self) -> Result<CensorKind> {
        let tie_break: TieBreak = self.tie_break.parse()?;
        Ok(CensorKind::parse(&self.censor, tie_break)?)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let style = if cli.unicode {
        Style::UNICODE
    } else {
        Style::ASCII
    };
    match dispatch(cli.command, style) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(false)` means a property or validation violation, `Err` bad input.
fn dispatch(command: Command, style: Style) -> Result<bool> {
    match command {
        Command::Check { file } => {
            let loaded = load_config(&file)?;
            print_validation(&loaded.report, style);
            Ok(loaded.report.is_valid())
        }
        Command::Run {
            file,
            censor,
            queries,
        } => {
            let kind = censor.kind()?;
            let loaded = load_config(&file)?;
            if !require_valid(&loaded, style) {
                return Ok(false);
            }
            let queries = read_queries(&queries)?;
            let censor = kind.build();
            let tr = extend(censor.as_ref(), &loaded.config, Transcript::new(), &queries);
            for (i, (q, a)) in tr.iter().enumerate() {
                let forced = if tr.forced_leaks().contains(&i) {
                    "  # forced leak"
                } else {
                    ""
                };
                println!("{:>3}  {}  {a}{forced}", i + 1, q.render(style));
            }
            let reports = check_all(&loaded.config, censor.as_ref(), &queries);
            for r in &reports {
                println!("{}", r.line());
            }
            Ok(reports.iter().all(|r| !r.is_violated()))
        }
        Command::Repl { file, censor } => {
            let kind = censor.kind()?;
            let loaded = load_config(&file)?;
            if !require_valid(&loaded, style) {
                return Ok(false);
            }
            let mut session = Session::new(loaded.config, kind.build()).with_style(style);
            run_repl(&mut session, io::stdin().lock(), io::stdout().lock())?;
            Ok(true)
        }
        Command::Demo { name } => {
            let report = match name.as_str() {
                "nogo1" => scenarios::demo_nogo1(),
                "nogo2" => scenarios::demo_nogo2(),
                "nogo2-fixed" => scenarios::demo_nogo2_fixed(),
                "example" => scenarios::demo_running_example(),
                other => bail!("unknown demo `{other}`"),
            };
            Ok(show(&report))
        }
        Command::Fuzz {
            seed,
            instances,
            max_atoms,
            max_queries,
        } => {
            let outcome = scenarios::fuzz(
                seed,
                FuzzBounds {
                    max_atoms,
                    max_queries,
                    instances,
                },
            )?;
            Ok(show(&outcome.report))
        }
    }
}

fn show(report: &ScenarioReport) -> bool {
    println!("{report}");
    report.passed()
}

fn require_valid(loaded: &LoadedConfig, style: Style) -> bool {
    if !loaded.report.is_valid() {
        eprintln!("configuration is not valid:");
        print_validation(&loaded.report, style);
    }
    loaded.report.is_valid()
}

fn print_validation(report: &ValidationReport, style: Style) {
    let verdict = |ok: bool| if ok { "holds" } else { "violated" };
    let list = |items: Vec<String>| {
        if items.is_empty() {
            "-".to_string()
        } else {
            items.join(";")
        }
    };
    println!(
        "property=consistency verdict={} witness={}",
        verdict(report.consistent),
        if report.consistent { "-" } else { "kb" }
    );
    println!(
        "property=truthful-start verdict={} witness={}",
        verdict(report.untruthful_ak.is_empty()),
        list(
            report
                .untruthful_ak
                .iter()
                .map(|f| f.render(style))
                .collect()
        )
    );
    println!(
        "property=hidden-secrets verdict={} witness={}",
        verdict(report.exposed_secrets.is_empty()),
        list(
            report
                .exposed_secrets
                .iter()
                .map(|f| f.render(style))
                .collect()
        )
    );
}

/// An existing file is read as a query file; anything else is parsed as
/// `;`-separated inline queries.
fn read_queries(arg: &str) -> Result<Vec<LFormula>> {
    if Path::new(arg).is_file() {
        return Ok(load_queries(arg)?);
    }
    parse_inline_queries(arg).with_context(|| format!("reading queries `{arg}`"))
}
