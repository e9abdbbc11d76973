//! `knotoid`: validate, compute invariants, search and certify heights, and
//! transform knotoid diagrams stored as JSON fixtures.
//!
//! Exit status: 0 success, 1 invalid input, 2 usage error, 3 search budget
//! exhausted (partial results are still written), 4 internal failure.

mod config;
mod report;

use std::fmt;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use knotoid::diagram::Fixture;
use knotoid::moves::{self, CertifyStatus};
use knotoid::ops::{self, ClosureMode, Involution};
use knotoid::Diagram;
use serde_json::Value;

use config::{Config, Overrides};

#[derive(Parser, Debug)]
#[command(name = "knotoid", version, about = "Invariants, moves and signed heights of knotoid diagrams")]
struct Cli {
    /// Write the report here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print a human-readable summary to standard error
    #[arg(short, long, global = true)]
    verbose: bool,
    /// TOML file with max_crossings, max_height and max_states
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct BudgetArgs {
    #[arg(long)]
    budget_crossings: Option<usize>,
    #[arg(long)]
    budget_height: Option<usize>,
    #[arg(long)]
    budget_states: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the structural invariants of a diagram
    Validate { input: String },
    /// Writhes, index polynomials, bracket and Turaev polynomials, bounds
    Invariants { input: String },
    /// Sign sequence of the diagram's shortcut (a shortest one if absent)
    Seq { input: String },
    /// Breadth-first search of shortcut diagrams within budgets
    Search {
        input: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Signed heights from searched upper and polynomial lower bounds
    Certify {
        input: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Lift to the n-fold cover branched over the endpoints
    Lift {
        input: String,
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
        n: u16,
        /// Sheet the main strand starts on
        #[arg(long, default_value_t = 0)]
        sheet: usize,
    },
    /// Overpass or underpass closure along the shortcut
    Closure {
        input: String,
        #[arg(long, value_enum)]
        mode: Mode,
    },
    /// Apply an involution
    Op {
        input: String,
        #[arg(long, value_enum)]
        kind: Kind,
    },
    /// Product: the head of the first joined to the tail of the second
    Product { left: String, right: String },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Mode {
    Over,
    Under,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Kind {
    Rev,
    Mir,
    Sym,
    Rot,
}

/// An error in how the tool was invoked rather than in its input.
#[derive(Debug)]
struct Usage(String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

/// Input whose validation failed; the report has already been written.
#[derive(Debug)]
struct Rejected;

impl fmt::Display for Rejected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("diagram is not valid")
    }
}

impl std::error::Error for Rejected {}

struct Input {
    name: String,
    fixture: Fixture,
}

fn read_input(name: &str) -> Result<Input> {
    let text = if name == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
        s
    } else {
        std::fs::read_to_string(name).with_context(|| format!("reading {name}"))?
    };
    let fixture = Fixture::parse(&text).with_context(|| format!("parsing {name}"))?;
    Ok(Input { name: name.to_string(), fixture })
}

/// Reads an input that must pass validation.
fn read_valid(name: &str) -> Result<Input> {
    let input = read_input(name)?;
    let r = input.fixture.diagram.validate();
    if !r.is_valid() {
        anyhow::bail!("{name}: invalid diagram\n{r}");
    }
    Ok(input)
}

struct Ctx {
    out: Option<PathBuf>,
    verbose: bool,
    config: Config,
    env_states: Option<usize>,
    started: Instant,
}

impl Ctx {
    fn emit(&self, report: &Value) -> Result<()> {
        let mut text = serde_json::to_string_pretty(report)?;
        text.push('\n');
        match &self.out {
            Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())?;
                out.flush()?;
            }
        }
        Ok(())
    }

    fn say(&self, msg: impl fmt::Display) {
        if self.verbose {
            eprintln!("{msg} [{:.2?}]", self.started.elapsed());
        }
    }

    fn budget(&self, d: &Diagram, args: BudgetArgs) -> moves::Budget {
        let flags = Overrides {
            max_crossings: args.budget_crossings,
            max_height: args.budget_height,
            max_states: args.budget_states,
        };
        config::resolve(d, &self.config, self.env_states, flags)
    }
}

fn run(cli: Cli) -> Result<u8> {
    let config = match &cli.config {
        Some(path) => Config::load(path).map_err(|e| Usage(format!("{e:#}")))?,
        None => Config::default(),
    };
    let env_states = config::env_states().map_err(|e| Usage(format!("{e:#}")))?;
    let ctx = Ctx { out: cli.out, verbose: cli.verbose, config, env_states, started: Instant::now() };

    match cli.command {
        Command::Validate { input } => {
            let input = read_input(&input)?;
            let r = input.fixture.diagram.validate();
            ctx.emit(&report::validate(&input.name, &input.fixture, &r))?;
            ctx.say(format_args!("{}: {r}", input.name));
            if !r.is_valid() {
                return Err(Rejected.into());
            }
        }
        Command::Invariants { input } => {
            let input = read_valid(&input)?;
            let rep = report::invariants(&input.name, &input.fixture)?;
            ctx.emit(&rep)?;
            ctx.say(format_args!("{}: F = {}", input.name, rep["index_polynomial"].as_str().unwrap_or("-")));
        }
        Command::Seq { input } => {
            let input = read_valid(&input)?;
            let rep = report::seq(&input.name, &input.fixture)?;
            ctx.emit(&rep)?;
            ctx.say(format_args!("{}: seq ({})", input.name, rep["seq"].as_str().unwrap_or_default()));
        }
        Command::Search { input, budget } => {
            let input = read_valid(&input)?;
            let d = ops::with_minimal_shortcut(&input.fixture.diagram)?;
            let budget = ctx.budget(&d, budget);
            let r = moves::explore(&d, budget)?;
            ctx.emit(&report::search(&input.name, &input.fixture, &r))?;
            ctx.say(format_args!(
                "{}: {} states, depth {}, minimum height {}{}",
                input.name,
                r.states,
                r.depth,
                r.min_height,
                if r.partial { " (partial)" } else { "" }
            ));
            if r.partial {
                return Ok(3);
            }
        }
        Command::Certify { input, budget } => {
            let input = read_valid(&input)?;
            let d = ops::with_minimal_shortcut(&input.fixture.diagram)?;
            let budget = ctx.budget(&d, budget);
            let c = moves::certify_heights(&d, budget)?;
            ctx.emit(&report::certify(&input.name, &input.fixture, &c))?;
            ctx.say(format_args!(
                "{}: {:?} h+ in [{}, {}], h- in [{}, {}] after {} states",
                input.name, c.status, c.h_plus.lower, c.h_plus.upper, c.h_minus.lower, c.h_minus.upper, c.search.states
            ));
            if c.status == CertifyStatus::Interval && c.search.partial {
                return Ok(3);
            }
        }
        Command::Lift { input, n, sheet } => {
            if sheet >= n as usize {
                return Err(Usage(format!("--sheet must be below --n ({n})")).into());
            }
            let input = read_valid(&input)?;
            let l = ops::lift_cover_from(&input.fixture.diagram, n as usize, sheet)?;
            let source = serde_json::json!({"command": "lift", "input": input.name, "n": n, "sheet": sheet, "stabilized": l.stabilized});
            ctx.emit(&report::diagram(&l.diagram, source)?)?;
            ctx.say(format_args!("{}: {}-fold lift, {} crossings", input.name, n, l.diagram.crossing_count()));
        }
        Command::Closure { input, mode } => {
            let input = read_valid(&input)?;
            let m = match mode {
                Mode::Over => ClosureMode::Over,
                Mode::Under => ClosureMode::Under,
            };
            let c = ops::closure(&input.fixture.diagram, m)?;
            let source = serde_json::json!({"command": "closure", "input": input.name, "mode": format!("{mode:?}").to_lowercase()});
            ctx.emit(&report::diagram(&c, source)?)?;
            ctx.say(format_args!("{}: closure with {} crossings", input.name, c.crossing_count()));
        }
        Command::Op { input, kind } => {
            let input = read_valid(&input)?;
            let which = match kind {
                Kind::Rev => Involution::Rev,
                Kind::Mir => Involution::Mir,
                Kind::Sym => Involution::Sym,
                Kind::Rot => Involution::Rot,
            };
            let e = ops::involution(&input.fixture.diagram, which);
            let source = serde_json::json!({"command": "op", "input": input.name, "kind": which.name()});
            ctx.emit(&report::diagram(&e, source)?)?;
            ctx.say(format_args!("{}: {}", input.name, which));
        }
        Command::Product { left, right } => {
            if left == "-" && right == "-" {
                return Err(Usage("only one input can be standard input".into()).into());
            }
            let a = read_valid(&left)?;
            let b = read_valid(&right)?;
            let p = ops::product(&a.fixture.diagram, &b.fixture.diagram)?;
            let source = serde_json::json!({"command": "product", "inputs": [a.name, b.name]});
            ctx.emit(&report::diagram(&p, source)?)?;
            ctx.say(format_args!("{} * {}: {} crossings", a.name, b.name, p.crossing_count()));
        }
    }
    Ok(0)
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<Usage>().is_some() {
        return 2;
    }
    match e.downcast_ref::<knotoid::Error>() {
        Some(
            knotoid::Error::Consistency(_) | knotoid::Error::Inconsistent(_) | knotoid::Error::TooManyCrossings { .. },
        ) => 4,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            if e.downcast_ref::<Rejected>().is_none() {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
