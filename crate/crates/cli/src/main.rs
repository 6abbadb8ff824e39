use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use milnor_cli::runner::{run_scenario, RunOutput};
use milnor_cli::scenario::{parse_scenario, Scenario, ScenarioKind};
use milnor_cli::{fixtures, golden};
use milnor_core::symanzik::KinematicCase;

#[derive(Parser)]
#[command(
    name = "milnor",
    about = "Exact spectrum and vanishing-cohomology calculator for degenerations \
             with one-dimensional singular locus",
    version
)]
struct Cli {
    /// Scenario file (a JSON object or an array of them); used when no
    /// subcommand is given.
    #[arg(long, global = true)]
    scenario: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed override for randomized scenarios.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Run a named suite (only `golden` exists).
    #[arg(long)]
    suite: Option<String>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Ascii,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file.
    Run,
    /// Run a spectrum-formula scenario file.
    Sss,
    /// Print the closed-form catalog of non-isolated slc surface germs.
    SlcTable,
    /// Spectrum and invariants of the J series.
    Jk {
        #[arg(long)]
        kappa: u64,
    },
    /// Triangulation bookkeeping for normal-crossing surface degenerations.
    Kulikov {
        #[arg(long)]
        faces: u64,
        #[arg(long)]
        edges: u64,
        #[arg(long)]
        vertices: u64,
    },
    /// The double-box graph hypersurface computation.
    Doublebox {
        #[arg(long, value_enum)]
        case: BoxCase,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Run every embedded golden check.
    Golden,
    /// List the embedded fixtures.
    Fixtures,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoxCase {
    Dgt4,
    Deq4,
}

impl From<BoxCase> for KinematicCase {
    fn from(c: BoxCase) -> Self {
        match c {
            BoxCase::Dgt4 => KinematicCase::DGt4,
            BoxCase::Deq4 => KinematicCase::DEq4,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(consistent) => {
            if consistent {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = classify(&e);
            ExitCode::from(code)
        }
    }
}

/// Exit code 1 for computational inconsistencies, 2 for input errors.
fn classify(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<milnor_core::Error>() {
        Some(milnor_core::Error::Inconsistent(_)) => 1,
        _ => 2,
    }
}

fn dispatch(cli: &Cli) -> Result<bool> {
    if let Some(suite) = &cli.suite {
        if suite != "golden" {
            bail!("unknown suite {suite:?}");
        }
        return run_golden(cli);
    }
    let scenario_of = |kind: ScenarioKind, name: &str| Scenario {
        name: name.into(),
        note: None,
        kind,
    };
    match &cli.command {
        None | Some(Command::Run) | Some(Command::Sss) => {
            let Some(path) = &cli.scenario else {
                bail!("no scenario file given; pass --scenario <path> or a subcommand");
            };
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            run_scenarios_text(cli, &text)
        }
        Some(Command::SlcTable) => {
            let v = fixtures::value("scenario_slc_table")?;
            let sc: Scenario = serde_json::from_value(v)?;
            emit(cli, &[run_scenario(&sc, cli.seed)?])
        }
        Some(Command::Jk { kappa }) => {
            let sc = scenario_of(ScenarioKind::Jk { kappa: *kappa }, &format!("jk_{kappa}"));
            emit(cli, &[run_scenario(&sc, cli.seed)?])
        }
        Some(Command::Kulikov {
            faces,
            edges,
            vertices,
        }) => {
            let sc = scenario_of(
                ScenarioKind::Kulikov {
                    faces: *faces,
                    edges: *edges,
                    vertices: *vertices,
                },
                "kulikov",
            );
            emit(cli, &[run_scenario(&sc, cli.seed)?])
        }
        Some(Command::Doublebox { case, seed }) => {
            let sc = scenario_of(
                ScenarioKind::Doublebox {
                    case: (*case).into(),
                    seed: Some(*seed),
                },
                "doublebox",
            );
            emit(cli, &[run_scenario(&sc, cli.seed)?])
        }
        Some(Command::Golden) => run_golden(cli),
        Some(Command::Fixtures) => {
            let mut text = String::new();
            for name in fixtures::names() {
                let v = fixtures::value(name)?;
                let note = v.get("note").and_then(Value::as_str).unwrap_or("");
                text.push_str(&format!("{name}\n    {note}\n"));
            }
            write_out(cli, &serde_json::to_value(fixtures::names())?, &text)?;
            Ok(true)
        }
    }
}

fn run_scenarios_text(cli: &Cli, text: &str) -> Result<bool> {
    let value: Value = serde_json::from_str(text).context("scenario file is not valid JSON")?;
    let scenarios: Vec<Scenario> = match value {
        Value::Array(items) => items
            .into_iter()
            .map(|v| Ok(serde_json::from_value(v)?))
            .collect::<Result<Vec<_>>>()?,
        v => vec![serde_json::from_value(serde_json::to_value(
            parse_scenario(&serde_json::to_string(&v)?)?,
        )?)?],
    };
    let mut outputs = Vec::new();
    for sc in &scenarios {
        outputs.push(run_scenario(sc, cli.seed)?);
    }
    emit(cli, &outputs)
}

fn emit(cli: &Cli, outputs: &[RunOutput]) -> Result<bool> {
    let json = Value::Array(outputs.iter().map(|o| o.json.clone()).collect());
    let ascii: String = outputs
        .iter()
        .map(|o| o.ascii.as_str())
        .collect::<Vec<_>>()
        .join("\n");
    write_out(cli, &json, &ascii)?;
    Ok(outputs.iter().all(|o| o.consistent))
}

fn run_golden(cli: &Cli) -> Result<bool> {
    let summary = golden::run_all();
    write_out(cli, &serde_json::to_value(&summary)?, &summary.render())?;
    Ok(summary.all_passed())
}

fn write_out(cli: &Cli, json: &Value, ascii: &str) -> Result<()> {
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(json)? + "\n",
        Format::Ascii => ascii.to_string(),
    };
    match &cli.out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}
