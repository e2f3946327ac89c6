use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rescycle::engine::Mode;
use rescycle_cli::{
    batch_exit_code, cycle_path, parse_params, render_cycle_json, render_cycle_text, render_json, render_text,
    run_demo, verify_all, write_intermediates, CaseOutcome, Demo, Overrides,
};

#[derive(Parser, Debug)]
#[command(
    name = "rescycle",
    version,
    about = "Verify residue-current factorizations of fundamental cycles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Pipeline to run, overriding the case file.
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeArg>,

    /// Degree bound for lifting chain maps.
    #[arg(long = "lift-degree-bound", global = true, value_name = "N")]
    lift_degree_bound: Option<u32>,

    /// Seed for generic-point checks.
    #[arg(long, global = true, value_name = "S")]
    seed: Option<u64>,

    /// Write intermediate matrices and currents into DIR.
    #[arg(long = "emit-intermediates", global = true, value_name = "DIR")]
    emit_intermediates: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,

    /// Show per-stage timings in text output.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify one or more case files.
    Verify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Print the oracle cycle of a case without running a pipeline.
    Cycle { file: PathBuf },
    /// Run a built-in example.
    Demo {
        #[arg(value_enum)]
        example: DemoArg,
        /// Parameters `k,l,m` for ex-embedded.
        #[arg(long, default_value = "3,2,1")]
        params: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Auto,
    Ci,
    Cm,
    Universal,
    Nonpure,
    Demo,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Auto => Mode::Auto,
            ModeArg::Ci => Mode::Ci,
            ModeArg::Cm => Mode::Cm,
            ModeArg::Universal => Mode::Universal,
            ModeArg::Nonpure => Mode::Nonpure,
            ModeArg::Demo => Mode::Demo,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DemoArg {
    ExNonpure,
    ExEmbedded,
}

fn print_json(values: Vec<serde_json::Value>) {
    let doc = match <[_; 1]>::try_from(values) {
        Ok([one]) => one,
        Err(many) => serde_json::Value::Array(many),
    };
    emit(&format!(
        "{}\n",
        serde_json::to_string_pretty(&doc).expect("reports serialize")
    ));
}

/// Writes to stdout, tolerating a closed pipe.
fn emit(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn report(outcomes: &[CaseOutcome], cli: &Cli) -> u8 {
    let mut codes = Vec::new();
    for o in outcomes {
        let dir = cli.emit_intermediates.clone().or_else(|| {
            o.file
                .as_ref()
                .and_then(|f| f.options.emit_intermediates.as_ref().map(PathBuf::from))
        });
        if let Some(dir) = dir {
            if let Err(e) = write_intermediates(Path::new(&dir), o) {
                eprintln!("warning: {e}");
            }
        }
        codes.push(o.exit_code());
    }
    match cli.format {
        FormatArg::Text => outcomes.iter().for_each(|o| emit(&render_text(o, cli.timings))),
        FormatArg::Json => print_json(outcomes.iter().map(render_json).collect()),
    }
    batch_exit_code(codes)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let overrides = Overrides {
        mode: cli.mode.map(Mode::from),
        lift_bound: cli.lift_degree_bound,
        seed: cli.seed,
        emit_intermediates: cli.emit_intermediates.as_ref().map(|p| p.display().to_string()),
    };
    let code = match &cli.command {
        Command::Verify { files } => report(&verify_all(files, &overrides), &cli),
        Command::Cycle { file } => {
            let s = cycle_path(file);
            match cli.format {
                FormatArg::Text => emit(&render_cycle_text(&s)),
                FormatArg::Json => print_json(vec![render_cycle_json(&s)]),
            }
            s.exit_code()
        }
        Command::Demo { example, params } => {
            let demo = match example {
                DemoArg::ExNonpure => Ok(Demo::Nonpure),
                DemoArg::ExEmbedded => parse_params(params).map(|(k, l, m)| Demo::Embedded { k, l, m }),
            };
            match demo {
                Ok(d) => report(&[run_demo(d, &overrides)], &cli),
                Err(e) => {
                    eprintln!("error: {e}");
                    e.exit_code()
                }
            }
        }
    };
    ExitCode::from(code)
}
