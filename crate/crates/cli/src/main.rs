use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qutrit_cli::{integrator_config, plot_script, run, sweep, CliError, CliResult, Grid, Scenario, ScenarioSpec, Table};
use qutrit_core::verify::{run_suite, Suite};

/// Qutrit dynamics in elliptic driving fields: figure data, sweeps and self-checks.
///
/// The integrator tolerance defaults to 1e-10 and can be overridden with the
/// QUTRIT_TOL environment variable.
#[derive(Parser)]
#[command(name = "qutrit", version)]
struct Cli {
    /// Worker threads (default: logical cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Parameter override, repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    sets: Vec<String>,
    /// Grid start:stop:count (ω₀/ω for fig1, time otherwise).
    #[arg(long)]
    grid: Option<String>,
    /// File of key=value lines applied before --set.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Also write a gnuplot script next to the CSV (requires --out).
    #[arg(long)]
    plot_script: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Time-averaged populations vs ω₀/ω.
    Fig1(Common),
    /// Spin components, free and coupled to a fluctuator.
    Fig2(Common),
    /// Pair entanglement measures, anisotropic and in the consistent field.
    Fig3(Common),
    /// m_SM in the impulse field vs zero field.
    Fig4(Common),
    /// η_N for chains of 2 to 6 qutrits.
    Fig5(Common),
    /// Run self-check suites; exit status 1 on any failure.
    Verify {
        #[arg(value_enum, default_value = "all")]
        suite: SuiteArg,
    },
    /// Repeat a figure over a grid of one parameter.
    Sweep {
        /// fig1 .. fig5
        scenario: String,
        /// Parameter to vary.
        #[arg(long)]
        param: String,
        /// Values of the parameter, start:stop:count.
        #[arg(long = "values")]
        values: String,
        #[command(flatten)]
        common: Common,
    },
    /// List the parameters and defaults of a figure.
    Params { scenario: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Algebra,
    Elliptic,
    Oracles,
    Invariants,
    Claims,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Algebra => Suite::Algebra,
            SuiteArg::Elliptic => Suite::Elliptic,
            SuiteArg::Oracles => Suite::Oracles,
            SuiteArg::Invariants => Suite::Invariants,
            SuiteArg::Claims => Suite::Claims,
            SuiteArg::All => Suite::All,
        }
    }
}

fn spec_from(scenario: Scenario, c: &Common) -> CliResult<ScenarioSpec> {
    let config = match &c.config {
        Some(p) => Some(fs::read_to_string(p).map_err(|e| CliError::Usage(format!("config {}: {e}", p.display())))?),
        None => None,
    };
    let grid = c.grid.as_deref().map(str::parse::<Grid>).transpose()?;
    ScenarioSpec::build(scenario, config.as_deref(), &c.sets, grid)
}

fn emit(table: &Table, title: &str, c: &Common) -> CliResult<()> {
    match &c.out {
        Some(path) => {
            table.write_csv(fs::File::create(path)?)?;
            if c.plot_script {
                let script = path.with_extension("gp");
                fs::write(&script, plot_script(title, &path.to_string_lossy(), table))?;
            }
        }
        None => {
            if c.plot_script {
                return Err(CliError::Usage("--plot-script needs --out".into()));
            }
            table.write_csv(io::stdout().lock())?;
        }
    }
    Ok(())
}

fn figure(scenario: Scenario, c: &Common) -> CliResult<()> {
    let spec = spec_from(scenario, c)?;
    let icfg = integrator_config(std::env::var("QUTRIT_TOL").ok().as_deref())?;
    emit(&run(&spec, &icfg)?, scenario.name(), c)
}

fn execute(cli: Cli) -> CliResult<ExitCode> {
    if let Some(n) = cli.jobs {
        if n == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    match cli.command {
        Command::Fig1(c) => figure(Scenario::Fig1, &c)?,
        Command::Fig2(c) => figure(Scenario::Fig2, &c)?,
        Command::Fig3(c) => figure(Scenario::Fig3, &c)?,
        Command::Fig4(c) => figure(Scenario::Fig4, &c)?,
        Command::Fig5(c) => figure(Scenario::Fig5, &c)?,
        Command::Verify { suite } => {
            let icfg = integrator_config(std::env::var("QUTRIT_TOL").ok().as_deref())?;
            let report = run_suite(suite.into(), &icfg)?;
            let mut out = io::stdout().lock();
            writeln!(out, "{report}")?;
            if !report.passed() {
                for c in report.failures() {
                    eprintln!("failed: {} / {}", c.suite, c.name);
                }
                return Ok(ExitCode::from(1));
            }
        }
        Command::Sweep {
            scenario,
            param,
            values,
            common,
        } => {
            let scenario: Scenario = scenario.parse()?;
            let spec = spec_from(scenario, &common)?;
            let icfg = integrator_config(std::env::var("QUTRIT_TOL").ok().as_deref())?;
            let table = sweep(&spec, &param, &values.parse()?, &icfg)?;
            emit(&table, &format!("{} sweep over {param}", scenario.name()), &common)?;
        }
        Command::Params { scenario } => {
            let scenario: Scenario = scenario.parse()?;
            let mut out = io::stdout().lock();
            for (k, v, what) in scenario.defaults() {
                writeln!(out, "{k} = {v}\t# {what}")?;
            }
            writeln!(out, "grid = {}\t# {}", scenario.default_grid(), scenario.axis())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("qutrit: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
