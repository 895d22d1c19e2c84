use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use edgefog_cli::scenario::{GraphSpec, Level2Spec, ScheduleKind};
use edgefog_cli::{
    emit, emit_sweep, run, sweep, CliError, CliResult, Format, Mode, ScenarioSpec, SweepParam,
    EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION,
};
use edgefog_core::equilibrium::{Oracle, Scope};
use edgefog_core::{JobCostType, TransitPolicy};
use serde::de::DeserializeOwned;

/// Two-level edge-fog network creation game: costs, equilibria, price of
/// anarchy and bound checks.
#[derive(Parser)]
#[command(name = "edgefog", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the edge-fog graph of a scenario.
    Gen(Common),
    /// Per-player and social costs of the starting profile.
    Cost(Common),
    /// Best-response dynamics from the starting profile.
    Dynamics(Common),
    /// Nash check of the starting profile.
    Nash(Common),
    /// Exhaustive level-2 price of anarchy on the edge-fog graph.
    Poa(Common),
    /// Closed-form bounds checked on the starting profile.
    Bounds(Common),
    /// Run the built-in verification preset.
    Verify {
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run a scenario once per parameter value.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        param: SweepParam,
        /// Comma-separated values.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        values: Vec<f64>,
        /// Mode of each run; defaults to the scenario's `mode`.
        #[arg(long, value_enum)]
        mode: Option<Mode>,
    },
}

#[derive(Args)]
struct Common {
    /// Scenario file (TOML). Flags below override its values.
    scenario: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    #[command(flatten)]
    overrides: Overrides,
}

fn serde_value<T: DeserializeOwned>(s: &str) -> Result<T, String> {
    serde_json::from_value(serde_json::Value::String(s.to_string())).map_err(|e| e.to_string())
}

#[derive(Args, Default)]
struct Overrides {
    /// Generated edge-fog graph: path, cycle, star, complete or erdos_renyi.
    #[arg(long)]
    graph: Option<String>,
    /// Vertex count of the generated graph.
    #[arg(long)]
    n: Option<usize>,
    /// Edge probability for erdos_renyi.
    #[arg(long)]
    p: Option<f64>,
    /// Seed for erdos_renyi.
    #[arg(long)]
    graph_seed: Option<u64>,
    #[arg(long)]
    n2: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    /// type1 or type2.
    #[arg(long, value_parser = serde_value::<JobCostType>)]
    job_cost_type: Option<JobCostType>,
    #[arg(long)]
    rcs_constant: Option<f64>,
    /// fog_only or full_combined.
    #[arg(long, value_parser = serde_value::<TransitPolicy>)]
    transit: Option<TransitPolicy>,
    /// Starting level-2 profile: empty, complete_bipartite or mds.
    #[arg(long)]
    level2: Option<String>,
    /// level1, level2 or both.
    #[arg(long, value_parser = serde_value::<Scope>)]
    scope: Option<Scope>,
    /// round_robin or random_permutation.
    #[arg(long, value_parser = serde_value::<ScheduleKind>)]
    schedule: Option<ScheduleKind>,
    /// Seed of the random-permutation schedule.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    max_rounds: Option<usize>,
    /// exact or greedy.
    #[arg(long, value_parser = serde_value::<Oracle>)]
    oracle: Option<Oracle>,
    /// In nash mode, list every level-2 equilibrium.
    #[arg(long)]
    enumerate: bool,
}

impl Overrides {
    fn apply(self, spec: &mut ScenarioSpec) -> CliResult<()> {
        if let Some(kind) = self.graph {
            let n = self
                .n
                .or(spec.graph.as_ref().map(GraphSpec::n))
                .ok_or_else(|| CliError::Usage("--graph needs --n".into()))?;
            spec.graph = Some(match kind.as_str() {
                "path" => GraphSpec::Path { n },
                "cycle" => GraphSpec::Cycle { n },
                "star" => GraphSpec::Star { n },
                "complete" => GraphSpec::Complete { n },
                "erdos_renyi" => GraphSpec::ErdosRenyi {
                    n,
                    p: self
                        .p
                        .ok_or_else(|| CliError::Usage("erdos_renyi needs --p".into()))?,
                    seed: self.graph_seed.unwrap_or(0),
                    require_connected: false,
                },
                other => return Err(CliError::Usage(format!("unknown graph kind {other:?}"))),
            });
            spec.level1 = None;
        } else if self.n.is_some() || self.p.is_some() || self.graph_seed.is_some() {
            return Err(CliError::Usage(
                "--n, --p and --graph-seed need --graph".into(),
            ));
        }
        if let Some(v) = self.n2 {
            spec.n2 = Some(v);
        }
        let c = &mut spec.config;
        c.alpha = self.alpha.unwrap_or(c.alpha);
        c.beta = self.beta.unwrap_or(c.beta);
        c.job_cost_type = self.job_cost_type.unwrap_or(c.job_cost_type);
        c.rcs_constant = self.rcs_constant.unwrap_or(c.rcs_constant);
        c.transit_policy = self.transit.unwrap_or(c.transit_policy);
        if let Some(l2) = self.level2 {
            spec.level2 = match l2.as_str() {
                "empty" => Level2Spec::Empty,
                "complete_bipartite" => Level2Spec::CompleteBipartite,
                "mds" => Level2Spec::Mds,
                other => return Err(CliError::Usage(format!("unknown level2 profile {other:?}"))),
            };
        }
        let o = &mut spec.options;
        o.scope = self.scope.unwrap_or(o.scope);
        o.schedule = self.schedule.unwrap_or(o.schedule);
        o.seed = self.seed.unwrap_or(o.seed);
        o.max_rounds = self.max_rounds.unwrap_or(o.max_rounds);
        o.oracle = self.oracle.unwrap_or(o.oracle);
        o.enumerate |= self.enumerate;
        Ok(())
    }
}

impl Common {
    fn spec(self) -> CliResult<(ScenarioSpec, Format)> {
        let mut spec = match &self.scenario {
            Some(path) => {
                let text = std::fs::read_to_string(path)?;
                ScenarioSpec::from_toml(&text)
                    .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?
            }
            None => ScenarioSpec::default(),
        };
        self.overrides.apply(&mut spec)?;
        Ok((spec, self.format))
    }
}

fn single(common: Common, mode: Mode) -> CliResult<i32> {
    let (spec, format) = common.spec()?;
    let record = run(&spec, Some(mode))?;
    print!("{}", emit(&record, format)?);
    Ok(if record.result.verification_failed() {
        EXIT_VERIFICATION
    } else {
        EXIT_OK
    })
}

fn dispatch(cli: Cli) -> CliResult<i32> {
    match cli.command {
        Command::Gen(c) => single(c, Mode::Gen),
        Command::Cost(c) => single(c, Mode::Cost),
        Command::Dynamics(c) => single(c, Mode::Dynamics),
        Command::Nash(c) => single(c, Mode::Nash),
        Command::Poa(c) => single(c, Mode::Poa),
        Command::Bounds(c) => single(c, Mode::Bounds),
        Command::Verify { format } => {
            let common = Common {
                scenario: None,
                format,
                overrides: Overrides::default(),
            };
            single(common, Mode::Verify)
        }
        Command::Sweep {
            common,
            param,
            values,
            mode,
        } => {
            let (spec, format) = common.spec()?;
            let entries = sweep(&spec, mode, param, &values)?;
            print!("{}", emit_sweep(&entries, format)?);
            let failed = entries
                .iter()
                .any(|e| e.record.result.verification_failed());
            Ok(if failed { EXIT_VERIFICATION } else { EXIT_OK })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            if let Some(hint) = e.hint() {
                eprintln!("hint: {hint}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
