use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::run::{resolve_mode, run, RunRecord};
use crate::scenario::{GraphSpec, Level2Spec, Mode, ScenarioSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum SweepParam {
    Beta,
    Alpha,
    /// Vertex count of a generated graph.
    N,
    /// Edge probability of an Erdős–Rényi graph, else of a random level-2
    /// profile.
    P,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub parameter: SweepParam,
    pub value: f64,
    pub record: RunRecord,
}

pub fn substitute(
    template: &ScenarioSpec,
    param: SweepParam,
    value: f64,
) -> CliResult<ScenarioSpec> {
    let mut spec = template.clone();
    match param {
        SweepParam::Beta => spec.config.beta = value,
        SweepParam::Alpha => spec.config.alpha = value,
        SweepParam::N => {
            if !(value >= 1.0 && value.fract() == 0.0) {
                return Err(CliError::Usage(format!(
                    "n must be a positive integer, got {value}"
                )));
            }
            let new_n = value as usize;
            match spec.graph.as_mut() {
                Some(
                    GraphSpec::Path { n }
                    | GraphSpec::Cycle { n }
                    | GraphSpec::Star { n }
                    | GraphSpec::Complete { n }
                    | GraphSpec::ErdosRenyi { n, .. },
                ) => *n = new_n,
                _ => {
                    return Err(CliError::Usage(
                        "sweeping n needs a generated [graph]".into(),
                    ))
                }
            }
        }
        SweepParam::P => match (spec.graph.as_mut(), &mut spec.level2) {
            (Some(GraphSpec::ErdosRenyi { p, .. }), _) | (_, Level2Spec::Random { p, .. }) => {
                *p = value
            }
            _ => {
                return Err(CliError::Usage(
                    "sweeping p needs an erdos_renyi graph or a random level2 profile".into(),
                ))
            }
        },
    }
    Ok(spec)
}

/// One independent run per value, in the order given. Runs execute on
/// separate threads; the result does not depend on scheduling.
pub fn sweep(
    template: &ScenarioSpec,
    mode: Option<Mode>,
    param: SweepParam,
    values: &[f64],
) -> CliResult<Vec<SweepEntry>> {
    let mode = resolve_mode(template, mode)?;
    let specs = values
        .iter()
        .map(|&v| substitute(template, param, v))
        .collect::<CliResult<Vec<_>>>()?;
    let records: Vec<CliResult<RunRecord>> = std::thread::scope(|scope| {
        let handles: Vec<_> = specs
            .iter()
            .map(|s| scope.spawn(move || run(s, Some(mode))))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });
    values
        .iter()
        .zip(records)
        .map(|(&value, record)| {
            Ok(SweepEntry {
                parameter: param,
                value,
                record: record?,
            })
        })
        .collect()
}
