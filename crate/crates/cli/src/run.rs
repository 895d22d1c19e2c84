use std::time::Instant;

use edgefog_core::bounds::{check_bounds_on_instance, BoundCheck};
use edgefog_core::equilibrium::{
    best_response_dynamics, empirical_poa, enumerate_nash_level2, is_nash, DynamicsTrace,
    NashProfile, NashVerdict, PoAReport,
};
use edgefog_core::{CostReport, Graph};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::scenario::{Mode, ScenarioSpec};
use crate::verify::{run_preset, VerifyReport};

pub const TOOL_VERSION: &str = concat!("edgefog ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NashPayload {
    pub verdict: NashVerdict,
    /// Every level-2 equilibrium on the same edge-fog graph, when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equilibria: Option<Vec<NashProfile>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "snake_case")]
pub enum Payload {
    Graph(Graph),
    Cost(CostReport),
    Dynamics(DynamicsTrace),
    Nash(NashPayload),
    Poa(PoAReport),
    Bounds(Vec<BoundCheck>),
    Verify(VerifyReport),
}

impl Payload {
    /// A failed bound or preset check.
    pub fn verification_failed(&self) -> bool {
        match self {
            Payload::Bounds(checks) => checks.iter().any(|c| !c.holds),
            Payload::Verify(report) => !report.all_passed,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub spec: ScenarioSpec,
    pub tool_version: String,
    pub duration_secs: f64,
    pub result: Payload,
}

/// The mode given explicitly, else the one named in the spec.
pub fn resolve_mode(spec: &ScenarioSpec, mode: Option<Mode>) -> CliResult<Mode> {
    mode.or(spec.mode).ok_or_else(|| {
        CliError::Usage("no mode given on the command line or in the scenario".into())
    })
}

/// Computes the payload for `mode`. Deterministic in `spec`.
pub fn execute(spec: &ScenarioSpec, mode: Mode) -> CliResult<Payload> {
    Ok(match mode {
        Mode::Gen => Payload::Graph(spec.g1()?),
        Mode::Cost => {
            let state = spec.state()?;
            Payload::Cost(CostReport::evaluate(&state, &spec.config()?)?)
        }
        Mode::Dynamics => {
            let state = spec.state()?;
            Payload::Dynamics(best_response_dynamics(
                &state,
                &spec.config()?,
                &spec.dynamics_options(),
            )?)
        }
        Mode::Nash => {
            let state = spec.state()?;
            let cfg = spec.config()?;
            let verdict = is_nash(&state, &cfg, spec.options.scope)?;
            let equilibria = if spec.options.enumerate {
                Some(enumerate_nash_level2(state.g1(), state.n2(), &cfg)?)
            } else {
                None
            };
            Payload::Nash(NashPayload {
                verdict,
                equilibria,
            })
        }
        Mode::Poa => {
            let g1 = spec.g1()?;
            let n2 = spec.n2_for(g1.n());
            Payload::Poa(empirical_poa(&g1, n2, &spec.config()?)?)
        }
        Mode::Bounds => {
            let state = spec.state()?;
            Payload::Bounds(check_bounds_on_instance(&state, &spec.config()?)?)
        }
        Mode::Verify => Payload::Verify(run_preset()),
    })
}

pub fn run(spec: &ScenarioSpec, mode: Option<Mode>) -> CliResult<RunRecord> {
    let mode = resolve_mode(spec, mode)?;
    let started = Instant::now();
    let result = execute(spec, mode)?;
    let mut spec = spec.clone();
    spec.mode = Some(mode);
    Ok(RunRecord {
        spec,
        tool_version: TOOL_VERSION.to_string(),
        duration_secs: started.elapsed().as_secs_f64(),
        result,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(text: &str) -> ScenarioSpec {
        ScenarioSpec::from_toml(text).unwrap()
    }

    #[test]
    fn gen_star() {
        let rec = run(
            &spec("mode = \"gen\"\n[graph]\nkind = \"star\"\nn = 5\n"),
            None,
        )
        .unwrap();
        let Payload::Graph(g) = rec.result else {
            panic!()
        };
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (0, 3), (0, 4)]);
    }

    #[test]
    fn poa_on_triangle() {
        let s = spec("[graph]\nkind = \"complete\"\nn = 3\n[config]\nbeta = 0.5\n");
        let Payload::Poa(r) = execute(&s, Mode::Poa).unwrap() else {
            panic!()
        };
        assert!((r.poa - 1.0).abs() < 1e-9);
        assert_eq!(r.optimum_cost, 13.5);
    }

    #[test]
    fn missing_mode_is_usage_error() {
        let s = spec("[graph]\nkind = \"path\"\nn = 2\n");
        assert!(matches!(run(&s, None), Err(CliError::Usage(_))));
    }

    #[test]
    fn guard_errors_pass_through() {
        let s = spec("[graph]\nkind = \"path\"\nn = 4\n");
        let err = execute(&s, Mode::Poa).unwrap_err();
        assert_eq!(err.exit_code(), crate::error::EXIT_GUARD);
        assert!(err.hint().unwrap().contains("16"));
    }

    #[test]
    fn bounds_flag_failures() {
        let s =
            spec("[graph]\nkind = \"complete\"\nn = 3\n[level2]\nkind = \"complete_bipartite\"\n");
        let p = execute(&s, Mode::Bounds).unwrap();
        assert!(!p.verification_failed());
    }
}
