//! TOML scenario files. Every table rejects unknown keys.

use edgefog_core::equilibrium::{
    construct_complete_bipartite, construct_mds_profile, DynamicsOptions, Oracle, Schedule, Scope,
};
use edgefog_core::{
    build_level1_graph, generate, GameConfig, GameState, Generator, Graph, JobCostType, Level1,
    Level1Profile, Level2Profile, TransitPolicy, VertexSet,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Gen,
    Cost,
    Dynamics,
    Nash,
    Poa,
    Bounds,
    Verify,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GraphSpec {
    Inline {
        n: usize,
        #[serde(default)]
        edges: Vec<(usize, usize)>,
    },
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Star {
        n: usize,
    },
    Complete {
        n: usize,
    },
    ErdosRenyi {
        n: usize,
        p: f64,
        seed: u64,
        #[serde(default)]
        require_connected: bool,
    },
}

impl GraphSpec {
    pub fn n(&self) -> usize {
        match self {
            GraphSpec::Inline { n, .. }
            | GraphSpec::Path { n }
            | GraphSpec::Cycle { n }
            | GraphSpec::Star { n }
            | GraphSpec::Complete { n }
            | GraphSpec::ErdosRenyi { n, .. } => *n,
        }
    }

    pub fn build(&self) -> CliResult<Graph> {
        let (generator, n) = match self {
            GraphSpec::Inline { n, edges } => return Ok(Graph::new(*n, edges.iter().copied())?),
            GraphSpec::Path { n } => (Generator::Path, *n),
            GraphSpec::Cycle { n } => (Generator::Cycle, *n),
            GraphSpec::Star { n } => (Generator::Star, *n),
            GraphSpec::Complete { n } => (Generator::Complete, *n),
            GraphSpec::ErdosRenyi {
                n,
                p,
                seed,
                require_connected,
            } => (
                Generator::ErdosRenyi {
                    p: *p,
                    seed: *seed,
                    require_connected: *require_connected,
                },
                *n,
            ),
        };
        Ok(generate(&generator, n)?)
    }
}

/// Level-1 strategies; the edge-fog graph is then induced by them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Level1Spec {
    pub strategies: Vec<VertexSet>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigSpec {
    #[serde(default = "one")]
    pub alpha: f64,
    #[serde(default = "one")]
    pub beta: f64,
    #[serde(default = "type2")]
    pub job_cost_type: JobCostType,
    #[serde(default = "one")]
    pub rcs_constant: f64,
    #[serde(default)]
    pub transit_policy: TransitPolicy,
}

fn one() -> f64 {
    1.0
}

fn type2() -> JobCostType {
    JobCostType::TypeII
}

impl Default for ConfigSpec {
    fn default() -> Self {
        ConfigSpec {
            alpha: 1.0,
            beta: 1.0,
            job_cost_type: JobCostType::TypeII,
            rcs_constant: 1.0,
            transit_policy: TransitPolicy::FullCombined,
        }
    }
}

impl ConfigSpec {
    pub fn build(&self) -> CliResult<GameConfig> {
        let cfg = GameConfig::new(self.alpha, self.beta, self.job_cost_type)?
            .with_transit(self.transit_policy)
            .with_rcs_constant(self.rcs_constant)?;
        Ok(cfg)
    }
}

/// Starting level-2 profile.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Level2Spec {
    #[default]
    Empty,
    CompleteBipartite,
    /// Every job links to a minimum dominating set.
    Mds,
    /// Each job links to each fog vertex independently with probability `p`.
    Random {
        p: f64,
        seed: u64,
    },
    Explicit {
        strategies: Vec<VertexSet>,
    },
}

impl Level2Spec {
    pub fn build(&self, g1: &Graph, n2: usize) -> CliResult<Level2Profile> {
        let n1 = g1.n();
        Ok(match self {
            Level2Spec::Empty => Level2Profile::empty(n2),
            Level2Spec::CompleteBipartite => construct_complete_bipartite(n1, n2),
            Level2Spec::Mds => construct_mds_profile(g1, n2)?,
            Level2Spec::Random { p, seed } => random_level2(n1, n2, *p, *seed)?,
            Level2Spec::Explicit { strategies } => {
                if strategies.len() != n2 {
                    return Err(CliError::Parse(format!(
                        "level2.strategies has {} entries but n2 = {n2}",
                        strategies.len()
                    )));
                }
                Level2Profile::new(strategies.clone())
            }
        })
    }
}

/// Seeded random level-2 profile; link `(j, w)` is drawn in job-major order.
pub fn random_level2(n1: usize, n2: usize, p: f64, seed: u64) -> CliResult<Level2Profile> {
    if !(0.0..=1.0).contains(&p) {
        return Err(edgefog_core::Error::InvalidProbability(p).into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let strategies = (0..n2)
        .map(|_| (0..n1).filter(|_| rng.gen_bool(p)).collect())
        .collect();
    Ok(Level2Profile::new(strategies))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScheduleKind {
    #[default]
    RoundRobin,
    RandomPermutation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsSpec {
    #[serde(default)]
    pub scope: Scope,
    #[serde(default)]
    pub schedule: ScheduleKind,
    /// Seed of the random-permutation schedule.
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_rounds")]
    pub max_rounds: usize,
    #[serde(default)]
    pub oracle: Oracle,
    /// In `nash` mode, also list every level-2 equilibrium on the graph.
    #[serde(default)]
    pub enumerate: bool,
}

fn default_rounds() -> usize {
    100
}

impl Default for OptionsSpec {
    fn default() -> Self {
        OptionsSpec {
            scope: Scope::Level2,
            schedule: ScheduleKind::RoundRobin,
            seed: 0,
            max_rounds: default_rounds(),
            oracle: Oracle::Exact,
            enumerate: false,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level1: Option<Level1Spec>,
    /// Job count; defaults to the number of fog vertices.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n2: Option<usize>,
    #[serde(default)]
    pub config: ConfigSpec,
    #[serde(default)]
    pub level2: Level2Spec,
    #[serde(default)]
    pub options: OptionsSpec,
}

impl ScenarioSpec {
    pub fn from_toml(text: &str) -> CliResult<ScenarioSpec> {
        toml::from_str(text).map_err(|e| CliError::Parse(e.to_string().trim_end().to_string()))
    }

    pub fn to_toml(&self) -> CliResult<String> {
        toml::to_string(self).map_err(|e| CliError::Format(e.to_string()))
    }

    pub fn config(&self) -> CliResult<GameConfig> {
        self.config.build()
    }

    fn level1(&self) -> CliResult<Level1> {
        match (&self.graph, &self.level1) {
            (Some(_), Some(_)) => Err(CliError::Parse(
                "give either [graph] or [level1], not both".into(),
            )),
            (None, None) => Err(CliError::Parse("missing [graph] or [level1] table".into())),
            (Some(g), None) => Ok(Level1::Fixed(g.build()?)),
            (None, Some(l1)) => Ok(Level1::Profile(Level1Profile::new(l1.strategies.clone())?)),
        }
    }

    /// The edge-fog graph, given directly or induced by level-1 strategies.
    pub fn g1(&self) -> CliResult<Graph> {
        Ok(match self.level1()? {
            Level1::Fixed(g) => g,
            Level1::Profile(p) => build_level1_graph(&p),
        })
    }

    pub fn n2_for(&self, n1: usize) -> usize {
        self.n2.unwrap_or(n1)
    }

    /// Full starting state. States with `n1 != n2` are built relaxed.
    pub fn state(&self) -> CliResult<GameState> {
        let level1 = self.level1()?;
        let g1 = match &level1 {
            Level1::Fixed(g) => g.clone(),
            Level1::Profile(p) => build_level1_graph(p),
        };
        let n2 = self.n2_for(g1.n());
        let level2 = self.level2.build(&g1, n2)?;
        let state = if n2 == g1.n() {
            GameState::new(level1, level2)?
        } else {
            GameState::new_relaxed(level1, level2)?
        };
        Ok(state)
    }

    pub fn dynamics_options(&self) -> DynamicsOptions {
        let o = &self.options;
        DynamicsOptions {
            scope: o.scope,
            schedule: match o.schedule {
                ScheduleKind::RoundRobin => Schedule::RoundRobin,
                ScheduleKind::RandomPermutation => Schedule::RandomPermutation { seed: o.seed },
            },
            max_rounds: o.max_rounds,
            oracle: o.oracle,
        }
    }
}
