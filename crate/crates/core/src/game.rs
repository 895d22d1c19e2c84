//! The two-level game: configuration, strategy profiles, network
//! construction and per-player / social costs.
//!
//! Level 1 is a sum-distance network creation game among the `n1` edge-fog
//! devices. Level 2 lets each of the `n2` job devices buy links into the
//! edge-fog network. Fog vertex `i` keeps index `i` in the combined graph and
//! job `j` becomes vertex `n1 + j`; jobs never link to each other.

use serde::{Deserialize, Serialize};

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::graph::{all_pairs_distances, Distance, Graph, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum JobCostType {
    /// `beta * |S| - 1 / (sum of distances to fog vertices)`.
    #[serde(rename = "type1")]
    TypeI,
    /// `beta * |S| + sum of distances to fog vertices`.
    #[serde(rename = "type2")]
    TypeII,
}

/// Which paths count for a job's distance to the fog vertices.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransitPolicy {
    /// Paths leave the job through one of its own links and then stay inside
    /// the edge-fog network: `dist = min over s in S of 1 + d_G1(s, w)`.
    /// Job costs are then independent of the other jobs.
    FogOnly,
    /// True shortest paths in the combined graph, which may pass through
    /// other job vertices.
    #[default]
    FullCombined,
}

/// Parameters shared by every player.
///
/// A Type I job that cannot reach every fog vertex is charged
/// [`Cost::Infinite`], not `beta * |S| - 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GameConfig {
    /// Price of one level-1 link.
    pub alpha: f64,
    /// Price of one job-to-fog link.
    pub beta: f64,
    pub job_cost_type: JobCostType,
    /// Constant of the reverse Cauchy–Schwarz bound used by the Type I
    /// formulas.
    pub rcs_constant: f64,
    pub transit_policy: TransitPolicy,
}

impl GameConfig {
    pub fn new(alpha: f64, beta: f64, job_cost_type: JobCostType) -> Result<GameConfig> {
        let cfg = GameConfig {
            alpha,
            beta,
            job_cost_type,
            rcs_constant: 1.0,
            transit_policy: TransitPolicy::FullCombined,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_transit(mut self, policy: TransitPolicy) -> GameConfig {
        self.transit_policy = policy;
        self
    }

    pub fn with_rcs_constant(mut self, c: f64) -> Result<GameConfig> {
        self.rcs_constant = c;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha.is_finite() && self.alpha >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "alpha must be >= 0, got {}",
                self.alpha
            )));
        }
        if !(self.beta.is_finite() && self.beta >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "beta must be >= 0, got {}",
                self.beta
            )));
        }
        if !(self.rcs_constant.is_finite() && self.rcs_constant > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "rcs_constant must be > 0, got {}",
                self.rcs_constant
            )));
        }
        Ok(())
    }
}

/// One strategy per edge-fog player: the fog vertices it buys links to.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<VertexSet>", into = "Vec<VertexSet>")]
pub struct Level1Profile {
    strategies: Vec<VertexSet>,
}

impl TryFrom<Vec<VertexSet>> for Level1Profile {
    type Error = Error;

    fn try_from(v: Vec<VertexSet>) -> Result<Self> {
        Level1Profile::new(v)
    }
}

impl From<Level1Profile> for Vec<VertexSet> {
    fn from(p: Level1Profile) -> Self {
        p.strategies
    }
}

impl Level1Profile {
    pub fn new(strategies: Vec<VertexSet>) -> Result<Level1Profile> {
        let n1 = strategies.len();
        for (i, s) in strategies.iter().enumerate() {
            if s.contains(i) {
                return Err(Error::InvalidProfile(format!(
                    "player {i} buys a link to itself"
                )));
            }
            s.check_range(n1)?;
        }
        Ok(Level1Profile { strategies })
    }

    pub fn empty(n1: usize) -> Level1Profile {
        Level1Profile {
            strategies: vec![VertexSet::new(); n1],
        }
    }

    pub fn n1(&self) -> usize {
        self.strategies.len()
    }

    pub fn strategy(&self, i: usize) -> &VertexSet {
        &self.strategies[i]
    }

    pub fn strategies(&self) -> &[VertexSet] {
        &self.strategies
    }

    pub fn with_strategy(&self, i: usize, s: VertexSet) -> Result<Level1Profile> {
        check_player(i, self.n1())?;
        let mut strategies = self.strategies.clone();
        strategies[i] = s;
        Level1Profile::new(strategies)
    }

    /// Total links paid for, counting a doubly bought edge twice.
    pub fn purchases(&self) -> usize {
        self.strategies.iter().map(VertexSet::len).sum()
    }
}

/// One strategy per job player: the fog vertices it links to.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Level2Profile {
    strategies: Vec<VertexSet>,
}

impl Level2Profile {
    /// Range checks against `n1` happen when the profile joins a state.
    pub fn new(strategies: Vec<VertexSet>) -> Level2Profile {
        Level2Profile { strategies }
    }

    pub fn empty(n2: usize) -> Level2Profile {
        Level2Profile::new(vec![VertexSet::new(); n2])
    }

    pub fn n2(&self) -> usize {
        self.strategies.len()
    }

    pub fn strategy(&self, j: usize) -> &VertexSet {
        &self.strategies[j]
    }

    pub fn strategies(&self) -> &[VertexSet] {
        &self.strategies
    }

    pub fn check_range(&self, n1: usize) -> Result<()> {
        self.strategies.iter().try_for_each(|s| s.check_range(n1))
    }

    pub fn with_strategy(&self, j: usize, s: VertexSet) -> Result<Level2Profile> {
        check_player(j, self.n2())?;
        let mut strategies = self.strategies.clone();
        strategies[j] = s;
        Ok(Level2Profile { strategies })
    }

    /// `|I|`: number of job-to-fog links, `sum_j |S_j|`.
    pub fn interconnection_count(&self) -> usize {
        self.strategies.iter().map(VertexSet::len).sum()
    }

    /// Fog vertices linked to by at least one job. Diagnostic only; the
    /// bounds use [`Self::interconnection_count`].
    pub fn interconnection_union(&self) -> VertexSet {
        self.strategies.iter().flat_map(VertexSet::iter).collect()
    }
}

fn check_player(player: usize, count: usize) -> Result<()> {
    if player >= count {
        Err(Error::PlayerOutOfRange { player, count })
    } else {
        Ok(())
    }
}

/// The edge-fog level is either played (a profile) or given (a fixed graph).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level1 {
    Profile(Level1Profile),
    Fixed(Graph),
}

#[derive(Serialize, Deserialize)]
struct StateRepr {
    level1: Level1,
    level2: Level2Profile,
    #[serde(default)]
    relaxed: bool,
}

/// Strategies of both levels. Immutable; the edge-fog graph is derived once
/// at construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateRepr", into = "StateRepr")]
pub struct GameState {
    level1: Level1,
    level2: Level2Profile,
    relaxed: bool,
    g1: Graph,
}

impl TryFrom<StateRepr> for GameState {
    type Error = Error;

    fn try_from(r: StateRepr) -> Result<GameState> {
        GameState::build(r.level1, r.level2, r.relaxed)
    }
}

impl From<GameState> for StateRepr {
    fn from(s: GameState) -> StateRepr {
        StateRepr {
            level1: s.level1,
            level2: s.level2,
            relaxed: s.relaxed,
        }
    }
}

impl GameState {
    /// Requires `n1 == n2`.
    pub fn new(level1: Level1, level2: Level2Profile) -> Result<GameState> {
        GameState::build(level1, level2, false)
    }

    /// Allows `n1 != n2`; the closed-form bound evaluators refuse such states.
    pub fn new_relaxed(level1: Level1, level2: Level2Profile) -> Result<GameState> {
        GameState::build(level1, level2, true)
    }

    /// Fixed edge-fog graph with `n1 == n2`.
    pub fn fixed(g1: Graph, level2: Level2Profile) -> Result<GameState> {
        GameState::new(Level1::Fixed(g1), level2)
    }

    fn build(level1: Level1, level2: Level2Profile, relaxed: bool) -> Result<GameState> {
        let g1 = match &level1 {
            Level1::Profile(p) => build_level1_graph(p),
            Level1::Fixed(g) => g.clone(),
        };
        level2.check_range(g1.n())?;
        if !relaxed && g1.n() != level2.n2() {
            return Err(Error::UnequalSides {
                n1: g1.n(),
                n2: level2.n2(),
            });
        }
        Ok(GameState {
            level1,
            level2,
            relaxed,
            g1,
        })
    }

    pub fn n1(&self) -> usize {
        self.g1.n()
    }

    pub fn n2(&self) -> usize {
        self.level2.n2()
    }

    pub fn g1(&self) -> &Graph {
        &self.g1
    }

    pub fn level1(&self) -> &Level1 {
        &self.level1
    }

    pub fn level1_profile(&self) -> Option<&Level1Profile> {
        match &self.level1 {
            Level1::Profile(p) => Some(p),
            Level1::Fixed(_) => None,
        }
    }

    pub fn level2(&self) -> &Level2Profile {
        &self.level2
    }

    pub fn is_relaxed(&self) -> bool {
        self.relaxed
    }

    /// The common side length `n = n1 = n2`, or an error if they differ.
    pub fn equal_sides(&self) -> Result<usize> {
        if self.n1() == self.n2() {
            Ok(self.n1())
        } else {
            Err(Error::UnequalSides {
                n1: self.n1(),
                n2: self.n2(),
            })
        }
    }

    pub fn with_job_strategy(&self, j: usize, s: VertexSet) -> Result<GameState> {
        let level2 = self.level2.with_strategy(j, s)?;
        GameState::build(self.level1.clone(), level2, self.relaxed)
    }

    pub fn with_fog_strategy(&self, i: usize, s: VertexSet) -> Result<GameState> {
        let profile = self.level1_profile().ok_or(Error::NotProfileMode)?;
        let level1 = Level1::Profile(profile.with_strategy(i, s)?);
        GameState::build(level1, self.level2.clone(), self.relaxed)
    }

    pub fn with_level2(&self, level2: Level2Profile) -> Result<GameState> {
        GameState::build(self.level1.clone(), level2, self.relaxed)
    }

    pub fn combined_graph(&self) -> Graph {
        combined_unchecked(&self.g1, &self.level2)
    }
}

/// Edge `{i, k}` exists iff either endpoint bought it.
pub fn build_level1_graph(p: &Level1Profile) -> Graph {
    Graph::from_edge_union(
        p.n1(),
        p.strategies()
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.iter().map(move |k| (i, k))),
    )
}

/// Union of `g1` and the job links, on `n1 + n2` vertices.
pub fn build_combined_graph(g1: &Graph, p: &Level2Profile) -> Result<Graph> {
    p.check_range(g1.n())?;
    Ok(combined_unchecked(g1, p))
}

fn combined_unchecked(g1: &Graph, p: &Level2Profile) -> Graph {
    let n1 = g1.n();
    let job_edges = p
        .strategies()
        .iter()
        .enumerate()
        .flat_map(|(j, s)| s.iter().map(move |f| (f, n1 + j)));
    Graph::from_edge_union(n1 + p.n2(), g1.edges().iter().copied().chain(job_edges))
}

/// Cost of a job that bought `bought` links and whose distances to the
/// `n1` fog vertices sum to `dsum`.
pub(crate) fn job_cost(cfg: &GameConfig, bought: usize, dsum: Distance, n1: usize) -> Cost {
    let purchase = cfg.beta * bought as f64;
    if n1 == 0 {
        return Cost::Finite(purchase);
    }
    match (cfg.job_cost_type, dsum) {
        (_, Distance::Infinite) => Cost::Infinite,
        (JobCostType::TypeII, Distance::Finite(d)) => Cost::Finite(purchase + d as f64),
        (JobCostType::TypeI, Distance::Finite(0)) => Cost::Finite(purchase),
        (JobCostType::TypeI, Distance::Finite(d)) => Cost::Finite(purchase - 1.0 / d as f64),
    }
}

/// `alpha * |S_i| + sum of G1 distances from i`. Distances never use job
/// links. With a fixed G1 only the distance term applies.
pub fn edge_fog_player_cost(i: usize, state: &GameState, cfg: &GameConfig) -> Result<Cost> {
    cfg.validate()?;
    check_player(i, state.n1())?;
    let dsum: Distance = state.g1().bfs(i).into_iter().sum();
    let bought = state.level1_profile().map_or(0, |p| p.strategy(i).len());
    Ok(match dsum {
        Distance::Infinite => Cost::Infinite,
        Distance::Finite(d) => Cost::Finite(cfg.alpha * bought as f64 + d as f64),
    })
}

/// Cost of job `j`, measuring distances under `cfg.transit_policy`.
pub fn job_player_cost(j: usize, state: &GameState, cfg: &GameConfig) -> Result<Cost> {
    cfg.validate()?;
    check_player(j, state.n2())?;
    let n1 = state.n1();
    let strategy = state.level2().strategy(j);
    let dsum: Distance = match cfg.transit_policy {
        TransitPolicy::FullCombined => state.combined_graph().bfs(n1 + j)[..n1]
            .iter()
            .copied()
            .sum(),
        TransitPolicy::FogOnly => {
            let rows: Vec<Vec<Distance>> = strategy.iter().map(|s| state.g1().bfs(s)).collect();
            fog_only_sum(n1, rows.iter().map(Vec::as_slice))
        }
    };
    Ok(job_cost(cfg, strategy.len(), dsum, n1))
}

/// `sum over w of min over rows of 1 + row[w]`; `Infinite` for no rows.
fn fog_only_sum<'a>(n1: usize, rows: impl Iterator<Item = &'a [Distance]> + Clone) -> Distance {
    (0..n1)
        .map(|w| {
            rows.clone()
                .map(|row| row[w].step())
                .min()
                .unwrap_or(Distance::Infinite)
        })
        .sum()
}

/// All job costs, sharing one distance computation.
pub(crate) fn level2_costs(state: &GameState, cfg: &GameConfig) -> Vec<Cost> {
    let n1 = state.n1();
    let p = state.level2();
    match cfg.transit_policy {
        TransitPolicy::FullCombined => {
            let g = state.combined_graph();
            (0..p.n2())
                .map(|j| {
                    let dsum = g.bfs(n1 + j)[..n1].iter().copied().sum();
                    job_cost(cfg, p.strategy(j).len(), dsum, n1)
                })
                .collect()
        }
        TransitPolicy::FogOnly => {
            let apsp = all_pairs_distances(state.g1());
            p.strategies()
                .iter()
                .map(|s| {
                    let dsum = fog_only_sum(n1, s.as_slice().iter().map(|&v| apsp.row(v)));
                    job_cost(cfg, s.len(), dsum, n1)
                })
                .collect()
        }
    }
}

/// Sum of edge-fog player costs. Players who bought the same edge are both
/// charged.
pub fn social_cost_level1(state: &GameState, cfg: &GameConfig) -> Result<Cost> {
    if state.level1_profile().is_none() {
        return Err(Error::NotProfileMode);
    }
    (0..state.n1())
        .map(|i| edge_fog_player_cost(i, state, cfg))
        .sum()
}

pub fn social_cost_level2(state: &GameState, cfg: &GameConfig) -> Result<Cost> {
    cfg.validate()?;
    Ok(level2_costs(state, cfg).into_iter().sum())
}

/// Per-player and social costs of both levels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostReport {
    pub level1_costs: Vec<Cost>,
    pub level2_costs: Vec<Cost>,
    pub social_level1: Cost,
    pub social_level2: Cost,
    pub interconnection_count: usize,
    pub interconnection_union: usize,
}

impl CostReport {
    pub fn evaluate(state: &GameState, cfg: &GameConfig) -> Result<CostReport> {
        let level1_costs = (0..state.n1())
            .map(|i| edge_fog_player_cost(i, state, cfg))
            .collect::<Result<Vec<_>>>()?;
        let level2_costs = level2_costs(state, cfg);
        Ok(CostReport {
            social_level1: level1_costs.iter().copied().sum(),
            social_level2: level2_costs.iter().copied().sum(),
            level1_costs,
            level2_costs,
            interconnection_count: state.level2().interconnection_count(),
            interconnection_union: state.level2().interconnection_union().len(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domination::min_dominating_set;
    use crate::generate::{generate, Generator};
    use proptest::prelude::*;

    fn sets(v: &[&[usize]]) -> Vec<VertexSet> {
        v.iter().map(|s| s.iter().copied().collect()).collect()
    }

    fn k(n: usize) -> Graph {
        generate(&Generator::Complete, n).unwrap()
    }

    fn type2(beta: f64) -> GameConfig {
        GameConfig::new(1.0, beta, JobCostType::TypeII).unwrap()
    }

    #[test]
    fn level1_graph_is_purchase_union() {
        let p = Level1Profile::new(sets(&[&[1], &[0], &[]])).unwrap();
        assert_eq!(build_level1_graph(&p).edges(), &[(0, 1)]);

        let p = Level1Profile::new(sets(&[&[1, 2], &[], &[]])).unwrap();
        assert_eq!(build_level1_graph(&p).edges(), &[(0, 1), (0, 2)]);

        assert_eq!(build_level1_graph(&Level1Profile::empty(3)).edge_count(), 0);
        assert!(Level1Profile::new(sets(&[&[0]])).is_err());
    }

    #[test]
    fn combined_graph_layout() {
        let p = Level2Profile::new(sets(&[&[0], &[1]]));
        let g = build_combined_graph(&k(2), &p).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 3)]);

        let g = build_combined_graph(&k(2), &Level2Profile::empty(2)).unwrap();
        assert_eq!(g.edges(), &[(0, 1)]);

        let full = Level2Profile::new(vec![VertexSet::full(3); 2]);
        assert_eq!(
            build_combined_graph(&k(3), &full).unwrap().edge_count(),
            3 + 6
        );

        let bad = Level2Profile::new(sets(&[&[2]]));
        assert!(build_combined_graph(&k(2), &bad).is_err());
    }

    #[test]
    fn fog_player_costs() {
        let cfg = GameConfig::new(2.0, 1.0, JobCostType::TypeII).unwrap();
        let star = Level1Profile::new(sets(&[&[1, 2, 3], &[], &[], &[]])).unwrap();
        let state = GameState::new(Level1::Profile(star), Level2Profile::empty(4)).unwrap();
        assert_eq!(
            edge_fog_player_cost(0, &state, &cfg).unwrap(),
            Cost::Finite(9.0)
        );
        assert_eq!(
            edge_fog_player_cost(1, &state, &cfg).unwrap(),
            Cost::Finite(5.0)
        );

        let edgeless = GameState::new(
            Level1::Profile(Level1Profile::empty(3)),
            Level2Profile::empty(3),
        )
        .unwrap();
        assert_eq!(
            edge_fog_player_cost(1, &edgeless, &cfg).unwrap(),
            Cost::Infinite
        );
    }

    #[test]
    fn job_player_costs() {
        let st =
            GameState::new_relaxed(Level1::Fixed(k(2)), Level2Profile::new(sets(&[&[0]]))).unwrap();
        assert_eq!(
            job_player_cost(0, &st, &type2(1.5)).unwrap(),
            Cost::Finite(4.5)
        );

        let beta = 0.75;
        let cfg = GameConfig::new(1.0, beta, JobCostType::TypeI).unwrap();
        let st = GameState::new_relaxed(Level1::Fixed(k(2)), Level2Profile::new(sets(&[&[0, 1]])))
            .unwrap();
        assert_eq!(
            job_player_cost(0, &st, &cfg).unwrap(),
            Cost::Finite(2.0 * beta - 0.5)
        );

        let st = GameState::fixed(k(2), Level2Profile::new(sets(&[&[], &[0]]))).unwrap();
        for cfg in [type2(1.0), cfg] {
            assert_eq!(job_player_cost(0, &st, &cfg).unwrap(), Cost::Infinite);
        }
    }

    #[test]
    fn type1_with_no_fog_vertices() {
        let cfg = GameConfig::new(1.0, 2.0, JobCostType::TypeI).unwrap();
        let st = GameState::new_relaxed(Level1::Fixed(Graph::empty(0)), Level2Profile::empty(1))
            .unwrap();
        assert_eq!(job_player_cost(0, &st, &cfg).unwrap(), Cost::Finite(0.0));
    }

    #[test]
    fn interconnection_counting() {
        let full = Level2Profile::new(vec![VertexSet::full(4); 4]);
        assert_eq!(full.interconnection_count(), 16);
        assert_eq!(Level2Profile::empty(3).interconnection_count(), 0);
        let p = Level2Profile::new(sets(&[&[0], &[0], &[0, 1]]));
        assert_eq!(p.interconnection_count(), 4);
        assert_eq!(p.interconnection_union(), VertexSet::from([0, 1]));
    }

    #[test]
    fn level1_social_costs() {
        let alpha = 3.0;
        let cfg = GameConfig::new(alpha, 1.0, JobCostType::TypeII).unwrap();
        let single = Level1Profile::new(sets(&[&[1], &[]])).unwrap();
        let st = GameState::new(Level1::Profile(single), Level2Profile::empty(2)).unwrap();
        assert_eq!(
            social_cost_level1(&st, &cfg).unwrap(),
            Cost::Finite(alpha + 2.0)
        );

        let double = Level1Profile::new(sets(&[&[1], &[0]])).unwrap();
        let st = GameState::new(Level1::Profile(double), Level2Profile::empty(2)).unwrap();
        assert_eq!(
            social_cost_level1(&st, &cfg).unwrap(),
            Cost::Finite(2.0 * alpha + 2.0)
        );

        let st = GameState::new(
            Level1::Profile(Level1Profile::empty(3)),
            Level2Profile::empty(3),
        )
        .unwrap();
        assert_eq!(social_cost_level1(&st, &cfg).unwrap(), Cost::Infinite);

        let fixed = GameState::fixed(k(2), Level2Profile::empty(2)).unwrap();
        assert_eq!(social_cost_level1(&fixed, &cfg), Err(Error::NotProfileMode));
    }

    #[test]
    fn level2_social_costs() {
        for beta in [0.5, 1.5, 3.0] {
            let n = 3;
            let st =
                GameState::fixed(k(n), Level2Profile::new(vec![VertexSet::full(n); n])).unwrap();
            let want = (beta * n as f64 + n as f64) * n as f64;
            assert_eq!(
                social_cost_level2(&st, &type2(beta)).unwrap(),
                Cost::Finite(want)
            );
        }
        let st = GameState::fixed(k(2), Level2Profile::new(sets(&[&[0], &[0]]))).unwrap();
        assert_eq!(
            social_cost_level2(&st, &type2(1.5)).unwrap(),
            Cost::Finite(2.0 * (1.5 + 3.0))
        );

        let st = GameState::fixed(k(2), Level2Profile::empty(2)).unwrap();
        assert_eq!(
            social_cost_level2(&st, &type2(1.5)).unwrap(),
            Cost::Infinite
        );
    }

    #[test]
    fn unequal_sides_need_relaxed_mode() {
        let err = GameState::fixed(k(3), Level2Profile::empty(2)).unwrap_err();
        assert_eq!(err, Error::UnequalSides { n1: 3, n2: 2 });
        let st = GameState::new_relaxed(Level1::Fixed(k(3)), Level2Profile::empty(2)).unwrap();
        assert!(st.equal_sides().is_err());
    }

    #[test]
    fn purchase_direction_does_not_change_graph() {
        let a = Level1Profile::new(sets(&[&[1], &[]])).unwrap();
        let b = Level1Profile::new(sets(&[&[], &[0]])).unwrap();
        assert_eq!(build_level1_graph(&a), build_level1_graph(&b));
        let cfg = GameConfig::new(2.0, 1.0, JobCostType::TypeII).unwrap();
        let sa = GameState::new(Level1::Profile(a), Level2Profile::empty(2)).unwrap();
        let sb = GameState::new(Level1::Profile(b), Level2Profile::empty(2)).unwrap();
        assert_ne!(
            CostReport::evaluate(&sa, &cfg).unwrap(),
            CostReport::evaluate(&sb, &cfg).unwrap()
        );
    }

    #[test]
    fn dominating_profile_cost_under_fog_only() {
        for seed in 0..25u64 {
            let n = 2 + (seed as usize % 9);
            let g = generate(
                &Generator::ErdosRenyi {
                    p: 0.4,
                    seed,
                    require_connected: true,
                },
                n,
            )
            .unwrap();
            let d = min_dominating_set(&g).unwrap();
            let beta = 1.25;
            let cfg = type2(beta).with_transit(TransitPolicy::FogOnly);
            let st = GameState::fixed(g, Level2Profile::new(vec![d.clone(); n])).unwrap();
            let gamma = d.len() as f64;
            let want = beta * gamma + gamma + 2.0 * (n as f64 - gamma);
            for j in 0..n {
                assert_eq!(job_player_cost(j, &st, &cfg).unwrap(), Cost::Finite(want));
            }
        }
    }

    fn arb_state() -> impl Strategy<Value = (GameState, usize)> {
        (2usize..6, any::<u64>(), 0.0f64..1.0)
            .prop_flat_map(|(n, seed, p)| {
                let g = generate(
                    &Generator::ErdosRenyi {
                        p,
                        seed,
                        require_connected: false,
                    },
                    n,
                )
                .unwrap();
                let masks = proptest::collection::vec(0u64..(1 << n), n);
                (Just(g), masks, 0..n)
            })
            .prop_map(|(g, masks, j)| {
                let p = Level2Profile::new(masks.into_iter().map(VertexSet::from_mask).collect());
                (GameState::fixed(g, p).unwrap(), j)
            })
    }

    proptest! {
        #[test]
        fn social_cost_is_sum_of_player_costs((state, _j) in arb_state(), beta in 0.0f64..4.0) {
            for (ty, policy) in [
                (JobCostType::TypeI, TransitPolicy::FullCombined),
                (JobCostType::TypeII, TransitPolicy::FullCombined),
                (JobCostType::TypeI, TransitPolicy::FogOnly),
                (JobCostType::TypeII, TransitPolicy::FogOnly),
            ] {
                let cfg = GameConfig::new(1.0, beta, ty).unwrap().with_transit(policy);
                let report = CostReport::evaluate(&state, &cfg).unwrap();
                let total: Cost = report.level2_costs.iter().copied().sum();
                for j in 0..state.n2() {
                    prop_assert_eq!(report.level2_costs[j], job_player_cost(j, &state, &cfg).unwrap());
                }
                prop_assert_eq!(report.social_level2, total);
                prop_assert_eq!(social_cost_level2(&state, &cfg).unwrap(), total);
            }
        }

        #[test]
        fn type2_monotone_in_other_players_links((state, j) in arb_state(), extra in 0u64..64) {
            let cfg = type2(1.0);
            let n1 = state.n1();
            let before = job_player_cost(j, &state, &cfg).unwrap();
            let other = (j + 1) % state.n2();
            let mut grown = state.level2().strategy(other).clone();
            for v in VertexSet::from_mask(extra).iter().filter(|&v| v < n1) {
                grown.insert(v);
            }
            let after = job_player_cost(j, &state.with_job_strategy(other, grown).unwrap(), &cfg).unwrap();
            prop_assert!(after <= before);
        }

        #[test]
        fn own_distance_term_monotone((state, j) in arb_state(), v in 0usize..6) {
            // beta = 0 isolates the distance term
            let cfg = type2(0.0);
            let v = v % state.n1();
            let before = job_player_cost(j, &state, &cfg).unwrap();
            let mut s = state.level2().strategy(j).clone();
            s.insert(v);
            let after = job_player_cost(j, &state.with_job_strategy(j, s).unwrap(), &cfg).unwrap();
            prop_assert!(after <= before);
        }
    }
}
