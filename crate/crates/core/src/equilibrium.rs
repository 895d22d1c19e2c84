//! Best responses, Nash equilibria, best-response dynamics, social optima
//! and the empirical Price of Anarchy.
//!
//! Exact best responses enumerate every subset of the candidate vertices in
//! (cardinality, lexicographic) order and keep the first strict improvement,
//! so ties go to the smaller, then lexicographically smaller, strategy.
//! Finding a best response is NP-hard on either level, hence the size guards.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cost::{extended_f64, Cost};
use crate::domination::min_dominating_set;
use crate::error::{Error, Result};
use crate::game::{
    job_cost, level2_costs, GameConfig, GameState, Level1, Level2Profile, TransitPolicy,
};
use crate::graph::{Distance, Graph, VertexSet};
use crate::subsets::ordered_subsets;

/// Largest `n1` for which exact best responses are enumerated.
pub const DEFAULT_BR_GUARD: usize = 20;

/// Largest `n1 * n2` for which joint level-2 profiles are enumerated.
pub const DEFAULT_JOINT_GUARD: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    Level1,
    Level2,
}

/// Which players may deviate.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    Level1,
    #[default]
    Level2,
    Both,
}

impl Scope {
    fn players(self, state: &GameState) -> Result<Vec<(Level, usize)>> {
        let mut players = Vec::new();
        if matches!(self, Scope::Level1 | Scope::Both) {
            if state.level1_profile().is_none() {
                return Err(Error::NotProfileMode);
            }
            players.extend((0..state.n1()).map(|i| (Level::Level1, i)));
        }
        if matches!(self, Scope::Level2 | Scope::Both) {
            players.extend((0..state.n2()).map(|j| (Level::Level2, j)));
        }
        Ok(players)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BestResponse {
    pub strategy: VertexSet,
    pub cost: Cost,
}

/// A strictly profitable unilateral deviation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviationWitness {
    pub level: Level,
    pub player: usize,
    pub current_cost: Cost,
    pub better_strategy: VertexSet,
    pub better_cost: Cost,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NashVerdict {
    pub is_nash: bool,
    pub witness: Option<DeviationWitness>,
}

/// Cost of one player as a function of its own strategy, everyone else fixed.
trait PlayerView {
    /// Vertices the player may link to, ascending.
    fn domain(&self) -> &[usize];
    fn cost(&self, members: &[usize]) -> Cost;
}

/// Job `j` with the other jobs fixed. `rows[s][w]` is the distance from fog
/// `s` to fog `w` in the graph without job `j`'s links (or in G1 alone under
/// `FogOnly`); a path out of `j` never returns to `j`, so
/// `dist(j, w) = min over s in S of 1 + rows[s][w]`.
struct JobView<'a> {
    cfg: &'a GameConfig,
    domain: Vec<usize>,
    rows: Vec<Vec<Distance>>,
}

impl<'a> JobView<'a> {
    fn new(state: &GameState, cfg: &'a GameConfig, j: usize) -> Result<JobView<'a>> {
        if j >= state.n2() {
            return Err(Error::PlayerOutOfRange {
                player: j,
                count: state.n2(),
            });
        }
        let n1 = state.n1();
        let host = match cfg.transit_policy {
            TransitPolicy::FogOnly => state.g1().clone(),
            TransitPolicy::FullCombined => state
                .with_job_strategy(j, VertexSet::new())?
                .combined_graph(),
        };
        let rows = (0..n1).map(|s| host.bfs(s)[..n1].to_vec()).collect();
        Ok(JobView {
            cfg,
            domain: (0..n1).collect(),
            rows,
        })
    }
}

impl PlayerView for JobView<'_> {
    fn domain(&self) -> &[usize] {
        &self.domain
    }

    fn cost(&self, members: &[usize]) -> Cost {
        let n1 = self.domain.len();
        let dsum = (0..n1)
            .map(|w| {
                members
                    .iter()
                    .map(|&s| self.rows[s][w].step())
                    .min()
                    .unwrap_or(Distance::Infinite)
            })
            .sum();
        job_cost(self.cfg, members.len(), dsum, n1)
    }
}

/// Edge-fog player `i` with everyone else fixed. `rows` are distances in G1
/// with every edge at `i` removed; `incoming` are players who bought a link
/// to `i` and stay adjacent whatever `i` plays.
struct FogView {
    alpha: f64,
    player: usize,
    domain: Vec<usize>,
    incoming: Vec<usize>,
    rows: Vec<Vec<Distance>>,
}

impl FogView {
    fn new(state: &GameState, cfg: &GameConfig, i: usize) -> Result<FogView> {
        let profile = state.level1_profile().ok_or(Error::NotProfileMode)?;
        let n1 = state.n1();
        if i >= n1 {
            return Err(Error::PlayerOutOfRange {
                player: i,
                count: n1,
            });
        }
        let host = Graph::new(
            n1,
            state
                .g1()
                .edges()
                .iter()
                .copied()
                .filter(|&(u, v)| u != i && v != i),
        )?;
        let incoming = (0..n1)
            .filter(|&k| profile.strategy(k).contains(i))
            .collect();
        Ok(FogView {
            alpha: cfg.alpha,
            player: i,
            domain: (0..n1).filter(|&k| k != i).collect(),
            incoming,
            rows: (0..n1).map(|s| host.bfs(s)).collect(),
        })
    }
}

impl PlayerView for FogView {
    fn domain(&self) -> &[usize] {
        &self.domain
    }

    fn cost(&self, members: &[usize]) -> Cost {
        let dsum: Distance = self
            .domain
            .iter()
            .map(|&w| {
                members
                    .iter()
                    .chain(&self.incoming)
                    .map(|&s| self.rows[s][w].step())
                    .min()
                    .unwrap_or(Distance::Infinite)
            })
            .sum();
        debug_assert!(!members.contains(&self.player));
        match dsum {
            Distance::Infinite => Cost::Infinite,
            Distance::Finite(d) => Cost::Finite(self.alpha * members.len() as f64 + d as f64),
        }
    }
}

fn check_guard(size: usize, guard: usize) -> Result<()> {
    let limit = guard.min(63);
    if size > limit {
        Err(Error::SizeLimit {
            guard: "best-response enumeration",
            size,
            limit,
        })
    } else {
        Ok(())
    }
}

fn exact(view: &impl PlayerView) -> BestResponse {
    let domain = view.domain();
    let mut best: Option<BestResponse> = None;
    let mut members = Vec::with_capacity(domain.len());
    for mask in ordered_subsets(domain) {
        members.clear();
        members.extend(VertexSet::from_mask(mask).iter());
        let cost = view.cost(&members);
        if best.as_ref().is_none_or(|b| cost.improves_on(b.cost)) {
            best = Some(BestResponse {
                strategy: VertexSet::from_mask(mask),
                cost,
            });
        }
    }
    best.expect("the empty strategy is always enumerated")
}

/// Single-element add, drop and swap moves, taking the best strict
/// improvement (first in ascending scan order on ties) until none remains.
fn local_search(view: &impl PlayerView, start: &VertexSet) -> BestResponse {
    let domain = view.domain();
    let mut current = start.clone();
    let mut current_cost = view.cost(current.as_slice());
    loop {
        let mut best: Option<(VertexSet, Cost)> = None;
        let mut consider = |cand: VertexSet| {
            let cost = view.cost(cand.as_slice());
            let bar = best.as_ref().map_or(current_cost, |b| b.1);
            if cost.improves_on(bar) {
                best = Some((cand, cost));
            }
        };
        for &v in domain {
            let mut cand = current.clone();
            if !cand.remove(v) {
                cand.insert(v);
            }
            consider(cand);
        }
        for u in current.iter() {
            for &v in domain.iter().filter(|&&v| !current.contains(v)) {
                let mut cand = current.clone();
                cand.remove(u);
                cand.insert(v);
                consider(cand);
            }
        }
        match best {
            Some((s, c)) => {
                current = s;
                current_cost = c;
            }
            None => {
                return BestResponse {
                    strategy: current,
                    cost: current_cost,
                }
            }
        }
    }
}

pub fn best_response_job_exact(
    j: usize,
    state: &GameState,
    cfg: &GameConfig,
) -> Result<BestResponse> {
    best_response_job_exact_with_guard(j, state, cfg, DEFAULT_BR_GUARD)
}

pub fn best_response_job_exact_with_guard(
    j: usize,
    state: &GameState,
    cfg: &GameConfig,
    guard: usize,
) -> Result<BestResponse> {
    cfg.validate()?;
    check_guard(state.n1(), guard)?;
    Ok(exact(&JobView::new(state, cfg, j)?))
}

/// Local search from job `j`'s current strategy. No size limit; the result
/// is a local optimum only.
pub fn best_response_job_greedy(
    j: usize,
    state: &GameState,
    cfg: &GameConfig,
) -> Result<BestResponse> {
    cfg.validate()?;
    let view = JobView::new(state, cfg, j)?;
    Ok(local_search(&view, state.level2().strategy(j)))
}

pub fn best_response_fog_exact(
    i: usize,
    state: &GameState,
    cfg: &GameConfig,
) -> Result<BestResponse> {
    best_response_fog_exact_with_guard(i, state, cfg, DEFAULT_BR_GUARD)
}

pub fn best_response_fog_exact_with_guard(
    i: usize,
    state: &GameState,
    cfg: &GameConfig,
    guard: usize,
) -> Result<BestResponse> {
    cfg.validate()?;
    check_guard(state.n1(), guard)?;
    Ok(exact(&FogView::new(state, cfg, i)?))
}

pub fn best_response_fog_greedy(
    i: usize,
    state: &GameState,
    cfg: &GameConfig,
) -> Result<BestResponse> {
    cfg.validate()?;
    let view = FogView::new(state, cfg, i)?;
    let start = state
        .level1_profile()
        .ok_or(Error::NotProfileMode)?
        .strategy(i);
    Ok(local_search(&view, start))
}

/// Checks every scoped player, level 1 first, in ascending order, and
/// returns the first strictly profitable deviation found.
pub fn is_nash(state: &GameState, cfg: &GameConfig, scope: Scope) -> Result<NashVerdict> {
    cfg.validate()?;
    for (level, player) in scope.players(state)? {
        let (current_cost, br) = match level {
            Level::Level1 => {
                check_guard(state.n1(), DEFAULT_BR_GUARD)?;
                let view = FogView::new(state, cfg, player)?;
                let current = state
                    .level1_profile()
                    .expect("checked by scope")
                    .strategy(player);
                (view.cost(current.as_slice()), exact(&view))
            }
            Level::Level2 => {
                check_guard(state.n1(), DEFAULT_BR_GUARD)?;
                let view = JobView::new(state, cfg, player)?;
                let current = state.level2().strategy(player);
                (view.cost(current.as_slice()), exact(&view))
            }
        };
        if br.cost.improves_on(current_cost) {
            return Ok(NashVerdict {
                is_nash: false,
                witness: Some(DeviationWitness {
                    level,
                    player,
                    current_cost,
                    better_strategy: br.strategy,
                    better_cost: br.cost,
                }),
            });
        }
    }
    Ok(NashVerdict {
        is_nash: true,
        witness: None,
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Schedule {
    #[default]
    RoundRobin,
    /// A fresh player order every round, drawn from a generator seeded once.
    RandomPermutation { seed: u64 },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Oracle {
    #[default]
    Exact,
    Greedy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynamicsOptions {
    pub scope: Scope,
    pub schedule: Schedule,
    /// Full passes over the scoped players.
    pub max_rounds: usize,
    pub oracle: Oracle,
}

impl Default for DynamicsOptions {
    fn default() -> Self {
        DynamicsOptions {
            scope: Scope::Level2,
            schedule: Schedule::RoundRobin,
            max_rounds: 100,
            oracle: Oracle::Exact,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Move {
    pub round: usize,
    pub level: Level,
    pub player: usize,
    pub old_strategy: VertexSet,
    pub new_strategy: VertexSet,
    pub old_cost: Cost,
    pub new_cost: Cost,
    /// `new_cost - old_cost`; always negative, `-inf` when leaving an
    /// infinite cost.
    #[serde(with = "extended_f64")]
    pub cost_delta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    /// A full round passed without a move.
    Converged,
    /// The profile at the end of a round equals the one `period` rounds
    /// earlier.
    CycleDetected {
        period: usize,
    },
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DynamicsTrace {
    pub moves: Vec<Move>,
    pub outcome: Outcome,
    pub rounds_run: usize,
    pub final_state: GameState,
}

type ProfileKey = (Option<Vec<VertexSet>>, Vec<VertexSet>);

fn profile_key(state: &GameState) -> ProfileKey {
    (
        state.level1_profile().map(|p| p.strategies().to_vec()),
        state.level2().strategies().to_vec(),
    )
}

/// Sequential best-response dynamics. A player moves only when its oracle
/// finds a strictly cheaper strategy. With the exact oracle a converged final
/// state is a Nash equilibrium for the scoped levels.
pub fn best_response_dynamics(
    state0: &GameState,
    cfg: &GameConfig,
    opts: &DynamicsOptions,
) -> Result<DynamicsTrace> {
    cfg.validate()?;
    let mut players = opts.scope.players(state0)?;
    if opts.oracle == Oracle::Exact {
        check_guard(state0.n1(), DEFAULT_BR_GUARD)?;
    }
    let mut rng = match opts.schedule {
        Schedule::RoundRobin => None,
        Schedule::RandomPermutation { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    let mut state = state0.clone();
    let mut moves = Vec::new();
    let mut seen: HashMap<ProfileKey, usize> = HashMap::from([(profile_key(&state), 0)]);

    for round in 1..=opts.max_rounds {
        if let Some(rng) = rng.as_mut() {
            players.shuffle(rng);
        }
        let mut moved = false;
        for &(level, player) in &players {
            let (old_strategy, old_cost, br) = match level {
                Level::Level1 => {
                    let view = FogView::new(&state, cfg, player)?;
                    let old = state
                        .level1_profile()
                        .expect("checked by scope")
                        .strategy(player)
                        .clone();
                    let br = match opts.oracle {
                        Oracle::Exact => exact(&view),
                        Oracle::Greedy => local_search(&view, &old),
                    };
                    (old.clone(), view.cost(old.as_slice()), br)
                }
                Level::Level2 => {
                    let view = JobView::new(&state, cfg, player)?;
                    let old = state.level2().strategy(player).clone();
                    let br = match opts.oracle {
                        Oracle::Exact => exact(&view),
                        Oracle::Greedy => local_search(&view, &old),
                    };
                    (old.clone(), view.cost(old.as_slice()), br)
                }
            };
            if !br.cost.improves_on(old_cost) {
                continue;
            }
            state = match level {
                Level::Level1 => state.with_fog_strategy(player, br.strategy.clone())?,
                Level::Level2 => state.with_job_strategy(player, br.strategy.clone())?,
            };
            moves.push(Move {
                round,
                level,
                player,
                old_strategy,
                new_strategy: br.strategy,
                old_cost,
                new_cost: br.cost,
                cost_delta: br.cost.delta_from(old_cost),
            });
            moved = true;
        }
        if !moved {
            return Ok(DynamicsTrace {
                moves,
                outcome: Outcome::Converged,
                rounds_run: round,
                final_state: state,
            });
        }
        if let Some(earlier) = seen.insert(profile_key(&state), round) {
            return Ok(DynamicsTrace {
                moves,
                outcome: Outcome::CycleDetected {
                    period: round - earlier,
                },
                rounds_run: round,
                final_state: state,
            });
        }
    }
    Ok(DynamicsTrace {
        moves,
        outcome: Outcome::BudgetExhausted,
        rounds_run: opts.max_rounds,
        final_state: state,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OptimumMethod {
    /// Every joint level-2 profile; subject to the joint guard.
    ExhaustiveJoint,
    /// Each job minimized on its own; valid only under `FogOnly`, where job
    /// costs do not interact.
    SeparablePerJob,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SocialOptimum {
    pub cost: Cost,
    pub profile: Level2Profile,
}

fn check_joint_guard(n1: usize, n2: usize) -> Result<()> {
    let size = n1 * n2;
    if size > DEFAULT_JOINT_GUARD {
        return Err(Error::SizeLimit {
            guard: "joint profile enumeration",
            size,
            limit: DEFAULT_JOINT_GUARD,
        });
    }
    Ok(())
}

/// Calls `f` on every level-2 profile over `g1`, job 0's strategy varying
/// slowest, each job's strategies in (cardinality, lexicographic) order.
fn for_each_joint_profile(
    g1: &Graph,
    n2: usize,
    mut f: impl FnMut(GameState) -> Result<()>,
) -> Result<()> {
    let n1 = g1.n();
    check_joint_guard(n1, n2)?;
    let domain: Vec<usize> = (0..n1).collect();
    let choices: Vec<VertexSet> = ordered_subsets(&domain).map(VertexSet::from_mask).collect();
    let mut idx = vec![0usize; n2];
    loop {
        let profile = Level2Profile::new(idx.iter().map(|&k| choices[k].clone()).collect());
        f(GameState::new_relaxed(Level1::Fixed(g1.clone()), profile)?)?;
        let mut pos = n2;
        loop {
            if pos == 0 {
                return Ok(());
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < choices.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Minimum level-2 social cost over all profiles on a fixed `g1`.
pub fn social_optimum_level2(
    g1: &Graph,
    n2: usize,
    cfg: &GameConfig,
    method: OptimumMethod,
) -> Result<SocialOptimum> {
    cfg.validate()?;
    match method {
        OptimumMethod::ExhaustiveJoint => {
            let mut best: Option<SocialOptimum> = None;
            for_each_joint_profile(g1, n2, |state| {
                let cost: Cost = level2_costs(&state, cfg).into_iter().sum();
                if best.as_ref().is_none_or(|b| cost.improves_on(b.cost)) {
                    best = Some(SocialOptimum {
                        cost,
                        profile: state.level2().clone(),
                    });
                }
                Ok(())
            })?;
            Ok(best.expect("at least one profile"))
        }
        OptimumMethod::SeparablePerJob => {
            if cfg.transit_policy != TransitPolicy::FogOnly {
                return Err(Error::PolicyMismatch(
                    "per-job optimization needs fog_only transit; job costs interact under full_combined"
                        .into(),
                ));
            }
            check_guard(g1.n(), DEFAULT_BR_GUARD)?;
            let state =
                GameState::new_relaxed(Level1::Fixed(g1.clone()), Level2Profile::empty(n2))?;
            let mut strategies = Vec::with_capacity(n2);
            let mut cost = Cost::ZERO;
            for j in 0..n2 {
                let br = exact(&JobView::new(&state, cfg, j)?);
                cost = cost + br.cost;
                strategies.push(br.strategy);
            }
            Ok(SocialOptimum {
                cost,
                profile: Level2Profile::new(strategies),
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NashProfile {
    pub profile: Level2Profile,
    pub social_cost: Cost,
}

/// Every level-2 pure Nash equilibrium on a fixed `g1`, in enumeration order.
pub fn enumerate_nash_level2(g1: &Graph, n2: usize, cfg: &GameConfig) -> Result<Vec<NashProfile>> {
    cfg.validate()?;
    let mut found = Vec::new();
    for_each_joint_profile(g1, n2, |state| {
        if is_nash(&state, cfg, Scope::Level2)?.is_nash {
            found.push(NashProfile {
                social_cost: level2_costs(&state, cfg).into_iter().sum(),
                profile: state.level2().clone(),
            });
        }
        Ok(())
    })?;
    Ok(found)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoAReport {
    pub optimum_cost: f64,
    pub optimum_profile: Level2Profile,
    pub optimum_is_nash: bool,
    pub worst_ne_cost: f64,
    pub worst_ne_profile: Level2Profile,
    pub poa: f64,
    pub ne_count: usize,
}

/// Worst equilibrium social cost over the exhaustive social optimum.
pub fn empirical_poa(g1: &Graph, n2: usize, cfg: &GameConfig) -> Result<PoAReport> {
    let optimum = social_optimum_level2(g1, n2, cfg, OptimumMethod::ExhaustiveJoint)?;
    let equilibria = enumerate_nash_level2(g1, n2, cfg)?;
    let mut worst: Option<&NashProfile> = None;
    for ne in &equilibria {
        if worst.is_none_or(|w| w.social_cost.improves_on(ne.social_cost)) {
            worst = Some(ne);
        }
    }
    let worst = worst.ok_or(Error::NoEquilibrium)?;
    let optimum_cost = optimum
        .cost
        .finite()
        .ok_or_else(|| Error::DegeneratePoa("every profile has infinite cost".into()))?;
    if optimum_cost <= 0.0 {
        return Err(Error::DegeneratePoa(format!(
            "social optimum {optimum_cost} is not positive"
        )));
    }
    let worst_ne_cost = worst
        .social_cost
        .finite()
        .ok_or_else(|| Error::DegeneratePoa("an equilibrium has infinite cost".into()))?;
    let optimum_is_nash = equilibria.iter().any(|ne| ne.profile == optimum.profile);
    Ok(PoAReport {
        optimum_cost,
        optimum_profile: optimum.profile,
        optimum_is_nash,
        worst_ne_cost,
        worst_ne_profile: worst.profile.clone(),
        poa: worst_ne_cost / optimum_cost,
        ne_count: equilibria.len(),
    })
}

/// Every job links to every fog vertex.
pub fn construct_complete_bipartite(n1: usize, n2: usize) -> Level2Profile {
    Level2Profile::new(vec![VertexSet::full(n1); n2])
}

/// Every job links to the (lexicographically first) minimum dominating set.
pub fn construct_mds_profile(g1: &Graph, n2: usize) -> Result<Level2Profile> {
    if !g1.is_connected()? {
        return Err(Error::Domain(
            "dominating-set profile needs a connected edge-fog graph".into(),
        ));
    }
    let d = min_dominating_set(g1)?;
    Ok(Level2Profile::new(vec![d; n2]))
}
