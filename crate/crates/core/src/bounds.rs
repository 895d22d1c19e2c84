//! Closed-form lower bounds and Price-of-Anarchy formulas for both job cost
//! types, plus checkers that hold them against exactly computed instances.

use serde::{Deserialize, Serialize};

use crate::cost::Cost;
use crate::domination::{is_dominating_set, min_dominating_set};
use crate::equilibrium::{
    best_response_job_exact, empirical_poa, social_optimum_level2, OptimumMethod,
    DEFAULT_JOINT_GUARD,
};
use crate::error::{Error, Result};
use crate::game::{
    social_cost_level1, social_cost_level2, GameConfig, GameState, JobCostType, Level2Profile,
    TransitPolicy,
};
use crate::graph::{Graph, VertexSet};

pub const EQUALITY_TOLERANCE: f64 = 1e-9;
pub const INEQUALITY_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        }
    }
}

/// Verdict of `lhs relation rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub lhs: Cost,
    pub rhs: f64,
    pub relation: Relation,
    pub holds: bool,
    pub context: String,
}

impl BoundCheck {
    /// Equality is judged within [`EQUALITY_TOLERANCE`]; inequalities get
    /// [`INEQUALITY_SLACK`] relative to the larger magnitude. An infinite
    /// `lhs` satisfies `>=` and nothing else.
    pub fn evaluate(
        name: impl Into<String>,
        lhs: Cost,
        relation: Relation,
        rhs: f64,
        context: impl Into<String>,
    ) -> BoundCheck {
        let holds = match (lhs, relation) {
            (Cost::Infinite, Relation::Ge) => true,
            (Cost::Infinite, _) => false,
            (Cost::Finite(l), Relation::Eq) => (l - rhs).abs() <= EQUALITY_TOLERANCE,
            (Cost::Finite(l), rel) => {
                let slack = INEQUALITY_SLACK * l.abs().max(rhs.abs()).max(1.0);
                match rel {
                    Relation::Le => l <= rhs + slack,
                    _ => l >= rhs - slack,
                }
            }
        };
        BoundCheck {
            name: name.into(),
            lhs,
            rhs,
            relation,
            holds,
            context: context.into(),
        }
    }
}

/// Sum-game social cost floor for `n` vertices and `m` edges:
/// `2n(n-1) + (alpha - 2)m`.
pub fn level1_lower_bound(n: usize, m: usize, alpha: f64) -> f64 {
    let n = n as f64;
    2.0 * n * (n - 1.0) + (alpha - 2.0) * m as f64
}

fn check_rcs_domain(a: &[f64], upper: f64) -> Result<()> {
    if a.is_empty() {
        return Err(Error::Domain(
            "reverse Cauchy-Schwarz needs at least one term".into(),
        ));
    }
    if let Some(x) = a.iter().find(|&&x| !(x > 0.0 && x < upper)) {
        return Err(Error::Domain(format!("term {x} outside (0, {upper})")));
    }
    Ok(())
}

fn rcs_sides(a: &[f64], upper: f64) -> (f64, f64) {
    let n = a.len() as f64;
    let reciprocal: f64 = a.iter().map(|x| 1.0 / x).sum();
    let total: f64 = a.iter().sum();
    (reciprocal, upper * upper * n * n / total)
}

/// `sum 1/a_i <= c U^2 n^2 / sum a_i` for `0 < a_i < U`.
pub fn rcs_holds(a: &[f64], upper: f64, c: f64) -> Result<BoundCheck> {
    check_rcs_domain(a, upper)?;
    let (lhs, rhs_unit) = rcs_sides(a, upper);
    Ok(BoundCheck::evaluate(
        "reverse_cauchy_schwarz",
        Cost::Finite(lhs),
        Relation::Le,
        c * rhs_unit,
        format!("n={}, U={upper}, c={c}", a.len()),
    ))
}

/// Smallest `c` for which the reverse Cauchy–Schwarz inequality holds on `a`.
pub fn rcs_min_constant(a: &[f64], upper: f64) -> Result<f64> {
    check_rcs_domain(a, upper)?;
    let (lhs, rhs_unit) = rcs_sides(a, upper);
    Ok(lhs / rhs_unit)
}

/// The constant needed where the Type I bound applies the inequality:
/// `a_j = 2n - |S_j|` with `U = 2n`. An empty strategy puts `a_j` on the
/// boundary `U`, so this is the limit of [`rcs_min_constant`] as `U`
/// decreases to `2n`.
pub fn rcs_application_constant(n: usize, strategy_sizes: &[usize]) -> Result<f64> {
    if n == 0 || strategy_sizes.is_empty() {
        return Err(Error::Domain("need n >= 1 and at least one job".into()));
    }
    if let Some(&s) = strategy_sizes.iter().find(|&&s| s > n) {
        return Err(Error::Domain(format!("strategy size {s} exceeds n = {n}")));
    }
    let a: Vec<f64> = strategy_sizes.iter().map(|&s| (2 * n - s) as f64).collect();
    let (lhs, rhs_unit) = rcs_sides(&a, 2.0 * n as f64);
    Ok(lhs / rhs_unit)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Type1Params {
    pub n: usize,
    pub beta: f64,
    pub c: f64,
    /// `|I|`, real-valued so the formulas can be evaluated between integers.
    pub interconnections: f64,
}

impl Type1Params {
    fn check(&self) -> Result<f64> {
        if self.n == 0 {
            return Err(Error::Domain("n must be >= 1".into()));
        }
        let cap = 2.0 * (self.n * self.n) as f64;
        if !(self.interconnections >= 0.0 && self.interconnections < cap) {
            return Err(Error::Domain(format!(
                "|I| = {} outside [0, 2n^2 = {cap})",
                self.interconnections
            )));
        }
        Ok(cap)
    }
}

/// Type I social cost floor `beta |I| - 4 c n^4 / (2n^2 - |I|)`.
pub fn type1_lower_bound(p: &Type1Params) -> Result<f64> {
    let cap = p.check()?;
    let n4 = (p.n as f64).powi(4);
    Ok(p.beta * p.interconnections - 4.0 * p.c * n4 / (cap - p.interconnections))
}

/// Derivative of [`type1_lower_bound`] in `|I|`: `beta - 4 c n^4 / (2n^2 - |I|)^2`.
pub fn type1_lower_bound_slope(p: &Type1Params) -> Result<f64> {
    let cap = p.check()?;
    let n4 = (p.n as f64).powi(4);
    Ok(p.beta - 4.0 * p.c * n4 / (cap - p.interconnections).powi(2))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Type1Saddle {
    pub interconnections: f64,
    pub cost: f64,
}

/// Stationary point of the Type I bound: `|I*| = 2n^2 (1 - sqrt(c/beta))`
/// with value `2n^2 (beta - 2 sqrt(c beta))`.
///
/// The bound is concave in `|I|`, so this point is its maximum on
/// `[0, 2n^2)`, not its minimum.
pub fn type1_social_optimum(n: usize, beta: f64, c: f64) -> Result<Type1Saddle> {
    if !(c > 0.0 && c <= beta) {
        return Err(Error::Domain(format!(
            "need 0 < c <= beta, got c = {c}, beta = {beta}"
        )));
    }
    let n2 = (n * n) as f64;
    Ok(Type1Saddle {
        interconnections: 2.0 * n2 * (1.0 - (c / beta).sqrt()),
        cost: 2.0 * n2 * (beta - 2.0 * (c * beta).sqrt()),
    })
}

fn check_type1_denominator(beta: f64, c: f64) -> Result<()> {
    if c <= 0.0 {
        return Err(Error::Domain(format!("c must be > 0, got {c}")));
    }
    if beta <= 4.0 * c {
        return Err(Error::DegenerateBound(format!(
            "beta = {beta} <= 4c = {}: 1 - 2 sqrt(c/beta) <= 0",
            4.0 * c
        )));
    }
    Ok(())
}

/// Type I PoA ceiling `1 / (2 - 4 sqrt(c/beta))` for `0 < beta <= 1`.
pub fn type1_poa_upper(beta: f64, c: f64) -> Result<f64> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::Domain(format!("needs 0 < beta <= 1, got {beta}")));
    }
    check_type1_denominator(beta, c)?;
    Ok(1.0 / (2.0 - 4.0 * (c / beta).sqrt()))
}

/// Type I PoA floor `gamma / (2n (1 - 2 sqrt(c/beta)))` for `beta > 1`.
pub fn type1_poa_lower(gamma: usize, n: usize, beta: f64, c: f64) -> Result<f64> {
    if beta <= 1.0 {
        return Err(Error::Domain(format!("needs beta > 1, got {beta}")));
    }
    if n == 0 || gamma == 0 || gamma > n {
        return Err(Error::Domain(format!(
            "needs 1 <= gamma <= n, got gamma = {gamma}, n = {n}"
        )));
    }
    check_type1_denominator(beta, c)?;
    Ok(gamma as f64 / (2.0 * n as f64 * (1.0 - 2.0 * (c / beta).sqrt())))
}

/// Type II social cost floor `2n^2 + (beta - 1)|I|`, for `0 <= |I| <= n^2`.
pub fn type2_lower_bound(n: usize, interconnections: usize, beta: f64) -> f64 {
    debug_assert!(interconnections <= n * n);
    2.0 * (n * n) as f64 + (beta - 1.0) * interconnections as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Type2Params {
    pub n: usize,
    pub beta: f64,
    pub interconnections: usize,
    pub gamma: usize,
}

impl Type2Params {
    pub fn lower_bound(&self) -> f64 {
        type2_lower_bound(self.n, self.interconnections, self.beta)
    }

    /// Equilibrium / optimum cost `2n^2 + gamma (beta - 1)` as stated for
    /// `1 < beta <= 2`.
    pub fn printed_dominating_cost(&self) -> f64 {
        2.0 * (self.n * self.n) as f64 + self.gamma as f64 * (self.beta - 1.0)
    }

    /// Same regime with all `n` jobs each buying `gamma` links:
    /// `2n^2 + n gamma (beta - 1)`.
    pub fn per_job_dominating_cost(&self) -> f64 {
        2.0 * (self.n * self.n) as f64 + (self.n * self.gamma) as f64 * (self.beta - 1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Type2PoaBound {
    /// The PoA equals this value.
    Exact(f64),
    /// The PoA is at most this value.
    Upper(f64),
    /// No stated result covers this `beta`.
    Uncovered,
}

/// Type II PoA by regime: exactly 1 for `0 < beta <= 2`, at most `S/2 + 1`
/// for `S < beta <= S + 1` with `S >= 3`; `2 < beta <= 3` is uncovered.
pub fn type2_poa_bound(beta: f64) -> Result<Type2PoaBound> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::Domain(format!("needs beta > 0, got {beta}")));
    }
    Ok(if beta <= 2.0 {
        Type2PoaBound::Exact(1.0)
    } else if beta <= 3.0 {
        Type2PoaBound::Uncovered
    } else {
        let s = beta.ceil() - 1.0;
        Type2PoaBound::Upper(s / 2.0 + 1.0)
    })
}

/// Every bound that applies to `state`: the level-1 floor (profile mode),
/// the level-2 floor of the configured job cost type (`n1 == n2`), and the
/// PoA statement for the configured regime when the instance is small enough
/// to enumerate and the PoA is defined.
pub fn check_bounds_on_instance(state: &GameState, cfg: &GameConfig) -> Result<Vec<BoundCheck>> {
    cfg.validate()?;
    let mut checks = Vec::new();

    if state.level1_profile().is_some() {
        let actual = social_cost_level1(state, cfg)?;
        let (n, m) = (state.n1(), state.g1().edge_count());
        checks.push(BoundCheck::evaluate(
            "level1_lower_bound",
            actual,
            Relation::Ge,
            level1_lower_bound(n, m, cfg.alpha),
            format!("n={n}, |E|={m}, alpha={}", cfg.alpha),
        ));
    }

    let Ok(n) = state.equal_sides() else {
        return Ok(checks);
    };
    if n == 0 {
        return Ok(checks);
    }
    let actual = social_cost_level2(state, cfg)?;
    let links = state.level2().interconnection_count();
    let context = format!("n={n}, |I|={links}, beta={}", cfg.beta);
    match cfg.job_cost_type {
        JobCostType::TypeII => checks.push(BoundCheck::evaluate(
            "type2_lower_bound",
            actual,
            Relation::Ge,
            type2_lower_bound(n, links, cfg.beta),
            context,
        )),
        JobCostType::TypeI => {
            let p = Type1Params {
                n,
                beta: cfg.beta,
                c: cfg.rcs_constant,
                interconnections: links as f64,
            };
            checks.push(BoundCheck::evaluate(
                "type1_lower_bound",
                actual,
                Relation::Ge,
                type1_lower_bound(&p)?,
                format!("{context}, c={}", cfg.rcs_constant),
            ));
        }
    }

    if n * n > DEFAULT_JOINT_GUARD || !state.g1().is_connected()? {
        return Ok(checks);
    }
    let g1 = state.g1();
    match cfg.job_cost_type {
        JobCostType::TypeII => {
            let (relation, value) = match type2_poa_bound(cfg.beta) {
                Ok(Type2PoaBound::Exact(v)) => (Relation::Eq, v),
                Ok(Type2PoaBound::Upper(v)) => (Relation::Le, v),
                Ok(Type2PoaBound::Uncovered) | Err(Error::Domain(_)) => return Ok(checks),
                Err(e) => return Err(e),
            };
            let report = match empirical_poa(g1, n, cfg) {
                Ok(r) => r,
                Err(Error::DegeneratePoa(_) | Error::NoEquilibrium) => return Ok(checks),
                Err(e) => return Err(e),
            };
            checks.push(BoundCheck::evaluate(
                "type2_poa",
                Cost::Finite(report.poa),
                relation,
                value,
                format!("n={n}, beta={}, equilibria={}", cfg.beta, report.ne_count),
            ));
        }
        JobCostType::TypeI => {
            let c = cfg.rcs_constant;
            let bound = if cfg.beta > 1.0 {
                let gamma = min_dominating_set(g1)?.len();
                type1_poa_lower(gamma, n, cfg.beta, c).map(|v| (Relation::Ge, v, "type1_poa_lower"))
            } else {
                type1_poa_upper(cfg.beta, c).map(|v| (Relation::Le, v, "type1_poa_upper"))
            };
            let (relation, value, name) = match bound {
                Ok(b) => b,
                Err(Error::DegenerateBound(_) | Error::Domain(_)) => return Ok(checks),
                Err(e) => return Err(e),
            };
            match empirical_poa(g1, n, cfg) {
                Ok(report) => checks.push(BoundCheck::evaluate(
                    name,
                    Cost::Finite(report.poa),
                    relation,
                    value,
                    format!("n={n}, beta={}, c={c}", cfg.beta),
                )),
                Err(Error::DegeneratePoa(_) | Error::NoEquilibrium) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(checks)
}

/// Exact Type II best response of a lone job compared with the dominating
/// set argument, which is valid for `1 < beta < 2`. Outside that range a
/// best response need not dominate; `flagged` marks `beta > 1` instances
/// where it does not.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominatingResponseDiagnostic {
    pub beta: f64,
    pub best_response: VertexSet,
    pub cost: Cost,
    pub gamma: usize,
    pub is_dominating: bool,
    pub is_minimum_dominating: bool,
    pub in_exchange_regime: bool,
    pub flagged: bool,
}

pub fn dominating_response_diagnostic(
    g1: &Graph,
    beta: f64,
) -> Result<DominatingResponseDiagnostic> {
    let cfg = GameConfig::new(0.0, beta, JobCostType::TypeII)?.with_transit(TransitPolicy::FogOnly);
    let state = GameState::new_relaxed(
        crate::game::Level1::Fixed(g1.clone()),
        Level2Profile::empty(1),
    )?;
    let br = best_response_job_exact(0, &state, &cfg)?;
    let gamma = min_dominating_set(g1)?.len();
    let is_dominating = is_dominating_set(g1, &br.strategy)?;
    let is_minimum_dominating = is_dominating && br.strategy.len() == gamma;
    Ok(DominatingResponseDiagnostic {
        beta,
        cost: br.cost,
        best_response: br.strategy,
        gamma,
        is_dominating,
        is_minimum_dominating,
        in_exchange_regime: beta > 1.0 && beta < 2.0,
        flagged: beta > 1.0 && !is_minimum_dominating,
    })
}

/// Measured Type II optimum (`FogOnly`, `n2 = n1`) next to the two candidate
/// closed forms for the dominating-set regime.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominatingRegimeReport {
    pub params: Type2Params,
    pub measured_optimum: Cost,
    pub printed_formula: f64,
    pub per_job_formula: f64,
    pub matches_printed: bool,
    pub matches_per_job: bool,
}

pub fn dominating_regime_report(g1: &Graph, beta: f64) -> Result<DominatingRegimeReport> {
    let n = g1.n();
    let cfg = GameConfig::new(0.0, beta, JobCostType::TypeII)?.with_transit(TransitPolicy::FogOnly);
    let optimum = social_optimum_level2(g1, n, &cfg, OptimumMethod::SeparablePerJob)?;
    let params = Type2Params {
        n,
        beta,
        interconnections: optimum.profile.interconnection_count(),
        gamma: min_dominating_set(g1)?.len(),
    };
    let close = |v: f64| {
        optimum
            .cost
            .finite()
            .is_some_and(|m| (m - v).abs() <= EQUALITY_TOLERANCE)
    };
    Ok(DominatingRegimeReport {
        params,
        measured_optimum: optimum.cost,
        printed_formula: params.printed_dominating_cost(),
        per_job_formula: params.per_job_dominating_cost(),
        matches_printed: close(params.printed_dominating_cost()),
        matches_per_job: close(params.per_job_dominating_cost()),
    })
}
