//! The built-in verification preset: fixed, seeded desk-scale checks of the
//! engine against the closed-form results it implements.

use edgefog_core::bounds::{
    dominating_response_diagnostic, level1_lower_bound, rcs_application_constant,
    type1_lower_bound, type1_social_optimum, type2_lower_bound, BoundCheck, Relation, Type1Params,
};
use edgefog_core::equilibrium::{
    best_response_dynamics, best_response_job_exact, construct_complete_bipartite, empirical_poa,
    is_nash, DynamicsOptions, Oracle, Outcome, Schedule, Scope,
};
use edgefog_core::{
    generate, is_dominating_set, min_dominating_set, social_cost_level1, social_cost_level2, Cost,
    GameConfig, GameState, Generator, JobCostType, Level1, Level1Profile, Level2Profile, VertexSet,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::scenario::random_level2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub criteria: Vec<CriterionResult>,
    pub all_passed: bool,
}

type Check = edgefog_core::Result<(bool, String)>;
type Criterion = (u32, &'static str, fn() -> Check);

const CRITERIA: [Criterion; 10] = [
    (
        1,
        "dominating-set oracle equivalence",
        dominating_set_oracle,
    ),
    (2, "type2 low-beta equilibrium is optimal", type2_low_beta),
    (
        3,
        "type2 best response is a minimum dominating set",
        type2_dominating_response,
    ),
    (
        4,
        "type2 high-beta price of anarchy bound",
        type2_high_beta_poa,
    ),
    (
        5,
        "type2 social cost lower bound",
        type2_lower_bound_property,
    ),
    (
        6,
        "level-1 social cost lower bound",
        level1_lower_bound_property,
    ),
    (
        7,
        "reverse Cauchy-Schwarz constant in the type1 regime",
        rcs_application_regime,
    ),
    (
        8,
        "type1 bound minimizer matches the closed form",
        type1_saddle_consistency,
    ),
    (9, "best-response dynamics soundness", dynamics_soundness),
    (
        10,
        "dominating best response needs beta below 2",
        dominating_regime_diagnostic,
    ),
];

fn run_criteria() -> Vec<CriterionResult> {
    CRITERIA
        .iter()
        .map(|&(id, name, check)| {
            let (passed, detail) = check().unwrap_or_else(|e| (false, format!("error: {e}")));
            CriterionResult {
                id,
                name: name.to_string(),
                passed,
                detail,
            }
        })
        .collect()
}

/// Runs every check; the last one re-runs the others and compares the
/// serialized results byte for byte.
pub fn run_preset() -> VerifyReport {
    let mut criteria = run_criteria();
    let first = serde_json::to_string(&criteria).expect("criteria serialize");
    let second = serde_json::to_string(&run_criteria()).expect("criteria serialize");
    let same = first == second;
    criteria.push(CriterionResult {
        id: 11,
        name: "determinism".into(),
        passed: same,
        detail: if same {
            format!("two runs, {} identical bytes", first.len())
        } else {
            "two runs produced different output".into()
        },
    });
    VerifyReport {
        all_passed: criteria.iter().all(|c| c.passed),
        criteria,
    }
}

fn connected_er(n: usize, p: f64, seed: u64) -> edgefog_core::Result<edgefog_core::Graph> {
    generate(
        &Generator::ErdosRenyi {
            p,
            seed,
            require_connected: true,
        },
        n,
    )
}

fn dominating_set_oracle() -> Check {
    let mut mismatches = Vec::new();
    for seed in 0..50u64 {
        let n = 3 + (seed % 8) as usize;
        let g = connected_er(n, 0.35, seed)?;
        let fast = min_dominating_set(&g)?;
        let mut brute = usize::MAX;
        for mask in 1u64..1 << n {
            let s = VertexSet::from_mask(mask);
            if s.len() < brute && is_dominating_set(&g, &s)? {
                brute = s.len();
            }
        }
        if fast.len() != brute || !is_dominating_set(&g, &fast)? {
            mismatches.push(seed);
        }
    }
    Ok((
        mismatches.is_empty(),
        format!("50 graphs, mismatching seeds {mismatches:?}"),
    ))
}

fn type2_low_beta() -> Check {
    let k3 = generate(&Generator::Complete, 3)?;
    let cfg = GameConfig::new(1.0, 0.5, JobCostType::TypeII)?;
    let report = empirical_poa(&k3, 3, &cfg)?;
    let full = GameState::fixed(k3, construct_complete_bipartite(3, 3))?;
    let nash = is_nash(&full, &cfg, Scope::Level2)?.is_nash;
    let poa_ok = (report.poa - 1.0).abs() <= 1e-9;
    let opt_ok = report.optimum_cost == 13.5;
    Ok((
        poa_ok && nash && opt_ok,
        format!(
            "poa {}, complete bipartite nash {nash}, optimum {}",
            report.poa, report.optimum_cost
        ),
    ))
}

fn type2_dominating_response() -> Check {
    let beta = 1.5;
    let cfg = GameConfig::new(1.0, beta, JobCostType::TypeII)?;
    let mut good = 0;
    let mut misses = Vec::new();
    for seed in 0..30u64 {
        let n = 2 + (seed % 9) as usize;
        let g = connected_er(n, 0.4, 1000 + seed)?;
        let state = GameState::new_relaxed(Level1::Fixed(g.clone()), Level2Profile::empty(1))?;
        let br = best_response_job_exact(0, &state, &cfg)?;
        let gamma = min_dominating_set(&g)?.len();
        let expected = 2.0 * n as f64 + (beta - 1.0) * gamma as f64;
        let ok = is_dominating_set(&g, &br.strategy)?
            && br.strategy.len() == gamma
            && br
                .cost
                .finite()
                .is_some_and(|c| (c - expected).abs() <= 1e-9);
        if ok {
            good += 1;
        } else {
            misses.push(seed);
        }
    }
    Ok((
        good == 30,
        format!("{good}/30 instances, failing seeds {misses:?}"),
    ))
}

fn type2_high_beta_poa() -> Check {
    let cfg = GameConfig::new(1.0, 3.5, JobCostType::TypeII)?;
    let mut parts = Vec::new();
    let mut all = true;
    for (name, g) in [
        ("P3", Generator::Path),
        ("K3", Generator::Complete),
        ("S3", Generator::Star),
    ] {
        let report = empirical_poa(&generate(&g, 3)?, 3, &cfg)?;
        let check = BoundCheck::evaluate("poa", Cost::Finite(report.poa), Relation::Le, 2.5, name);
        all &= check.holds;
        parts.push(format!("{name} {:.6}", report.poa));
    }
    Ok((all, format!("poa: {}", parts.join(", "))))
}

fn type2_lower_bound_property() -> Check {
    let mut total = 0;
    let mut held = 0;
    for (gi, (g, n)) in [
        (Generator::Path, 3),
        (Generator::Cycle, 4),
        (Generator::Complete, 3),
    ]
    .into_iter()
    .enumerate()
    {
        let g1 = generate(&g, n)?;
        for (bi, beta) in [0.5, 1.5, 3.5].into_iter().enumerate() {
            let cfg = GameConfig::new(1.0, beta, JobCostType::TypeII)?;
            for k in 0..200u64 {
                let seed = ((gi * 3 + bi) as u64) * 1000 + k;
                let profile = random_level2(n, n, 0.5, seed).map_err(to_engine)?;
                let links = profile.interconnection_count();
                let state = GameState::fixed(g1.clone(), profile)?;
                let cost = social_cost_level2(&state, &cfg)?;
                let check = BoundCheck::evaluate(
                    "",
                    cost,
                    Relation::Ge,
                    type2_lower_bound(n, links, beta),
                    "",
                );
                total += 1;
                held += usize::from(check.holds);
            }
        }
    }
    Ok((held == total, format!("{held}/{total} profiles")))
}

fn to_engine(e: crate::error::CliError) -> edgefog_core::Error {
    match e {
        crate::error::CliError::Engine(e) => e,
        other => edgefog_core::Error::InvalidProfile(other.to_string()),
    }
}

fn level1_lower_bound_property() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut sampled, mut held) = (0, 0);
    while sampled < 100 {
        let n = rng.gen_range(3..=5usize);
        let alpha = if rng.gen_bool(0.5) { 1.0 } else { 3.0 };
        let strategies: Vec<VertexSet> = (0..n)
            .map(|i| (0..n).filter(|&k| k != i && rng.gen_bool(0.35)).collect())
            .collect();
        let profile = Level1Profile::new(strategies)?;
        let state = GameState::new(Level1::Profile(profile), Level2Profile::empty(n))?;
        if !state.g1().is_connected()? {
            continue;
        }
        sampled += 1;
        let cfg = GameConfig::new(alpha, 1.0, JobCostType::TypeII)?;
        let bound = level1_lower_bound(n, state.g1().edge_count(), alpha);
        let check = BoundCheck::evaluate(
            "",
            social_cost_level1(&state, &cfg)?,
            Relation::Ge,
            bound,
            "",
        );
        held += usize::from(check.holds);
    }
    Ok((held == sampled, format!("{held}/{sampled} profiles")))
}

/// Calls `f` on every non-decreasing vector of length `len` over `0..=max`.
pub fn for_each_sorted_vector(len: usize, max: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(v: &mut Vec<usize>, len: usize, lo: usize, max: usize, f: &mut impl FnMut(&[usize])) {
        if v.len() == len {
            f(v);
            return;
        }
        for x in lo..=max {
            v.push(x);
            rec(v, len, x, max, f);
            v.pop();
        }
    }
    rec(&mut Vec::with_capacity(len), len, 0, max, f);
}

fn rcs_application_regime() -> Check {
    let mut worst: f64 = 0.0;
    let mut count = 0usize;
    let mut err = None;
    for n in 1..=8 {
        for_each_sorted_vector(
            n,
            n,
            &mut |sizes| match rcs_application_constant(n, sizes) {
                Ok(c) => {
                    worst = worst.max(c);
                    count += 1;
                }
                Err(e) => err = Some(e),
            },
        );
    }
    if let Some(e) = err {
        return Err(e);
    }
    Ok((
        worst <= 1.0 + 1e-12,
        format!("{count} vectors, largest constant {worst}"),
    ))
}

fn type1_saddle_consistency() -> Check {
    let mut located = 0;
    let mut consistent = 0;
    let mut total = 0;
    let mut first_miss = None;
    for n in 1..=4usize {
        for beta in [1.0, 4.0] {
            for c in [1.0 / 16.0, 1.0 / 64.0] {
                if c > beta {
                    continue;
                }
                total += 1;
                let cap = 2 * n * n;
                let mut argmin = 0;
                let mut min = f64::INFINITY;
                for i in 0..cap {
                    let v = type1_lower_bound(&Type1Params {
                        n,
                        beta,
                        c,
                        interconnections: i as f64,
                    })?;
                    if v < min {
                        min = v;
                        argmin = i;
                    }
                }
                let saddle = type1_social_optimum(n, beta, c)?;
                let at = type1_lower_bound(&Type1Params {
                    n,
                    beta,
                    c,
                    interconnections: saddle.interconnections,
                })?;
                if (argmin as f64 - saddle.interconnections).abs() <= 1.0 {
                    located += 1;
                } else if first_miss.is_none() {
                    first_miss = Some(format!(
                        "n={n} beta={beta} c={c}: grid minimum at {argmin}, closed form {}",
                        saddle.interconnections
                    ));
                }
                consistent += usize::from((at - saddle.cost).abs() <= 1e-9);
            }
        }
    }
    let mut detail = format!("location {located}/{total}, value {consistent}/{total}");
    if let Some(m) = first_miss {
        detail.push_str(&format!("; first miss {m}"));
    }
    Ok((located == total && consistent == total, detail))
}

fn dynamics_soundness() -> Check {
    let cfg = GameConfig::new(1.0, 1.5, JobCostType::TypeII)?;
    let mut good = 0;
    let mut misses = Vec::new();
    for seed in 0..20u64 {
        let kind = if seed % 2 == 0 {
            Generator::Star
        } else {
            Generator::Path
        };
        let n = 2 + ((seed / 2) % 4) as usize;
        let g = generate(&kind, n)?;
        let start = random_level2(n, n, 0.5, seed).map_err(to_engine)?;
        let state = GameState::fixed(g, start)?;
        let opts = DynamicsOptions {
            scope: Scope::Level2,
            schedule: Schedule::RandomPermutation { seed },
            max_rounds: 100,
            oracle: Oracle::Exact,
        };
        let trace = best_response_dynamics(&state, &cfg, &opts)?;
        let ok = trace.outcome == Outcome::Converged
            && is_nash(&trace.final_state, &cfg, Scope::Level2)?.is_nash
            && trace.moves.iter().all(|m| m.cost_delta < 0.0);
        if ok {
            good += 1;
        } else {
            misses.push(seed);
        }
    }
    Ok((
        good == 20,
        format!("{good}/20 starts, failing seeds {misses:?}"),
    ))
}

fn dominating_regime_diagnostic() -> Check {
    let p5 = generate(&Generator::Path, 5)?;
    let d = dominating_response_diagnostic(&p5, 100.0)?;
    let ok = d.best_response.len() == 1 && !d.is_dominating && d.flagged;
    Ok((
        ok,
        format!(
            "best response {} (gamma {}), dominating {}, flagged {}",
            d.best_response, d.gamma, d.is_dominating, d.flagged
        ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_vectors_are_multisets() {
        let mut seen = Vec::new();
        for_each_sorted_vector(2, 2, &mut |v| seen.push(v.to_vec()));
        assert_eq!(
            seen,
            vec![
                vec![0, 0],
                vec![0, 1],
                vec![0, 2],
                vec![1, 1],
                vec![1, 2],
                vec![2, 2]
            ]
        );
        let mut count = 0;
        for_each_sorted_vector(8, 8, &mut |_| count += 1);
        assert_eq!(count, 12870);
    }

    #[test]
    fn fast_checks_pass() {
        for check in [
            dominating_set_oracle,
            type2_low_beta,
            rcs_application_regime,
            dominating_regime_diagnostic,
        ] {
            let (ok, detail) = check().unwrap();
            assert!(ok, "{detail}");
        }
    }
}
