//! Acceptance suite. Each criterion is checked against oracles written here
//! from first principles (plain BFS, subset enumeration, literal formulas)
//! and prints one PASS/FAIL line.

use std::collections::VecDeque;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use edgefog_cli::{execute, Mode, ScenarioSpec};
use edgefog_core::bounds::{
    dominating_response_diagnostic, rcs_application_constant, type1_lower_bound,
    type1_social_optimum, Type1Params,
};
use edgefog_core::equilibrium::{
    best_response_dynamics, best_response_job_exact, construct_complete_bipartite, empirical_poa,
    is_nash, DynamicsOptions, Oracle, Outcome, Schedule, Scope,
};
use edgefog_core::{
    generate, min_dominating_set, social_cost_level1, social_cost_level2, Cost, GameConfig,
    GameState, Generator, Graph, JobCostType, Level1, Level1Profile, Level2Profile, VertexSet,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const INF: f64 = f64::INFINITY;

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    adj
}

fn bfs(adj: &[Vec<usize>], src: usize) -> Vec<f64> {
    let mut dist = vec![INF; adj.len()];
    dist[src] = 0.0;
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if dist[v] == INF {
                dist[v] = dist[u] + 1.0;
                queue.push_back(v);
            }
        }
    }
    dist
}

fn dominates(adj: &[Vec<usize>], set: &[usize]) -> bool {
    (0..adj.len()).all(|v| set.contains(&v) || adj[v].iter().any(|u| set.contains(u)))
}

fn mask_members(mask: usize, n: usize) -> Vec<usize> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

fn brute_gamma(adj: &[Vec<usize>]) -> usize {
    let n = adj.len();
    (1..1usize << n)
        .filter(|&m| dominates(adj, &mask_members(m, n)))
        .map(|m| m.count_ones() as usize)
        .min()
        .unwrap()
}

/// Level-2 costs by BFS over the combined graph; job `j` is vertex `n1 + j`.
fn oracle_job_costs(g1: &Graph, profile: &[Vec<usize>], beta: f64, type1: bool) -> Vec<f64> {
    let n1 = g1.n();
    let mut edges = g1.edges().to_vec();
    for (j, s) in profile.iter().enumerate() {
        edges.extend(s.iter().map(|&w| (w, n1 + j)));
    }
    let adj = adjacency(n1 + profile.len(), &edges);
    profile
        .iter()
        .enumerate()
        .map(|(j, s)| {
            let d: f64 = bfs(&adj, n1 + j)[..n1].iter().sum();
            let links = beta * s.len() as f64;
            match (type1, d == INF) {
                (_, true) => INF,
                (false, false) => links + d,
                (true, false) if n1 == 0 => links,
                (true, false) => links - 1.0 / d,
            }
        })
        .collect()
}

fn oracle_social(g1: &Graph, profile: &[Vec<usize>], beta: f64, type1: bool) -> f64 {
    oracle_job_costs(g1, profile, beta, type1).iter().sum()
}

fn strictly_better(a: f64, b: f64) -> bool {
    if b == INF {
        a < INF
    } else {
        a < b - 1e-12 * b.abs().max(1.0)
    }
}

fn oracle_is_nash(g1: &Graph, profile: &[Vec<usize>], beta: f64, type1: bool) -> bool {
    let n1 = g1.n();
    let current = oracle_job_costs(g1, profile, beta, type1);
    (0..profile.len()).all(|j| {
        (0..1usize << n1).all(|m| {
            let mut p = profile.to_vec();
            p[j] = mask_members(m, n1);
            !strictly_better(oracle_job_costs(g1, &p, beta, type1)[j], current[j])
        })
    })
}

/// Worst equilibrium over optimum by enumerating every joint profile.
fn oracle_poa(g1: &Graph, n2: usize, beta: f64) -> (f64, f64, f64) {
    let n1 = g1.n();
    let per_job = 1usize << n1;
    let mut opt = INF;
    let mut worst = -INF;
    for code in 0..per_job.pow(n2 as u32) {
        let profile: Vec<Vec<usize>> = (0..n2)
            .map(|j| mask_members(code / per_job.pow(j as u32) % per_job, n1))
            .collect();
        let cost = oracle_social(g1, &profile, beta, false);
        opt = opt.min(cost);
        if oracle_is_nash(g1, &profile, beta, false) {
            worst = worst.max(cost);
        }
    }
    (worst / opt, opt, worst)
}

fn sets(p: &Level2Profile) -> Vec<Vec<usize>> {
    p.strategies()
        .iter()
        .map(|s| s.as_slice().to_vec())
        .collect()
}

fn type2(beta: f64) -> GameConfig {
    GameConfig::new(1.0, beta, JobCostType::TypeII).unwrap()
}

fn seeded_profile(n1: usize, n2: usize, rng: &mut ChaCha8Rng) -> Level2Profile {
    Level2Profile::new(
        (0..n2)
            .map(|_| (0..n1).filter(|_| rng.gen_bool(0.5)).collect())
            .collect(),
    )
}

fn connected_er(n: usize, seed: u64) -> Graph {
    let kind = Generator::ErdosRenyi {
        p: 0.4,
        seed,
        require_connected: true,
    };
    generate(&kind, n).unwrap()
}

type Verdict = (bool, String);
type Criterion = (&'static str, fn() -> Verdict);

fn c1_dominating_set() -> Verdict {
    let started = Instant::now();
    let mut agree = 0;
    for seed in 0..50u64 {
        let n = 2 + (seed % 9) as usize;
        let g = connected_er(n, 500 + seed);
        let adj = adjacency(n, g.edges());
        let got = min_dominating_set(&g).unwrap();
        if got.len() == brute_gamma(&adj) && dominates(&adj, got.as_slice()) {
            agree += 1;
        }
    }
    let t = started.elapsed();
    (
        agree == 50 && t < Duration::from_secs(10),
        format!("{agree}/50 match, {t:.2?}"),
    )
}

fn c2_low_beta() -> Verdict {
    let started = Instant::now();
    let beta = 0.5;
    let n = 3;
    let k3 = generate(&Generator::Complete, n).unwrap();
    let report = empirical_poa(&k3, n, &type2(beta)).unwrap();
    let (oracle_poa_value, oracle_opt, _) = oracle_poa(&k3, n, beta);
    let full = construct_complete_bipartite(n, n);
    let engine_nash = is_nash(
        &GameState::fixed(k3.clone(), full.clone()).unwrap(),
        &type2(beta),
        Scope::Level2,
    )
    .unwrap()
    .is_nash;
    let oracle_nash = oracle_is_nash(&k3, &sets(&full), beta, false);
    let closed_form = (beta + 1.0) * (n * n) as f64;
    let ok = (report.poa - 1.0).abs() <= 1e-9
        && (oracle_poa_value - 1.0).abs() <= 1e-9
        && engine_nash
        && oracle_nash
        && report.optimum_cost == closed_form
        && oracle_opt == closed_form
        && started.elapsed() < Duration::from_secs(60);
    (
        ok,
        format!(
            "poa {} (oracle {oracle_poa_value}), nash {engine_nash}/{oracle_nash}, optimum {} vs {closed_form}",
            report.poa, report.optimum_cost
        ),
    )
}

fn c3_dominating_response() -> Verdict {
    let beta = 1.5;
    let mut good = 0;
    for seed in 0..30u64 {
        let n = 2 + (seed % 9) as usize;
        let g = connected_er(n, 2000 + seed);
        let adj = adjacency(n, g.edges());
        let state =
            GameState::new_relaxed(Level1::Fixed(g.clone()), Level2Profile::empty(1)).unwrap();
        let br = best_response_job_exact(0, &state, &type2(beta)).unwrap();
        let oracle_best = (0..1usize << n)
            .map(|m| oracle_job_costs(&g, &[mask_members(m, n)], beta, false)[0])
            .fold(INF, f64::min);
        let gamma = brute_gamma(&adj);
        let expected = 2.0 * n as f64 + (beta - 1.0) * gamma as f64;
        let cost = br.cost.to_f64();
        if dominates(&adj, br.strategy.as_slice())
            && br.strategy.len() == gamma
            && (cost - expected).abs() <= 1e-9
            && (oracle_best - expected).abs() <= 1e-9
        {
            good += 1;
        }
    }
    (good == 30, format!("{good}/30 instances"))
}

fn c4_high_beta() -> Verdict {
    let started = Instant::now();
    let beta: f64 = 3.5;
    let bound = (beta.ceil() - 1.0) / 2.0 + 1.0;
    let mut parts = Vec::new();
    let mut ok = true;
    for (name, kind) in [
        ("P3", Generator::Path),
        ("K3", Generator::Complete),
        ("S3", Generator::Star),
    ] {
        let g = generate(&kind, 3).unwrap();
        let report = empirical_poa(&g, 3, &type2(beta)).unwrap();
        let (oracle, _, _) = oracle_poa(&g, 3, beta);
        ok &= report.poa <= bound + 1e-12 && (report.poa - oracle).abs() <= 1e-9;
        parts.push(format!("{name} {:.4}", report.poa));
    }
    ok &= started.elapsed() < Duration::from_secs(300);
    (ok, format!("bound {bound}; {}", parts.join(", ")))
}

fn c5_type2_lower_bound() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let (mut total, mut held) = (0, 0);
    for (kind, n) in [
        (Generator::Path, 3),
        (Generator::Cycle, 4),
        (Generator::Complete, 3),
    ] {
        let g = generate(&kind, n).unwrap();
        for beta in [0.5, 1.5, 3.5] {
            for _ in 0..200 {
                let profile = seeded_profile(n, n, &mut rng);
                let links = profile.interconnection_count() as f64;
                let engine = social_cost_level2(
                    &GameState::fixed(g.clone(), profile.clone()).unwrap(),
                    &type2(beta),
                )
                .unwrap()
                .to_f64();
                let oracle = oracle_social(&g, &sets(&profile), beta, false);
                let bound = 2.0 * (n * n) as f64 + (beta - 1.0) * links;
                total += 1;
                let same = engine == oracle || (engine - oracle).abs() <= 1e-9;
                if same && (engine == INF || engine >= bound - 1e-12 * bound.abs().max(1.0)) {
                    held += 1;
                }
            }
        }
    }
    (held == total, format!("{held}/{total} profiles"))
}

fn c6_level1_bound() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(66);
    let (mut sampled, mut held) = (0, 0);
    while sampled < 100 {
        let n = rng.gen_range(3..=5usize);
        let alpha = if rng.gen_bool(0.5) { 1.0 } else { 3.0 };
        let strategies: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).filter(|&k| k != i && rng.gen_bool(0.4)).collect())
            .collect();
        let mut edges: Vec<(usize, usize)> = strategies
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.iter().map(move |&k| (i.min(k), i.max(k))))
            .collect();
        edges.sort();
        edges.dedup();
        let adj = adjacency(n, &edges);
        if bfs(&adj, 0).contains(&INF) {
            continue;
        }
        sampled += 1;
        let oracle: f64 = (0..n)
            .map(|i| alpha * strategies[i].len() as f64 + bfs(&adj, i).iter().sum::<f64>())
            .sum();
        let profile = Level1Profile::new(
            strategies
                .iter()
                .map(|s| VertexSet::from(s.clone()))
                .collect(),
        )
        .unwrap();
        let state = GameState::new(Level1::Profile(profile), Level2Profile::empty(n)).unwrap();
        let cfg = GameConfig::new(alpha, 1.0, JobCostType::TypeII).unwrap();
        let engine = social_cost_level1(&state, &cfg).unwrap();
        let bound = 2.0 * (n * (n - 1)) as f64 + (alpha - 2.0) * edges.len() as f64;
        if engine == Cost::Finite(oracle) && oracle >= bound - 1e-12 * bound.abs().max(1.0) {
            held += 1;
        }
    }
    (held == sampled, format!("{held}/{sampled} profiles"))
}

fn c7_rcs_constant() -> Verdict {
    fn visit(v: &mut Vec<usize>, n: usize, lo: usize, out: &mut (usize, usize, f64)) {
        if v.len() == n {
            let a: Vec<f64> = v.iter().map(|&s| (2 * n - s) as f64).collect();
            let u = 2.0 * n as f64;
            let oracle = a.iter().map(|x| 1.0 / x).sum::<f64>() * a.iter().sum::<f64>()
                / (u * u * (n * n) as f64);
            let engine = rcs_application_constant(n, v).unwrap();
            out.0 += 1;
            if engine <= 1.0 && (engine - oracle).abs() <= 1e-12 {
                out.1 += 1;
            }
            out.2 = out.2.max(engine);
            return;
        }
        for s in lo..=n {
            v.push(s);
            visit(v, n, s, out);
            v.pop();
        }
    }
    let mut out = (0, 0, 0.0);
    for n in 1..=8 {
        visit(&mut Vec::new(), n, 0, &mut out);
    }
    (
        out.0 == out.1,
        format!("{}/{} vectors, largest constant {}", out.1, out.0, out.2),
    )
}

fn c8_type1_saddle() -> Verdict {
    let (mut total, mut located, mut consistent) = (0, 0, 0);
    let mut misses = Vec::new();
    for n in 1..=4usize {
        for beta in [1.0f64, 4.0] {
            for c in [1.0 / 16.0, 1.0 / 64.0] {
                if c > beta {
                    continue;
                }
                total += 1;
                let n2 = (n * n) as f64;
                let literal = |i: f64| beta * i - 4.0 * c * n2 * n2 / (2.0 * n2 - i);
                let mut argmin = 0usize;
                for i in 0..2 * n * n {
                    let engine = type1_lower_bound(&Type1Params {
                        n,
                        beta,
                        c,
                        interconnections: i as f64,
                    })
                    .unwrap();
                    assert!((engine - literal(i as f64)).abs() <= 1e-9);
                    if engine < literal(argmin as f64) {
                        argmin = i;
                    }
                }
                let i_star = 2.0 * n2 * (1.0 - (c / beta).sqrt());
                let saddle = type1_social_optimum(n, beta, c).unwrap();
                let at = type1_lower_bound(&Type1Params {
                    n,
                    beta,
                    c,
                    interconnections: i_star,
                })
                .unwrap();
                if (argmin as f64 - i_star).abs() <= 1.0 {
                    located += 1;
                } else {
                    misses.push(format!("(n={n},b={beta},c={c}: {argmin} vs {i_star})"));
                }
                if (saddle.interconnections - i_star).abs() <= 1e-9
                    && (saddle.cost - at).abs() <= 1e-9
                {
                    consistent += 1;
                }
            }
        }
    }
    let mut detail =
        format!("minimizer located {located}/{total}, cost_star consistent {consistent}/{total}");
    if !misses.is_empty() {
        detail.push_str(&format!(
            "; misses {}",
            misses[..misses.len().min(3)].join(" ")
        ));
    }
    (located == total && consistent == total, detail)
}

fn c9_dynamics() -> Verdict {
    let beta = 1.5;
    let mut good = 0;
    for seed in 0..20u64 {
        let kind = if seed % 2 == 0 {
            Generator::Star
        } else {
            Generator::Path
        };
        let n = 2 + ((seed / 2) % 4) as usize;
        let g = generate(&kind, n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(900 + seed);
        let start = GameState::fixed(g.clone(), seeded_profile(n, n, &mut rng)).unwrap();
        let opts = DynamicsOptions {
            scope: Scope::Level2,
            schedule: if seed % 4 < 2 {
                Schedule::RoundRobin
            } else {
                Schedule::RandomPermutation { seed }
            },
            max_rounds: 100,
            oracle: Oracle::Exact,
        };
        let trace = best_response_dynamics(&start, &type2(beta), &opts).unwrap();
        let final_sets = sets(trace.final_state.level2());
        if trace.outcome == Outcome::Converged
            && is_nash(&trace.final_state, &type2(beta), Scope::Level2)
                .unwrap()
                .is_nash
            && oracle_is_nash(&g, &final_sets, beta, false)
            && trace.moves.iter().all(|m| m.cost_delta < 0.0)
        {
            good += 1;
        }
    }
    (good == 20, format!("{good}/20 starts"))
}

fn c10_regime_diagnostic() -> Verdict {
    let beta = 100.0;
    let p5 = generate(&Generator::Path, 5).unwrap();
    let adj = adjacency(5, p5.edges());
    let state = GameState::new_relaxed(Level1::Fixed(p5.clone()), Level2Profile::empty(1)).unwrap();
    let br = best_response_job_exact(0, &state, &type2(beta)).unwrap();
    let oracle_best = (0..1usize << 5)
        .map(|m| oracle_job_costs(&p5, &[mask_members(m, 5)], beta, false)[0])
        .fold(INF, f64::min);
    let diag = dominating_response_diagnostic(&p5, beta).unwrap();
    let ok = br.strategy.len() == 1
        && !dominates(&adj, br.strategy.as_slice())
        && (br.cost.to_f64() - oracle_best).abs() <= 1e-9
        && diag.flagged
        && diag.best_response == br.strategy;
    (
        ok,
        format!(
            "best response {} at {}, flagged {}",
            br.strategy, br.cost, diag.flagged
        ),
    )
}

fn c11_determinism() -> Verdict {
    let spec = ScenarioSpec::default();
    let a = serde_json::to_string(&execute(&spec, Mode::Verify).unwrap()).unwrap();
    let b = serde_json::to_string(&execute(&spec, Mode::Verify).unwrap()).unwrap();
    (a == b, format!("{} vs {} bytes", a.len(), b.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("dominating-set oracle equivalence", c1_dominating_set),
        ("type2 low-beta equilibrium is optimal", c2_low_beta),
        (
            "type2 best response is a minimum dominating set",
            c3_dominating_response,
        ),
        ("type2 high-beta price of anarchy bound", c4_high_beta),
        ("type2 social cost lower bound", c5_type2_lower_bound),
        ("level-1 social cost lower bound", c6_level1_bound),
        ("reverse Cauchy-Schwarz constant", c7_rcs_constant),
        ("type1 bound minimizer location", c8_type1_saddle),
        ("best-response dynamics soundness", c9_dynamics),
        (
            "dominating response regime diagnostic",
            c10_regime_diagnostic,
        ),
        ("verify preset determinism", c11_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let (ok, detail) = check();
        let tag = if ok { "PASS" } else { "FAIL" };
        println!(
            "{tag} criterion {:>2} {name}: {detail} [{:.2?}]",
            i + 1,
            started.elapsed()
        );
        failed += usize::from(!ok);
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
