//! Browser bindings. Each export takes plain numbers and strings and returns
//! a JSON document; the `*_json` functions hold the logic so they can be
//! tested natively.

use edgefog_core::bounds::{type1_lower_bound, type1_social_optimum, Type1Params};
use edgefog_core::equilibrium::{best_response_job_exact, empirical_poa};
use edgefog_core::{
    generate, is_dominating_set, min_dominating_set, Cost, GameConfig, GameState, Generator, Graph,
    JobCostType, Level1, Level2Profile, VertexSet,
};
use serde::Serialize;
use wasm_bindgen::prelude::*;

fn graph(kind: &str, n: usize, p: f64, seed: u64) -> Result<Graph, String> {
    let generator = match kind {
        "path" => Generator::Path,
        "cycle" => Generator::Cycle,
        "star" => Generator::Star,
        "complete" => Generator::Complete,
        "erdos_renyi" => Generator::ErdosRenyi {
            p,
            seed,
            require_connected: true,
        },
        other => return Err(format!("unknown graph kind {other:?}")),
    };
    generate(&generator, n).map_err(|e| e.to_string())
}

fn cost_type(name: &str) -> Result<JobCostType, String> {
    match name {
        "type1" => Ok(JobCostType::TypeI),
        "type2" => Ok(JobCostType::TypeII),
        other => Err(format!("unknown job cost type {other:?}")),
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct BestResponseView {
    n: usize,
    edges: Vec<(usize, usize)>,
    strategy: VertexSet,
    cost: Cost,
    dominating: bool,
    gamma: usize,
}

/// Exact best response of a single job joining the chosen edge-fog graph.
pub fn job_best_response_json(
    kind: &str,
    n: usize,
    p: f64,
    seed: u64,
    beta: f64,
    job_cost_type: &str,
) -> Result<String, String> {
    let g = graph(kind, n, p, seed)?;
    let cfg = GameConfig::new(1.0, beta, cost_type(job_cost_type)?).map_err(|e| e.to_string())?;
    let state = GameState::new_relaxed(Level1::Fixed(g.clone()), Level2Profile::empty(1))
        .map_err(|e| e.to_string())?;
    let br = best_response_job_exact(0, &state, &cfg).map_err(|e| e.to_string())?;
    to_json(&BestResponseView {
        n: g.n(),
        edges: g.edges().to_vec(),
        dominating: is_dominating_set(&g, &br.strategy).map_err(|e| e.to_string())?,
        gamma: min_dominating_set(&g).map_err(|e| e.to_string())?.len(),
        strategy: br.strategy,
        cost: br.cost,
    })
}

#[derive(Serialize)]
struct PoaRow {
    beta: f64,
    poa: Option<f64>,
    optimum_cost: Option<f64>,
    worst_ne_cost: Option<f64>,
    ne_count: Option<usize>,
    error: Option<String>,
}

/// Exhaustive Type II price of anarchy with `n` jobs, one row per `beta`.
/// Rows whose PoA is undefined carry the reason instead.
pub fn poa_sweep_json(kind: &str, n: usize, betas: &[f64]) -> Result<String, String> {
    let g = graph(kind, n, 0.5, 0)?;
    let rows: Vec<PoaRow> = betas
        .iter()
        .map(|&beta| {
            let report = GameConfig::new(1.0, beta, JobCostType::TypeII)
                .and_then(|cfg| empirical_poa(&g, n, &cfg));
            match report {
                Ok(r) => PoaRow {
                    beta,
                    poa: Some(r.poa),
                    optimum_cost: Some(r.optimum_cost),
                    worst_ne_cost: Some(r.worst_ne_cost),
                    ne_count: Some(r.ne_count),
                    error: None,
                },
                Err(e) => PoaRow {
                    beta,
                    poa: None,
                    optimum_cost: None,
                    worst_ne_cost: None,
                    ne_count: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    to_json(&rows)
}

#[derive(Serialize)]
struct BoundCurve {
    points: Vec<(f64, f64)>,
    saddle_interconnections: f64,
    saddle_cost: f64,
}

/// The Type I social cost floor over integer `|I|` in `[0, 2n^2)`, with its
/// stationary point.
pub fn type1_bound_curve_json(n: usize, beta: f64, c: f64) -> Result<String, String> {
    let saddle = type1_social_optimum(n, beta, c).map_err(|e| e.to_string())?;
    let points = (0..2 * n * n)
        .map(|i| {
            let x = i as f64;
            type1_lower_bound(&Type1Params {
                n,
                beta,
                c,
                interconnections: x,
            })
            .map(|y| (x, y))
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    to_json(&BoundCurve {
        points,
        saddle_interconnections: saddle.interconnections,
        saddle_cost: saddle.cost,
    })
}

#[wasm_bindgen]
pub fn job_best_response(
    kind: &str,
    n: usize,
    p: f64,
    seed: u32,
    beta: f64,
    job_cost_type: &str,
) -> Result<String, JsValue> {
    job_best_response_json(kind, n, p, seed.into(), beta, job_cost_type)
        .map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn poa_sweep(kind: &str, n: usize, betas: Vec<f64>) -> Result<String, JsValue> {
    poa_sweep_json(kind, n, &betas).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn type1_bound_curve(n: usize, beta: f64, c: f64) -> Result<String, JsValue> {
    type1_bound_curve_json(n, beta, c).map_err(|e| JsValue::from_str(&e))
}
