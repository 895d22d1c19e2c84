//! Seeded graph families used as test instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Rejection-sampling budget for connected Erdős–Rényi graphs.
pub const MAX_ER_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Generator {
    Path,
    Cycle,
    /// Center 0, leaves `1..n`.
    Star,
    Complete,
    ErdosRenyi {
        p: f64,
        seed: u64,
        #[serde(default)]
        require_connected: bool,
    },
}

pub fn generate(kind: &Generator, n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let edges: Vec<(usize, usize)> = match kind {
        Generator::Path => (1..n).map(|i| (i - 1, i)).collect(),
        Generator::Cycle => {
            let mut e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            if n >= 3 {
                e.push((n - 1, 0));
            }
            e
        }
        Generator::Star => (1..n).map(|i| (0, i)).collect(),
        Generator::Complete => (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect(),
        Generator::ErdosRenyi {
            p,
            seed,
            require_connected,
        } => return erdos_renyi(n, *p, *seed, *require_connected),
    };
    Graph::new(n, edges)
}

fn erdos_renyi(n: usize, p: f64, seed: u64, require_connected: bool) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ER_ATTEMPTS {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::new(n, edges)?;
        if !require_connected || g.is_connected()? {
            return Ok(g);
        }
    }
    Err(Error::GenerationFailed {
        attempts: MAX_ER_ATTEMPTS,
    })
}
