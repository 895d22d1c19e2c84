//! Dominating sets: membership test, exact minimum by enumeration, greedy.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::subsets::subsets_of_size;

/// Largest graph the exact solver will enumerate.
pub const DEFAULT_MDS_GUARD: usize = 24;

/// True iff every vertex is in `s` or adjacent to a member of `s`.
pub fn is_dominating_set(g: &Graph, s: &VertexSet) -> Result<bool> {
    s.check_range(g.n())?;
    let mut covered = vec![false; g.n()];
    for v in s.iter() {
        covered[v] = true;
        for &w in g.neighbors(v) {
            covered[w] = true;
        }
    }
    Ok(covered.into_iter().all(|c| c))
}

fn closed_neighborhoods(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|v| {
            g.neighbors(v)
                .iter()
                .fold(1u64 << v, |m, &w| m | (1u64 << w))
        })
        .collect()
}

/// Minimum dominating set using the default size guard.
pub fn min_dominating_set(g: &Graph) -> Result<VertexSet> {
    min_dominating_set_with_guard(g, DEFAULT_MDS_GUARD)
}

/// Exact minimum dominating set. Sizes are tried in increasing order up to
/// the greedy solution's size; the first dominating set found at the minimum
/// size is the lexicographically smallest one.
pub fn min_dominating_set_with_guard(g: &Graph, guard: usize) -> Result<VertexSet> {
    let n = g.n();
    let limit = guard.min(63);
    if n > limit {
        return Err(Error::SizeLimit {
            guard: "dominating-set enumeration",
            size: n,
            limit,
        });
    }
    if n == 0 {
        return Ok(VertexSet::new());
    }
    let closed = closed_neighborhoods(g);
    let all = (1u64 << n) - 1;
    let upper = greedy_dominating_set(g)?.len();
    let domain: Vec<usize> = (0..n).collect();
    for k in 1..=upper {
        for mask in subsets_of_size(&domain, k) {
            let mut cover = 0u64;
            let mut m = mask;
            while m != 0 {
                cover |= closed[m.trailing_zeros() as usize];
                m &= m - 1;
            }
            if cover == all {
                return Ok(VertexSet::from_mask(mask));
            }
        }
    }
    unreachable!("greedy result of size {upper} is dominating")
}

/// Greedy cover: repeatedly take the vertex whose closed neighbourhood holds
/// the most uncovered vertices, lowest index on ties.
pub fn greedy_dominating_set(g: &Graph) -> Result<VertexSet> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut covered = vec![false; n];
    let mut remaining = n;
    let mut chosen = VertexSet::new();
    while remaining > 0 {
        let gain = |v: usize| {
            usize::from(!covered[v]) + g.neighbors(v).iter().filter(|&&w| !covered[w]).count()
        };
        let best = (0..n)
            .map(|v| (gain(v), v))
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
            .map(|(_, v)| v)
            .expect("n >= 1");
        chosen.insert(best);
        for w in std::iter::once(best).chain(g.neighbors(best).iter().copied()) {
            if !covered[w] {
                covered[w] = true;
                remaining -= 1;
            }
        }
    }
    Ok(chosen)
}
