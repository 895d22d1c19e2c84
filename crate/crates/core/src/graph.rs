//! Undirected simple graphs, hop distances and vertex sets.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::iter::Sum;
use std::ops::Add;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Hop count between two vertices. `Infinite` marks vertices in different
/// components; it absorbs addition and compares above every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(u64),
    Infinite,
}

impl Distance {
    pub const ZERO: Distance = Distance::Finite(0);

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    /// Adds one hop.
    pub fn step(self) -> Distance {
        self + Distance::Finite(1)
    }
}

impl Add for Distance {
    type Output = Distance;

    fn add(self, rhs: Distance) -> Distance {
        match (self, rhs) {
            (Distance::Finite(a), Distance::Finite(b)) => Distance::Finite(a + b),
            _ => Distance::Infinite,
        }
    }
}

impl Sum for Distance {
    fn sum<I: Iterator<Item = Distance>>(iter: I) -> Distance {
        iter.fold(Distance::ZERO, Add::add)
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u64(*d),
            Distance::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Distance {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct Visitor;

        impl de::Visitor<'_> for Visitor {
            type Value = Distance;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a non-negative integer or \"inf\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Distance, E> {
                Ok(Distance::Finite(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Distance, E> {
                u64::try_from(v)
                    .map(Distance::Finite)
                    .map_err(|_| E::custom("negative distance"))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Distance, E> {
                if v == "inf" {
                    Ok(Distance::Infinite)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }
        }

        d.deserialize_any(Visitor)
    }
}

/// A sorted, duplicate-free set of vertex indices.
///
/// The derived ordering compares sorted member lists elementwise, which is the
/// lexicographic tie-break used wherever a set is returned.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    /// Every vertex in `0..n`.
    pub fn full(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    /// Members are the set bits of `mask`.
    pub fn from_mask(mask: u64) -> Self {
        let mut members = Vec::with_capacity(mask.count_ones() as usize);
        let mut m = mask;
        while m != 0 {
            members.push(m.trailing_zeros() as usize);
            m &= m - 1;
        }
        VertexSet(members)
    }

    /// Bit mask of the members; `None` if any member is 64 or above.
    pub fn to_mask(&self) -> Option<u64> {
        self.0
            .iter()
            .try_fold(0u64, |acc, &v| (v < 64).then(|| acc | (1u64 << v)))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn insert(&mut self, v: usize) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, v);
                true
            }
        }
    }

    pub fn remove(&mut self, v: usize) -> bool {
        match self.0.binary_search(&v) {
            Ok(pos) => {
                self.0.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    /// Largest member, if any.
    pub fn max(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// Fails with [`Error::VertexOutOfRange`] if any member is `>= n`.
    pub fn check_range(&self, n: usize) -> Result<()> {
        match self.max() {
            Some(v) if v >= n => Err(Error::VertexOutOfRange { vertex: v, n }),
            _ => Ok(()),
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let set: BTreeSet<usize> = iter.into_iter().collect();
        VertexSet(set.into_iter().collect())
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(v: [usize; N]) -> Self {
        v.into_iter().collect()
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Vec::<usize>::deserialize(d)?.into())
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// Undirected, unweighted simple graph on vertices `0..n`.
///
/// Edges are stored normalized (`u < v`) and sorted, so two graphs with the
/// same edge set compare equal regardless of construction order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;

    fn try_from(r: GraphRepr) -> Result<Graph> {
        Graph::new(r.n, r.edges)
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> GraphRepr {
        GraphRepr {
            n: g.n,
            edges: g.edges,
        }
    }
}

impl Graph {
    /// Validates and builds a graph. Rejects self-loops, out-of-range
    /// endpoints and duplicate edges (in either orientation).
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        let mut seen = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::DuplicateEdge(u, v));
            }
        }
        Ok(Graph::from_normalized(n, seen.into_iter().collect()))
    }

    /// Builds from an edge iterator that may repeat edges; duplicates collapse.
    pub(crate) fn from_edge_union(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Graph {
        let set: BTreeSet<(usize, usize)> = edges
            .into_iter()
            .map(|(u, v)| {
                debug_assert!(u != v && u < n && v < n);
                (u.min(v), u.max(v))
            })
            .collect();
        Graph::from_normalized(n, set.into_iter().collect())
    }

    fn from_normalized(n: usize, edges: Vec<(usize, usize)>) -> Graph {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn empty(n: usize) -> Graph {
        Graph::from_normalized(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Normalized `(u, v)` pairs with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Returns a copy with `{u, v}` added.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        Graph::new(self.n, self.edges.iter().copied().chain([(u, v)]))
    }

    /// Hop distances from `src` to every vertex.
    pub fn bfs(&self, src: usize) -> Vec<Distance> {
        let mut dist = vec![Distance::Infinite; self.n];
        let mut queue = VecDeque::new();
        dist[src] = Distance::ZERO;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            let next = dist[u].step();
            for &w in &self.adj[u] {
                if dist[w] == Distance::Infinite {
                    dist[w] = next;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> Result<bool> {
        if self.n == 0 {
            return Err(Error::EmptyGraph);
        }
        Ok(self.bfs(0).iter().all(|d| d.is_finite()))
    }
}

/// Hop distances between every ordered pair of vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<Distance>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> Distance {
        self.d[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[Distance] {
        &self.d[u * self.n..(u + 1) * self.n]
    }
}

/// One BFS per source.
pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    let n = g.n();
    let mut d = Vec::with_capacity(n * n);
    for src in 0..n {
        d.extend(g.bfs(src));
    }
    DistanceMatrix { n, d }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn construction_normalizes_order() {
        let g = Graph::new(3, [(1, 0), (2, 1)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(g, path(3));
    }

    #[test]
    fn construction_rejects_bad_edges() {
        assert_eq!(Graph::new(2, [(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(
            Graph::new(4, [(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(1, 0))
        );
        assert_eq!(
            Graph::new(2, [(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn distances_on_small_graphs() {
        let d = all_pairs_distances(&path(3));
        assert_eq!(d.get(0, 2), Distance::Finite(2));

        let k4 = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let d = all_pairs_distances(&k4);
        for u in 0..4 {
            for v in 0..4 {
                let want = if u == v { 0 } else { 1 };
                assert_eq!(d.get(u, v), Distance::Finite(want));
            }
        }

        let d = all_pairs_distances(&Graph::empty(2));
        assert_eq!(d.get(0, 1), Distance::Infinite);
    }

    #[test]
    fn connectivity() {
        assert!(path(3).is_connected().unwrap());
        assert!(!Graph::empty(2).is_connected().unwrap());
        assert!(Graph::empty(1).is_connected().unwrap());
        assert_eq!(Graph::empty(0).is_connected(), Err(Error::EmptyGraph));
    }

    #[test]
    fn infinite_distance_absorbs() {
        assert_eq!(Distance::Infinite + Distance::Finite(3), Distance::Infinite);
        assert!(Distance::Infinite > Distance::Finite(u64::MAX));
        let total: Distance = [Distance::Finite(1), Distance::Finite(2)].into_iter().sum();
        assert_eq!(total, Distance::Finite(3));
    }

    #[test]
    fn vertex_set_ordering_is_lexicographic() {
        let a = VertexSet::from([0, 2]);
        let b = VertexSet::from([1, 3]);
        assert!(a < b);
        assert_eq!(VertexSet::from([3, 1, 3]).as_slice(), &[1, 3]);
        assert_eq!(VertexSet::from_mask(0b1010), VertexSet::from([1, 3]));
        assert_eq!(VertexSet::from([1, 3]).to_mask(), Some(0b1010));
    }

    #[test]
    fn graph_serde_validates() {
        let json = r#"{"n":2,"edges":[[0,0]]}"#;
        assert!(serde_json::from_str::<Graph>(json).is_err());
        let g: Graph = serde_json::from_str(r#"{"n":3,"edges":[[2,1],[1,0]]}"#).unwrap();
        assert_eq!(g, path(3));
    }
}
