//! The star graph `S_n` and the generic graph primitives the rest of the
//! crate is built on.
//!
//! Vertices are identified by the Lehmer rank of their permutation label.
//! Two vertices are adjacent exactly when one label is obtained from the
//! other by exchanging the first symbol with the symbol in some other
//! position.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::{factorial, rank_zero_based, unrank_into, Permutation, MAX_N};

/// Minimum degree reported for a graph with no surviving vertices.
pub const INFINITE_DEGREE: usize = usize::MAX;

/// Largest `n` for which adjacency may be stored explicitly.
pub const MATERIALIZE_MAX_N: usize = 12;

/// Largest `n` that [`AdjacencyMode::Auto`] materializes.
pub const AUTO_MATERIALIZE_MAX_N: usize = 9;

/// Dense vertex index: the Lehmer rank of the vertex label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// An undirected edge, normalized so that `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    u: VertexId,
    v: VertexId,
}

impl Edge {
    pub fn new(a: VertexId, b: VertexId) -> Result<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(Edge { u: a, v: b }),
            std::cmp::Ordering::Greater => Ok(Edge { u: b, v: a }),
            std::cmp::Ordering::Equal => Err(Error::InvalidInput(format!(
                "self-loop at vertex {a} is not an edge"
            ))),
        }
    }

    pub fn u(self) -> VertexId {
        self.u
    }

    pub fn v(self) -> VertexId {
        self.v
    }

    /// The endpoint opposite `w`, if `w` is an endpoint.
    pub fn other(self, w: VertexId) -> Option<VertexId> {
        if w == self.u {
            Some(self.v)
        } else if w == self.v {
            Some(self.u)
        } else {
            None
        }
    }
}

/// A duplicate-free, ascending set of vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(Vec<VertexId>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    /// Builds a set, rejecting repeated members.
    pub fn try_from_vec(mut members: Vec<VertexId>) -> Result<Self> {
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput(format!("vertex {} listed twice", w[0])));
        }
        Ok(VertexSet(members))
    }

    pub(crate) fn from_sorted_unchecked(members: Vec<VertexId>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSet(members)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.0
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Membership bitmap over `0..order`.
    pub fn mask(&self, order: usize) -> Vec<bool> {
        let mut mask = vec![false; order];
        for v in &self.0 {
            mask[v.0] = true;
        }
        mask
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }
}

impl FromIterator<VertexId> for VertexSet {
    /// Collects, silently dropping repeats.
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        let mut members: Vec<VertexId> = iter.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        VertexSet(members)
    }
}

/// A duplicate-free, ascending set of edges (ordered by `(u, v)`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct EdgeSet(Vec<Edge>);

impl EdgeSet {
    pub fn new() -> Self {
        EdgeSet(Vec::new())
    }

    pub fn try_from_vec(mut members: Vec<Edge>) -> Result<Self> {
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput(format!(
                "edge {}-{} listed twice",
                w[0].u, w[0].v
            )));
        }
        Ok(EdgeSet(members))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Edge> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Edge] {
        &self.0
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    /// True when no two edges share an endpoint.
    pub fn is_matching(&self) -> bool {
        let mut seen = HashSet::with_capacity(2 * self.0.len());
        self.0.iter().all(|e| seen.insert(e.u) && seen.insert(e.v))
    }
}

impl FromIterator<Edge> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        let mut members: Vec<Edge> = iter.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        EdgeSet(members)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum AdjacencyMode {
    /// Neighbors are recomputed from the permutation label on every query.
    Implicit,
    /// All `n!·(n−1)` neighbor ranks are stored in one flat array.
    Materialized,
    /// Materialized up to [`AUTO_MATERIALIZE_MAX_N`], implicit beyond.
    #[default]
    Auto,
}

/// The star graph on the permutations of `1..=n`. Immutable once built.
#[derive(Clone)]
pub struct StarGraph {
    n: usize,
    order: usize,
    adjacency: Option<Vec<u32>>,
}

impl fmt::Debug for StarGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StarGraph")
            .field("n", &self.n)
            .field("order", &self.order)
            .field("materialized", &self.adjacency.is_some())
            .finish()
    }
}

/// The neighbors of `p` in `S_n`, ordered by the swapped position.
///
/// The `i`-th result exchanges the first symbol with the symbol in position
/// `i + 1` (0-based: positions `0` and `i`).
pub fn star_neighbors(p: &Permutation) -> Vec<Permutation> {
    (1..p.n()).map(|pos| p.swap_first(pos)).collect()
}

impl StarGraph {
    pub fn new(n: usize, mode: AdjacencyMode) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("n must be at least 1".into()));
        }
        let order = match factorial(n) {
            Some(order) if n <= MAX_N => order,
            _ => {
                return Err(Error::Capacity(format!(
                    "{n}! does not fit in a {}-bit vertex index",
                    usize::BITS
                )))
            }
        };
        let materialize = match mode {
            AdjacencyMode::Implicit => false,
            AdjacencyMode::Auto => n <= AUTO_MATERIALIZE_MAX_N,
            AdjacencyMode::Materialized => {
                if n > MATERIALIZE_MAX_N {
                    return Err(Error::Capacity(format!(
                        "materialized adjacency supports n <= {MATERIALIZE_MAX_N}, got {n}"
                    )));
                }
                true
            }
        };
        let adjacency = materialize.then(|| build_adjacency(n, order));
        Ok(StarGraph {
            n,
            order,
            adjacency,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of vertices, `n!`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of edges, `n!·(n−1)/2`.
    pub fn edge_count(&self) -> usize {
        self.order * (self.n - 1) / 2
    }

    pub fn degree(&self) -> usize {
        self.n - 1
    }

    pub fn is_materialized(&self) -> bool {
        self.adjacency.is_some()
    }

    pub(crate) fn flat_adjacency(&self) -> Option<&[u32]> {
        self.adjacency.as_deref()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.order).map(VertexId)
    }

    pub fn label(&self, v: VertexId) -> Permutation {
        let mut symbols = vec![0u8; self.n];
        unrank_into(v.0, &mut symbols);
        Permutation::from_zero_based_unchecked(symbols)
    }

    pub fn vertex(&self, p: &Permutation) -> Result<VertexId> {
        if p.n() != self.n {
            return Err(Error::InvalidInput(format!(
                "permutation {p} has length {}, graph has n = {}",
                p.n(),
                self.n
            )));
        }
        Ok(VertexId(p.rank()))
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v.0 < self.order {
            Ok(())
        } else {
            Err(Error::RankOutOfRange {
                rank: v.0,
                n: self.n,
            })
        }
    }

    pub fn check_vertex_set(&self, set: &VertexSet) -> Result<()> {
        match set.as_slice().last() {
            Some(&v) => self.check_vertex(v),
            None => Ok(()),
        }
    }

    pub fn check_edge_set(&self, set: &EdgeSet) -> Result<()> {
        for e in set.iter() {
            self.check_vertex(e.v)?;
            if !self.are_adjacent(e.u, e.v) {
                return Err(Error::InvalidInput(format!(
                    "{} and {} are not adjacent in S_{}",
                    self.label(e.u),
                    self.label(e.v),
                    self.n
                )));
            }
        }
        Ok(())
    }

    /// Neighbors ordered by swap position.
    pub fn neighbors(&self, v: VertexId) -> Neighbors<'_> {
        match &self.adjacency {
            Some(adj) => {
                let d = self.n - 1;
                Neighbors::Stored(adj[v.0 * d..(v.0 + 1) * d].iter())
            }
            None => {
                let mut symbols = [0u8; MAX_N];
                unrank_into(v.0, &mut symbols[..self.n]);
                Neighbors::Computed {
                    symbols,
                    n: self.n,
                    pos: 1,
                }
            }
        }
    }

    pub fn are_adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.neighbors(u).any(|w| w == v)
    }

    /// All edges ordered by `(min rank, max rank)`.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.vertices().flat_map(move |u| {
            let mut higher: Vec<VertexId> = self.neighbors(u).filter(|&w| w > u).collect();
            higher.sort_unstable();
            higher.into_iter().map(move |w| Edge { u, v: w })
        })
    }

    /// Connected components of the graph minus the removed vertices and
    /// edges, each sorted ascending, ordered by smallest member.
    pub fn components(
        &self,
        removed_vertices: &VertexSet,
        removed_edges: &EdgeSet,
    ) -> Result<Vec<Vec<VertexId>>> {
        self.check_vertex_set(removed_vertices)?;
        self.check_edge_set(removed_edges)?;
        let blocked: HashSet<Edge> = removed_edges.iter().collect();
        let mut seen = removed_vertices.mask(self.order);
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..self.order {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(VertexId(s));
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for w in self.neighbors(u) {
                    if seen[w.0] {
                        continue;
                    }
                    if !blocked.is_empty() && blocked.contains(&Edge::new(u, w).expect("no loops"))
                    {
                        continue;
                    }
                    seen[w.0] = true;
                    queue.push_back(w);
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        Ok(out)
    }

    /// Minimum degree over surviving vertices; [`INFINITE_DEGREE`] if none survive.
    pub fn min_degree(&self, removed_vertices: &VertexSet, removed_edges: &EdgeSet) -> Result<usize> {
        self.check_vertex_set(removed_vertices)?;
        self.check_edge_set(removed_edges)?;
        let gone = removed_vertices.mask(self.order);
        let mut lost = vec![0usize; self.order];
        for e in removed_edges.iter() {
            lost[e.u.0] += 1;
            lost[e.v.0] += 1;
        }
        Ok((0..self.order)
            .filter(|&v| !gone[v])
            .map(|v| {
                let alive = self.neighbors(VertexId(v)).filter(|w| !gone[w.0]).count();
                alive - lost[v]
            })
            .min()
            .unwrap_or(INFINITE_DEGREE))
    }

    /// `N(X)`: vertices outside `X` adjacent to some member of `X`.
    pub fn neighborhood(&self, x: &VertexSet) -> Result<VertexSet> {
        self.check_vertex_set(x)?;
        Ok(x.iter()
            .flat_map(|v| self.neighbors(v))
            .filter(|&w| !x.contains(w))
            .collect())
    }

    /// Edges with exactly one endpoint in `X`.
    pub fn edge_boundary(&self, x: &VertexSet) -> Result<EdgeSet> {
        self.check_vertex_set(x)?;
        Ok(x.iter()
            .flat_map(|v| {
                self.neighbors(v)
                    .filter(|&w| !x.contains(w))
                    .map(move |w| Edge::new(v, w).expect("no loops"))
            })
            .collect())
    }

    /// Minimum degree of the subgraph induced by `X`; [`INFINITE_DEGREE`] for empty `X`.
    pub fn induced_min_degree(&self, x: &VertexSet) -> usize {
        x.iter()
            .map(|v| self.neighbors(v).filter(|&w| x.contains(w)).count())
            .min()
            .unwrap_or(INFINITE_DEGREE)
    }

    /// Number of edges with both endpoints in `X`.
    pub fn induced_edge_count(&self, x: &VertexSet) -> usize {
        x.iter()
            .map(|v| self.neighbors(v).filter(|&w| w > v && x.contains(w)).count())
            .sum()
    }
}

fn build_adjacency(n: usize, order: usize) -> Vec<u32> {
    let d = n - 1;
    if d == 0 {
        return Vec::new();
    }
    let mut adj = vec![0u32; order * d];
    let mut symbols = vec![0u8; n];
    for (r, row) in adj.chunks_mut(d).enumerate() {
        unrank_into(r, &mut symbols);
        for (slot, pos) in row.iter_mut().zip(1..n) {
            symbols.swap(0, pos);
            *slot = rank_zero_based(&symbols) as u32;
            symbols.swap(0, pos);
        }
    }
    adj
}

/// Iterator returned by [`StarGraph::neighbors`].
pub enum Neighbors<'a> {
    Stored(std::slice::Iter<'a, u32>),
    Computed {
        symbols: [u8; MAX_N],
        n: usize,
        pos: usize,
    },
}

impl Iterator for Neighbors<'_> {
    type Item = VertexId;

    fn next(&mut self) -> Option<VertexId> {
        match self {
            Neighbors::Stored(it) => it.next().map(|&r| VertexId(r as usize)),
            Neighbors::Computed { symbols, n, pos } => {
                if *pos >= *n {
                    return None;
                }
                symbols.swap(0, *pos);
                let r = rank_zero_based(&symbols[..*n]);
                symbols.swap(0, *pos);
                *pos += 1;
                Some(VertexId(r))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn ids(g: &StarGraph, labels: &[&str]) -> VertexSet {
        labels.iter().map(|l| g.vertex(&p(l)).unwrap()).collect()
    }

    #[test]
    fn neighbors_of_1234_match_figure() {
        let got: Vec<String> = star_neighbors(&p("1234")).iter().map(|q| q.compact()).collect();
        assert_eq!(got, ["2134", "3214", "4231"]);
        let got: Vec<String> = star_neighbors(&p("12")).iter().map(|q| q.compact()).collect();
        assert_eq!(got, ["21"]);
    }

    #[test]
    fn neighbors_of_3412_agree_with_transposition_composition() {
        // Independent route: right-multiply by the transposition (1 i), written
        // as an explicit permutation composed position-wise.
        let q = p("3412");
        let by_composition: Vec<String> = (2..=4)
            .map(|i| {
                let mut t: Vec<usize> = (1..=4).collect();
                t.swap(0, i - 1);
                let syms: Vec<usize> = t.iter().map(|&pos| q.symbol_at(pos)).collect();
                Permutation::new(&syms).unwrap().compact()
            })
            .collect();
        assert_eq!(by_composition, ["4312", "1432", "2413"]);
        let got: Vec<String> = star_neighbors(&q).iter().map(|x| x.compact()).collect();
        assert_eq!(got, by_composition);
    }

    #[test]
    fn small_graph_sizes() {
        let g1 = StarGraph::new(1, AdjacencyMode::Auto).unwrap();
        assert_eq!((g1.order(), g1.edge_count()), (1, 0));
        assert_eq!(g1.neighbors(VertexId(0)).count(), 0);
        let g4 = StarGraph::new(4, AdjacencyMode::Auto).unwrap();
        assert_eq!((g4.order(), g4.edge_count()), (24, 36));
        assert_eq!(g4.edges().count(), 36);
    }

    #[test]
    fn s3_is_a_six_cycle() {
        let g = StarGraph::new(3, AdjacencyMode::Auto).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.vertices().all(|v| g.neighbors(v).count() == 2));
        assert_eq!(g.components(&VertexSet::new(), &EdgeSet::new()).unwrap().len(), 1);
    }

    #[test]
    fn implicit_and_materialized_agree() {
        for n in 1..=6 {
            let a = StarGraph::new(n, AdjacencyMode::Implicit).unwrap();
            let b = StarGraph::new(n, AdjacencyMode::Materialized).unwrap();
            assert!(!a.is_materialized() && b.is_materialized());
            for v in a.vertices() {
                assert!(a.neighbors(v).eq(b.neighbors(v)));
            }
        }
    }

    #[test]
    fn capacity_limits() {
        assert!(matches!(
            StarGraph::new(13, AdjacencyMode::Materialized),
            Err(Error::Capacity(_))
        ));
        assert!(matches!(
            StarGraph::new(21, AdjacencyMode::Implicit),
            Err(Error::Capacity(_))
        ));
        assert!(StarGraph::new(0, AdjacencyMode::Auto).is_err());
        let g = StarGraph::new(12, AdjacencyMode::Auto).unwrap();
        assert!(!g.is_materialized());
        assert_eq!(g.order(), 479_001_600);
    }

    #[test]
    fn antipodal_removal_in_s3() {
        let g = StarGraph::new(3, AdjacencyMode::Auto).unwrap();
        // hexagon 123-213-312-132-231-321: 123 and 132 are opposite
        let removed = ids(&g, &["123", "132"]);
        let comps = g.components(&removed, &EdgeSet::new()).unwrap();
        assert_eq!(comps.iter().map(Vec::len).collect::<Vec<_>>(), [2, 2]);
    }

    #[test]
    fn removing_neighborhood_of_pair_in_s4() {
        let g = StarGraph::new(4, AdjacencyMode::Auto).unwrap();
        let t = ids(&g, &["1432", "1342", "2413", "2314"]);
        let comps = g.components(&t, &EdgeSet::new()).unwrap();
        let mut sizes: Vec<usize> = comps.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, [2, 18]);
        let pair = ids(&g, &["3412", "4312"]);
        assert!(comps.iter().any(|c| c.as_slice() == pair.as_slice()));
        for w in comps.windows(2) {
            assert!(w[0][0] < w[1][0]);
        }
    }

    #[test]
    fn neighborhood_and_boundary_examples() {
        let g = StarGraph::new(4, AdjacencyMode::Auto).unwrap();
        let x = ids(&g, &["3412", "4312"]);
        assert_eq!(
            g.neighborhood(&x).unwrap(),
            ids(&g, &["1432", "2413", "1342", "2314"])
        );
        assert_eq!(g.edge_boundary(&x).unwrap().len(), 4);
        assert_eq!(g.min_degree(&VertexSet::new(), &EdgeSet::new()).unwrap(), 3);
        let all: VertexSet = g.vertices().collect();
        assert_eq!(g.min_degree(&all, &EdgeSet::new()).unwrap(), INFINITE_DEGREE);
    }

    #[test]
    fn rejects_bogus_inputs() {
        let g = StarGraph::new(3, AdjacencyMode::Auto).unwrap();
        let bad = VertexSet::from_iter([VertexId(6)]);
        assert!(g.components(&bad, &EdgeSet::new()).is_err());
        let non_edge = EdgeSet::from_iter([Edge::new(VertexId(0), VertexId(1)).unwrap()]);
        assert!(g.components(&VertexSet::new(), &non_edge).is_err());
        assert!(Edge::new(VertexId(1), VertexId(1)).is_err());
        assert!(VertexSet::try_from_vec(vec![VertexId(1), VertexId(1)]).is_err());
    }
}
