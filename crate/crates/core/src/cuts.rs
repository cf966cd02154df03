//! Explicit k-super cuts, the k-cut predicates, and symbol profiles.
//!
//! A set `S` of vertices (or `F` of edges) is a *k-vertex-cut* (*k-edge-cut*)
//! when removing it disconnects the graph and every surviving vertex keeps
//! at least `k` neighbors.
//!
//! The explicit cut isolates a copy of `S_{k+1}`: the vertices whose last
//! `n−k−1` positions read `1, 2, …, n−k−1`. Its neighborhood `T` and its edge
//! boundary `F` both have `(k+1)!(n−k−1)` members.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::decomposition::star_adjacent;
use crate::error::{Error, Result};
use crate::graph::{EdgeSet, StarGraph, VertexId, VertexSet};
use crate::perm::{factorial, Permutation};

/// `(k+1)!·(n−k−1)`, or `None` when `k > n−2` or the value overflows.
pub fn cut_size_formula(n: usize, k: usize) -> Option<usize> {
    if n < 2 || k > n - 2 {
        return None;
    }
    factorial(k + 1)?.checked_mul(n - k - 1)
}

/// The isolated `S_{k+1}` copy `X`, its neighborhood `T` and boundary `F`.
#[derive(Clone, Debug)]
pub struct CutConstruction {
    pub n: usize,
    pub k: usize,
    pub x: VertexSet,
    pub t: VertexSet,
    pub f: EdgeSet,
}

impl CutConstruction {
    pub fn formula(&self) -> usize {
        cut_size_formula(self.n, self.k).expect("validated on construction")
    }
}

/// Builds `X` and derives `T = N(X)`, `F = ∂X`, then checks every structural
/// claim about them; any failure is reported as an invariant violation.
pub fn isolated_copy_cut(g: &StarGraph, k: usize) -> Result<CutConstruction> {
    let n = g.n();
    let formula = match cut_size_formula(n, k) {
        Some(v) => v,
        None if n >= 2 && k > n - 2 => {
            return Err(Error::Domain { n, k, max: n - 2 })
        }
        None => {
            return Err(Error::InvalidInput(format!(
                "no k-cut construction for n = {n}"
            )))
        }
    };
    let x = isolated_copy(g, k);
    let t = g.neighborhood(&x)?;
    let f = g.edge_boundary(&x)?;
    let cut = CutConstruction { n, k, x, t, f };

    let fail = |what: String| Err(Error::InvariantViolation(what));
    let copy_order = factorial(k + 1).expect("k + 1 <= n");
    if cut.x.len() != copy_order {
        return fail(format!("|X| = {} but (k+1)! = {copy_order}", cut.x.len()));
    }
    if cut.t.len() != formula || cut.f.len() != formula {
        return fail(format!(
            "|T| = {}, |F| = {}, expected {formula}",
            cut.t.len(),
            cut.f.len()
        ));
    }
    if !cut.x.is_disjoint(&cut.t) {
        return fail("X and T intersect".into());
    }
    if !cut
        .f
        .iter()
        .all(|e| (cut.x.contains(e.u()) && cut.t.contains(e.v())) || (cut.x.contains(e.v()) && cut.t.contains(e.u())))
    {
        return fail("an edge of F does not join X to T".into());
    }
    if closed_form_neighborhood(g, &cut.x, k) != cut.t {
        return fail("neighborhood expansion disagrees with the closed-form T".into());
    }
    if !copy_is_smaller_star(g, &cut.x, k) {
        return fail(format!("X does not induce a copy of S_{}", k + 1));
    }
    Ok(cut)
}

/// Vertices whose first `k+1` positions hold the symbols `n−k..=n` and whose
/// tail reads `1, 2, …, n−k−1`.
fn isolated_copy(g: &StarGraph, k: usize) -> VertexSet {
    let n = g.n();
    let tail = (n - k - 1) as u8;
    let copy_order = factorial(k + 1).expect("k + 1 <= n");
    (0..copy_order)
        .map(|r| {
            let head = Permutation::unrank(r, k + 1).expect("rank in range");
            let symbols: Vec<u8> = head
                .as_zero_based()
                .iter()
                .map(|&s| s + tail)
                .chain(0..tail)
                .collect();
            VertexId(Permutation::from_zero_based_unchecked(symbols).rank())
        })
        .collect()
}

/// `T` written out directly: swap the first symbol of each `X` vertex with the
/// tail symbol `i` sitting at position `k+1+i`.
fn closed_form_neighborhood(g: &StarGraph, x: &VertexSet, k: usize) -> VertexSet {
    let n = g.n();
    x.iter()
        .flat_map(|v| {
            let p = g.label(v);
            (k + 1..n).map(move |pos| VertexId(p.swap_first(pos).rank()))
        })
        .collect()
}

/// Drops the fixed tail and shifts the head symbols onto `1..=k+1`; checks
/// this is a bijection onto `S_{k+1}` that carries the `X` edges onto all of
/// the `S_{k+1}` edges.
fn copy_is_smaller_star(g: &StarGraph, x: &VertexSet, k: usize) -> bool {
    let n = g.n();
    let shift = (n - k - 1) as u8;
    let image = |v: VertexId| -> Option<Vec<u8>> {
        let p = g.label(v);
        let syms = p.as_zero_based();
        if syms[k + 1..].iter().enumerate().any(|(i, &s)| s != i as u8) {
            return None;
        }
        Some(syms[..=k].iter().map(|&s| s - shift).collect())
    };
    let order = factorial(k + 1).expect("k + 1 <= n");
    let mut hit = vec![false; order];
    let mut edges = 0usize;
    for v in x.iter() {
        let Some(iv) = image(v) else { return false };
        let Ok(q) = Permutation::from_zero_based(iv.clone()) else {
            return false;
        };
        if std::mem::replace(&mut hit[q.rank()], true) {
            return false;
        }
        for w in g.neighbors(v).filter(|&w| w > v && x.contains(w)) {
            edges += 1;
            match image(w) {
                Some(iw) if star_adjacent(&iv, &iw) => {}
                _ => return false,
            }
        }
    }
    hit.iter().all(|&h| h) && edges == order * k / 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CutReason {
    NotDisconnected,
    DegreeBelowK,
    Ok,
}

/// Outcome of checking a candidate k-vertex-cut or k-edge-cut.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutVerdict {
    pub k: usize,
    pub valid: bool,
    pub reason: CutReason,
    /// Component sizes after removal, ordered by smallest member.
    pub components: Vec<usize>,
    /// [`crate::graph::INFINITE_DEGREE`] when nothing survives.
    pub min_surviving_degree: usize,
}

impl CutVerdict {
    fn from_evidence(
        k: usize,
        components: Vec<usize>,
        min_surviving_degree: usize,
        single_vertex_counts: bool,
    ) -> Self {
        let single_vertex = single_vertex_counts && components == [1];
        let reason = if components.len() < 2 && !single_vertex {
            CutReason::NotDisconnected
        } else if min_surviving_degree < k {
            CutReason::DegreeBelowK
        } else {
            CutReason::Ok
        };
        CutVerdict {
            k,
            valid: reason == CutReason::Ok,
            reason,
            components,
            min_surviving_degree,
        }
    }
}

/// Whether removing `s` leaves a disconnected graph, or a single vertex,
/// with minimum degree at least `k`. The single-vertex case only matters for
/// the complete graph `S_2`, whose vertex connectivity is `|V|−1`.
pub fn is_k_vertex_cut(g: &StarGraph, s: &VertexSet, k: usize) -> Result<CutVerdict> {
    g.check_vertex_set(s)?;
    if s.len() == g.order() {
        return Err(Error::InvalidInput(
            "removing every vertex leaves no graph to disconnect".into(),
        ));
    }
    let none = EdgeSet::new();
    let components = g.components(s, &none)?.iter().map(Vec::len).collect();
    let min_degree = g.min_degree(s, &none)?;
    Ok(CutVerdict::from_evidence(k, components, min_degree, true))
}

pub fn is_k_edge_cut(g: &StarGraph, f: &EdgeSet, k: usize) -> Result<CutVerdict> {
    let none = VertexSet::new();
    let components = g.components(&none, f)?.iter().map(Vec::len).collect();
    let min_degree = g.min_degree(&none, f)?;
    Ok(CutVerdict::from_evidence(k, components, min_degree, false))
}

/// Which symbols occur at each position over a vertex set, and dually at
/// which positions (excluding the first) each symbol occurs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolProfile {
    n: usize,
    // bit s of by_position[j]: symbol s occurs at position j (0-based)
    by_position: Vec<u32>,
    // bit j of by_symbol[s]: symbol s occurs at position j >= 1 (0-based)
    by_symbol: Vec<u32>,
}

fn ones(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect()
}

impl SymbolProfile {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `U_j`: symbols (1-based) seen at 1-based `position`.
    pub fn symbols_at(&self, position: usize) -> Vec<usize> {
        ones(self.by_position[position - 1])
    }

    /// `|U_j|`.
    pub fn spread(&self, position: usize) -> usize {
        self.by_position[position - 1].count_ones() as usize
    }

    /// `W_i`: positions in `2..=n` (1-based) where 1-based `symbol` is seen.
    pub fn positions_of(&self, symbol: usize) -> Vec<usize> {
        ones(self.by_symbol[symbol - 1])
    }

    /// `|W_i|`.
    pub fn reach(&self, symbol: usize) -> usize {
        self.by_symbol[symbol - 1].count_ones() as usize
    }

    /// `i ∈ U_j ⇔ j ∈ W_i` for every `j >= 2`.
    pub fn duality_holds(&self) -> bool {
        (1..self.n).all(|j| {
            (0..self.n).all(|s| {
                let in_u = self.by_position[j] & (1 << s) != 0;
                let in_w = self.by_symbol[s] & (1 << j) != 0;
                in_u == in_w
            })
        })
    }

    /// `Σ_{j>=2} |U_j|`.
    pub fn position_total(&self) -> usize {
        (2..=self.n).map(|j| self.spread(j)).sum()
    }

    /// `Σ_i |W_i|`.
    pub fn symbol_total(&self) -> usize {
        (1..=self.n).map(|i| self.reach(i)).sum()
    }
}

impl Serialize for SymbolProfile {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let u: Vec<Vec<usize>> = (1..=self.n).map(|j| self.symbols_at(j)).collect();
        let w: Vec<Vec<usize>> = (1..=self.n).map(|i| self.positions_of(i)).collect();
        let mut st = serializer.serialize_struct("SymbolProfile", 2)?;
        st.serialize_field("symbols_by_position", &u)?;
        st.serialize_field("positions_by_symbol", &w)?;
        st.end()
    }
}

/// Tabulates both views straight from the labels; neither is derived from the other.
pub fn symbol_profile(g: &StarGraph, x: &VertexSet) -> Result<SymbolProfile> {
    if x.is_empty() {
        return Err(Error::InvalidInput("symbol profile of an empty set".into()));
    }
    g.check_vertex_set(x)?;
    let n = g.n();
    let mut by_position = vec![0u32; n];
    let mut by_symbol = vec![0u32; n];
    for v in x.iter() {
        let p = g.label(v);
        for (j, &s) in p.as_zero_based().iter().enumerate() {
            by_position[j] |= 1 << s;
            if j > 0 {
                by_symbol[s as usize] |= 1 << j;
            }
        }
    }
    Ok(SymbolProfile {
        n,
        by_position,
        by_symbol,
    })
}

/// The smallest position `j in 2..=n` at which at least `k+1` distinct
/// symbols occur over `X`.
///
/// `X` must induce a subgraph of minimum degree at least `k`; such a position
/// then always exists, so its absence is an invariant violation.
pub fn spread_position(g: &StarGraph, x: &VertexSet, k: usize) -> Result<usize> {
    if g.n() < 2 {
        return Err(Error::Precondition("needs n >= 2".into()));
    }
    let profile = symbol_profile(g, x)?;
    let delta = g.induced_min_degree(x);
    if delta < k {
        return Err(Error::Precondition(format!(
            "induced minimum degree {delta} is below k = {k}"
        )));
    }
    (2..=g.n())
        .find(|&j| profile.spread(j) > k)
        .ok_or_else(|| {
            Error::InvariantViolation(format!(
                "no position carries {} distinct symbols over a set with minimum degree {delta}",
                k + 1
            ))
        })
}

/// Members `v` of `X` whose first symbol reaches fewer than `k` positions
/// beyond the first (expected empty whenever `X` has minimum degree `k`).
pub fn first_symbol_reach_violations(g: &StarGraph, x: &VertexSet, k: usize) -> Result<Vec<VertexId>> {
    let profile = symbol_profile(g, x)?;
    Ok(x.iter()
        .filter(|&v| profile.reach(g.label(v).symbol_at(1)) < k)
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniqueNeighborReport {
    pub x_size: usize,
    /// Vertices outside `X` with at least one neighbor in `X`.
    pub boundary_size: usize,
    /// Number of outside vertices by how many neighbors they have in `X`.
    pub histogram: BTreeMap<usize, usize>,
    pub max_outside: usize,
    pub boundary_exactly_one: bool,
    /// First few outside vertices with two or more neighbors in `X`.
    pub violations: Vec<Permutation>,
    pub pass: bool,
    #[serde(skip)]
    pub boundary_counts: Vec<(VertexId, usize)>,
}

/// Counts, for every vertex outside `X`, its neighbors inside `X`.
pub fn unique_neighbor_check(g: &StarGraph, x: &VertexSet) -> Result<UniqueNeighborReport> {
    g.check_vertex_set(x)?;
    let inside = x.mask(g.order());
    let mut histogram = BTreeMap::new();
    let mut boundary_counts = Vec::new();
    let mut violations = Vec::new();
    let mut max_outside = 0;
    for v in g.vertices().filter(|v| !inside[v.0]) {
        let c = g.neighbors(v).filter(|w| inside[w.0]).count();
        *histogram.entry(c).or_insert(0) += 1;
        max_outside = max_outside.max(c);
        if c > 0 {
            boundary_counts.push((v, c));
        }
        if c > 1 && violations.len() < 8 {
            violations.push(g.label(v));
        }
    }
    let boundary_exactly_one = boundary_counts.iter().all(|&(_, c)| c == 1);
    Ok(UniqueNeighborReport {
        x_size: x.len(),
        boundary_size: boundary_counts.len(),
        histogram,
        max_outside,
        boundary_exactly_one,
        violations,
        pass: max_outside <= 1 && boundary_exactly_one,
        boundary_counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{AdjacencyMode, Edge};

    fn graph(n: usize) -> StarGraph {
        StarGraph::new(n, AdjacencyMode::Auto).unwrap()
    }

    fn set(g: &StarGraph, labels: &[&str]) -> VertexSet {
        labels
            .iter()
            .map(|l| g.vertex(&l.parse().unwrap()).unwrap())
            .collect()
    }

    #[test]
    fn formula_values() {
        assert_eq!(cut_size_formula(4, 0), Some(3));
        assert_eq!(cut_size_formula(4, 1), Some(4));
        assert_eq!(cut_size_formula(4, 2), Some(6));
        assert_eq!(cut_size_formula(8, 6), Some(5040));
        assert_eq!(cut_size_formula(4, 3), None);
        assert_eq!(cut_size_formula(1, 0), None);
    }

    #[test]
    fn construction_n4_k1() {
        let g = graph(4);
        let cut = isolated_copy_cut(&g, 1).unwrap();
        assert_eq!(cut.x, set(&g, &["3412", "4312"]));
        assert_eq!(cut.t, set(&g, &["1432", "1342", "2413", "2314"]));
        assert_eq!((cut.t.len(), cut.f.len()), (4, 4));
    }

    #[test]
    fn construction_n4_k2() {
        let g = graph(4);
        let cut = isolated_copy_cut(&g, 2).unwrap();
        assert!(cut.x.iter().all(|v| g.label(v).symbol_at(4) == 1));
        assert_eq!(cut.x.len(), 6);
        assert!(cut.t.iter().all(|v| g.label(v).symbol_at(1) == 1));
        assert_eq!(cut.t.len(), 6);
    }

    #[test]
    fn construction_k0_isolates_one_vertex() {
        for n in 2..=7 {
            let g = graph(n);
            let cut = isolated_copy_cut(&g, 0).unwrap();
            let mut label: Vec<usize> = vec![n];
            label.extend(1..n);
            let expected = Permutation::new(&label).unwrap();
            assert_eq!(cut.x.len(), 1);
            assert_eq!(g.label(cut.x.as_slice()[0]), expected);
            assert_eq!(cut.t.len(), n - 1);
        }
    }

    #[test]
    fn construction_rejects_out_of_range_k() {
        let g = graph(4);
        assert_eq!(
            isolated_copy_cut(&g, 3).unwrap_err(),
            Error::Domain { n: 4, k: 3, max: 2 }
        );
        assert!(isolated_copy_cut(&graph(1), 0).is_err());
    }

    #[test]
    fn verdict_examples() {
        let g = graph(4);
        let cut = isolated_copy_cut(&g, 1).unwrap();
        let v = is_k_vertex_cut(&g, &cut.t, 1).unwrap();
        assert!(v.valid);
        let mut sizes = v.components.clone();
        sizes.sort_unstable();
        assert_eq!(sizes, [2, 18]);
        assert!(v.min_surviving_degree >= 1);

        let v = is_k_vertex_cut(&g, &set(&g, &["1234"]), 0).unwrap();
        assert_eq!(v.reason, CutReason::NotDisconnected);
        assert!(!v.valid);

        let all: VertexSet = g.vertices().collect();
        assert!(is_k_vertex_cut(&g, &all, 0).is_err());
    }

    #[test]
    fn complete_graph_cut_leaves_one_vertex() {
        let g = graph(2);
        let cut = isolated_copy_cut(&g, 0).unwrap();
        assert!(is_k_vertex_cut(&g, &cut.t, 0).unwrap().valid);
        assert!(is_k_edge_cut(&g, &cut.f, 0).unwrap().valid);
        // in S_3, leaving one vertex behind is still a (wasteful) cut
        let g = graph(3);
        let most: VertexSet = g.vertices().skip(1).collect();
        assert!(is_k_vertex_cut(&g, &most, 0).unwrap().valid);
        assert_eq!(is_k_vertex_cut(&g, &most, 1).unwrap().reason, CutReason::DegreeBelowK);
    }

    #[test]
    fn isolating_a_hexagon_vertex_by_edges() {
        let g = graph(3);
        let c = g.vertex(&"123".parse().unwrap()).unwrap();
        let f: EdgeSet = g.neighbors(c).map(|w| Edge::new(c, w).unwrap()).collect();
        let v = is_k_edge_cut(&g, &f, 0).unwrap();
        assert!(v.valid);
        assert_eq!(v.components.len(), 2);
        let v1 = is_k_edge_cut(&g, &f, 1).unwrap();
        assert_eq!(v1.reason, CutReason::DegreeBelowK);
    }

    #[test]
    fn profile_of_pair() {
        let g = graph(4);
        let p = symbol_profile(&g, &set(&g, &["3412", "4312"])).unwrap();
        assert_eq!(p.symbols_at(1), [3, 4]);
        assert_eq!(p.symbols_at(2), [3, 4]);
        assert_eq!(p.symbols_at(3), [1]);
        assert_eq!(p.symbols_at(4), [2]);
        assert_eq!(p.positions_of(1), [3]);
        assert_eq!(p.positions_of(2), [4]);
        assert_eq!(p.positions_of(3), [2]);
        assert_eq!(p.positions_of(4), [2]);
        assert_eq!(p.position_total(), 4);
        assert_eq!(p.symbol_total(), 4);
        assert!(p.duality_holds());
    }

    #[test]
    fn profile_extremes() {
        let g = graph(4);
        let all: VertexSet = g.vertices().collect();
        let p = symbol_profile(&g, &all).unwrap();
        assert!((1..=4).all(|j| p.symbols_at(j) == [1, 2, 3, 4]));
        let one = symbol_profile(&g, &set(&g, &["1234"])).unwrap();
        assert!((1..=4).all(|j| one.spread(j) == 1));
        assert!(symbol_profile(&g, &VertexSet::new()).is_err());
    }

    #[test]
    fn spread_position_examples() {
        let g = graph(4);
        let hexagon = set(&g, &["2431", "3421", "4321", "2341", "3241", "4231"]);
        assert_eq!(spread_position(&g, &hexagon, 2).unwrap(), 2);
        assert_eq!(
            symbol_profile(&g, &hexagon).unwrap().symbols_at(2),
            [2, 3, 4]
        );
        assert_eq!(spread_position(&g, &set(&g, &["3412", "4312"]), 1).unwrap(), 2);
        for n in 2..=5 {
            let g = graph(n);
            let all: VertexSet = g.vertices().collect();
            assert_eq!(spread_position(&g, &all, n - 1).unwrap(), 2);
        }
        assert!(matches!(
            spread_position(&g, &set(&g, &["3412", "4312"]), 2),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn unique_neighbor_examples() {
        let g = graph(4);
        let cut = isolated_copy_cut(&g, 1).unwrap();
        let r = unique_neighbor_check(&g, &cut.x).unwrap();
        assert!(r.pass);
        assert_eq!(r.boundary_size, 4);
        assert_eq!(r.histogram[&0], 18);
        let cut = isolated_copy_cut(&g, 2).unwrap();
        let r = unique_neighbor_check(&g, &cut.x).unwrap();
        assert!(r.pass && r.boundary_size == 6);
        let g5 = graph(5);
        let cut = isolated_copy_cut(&g5, 1).unwrap();
        let r = unique_neighbor_check(&g5, &cut.x).unwrap();
        assert_eq!(r.histogram.values().sum::<usize>(), 118);
        assert_eq!(r.max_outside, 1);
    }
}
