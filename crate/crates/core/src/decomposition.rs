//! The two hierarchical partitions of `S_n` and their validators.
//!
//! `S^{j:i}` is the subgraph induced by the vertices carrying symbol `i` in
//! position `j` (both 1-based). Fixing `j >= 2` splits `S_n` into `n` copies
//! of `S_{n−1}` (the dimension partition). Fixing `i` instead yields one
//! edgeless center `S^{1:i}` plus `n−1` copies of `S_{n−1}` (the symbol
//! partition). Copies are certified with an explicit relabeling map, never
//! by generic isomorphism search.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeSet, StarGraph, VertexId, VertexSet};
use crate::perm::{factorial, Permutation};

/// `S_n` split along position `j`: part `i` holds the vertices with symbol `i` at `j`.
#[derive(Clone, Debug)]
pub struct DimensionPartition {
    n: usize,
    position: usize,
    parts: Vec<VertexSet>,
}

impl DimensionPartition {
    pub fn position(&self) -> usize {
        self.position
    }

    /// Part for 1-based `symbol`.
    pub fn part(&self, symbol: usize) -> Result<&VertexSet> {
        check_symbol(self.n, symbol)?;
        Ok(&self.parts[symbol - 1])
    }

    /// `(symbol, part)` pairs in symbol order.
    pub fn parts(&self) -> impl Iterator<Item = (usize, &VertexSet)> {
        self.parts.iter().enumerate().map(|(i, p)| (i + 1, p))
    }
}

/// `S_n` split along symbol `i`: the center has `i` first, part `j` has `i` at position `j`.
#[derive(Clone, Debug)]
pub struct SymbolPartition {
    n: usize,
    symbol: usize,
    center: VertexSet,
    parts: Vec<VertexSet>,
}

impl SymbolPartition {
    pub fn symbol(&self) -> usize {
        self.symbol
    }

    pub fn center(&self) -> &VertexSet {
        &self.center
    }

    /// Part for 1-based `position` in `2..=n`.
    pub fn part(&self, position: usize) -> Result<&VertexSet> {
        check_position(self.n, position)?;
        Ok(&self.parts[position - 2])
    }

    /// `(position, part)` pairs for positions `2..=n`.
    pub fn parts(&self) -> impl Iterator<Item = (usize, &VertexSet)> {
        self.parts.iter().enumerate().map(|(j, p)| (j + 2, p))
    }
}

fn check_position(n: usize, position: usize) -> Result<()> {
    if (2..=n).contains(&position) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "position {position} outside 2..={n}"
        )))
    }
}

fn check_symbol(n: usize, symbol: usize) -> Result<()> {
    if (1..=n).contains(&symbol) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("symbol {symbol} outside 1..={n}")))
    }
}

/// Buckets every vertex by the symbol found at 0-based `pos`.
fn bucket_by_position(g: &StarGraph, pos: usize) -> Vec<Vec<VertexId>> {
    let mut buckets = vec![Vec::with_capacity(g.order() / g.n()); g.n()];
    for v in g.vertices() {
        let s = g.label(v).as_zero_based()[pos] as usize;
        buckets[s].push(v);
    }
    buckets
}

/// Buckets every vertex by the position where 0-based `symbol` sits.
fn bucket_by_symbol(g: &StarGraph, symbol: u8) -> Vec<Vec<VertexId>> {
    let mut buckets = vec![Vec::with_capacity(g.order() / g.n()); g.n()];
    for v in g.vertices() {
        let pos = g
            .label(v)
            .as_zero_based()
            .iter()
            .position(|&s| s == symbol)
            .expect("every symbol occurs");
        buckets[pos].push(v);
    }
    buckets
}

pub fn partition_by_dimension(g: &StarGraph, position: usize) -> Result<DimensionPartition> {
    check_position(g.n(), position)?;
    let parts = bucket_by_position(g, position - 1)
        .into_iter()
        .map(VertexSet::from_sorted_unchecked)
        .collect();
    Ok(DimensionPartition {
        n: g.n(),
        position,
        parts,
    })
}

pub fn partition_by_symbol(g: &StarGraph, symbol: usize) -> Result<SymbolPartition> {
    check_symbol(g.n(), symbol)?;
    let mut buckets = bucket_by_symbol(g, (symbol - 1) as u8).into_iter();
    let center = VertexSet::from_sorted_unchecked(buckets.next().expect("n >= 1"));
    let parts = buckets.map(VertexSet::from_sorted_unchecked).collect();
    Ok(SymbolPartition {
        n: g.n(),
        symbol,
        center,
        parts,
    })
}

/// Edges joining part `a` and part `b` of a dimension partition.
pub fn cross_edges(g: &StarGraph, dp: &DimensionPartition, a: usize, b: usize) -> Result<EdgeSet> {
    if a == b {
        return Err(Error::InvalidInput(format!(
            "cross edges need two distinct symbols, got {a} twice"
        )));
    }
    edges_between(g, dp.part(a)?, dp.part(b)?)
}

fn edges_between(g: &StarGraph, a: &VertexSet, b: &VertexSet) -> Result<EdgeSet> {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    Ok(small
        .iter()
        .flat_map(|v| {
            g.neighbors(v)
                .filter(|&w| large.contains(w))
                .map(move |w| Edge::new(v, w).expect("distinct parts"))
        })
        .collect())
}

/// Image of `p` under the map that deletes 1-based `position` and renames the
/// remaining symbols order-preservingly onto `1..=n−1` (symbol `symbol` is
/// the one removed).
pub fn relabel_vertex(p: &Permutation, position: usize, symbol: usize) -> Result<Permutation> {
    check_position(p.n(), position)?;
    if p.symbol_at(position) != symbol {
        return Err(Error::Precondition(format!(
            "{p} does not carry symbol {symbol} at position {position}"
        )));
    }
    let removed = (symbol - 1) as u8;
    let image: Vec<u8> = p
        .as_zero_based()
        .iter()
        .enumerate()
        .filter(|&(pos, _)| pos != position - 1)
        .map(|(_, &s)| if s > removed { s - 1 } else { s })
        .collect();
    Permutation::from_zero_based(image)
}

/// The relabeling map of `S^{position:symbol}` onto `S_{n−1}`, in vertex order.
pub fn relabel_to_smaller_star(
    g: &StarGraph,
    part: &VertexSet,
    position: usize,
    symbol: usize,
) -> Result<Vec<(Permutation, Permutation)>> {
    if position == 1 {
        return Err(Error::InvalidInput(
            "the position-1 class is edgeless, not a smaller star graph".into(),
        ));
    }
    g.check_vertex_set(part)?;
    part.iter()
        .map(|v| {
            let p = g.label(v);
            let image = relabel_vertex(&p, position, symbol)?;
            Ok((p, image))
        })
        .collect()
}

/// True when `a` and `b` (same length) are adjacent in the star graph.
pub(crate) fn star_adjacent(a: &[u8], b: &[u8]) -> bool {
    if a.len() != b.len() || a.len() < 2 {
        return false;
    }
    let mut other = None;
    for i in 1..a.len() {
        if a[i] != b[i] {
            if other.is_some() {
                return false;
            }
            other = Some(i);
        }
    }
    match other {
        Some(i) => a[0] == b[i] && a[i] == b[0],
        None => false,
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IsomorphismEvidence {
    pub vertices: usize,
    pub induced_edges: usize,
    /// Edge count of `S_{n−1}`.
    pub target_edges: usize,
    /// Images are distinct permutations of length `n−1` covering `S_{n−1}`.
    pub bijective: bool,
    /// Every induced edge maps onto an edge of `S_{n−1}`.
    pub edges_preserved: bool,
    pub isomorphic: bool,
}

/// Certifies `S^{position:symbol} ≅ S_{n−1}` through the relabeling map.
///
/// A bijection that sends edges to edges between graphs with equal edge
/// counts is an isomorphism, so non-adjacency is preserved as well.
pub fn certify_part(
    g: &StarGraph,
    part: &VertexSet,
    position: usize,
    symbol: usize,
) -> Result<IsomorphismEvidence> {
    let n = g.n();
    let map = relabel_to_smaller_star(g, part, position, symbol)?;
    let target_order = factorial(n - 1).expect("n - 1 < n");
    let mut hit = vec![false; target_order];
    let mut bijective = map.len() == target_order;
    for (_, image) in &map {
        let r = image.rank();
        if hit[r] {
            bijective = false;
        }
        hit[r] = true;
    }
    let mut induced_edges = 0;
    let mut edges_preserved = true;
    for (v, (_, image)) in part.iter().zip(&map) {
        for w in g.neighbors(v).filter(|&w| w > v && part.contains(w)) {
            induced_edges += 1;
            let other = relabel_vertex(&g.label(w), position, symbol)?;
            if !star_adjacent(image.as_zero_based(), other.as_zero_based()) {
                edges_preserved = false;
            }
        }
    }
    let target_edges = target_order * (n - 2) / 2;
    Ok(IsomorphismEvidence {
        vertices: part.len(),
        induced_edges,
        target_edges,
        bijective,
        edges_preserved,
        isomorphic: bijective && edges_preserved && induced_edges == target_edges,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PartEvidence {
    /// Symbol (dimension partition) or position (symbol partition) naming the part.
    pub index: usize,
    pub size: usize,
    pub expected_size: usize,
    pub copy: IsomorphismEvidence,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PairEvidence {
    pub symbol_a: usize,
    pub symbol_b: usize,
    pub edges: usize,
    pub expected: usize,
    pub independent: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FirstStructureReport {
    pub n: usize,
    pub position: usize,
    pub covers_disjointly: bool,
    pub parts: Vec<PartEvidence>,
    pub pairs: Vec<PairEvidence>,
    /// Pairs whose cross edges are not `(n−2)!` independent edges.
    pub failing_pairs: Vec<(usize, usize)>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct MatchingEvidence {
    pub position: usize,
    pub edges: usize,
    pub expected: usize,
    pub is_matching: bool,
    pub saturates_center: bool,
    pub saturates_part: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SecondStructureReport {
    pub n: usize,
    pub symbol: usize,
    pub covers_disjointly: bool,
    pub center_size: usize,
    pub center_induced_edges: usize,
    pub parts: Vec<PartEvidence>,
    pub matchings: Vec<MatchingEvidence>,
    pub part_to_part_edges: usize,
    /// Up to a handful of offending part-to-part edges, as labels.
    pub offending_edges: Vec<(Permutation, Permutation)>,
    pub pass: bool,
}

fn covers_disjointly<'a>(g: &StarGraph, sets: impl Iterator<Item = &'a VertexSet>) -> bool {
    let mut seen = vec![false; g.order()];
    let mut count = 0;
    for set in sets {
        for v in set.iter() {
            if seen[v.0] {
                return false;
            }
            seen[v.0] = true;
            count += 1;
        }
    }
    count == g.order()
}

/// Checks the dimension partition at `position`: `n` copies of `S_{n−1}`,
/// with exactly `(n−2)!` independent edges between every two copies.
pub fn validate_first_structure(g: &StarGraph, position: usize) -> Result<FirstStructureReport> {
    let n = g.n();
    let dp = partition_by_dimension(g, position)?;
    let expected_size = factorial(n - 1).expect("n - 1 < n");
    let expected_cross = factorial(n - 2).expect("n - 2 < n");

    let parts = dp
        .parts
        .par_iter()
        .enumerate()
        .map(|(i, part)| {
            Ok(PartEvidence {
                index: i + 1,
                size: part.len(),
                expected_size,
                copy: certify_part(g, part, position, i + 1)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let pair_list: Vec<(usize, usize)> = (1..=n)
        .flat_map(|a| (a + 1..=n).map(move |b| (a, b)))
        .collect();
    let pairs = pair_list
        .par_iter()
        .map(|&(a, b)| {
            let edges = cross_edges(g, &dp, a, b)?;
            Ok(PairEvidence {
                symbol_a: a,
                symbol_b: b,
                edges: edges.len(),
                expected: expected_cross,
                independent: edges.is_matching(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let failing_pairs: Vec<(usize, usize)> = pairs
        .iter()
        .filter(|p| !(p.independent && p.edges == p.expected))
        .map(|p| (p.symbol_a, p.symbol_b))
        .collect();
    let covers = covers_disjointly(g, dp.parts.iter());
    let pass = covers
        && failing_pairs.is_empty()
        && parts
            .iter()
            .all(|p| p.size == p.expected_size && p.copy.isomorphic);
    Ok(FirstStructureReport {
        n,
        position,
        covers_disjointly: covers,
        parts,
        pairs,
        failing_pairs,
        pass,
    })
}

/// Checks the symbol partition for `symbol`: an edgeless center, `n−1` copies
/// of `S_{n−1}`, a center-saturating matching into each copy, and no edges
/// between distinct copies.
pub fn validate_second_structure(g: &StarGraph, symbol: usize) -> Result<SecondStructureReport> {
    let n = g.n();
    let sp = partition_by_symbol(g, symbol)?;
    let expected_size = factorial(n - 1).expect("n - 1 < n");

    let parts = sp
        .parts
        .par_iter()
        .enumerate()
        .map(|(j, part)| {
            Ok(PartEvidence {
                index: j + 2,
                size: part.len(),
                expected_size,
                copy: certify_part(g, part, j + 2, symbol)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let matchings = sp
        .parts
        .par_iter()
        .enumerate()
        .map(|(j, part)| {
            let edges = edges_between(g, &sp.center, part)?;
            let saturates = |set: &VertexSet| {
                let touched: VertexSet = edges
                    .iter()
                    .flat_map(|e| [e.u(), e.v()])
                    .filter(|&v| set.contains(v))
                    .collect();
                touched.len() == set.len()
            };
            Ok(MatchingEvidence {
                position: j + 2,
                edges: edges.len(),
                expected: expected_size,
                is_matching: edges.is_matching(),
                saturates_center: saturates(&sp.center),
                saturates_part: saturates(part),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    // Label of a vertex → index of the part containing it (0 = center).
    let mut owner = vec![0usize; g.order()];
    for (j, part) in sp.parts.iter().enumerate() {
        for v in part.iter() {
            owner[v.0] = j + 1;
        }
    }
    let mut part_to_part_edges = 0;
    let mut offending_edges = Vec::new();
    let mut center_induced_edges = 0;
    for e in g.edges() {
        let (a, b) = (owner[e.u().0], owner[e.v().0]);
        if a == 0 && b == 0 {
            center_induced_edges += 1;
        } else if a != 0 && b != 0 && a != b {
            part_to_part_edges += 1;
            if offending_edges.len() < 8 {
                offending_edges.push((g.label(e.u()), g.label(e.v())));
            }
        }
    }

    let covers = covers_disjointly(g, std::iter::once(&sp.center).chain(sp.parts.iter()));
    let pass = covers
        && sp.center.len() == expected_size
        && center_induced_edges == 0
        && part_to_part_edges == 0
        && parts
            .iter()
            .all(|p| p.size == p.expected_size && p.copy.isomorphic)
        && matchings.iter().all(|m| {
            m.is_matching && m.saturates_center && m.saturates_part && m.edges == m.expected
        });
    Ok(SecondStructureReport {
        n,
        symbol,
        covers_disjointly: covers,
        center_size: sp.center.len(),
        center_induced_edges,
        parts,
        matchings,
        part_to_part_edges,
        offending_edges,
        pass,
    })
}
