//! Connected induced subgraphs: exhaustive enumeration and seeded sampling.

use std::ops::ControlFlow;

use rand::Rng;

use crate::graph::{StarGraph, VertexId, VertexSet};

/// Visits every connected vertex set of size `1..=cap` exactly once.
///
/// Sets are grown from their smallest member (the anchor) and only extended
/// by vertices larger than the anchor that are not yet adjacent to the set,
/// so no set is produced twice. The slice handed to `visit` is in insertion
/// order, not sorted. Returns `false` if `visit` stopped the walk early.
pub fn for_each_connected_set<F>(g: &StarGraph, cap: usize, mut visit: F) -> bool
where
    F: FnMut(&[VertexId]) -> ControlFlow<()>,
{
    if cap == 0 {
        return true;
    }
    let mut walker = Walker {
        g,
        cap,
        members: Vec::with_capacity(cap),
        touch: vec![0u32; g.order()],
    };
    for anchor in g.vertices() {
        walker.push(anchor);
        let ext: Vec<VertexId> = g.neighbors(anchor).filter(|&u| u > anchor).collect();
        let flow = walker.extend(anchor, ext, &mut visit);
        walker.pop();
        if flow.is_break() {
            return false;
        }
    }
    true
}

struct Walker<'g> {
    g: &'g StarGraph,
    cap: usize,
    members: Vec<VertexId>,
    // number of members equal or adjacent to each vertex
    touch: Vec<u32>,
}

impl Walker<'_> {
    fn push(&mut self, v: VertexId) {
        self.members.push(v);
        self.touch[v.0] += 1;
        for w in self.g.neighbors(v) {
            self.touch[w.0] += 1;
        }
    }

    fn pop(&mut self) {
        let v = self.members.pop().expect("non-empty");
        self.touch[v.0] -= 1;
        for w in self.g.neighbors(v) {
            self.touch[w.0] -= 1;
        }
    }

    fn extend<F>(&mut self, anchor: VertexId, mut ext: Vec<VertexId>, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[VertexId]) -> ControlFlow<()>,
    {
        visit(&self.members)?;
        if self.members.len() == self.cap {
            return ControlFlow::Continue(());
        }
        while let Some(w) = ext.pop() {
            let mut next = ext.clone();
            next.extend(
                self.g
                    .neighbors(w)
                    .filter(|&u| u > anchor && self.touch[u.0] == 0),
            );
            self.push(w);
            let flow = self.extend(anchor, next, visit);
            self.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Grows a connected set from a uniform start vertex by repeatedly adding a
/// uniformly chosen boundary vertex, until `target` vertices are reached or
/// the component is exhausted.
pub fn grow_connected<R: Rng + ?Sized>(g: &StarGraph, rng: &mut R, target: usize) -> VertexSet {
    let order = g.order();
    let mut state = vec![0u8; order]; // 0 = untouched, 1 = boundary, 2 = member
    let mut members = Vec::with_capacity(target);
    let mut boundary = Vec::new();
    let start = VertexId(rng.gen_range(0..order));
    state[start.0] = 1;
    boundary.push(start);
    while members.len() < target && !boundary.is_empty() {
        let v = boundary.swap_remove(rng.gen_range(0..boundary.len()));
        state[v.0] = 2;
        members.push(v);
        for w in g.neighbors(v) {
            if state[w.0] == 0 {
                state[w.0] = 1;
                boundary.push(w);
            }
        }
    }
    members.into_iter().collect()
}

/// The largest subset of `alive` inducing minimum degree at least `k`,
/// found by repeatedly discarding vertices of smaller degree. Updates
/// `alive` in place.
pub fn peel_to_core(g: &StarGraph, alive: &mut [bool], k: usize) {
    let mut degree = vec![0usize; g.order()];
    let mut stack = Vec::new();
    for v in g.vertices().filter(|v| alive[v.0]) {
        degree[v.0] = g.neighbors(v).filter(|w| alive[w.0]).count();
        if degree[v.0] < k {
            stack.push(v);
        }
    }
    while let Some(v) = stack.pop() {
        if !alive[v.0] {
            continue;
        }
        alive[v.0] = false;
        for w in g.neighbors(v) {
            if alive[w.0] {
                degree[w.0] -= 1;
                if degree[w.0] + 1 == k {
                    stack.push(w);
                }
            }
        }
    }
}

/// Components of the subgraph induced by `alive`, each sorted, ordered by smallest member.
pub fn induced_components(g: &StarGraph, alive: &[bool]) -> Vec<Vec<VertexId>> {
    let mut seen = vec![false; g.order()];
    let mut out = Vec::new();
    for s in g.vertices() {
        if !alive[s.0] || seen[s.0] {
            continue;
        }
        seen[s.0] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            for w in g.neighbors(v) {
                if alive[w.0] && !seen[w.0] {
                    seen[w.0] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// One connected induced subgraph with minimum degree at least `k`.
///
/// A grown set (of uniformly drawn target size) is peeled to its `k`-core and
/// the largest core component is returned; `None` when the core is empty.
/// Plain rejection of grown sets almost never yields `k >= 2`, because small
/// grown sets of a girth-6 graph are trees.
pub fn sample_min_degree_subgraph<R: Rng + ?Sized>(
    g: &StarGraph,
    rng: &mut R,
    k: usize,
) -> Option<VertexSet> {
    let target = rng.gen_range(1..=g.order());
    let grown = grow_connected(g, rng, target);
    let mut alive = grown.mask(g.order());
    peel_to_core(g, &mut alive, k);
    induced_components(g, &alive)
        .into_iter()
        .max_by(|a, b| a.len().cmp(&b.len()).then(b[0].cmp(&a[0])))
        .map(VertexSet::from_sorted_unchecked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{AdjacencyMode, EdgeSet};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn graph(n: usize) -> StarGraph {
        StarGraph::new(n, AdjacencyMode::Auto).unwrap()
    }

    fn is_connected(g: &StarGraph, x: &VertexSet) -> bool {
        let outside: VertexSet = g.vertices().filter(|&v| !x.contains(v)).collect();
        x.len() == g.order()
            || g.components(&outside, &EdgeSet::new()).unwrap().len() == 1
    }

    // Brute force over all subsets of a small graph.
    fn brute_force_count(g: &StarGraph, cap: usize) -> usize {
        let order = g.order();
        (1u64..1 << order)
            .filter(|m| (m.count_ones() as usize) <= cap)
            .filter(|m| {
                let x: VertexSet = (0..order).filter(|i| m & (1 << i) != 0).map(VertexId).collect();
                is_connected(g, &x)
            })
            .count()
    }

    #[test]
    fn enumeration_matches_brute_force_on_hexagon() {
        let g = graph(3);
        for cap in 0..=6 {
            let mut seen = std::collections::HashSet::new();
            let mut count = 0;
            for_each_connected_set(&g, cap, |members| {
                let x: VertexSet = members.iter().copied().collect();
                assert!(is_connected(&g, &x));
                assert!(seen.insert(x));
                count += 1;
                ControlFlow::Continue(())
            });
            assert_eq!(count, brute_force_count(&g, cap), "cap {cap}");
        }
        // a hexagon has 6 sets of each size 1..=5 and one of size 6
        let mut total = 0;
        for_each_connected_set(&g, 6, |_| {
            total += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(total, 31);
    }

    #[test]
    fn enumeration_can_stop_early() {
        let g = graph(4);
        let mut count = 0;
        let completed = for_each_connected_set(&g, 24, |_| {
            count += 1;
            if count == 10 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        assert!(!completed);
        assert_eq!(count, 10);
    }

    #[test]
    fn grown_sets_are_connected() {
        let g = graph(5);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for target in [1, 2, 10, 60, 120, 500] {
            let x = grow_connected(&g, &mut rng, target);
            assert_eq!(x.len(), target.min(120));
            assert!(is_connected(&g, &x));
        }
    }

    #[test]
    fn samples_have_min_degree() {
        let g = graph(5);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in 1..=3 {
            let mut got = 0;
            for _ in 0..200 {
                if let Some(x) = sample_min_degree_subgraph(&g, &mut rng, k) {
                    assert!(g.induced_min_degree(&x) >= k);
                    assert!(is_connected(&g, &x));
                    got += 1;
                }
            }
            assert!(got > 50, "k={k} only {got} samples");
        }
    }

    #[test]
    fn peeling_keeps_the_hexagon_core() {
        let g = graph(4);
        let mut alive = vec![true; 24];
        peel_to_core(&g, &mut alive, 3);
        assert!(alive.iter().all(|&a| a));
        let mut alive: Vec<bool> = (0..24).map(|v| g.label(VertexId(v)).symbol_at(4) == 1).collect();
        alive[0] = true; // 1234 hangs off the hexagon by one edge
        peel_to_core(&g, &mut alive, 2);
        assert_eq!(alive.iter().filter(|&&a| a).count(), 6);
    }
}
