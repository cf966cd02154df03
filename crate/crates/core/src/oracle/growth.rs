//! Component growth: every connected vertex set `X` is tried as the small
//! side of a cut.
//!
//! For a vertex cut, `X` is kept apart by `N(X)`; whatever of the rest fails
//! to lie in its k-core must be removed as well, so the candidate is `N(X)`
//! plus the rest outside its k-core. For an edge cut the candidate is `∂X`.
//! A minimum k-cut always leaves a component of at most half the vertices,
//! and taking `X` to be that component yields a candidate no larger than the
//! cut, so enumerating every connected set up to half the graph is exact.

use std::ops::{ControlFlow, Range};

use crate::graph::{Edge, VertexId};
use crate::subgraphs::{for_each_connected_set, peel_to_core};

use super::{Outcome, Search};

pub(crate) fn vertex(search: &Search) -> Outcome {
    let g = search.g;
    let k = search.k;
    let mut in_x = vec![false; g.order()];
    let mut alive = vec![false; g.order()];
    let mut best: Option<Vec<usize>> = None;
    walk(search, |members| {
        for &v in members {
            in_x[v.0] = true;
        }
        let ok = members
            .iter()
            .all(|&v| g.neighbors(v).filter(|w| in_x[w.0]).count() >= k);
        if ok {
            // alive = everything outside X ∪ N(X)
            alive.iter_mut().zip(&in_x).for_each(|(a, &x)| *a = !x);
            let mut frontier = 0;
            for &v in members {
                for w in g.neighbors(v) {
                    if alive[w.0] {
                        alive[w.0] = false;
                        frontier += 1;
                    }
                }
            }
            let beaten = best.as_ref().is_some_and(|b| b.len() <= frontier);
            if !beaten {
                peel_to_core(g, &mut alive, k);
                if alive.iter().any(|&a| a) {
                    let cut: Vec<usize> = (0..g.order())
                        .filter(|&v| !alive[v] && !in_x[v])
                        .collect();
                    if best.as_ref().is_none_or(|b| cut.len() < b.len()) {
                        best = Some(cut);
                    }
                }
            }
        }
        for &v in members {
            in_x[v.0] = false;
        }
    })
    .finish(best, "vertex")
}

pub(crate) fn edge(search: &Search) -> Outcome {
    let g = search.g;
    let k = search.k;
    let d = g.degree();
    let edges: Vec<Edge> = g.edges().collect();
    let mut in_x = vec![false; g.order()];
    let mut touch = vec![0usize; g.order()];
    let mut best: Option<Vec<usize>> = None;
    walk(search, |members| {
        if members.len() == g.order() {
            return;
        }
        for &v in members {
            in_x[v.0] = true;
        }
        let mut inner_ok = true;
        let mut boundary = 0;
        for &v in members {
            let inside = g.neighbors(v).filter(|w| in_x[w.0]).count();
            inner_ok &= inside >= k;
            boundary += d - inside;
        }
        let beaten = best.as_ref().is_some_and(|b| b.len() <= boundary);
        if inner_ok && !beaten {
            let mut outer: Vec<VertexId> = Vec::new();
            for &v in members {
                for w in g.neighbors(v).filter(|w| !in_x[w.0]) {
                    if touch[w.0] == 0 {
                        outer.push(w);
                    }
                    touch[w.0] += 1;
                }
            }
            if outer.iter().all(|w| d - touch[w.0] >= k) {
                let mut cut: Vec<usize> = members
                    .iter()
                    .flat_map(|&v| {
                        g.neighbors(v)
                            .filter(|w| !in_x[w.0])
                            .map(move |w| Edge::new(v, w).expect("neighbors differ"))
                    })
                    .map(|e| edges.binary_search(&e).expect("edge of the graph"))
                    .collect();
                cut.sort_unstable();
                best = Some(cut);
            }
            for w in outer {
                touch[w.0] = 0;
            }
        }
        for &v in members {
            in_x[v.0] = false;
        }
    })
    .finish(best, "edge")
}

struct Walk {
    sizes: Range<usize>,
    completed: bool,
    exhaustive: bool,
    nodes: u64,
}

impl Walk {
    fn finish(self, best: Option<Vec<usize>>, what: &str) -> Outcome {
        Outcome {
            best,
            complete: self.completed && self.exhaustive,
            nodes: self.nodes,
            searched: format!(
                "{what} cuts around every connected vertex set of size {}..={}",
                self.sizes.start,
                self.sizes.end - 1
            ),
        }
    }
}

/// Runs `visit` on connected sets up to the cap, within the budget.
fn walk<F: FnMut(&[VertexId])>(search: &Search, mut visit: F) -> Walk {
    let half = search.g.order() / 2;
    let cap = search.budget.growth_cap.unwrap_or(half).max(1);
    let max_nodes = search.budget.max_nodes;
    let mut nodes = 0u64;
    let completed = for_each_connected_set(search.g, cap, |members| {
        if nodes == max_nodes || (nodes.is_multiple_of(4096) && search.out_of_time()) {
            return ControlFlow::Break(());
        }
        nodes += 1;
        visit(members);
        ControlFlow::Continue(())
    });
    Walk {
        sizes: 1..cap + 1,
        completed,
        exhaustive: cap >= half,
        nodes,
    }
}
