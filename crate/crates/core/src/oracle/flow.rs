//! Classical vertex and edge connectivity by unit-capacity maximum flow.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{StarGraph, VertexId};

struct Arc {
    to: usize,
    cap: u32,
}

/// Residual network; arcs are stored in pairs so `a ^ 1` is the reverse of `a`.
struct Network {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network {
            arcs: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    fn add(&mut self, from: usize, to: usize, cap: u32, back_cap: u32) {
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc { to: from, cap: back_cap });
    }

    /// Augments along shortest paths until `limit` units flow or `t` is unreachable.
    fn max_flow(&mut self, s: usize, t: usize, limit: u32) -> u32 {
        let mut flow = 0;
        let mut via = vec![usize::MAX; self.out.len()];
        let mut queue = VecDeque::new();
        while flow < limit {
            via.iter_mut().for_each(|a| *a = usize::MAX);
            queue.clear();
            queue.push_back(s);
            let mut reached = false;
            'bfs: while let Some(u) = queue.pop_front() {
                for &a in &self.out[u] {
                    let Arc { to, cap } = self.arcs[a];
                    if cap > 0 && to != s && via[to] == usize::MAX {
                        via[to] = a;
                        if to == t {
                            reached = true;
                            break 'bfs;
                        }
                        queue.push_back(to);
                    }
                }
            }
            if !reached {
                break;
            }
            let mut v = t;
            while v != s {
                let a = via[v];
                self.arcs[a].cap -= 1;
                self.arcs[a ^ 1].cap += 1;
                v = self.arcs[a ^ 1].to;
            }
            flow += 1;
        }
        flow
    }
}

/// Number of edge-disjoint `s`–`t` paths, capped at `limit`.
pub(crate) fn local_edge_connectivity(g: &StarGraph, s: VertexId, t: VertexId, limit: u32) -> u32 {
    let mut net = Network::new(g.order());
    for e in g.edges() {
        net.add(e.u().0, e.v().0, 1, 1);
    }
    net.max_flow(s.0, t.0, limit)
}

/// Number of internally vertex-disjoint paths between non-adjacent `s` and `t`,
/// capped at `limit`. Every vertex `v` becomes an arc `2v → 2v+1` of capacity
/// one; edges become uncapacitated arcs between the split halves.
pub(crate) fn local_vertex_connectivity(g: &StarGraph, s: VertexId, t: VertexId, limit: u32) -> u32 {
    const UNBOUNDED: u32 = u32::MAX / 4;
    let mut net = Network::new(2 * g.order());
    for v in g.vertices() {
        let cap = if v == s || v == t { UNBOUNDED } else { 1 };
        net.add(2 * v.0, 2 * v.0 + 1, cap, 0);
    }
    for e in g.edges() {
        let (a, b) = (e.u().0, e.v().0);
        net.add(2 * a + 1, 2 * b, UNBOUNDED, 0);
        net.add(2 * b + 1, 2 * a, UNBOUNDED, 0);
    }
    net.max_flow(2 * s.0 + 1, 2 * t.0, limit)
}

/// Vertex connectivity `κ` and edge connectivity `λ` of `S_n`.
///
/// The source is fixed at the identity, which is sound because the graph is
/// vertex-transitive. `κ` ranges the sink over non-neighbors of the source
/// (a complete graph gets `|V|−1`); `λ` over non-neighbors plus the first
/// neighbor, all neighbors being equivalent under automorphisms fixing the
/// source.
pub fn classical_connectivity(g: &StarGraph) -> Result<(usize, usize)> {
    if g.n() < 2 {
        return Err(Error::InvalidInput(
            "connectivity is undefined for a single vertex".into(),
        ));
    }
    let s = VertexId(0);
    let neighbors: Vec<VertexId> = g.neighbors(s).collect();
    let non_neighbors: Vec<VertexId> = g
        .vertices()
        .filter(|&t| t != s && !neighbors.contains(&t))
        .collect();

    let mut kappa = (g.order() - 1) as u32;
    for &t in &non_neighbors {
        kappa = kappa.min(local_vertex_connectivity(g, s, t, kappa));
    }

    let mut lambda = g.degree() as u32;
    for &t in non_neighbors.iter().chain(neighbors.first()) {
        lambda = lambda.min(local_edge_connectivity(g, s, t, lambda));
    }
    Ok((kappa as usize, lambda as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::AdjacencyMode;

    fn graph(n: usize) -> StarGraph {
        StarGraph::new(n, AdjacencyMode::Auto).unwrap()
    }

    #[test]
    fn small_stars() {
        assert_eq!(classical_connectivity(&graph(2)).unwrap(), (1, 1));
        assert_eq!(classical_connectivity(&graph(3)).unwrap(), (2, 2));
        assert_eq!(classical_connectivity(&graph(4)).unwrap(), (3, 3));
        assert_eq!(classical_connectivity(&graph(5)).unwrap(), (4, 4));
        assert!(classical_connectivity(&graph(1)).is_err());
    }

    #[test]
    fn local_values_on_hexagon() {
        let g = graph(3);
        // 123 (rank 0) and 132 (rank 1) sit opposite each other
        assert_eq!(local_vertex_connectivity(&g, VertexId(0), VertexId(1), 10), 2);
        assert_eq!(local_edge_connectivity(&g, VertexId(0), VertexId(1), 10), 2);
        assert_eq!(local_edge_connectivity(&g, VertexId(0), VertexId(1), 1), 1);
    }
}
