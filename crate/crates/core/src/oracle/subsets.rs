//! Subset enumeration by increasing size.
//!
//! Sets are built as sorted prefixes and each prefix one short of the target
//! size is completed through a filter that never drops a disconnecting
//! choice:
//!
//! * vertices: the last vertex must be an articulation point of what the
//!   prefix leaves behind, unless that is already disconnected;
//! * edges: every edge gets a random label in the cut space (XOR of cycle
//!   labels), and a disconnecting edge set always has linearly dependent
//!   labels, so the last edge's label must lie in the span of the prefix's.
//!
//! Survivors of the filter are checked in full.
//!
//! With `anchored` set only sets containing vertex 0 (edge 0) are tried.
//! That is sound because `S_n` is vertex- and edge-transitive, so some
//! minimum cut passes through any given vertex or edge, but it is opt-in.

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{Outcome, Search};

/// The graph as a flat adjacency table, `d` entries per vertex.
#[derive(Clone)]
struct Dense<'a> {
    order: usize,
    d: usize,
    adj: &'a [u32],
}

impl Dense<'_> {
    fn row(&self, v: usize) -> &[u32] {
        &self.adj[v * self.d..(v + 1) * self.d]
    }
}

/// Per-task search state over a universe of vertices or edges.
trait Searcher: Clone + Send {
    fn push(&mut self, x: usize);
    fn pop(&mut self, x: usize);
    /// With a sorted prefix pushed, every element after its last that might
    /// complete it to a cut, ascending.
    fn candidates(&mut self, prefix: &[usize]) -> Vec<usize>;
    /// Whether the pushed set is a k-cut.
    fn is_cut(&mut self) -> bool;
}

pub(crate) fn vertex(search: &Search) -> Outcome {
    let g = search.g;
    let dense = Dense {
        order: g.order(),
        d: g.degree(),
        adj: g.flat_adjacency().expect("oracle graphs are materialized"),
    };
    let searcher = VertexSearcher::new(dense, search.k);
    // at least two vertices must survive to be disconnected
    let largest = g.order().saturating_sub(2);
    let mut outcome = drive(search, searcher, g.order(), largest);
    let through = if search.budget.use_symmetry { " containing vertex 0" } else { "" };
    outcome.searched = format!("all vertex sets{through} of size 1..={}", outcome.searched);
    outcome
}

pub(crate) fn edge(search: &Search) -> Outcome {
    let g = search.g;
    let dense = Dense {
        order: g.order(),
        d: g.degree(),
        adj: g.flat_adjacency().expect("oracle graphs are materialized"),
    };
    let searcher = EdgeSearcher::new(dense, search.k, search.budget.seed);
    let mut outcome = drive(search, searcher, g.edge_count(), g.edge_count());
    let through = if search.budget.use_symmetry { " containing edge 0" } else { "" };
    outcome.searched = format!("all edge sets{through} of size 1..={}", outcome.searched);
    outcome
}

fn binomial(n: usize, r: usize) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Upper bound on the prefixes examined at level `size`.
fn prefixes_at(universe: usize, size: usize, anchored: bool) -> u64 {
    match (anchored, size) {
        (true, 1) => 1,
        (true, _) => binomial(universe - 1, size - 2),
        (false, _) => binomial(universe, size - 1),
    }
}

struct TaskResult {
    nodes: u64,
    found: Option<Vec<usize>>,
}

/// Runs levels `1..=limit` in order and stops at the first level with a cut.
/// `outcome.searched` is set to the largest size fully examined.
fn drive<S: Searcher + Sync>(search: &Search, proto: S, universe: usize, largest: usize) -> Outcome {
    let limit = match search.bound {
        Some(b) => (b - 1).min(largest),
        None => largest,
    };
    let max_nodes = search.budget.max_nodes;
    let anchored = search.budget.use_symmetry;
    let mut outcome = Outcome {
        best: None,
        complete: false,
        nodes: 0,
        searched: "0".into(),
    };
    // With a known bound, refuse up front rather than stop partway.
    if search.bound.is_some() {
        let planned = (1..=limit).fold(0u64, |acc, s| acc.saturating_add(prefixes_at(universe, s, anchored)));
        if planned > max_nodes {
            return outcome;
        }
    }
    let abort = AtomicBool::new(false);
    for size in 1..=limit {
        if outcome.nodes.saturating_add(prefixes_at(universe, size, anchored)) > max_nodes {
            return outcome;
        }
        let results = run_level(search, &proto, universe, size, &abort);
        outcome.nodes += results.iter().map(|r| r.nodes).sum::<u64>();
        if abort.load(Ordering::Relaxed) {
            return outcome;
        }
        if let Some(found) = results.into_iter().find_map(|r| r.found) {
            outcome.best = Some(found);
            outcome.complete = true;
            outcome.searched = size.to_string();
            return outcome;
        }
        outcome.searched = size.to_string();
    }
    outcome.complete = true;
    outcome
}

fn run_level<S: Searcher + Sync>(
    search: &Search,
    proto: &S,
    universe: usize,
    size: usize,
    abort: &AtomicBool,
) -> Vec<TaskResult> {
    let anchored = search.budget.use_symmetry;
    if anchored && size == 1 {
        let mut s = proto.clone();
        s.push(0);
        let ok = s.is_cut();
        return vec![TaskResult {
            nodes: 1,
            found: ok.then(|| vec![0]),
        }];
    }
    // Prefixes have `size−1` elements. Tasks fix the first free element, so
    // results can be folded in lexicographic order whatever the scheduling.
    let seeds: Vec<Vec<usize>> = match (anchored, size) {
        (true, 2) => vec![vec![0]],
        (true, _) => (1..=universe - (size - 1)).map(|a| vec![0, a]).collect(),
        (false, 1) => vec![Vec::new()],
        (false, _) => (0..=universe - size).map(|a| vec![a]).collect(),
    };
    seeds
        .into_par_iter()
        .map(|seed| {
            let mut task = Task {
                search,
                searcher: proto.clone(),
                universe,
                prefix_len: size - 1,
                nodes: 0,
                ticks: 0,
                abort,
            };
            for &x in &seed {
                task.searcher.push(x);
            }
            let mut prefix = seed;
            let found = match task.dfs(&mut prefix) {
                ControlFlow::Break(found) => found,
                ControlFlow::Continue(()) => None,
            };
            TaskResult {
                nodes: task.nodes,
                found,
            }
        })
        .collect()
}

struct Task<'a, S> {
    search: &'a Search<'a>,
    searcher: S,
    universe: usize,
    prefix_len: usize,
    nodes: u64,
    ticks: u64,
    abort: &'a AtomicBool,
}

impl<S: Searcher> Task<'_, S> {
    /// Breaks with `Some(cut)` on success and `None` on abort.
    fn dfs(&mut self, prefix: &mut Vec<usize>) -> ControlFlow<Option<Vec<usize>>> {
        if prefix.len() == self.prefix_len {
            self.nodes += 1;
            self.ticks += 1;
            if self.ticks.is_multiple_of(1024) && (self.abort.load(Ordering::Relaxed) || self.search.out_of_time()) {
                self.abort.store(true, Ordering::Relaxed);
                return ControlFlow::Break(None);
            }
            for c in self.searcher.candidates(prefix) {
                self.nodes += 1;
                self.searcher.push(c);
                let ok = self.searcher.is_cut();
                self.searcher.pop(c);
                if ok {
                    let mut cut = prefix.clone();
                    cut.push(c);
                    return ControlFlow::Break(Some(cut));
                }
            }
            return ControlFlow::Continue(());
        }
        let start = prefix.last().map_or(0, |&l| l + 1);
        // leave room for the rest of the prefix and the final element
        let end = self.universe - (self.prefix_len - prefix.len()) - 1;
        for x in start..=end {
            self.searcher.push(x);
            prefix.push(x);
            let flow = self.dfs(prefix);
            prefix.pop();
            self.searcher.pop(x);
            flow?;
        }
        ControlFlow::Continue(())
    }
}

#[derive(Clone)]
struct VertexSearcher<'a> {
    g: Dense<'a>,
    k: usize,
    removed: Vec<bool>,
    disc: Vec<u32>,
    low: Vec<u32>,
    parent: Vec<u32>,
    cut_vertex: Vec<bool>,
    stack: Vec<(u32, u32)>,
    queue: Vec<u32>,
}

impl<'a> VertexSearcher<'a> {
    fn new(g: Dense<'a>, k: usize) -> Self {
        let order = g.order;
        VertexSearcher {
            g,
            k,
            removed: vec![false; order],
            disc: vec![0; order],
            low: vec![0; order],
            parent: vec![u32::MAX; order],
            cut_vertex: vec![false; order],
            stack: Vec::new(),
            queue: Vec::new(),
        }
    }

    /// Marks articulation points of the surviving graph in `cut_vertex` and
    /// returns whether it is connected.
    fn articulation_points(&mut self) -> bool {
        let Some(root) = self.removed.iter().position(|&r| !r) else {
            return true;
        };
        self.disc.fill(0);
        self.cut_vertex.fill(false);
        let mut timer = 1u32;
        let mut root_children = 0;
        let mut visited = 1;
        self.disc[root] = timer;
        self.low[root] = timer;
        self.parent[root] = u32::MAX;
        self.stack.clear();
        self.stack.push((root as u32, 0));
        while let Some(top) = self.stack.last_mut() {
            let v = top.0 as usize;
            if (top.1 as usize) < self.g.d {
                let w = self.g.adj[v * self.g.d + top.1 as usize] as usize;
                top.1 += 1;
                if self.removed[w] {
                    continue;
                }
                if self.disc[w] == 0 {
                    timer += 1;
                    visited += 1;
                    self.disc[w] = timer;
                    self.low[w] = timer;
                    self.parent[w] = v as u32;
                    if v == root {
                        root_children += 1;
                    }
                    self.stack.push((w as u32, 0));
                } else if w as u32 != self.parent[v] {
                    self.low[v] = self.low[v].min(self.disc[w]);
                }
            } else {
                self.stack.pop();
                if let Some(&(p, _)) = self.stack.last() {
                    let p = p as usize;
                    self.low[p] = self.low[p].min(self.low[v]);
                    if p != root && self.low[v] >= self.disc[p] {
                        self.cut_vertex[p] = true;
                    }
                }
            }
        }
        self.cut_vertex[root] = root_children >= 2;
        let survivors = self.removed.iter().filter(|&&r| !r).count();
        visited == survivors
    }
}

impl Searcher for VertexSearcher<'_> {
    fn push(&mut self, x: usize) {
        self.removed[x] = true;
    }

    fn pop(&mut self, x: usize) {
        self.removed[x] = false;
    }

    fn candidates(&mut self, prefix: &[usize]) -> Vec<usize> {
        let after = prefix.last().map_or(0, |&l| l + 1);
        let connected = self.articulation_points();
        (after..self.g.order)
            .filter(|&v| !connected || self.cut_vertex[v])
            .collect()
    }

    fn is_cut(&mut self) -> bool {
        let g = &self.g;
        let mut survivors = 0;
        let mut first = None;
        for v in (0..g.order).filter(|&v| !self.removed[v]) {
            survivors += 1;
            first.get_or_insert(v);
            if self.k > 0 && g.row(v).iter().filter(|&&w| !self.removed[w as usize]).count() < self.k {
                return false;
            }
        }
        let Some(first) = first else {
            return false;
        };
        // BFS, marking reached vertices as removed and restoring afterwards
        self.queue.clear();
        self.queue.push(first as u32);
        self.removed[first] = true;
        let mut i = 0;
        while i < self.queue.len() {
            let v = self.queue[i] as usize;
            i += 1;
            for &w in g.row(v) {
                if !self.removed[w as usize] {
                    self.removed[w as usize] = true;
                    self.queue.push(w);
                }
            }
        }
        for &v in &self.queue {
            self.removed[v as usize] = false;
        }
        self.queue.len() < survivors
    }
}

#[derive(Clone)]
struct EdgeSearcher<'a> {
    g: Dense<'a>,
    k: usize,
    /// Endpoints of each edge, in `(min, max)` order.
    ends: Vec<(u32, u32)>,
    /// Edge index of each adjacency slot, parallel to `g.adj`.
    slot_edge: Vec<u32>,
    label: Vec<u64>,
    by_label: HashMap<u64, Vec<u32>>,
    blocked: Vec<bool>,
    /// Echelon basis indexed by leading bit.
    basis: [u64; 64],
    occupied: u64,
    /// Leading bit added by each push, or `None` if the label was dependent.
    pushed: Vec<Option<u32>>,
    dependent: usize,
    lost: Vec<u32>,
    seen: Vec<bool>,
    queue: Vec<u32>,
}

impl<'a> EdgeSearcher<'a> {
    fn new(g: Dense<'a>, k: usize, seed: u64) -> Self {
        let order = g.order;
        let d = g.d;
        // Edges sorted by (min, max), matching `StarGraph::edges`.
        let mut ends = Vec::new();
        for u in 0..order {
            let mut higher: Vec<u32> = g.row(u).iter().copied().filter(|&w| w as usize > u).collect();
            higher.sort_unstable();
            ends.extend(higher.into_iter().map(|w| (u as u32, w)));
        }
        let index: HashMap<(u32, u32), u32> =
            ends.iter().enumerate().map(|(i, &e)| (e, i as u32)).collect();
        let slot_edge: Vec<u32> = (0..order * d)
            .map(|slot| {
                let (u, w) = ((slot / d) as u32, g.adj[slot]);
                index[&(u.min(w), u.max(w))]
            })
            .collect();
        let label = cut_space_labels(&g, &ends, &slot_edge, seed);
        let mut by_label: HashMap<u64, Vec<u32>> = HashMap::new();
        for (e, &l) in label.iter().enumerate() {
            by_label.entry(l).or_default().push(e as u32);
        }
        let m = ends.len();
        EdgeSearcher {
            g,
            k,
            ends,
            slot_edge,
            label,
            by_label,
            blocked: vec![false; m],
            basis: [0; 64],
            occupied: 0,
            pushed: Vec::new(),
            dependent: 0,
            lost: vec![0; order],
            seen: vec![false; order],
            queue: Vec::new(),
        }
    }

    fn reduce(&self, mut x: u64) -> u64 {
        loop {
            let hit = x & self.occupied;
            if hit == 0 {
                return x;
            }
            x ^= self.basis[63 - hit.leading_zeros() as usize];
        }
    }
}

/// Labels in the cut space: random labels on non-tree edges of a BFS tree,
/// and on each tree edge the XOR of the labels of non-tree edges whose
/// fundamental cycle uses it. Every cycle then has labels XOR-ing to zero,
/// so the edges crossing any vertex bipartition XOR to zero too.
fn cut_space_labels(g: &Dense, ends: &[(u32, u32)], slot_edge: &[u32], seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parent_edge = vec![u32::MAX; g.order];
    let mut seen = vec![false; g.order];
    let mut order = vec![0usize];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        for (j, &w) in g.row(v).iter().enumerate() {
            let w = w as usize;
            if !seen[w] {
                seen[w] = true;
                parent_edge[w] = slot_edge[v * g.d + j];
                order.push(w);
            }
        }
    }
    let mut is_tree = vec![false; ends.len()];
    for &e in parent_edge.iter().filter(|&&e| e != u32::MAX) {
        is_tree[e as usize] = true;
    }
    let mut label = vec![0u64; ends.len()];
    let mut below = vec![0u64; g.order];
    for (e, &(u, v)) in ends.iter().enumerate() {
        if !is_tree[e] {
            label[e] = rng.gen();
            below[u as usize] ^= label[e];
            below[v as usize] ^= label[e];
        }
    }
    for &v in order.iter().rev() {
        let e = parent_edge[v];
        if e == u32::MAX {
            continue;
        }
        label[e as usize] = below[v];
        let (a, b) = ends[e as usize];
        let p = if a as usize == v { b } else { a };
        below[p as usize] ^= below[v];
    }
    label
}

impl Searcher for EdgeSearcher<'_> {
    fn push(&mut self, x: usize) {
        self.blocked[x] = true;
        let r = self.reduce(self.label[x]);
        if r == 0 {
            self.dependent += 1;
            self.pushed.push(None);
        } else {
            let bit = 63 - r.leading_zeros();
            self.basis[bit as usize] = r;
            self.occupied |= 1 << bit;
            self.pushed.push(Some(bit));
        }
    }

    fn pop(&mut self, x: usize) {
        self.blocked[x] = false;
        match self.pushed.pop().expect("balanced push and pop") {
            None => self.dependent -= 1,
            Some(bit) => {
                self.basis[bit as usize] = 0;
                self.occupied &= !(1 << bit);
            }
        }
    }

    fn candidates(&mut self, prefix: &[usize]) -> Vec<usize> {
        let after = prefix.last().map_or(0, |&l| l + 1);
        if self.dependent > 0 {
            return (after..self.ends.len()).collect();
        }
        let basis: Vec<u64> = (0..64)
            .filter(|&b| self.occupied >> b & 1 == 1)
            .map(|b| self.basis[b])
            .collect();
        let mut out = Vec::new();
        // walk the span in Gray-code order
        let mut value = 0u64;
        for step in 0u64..1 << basis.len() {
            if step > 0 {
                value ^= basis[step.trailing_zeros() as usize];
            }
            if let Some(edges) = self.by_label.get(&value) {
                out.extend(edges.iter().map(|&e| e as usize).filter(|&e| e >= after));
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    fn is_cut(&mut self) -> bool {
        let g = &self.g;
        let mut touched = Vec::new();
        for (e, _) in self.blocked.iter().enumerate().filter(|(_, &b)| b) {
            let (u, v) = self.ends[e];
            for w in [u, v] {
                if self.lost[w as usize] == 0 {
                    touched.push(w);
                }
                self.lost[w as usize] += 1;
            }
        }
        let degree_ok = touched
            .iter()
            .all(|&w| g.d - self.lost[w as usize] as usize >= self.k);
        for &w in &touched {
            self.lost[w as usize] = 0;
        }
        if !degree_ok {
            return false;
        }
        self.queue.clear();
        self.queue.push(0);
        self.seen.fill(false);
        self.seen[0] = true;
        let mut i = 0;
        while i < self.queue.len() {
            let v = self.queue[i] as usize;
            i += 1;
            for (j, &w) in g.row(v).iter().enumerate() {
                if !self.seen[w as usize] && !self.blocked[self.slot_edge[v * g.d + j] as usize] {
                    self.seen[w as usize] = true;
                    self.queue.push(w);
                }
            }
        }
        self.queue.len() < g.order
    }
}
