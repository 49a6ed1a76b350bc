//! Small exact graph solvers backing the antichain machinery: bipartite
//! matching, integral max-flow, and min-cost flow with unit augmentations.
//! All capacities and costs are machine integers; the combinatorial layers
//! above convert to exact big integers only where counts can grow.

use std::collections::VecDeque;

/// A maximum bipartite matching together with both directions of the
/// assignment.
#[derive(Debug)]
pub struct Matching {
    pub size: usize,
    pub l_to_r: Vec<Option<usize>>,
    pub r_to_l: Vec<Option<usize>>,
}

/// Hopcroft–Karp maximum matching. `adj[u]` lists the right-side neighbors
/// of left vertex `u`; the right side has `n_right` vertices.
pub fn hopcroft_karp(adj: &[Vec<usize>], n_right: usize) -> Matching {
    let n_left = adj.len();
    let mut l_to_r: Vec<Option<usize>> = vec![None; n_left];
    let mut r_to_l: Vec<Option<usize>> = vec![None; n_right];
    let mut dist = vec![usize::MAX; n_left];
    let mut size = 0usize;

    loop {
        // Layer the left side by BFS from the free vertices.
        let mut queue: VecDeque<usize> = VecDeque::new();
        for (u, m) in l_to_r.iter().enumerate() {
            if m.is_none() {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut free_right_reachable = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                match r_to_l[v] {
                    None => free_right_reachable = true,
                    Some(w) if dist[w] == usize::MAX => {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                    Some(_) => {}
                }
            }
        }
        if !free_right_reachable {
            return Matching { size, l_to_r, r_to_l };
        }
        for u in 0..n_left {
            if l_to_r[u].is_none() && augment(u, adj, &mut dist, &mut l_to_r, &mut r_to_l) {
                size += 1;
            }
        }
    }

    fn augment(
        u: usize,
        adj: &[Vec<usize>],
        dist: &mut [usize],
        l_to_r: &mut [Option<usize>],
        r_to_l: &mut [Option<usize>],
    ) -> bool {
        for &v in &adj[u] {
            let reaches = match r_to_l[v] {
                None => true,
                Some(w) => dist[w] == dist[u] + 1 && augment(w, adj, dist, l_to_r, r_to_l),
            };
            if reaches {
                l_to_r[u] = Some(v);
                r_to_l[v] = Some(u);
                return true;
            }
        }
        dist[u] = usize::MAX;
        false
    }
}

#[derive(Clone)]
struct FlowEdge {
    to: usize,
    rev: usize,
    cap: i64,
}

/// Dinic max-flow over integer capacities.
pub struct Dinic {
    graph: Vec<Vec<FlowEdge>>,
}

impl Dinic {
    pub fn new(nodes: usize) -> Dinic {
        Dinic { graph: vec![Vec::new(); nodes] }
    }

    /// Add a directed edge with the given capacity (and a zero-capacity
    /// residual twin).
    pub fn add_edge(&mut self, from: usize, to: usize, cap: i64) {
        assert_ne!(from, to, "self-loops are not supported");
        let rev_in_to = self.graph[to].len();
        let rev_in_from = self.graph[from].len();
        self.graph[from].push(FlowEdge { to, rev: rev_in_to, cap });
        self.graph[to].push(FlowEdge { to: from, rev: rev_in_from, cap: 0 });
    }

    /// Total max flow from `s` to `t`.
    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        loop {
            let level = self.levels(s);
            if level[t].is_none() {
                return total;
            }
            let mut iter = vec![0usize; self.graph.len()];
            loop {
                let pushed = self.push(s, t, i64::MAX, &level, &mut iter);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
    }

    fn levels(&self, s: usize) -> Vec<Option<usize>> {
        let mut level = vec![None; self.graph.len()];
        level[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let next = level[u].expect("queued nodes are leveled") + 1;
            for e in &self.graph[u] {
                if e.cap > 0 && level[e.to].is_none() {
                    level[e.to] = Some(next);
                    queue.push_back(e.to);
                }
            }
        }
        level
    }

    fn push(&mut self, u: usize, t: usize, limit: i64, level: &[Option<usize>], iter: &mut [usize]) -> i64 {
        if u == t {
            return limit;
        }
        while iter[u] < self.graph[u].len() {
            let FlowEdge { to, rev, cap } = self.graph[u][iter[u]];
            let downhill = match (level[u], level[to]) {
                (Some(a), Some(b)) => b == a + 1,
                _ => false,
            };
            if cap > 0 && downhill {
                let pushed = self.push(to, t, limit.min(cap), level, iter);
                if pushed > 0 {
                    self.graph[u][iter[u]].cap -= pushed;
                    self.graph[to][rev].cap += pushed;
                    return pushed;
                }
            }
            iter[u] += 1;
        }
        0
    }
}

#[derive(Clone)]
struct CostEdge {
    to: usize,
    rev: usize,
    cap: i64,
    cost: i64,
}

/// Min-cost flow specialized to sending one unit at a time along a cheapest
/// residual path. Uses a label-correcting search, since the constructions
/// here carry negative edge costs (but no negative cycles).
pub struct MinCostFlow {
    graph: Vec<Vec<CostEdge>>,
}

impl MinCostFlow {
    pub fn new(nodes: usize) -> MinCostFlow {
        MinCostFlow { graph: vec![Vec::new(); nodes] }
    }

    pub fn add_edge(&mut self, from: usize, to: usize, cap: i64, cost: i64) {
        assert_ne!(from, to, "self-loops are not supported");
        let rev_in_to = self.graph[to].len();
        let rev_in_from = self.graph[from].len();
        self.graph[from].push(CostEdge { to, rev: rev_in_to, cap, cost });
        self.graph[to].push(CostEdge { to: from, rev: rev_in_from, cap: 0, cost: -cost });
    }

    /// Send one unit along a cheapest augmenting path, returning its cost;
    /// `None` when `t` is unreachable in the residual graph.
    pub fn send_unit(&mut self, s: usize, t: usize) -> Option<i64> {
        let n = self.graph.len();
        let mut dist = vec![i64::MAX; n];
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut in_queue = vec![false; n];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        in_queue[s] = true;
        while let Some(u) = queue.pop_front() {
            in_queue[u] = false;
            let du = dist[u];
            for (ei, e) in self.graph[u].iter().enumerate() {
                if e.cap > 0 && du + e.cost < dist[e.to] {
                    dist[e.to] = du + e.cost;
                    parent[e.to] = Some((u, ei));
                    if !in_queue[e.to] {
                        in_queue[e.to] = true;
                        queue.push_back(e.to);
                    }
                }
            }
        }
        if dist[t] == i64::MAX {
            return None;
        }
        let mut v = t;
        while v != s {
            let (u, ei) = parent[v].expect("path back to the source");
            let rev = self.graph[u][ei].rev;
            self.graph[u][ei].cap -= 1;
            self.graph[v][rev].cap += 1;
            v = u;
        }
        Some(dist[t])
    }
}
