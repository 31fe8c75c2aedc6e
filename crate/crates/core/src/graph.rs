//! Undirected weighted multigraphs, generators, serialization, and global
//! structural checks (bridges, 2-edge-connectivity, MST).

use std::collections::HashSet;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
    pub weight: u64,
}

impl Edge {
    /// The endpoint opposite to `x`. Panics if `x` is not an endpoint.
    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            assert_eq!(x, self.v);
            self.u
        }
    }
}

/// Undirected multigraph with dense zero-based edge ids and positive integer
/// weights. Vertices are `0..n`. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<EdgeId>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: malformed input: {detail}")]
    Malformed { line: usize, detail: String },
    #[error("line {line}: vertex index {v} out of range 1..={n}")]
    VertexOutOfRange { line: usize, v: usize, n: usize },
    #[error("line {line}: nonpositive weight")]
    NonpositiveWeight { line: usize },
    #[error("line {line}: self-loop {u}-{u}")]
    SelfLoop { line: usize, u: usize },
    #[error("need at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("invalid generator parameters: {0}")]
    BadParams(String),
    #[error("graph is disconnected")]
    Disconnected,
}

impl WeightedGraph {
    pub fn new(n: usize, raw_edges: &[(VertexId, VertexId, u64)]) -> Result<Self, GraphError> {
        if n < 2 {
            return Err(GraphError::TooFewVertices(n));
        }
        let mut edges = Vec::with_capacity(raw_edges.len());
        let mut adj = vec![Vec::new(); n];
        for (id, &(u, v, w)) in raw_edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange {
                    line: id + 2,
                    v: u.max(v) + 1,
                    n,
                });
            }
            if u == v {
                return Err(GraphError::SelfLoop { line: id + 2, u: u + 1 });
            }
            if w < 1 {
                return Err(GraphError::NonpositiveWeight { line: id + 2 });
            }
            edges.push(Edge { id, u, v, weight: w });
            adj[u].push(id);
            adj[v].push(id);
        }
        Ok(WeightedGraph { n, edges, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.adj[v]
    }

    /// Canonical serialization: header then edges sorted by id, 1-indexed.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.n, self.edges.len());
        for e in &self.edges {
            let _ = writeln!(out, "{} {} {}", e.u + 1, e.v + 1, e.weight);
        }
        out
    }

    /// Hop diameter of the graph (max over BFS eccentricities). Used by the
    /// round ledger when instantiating cost formulas.
    pub fn diameter(&self) -> usize {
        let mut diam = 0;
        for s in 0..self.n {
            let dist = self.bfs_distances(s);
            for d in &dist {
                match d {
                    Some(d) => diam = diam.max(*d),
                    None => return usize::MAX,
                }
            }
        }
        diam
    }

    pub fn bfs_distances(&self, source: VertexId) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let dv = dist[v].unwrap();
            for &eid in &self.adj[v] {
                let u = self.edges[eid].other(v);
                if dist[u].is_none() {
                    dist[u] = Some(dv + 1);
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_distances(0).iter().all(|d| d.is_some())
    }

    /// Edge ids of all bridges, via one lowlink DFS. Parallel edges are never
    /// bridges.
    pub fn bridges(&self) -> Vec<EdgeId> {
        let mut disc = vec![usize::MAX; self.n];
        let mut low = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        let mut timer = 0usize;
        // iterative DFS: (vertex, incoming edge id, next adj index)
        let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = Vec::new();
        for root in 0..self.n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            stack.push((root, None, 0));
            while let Some(&mut (v, via, ref mut idx)) = stack.last_mut() {
                if *idx < self.adj[v].len() {
                    let eid = self.adj[v][*idx];
                    *idx += 1;
                    if Some(eid) == via {
                        continue;
                    }
                    let u = self.edges[eid].other(v);
                    if disc[u] == usize::MAX {
                        disc[u] = timer;
                        low[u] = timer;
                        timer += 1;
                        stack.push((u, Some(eid), 0));
                    } else {
                        low[v] = low[v].min(disc[u]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[v]);
                        if low[v] > disc[p] {
                            out.push(via.unwrap());
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Set of edge ids of a host graph together with their total weight.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeSet {
    members: Vec<EdgeId>,
    total_weight: u64,
}

impl EdgeSet {
    pub fn from_ids(g: &WeightedGraph, ids: impl IntoIterator<Item = EdgeId>) -> Self {
        let mut members: Vec<EdgeId> = ids.into_iter().collect::<HashSet<_>>().into_iter().collect();
        members.sort_unstable();
        let total_weight = members.iter().map(|&id| g.edge(id).weight).sum();
        EdgeSet { members, total_weight }
    }

    pub fn ids(&self) -> &[EdgeId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, id: EdgeId) -> bool {
        self.members.binary_search(&id).is_ok()
    }

    pub fn total_weight(&self) -> u64 {
        self.total_weight
    }

    pub fn union(&self, g: &WeightedGraph, other: &EdgeSet) -> EdgeSet {
        EdgeSet::from_ids(g, self.members.iter().chain(other.members.iter()).copied())
    }
}

/// Parses the `n m` / `u v w` edge-list format (1-indexed vertices).
pub fn parse_graph(text: &str) -> Result<WeightedGraph, GraphError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(GraphError::Malformed {
        line: 1,
        detail: "empty input".into(),
    })?;
    let mut it = header.split_whitespace();
    let n: usize = it
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| GraphError::Malformed { line: 1, detail: "expected \"n m\"".into() })?;
    let m: usize = it
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| GraphError::Malformed { line: 1, detail: "expected \"n m\"".into() })?;
    if n < 2 {
        return Err(GraphError::TooFewVertices(n));
    }
    let mut raw = Vec::with_capacity(m);
    for _ in 0..m {
        let (idx, line) = lines.next().ok_or(GraphError::Malformed {
            line: raw.len() + 2,
            detail: "missing edge line".into(),
        })?;
        let lineno = idx + 1;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(GraphError::Malformed {
                line: lineno,
                detail: format!("expected \"u v w\", got {:?}", line),
            });
        }
        let u: usize = fields[0].parse().map_err(|_| GraphError::Malformed {
            line: lineno,
            detail: "bad vertex".into(),
        })?;
        let v: usize = fields[1].parse().map_err(|_| GraphError::Malformed {
            line: lineno,
            detail: "bad vertex".into(),
        })?;
        let w: i64 = fields[2].parse().map_err(|_| GraphError::Malformed {
            line: lineno,
            detail: "bad weight".into(),
        })?;
        if u == 0 || u > n || v == 0 || v > n {
            return Err(GraphError::VertexOutOfRange { line: lineno, v: u.max(v), n });
        }
        if w < 1 {
            return Err(GraphError::NonpositiveWeight { line: lineno });
        }
        if u == v {
            return Err(GraphError::SelfLoop { line: lineno, u });
        }
        raw.push((u - 1, v - 1, w as u64));
    }
    WeightedGraph::new(n, &raw)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Cycle { n: usize },
    Grid { rows: usize, cols: usize },
    Random2Ec { n: usize, extra_edges: usize, weight_max: u64 },
}

/// Generates a 2-edge-connected graph from a named family, deterministically
/// for a given seed.
pub fn generate(family: Family, seed: u64) -> Result<WeightedGraph, GraphError> {
    match family {
        Family::Cycle { n } => {
            if n < 3 {
                return Err(GraphError::BadParams(format!("cycle needs n >= 3, got {n}")));
            }
            let raw: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, 1)).collect();
            WeightedGraph::new(n, &raw)
        }
        Family::Grid { rows, cols } => {
            if rows < 2 || cols < 2 {
                return Err(GraphError::BadParams(format!(
                    "grid needs rows, cols >= 2, got {rows}x{cols}"
                )));
            }
            let at = |r: usize, c: usize| r * cols + c;
            let mut raw = Vec::new();
            for r in 0..rows {
                for c in 0..cols {
                    if c + 1 < cols {
                        raw.push((at(r, c), at(r, c + 1), 1));
                    }
                    if r + 1 < rows {
                        raw.push((at(r, c), at(r + 1, c), 1));
                    }
                }
            }
            WeightedGraph::new(rows * cols, &raw)
        }
        Family::Random2Ec { n, extra_edges, weight_max } => {
            if n < 3 || weight_max < 1 {
                return Err(GraphError::BadParams(format!(
                    "random2ec needs n >= 3 and weight_max >= 1, got n={n} weight_max={weight_max}"
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            // Hamiltonian cycle on a seeded permutation keeps the base 2ec.
            let mut perm: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                let j = rng.gen_range(0..=i);
                perm.swap(i, j);
            }
            let mut raw = Vec::new();
            let mut seen: HashSet<(usize, usize)> = HashSet::new();
            for i in 0..n {
                let (a, b) = (perm[i], perm[(i + 1) % n]);
                raw.push((a, b, rng.gen_range(1..=weight_max)));
                seen.insert((a.min(b), a.max(b)));
            }
            let mut added = 0;
            let mut attempts = 0;
            while added < extra_edges && attempts < 100 * (extra_edges + 1) {
                attempts += 1;
                let a = rng.gen_range(0..n);
                let b = rng.gen_range(0..n);
                if a == b || !seen.insert((a.min(b), a.max(b))) {
                    continue;
                }
                raw.push((a, b, rng.gen_range(1..=weight_max)));
                added += 1;
            }
            WeightedGraph::new(n, &raw)
        }
    }
}

/// Connected and bridge-free.
pub fn is_two_edge_connected(g: &WeightedGraph) -> bool {
    g.is_connected() && g.bridges().is_empty()
}

/// MST under the total order (weight, edge_id) ascending; unique for that
/// order, so the result is deterministic.
pub fn mst_kruskal(g: &WeightedGraph) -> Result<EdgeSet, GraphError> {
    let mut order: Vec<EdgeId> = (0..g.edge_count()).collect();
    order.sort_by_key(|&id| (g.edge(id).weight, id));
    let mut dsu = Dsu::new(g.vertex_count());
    let mut picked = Vec::with_capacity(g.vertex_count() - 1);
    for id in order {
        let e = g.edge(id);
        if dsu.union(e.u, e.v) {
            picked.push(id);
        }
    }
    if picked.len() + 1 != g.vertex_count() {
        return Err(GraphError::Disconnected);
    }
    Ok(EdgeSet::from_ids(g, picked))
}

pub(crate) struct Dsu {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect(), rank: vec![0; n] }
    }

    pub fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> WeightedGraph {
        parse_graph("4 4\n1 2 1\n2 3 1\n3 4 1\n4 1 1").unwrap()
    }

    #[test]
    fn parse_c4() {
        let g = c4();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.edge(2), &Edge { id: 2, u: 2, v: 3, weight: 1 });
    }

    #[test]
    fn parse_rejects_nonpositive_weight() {
        assert_eq!(
            parse_graph("2 1\n1 2 0"),
            Err(GraphError::NonpositiveWeight { line: 2 })
        );
    }

    #[test]
    fn parse_rejects_out_of_range_vertex() {
        assert!(matches!(
            parse_graph("3 1\n1 4 1"),
            Err(GraphError::VertexOutOfRange { line: 2, v: 4, n: 3 })
        ));
    }

    #[test]
    fn parse_rejects_tiny_graph() {
        assert_eq!(parse_graph("1 0"), Err(GraphError::TooFewVertices(1)));
    }

    #[test]
    fn serialize_round_trips_random_graphs() {
        for seed in 0..100 {
            let g = generate(Family::Random2Ec { n: 10, extra_edges: 5, weight_max: 9 }, seed).unwrap();
            let text = g.serialize();
            let g2 = parse_graph(&text).unwrap();
            assert_eq!(g2.serialize(), text);
        }
    }

    #[test]
    fn cycle_is_two_edge_connected() {
        assert!(is_two_edge_connected(&c4()));
    }

    #[test]
    fn path_is_not_two_edge_connected() {
        let g = parse_graph("3 2\n1 2 1\n2 3 1").unwrap();
        assert!(!is_two_edge_connected(&g));
        assert_eq!(g.bridges().len(), 2);
    }

    #[test]
    fn grid_2x2_is_a_4_cycle() {
        let g = generate(Family::Grid { rows: 2, cols: 2 }, 0).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 4);
        assert!(is_two_edge_connected(&g));
    }

    #[test]
    fn random2ec_is_always_two_edge_connected() {
        for seed in 0..100 {
            let g = generate(Family::Random2Ec { n: 10, extra_edges: 5, weight_max: 5 }, seed).unwrap();
            assert!(is_two_edge_connected(&g), "seed {seed}");
        }
    }

    #[test]
    fn removing_a_cycle_edge_can_create_a_bridge() {
        // C12 plus one chord: dropping a cycle edge outside the chorded part
        // leaves a bridge.
        let mut raw: Vec<(usize, usize, u64)> = (0..12).map(|i| (i, (i + 1) % 12, 1)).collect();
        raw.push((0, 3, 1));
        let g = WeightedGraph::new(12, &raw).unwrap();
        assert!(is_two_edge_connected(&g));
        let without: Vec<_> = raw.iter().copied().take(5).chain(raw.iter().copied().skip(6)).collect();
        let g2 = WeightedGraph::new(12, &without).unwrap();
        assert!(!is_two_edge_connected(&g2));
    }

    /// Delete-each-edge connectivity oracle for the bridge checker.
    fn bridges_slow(g: &WeightedGraph) -> Vec<EdgeId> {
        let mut out = Vec::new();
        for skip in 0..g.edge_count() {
            let raw: Vec<_> = g
                .edges()
                .iter()
                .filter(|e| e.id != skip)
                .map(|e| (e.u, e.v, e.weight))
                .collect();
            let g2 = WeightedGraph::new(g.vertex_count(), &raw).unwrap();
            // components before and after
            let before = g.bfs_distances(g.edge(skip).u).iter().filter(|d| d.is_some()).count();
            let after = g2.bfs_distances(g.edge(skip).u).iter().filter(|d| d.is_some()).count();
            if after < before {
                out.push(skip);
            }
        }
        out
    }

    #[test]
    fn bridge_checker_matches_delete_one_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..40 {
            let n = rng.gen_range(3..10);
            let m = rng.gen_range(n - 1..(2 * n).min(40));
            // random connected-ish graph: random tree plus random extras
            let mut raw: Vec<(usize, usize, u64)> = (1..n).map(|v| (v, rng.gen_range(0..v), 1)).collect();
            for _ in 0..(m - (n - 1)) {
                let a = rng.gen_range(0..n);
                let b = rng.gen_range(0..n);
                if a != b {
                    raw.push((a, b, 1));
                }
            }
            let g = WeightedGraph::new(n, &raw).unwrap();
            assert_eq!(g.bridges(), bridges_slow(&g));
        }
    }

    #[test]
    fn kruskal_c4_tie_break() {
        let set = mst_kruskal(&c4()).unwrap();
        assert_eq!(set.ids(), &[0, 1, 2]);
    }

    #[test]
    fn kruskal_unique_mst() {
        let g = parse_graph("4 4\n1 2 5\n2 3 1\n3 4 1\n4 1 1").unwrap();
        let set = mst_kruskal(&g).unwrap();
        assert_eq!(set.ids(), &[1, 2, 3]);
        assert_eq!(set.total_weight(), 3);
    }

    /// Independent matroid-greedy MST weight: repeatedly add the cheapest
    /// edge whose addition keeps the picked set acyclic, scanning fresh each
    /// time (no shared sort with Kruskal).
    fn mst_weight_greedy(g: &WeightedGraph) -> u64 {
        let mut picked: Vec<EdgeId> = Vec::new();
        let mut total = 0u64;
        while picked.len() + 1 < g.vertex_count() {
            let mut best: Option<EdgeId> = None;
            for e in g.edges() {
                if picked.contains(&e.id) {
                    continue;
                }
                let mut dsu = Dsu::new(g.vertex_count());
                for &p in &picked {
                    dsu.union(g.edge(p).u, g.edge(p).v);
                }
                if dsu.find(e.u) == dsu.find(e.v) {
                    continue;
                }
                if best.is_none_or(|b| (e.weight, e.id) < (g.edge(b).weight, b)) {
                    best = Some(e.id);
                }
            }
            let b = best.expect("connected");
            total += g.edge(b).weight;
            picked.push(b);
        }
        total
    }

    #[test]
    fn kruskal_matches_matroid_greedy_on_random_graphs() {
        for seed in 0..50 {
            let g = generate(Family::Random2Ec { n: 9, extra_edges: 6, weight_max: 7 }, seed).unwrap();
            let mst = mst_kruskal(&g).unwrap();
            assert_eq!(mst.total_weight(), mst_weight_greedy(&g), "seed {seed}");
            assert_eq!(mst.len(), g.vertex_count() - 1);
        }
    }
}
