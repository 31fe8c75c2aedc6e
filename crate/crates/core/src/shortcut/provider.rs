//! Shortcut providers: given a partition of the graph into connected parts,
//! report the quality triple (α, β, γ) — congestion, dilation, and extra
//! rounds — that part-wise aggregation would cost. Orchestration charges
//! α+β+γ per aggregation wave.

use std::collections::VecDeque;

use crate::graph::WeightedGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShortcutQuality {
    pub alpha: usize,
    pub beta: usize,
    pub gamma: usize,
}

impl ShortcutQuality {
    pub fn sc(&self) -> usize {
        self.alpha + self.beta + self.gamma
    }
}

pub trait ShortcutProvider {
    fn name(&self) -> &'static str;

    /// `parts[v]` is the part id of vertex v; every part must induce a
    /// connected subgraph of `g`.
    fn build(&self, g: &WeightedGraph, parts: &[usize]) -> ShortcutQuality;
}

/// No shortcut edges at all: each part communicates through its own induced
/// subgraph. α = 1, γ = 0, β = the largest internal part diameter.
pub struct TreeNative;

/// Every part routes through a global BFS tree from vertex 0: β ≤ 2D+2
/// hops up and down, the tree carries up to one wave per part (α = part
/// count), plus O(D) setup rounds.
pub struct BfsStar;

impl ShortcutProvider for TreeNative {
    fn name(&self) -> &'static str {
        "tree-native"
    }

    fn build(&self, g: &WeightedGraph, parts: &[usize]) -> ShortcutQuality {
        let mut beta = 0;
        let part_count = parts.iter().copied().max().map_or(0, |m| m + 1);
        for p in 0..part_count {
            let members: Vec<usize> = (0..g.vertex_count()).filter(|&v| parts[v] == p).collect();
            if members.is_empty() {
                continue;
            }
            for &s in &members {
                let ecc = part_eccentricity(g, parts, s);
                beta = beta.max(ecc);
            }
        }
        ShortcutQuality { alpha: 1, beta, gamma: 0 }
    }
}

impl ShortcutProvider for BfsStar {
    fn name(&self) -> &'static str {
        "bfs-star"
    }

    fn build(&self, g: &WeightedGraph, parts: &[usize]) -> ShortcutQuality {
        let d = g.diameter();
        let part_count = parts.iter().copied().max().map_or(0, |m| m + 1);
        ShortcutQuality { alpha: part_count, beta: 2 * d + 2, gamma: d }
    }
}

pub fn provider_by_name(name: &str) -> Option<Box<dyn ShortcutProvider>> {
    match name {
        "tree-native" => Some(Box::new(TreeNative)),
        "bfs-star" => Some(Box::new(BfsStar)),
        _ => None,
    }
}

/// Eccentricity of `s` within the subgraph induced by its part. Panics when
/// the part is disconnected — providers require connected parts.
fn part_eccentricity(g: &WeightedGraph, parts: &[usize], s: usize) -> usize {
    let mut dist = vec![None; g.vertex_count()];
    dist[s] = Some(0usize);
    let mut q = VecDeque::from([s]);
    let mut ecc = 0;
    while let Some(v) = q.pop_front() {
        let dv = dist[v].unwrap();
        ecc = ecc.max(dv);
        for &eid in g.incident(v) {
            let u = g.edge(eid).other(v);
            if parts[u] == parts[s] && dist[u].is_none() {
                dist[u] = Some(dv + 1);
                q.push_back(u);
            }
        }
    }
    let unreachable =
        (0..g.vertex_count()).any(|v| parts[v] == parts[s] && dist[v].is_none());
    assert!(!unreachable, "provider parts must induce connected subgraphs");
    ecc
}
