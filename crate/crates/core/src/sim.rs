//! Round-synchronous execution substrate with a two-tier fidelity model.
//!
//! Tier 0 runs real per-vertex handlers exchanging budget-checked messages in
//! lock-step rounds. Tier 1 lets the orchestrator compute a primitive's
//! result directly and charge the instance-evaluated round formula to the
//! ledger.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeSet, VertexId, WeightedGraph};
use crate::tree::{root_tree, LabeledTree};

pub const DEFAULT_ROUND_CAP: usize = 1_000_000;

/// ⌈log2 n⌉ with the convention ⌈log2 1⌉ = 1 (a nonzero bandwidth floor).
pub fn log2_ceil(n: usize) -> usize {
    let mut bits = 0;
    while (1usize << bits) < n {
        bits += 1;
    }
    bits.max(1)
}

/// ⌈√n⌉.
pub fn sqrt_ceil(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize;
    while r * r < n {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= n {
        r -= 1;
    }
    r
}

/// Iterated logarithm: applications of ⌈log2⌉ needed to reach 1 (≥ 1).
pub fn log_star(n: usize) -> usize {
    let mut x = n;
    let mut i = 0;
    while x > 1 {
        x = log2_ceil(x);
        i += 1;
    }
    i.max(1)
}

/// D + ⌈√n⌉ — the instantiation of O(D+√n).
pub fn cost_d_sqrt(n: usize, diameter: usize) -> usize {
    diameter + sqrt_ceil(n)
}

/// (D + ⌈√n⌉)·⌈log2 n⌉ — the instantiation of O((D+√n) log n).
pub fn cost_d_sqrt_log(n: usize, diameter: usize) -> usize {
    cost_d_sqrt(n, diameter) * log2_ceil(n)
}

/// (D + ⌈√n⌉)·⌈log2 n⌉² — the instantiation of O((D+√n) log² n).
pub fn cost_d_sqrt_log2(n: usize, diameter: usize) -> usize {
    cost_d_sqrt(n, diameter) * log2_ceil(n) * log2_ceil(n)
}

/// A message: up to `bit_len` significant bits, stored in words. The budget
/// check uses the declared bit length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Msg {
    pub words: Vec<u64>,
    pub bit_len: usize,
}

impl Msg {
    pub fn new(words: Vec<u64>, bit_len: usize) -> Self {
        assert!(bit_len <= 64 * words.len().max(1));
        Msg { words, bit_len }
    }

    /// One word message using `bits` bits.
    pub fn word(w: u64, bits: usize) -> Self {
        Msg { words: vec![w], bit_len: bits }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimError {
    #[error("round {round}: vertex {vertex} sent a {bits}-bit message, budget {budget}")]
    BudgetExceeded { round: usize, vertex: VertexId, bits: usize, budget: usize },
    #[error("round {round}: vertex {vertex} sent two messages to neighbor {to}")]
    DuplicateMessage { round: usize, vertex: VertexId, to: VertexId },
    #[error("round {round}: vertex {vertex} addressed non-neighbor {to}")]
    NotNeighbor { round: usize, vertex: VertexId, to: VertexId },
    #[error("round cap {0} reached without quiescence")]
    RoundCap(usize),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct LedgerEntry {
    pub primitive: String,
    pub tier: u8,
    pub rounds: usize,
    pub messages: usize,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct RoundLedger {
    pub entries: Vec<LedgerEntry>,
}

impl RoundLedger {
    pub fn total_rounds(&self) -> usize {
        self.entries.iter().map(|e| e.rounds).sum()
    }

    pub fn tier0_rounds(&self) -> usize {
        self.entries.iter().filter(|e| e.tier == 0).map(|e| e.rounds).sum()
    }

    pub fn total_messages(&self) -> usize {
        self.entries.iter().map(|e| e.messages).sum()
    }
}

/// Per-vertex round handler. `inbox` holds (sender, message) pairs sorted by
/// sender id; messages for neighbors go into `out`.
pub trait RoundHandler {
    fn on_round(
        &mut self,
        v: VertexId,
        round: usize,
        inbox: &[(VertexId, Msg)],
        out: &mut Vec<(VertexId, Msg)>,
    );
}

pub struct Runtime<'g> {
    pub graph: &'g WeightedGraph,
    pub message_budget_bits: usize,
    pub round_cap: usize,
    pub ledger: RoundLedger,
}

impl<'g> Runtime<'g> {
    pub fn new(graph: &'g WeightedGraph) -> Self {
        Runtime {
            graph,
            message_budget_bits: 32 * log2_ceil(graph.vertex_count()),
            round_cap: DEFAULT_ROUND_CAP,
            ledger: RoundLedger::default(),
        }
    }

    /// Appends a tier-1 charge.
    pub fn charge(&mut self, primitive: &str, rounds: usize) {
        self.ledger.entries.push(LedgerEntry {
            primitive: primitive.to_string(),
            tier: 1,
            rounds,
            messages: 0,
        });
    }

    /// Runs a tier-0 program to quiescence. Round 0 is a setup call with
    /// empty inboxes (not charged); each subsequent round delivers the
    /// previous round's messages. Terminates when no messages are in flight.
    pub fn run_tier0(
        &mut self,
        primitive: &str,
        handler: &mut dyn RoundHandler,
    ) -> Result<usize, SimError> {
        let n = self.graph.vertex_count();
        let neighbor_check: Vec<std::collections::HashSet<VertexId>> = (0..n)
            .map(|v| self.graph.incident(v).iter().map(|&e| self.graph.edge(e).other(v)).collect())
            .collect();
        let mut pending: Vec<Vec<(VertexId, Msg)>> = vec![Vec::new(); n];
        let mut rounds = 0usize;
        let mut messages = 0usize;
        let mut round = 0usize;
        loop {
            let mut next: Vec<Vec<(VertexId, Msg)>> = vec![Vec::new(); n];
            let mut sent_any = false;
            for v in 0..n {
                let mut inbox = std::mem::take(&mut pending[v]);
                inbox.sort_by_key(|&(from, _)| from);
                let mut out = Vec::new();
                handler.on_round(v, round, &inbox, &mut out);
                let mut targets = std::collections::HashSet::new();
                for (to, msg) in out {
                    if !neighbor_check[v].contains(&to) {
                        return Err(SimError::NotNeighbor { round, vertex: v, to });
                    }
                    if !targets.insert(to) {
                        return Err(SimError::DuplicateMessage { round, vertex: v, to });
                    }
                    if msg.bit_len > self.message_budget_bits {
                        return Err(SimError::BudgetExceeded {
                            round,
                            vertex: v,
                            bits: msg.bit_len,
                            budget: self.message_budget_bits,
                        });
                    }
                    messages += 1;
                    sent_any = true;
                    next[to].push((v, msg));
                }
            }
            pending = next;
            if round > 0 {
                rounds += 1;
            }
            if !sent_any {
                break;
            }
            round += 1;
            if round > self.round_cap {
                return Err(SimError::RoundCap(self.round_cap));
            }
        }
        self.ledger.entries.push(LedgerEntry {
            primitive: primitive.to_string(),
            tier: 0,
            rounds,
            messages,
        });
        Ok(rounds)
    }
}

/// Builds the BFS tree of `root` at tier 0. Parent = first neighbor to
/// deliver the wave, ties broken by min vertex id.
pub fn bfs_tree(rt: &mut Runtime, root: VertexId) -> Result<LabeledTree, SimError> {
    let g = rt.graph;
    let n = g.vertex_count();
    // BfsProgram needs neighbor lists; close over them here instead.
    struct P<'a> {
        g: &'a WeightedGraph,
        depth: Vec<Option<usize>>,
        parent: Vec<Option<VertexId>>,
        root: VertexId,
        bits: usize,
    }
    impl RoundHandler for P<'_> {
        fn on_round(
            &mut self,
            v: VertexId,
            round: usize,
            inbox: &[(VertexId, Msg)],
            out: &mut Vec<(VertexId, Msg)>,
        ) {
            let reached_now = if round == 0 {
                if v == self.root {
                    self.depth[v] = Some(0);
                    true
                } else {
                    false
                }
            } else if self.depth[v].is_none() && !inbox.is_empty() {
                let (from, msg) = &inbox[0];
                self.parent[v] = Some(*from);
                self.depth[v] = Some(msg.words[0] as usize + 1);
                true
            } else {
                false
            };
            if reached_now {
                let d = self.depth[v].unwrap() as u64;
                let mut seen = std::collections::HashSet::new();
                for &eid in self.g.incident(v) {
                    let to = self.g.edge(eid).other(v);
                    if Some(to) != self.parent[v] && seen.insert(to) {
                        out.push((to, Msg::word(d, self.bits)));
                    }
                }
            }
        }
    }
    let mut prog = P {
        g,
        depth: vec![None; n],
        parent: vec![None; n],
        root,
        bits: log2_ceil(n),
    };
    rt.run_tier0("bfs-tree", &mut prog)?;
    if prog.depth.iter().any(|d| d.is_none()) {
        return Err(SimError::RoundCap(rt.round_cap));
    }
    // Pick the min-id host edge between each child and its BFS parent.
    let mut picked = Vec::with_capacity(n - 1);
    for v in 0..n {
        if let Some(p) = prog.parent[v] {
            let eid = g
                .incident(v)
                .iter()
                .copied()
                .filter(|&e| g.edge(e).other(v) == p)
                .min()
                .unwrap();
            picked.push(eid);
        }
    }
    let es = EdgeSet::from_ids(g, picked);
    Ok(root_tree(g, &es, root).expect("BFS parents form a spanning tree"))
}

pub fn bfs_depths(rt: &mut Runtime, root: VertexId) -> Result<Vec<usize>, SimError> {
    let t = bfs_tree(rt, root)?;
    Ok((0..rt.graph.vertex_count()).map(|v| t.depth(v)).collect())
}

/// Pipelined convergecast of `k` per-vertex value vectors up the BFS tree
/// followed by a pipelined broadcast down: every vertex ends holding the
/// combined result of every item. Tier 0; O(D + k) rounds.
pub fn broadcast_and_aggregate(
    rt: &mut Runtime,
    tree: &LabeledTree,
    values: &[Vec<u64>],
    combine: fn(u64, u64) -> u64,
) -> Result<Vec<u64>, SimError> {
    let g = rt.graph;
    let n = g.vertex_count();
    let k = if values.is_empty() { 0 } else { values[0].len() };
    assert!(values.iter().all(|v| v.len() == k));
    if k == 0 {
        return Ok(Vec::new());
    }
    // item index + significant value bits per message
    fn msg_for(k: usize, item: usize, val: u64) -> Msg {
        let val_bits = (64 - val.leading_zeros() as usize).max(1);
        Msg::new(vec![item as u64, val], log2_ceil(k.max(2)) + val_bits)
    }
    struct P<'a> {
        tree: &'a LabeledTree,
        k: usize,
        /// per item: running combine of own value and received child values
        acc: Vec<Vec<u64>>,
        /// per item: number of children still owed
        waiting: Vec<Vec<usize>>,
        next_up: Vec<usize>,
        result: Vec<Vec<Option<u64>>>,
        next_down: Vec<usize>,
        combine: fn(u64, u64) -> u64,
    }
    impl RoundHandler for P<'_> {
        fn on_round(
            &mut self,
            v: VertexId,
            _round: usize,
            inbox: &[(VertexId, Msg)],
            out: &mut Vec<(VertexId, Msg)>,
        ) {
            for (from, msg) in inbox {
                let item = msg.words[0] as usize;
                let val = msg.words[1];
                if Some(*from) == self.tree.parent(v) {
                    // broadcast leg coming down
                    self.result[v][item] = Some(val);
                } else {
                    // convergecast contribution from a child
                    self.acc[v][item] = (self.combine)(self.acc[v][item], val);
                    self.waiting[v][item] -= 1;
                }
            }
            // upward leg: forward the lowest complete unsent item
            if self.tree.parent(v).is_some() {
                let j = self.next_up[v];
                if j < self.k && self.waiting[v][j] == 0 {
                    out.push((self.tree.parent(v).unwrap(), msg_for(self.k, j, self.acc[v][j])));
                    self.next_up[v] = j + 1;
                }
            } else {
                // root: once an item is complete, its result is final
                for j in 0..self.k {
                    if self.waiting[v][j] == 0 && self.result[v][j].is_none() {
                        self.result[v][j] = Some(self.acc[v][j]);
                    }
                }
            }
            // downward leg: forward the lowest known unsent result to all
            // children (one item per round per edge)
            let j = self.next_down[v];
            if j < self.k {
                if let Some(val) = self.result[v][j] {
                    for &c in self.tree.children(v) {
                        out.push((c, msg_for(self.k, j, val)));
                    }
                    self.next_down[v] = j + 1;
                }
            }
        }
    }
    let mut prog = P {
        tree,
        k,
        acc: values.to_vec(),
        waiting: (0..n).map(|v| vec![tree.children(v).len(); k]).collect(),
        next_up: vec![0; n],
        result: vec![vec![None; k]; n],
        next_down: vec![0; n],
        combine,
    };
    rt.run_tier0("broadcast-aggregate", &mut prog)?;
    let root_result: Vec<u64> = prog.result[tree.root].iter().map(|r| r.unwrap()).collect();
    for v in 0..n {
        for j in 0..k {
            assert_eq!(prog.result[v][j], Some(root_result[j]), "vertex {v} item {j}");
        }
    }
    Ok(root_result)
}
