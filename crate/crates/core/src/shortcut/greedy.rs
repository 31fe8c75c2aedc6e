//! Randomized parallel greedy augmentation: cost-effectiveness phases with
//! geometric degree sub-phases and Bernoulli sampling, verified against the
//! measured quality of every accepted sample. Produces a tree cover whose
//! weight is O(log n)·OPT with high probability.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::graph::{is_two_edge_connected, EdgeId, EdgeSet, WeightedGraph};
use crate::primal_dual::{boruvka_mst, PipelineError};
use crate::shortcut::coverage::{cover_counts, covered_flags};
use crate::shortcut::hld::heavy_light;
use crate::shortcut::provider::ShortcutProvider;
use crate::shortcut::sums::heavy_path_partition;
use crate::sim::{log2_ceil, log_star, sqrt_ceil, Runtime, SimError};
use crate::tree::{root_tree, LabeledTree};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GreedyConfig {
    /// geometric step of the cost-effectiveness and degree scales
    pub eps: f64,
    /// a sample is kept when it covers ≥ Δ/divisor new edges per unit weight
    pub good_set_divisor: f64,
    /// repetitions per sub-phase: ⌈c_rep·ln n⌉
    pub c_rep: usize,
    pub rng_seed: u64,
}

impl Default for GreedyConfig {
    fn default() -> Self {
        GreedyConfig { eps: 0.25, good_set_divisor: 100.0, c_rep: 8, rng_seed: 0 }
    }
}

/// One sampling repetition that actually drew candidates.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GreedyTraceEntry {
    pub delta: f64,
    pub d: f64,
    pub sampled: usize,
    pub sampled_weight: u64,
    pub newly_covered: usize,
    pub accepted: bool,
}

/// Covers every tree edge of `tree` with non-tree edges of the runtime's
/// graph. Returns the chosen edge ids and the acceptance trace.
pub fn parallel_greedy_tap(
    rt: &mut Runtime,
    tree: &LabeledTree,
    cfg: &GreedyConfig,
    provider: &dyn ShortcutProvider,
) -> Result<(BTreeSet<EdgeId>, Vec<GreedyTraceEntry>), SimError> {
    let g = rt.graph;
    let n = g.vertex_count();
    assert!(cfg.eps > 0.0 && cfg.eps < 1.0, "eps must lie in (0,1)");

    let quality = provider.build(g, &heavy_path_partition(tree));
    let sc = quality.sc().max(1);
    let d_diam = g.diameter();
    let log_n = log2_ceil(n);

    let nontree: Vec<&crate::graph::Edge> =
        g.edges().iter().filter(|e| !tree.tree_edge_ids().contains(e.id)).collect();
    let endpoints: Vec<(usize, usize)> = nontree.iter().map(|e| (e.u, e.v)).collect();
    let w_max = nontree.iter().map(|e| e.weight).max().unwrap_or(1).max(1);

    let base = 1.0 + cfg.eps;
    // cost-effectiveness ranges over [1/W_max, n]
    let hi = ((n as f64).ln() / base.ln()).ceil() as i64;
    let lo = -(((w_max as f64).ln() / base.ln()).ceil() as i64);
    let j_hi = hi.max(0);
    let reps = ((cfg.c_rep as f64) * (n as f64).ln()).ceil().max(1.0) as usize;

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let mut uncovered: Vec<bool> = (0..n).map(|v| tree.parent(v).is_some()).collect();
    let mut chosen: BTreeSet<EdgeId> = BTreeSet::new();
    let mut trace = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    let mut counts_stale = true;

    'phases: for i in (lo..=hi).rev() {
        let delta = base.powi(i as i32);
        let keep = delta * (1.0 - cfg.eps);
        for j in (0..=j_hi).rev() {
            let d = base.powi(j as i32);
            let p = 1.0 / (2.0 * d);
            for _rep in 0..reps {
                if !uncovered.iter().any(|&b| b) {
                    break 'phases;
                }
                if counts_stale {
                    // exact uncovered-coverage per candidate via light-edge
                    // LCA labels built over the current marks
                    let h = heavy_light(tree, &uncovered)
                        .expect("light lists fit the log bound");
                    counts = cover_counts(tree, &h, &endpoints);
                    rt.charge("greedy-cover-counts", sc * log_n);
                    counts_stale = false;
                }
                let active: Vec<usize> = (0..nontree.len())
                    .filter(|&ix| {
                        !chosen.contains(&nontree[ix].id)
                            && counts[ix] > 0
                            && counts[ix] as f64 / nontree[ix].weight.max(1) as f64 >= keep
                    })
                    .collect();
                if active.is_empty() {
                    // nothing is Δ-effective at this degree scale
                    break;
                }
                let sampled: Vec<usize> =
                    active.iter().copied().filter(|_| rng.gen_bool(p)).collect();
                rt.charge("greedy-sample", d_diam + sc);
                if sampled.is_empty() {
                    continue;
                }
                let sample_pairs: Vec<(usize, usize)> =
                    sampled.iter().map(|&ix| endpoints[ix]).collect();
                let flags = covered_flags(tree, &sample_pairs, rng.gen());
                rt.charge("greedy-covered-flags", sc);
                let newly_covered =
                    (0..n).filter(|&v| uncovered[v] && flags[v]).count();
                let sampled_weight: u64 = sampled.iter().map(|&ix| nontree[ix].weight).sum();
                let accepted = newly_covered as f64
                    >= delta / cfg.good_set_divisor * sampled_weight as f64;
                if accepted {
                    for &ix in &sampled {
                        chosen.insert(nontree[ix].id);
                        let (u, v) = endpoints[ix];
                        let w = tree.lca(u, v);
                        for side in [u, v] {
                            let mut x = side;
                            while x != w {
                                uncovered[x] = false;
                                x = tree.parent(x).unwrap();
                            }
                        }
                    }
                    counts_stale = true;
                }
                trace.push(GreedyTraceEntry {
                    delta,
                    d,
                    sampled: sampled.len(),
                    sampled_weight,
                    newly_covered,
                    accepted,
                });
            }
        }
    }
    if uncovered.iter().any(|&b| b) {
        return Err(SimError::RoundCap(rt.round_cap));
    }
    Ok((chosen, trace))
}

#[derive(Debug)]
pub struct ShortcutRun {
    pub mst: EdgeSet,
    pub augmentation: EdgeSet,
    pub result: EdgeSet,
    pub trace: Vec<GreedyTraceEntry>,
}

/// MST plus the randomized greedy augmentation: a 2-edge-connected spanning
/// subgraph of weight O(log n)·OPT with high probability.
pub fn shortcut_2ecss_log(
    rt: &mut Runtime,
    cfg: &GreedyConfig,
    provider: &dyn ShortcutProvider,
) -> Result<ShortcutRun, PipelineError> {
    let g = rt.graph;
    if !is_two_edge_connected(g) {
        return Err(PipelineError::NotTwoEdgeConnected);
    }
    let n = g.vertex_count();
    let (mst, _phases) = boruvka_mst(g);
    rt.charge("mst-boruvka", g.diameter() + sqrt_ceil(n) * log_star(n));
    let tree = root_tree(g, &mst, 0).expect("MST spans the graph");
    let (ids, trace) = parallel_greedy_tap(rt, &tree, cfg, provider)?;
    let augmentation = EdgeSet::from_ids(g, ids);
    let result = mst.union(g, &augmentation);
    if rt.ledger.total_rounds() > rt.round_cap {
        return Err(PipelineError::Sim(SimError::RoundCap(rt.round_cap)));
    }
    let sub = WeightedGraph::new(
        n,
        &result
            .ids()
            .iter()
            .map(|&id| {
                let e = g.edge(id);
                (e.u, e.v, e.weight)
            })
            .collect::<Vec<_>>(),
    )
    .expect("result edges come from g");
    assert!(is_two_edge_connected(&sub), "augmented subgraph must be 2-edge-connected");
    Ok(ShortcutRun { mst, augmentation, result, trace })
}
