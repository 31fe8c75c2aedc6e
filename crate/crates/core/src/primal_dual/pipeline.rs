//! End-to-end 2-ECSS pipeline: MST, virtual augmentation instance, forward
//! and reverse-delete phases, projection back to the host graph. All heavy
//! primitives charge their round formulas to the runtime ledger; the
//! coordination BFS runs at tier 0.

use std::collections::BTreeMap;

use num_rational::BigRational;
use thiserror::Error;

use crate::decomp::{build_segments, compute_layers, Layering, SegmentDecomposition};
use crate::graph::{is_two_edge_connected, Dsu, EdgeId, EdgeSet, WeightedGraph};
use crate::primal_dual::forward::{forward_phase, rat, DualState, ForwardError};
use crate::primal_dual::reverse::{
    reverse_delete_base, reverse_delete_improved, ReverseError, ReverseState,
};
use crate::sim::{cost_d_sqrt, cost_d_sqrt_log, log_star, sqrt_ceil, Runtime, SimError};
use crate::tree::root_tree;
use crate::virt::{build_virtual_graph, project_to_original, ProjectError, VirtualTapInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// both petals per anchor; (8+ε) on the host graph
    Base4,
    /// higher petals plus cleaning; (4+ε) TAP, (5+ε) 2-ECSS
    Improved2,
}

impl Variant {
    pub fn cover_factor(self) -> u64 {
        match self {
            Variant::Base4 => 4,
            Variant::Improved2 => 2,
        }
    }
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("input graph is not 2-edge-connected")]
    NotTwoEdgeConnected,
    #[error(transparent)]
    Forward(#[from] ForwardError),
    #[error(transparent)]
    Reverse(#[from] ReverseError),
    #[error(transparent)]
    Project(#[from] ProjectError),
    #[error(transparent)]
    Sim(#[from] SimError),
}

/// Full pipeline output, kept around so audits can replay every phase.
#[derive(Debug)]
pub struct PipelineRun<'g> {
    pub inst: VirtualTapInstance<'g>,
    pub lay: Layering,
    pub seg: SegmentDecomposition,
    pub dual: DualState,
    pub reverse: ReverseState,
    pub mst: EdgeSet,
    pub augmentation: EdgeSet,
    pub result: EdgeSet,
    pub variant: Variant,
}

/// Borůvka's algorithm under the (weight, edge id) total order; each phase
/// merges every component along its minimum outgoing edge. Produces the
/// same tree as Kruskal under the same order.
pub fn boruvka_mst(g: &WeightedGraph) -> (EdgeSet, usize) {
    let n = g.vertex_count();
    let mut dsu = Dsu::new(n);
    let mut chosen: Vec<EdgeId> = Vec::new();
    let mut components = n;
    let mut phases = 0usize;
    while components > 1 {
        phases += 1;
        let mut best: BTreeMap<usize, (u64, EdgeId)> = BTreeMap::new();
        for e in g.edges() {
            let (ru, rv) = (dsu.find(e.u), dsu.find(e.v));
            if ru == rv {
                continue;
            }
            for r in [ru, rv] {
                let key = (e.weight, e.id);
                let entry = best.entry(r).or_insert(key);
                if key < *entry {
                    *entry = key;
                }
            }
        }
        assert!(!best.is_empty(), "graph must be connected");
        for &(_, id) in best.values() {
            let e = g.edge(id);
            if dsu.union(e.u, e.v) {
                chosen.push(id);
                components -= 1;
            }
        }
    }
    (EdgeSet::from_ids(g, chosen), phases)
}

/// Runs the deterministic primal-dual 2-ECSS approximation on the runtime's
/// graph. `eps` is the overall approximation slack; the forward phase runs
/// with ε′ = eps / cover_factor.
pub fn approximate_2ecss<'g>(
    rt: &mut Runtime<'g>,
    eps: &BigRational,
    variant: Variant,
) -> Result<PipelineRun<'g>, PipelineError> {
    let g = rt.graph;
    if !is_two_edge_connected(g) {
        return Err(PipelineError::NotTwoEdgeConnected);
    }
    let n = g.vertex_count();
    let d = g.diameter();

    // tier-0 coordination tree from the minimum-id root
    let _bfs = crate::sim::bfs_tree(rt, 0)?;

    let (mst, _phases) = boruvka_mst(g);
    rt.charge("mst-boruvka", d + sqrt_ceil(n) * log_star(n));
    let tree = root_tree(g, &mst, 0).expect("MST spans the graph");
    let inst = build_virtual_graph(g, tree);
    rt.charge("virtual-graph", cost_d_sqrt(n, d));
    let lay = compute_layers(&inst.tree);
    rt.charge("layers", cost_d_sqrt_log(n, d));
    let seg = build_segments(&inst.tree);
    rt.charge("segments", cost_d_sqrt_log(n, d));

    let eps_prime = eps / rat(variant.cover_factor());
    let dual = forward_phase(&inst, &lay, &seg, &eps_prime)?;
    let forward_iters: usize = dual.epoch_iterations.iter().sum();
    rt.charge("forward-phase", forward_iters.max(1) * cost_d_sqrt(n, d));

    let reverse = match variant {
        Variant::Base4 => reverse_delete_base(&inst, &lay, &seg, &dual)?,
        Variant::Improved2 => reverse_delete_improved(&inst, &lay, &seg, &dual)?,
    };
    rt.charge("reverse-delete", reverse.traces.len().max(1) * cost_d_sqrt(n, d));
    if variant == Variant::Improved2 {
        rt.charge("cleaning", lay.layer_count * cost_d_sqrt(n, d));
    }

    let augmentation = project_to_original(&inst, &reverse.b)?;
    let result = mst.union(g, &augmentation);
    if rt.ledger.total_rounds() > rt.round_cap {
        return Err(PipelineError::Sim(SimError::RoundCap(rt.round_cap)));
    }

    // integrity: the output subgraph must be 2-edge-connected
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
    assert!(is_two_edge_connected(&sub), "pipeline output must be 2-edge-connected");

    Ok(PipelineRun { inst, lay, seg, dual, reverse, mst, augmentation, result, variant })
}
