//! Petals: for a tree edge t and an edge subset X, the covering edge
//! reaching the shallowest ancestor (higher petal) and the one reaching
//! deepest down t's layer path (lower petal). Together they cover every
//! X-neighbour of t in layers ≥ layer(t).

use std::collections::BTreeSet;

use crate::decomp::agg::{agg_nontree, agg_tree, Monoid};
use crate::decomp::layers::Layering;
use crate::decomp::segments::SegmentDecomposition;
use crate::tree::TreeEdge;
use crate::virt::{Half, VirtualEdgeId, VirtualTapInstance};

/// Selection key: (criterion, origin_edge_id, half rank, virtual edge id),
/// minimized lexicographically.
type Key = (usize, usize, u8, usize);

fn half_rank(h: Half) -> u8 {
    match h {
        Half::Left => 0,
        Half::Right => 1,
        Half::Whole => 2,
    }
}

const PICK_MIN: Monoid<Option<Key>> = Monoid {
    identity: None,
    combine: |a, b| match (a, b) {
        (Some(x), Some(y)) => Some(*x.min(y)),
        (Some(x), None) => Some(*x),
        (None, y) => *y,
    },
};

#[derive(Debug, Clone)]
pub struct Petals {
    pub layer: usize,
    /// per child vertex of a layer-`layer` tree edge: the petal's virtual
    /// edge id, None while uncovered by X
    pub higher: Vec<Option<VirtualEdgeId>>,
    pub lower: Vec<Option<VirtualEdgeId>>,
}

impl Petals {
    pub fn higher_of(&self, t: TreeEdge) -> Option<VirtualEdgeId> {
        self.higher[t.child]
    }

    pub fn lower_of(&self, t: TreeEdge) -> Option<VirtualEdgeId> {
        self.lower[t.child]
    }
}

/// Computes both petals of every layer-i tree edge with respect to X.
pub fn compute_petals(
    inst: &VirtualTapInstance,
    seg: &SegmentDecomposition,
    lay: &Layering,
    x_set: &BTreeSet<VirtualEdgeId>,
    i: usize,
) -> Petals {
    let tree = &inst.tree;
    let n = tree.vertex_count();

    // Each covering edge first learns leaf(t) for the single layer-i path
    // it covers: min over its covered layer-i edges of the leaf label.
    let leaf_inputs: Vec<u64> = (0..n)
        .map(|v| {
            if v != tree.root && lay.layer[v] == i {
                lay.leaf_of[v] as u64
            } else {
                u64::MAX
            }
        })
        .collect();
    let leaf_per_edge = agg_tree(inst, seg, &crate::decomp::agg::MIN, &leaf_inputs);

    // Higher petal: shallowest anc.
    let higher_keys: Vec<Option<Key>> = inst
        .virtual_edges()
        .iter()
        .map(|e| Some((tree.depth(e.anc), e.origin_edge_id, half_rank(e.half), e.id)))
        .collect();
    let higher_fold = agg_nontree(inst, seg, &PICK_MIN, x_set, |id| higher_keys[id]);

    // Lower petal: deepest u_e = lca(leaf(t), dec), i.e. minimal
    // (n - depth(u_e)).
    let lower_keys: Vec<Option<Key>> = inst
        .virtual_edges()
        .iter()
        .zip(&leaf_per_edge)
        .map(|(e, &leaf)| {
            if leaf == u64::MAX {
                return None; // covers no layer-i edge
            }
            let u_e = tree.lca(leaf as usize, e.dec);
            Some((n - tree.depth(u_e), e.origin_edge_id, half_rank(e.half), e.id))
        })
        .collect();
    let lower_fold = agg_nontree(inst, seg, &PICK_MIN, x_set, |id| lower_keys[id]);

    let mut higher = vec![None; n];
    let mut lower = vec![None; n];
    for v in 0..n {
        if v == tree.root || lay.layer[v] != i {
            continue;
        }
        higher[v] = higher_fold[v].map(|k| k.3);
        lower[v] = lower_fold[v].map(|k| k.3);
    }
    Petals { layer: i, higher, lower }
}
