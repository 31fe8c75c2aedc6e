//! The two aggregate-function primitives over the segment decomposition.
//!
//! Both walk covered paths edge-by-edge inside segments but jump whole
//! highways in one step (the long-range case), so a single virtual edge
//! costs O(segment diameter + skeleton length) instead of O(path length).

use std::collections::BTreeSet;

use crate::decomp::segments::SegmentDecomposition;
use crate::virt::{VirtualEdgeId, VirtualTapInstance};

/// Commutative fold with identity over values of type T.
#[derive(Clone, Copy)]
pub struct Monoid<T: Clone> {
    pub identity: T,
    pub combine: fn(&T, &T) -> T,
}

impl<T: Clone> Monoid<T> {
    pub fn fold(&self, items: impl IntoIterator<Item = T>) -> T {
        items
            .into_iter()
            .fold(self.identity.clone(), |a, b| (self.combine)(&a, &b))
    }
}

pub const SUM: Monoid<u64> = Monoid { identity: 0, combine: |a, b| a + b };
pub const COUNT_IDENT: Monoid<u64> = SUM;
pub const MIN: Monoid<u64> = Monoid { identity: u64::MAX, combine: |a, b| *a.min(b) };
pub const XOR: Monoid<u64> = Monoid { identity: 0, combine: |a, b| a ^ b };

/// One step of a covered-path walk: an individually visited tree edge
/// (child vertex) or a wholly jumped highway (segment id).
#[derive(Debug, Clone, Copy)]
enum Step {
    Edge(usize),
    Highway(usize),
}

/// Decomposes the covered path of a virtual edge into individually visited
/// tree edges and wholly jumped highways.
fn decompose_path(
    inst: &VirtualTapInstance,
    seg: &SegmentDecomposition,
    anc: usize,
    dec: usize,
) -> Vec<Step> {
    let tree = &inst.tree;
    let mut out = Vec::new();
    let mut x = dec;
    while x != anc {
        // jump a whole highway when x is its unique descendant and its root
        // is not above anc
        if let Some(s) = seg.segments.iter().find(|s| s.d == x && s.r != s.d) {
            if tree.is_ancestor(anc, s.r) {
                out.push(Step::Highway(s.id));
                x = s.r;
                continue;
            }
        }
        out.push(Step::Edge(x));
        x = tree.parent(x).unwrap();
    }
    out
}

/// For every virtual edge e: fold of `inputs[t]` over the tree edges t ∈ S_e.
/// `inputs` is indexed by child vertex.
pub fn agg_tree<T: Clone>(
    inst: &VirtualTapInstance,
    seg: &SegmentDecomposition,
    f: &Monoid<T>,
    inputs: &[T],
) -> Vec<T> {
    // per-highway fold, precomputed once
    let highway_fold: Vec<T> = seg
        .segments
        .iter()
        .map(|s| f.fold(s.highway.windows(2).map(|p| inputs[p[1]].clone())))
        .collect();
    inst.virtual_edges()
        .iter()
        .map(|e| {
            let mut acc = f.identity.clone();
            for step in decompose_path(inst, seg, e.anc, e.dec) {
                acc = match step {
                    Step::Edge(v) => (f.combine)(&acc, &inputs[v]),
                    Step::Highway(sid) => (f.combine)(&acc, &highway_fold[sid]),
                };
            }
            acc
        })
        .collect()
}

/// For every tree edge t (indexed by child vertex): fold of `inputs[e]` over
/// the virtual edges e ∈ X with t ∈ S_e. Covering edges contribute either
/// directly (short/mid range: individually walked) or through their
/// segment-highway bucket (long range: wholly jumped highways).
pub fn agg_nontree<T: Clone>(
    inst: &VirtualTapInstance,
    seg: &SegmentDecomposition,
    f: &Monoid<T>,
    x_set: &BTreeSet<VirtualEdgeId>,
    inputs: impl Fn(VirtualEdgeId) -> T,
) -> Vec<T> {
    let n = inst.tree.vertex_count();
    let mut walked: Vec<T> = vec![f.identity.clone(); n];
    let mut highway_bucket: Vec<T> = vec![f.identity.clone(); seg.segments.len()];
    for &eid in x_set {
        let e = inst.virtual_edge(eid);
        let m = inputs(eid);
        for step in decompose_path(inst, seg, e.anc, e.dec) {
            match step {
                Step::Edge(v) => walked[v] = (f.combine)(&walked[v], &m),
                Step::Highway(sid) => {
                    highway_bucket[sid] = (f.combine)(&highway_bucket[sid], &m)
                }
            }
        }
    }
    (0..n)
        .map(|v| match seg.highway_of_edge.get(v).copied().flatten() {
            Some(sid) => (f.combine)(&walked[v], &highway_bucket[sid]),
            None => walked[v].clone(),
        })
        .collect()
}
