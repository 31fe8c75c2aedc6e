//! Reverse-delete phase: walk the epochs back from the top layer and keep
//! only a bounded-overlap subset B of the augmentation.
//!
//! Epoch k fixes X = B ∪ A_k and re-covers F = ∪_{i≥k} F_i from scratch via
//! per-layer anchor selection: a cross-segment ("global") greedy MIS over
//! the extreme uncovered highway edges, then an in-segment ("local") upward
//! scan of each layer path. The base variant adds both petals of every
//! anchor (≤ 4-cover of the dual-paying edges); the improved variant adds
//! only higher petals and then runs a cleaning pass that removes the
//! redundant global-anchor petal wherever an edge ended up 3-covered
//! (≤ 2-cover).

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::decomp::agg::{agg_nontree, SUM};
use crate::decomp::layers::Layering;
use crate::decomp::petals::{compute_petals, Petals};
use crate::decomp::segments::SegmentDecomposition;
use crate::primal_dual::forward::DualState;
use crate::virt::{VirtualEdgeId, VirtualTapInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Anchor {
    /// child vertex of the anchor tree edge
    pub child: usize,
    pub layer: usize,
    /// true when picked by the cross-segment MIS, false for segment scans
    pub global: bool,
    pub higher: VirtualEdgeId,
    pub lower: VirtualEdgeId,
}

/// Everything one anchor-selection iteration saw and decided; kept so
/// independence and maximality can be re-audited afterwards.
#[derive(Debug, Clone)]
pub struct IterationTrace {
    pub epoch: usize,
    pub layer: usize,
    pub x: BTreeSet<VirtualEdgeId>,
    pub h_tilde: Vec<usize>,
    pub anchors: Vec<Anchor>,
}

#[derive(Debug, Clone)]
pub struct ReverseState {
    pub b: BTreeSet<VirtualEdgeId>,
    pub traces: Vec<IterationTrace>,
    /// 4 for the base variant, 2 for the improved one
    pub cover_factor: u32,
    /// petals dropped by cleaning passes, tagged with their epoch
    pub removed_in_cleaning: Vec<(usize, VirtualEdgeId)>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReverseError {
    #[error("tree edge below vertex {0} left uncovered at the end of epoch {1}")]
    UncoveredAfterEpoch(usize, usize),
    #[error("cleaning at tree edge below {0}: {1} candidate global anchors, expected 1")]
    CleaningPattern(usize, usize),
}

fn edge_covers(inst: &VirtualTapInstance, eid: VirtualEdgeId, child: usize) -> bool {
    let e = inst.virtual_edge(eid);
    let tree = &inst.tree;
    tree.is_ancestor(e.anc, tree.parent(child).unwrap()) && tree.is_ancestor(child, e.dec)
}

fn covered_by(inst: &VirtualTapInstance, set: &BTreeSet<VirtualEdgeId>, child: usize) -> bool {
    set.iter().any(|&e| edge_covers(inst, e, child))
}

/// One anchor-selection iteration over the uncovered layer-i edges
/// `h_tilde`, with petals already computed w.r.t. X. Returns the anchors
/// and the petal edges to add to Y. `both_petals` selects the base-variant
/// behaviour; the improved variant adds higher petals only.
pub fn mis_on_gi(
    inst: &VirtualTapInstance,
    lay: &Layering,
    seg: &SegmentDecomposition,
    i: usize,
    petals: &Petals,
    h_tilde: &[usize],
    y: &BTreeSet<VirtualEdgeId>,
    both_petals: bool,
) -> (Vec<Anchor>, BTreeSet<VirtualEdgeId>) {
    let tree = &inst.tree;
    let h_set: BTreeSet<usize> = h_tilde.iter().copied().collect();

    // Global part: per segment highway, the highest and lowest uncovered
    // layer-i highway edges form the candidate set T′.
    let mut t_prime: BTreeSet<usize> = BTreeSet::new();
    for s in &seg.segments {
        let cand: Vec<usize> =
            s.highway.windows(2).map(|p| p[1]).filter(|v| h_set.contains(v)).collect();
        if let Some(&hi) = cand.iter().min_by_key(|&&v| tree.depth(v)) {
            t_prime.insert(hi);
        }
        if let Some(&lo) = cand.iter().max_by_key(|&&v| tree.depth(v)) {
            t_prime.insert(lo);
        }
    }
    // Two layer-i edges conflict iff some X edge covers both; since petals
    // cover every X-neighbour in layers ≥ i, checking the four petals is
    // equivalent.
    let adjacent = |a: usize, b: usize| -> bool {
        let pet = |v: usize| [petals.higher[v].unwrap(), petals.lower[v].unwrap()];
        pet(a).iter().any(|&p| edge_covers(inst, p, b))
            || pet(b).iter().any(|&p| edge_covers(inst, p, a))
    };
    // canonical greedy MIS; every vertex would run this identically
    let mut order: Vec<usize> = t_prime.into_iter().collect();
    order.sort_by_key(|&v| {
        (seg.edge_segment[v], tree.depth(v), tree.tree_edge_of_child(v).host_edge_id)
    });
    let mut global: Vec<usize> = Vec::new();
    for v in order {
        if !global.iter().any(|&g| adjacent(g, v)) {
            global.push(v);
        }
    }

    let mut anchors = Vec::new();
    let mut additions: BTreeSet<VirtualEdgeId> = BTreeSet::new();
    let push_anchor = |v: usize, global_tag: bool, additions: &mut BTreeSet<VirtualEdgeId>,
                           anchors: &mut Vec<Anchor>| {
        let hi = petals.higher[v].expect("uncovered layer edge must have X coverage");
        let lo = petals.lower[v].expect("uncovered layer edge must have X coverage");
        additions.insert(hi);
        if both_petals {
            additions.insert(lo);
        }
        anchors.push(Anchor { child: v, layer: i, global: global_tag, higher: hi, lower: lo });
    };
    for &v in &global {
        push_anchor(v, true, &mut additions, &mut anchors);
    }

    // Local part: each segment scans its layer-i subpaths from the deep end
    // upward against the post-global snapshot of Y, propagating how far up
    // the latest added higher petal reaches.
    let y_after_global: BTreeSet<VirtualEdgeId> = y.union(&additions).copied().collect();
    let covered_flag: BTreeMap<usize, bool> =
        h_set.iter().map(|&v| (v, covered_by(inst, &y_after_global, v))).collect();
    let mut groups: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for &v in h_tilde {
        groups.entry((seg.edge_segment[v], lay.leaf_of[v])).or_default().push(v);
    }
    for (_, mut members) in groups {
        members.sort_by_key(|&v| std::cmp::Reverse(tree.depth(v)));
        let mut reach: Option<usize> = None;
        for v in members {
            let covered_below =
                reach.is_some_and(|a| tree.is_ancestor(a, tree.parent(v).unwrap()));
            if covered_below || covered_flag[&v] {
                continue;
            }
            push_anchor(v, false, &mut additions, &mut anchors);
            reach = Some(inst.virtual_edge(anchors.last().unwrap().higher).anc);
        }
    }
    (anchors, additions)
}

fn reverse_delete(
    inst: &VirtualTapInstance,
    lay: &Layering,
    seg: &SegmentDecomposition,
    ds: &DualState,
    improved: bool,
) -> Result<ReverseState, ReverseError> {
    let tree = &inst.tree;
    let n = tree.vertex_count();
    let top = lay.layer_count;
    let mut b: BTreeSet<VirtualEdgeId> = BTreeSet::new();
    let mut traces = Vec::new();
    let mut removed_in_cleaning = Vec::new();

    for k in (1..=top).rev() {
        let a_k = ds.a_k(k);
        let x: BTreeSet<VirtualEdgeId> = b.union(&a_k).copied().collect();
        let in_f: Vec<bool> =
            (0..n).map(|v| ds.f_epoch[v].is_some_and(|f| f >= k)).collect();
        let mut y: BTreeSet<VirtualEdgeId> = BTreeSet::new();
        let mut epoch_anchors: Vec<Anchor> = Vec::new();

        for i in k..=top {
            let h_tilde: Vec<usize> = (0..n)
                .filter(|&v| {
                    v != tree.root && lay.layer[v] == i && in_f[v] && !covered_by(inst, &y, v)
                })
                .collect();
            let petals = compute_petals(inst, seg, lay, &x, i);
            let (anchors, additions) =
                mis_on_gi(inst, lay, seg, i, &petals, &h_tilde, &y, !improved);
            y.extend(additions);
            epoch_anchors.extend(anchors.iter().copied());
            traces.push(IterationTrace { epoch: k, layer: i, x: x.clone(), h_tilde, anchors });
        }

        if improved {
            // Cleaning: any R_k edge covered exactly 3 times has, by the
            // anchor-structure claim, exactly one global anchor below it
            // whose higher petal is redundant; drop those petals at once.
            let counts = agg_nontree(inst, seg, &SUM, &y, |_| 1u64);
            let mut removals: BTreeSet<VirtualEdgeId> = BTreeSet::new();
            for v in 0..n {
                if v == tree.root || ds.r_epoch[v] != Some(k) || counts[v] != 3 {
                    continue;
                }
                let cands: BTreeSet<VirtualEdgeId> = epoch_anchors
                    .iter()
                    .filter(|a| {
                        a.global
                            && a.child != v
                            && tree.is_ancestor(v, a.child)
                            && edge_covers(inst, a.higher, v)
                            && y.contains(&a.higher)
                    })
                    .map(|a| a.higher)
                    .collect();
                if cands.len() != 1 {
                    return Err(ReverseError::CleaningPattern(v, cands.len()));
                }
                removals.extend(cands);
            }
            for r in removals {
                y.remove(&r);
                removed_in_cleaning.push((k, r));
            }
        }

        for v in 0..n {
            if v != tree.root && in_f[v] && !covered_by(inst, &y, v) {
                return Err(ReverseError::UncoveredAfterEpoch(v, k));
            }
        }
        b = y;
    }

    Ok(ReverseState {
        b,
        traces,
        cover_factor: if improved { 2 } else { 4 },
        removed_in_cleaning,
    })
}

/// Base variant: both petals per anchor, 4-cover guarantee.
pub fn reverse_delete_base(
    inst: &VirtualTapInstance,
    lay: &Layering,
    seg: &SegmentDecomposition,
    ds: &DualState,
) -> Result<ReverseState, ReverseError> {
    reverse_delete(inst, lay, seg, ds, false)
}

/// Improved variant: higher petals only plus per-epoch cleaning, 2-cover.
pub fn reverse_delete_improved(
    inst: &VirtualTapInstance,
    lay: &Layering,
    seg: &SegmentDecomposition,
    ds: &DualState,
) -> Result<ReverseState, ReverseError> {
    reverse_delete(inst, lay, seg, ds, true)
}

/// Unit-weight augmentation: one layer-ascending anchor pass against the
/// full virtual edge set, both petals per anchor. The anchors are pairwise
/// independent, so |cover| ≤ 2·|anchors| ≤ 2·OPT on the virtual instance.
pub fn unweighted_tap(
    inst: &VirtualTapInstance,
    lay: &Layering,
    seg: &SegmentDecomposition,
) -> (BTreeSet<VirtualEdgeId>, Vec<IterationTrace>) {
    let tree = &inst.tree;
    let n = tree.vertex_count();
    let x: BTreeSet<VirtualEdgeId> = (0..inst.virtual_edges().len()).collect();
    let mut y: BTreeSet<VirtualEdgeId> = BTreeSet::new();
    let mut traces = Vec::new();
    for i in 1..=lay.layer_count {
        let h_tilde: Vec<usize> = (0..n)
            .filter(|&v| v != tree.root && lay.layer[v] == i && !covered_by(inst, &y, v))
            .collect();
        let petals = compute_petals(inst, seg, lay, &x, i);
        let (anchors, additions) = mis_on_gi(inst, lay, seg, i, &petals, &h_tilde, &y, true);
        y.extend(additions);
        traces.push(IterationTrace { epoch: 1, layer: i, x: x.clone(), h_tilde, anchors });
    }
    (y, traces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::{build_segments, compute_layers};
    use crate::graph::{generate, mst_kruskal, parse_graph, Family};
    use crate::primal_dual::forward::{forward_phase, rat};
    use crate::tree::root_tree;
    use crate::virt::build_virtual_graph;
    use num_rational::BigRational;
    use num_traits::Zero;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn instance(text: &str, tree_ids: std::ops::Range<usize>) -> VirtualTapInstance<'static> {
        let g = Box::leak(Box::new(parse_graph(text).unwrap()));
        let es = crate::graph::EdgeSet::from_ids(g, tree_ids);
        let t = root_tree(g, &es, 0).unwrap();
        build_virtual_graph(g, t)
    }

    fn random_instance(seed: u64, n: usize, extra: usize, wmax: u64) -> VirtualTapInstance<'static> {
        let g = Box::leak(Box::new(
            generate(Family::Random2Ec { n, extra_edges: extra, weight_max: wmax }, seed).unwrap(),
        ));
        let mst = mst_kruskal(g).unwrap();
        let t = root_tree(g, &mst, 0).unwrap();
        build_virtual_graph(g, t)
    }

    /// Coverage multiplicity of the tree edge below `child` under `set`,
    /// counted by explicit parent walks.
    fn coverage_count(
        inst: &VirtualTapInstance,
        set: &BTreeSet<VirtualEdgeId>,
        child: usize,
    ) -> usize {
        set.iter()
            .filter(|&&eid| {
                let e = inst.virtual_edge(eid);
                let mut v = e.dec;
                let mut hit = false;
                while v != e.anc {
                    if v == child {
                        hit = true;
                    }
                    v = inst.tree.parent(v).unwrap();
                }
                hit
            })
            .count()
    }

    fn pipeline(
        inst: &VirtualTapInstance,
        improved: bool,
    ) -> (DualState, ReverseState) {
        let seg = build_segments(&inst.tree);
        let lay = compute_layers(&inst.tree);
        let eps = rat(1) / rat(4);
        let ds = forward_phase(inst, &lay, &seg, &eps).unwrap();
        let rs = reverse_delete(inst, &lay, &seg, &ds, improved).unwrap();
        (ds, rs)
    }

    #[test]
    fn c4_keeps_the_only_cover() {
        let inst = instance("4 4\n1 2 1\n2 3 1\n3 4 1\n4 1 1", 0..3);
        for improved in [false, true] {
            let (_, rs) = pipeline(&inst, improved);
            assert_eq!(rs.b, [0].into_iter().collect());
        }
    }

    #[test]
    fn path_trace_base_keeps_f1_f2() {
        let inst = instance("4 6\n1 2 1\n2 3 1\n3 4 1\n1 3 1\n2 4 1\n1 4 3", 0..3);
        let (_, rs) = pipeline(&inst, false);
        assert_eq!(rs.b, [0, 1].into_iter().collect());
        assert_eq!(inst.virtual_weight(&rs.b), 2);
    }

    #[test]
    fn path_trace_improved_double_covers_middle() {
        let inst = instance("4 6\n1 2 1\n2 3 1\n3 4 1\n1 3 1\n2 4 1\n1 4 3", 0..3);
        let (_, rs) = pipeline(&inst, true);
        assert_eq!(rs.b, [0, 1].into_iter().collect());
        // the middle edge {2,3} is covered exactly twice
        assert_eq!(coverage_count(&inst, &rs.b, 2), 2);
        assert!(rs.removed_in_cleaning.is_empty());
    }

    #[test]
    fn random_instances_meet_cover_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for case in 0..200 {
            let n = rng.gen_range(4..36);
            let inst = random_instance(case, n, rng.gen_range(1..2 * n), 9);
            for improved in [false, true] {
                let (ds, rs) = pipeline(&inst, improved);
                let bound = if improved { 2 } else { 4 };
                assert!(inst.covers_all(&rs.b), "case {case} improved {improved}");
                for v in 0..inst.tree.vertex_count() {
                    if ds.y[v] > BigRational::zero() {
                        let c = coverage_count(&inst, &rs.b, v);
                        assert!(
                            c <= bound,
                            "case {case} improved {improved} vertex {v}: covered {c} times"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn payment_bound_holds_per_run() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for case in 0..60 {
            let n = rng.gen_range(4..30);
            let inst = random_instance(1000 + case, n, rng.gen_range(1..n), 5);
            for improved in [false, true] {
                let (ds, rs) = pipeline(&inst, improved);
                let c = if improved { 2u64 } else { 4 };
                let weight = rat(inst.virtual_weight(&rs.b));
                let s_sum: BigRational =
                    rs.b.iter().map(|&e| ds.s[e].clone()).fold(BigRational::zero(), |a, b| a + b);
                assert!(weight <= s_sum, "case {case}");
                assert!(s_sum <= rat(c) * ds.total_y(), "case {case} improved {improved}");
            }
        }
    }

    #[test]
    fn improved_anchor_pairs_are_global_over_local() {
        // adjacent anchors within an iteration must pair a global anchor
        // above with a local anchor below
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for case in 0..80 {
            let n = rng.gen_range(6..40);
            let inst = random_instance(2000 + case, n, rng.gen_range(2..2 * n), 6);
            let seg = build_segments(&inst.tree);
            let lay = compute_layers(&inst.tree);
            let ds = forward_phase(&inst, &lay, &seg, &(rat(1) / rat(4))).unwrap();
            let rs = reverse_delete(&inst, &lay, &seg, &ds, true).unwrap();
            for tr in &rs.traces {
                for (ai, a) in tr.anchors.iter().enumerate() {
                    for b in tr.anchors.iter().skip(ai + 1) {
                        let conflict = tr.x.iter().any(|&e| {
                            edge_covers(&inst, e, a.child) && edge_covers(&inst, e, b.child)
                        });
                        if !conflict {
                            continue;
                        }
                        // b deeper or a deeper; the upper one must be global
                        let (low, high) = if inst.tree.depth(a.child) > inst.tree.depth(b.child)
                        {
                            (a, b)
                        } else {
                            (b, a)
                        };
                        assert!(
                            high.global && !low.global,
                            "case {case}: conflicting anchors {} and {} not global-over-local",
                            a.child,
                            b.child
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn base_anchors_are_independent_within_iterations() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for case in 0..80 {
            let n = rng.gen_range(6..40);
            let inst = random_instance(3000 + case, n, rng.gen_range(2..2 * n), 6);
            let (_, rs) = pipeline(&inst, false);
            for tr in &rs.traces {
                for (ai, a) in tr.anchors.iter().enumerate() {
                    for b in tr.anchors.iter().skip(ai + 1) {
                        let conflict = tr.x.iter().any(|&e| {
                            edge_covers(&inst, e, a.child) && edge_covers(&inst, e, b.child)
                        });
                        assert!(!conflict, "case {case}: anchors {} {} conflict", a.child, b.child);
                    }
                }
            }
        }
    }

    /// Brute-force minimum cardinality of a full virtual cover.
    fn opt_cover_size(inst: &VirtualTapInstance) -> usize {
        let m = inst.virtual_edges().len();
        assert!(m <= 20, "brute force limited to small instances");
        let mut best = usize::MAX;
        for mask in 0u32..(1 << m) {
            let size = mask.count_ones() as usize;
            if size >= best {
                continue;
            }
            let set: BTreeSet<VirtualEdgeId> =
                (0..m).filter(|&i| mask & (1 << i) != 0).collect();
            if inst.covers_all(&set) {
                best = size;
            }
        }
        best
    }

    #[test]
    fn unweighted_cover_within_twice_optimum() {
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        let mut checked = 0;
        let mut case = 0u64;
        while checked < 100 {
            case += 1;
            let n = rng.gen_range(4..14);
            let inst = random_instance(4000 + case, n, rng.gen_range(1..n), 1);
            if inst.virtual_edges().len() > 16 {
                continue;
            }
            checked += 1;
            let seg = build_segments(&inst.tree);
            let lay = compute_layers(&inst.tree);
            let (cover, traces) = unweighted_tap(&inst, &lay, &seg);
            assert!(inst.covers_all(&cover), "case {case}");
            let opt = opt_cover_size(&inst);
            assert!(
                cover.len() <= 2 * opt,
                "case {case}: cover {} vs opt {opt}",
                cover.len()
            );
            // cross-layer anchor independence gives the bound
            let anchors: Vec<Anchor> =
                traces.iter().flat_map(|t| t.anchors.iter().copied()).collect();
            assert!(cover.len() <= 2 * anchors.len().max(1));
            for (ai, a) in anchors.iter().enumerate() {
                for b in anchors.iter().skip(ai + 1) {
                    let conflict = (0..inst.virtual_edges().len()).any(|e| {
                        edge_covers(&inst, e, a.child) && edge_covers(&inst, e, b.child)
                    });
                    assert!(!conflict, "case {case}: anchors {} {} conflict", a.child, b.child);
                }
            }
        }
    }

    #[test]
    fn empty_h_tilde_yields_no_anchors() {
        let inst = instance("4 4\n1 2 1\n2 3 1\n3 4 1\n4 1 1", 0..3);
        let seg = build_segments(&inst.tree);
        let lay = compute_layers(&inst.tree);
        let x: BTreeSet<VirtualEdgeId> = [0].into_iter().collect();
        let petals = compute_petals(&inst, &seg, &lay, &x, 1);
        let (anchors, additions) =
            mis_on_gi(&inst, &lay, &seg, 1, &petals, &[], &BTreeSet::new(), true);
        assert!(anchors.is_empty());
        assert!(additions.is_empty());
    }
}
