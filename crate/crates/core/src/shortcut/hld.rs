//! Heavy-light labels and LCA from light-edge lists alone.
//!
//! Every vertex carries its root-path length |P_v|, the number of marked
//! tree edges M_v on that path, and the list L_v of light edges it crosses,
//! each stored as the identifier (child, parent, |P_child|, |P_parent|)
//! extended with the marked counts at both endpoints. |L_v| never exceeds
//! ⌈log2 n⌉, so the whole label fits a polylogarithmic message.

use crate::decomp::Monoid;
use crate::shortcut::sums::{ancestors_fold, descendants_fold, heavy_child};
use crate::sim::log2_ceil;
use crate::tree::LabeledTree;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LightEdge {
    pub child: usize,
    pub parent: usize,
    /// |P_child|: vertices on the root path of `child`, inclusive.
    pub path_len_child: usize,
    pub path_len_parent: usize,
    /// marked tree edges on the root paths of the two endpoints
    pub marked_child: usize,
    pub marked_parent: usize,
}

#[derive(Debug, Clone)]
pub struct HeavyLightInfo {
    /// per non-root vertex: is the edge to the parent heavy
    pub heavy: Vec<bool>,
    /// |P_v|, counted in vertices
    pub path_len: Vec<usize>,
    /// M_v: marked tree edges on the root path of v
    pub marked_count: Vec<usize>,
    /// L_v in root→v order
    pub light_list: Vec<Vec<LightEdge>>,
}

/// Computes all heavy-light labels. `marked[child]` marks the tree edge
/// {child, p(child)}; the root entry is ignored. Fails when some light list
/// overflows the ⌈log2 n⌉ bound, which would break the message budget.
pub fn heavy_light(tree: &LabeledTree, marked: &[bool]) -> Result<HeavyLightInfo, String> {
    let n = tree.vertex_count();
    assert_eq!(marked.len(), n);
    let sizes = descendants_fold(tree, &crate::decomp::agg::SUM, &vec![1u64; n]);
    let heavy: Vec<bool> = (0..n)
        .map(|v| match tree.parent(v) {
            Some(p) => 2 * sizes[v] >= sizes[p],
            None => false,
        })
        .collect();
    debug_assert!((0..n).all(|v| heavy_child(tree, v).map_or(true, |c| heavy[c])));

    let path_len = ancestors_fold(tree, &crate::decomp::agg::SUM, &vec![1u64; n]);
    let marked_x: Vec<u64> =
        (0..n).map(|v| (tree.parent(v).is_some() && marked[v]) as u64).collect();
    let marked_count = ancestors_fold(tree, &crate::decomp::agg::SUM, &marked_x);

    let entries: Vec<Vec<LightEdge>> = (0..n)
        .map(|v| match tree.parent(v) {
            Some(p) if !heavy[v] => vec![LightEdge {
                child: v,
                parent: p,
                path_len_child: path_len[v] as usize,
                path_len_parent: path_len[p] as usize,
                marked_child: marked_count[v] as usize,
                marked_parent: marked_count[p] as usize,
            }],
            _ => Vec::new(),
        })
        .collect();
    let concat: Monoid<Vec<LightEdge>> = Monoid {
        identity: Vec::new(),
        combine: |a, b| {
            let mut out = a.clone();
            out.extend_from_slice(b);
            out
        },
    };
    let light_list = ancestors_fold(tree, &concat, &entries);
    let bound = log2_ceil(n);
    for (v, l) in light_list.iter().enumerate() {
        if l.len() > bound {
            return Err(format!(
                "vertex {v} crosses {} light edges, bound is {bound}",
                l.len()
            ));
        }
    }
    Ok(HeavyLightInfo {
        heavy,
        path_len: path_len.iter().map(|&x| x as usize).collect(),
        marked_count: marked_count.iter().map(|&x| x as usize).collect(),
        light_list,
    })
}

/// Per non-root vertex: is the edge to the parent heavy.
pub fn heavy_flags(tree: &LabeledTree) -> Vec<bool> {
    let n = tree.vertex_count();
    (0..n)
        .map(|v| match tree.parent(v) {
            Some(p) => 2 * tree.subtree_size(v) >= tree.subtree_size(p),
            None => false,
        })
        .collect()
}

/// LCA of u and v from light lists and path lengths only.
///
/// The light edges above the LCA are the common prefix of L_u and L_v. Just
/// below it, each side contributes a candidate: the parent endpoint of its
/// first non-common light edge, or the vertex itself when no light edge
/// remains (it then sits on the LCA's heavy path). The shallower candidate —
/// smaller |P| — is the LCA.
pub fn lca_light(h: &HeavyLightInfo, u: usize, v: usize) -> usize {
    let (lu, lv) = (&h.light_list[u], &h.light_list[v]);
    let mut c = 0;
    while c < lu.len() && c < lv.len() && lu[c] == lv[c] {
        c += 1;
    }
    let candidate = |list: &[LightEdge], own: usize| -> (usize, usize) {
        match list.get(c) {
            Some(e) => (e.path_len_parent, e.parent),
            None => (h.path_len[own], own),
        }
    };
    let cu = candidate(lu, u);
    let cv = candidate(lv, v);
    cu.min(cv).1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_graph, EdgeSet, WeightedGraph};
    use crate::tree::root_tree;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_tree(n: usize, seed: u64) -> LabeledTree {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let raw: Vec<(usize, usize, u64)> = (1..n).map(|v| (v, rng.gen_range(0..v), 1)).collect();
        let g = Box::leak(Box::new(WeightedGraph::new(n, &raw).unwrap()));
        let es = EdgeSet::from_ids(g, 0..n - 1);
        root_tree(g, &es, 0).unwrap()
    }

    #[test]
    fn path_is_all_heavy() {
        let g = parse_graph("6 5\n1 2 1\n2 3 1\n3 4 1\n4 5 1\n5 6 1").unwrap();
        let es = EdgeSet::from_ids(&g, 0..5);
        let t = root_tree(&g, &es, 0).unwrap();
        let h = heavy_light(&t, &[false; 6]).unwrap();
        assert!((1..6).all(|v| h.heavy[v]));
        assert!(h.light_list.iter().all(|l| l.is_empty()));
        assert_eq!(h.path_len, vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn balanced_binary_tree_is_all_light() {
        let g = parse_graph("7 6\n1 2 1\n1 3 1\n2 4 1\n2 5 1\n3 6 1\n3 7 1").unwrap();
        let es = EdgeSet::from_ids(&g, 0..6);
        let t = root_tree(&g, &es, 0).unwrap();
        let h = heavy_light(&t, &[false; 7]).unwrap();
        assert!((1..7).all(|v| !h.heavy[v]));
        assert_eq!(h.light_list[3].len(), 2);
        assert!(h.light_list[3].len() <= log2_ceil(7));
    }

    #[test]
    fn light_lists_stay_within_log_bound() {
        for seed in 0..100 {
            let n = 2 + (seed as usize % 60);
            let t = random_tree(n.max(2), seed);
            let h = heavy_light(&t, &vec![false; n.max(2)]).unwrap();
            for l in &h.light_list {
                assert!(l.len() <= log2_ceil(n.max(2)), "seed {seed}");
            }
        }
    }

    #[test]
    fn marked_counts_match_explicit_walks() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for seed in 0..60 {
            let n = rng.gen_range(2..40);
            let t = random_tree(n, seed);
            let marked: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.4)).collect();
            let h = heavy_light(&t, &marked).unwrap();
            for v in 0..n {
                // oracle: walk the parent chain
                let mut cnt = 0;
                let mut x = v;
                while let Some(p) = t.parent(x) {
                    cnt += marked[x] as usize;
                    x = p;
                }
                assert_eq!(h.marked_count[v], cnt, "seed {seed} v={v}");
                assert_eq!(h.path_len[v], t.depth(v) + 1);
            }
        }
    }

    #[test]
    fn lca_light_agrees_with_tree_lca() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for seed in 0..50 {
            let n = rng.gen_range(2..40);
            let t = random_tree(n, seed);
            let h = heavy_light(&t, &vec![false; n]).unwrap();
            for u in 0..n {
                for v in 0..n {
                    assert_eq!(lca_light(&h, u, v), t.lca(u, v), "seed {seed} u={u} v={v}");
                }
            }
        }
    }

    #[test]
    fn lca_light_same_heavy_path_boundary() {
        // path: all pairs share every (zero) light edge
        let g = parse_graph("5 4\n1 2 1\n2 3 1\n3 4 1\n4 5 1").unwrap();
        let es = EdgeSet::from_ids(&g, 0..4);
        let t = root_tree(&g, &es, 0).unwrap();
        let h = heavy_light(&t, &[false; 5]).unwrap();
        assert_eq!(lca_light(&h, 1, 4), 1);
        assert_eq!(lca_light(&h, 4, 1), 1);
        assert_eq!(lca_light(&h, 3, 3), 3);
    }
}
