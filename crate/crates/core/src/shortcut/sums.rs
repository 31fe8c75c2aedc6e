//! Subtree and root-path folds over a rooted tree, structured the way the
//! shortcut framework computes them: descendants' sums merge children into
//! parents along the Euler order; ancestors' sums push prefixes down a
//! heavy-path hierarchy, one level of light edges at a time.

use crate::decomp::Monoid;
use crate::sim::log2_ceil;
use crate::tree::LabeledTree;

/// Fold of x over each subtree (inclusive). Children are merged into their
/// parents in decreasing discovery order, so every vertex is finished before
/// its parent; the combine must be commutative.
pub fn descendants_fold<T: Clone>(tree: &LabeledTree, f: &Monoid<T>, x: &[T]) -> Vec<T> {
    let n = tree.vertex_count();
    assert_eq!(x.len(), n);
    let mut acc = x.to_vec();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by_key(|&v| std::cmp::Reverse(tree.euler_in(v)));
    for v in order {
        if let Some(p) = tree.parent(v) {
            acc[p] = (f.combine)(&acc[p], &acc[v]);
        }
    }
    acc
}

/// Heavy child of v, if any: the child u with 2·|T_u| ≥ |T_v|. At most one
/// child qualifies, and a light edge at least halves the subtree size, so
/// any root path crosses ≤ ⌈log2 n⌉ light edges.
pub fn heavy_child(tree: &LabeledTree, v: usize) -> Option<usize> {
    tree.children(v)
        .iter()
        .copied()
        .find(|&u| 2 * tree.subtree_size(u) >= tree.subtree_size(v))
}

/// Heavy-path partition: part id per vertex, numbered by the head's vertex
/// id rank. Each part is a maximal chain of heavy edges, hence connected.
pub fn heavy_path_partition(tree: &LabeledTree) -> Vec<usize> {
    let n = tree.vertex_count();
    let mut head = vec![usize::MAX; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by_key(|&v| tree.depth(v));
    for &v in &order {
        let h = match tree.parent(v) {
            Some(p) if heavy_child(tree, p) == Some(v) => head[p],
            _ => v,
        };
        head[v] = h;
    }
    let mut heads: Vec<usize> = head.clone();
    heads.sort_unstable();
    heads.dedup();
    head.iter().map(|h| heads.binary_search(h).unwrap()).collect()
}

/// Fold of x along each root path, combining in root→v order:
/// out[v] = x(root) ∘ … ∘ x(v). Processes whole heavy paths per level,
/// where a path's level is the number of light edges above its head; at
/// most ⌈log2 n⌉+1 levels exist.
pub fn ancestors_fold<T: Clone>(tree: &LabeledTree, f: &Monoid<T>, x: &[T]) -> Vec<T> {
    let n = tree.vertex_count();
    assert_eq!(x.len(), n);
    // heads of heavy paths and the light depth of each head
    let mut light_depth = vec![0usize; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by_key(|&v| tree.depth(v));
    let mut heads: Vec<usize> = Vec::new();
    for &v in &order {
        match tree.parent(v) {
            None => heads.push(v),
            Some(p) if heavy_child(tree, p) == Some(v) => light_depth[v] = light_depth[p],
            Some(p) => {
                light_depth[v] = light_depth[p] + 1;
                heads.push(v);
            }
        }
    }
    let levels = heads.iter().map(|&h| light_depth[h]).max().unwrap_or(0) + 1;
    assert!(levels <= log2_ceil(n) + 1, "light depth exceeds the logarithmic bound");

    let mut out = vec![f.identity.clone(); n];
    heads.sort_unstable_by_key(|&h| (light_depth[h], h));
    for &h in &heads {
        // the head's parent sits on a shallower level and is already final
        let mut run = match tree.parent(h) {
            None => f.identity.clone(),
            Some(p) => out[p].clone(),
        };
        let mut v = h;
        loop {
            run = (f.combine)(&run, &x[v]);
            out[v] = run.clone();
            match heavy_child(tree, v) {
                Some(c) => v = c,
                None => break,
            }
        }
    }
    out
}
