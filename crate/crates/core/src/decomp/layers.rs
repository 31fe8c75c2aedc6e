//! Layering by iterated leaf-path contraction: layer i holds the
//! leaf-to-first-junction paths of the (i−1)-times contracted tree. Each
//! contraction at least halves the leaf count, so there are at most
//! ⌈log2 n⌉ + 1 layers.

use crate::tree::{LabeledTree, TreeEdge};

#[derive(Debug, Clone)]
pub struct Layering {
    /// 1-based layer number per tree edge, indexed by child vertex (root
    /// slot 0)
    pub layer: Vec<usize>,
    /// lowest vertex of the layer path containing the edge, indexed by
    /// child vertex
    pub leaf_of: Vec<usize>,
    /// per layer (1-based): topmost vertices of its paths
    pub path_heads: Vec<Vec<usize>>,
    /// per layer (1-based): lowest vertices of its paths
    pub path_leaves: Vec<Vec<usize>>,
    pub layer_count: usize,
}

impl Layering {
    pub fn layer(&self, t: TreeEdge) -> usize {
        self.layer[t.child]
    }

    pub fn leaf_of(&self, t: TreeEdge) -> usize {
        self.leaf_of[t.child]
    }

    /// Child vertices of the edges in layer i.
    pub fn edges_in_layer(&self, i: usize) -> Vec<usize> {
        (0..self.layer.len()).filter(|&v| self.layer[v] == i).collect()
    }
}

pub fn compute_layers(tree: &LabeledTree) -> Layering {
    let n = tree.vertex_count();
    let mut alive = vec![true; n];
    let mut layer = vec![0usize; n];
    let mut leaf_of = vec![usize::MAX; n];
    let mut path_heads = vec![Vec::new()]; // index 0 unused
    let mut path_leaves = vec![Vec::new()];
    let mut remaining = n - 1; // uncontracted edges
    let mut i = 0usize;
    while remaining > 0 {
        i += 1;
        let mut child_count = vec![0usize; n];
        for v in 0..n {
            if alive[v] && v != tree.root {
                child_count[tree.parent(v).unwrap()] += 1;
            }
        }
        let leaves: Vec<usize> =
            (0..n).filter(|&v| alive[v] && v != tree.root && child_count[v] == 0).collect();
        let mut heads = Vec::new();
        let mut to_remove = Vec::new();
        for &leaf in &leaves {
            // walk up to the first junction (or through non-junction root)
            let mut v = leaf;
            loop {
                let p = tree.parent(v).unwrap();
                layer[v] = i;
                leaf_of[v] = leaf;
                to_remove.push(v);
                if p == tree.root {
                    if child_count[p] >= 2 {
                        heads.push(p);
                        break;
                    }
                    // root with a single chain: the path ends at the root
                    // and the whole tree contracts
                    to_remove.push(p);
                    heads.push(p);
                    break;
                }
                if child_count[p] >= 2 {
                    heads.push(p);
                    break;
                }
                v = p;
            }
        }
        path_heads.push(heads);
        path_leaves.push(leaves.clone());
        for v in to_remove {
            if alive[v] {
                alive[v] = false;
                if v != tree.root {
                    remaining -= 1;
                }
            }
        }
    }
    Layering { layer, leaf_of, path_heads, path_leaves, layer_count: i }
}

/// Re-derivation check: contracting all layers < i must leave every layer-i
/// path as a leaf-to-first-junction path. Returns an error description on
/// breach.
pub fn check_layering(tree: &LabeledTree, lay: &Layering) -> Result<(), String> {
    let n = tree.vertex_count();
    if lay.layer_count > crate::sim::log2_ceil(n) + 1 {
        return Err(format!("{} layers on {n} vertices", lay.layer_count));
    }
    for v in 0..n {
        if v == tree.root {
            continue;
        }
        if lay.layer[v] == 0 {
            return Err(format!("edge below {v} unlayered"));
        }
        // non-decreasing toward the root
        let p = tree.parent(v).unwrap();
        if p != tree.root && lay.layer[p] < lay.layer[v] {
            return Err(format!("layer decreases from {v} to parent {p}"));
        }
        // leaf_of is a descendant on the same layer path
        let leaf = lay.leaf_of[v];
        if !tree.is_ancestor(v, leaf) {
            return Err(format!("leaf_of({v}) = {leaf} not a descendant"));
        }
        let mut x = leaf;
        while x != v {
            if lay.layer[x] != lay.layer[v] {
                return Err(format!("path {leaf}→{v} leaves layer {}", lay.layer[v]));
            }
            x = tree.parent(x).unwrap();
        }
    }
    // edges of one layer form vertex-disjoint paths: within a layer every
    // vertex has at most one child edge of that layer
    for i in 1..=lay.layer_count {
        let mut child_edges = std::collections::HashMap::new();
        for v in lay.edges_in_layer(i) {
            let p = tree.parent(v).unwrap();
            if lay.layer.get(p).copied().unwrap_or(0) == i && p != tree.root && lay.leaf_of[p] == lay.leaf_of[v]
            {
                // interior vertex of a path
            }
            *child_edges.entry((p, lay.leaf_of[v])).or_insert(0usize) += 1;
            if child_edges[&(p, lay.leaf_of[v])] > 1 {
                return Err(format!("two layer-{i} edges of one path share parent {p}"));
            }
        }
    }
    Ok(())
}
