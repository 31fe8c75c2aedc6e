//! Rooted spanning trees with Euler-interval labels for ancestry, LCA, and
//! cover queries.

use thiserror::Error;

use crate::graph::{EdgeId, EdgeSet, VertexId, WeightedGraph};

/// Tree edge {child, p(child)}, identified by its lower endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeEdge {
    pub child: VertexId,
    pub host_edge_id: EdgeId,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("edge set has {got} edges, spanning tree needs {want}")]
    WrongEdgeCount { got: usize, want: usize },
    #[error("edge set does not span the graph (vertex {0} unreached)")]
    NotSpanning(VertexId),
}

/// Rooted spanning tree with per-vertex labels. Immutable after
/// construction.
#[derive(Debug, Clone)]
pub struct LabeledTree {
    pub root: VertexId,
    parent: Vec<Option<VertexId>>,
    parent_edge: Vec<Option<EdgeId>>,
    depth: Vec<usize>,
    euler_in: Vec<usize>,
    euler_out: Vec<usize>,
    subtree_size: Vec<usize>,
    children: Vec<Vec<VertexId>>,
    tree_edge_ids: EdgeSet,
}

impl LabeledTree {
    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.parent[v]
    }

    /// Host edge id of {v, p(v)}; None for the root.
    pub fn parent_edge(&self, v: VertexId) -> Option<EdgeId> {
        self.parent_edge[v]
    }

    pub fn depth(&self, v: VertexId) -> usize {
        self.depth[v]
    }

    pub fn subtree_size(&self, v: VertexId) -> usize {
        self.subtree_size[v]
    }

    pub fn children(&self, v: VertexId) -> &[VertexId] {
        &self.children[v]
    }

    pub fn tree_edge_ids(&self) -> &EdgeSet {
        &self.tree_edge_ids
    }

    /// All tree edges, as (child, host_edge_id), sorted by child id.
    pub fn tree_edges(&self) -> Vec<TreeEdge> {
        (0..self.vertex_count())
            .filter(|&v| v != self.root)
            .map(|v| TreeEdge { child: v, host_edge_id: self.parent_edge[v].unwrap() })
            .collect()
    }

    pub fn tree_edge_of_child(&self, child: VertexId) -> TreeEdge {
        assert_ne!(child, self.root);
        TreeEdge { child, host_edge_id: self.parent_edge[child].unwrap() }
    }

    /// DFS discovery index; sorting by it gives DFS (Euler) order.
    pub fn euler_in(&self, v: VertexId) -> usize {
        self.euler_in[v]
    }

    /// u is an ancestor of v (inclusive: is_ancestor(u, u) = true).
    pub fn is_ancestor(&self, u: VertexId, v: VertexId) -> bool {
        self.euler_in[u] <= self.euler_in[v] && self.euler_out[v] <= self.euler_out[u]
    }

    pub fn lca(&self, mut u: VertexId, v: VertexId) -> VertexId {
        while !self.is_ancestor(u, v) {
            u = self.parent[u].expect("root is an ancestor of everything");
        }
        u
    }

    /// True iff tree_edge lies on the tree path anc → dec. Callers guarantee
    /// anc is an ancestor of dec.
    pub fn covers(&self, tree_edge: TreeEdge, anc: VertexId, dec: VertexId) -> bool {
        let c = tree_edge.child;
        let p = self.parent[c].expect("tree edge child has a parent");
        self.is_ancestor(anc, p) && self.is_ancestor(c, dec)
    }

    /// Vertices of the path from u up to and including its ancestor `top`.
    pub fn path_to_ancestor(&self, mut u: VertexId, top: VertexId) -> Vec<VertexId> {
        assert!(self.is_ancestor(top, u));
        let mut out = vec![u];
        while u != top {
            u = self.parent[u].unwrap();
            out.push(u);
        }
        out
    }
}

/// Builds all labels with one traversal from `root`.
pub fn root_tree(
    g: &WeightedGraph,
    tree_edges: &EdgeSet,
    root: VertexId,
) -> Result<LabeledTree, TreeError> {
    let n = g.vertex_count();
    if tree_edges.len() != n - 1 {
        return Err(TreeError::WrongEdgeCount { got: tree_edges.len(), want: n - 1 });
    }
    let mut adj: Vec<Vec<(VertexId, EdgeId)>> = vec![Vec::new(); n];
    for &id in tree_edges.ids() {
        let e = g.edge(id);
        adj[e.u].push((e.v, id));
        adj[e.v].push((e.u, id));
    }
    // deterministic child order by vertex id
    for lst in &mut adj {
        lst.sort_unstable();
    }

    let mut parent = vec![None; n];
    let mut parent_edge = vec![None; n];
    let mut depth = vec![0usize; n];
    let mut euler_in = vec![0usize; n];
    let mut euler_out = vec![0usize; n];
    let mut subtree_size = vec![1usize; n];
    let mut children: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    let mut visited = vec![false; n];
    let mut timer = 0usize;
    // (vertex, next adj index)
    let mut stack: Vec<(VertexId, usize)> = vec![(root, 0)];
    visited[root] = true;
    euler_in[root] = timer;
    timer += 1;
    while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
        if *idx < adj[v].len() {
            let (u, eid) = adj[v][*idx];
            *idx += 1;
            if visited[u] {
                continue;
            }
            visited[u] = true;
            parent[u] = Some(v);
            parent_edge[u] = Some(eid);
            depth[u] = depth[v] + 1;
            children[v].push(u);
            euler_in[u] = timer;
            timer += 1;
            stack.push((u, 0));
        } else {
            euler_out[v] = timer;
            timer += 1;
            stack.pop();
            if let Some(&(p, _)) = stack.last() {
                subtree_size[p] += subtree_size[v];
            }
        }
    }
    if let Some(v) = (0..n).find(|&v| !visited[v]) {
        return Err(TreeError::NotSpanning(v));
    }
    Ok(LabeledTree {
        root,
        parent,
        parent_edge,
        depth,
        euler_in,
        euler_out,
        subtree_size,
        children,
        tree_edge_ids: tree_edges.clone(),
    })
}
