//! Virtual TAP instance: every non-tree edge becomes one or two
//! ancestor-descendant edges, split at the LCA. Each virtual edge keeps the
//! full weight of its origin edge, so a projected cover never weighs more
//! than the virtual one.

use std::collections::BTreeSet;

use crate::graph::{EdgeId, EdgeSet, VertexId, WeightedGraph};
use crate::tree::{LabeledTree, TreeEdge};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Half {
    Left,
    Right,
    Whole,
}

/// Identifier of a virtual edge within its instance.
pub type VirtualEdgeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VirtualEdge {
    pub id: VirtualEdgeId,
    pub anc: VertexId,
    pub dec: VertexId,
    pub weight: u64,
    pub origin_edge_id: EdgeId,
    pub half: Half,
}

#[derive(Debug, Clone)]
pub struct VirtualTapInstance<'g> {
    pub graph: &'g WeightedGraph,
    pub tree: LabeledTree,
    virtual_edges: Vec<VirtualEdge>,
    /// per tree-edge child vertex: ids of covering virtual edges
    covers_index: Vec<Vec<VirtualEdgeId>>,
}

impl<'g> VirtualTapInstance<'g> {
    pub fn virtual_edges(&self) -> &[VirtualEdge] {
        &self.virtual_edges
    }

    pub fn virtual_edge(&self, id: VirtualEdgeId) -> &VirtualEdge {
        &self.virtual_edges[id]
    }

    /// Ids of the virtual edges covering tree edge {child, p(child)}.
    pub fn coverers(&self, t: TreeEdge) -> &[VirtualEdgeId] {
        &self.covers_index[t.child]
    }

    /// Tree edges covered by virtual edge e — the set S_e, deepest first.
    pub fn covered_tree_edges(&self, e: &VirtualEdge) -> Vec<TreeEdge> {
        let mut out = Vec::with_capacity(self.tree.depth(e.dec) - self.tree.depth(e.anc));
        let mut v = e.dec;
        while v != e.anc {
            out.push(self.tree.tree_edge_of_child(v));
            v = self.tree.parent(v).unwrap();
        }
        out
    }

    pub fn span(&self, e: &VirtualEdge) -> usize {
        self.tree.depth(e.dec) - self.tree.depth(e.anc)
    }

    pub fn virtual_weight(&self, ids: &BTreeSet<VirtualEdgeId>) -> u64 {
        ids.iter().map(|&id| self.virtual_edges[id].weight).sum()
    }

    /// True iff the given virtual edges cover every tree edge.
    pub fn covers_all(&self, ids: &BTreeSet<VirtualEdgeId>) -> bool {
        let mut covered = vec![false; self.tree.vertex_count()];
        for &id in ids {
            let e = &self.virtual_edges[id];
            let mut v = e.dec;
            while v != e.anc {
                covered[v] = true;
                v = self.tree.parent(v).unwrap();
            }
        }
        (0..self.tree.vertex_count()).all(|v| v == self.tree.root || covered[v])
    }
}

/// Splits each non-tree edge at the LCA of its endpoints. Degenerate halves
/// (endpoint equal to the LCA) are dropped.
pub fn build_virtual_graph<'g>(g: &'g WeightedGraph, t: LabeledTree) -> VirtualTapInstance<'g> {
    let mut virtual_edges = Vec::new();
    let push = |edges: &mut Vec<VirtualEdge>, anc, dec, weight, origin, half| {
        if anc != dec {
            let id = edges.len();
            edges.push(VirtualEdge { id, anc, dec, weight, origin_edge_id: origin, half });
        }
    };
    for e in g.edges() {
        if t.tree_edge_ids().contains(e.id) {
            continue;
        }
        if t.is_ancestor(e.u, e.v) {
            push(&mut virtual_edges, e.u, e.v, e.weight, e.id, Half::Whole);
        } else if t.is_ancestor(e.v, e.u) {
            push(&mut virtual_edges, e.v, e.u, e.weight, e.id, Half::Whole);
        } else {
            let w = t.lca(e.u, e.v);
            push(&mut virtual_edges, w, e.u, e.weight, e.id, Half::Left);
            push(&mut virtual_edges, w, e.v, e.weight, e.id, Half::Right);
        }
    }
    let mut covers_index = vec![Vec::new(); t.vertex_count()];
    for ve in &virtual_edges {
        let mut v = ve.dec;
        while v != ve.anc {
            covers_index[v].push(ve.id);
            v = t.parent(v).unwrap();
        }
    }
    VirtualTapInstance { graph: g, tree: t, virtual_edges, covers_index }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ProjectError {
    #[error("virtual cover leaves tree edge below vertex {0} uncovered")]
    Uncovered(VertexId),
}

/// Maps a virtual cover back to origin edges of G, deduplicated.
pub fn project_to_original(
    inst: &VirtualTapInstance,
    cover: &BTreeSet<VirtualEdgeId>,
) -> Result<EdgeSet, ProjectError> {
    let mut covered = vec![false; inst.tree.vertex_count()];
    let mut origins = BTreeSet::new();
    for &id in cover {
        let e = inst.virtual_edge(id);
        origins.insert(e.origin_edge_id);
        let mut v = e.dec;
        while v != e.anc {
            covered[v] = true;
            v = inst.tree.parent(v).unwrap();
        }
    }
    for v in 0..inst.tree.vertex_count() {
        if v != inst.tree.root && !covered[v] {
            return Err(ProjectError::Uncovered(v));
        }
    }
    Ok(EdgeSet::from_ids(inst.graph, origins))
}
