//! Segment decomposition: O(√n) edge-disjoint pieces of the tree, each a
//! highway r_S → d_S plus hanging subtrees, with only r_S/d_S shared between
//! pieces.
//!
//! Construction: a post-order sweep accumulates the number of unconsumed
//! edges below each vertex and marks the vertex once that count reaches
//! ⌈√n⌉, resetting the count. The marked set (plus the root, closed under
//! pairwise LCAs so highways never overlap) becomes the skeleton; every
//! non-root marked vertex d gets a segment whose highway runs from its
//! nearest marked ancestor down to d. Marked-free subtrees hang off highway
//! vertices (joining that segment) or off a marked vertex (joining the
//! segment that has it as unique descendant; for the root, a degenerate
//! root segment). Counting gives ≤ 2⌈√n⌉+1 segments and the reset rule
//! bounds highways by ⌈√n⌉ edges and hanging depth by ⌈√n⌉, so diameters
//! stay ≤ 3⌈√n⌉.

use std::collections::BTreeSet;

use crate::sim::sqrt_ceil;
use crate::tree::{LabeledTree, TreeEdge};

pub type SegmentId = usize;

#[derive(Debug, Clone)]
pub struct Segment {
    pub id: SegmentId,
    pub r: usize,
    pub d: usize,
    /// highway vertices r → d inclusive (just [r] for the degenerate root
    /// segment)
    pub highway: Vec<usize>,
    /// child vertices of the member tree edges
    pub member_edges: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct SegmentDecomposition {
    pub segments: Vec<Segment>,
    /// segment owning the tree edge {v, p(v)}, indexed by child v (root slot
    /// unused)
    pub edge_segment: Vec<SegmentId>,
    /// for highway edges: the segment whose highway they lie on
    pub highway_of_edge: Vec<Option<SegmentId>>,
    /// skeleton tree: per marked vertex, its nearest marked strict ancestor
    pub skeleton_parent: Vec<(usize, usize)>,
}

impl SegmentDecomposition {
    pub fn segment_of(&self, t: TreeEdge) -> SegmentId {
        self.edge_segment[t.child]
    }

    /// Diameter (in edges) of a segment's induced subtree.
    pub fn diameter(&self, tree: &LabeledTree, s: &Segment) -> usize {
        // Eccentricity from r over member edges, twice (r is an endpoint of
        // the induced subtree's "trunk", so two sweeps of BFS give the
        // diameter exactly).
        let verts: BTreeSet<usize> = s
            .member_edges
            .iter()
            .flat_map(|&c| [c, tree.parent(c).unwrap()])
            .collect();
        let far = |start: usize| -> (usize, usize) {
            let mut dist = std::collections::HashMap::new();
            dist.insert(start, 0usize);
            let mut queue = std::collections::VecDeque::from([start]);
            let mut best = (start, 0);
            while let Some(v) = queue.pop_front() {
                let dv = dist[&v];
                if dv > best.1 {
                    best = (v, dv);
                }
                let mut nbrs = Vec::new();
                if let Some(p) = tree.parent(v) {
                    if verts.contains(&p) && s.member_edges.contains(&v) {
                        nbrs.push(p);
                    }
                }
                for &c in tree.children(v) {
                    if verts.contains(&c) && s.member_edges.contains(&c) {
                        nbrs.push(c);
                    }
                }
                for u in nbrs {
                    if !dist.contains_key(&u) {
                        dist.insert(u, dv + 1);
                        queue.push_back(u);
                    }
                }
            }
            best
        };
        if verts.is_empty() {
            return 0;
        }
        let (a, _) = far(s.r);
        far(a).1
    }
}

pub fn build_segments(tree: &LabeledTree) -> SegmentDecomposition {
    let n = tree.vertex_count();
    let s = sqrt_ceil(n);
    // post-order accumulation with reset on mark
    let mut pending = vec![0usize; n];
    let mut marked = vec![false; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(tree.depth(v)));
    for &v in &order {
        let sum: usize = tree.children(v).iter().map(|&c| pending[c] + 1).sum();
        pending[v] = sum;
        if pending[v] >= s && v != tree.root {
            marked[v] = true;
            pending[v] = 0;
        }
    }
    marked[tree.root] = true;
    // close under pairwise LCA so highways of sibling segments never share
    // internal vertices; for a DFS-ordered set, LCAs of consecutive pairs
    // give the whole pairwise-LCA closure in one pass
    let mut marked_list: Vec<usize> = (0..n).filter(|&v| marked[v]).collect();
    marked_list.sort_by_key(|&v| tree.euler_in(v));
    for pair in marked_list.windows(2) {
        marked[tree.lca(pair[0], pair[1])] = true;
    }

    // nearest marked strict ancestor
    let nearest_marked_anc = |mut v: usize| -> usize {
        loop {
            v = tree.parent(v).unwrap();
            if marked[v] {
                return v;
            }
        }
    };

    // one segment per non-root marked vertex; root segment added on demand
    let mut segments: Vec<Segment> = Vec::new();
    let mut seg_of_marked: Vec<Option<SegmentId>> = vec![None; n];
    for v in 0..n {
        if marked[v] && v != tree.root {
            let r = nearest_marked_anc(v);
            let highway = {
                let mut p = tree.path_to_ancestor(v, r);
                p.reverse();
                p
            };
            let id = segments.len();
            seg_of_marked[v] = Some(id);
            segments.push(Segment { id, r, d: v, highway, member_edges: Vec::new() });
        }
    }
    let mut root_segment: Option<SegmentId> = None;
    if segments.is_empty() {
        root_segment = Some(0);
        segments.push(Segment {
            id: 0,
            r: tree.root,
            d: tree.root,
            highway: vec![tree.root],
            member_edges: Vec::new(),
        });
    }

    // assign every tree edge to a segment
    let mut edge_segment = vec![usize::MAX; n];
    let mut highway_of_edge = vec![None; n];
    for sid in 0..segments.len() {
        let hw = segments[sid].highway.clone();
        for pair in hw.windows(2) {
            edge_segment[pair[1]] = sid;
            highway_of_edge[pair[1]] = Some(sid);
            segments[sid].member_edges.push(pair[1]);
        }
    }
    // hanging subtrees: root-to-leaf DFS assigns each unassigned edge to the
    // segment of its attachment point
    let mut order_down: Vec<usize> = (0..n).collect();
    order_down.sort_by_key(|&v| tree.depth(v));
    let mut ensure_root_segment = |segments: &mut Vec<Segment>| -> SegmentId {
        if let Some(id) = root_segment {
            return id;
        }
        let id = segments.len();
        segments.push(Segment {
            id,
            r: tree.root,
            d: tree.root,
            highway: vec![tree.root],
            member_edges: Vec::new(),
        });
        root_segment = Some(id);
        id
    };
    for &v in &order_down {
        if v == tree.root || edge_segment[v] != usize::MAX {
            continue;
        }
        let p = tree.parent(v).unwrap();
        let sid = if marked[p] {
            // hangs off a marked vertex: join the segment that has p as its
            // unique descendant (the root gets its own degenerate segment)
            match seg_of_marked[p] {
                Some(id) => id,
                None => ensure_root_segment(&mut segments),
            }
        } else {
            // p is an internal highway vertex or itself inside a hanging
            // subtree already assigned
            edge_segment[p]
        };
        assert_ne!(sid, usize::MAX, "parent edge assigned before child edge");
        edge_segment[v] = sid;
        segments[sid].member_edges.push(v);
    }

    let skeleton_parent = segments
        .iter()
        .filter(|s| s.r != s.d)
        .map(|s| (s.d, s.r))
        .collect();
    SegmentDecomposition { segments, edge_segment, highway_of_edge, skeleton_parent }
}

/// Structural contract checker used by tests and audits.
pub fn check_segment_contract(tree: &LabeledTree, dec: &SegmentDecomposition) -> Result<(), String> {
    let n = tree.vertex_count();
    let bound = 4 * sqrt_ceil(n);
    if dec.segments.len() > bound {
        return Err(format!("{} segments > {bound}", dec.segments.len()));
    }
    // partition of tree edges
    let mut seen = vec![0usize; n];
    for s in &dec.segments {
        for &c in &s.member_edges {
            seen[c] += 1;
        }
    }
    for v in 0..n {
        if v != tree.root && seen[v] != 1 {
            return Err(format!("tree edge below {v} in {} segments", seen[v]));
        }
    }
    // diameter and boundary sharing
    let mut appears: Vec<BTreeSet<SegmentId>> = vec![BTreeSet::new(); n];
    for s in &dec.segments {
        let d = dec.diameter(tree, s);
        if d > bound {
            return Err(format!("segment {} diameter {d} > {bound}", s.id));
        }
        for &c in &s.member_edges {
            appears[c].insert(s.id);
            appears[tree.parent(c).unwrap()].insert(s.id);
        }
        // r is an ancestor of all segment vertices
        for &c in &s.member_edges {
            if !tree.is_ancestor(s.r, c) {
                return Err(format!("segment {} root {} not an ancestor of {c}", s.id, s.r));
            }
        }
    }
    for v in 0..n {
        if appears[v].len() > 1 {
            let boundary = dec
                .segments
                .iter()
                .filter(|s| appears[v].contains(&s.id))
                .all(|s| s.r == v || s.d == v);
            if !boundary {
                return Err(format!("non-boundary vertex {v} shared by {:?}", appears[v]));
            }
        }
    }
    Ok(())
}
