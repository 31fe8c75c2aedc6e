//! Two coverage subroutines over a rooted tree and a set of non-tree edges:
//! a one-sided randomized covered/uncovered test via XOR of random edge
//! identifiers, and exact per-edge marked counts via light-edge LCA.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decomp::Monoid;
use crate::shortcut::hld::{lca_light, HeavyLightInfo};
use crate::shortcut::sums::descendants_fold;
use crate::sim::log2_ceil;
use crate::tree::LabeledTree;

/// Bits per random edge identifier: 10·⌈log2 n⌉, capped at the u128 width.
pub fn rid_bits(n: usize) -> usize {
    (10 * log2_ceil(n)).min(128)
}

/// One-sided coverage test. Each non-tree edge {u, v} gets a random
/// identifier XOR-ed into both endpoints; the subtree XOR below a tree edge
/// is zero exactly when every incident non-tree edge has both endpoints
/// inside (identifiers cancel in pairs). Result per tree edge (indexed by
/// child vertex; the root entry is false): `true` = covered, never wrong;
/// `false` may be a false positive for uncovered with probability 2^-bits
/// per edge.
pub fn covered_flags(tree: &LabeledTree, nontree: &[(usize, usize)], seed: u64) -> Vec<bool> {
    let n = tree.vertex_count();
    let bits = rid_bits(n);
    let mask: u128 = if bits >= 128 { u128::MAX } else { (1u128 << bits) - 1 };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = vec![0u128; n];
    for &(u, v) in nontree {
        let rid = (((rng.gen::<u64>() as u128) << 64) | rng.gen::<u64>() as u128) & mask;
        x[u] ^= rid;
        x[v] ^= rid;
    }
    let xor: Monoid<u128> = Monoid { identity: 0, combine: |a, b| a ^ b };
    let acc = descendants_fold(tree, &xor, &x);
    (0..n).map(|v| tree.parent(v).is_some() && acc[v] != 0).collect()
}

/// Exact number of marked tree edges on the tree path of each non-tree
/// edge: M_u + M_v − 2·M_lca, with the LCA recovered from light lists.
/// `h` must have been built with the marking of interest.
pub fn cover_counts(
    tree: &LabeledTree,
    h: &HeavyLightInfo,
    nontree: &[(usize, usize)],
) -> Vec<usize> {
    let _ = tree;
    nontree
        .iter()
        .map(|&(u, v)| {
            let w = lca_light(h, u, v);
            h.marked_count[u] + h.marked_count[v] - 2 * h.marked_count[w]
        })
        .collect()
}
