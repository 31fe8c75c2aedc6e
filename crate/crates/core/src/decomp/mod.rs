//! Tree decomposition machinery: √n-diameter segments with highways and a
//! skeleton tree, the leaf-contraction layering, per-edge petals, and the
//! two aggregate-function primitives built on top of the segments.

pub mod agg;
pub mod layers;
pub mod petals;
pub mod segments;

pub use agg::{agg_nontree, agg_tree, Monoid};
pub use layers::{compute_layers, Layering};
pub use petals::{compute_petals, Petals};
pub use segments::{build_segments, Segment, SegmentDecomposition};
