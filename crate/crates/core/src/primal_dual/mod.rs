//! Primal-dual tree augmentation: dual growth over layers (forward phase),
//! top-down pruning to a bounded-overlap cover (reverse-delete, in a 4-cover
//! and a cleaned 2-cover variant), the unweighted 2-approximation, and the
//! end-to-end 2-ECSS pipeline.

pub mod forward;
pub mod pipeline;
pub mod reverse;

pub use forward::{forward_phase, DualState, ForwardError};
pub use pipeline::{approximate_2ecss, boruvka_mst, PipelineError, PipelineRun, Variant};
pub use reverse::{
    mis_on_gi, reverse_delete_base, reverse_delete_improved, unweighted_tap, Anchor,
    IterationTrace, ReverseError, ReverseState,
};
