//! Shortcut-based tree tools and the randomized O(log n) augmentation:
//! provider abstraction for low-congestion shortcuts, descendants'/ancestors'
//! folds, heavy-light decomposition with light-edge LCA, the XOR coverage
//! test and marked-count subroutine, and the sampled parallel greedy cover.

pub mod coverage;
pub mod greedy;
pub mod hld;
pub mod provider;
pub mod sums;

pub use coverage::{cover_counts, covered_flags};
pub use greedy::{
    parallel_greedy_tap, shortcut_2ecss_log, GreedyConfig, GreedyTraceEntry, ShortcutRun,
};
pub use hld::{heavy_flags, heavy_light, lca_light, HeavyLightInfo, LightEdge};
pub use provider::{provider_by_name, BfsStar, ShortcutProvider, ShortcutQuality, TreeNative};
pub use sums::{ancestors_fold, descendants_fold, heavy_path_partition};
