//! Approximation algorithms for minimum-weight 2-edge-connected spanning
//! subgraphs in a simulated synchronous message-passing network, plus the
//! exact oracles that audit them.

pub mod cli;
pub mod decomp;
pub mod graph;
pub mod oracle;
pub mod primal_dual;
pub mod report;
pub mod shortcut;
pub mod sim;
pub mod tree;
pub mod virt;
