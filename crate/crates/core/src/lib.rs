//! Weighted comparator networks for rewriting optimization statements of
//! ground answer-set programs.

pub mod analysis;
pub mod aspif;
pub mod asplang;
pub mod cli;
pub mod encode;
pub mod network;
pub mod propagate;
pub mod rewrite;
