//! File formats, fixtures, the end-to-end pipeline and table reproduction
//! on top of `socode-core`.

pub mod fixtures;
pub mod formats;
pub mod pipeline;
pub mod tables;
