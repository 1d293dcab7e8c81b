//! JSON formats and the `flc` command-line tool on top of [`flc_core`].

pub mod cli;
pub mod manifold;
pub mod number;
pub mod report;

pub use manifold::{parse_manifold, ManifoldFile};
pub use report::ReportFile;
