//! File formats, reports and the command-line front-end for `polyrep-core`.

pub mod cli;
pub mod formats;
pub mod json;
pub mod parallel;
pub mod raster;
pub mod report;
