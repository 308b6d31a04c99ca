//! Descriptor parsing, verification pipelines and report documents for the
//! `kmu` command-line tool.

pub mod descriptor;
pub mod pipeline;
pub mod report;
