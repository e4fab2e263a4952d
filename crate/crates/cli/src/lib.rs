//! Command-line harness around the kernel: workspace documents, shipped
//! fixtures, seeded generators and law campaigns.

pub mod document;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod laws;
pub mod workspace;

pub use document::{Document, DocumentBuilder};
pub use error::CliError;
pub use workspace::{SolutionEntry, Workspace};
